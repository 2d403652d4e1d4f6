// spherecc umbrella header
#pragma once

#include <spherecc/errors.hpp>
#include <spherecc/numeric.hpp>
#include <spherecc/sphere_core.hpp>
#include <spherecc/engagement.hpp>
#include <spherecc/point_predict.hpp>
#include <spherecc/patch_predict.hpp>
#include <spherecc/planar_baseline.hpp>
#include <spherecc/sim_oracle.hpp>
#include <spherecc/cli_io.hpp>
