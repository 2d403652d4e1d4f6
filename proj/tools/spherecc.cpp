#include <spherecc/cli_app.hpp>

int main(int argc, char **argv) {
    return spherecc::io::run(argc, argv, std::cout, std::cerr);
}
