#include "cli.hpp"

int main(int argc, char** argv)
{
    return tlsql::cli::main(argc, argv, {std::cin, std::cout, std::cerr});
}
