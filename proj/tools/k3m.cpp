#include "k3m_cli.hpp"

int main(int argc, char** argv) {
  return k3m::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cin, std::cout, std::cerr);
}
