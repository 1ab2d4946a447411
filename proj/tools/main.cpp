#include <iostream>

#include "dispgrid/cli.hpp"

int main(int argc, char** argv) {
  dispgrid::RunConfig config;
  try {
    config = dispgrid::parse_cli(argc, argv);
  } catch (const dispgrid::UsageError& e) {
    if (e.help()) {
      std::cout << e.what();
      return dispgrid::kExitOk;
    }
    std::cerr << "dispgrid: " << e.what() << "\nRun with --help for usage.\n";
    return dispgrid::kExitUsage;
  }
  return dispgrid::run(config, std::cout, std::cerr);
}
