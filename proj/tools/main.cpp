#include "dissipchain/cli.hpp"

int main(int argc, char** argv) {
  return dissipchain::cli::cli_main(argc, argv);
}
