#include "opwire/dsl.hpp"

int main(int argc, char** argv) {
  return opwire::run_command(std::vector<std::string>(argv + 1, argv + argc));
}
