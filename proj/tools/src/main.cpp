#include <iostream>

#include "app.hpp"

int main(int argc, char** argv) {
  return cbolab::cli::run_app({argv + 1, argv + argc}, std::cout, std::cerr);
}
