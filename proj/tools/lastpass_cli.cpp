// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "lastpass/cli.hpp"

int main(int argc, char** argv) { return lastpass::cli_main(argc, argv, std::cout, std::cerr); }
