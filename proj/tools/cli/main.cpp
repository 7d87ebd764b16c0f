// SPDX-License-Identifier: Apache-2.0
// Copyright (C) 2026 The radresp authors

#include "commands.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return radresp::cli::run_cli(args, std::cout, std::cerr);
}
