// Copyright 2026 The exsphere Authors.
// SPDX-License-Identifier: Apache-2.0

#include "exsphere/cli.hpp"

int main(int argc, char** argv) { return exsphere::run_cli(argc, argv); }
