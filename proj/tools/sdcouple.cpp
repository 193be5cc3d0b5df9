// Copyright 2026 The sdcouple Authors
// SPDX-License-Identifier: Apache-2.0

#include "sdc/coupler.hpp"

int main(int argc, char** argv) { return sdc::cli_main(argc, argv); }
