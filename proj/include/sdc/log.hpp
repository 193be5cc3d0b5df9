// Copyright 2026 The sdcouple Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

namespace sdc::log {

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

/// Global threshold; messages above it are dropped. Defaults to warn.
void set_level(Level level);
Level level();

/// Parses "error"/"warn"/"info"/"debug"; throws on anything else.
Level parse_level(const std::string& name);

void error(const std::string& msg);
void warn(const std::string& msg);
void info(const std::string& msg);
void debug(const std::string& msg);

}  // namespace sdc::log
