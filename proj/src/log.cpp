// Copyright 2026 The sdcouple Authors
// SPDX-License-Identifier: Apache-2.0

#include "sdc/log.hpp"

#include <atomic>
#include <iostream>

#include "sdc/types.hpp"

namespace sdc::log {

namespace {
std::atomic<Level> g_level{Level::warn};

void emit(Level lvl, const char* tag, const std::string& msg) {
    if (static_cast<int>(lvl) > static_cast<int>(g_level.load())) return;
    std::cerr << tag << msg << '\n';
}
}  // namespace

void set_level(Level level) { g_level.store(level); }
Level level() { return g_level.load(); }

Level parse_level(const std::string& name) {
    if (name == "error") return Level::error;
    if (name == "warn") return Level::warn;
    if (name == "info") return Level::info;
    if (name == "debug") return Level::debug;
    throw Error("unknown log level '" + name + "'");
}

void error(const std::string& msg) { emit(Level::error, "error: ", msg); }
void warn(const std::string& msg) { emit(Level::warn, "warning: ", msg); }
void info(const std::string& msg) { emit(Level::info, "info: ", msg); }
void debug(const std::string& msg) { emit(Level::debug, "debug: ", msg); }

}  // namespace sdc::log
