#pragma once

#include <cstdlib>
#include <iostream>
#include <string>

namespace dfl {

// Verbosity comes from the DFL_LOG env var (quiet|warn|info|debug), default warn.
// Science parameters never ride on the environment; this is log level only.
inline int log_level() {
  static const int level = [] {
    const char* v = std::getenv("DFL_LOG");
    if (!v) return 1;
    const std::string s(v);
    if (s == "quiet") return 0;
    if (s == "warn") return 1;
    if (s == "info") return 2;
    if (s == "debug") return 3;
    return 1;
  }();
  return level;
}

inline void log_warn(const std::string& msg) {
  if (log_level() >= 1) std::cerr << "[warn] " << msg << "\n";
}

inline void log_info(const std::string& msg) {
  if (log_level() >= 2) std::cerr << "[info] " << msg << "\n";
}

}  // namespace dfl
