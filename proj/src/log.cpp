#include "strelgen/log.hpp"

#include <cstdlib>
#include <iostream>

namespace strelgen::logging {

static Level parse_level() {
  const char* env = std::getenv("STRELGEN_LOG");
  if (!env) return Level::Off;
  const std::string v(env);
  if (v.empty() || v == "0" || v == "off") return Level::Off;
  if (v == "2" || v == "debug") return Level::Debug;
  return Level::Info;  // "1", "info", or anything else truthy
}

Level level() {
  static const Level l = parse_level();
  return l;
}

bool enabled(Level l) {
  return static_cast<int>(level()) >= static_cast<int>(l);
}

void info(const std::string& msg) {
  if (enabled(Level::Info)) std::cerr << "[strelgen] " << msg << "\n";
}

void debug(const std::string& msg) {
  if (enabled(Level::Debug)) std::cerr << "[strelgen] " << msg << "\n";
}

}  // namespace strelgen::logging
