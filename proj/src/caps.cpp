#include "provlog/caps.hpp"

#include <cstdlib>
#include <sstream>

#include "provlog/errors.hpp"

namespace provlog {

Caps parse_caps(const std::string& text, Caps base) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error("UsageError", "cap '" + item + "' is not key=value");
    std::string key = item.substr(0, eq);
    unsigned long long v;
    try {
      size_t used = 0;
      v = std::stoull(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error("UsageError", "cap '" + item + "' needs a non-negative integer");
    }
    if (key == "iter") base.iter = static_cast<int>(v);
    else if (key == "depth") base.depth = static_cast<int>(v);
    else if (key == "sam") base.sam = v;
    else if (key == "ground") base.ground = v;
    else if (key == "terms") base.terms = v;
    else if (key == "series") base.series = v;
    else throw Error("UsageError", "unknown cap '" + key + "'");
  }
  return base;
}

Caps caps_from_env(Caps base) {
  const char* env = std::getenv("PROVLOG_CAPS");
  return env ? parse_caps(env, base) : base;
}

}  // namespace provlog
