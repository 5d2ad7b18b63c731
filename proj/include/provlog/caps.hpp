#pragma once

#include <cstddef>
#include <optional>
#include <string>

namespace provlog {

// Resource caps shared by the CLI and the harness.
struct Caps {
  std::optional<int> iter;   // fixpoint round cap; default depends on the instance
  int depth = 5;             // tree depth cap for enumeration oracles
  size_t sam = 4096;         // value-set members per fact
  size_t ground = 1000000;   // ground rules
  size_t terms = 100000;     // polynomial terms during circuit expansion
  size_t series = 300;       // terms of a fixpoint value before giving up
};

// Parses "iter=..,depth=..,sam=..,ground=..,terms=..,series=..", overriding `base`.
Caps parse_caps(const std::string& text, Caps base = {});
// `base` overridden by the PROVLOG_CAPS environment variable, if set.
Caps caps_from_env(Caps base = {});

}  // namespace provlog
