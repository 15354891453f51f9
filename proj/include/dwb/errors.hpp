#pragma once

#include <stdexcept>
#include <string>

namespace dwb {

/// Bad input, malformed id, or a guard limit hit.  CLI exit code 2.
class usage_error : public std::runtime_error {
public:
  explicit usage_error(const std::string& what) : std::runtime_error(what) {}
};

/// A mathematical invariant failed: invalid construction data or a
/// violated axiom.  CLI exit code 1 when it reaches the top level.
class check_error : public std::runtime_error {
public:
  explicit check_error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw check_error(what);
}

inline void require_usage(bool cond, const std::string& what) {
  if (!cond) throw usage_error(what);
}

}  // namespace dwb
