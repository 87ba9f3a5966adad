#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace matchfield {

// Default ceiling for exhaustive enumerations (subspaces, bases, field
// elements). Anything predicted to exceed the cap refuses to start.
inline constexpr uint64_t kDefaultEnumCap = 10'000'000;

struct GuardExceeded : std::runtime_error {
  explicit GuardExceeded(const std::string& what) : std::runtime_error(what) {}
};

inline void check_guard(uint64_t predicted, uint64_t cap, const char* what) {
  if (predicted > cap) {
    throw GuardExceeded(std::string(what) + ": predicted count " +
                        std::to_string(predicted) + " exceeds cap " +
                        std::to_string(cap));
  }
}

}  // namespace matchfield
