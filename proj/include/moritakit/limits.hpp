#pragma once

#include <cstdint>
#include <string>

namespace moritakit {

/// Cap on the number of candidates any single enumeration may examine.
/// Read once from MORITAKIT_MAX_ENUM (default 1'000'000).
std::uint64_t max_enum();

/// Override the cap for the current process (tests, CLI flags).
void set_max_enum(std::uint64_t cap);

// Counts candidates and throws LimitExceeded once the cap is passed.
class EnumBudget {
 public:
  explicit EnumBudget(std::string what, std::uint64_t cap = max_enum());

  void tick(std::uint64_t n = 1);
  std::uint64_t used() const { return used_; }

 private:
  std::string what_;
  std::uint64_t cap_;
  std::uint64_t used_ = 0;
};

}  // namespace moritakit
