#include "moritakit/limits.hpp"

#include <cstdlib>
#include <optional>

#include "moritakit/error.hpp"

namespace moritakit {

namespace {

std::optional<std::uint64_t>& override_cap() {
  static std::optional<std::uint64_t> cap;
  return cap;
}

std::uint64_t env_cap() {
  static const std::uint64_t cap = [] {
    const char* raw = std::getenv("MORITAKIT_MAX_ENUM");
    if (raw == nullptr || *raw == '\0') return std::uint64_t{1000000};
    char* end = nullptr;
    unsigned long long v = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0' || v == 0) return std::uint64_t{1000000};
    return static_cast<std::uint64_t>(v);
  }();
  return cap;
}

}  // namespace

std::uint64_t max_enum() {
  if (override_cap()) return *override_cap();
  return env_cap();
}

void set_max_enum(std::uint64_t cap) { override_cap() = cap; }

EnumBudget::EnumBudget(std::string what, std::uint64_t cap) : what_(std::move(what)), cap_(cap) {}

void EnumBudget::tick(std::uint64_t n) {
  used_ += n;
  if (used_ > cap_) {
    fail(ErrorKind::LimitExceeded,
         what_ + " examined more than " + std::to_string(cap_) + " candidates");
  }
}

}  // namespace moritakit
