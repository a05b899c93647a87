#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "moritakit/corpus.hpp"
#include "moritakit/io.hpp"

namespace moritakit {

struct VerifyConfig {
  std::uint64_t seed = 0;
  CorpusBounds bounds;
  std::string only;             // run a single property when set
  bool inject_corrupt = false;  // add an operad whose action is not associative
};

/// Parses "k=v,k=v" into the bounds; throws BadParameters on unknown keys or
/// non-positive values.
void parse_bounds(const std::string& text, CorpusBounds& bounds);

struct PropertyInfo {
  std::string name, module, statement;
};

/// Every property of the suite in registry order.
const std::vector<PropertyInfo>& property_registry();

struct PropertyResult {
  PropertyInfo info;
  size_t cases = 0, passed = 0, failed = 0, skipped = 0;
  std::string witness;  // first failure, shrunk
  std::vector<std::string> notes;
};

struct VerifySummary {
  std::uint64_t seed = 0;
  CorpusBounds bounds;
  std::vector<PropertyResult> results;
  bool ok() const;
};

/// Throws BadParameters when `only` names no property.
VerifySummary verify_suite(const VerifyConfig& config);

std::string summary_text(const VerifySummary& s);
Json summary_json(const VerifySummary& s);

}  // namespace moritakit
