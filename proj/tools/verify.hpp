#pragma once

// Manifest-driven verification: each item names a computation and the exact
// string it must print.

#include <cstdint>
#include <string>
#include <vector>

#include "commands.hpp"

namespace curvelab::app {

struct VerifyOptions {
  long n_max = 4;
  long r_max = 4;
  unsigned threads = 0;  // 0 = hardware concurrency
  std::uint64_t seed = 1;
};

enum class ItemStatus { pass, fail, skipped, error };
std::string to_string(ItemStatus s);

struct ItemResult {
  std::string id;
  std::string location;
  std::string kind;
  std::string provenance;
  std::string expected;
  std::string computed;
  ItemStatus status = ItemStatus::skipped;
  double seconds = 0;
};

struct VerifySummary {
  std::vector<ItemResult> items;
  long passed = 0, failed = 0, skipped = 0, errors = 0;
  bool ok() const { return failed == 0 && errors == 0; }
};

/// Throws usage_error when the manifest is not valid JSON or an item is malformed.
VerifySummary run_manifest(const std::string& manifest_text, const VerifyOptions& opt);

/// Canonical printed value of one manifest computation.
std::string compute_item(const json& item, std::uint64_t seed);

Report verify_report(const VerifySummary& s);

}  // namespace curvelab::app
