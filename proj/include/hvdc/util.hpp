#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hvdc {

/// Thrown when an exhaustive search exceeds the configured node budget.
/// The message names the search so the caller can shrink the instance.
struct EnumLimitError : std::runtime_error {
  explicit EnumLimitError(const std::string& what) : std::runtime_error(what) {}
};

/// Node budget for exhaustive searches. Defaults to 10^7 candidates and can
/// be overridden with the HVDC_MAX_ENUM environment variable.
std::uint64_t enum_budget();

/// Counts search nodes for one enumeration and aborts with a diagnostic once
/// the budget is exhausted, instead of running unbounded.
class EnumGuard {
 public:
  explicit EnumGuard(std::string what) : what_(std::move(what)), budget_(enum_budget()) {}

  void tick(std::uint64_t n = 1) {
    used_ += n;
    if (used_ > budget_)
      throw EnumLimitError("enumeration budget (" + std::to_string(budget_) +
                           " nodes) exceeded in " + what_ +
                           "; shrink the instance or raise HVDC_MAX_ENUM");
  }

  std::uint64_t used() const { return used_; }

 private:
  std::string what_;
  std::uint64_t budget_;
  std::uint64_t used_ = 0;
};

/// Joins parts with `sep`, e.g. join({"a","b"}, ",") == "a,b".
std::string join(const std::vector<std::string>& parts, const std::string& sep);

/// Canonical name for a derived element: tag(part1,part2,...). Used when a
/// construction must mint fresh atoms (restrictions, coend classes, graphs).
std::string mint(const std::string& tag, const std::vector<std::string>& parts);

}  // namespace hvdc
