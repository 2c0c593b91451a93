#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hmfa/carnot.hpp"

// Oracle suites behind `verify`: each row holds observed vs expected values.
// REPORT rows surface measurements and known discrepancies without gating
// the exit code.
namespace hmfa::verify {

enum class Status { Pass, Fail, Report };

struct CheckRow {
  std::string name;
  Status status = Status::Pass;
  std::string detail;
};

std::vector<CheckRow> group_suite(std::int64_t mc_samples = 10'000'000, std::uint64_t seed = 2026);
std::vector<CheckRow> lattice_suite();
std::vector<CheckRow> carnot_suite(const std::optional<carnot::StratificationSpec>& extra = std::nullopt,
                                   std::int64_t mc_samples = 4'000'000, std::uint64_t seed = 2026);
std::vector<CheckRow> besov_suite();

// prints "[PASS] name: detail" rows; returns false iff any row failed
bool print_rows(std::ostream& os, const std::vector<CheckRow>& rows);

}  // namespace hmfa::verify
