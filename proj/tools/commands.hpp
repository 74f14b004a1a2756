#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hypertess/audit.hpp"
#include "hypertess/geometry.hpp"

namespace hypertess::cli {

enum ExitCode : int {
  kSuccess = 0,
  kAuditFailed = 1,
  kUsage = 2,
  kIoFailure = 3,
};

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Rows needed so all |K|^2 pairs stay within delta with probability 1 - eta:
/// ceil((2 ln|K| + ln(2/eta)) / (2 delta^2)).
std::size_t jl_sample_size(std::size_t count, double delta, double eta);

struct JlResult {
  std::size_t m = 0;
  AuditReport report;
};

/// Embeds a finite set with jl_sample_size rows and audits every pair against delta.
JlResult run_jl(std::span<const UnitVector> points, double delta, double eta, std::uint64_t seed,
                std::size_t threads = 1);

}  // namespace hypertess::cli
