#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dcurv/config.hpp"

namespace dcurv {

enum class SweepKind { H, Dt };

SweepKind parse_sweep_kind(std::string_view text);

struct SweepRow {
  double param = 0.0;
  double error = 0.0;
};

// Runs base at every value (h or dt, descending) and measures the h-weighted
// l2 distance at T to a reference run restricted to each coarse grid.
// h-sweep: the reference shares dt and uses h_ref (default min(values)/2);
// every h and h_ref must divide 2a into an integer count that nests.
// dt-sweep: the reference shares the grid and uses dt_ref (default min/4).
std::vector<SweepRow> convergence_sweep(const RunConfig& base, SweepKind kind, const std::vector<double>& values,
                                        std::optional<double> reference = std::nullopt);

std::string sweep_csv(const std::vector<SweepRow>& rows);

// Least-squares slope of log(error) against log(param).
double loglog_slope(const std::vector<SweepRow>& rows);

}  // namespace dcurv
