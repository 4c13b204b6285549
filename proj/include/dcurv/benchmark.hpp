#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace dcurv {

struct BenchRow {
  std::size_t n = 0;
  double seconds = 0.0;  // best per-call time
};

// 1-D rippled-graphene workspace on [-10, 10] with n nodes.
std::vector<BenchRow> bench_cn_apply(const std::vector<std::size_t>& ns, double min_batch_seconds = 0.02);
std::vector<BenchRow> bench_dense_G(const std::vector<std::size_t>& ns, double min_batch_seconds = 0.02);

struct EnvelopeFit {
  double scale = 0.0;      // geometric mean of seconds / model(n)
  double min_ratio = 0.0;  // extremes of (seconds / model(n)) / scale
  double max_ratio = 0.0;
  bool within(double factor) const { return min_ratio >= 1.0 / factor && max_ratio <= factor; }
};

EnvelopeFit fit_envelope(const std::vector<BenchRow>& rows, const std::function<double(double)>& model);

std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace dcurv
