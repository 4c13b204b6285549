#include "dcurv/benchmark.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "dcurv/config.hpp"
#include "dcurv/io.hpp"
#include "dcurv/oracle.hpp"

namespace dcurv {
namespace {

StepWorkspace graphene_workspace(std::size_t n) {
  const double a[] = {10.0};
  const std::size_t count[] = {n};
  const Grid grid = make_grid(1, a, count);
  MetricModel m;
  m.kind = MetricKind::RippledGraphene1D;
  m.a0 = 0.4;
  m.k0 = 2.0;
  m.ell = 5.0;
  return make_workspace(grid, m, PmlConfig{}, SchemeConfig{SchemeKind::CN, 1e-2, 0.0}, KrylovConfig{});
}

// Best average over five batches, each at least min_batch seconds long.
template <class F>
double best_time(F&& f, double min_batch) {
  using clock = std::chrono::steady_clock;
  f();
  double best = std::numeric_limits<double>::infinity();
  for (int batch = 0; batch < 5; ++batch) {
    long reps = 0;
    const auto t0 = clock::now();
    double elapsed = 0.0;
    do {
      f();
      ++reps;
      elapsed = std::chrono::duration<double>(clock::now() - t0).count();
    } while (elapsed < min_batch);
    best = std::min(best, elapsed / static_cast<double>(reps));
  }
  return best;
}

}  // namespace

std::vector<BenchRow> bench_cn_apply(const std::vector<std::size_t>& ns, double min_batch_seconds) {
  std::vector<BenchRow> rows;
  for (std::size_t n : ns) {
    const StepWorkspace ws = graphene_workspace(n);
    SpinorField psi(ws.grid, ws.s);
    for (std::size_t k = 0; k < n; ++k) {
      const double x = ws.grid.node(0, k);
      psi(0, k) = std::exp(-x * x);
      psi(1, k) = cplx(0.0, std::exp(-x * x));
    }
    SpinorField out(ws.grid, ws.s);
    rows.push_back({n, best_time([&] { cn_operator_apply(psi, out, ws, +1); }, min_batch_seconds)});
  }
  return rows;
}

std::vector<BenchRow> bench_dense_G(const std::vector<std::size_t>& ns, double min_batch_seconds) {
  std::vector<BenchRow> rows;
  for (std::size_t n : ns) {
    const StepWorkspace ws = graphene_workspace(n);
    volatile double sink = 0.0;
    rows.push_back({n, best_time([&] { sink = std::abs(build_dense_G(ws, ws.dt)(0, 0)); }, min_batch_seconds)});
  }
  return rows;
}

EnvelopeFit fit_envelope(const std::vector<BenchRow>& rows, const std::function<double(double)>& model) {
  if (rows.empty()) throw std::invalid_argument("fit_envelope: no rows");
  std::vector<double> r;
  double logsum = 0.0;
  for (const auto& row : rows) {
    r.push_back(row.seconds / model(static_cast<double>(row.n)));
    logsum += std::log(r.back());
  }
  EnvelopeFit fit;
  fit.scale = std::exp(logsum / static_cast<double>(r.size()));
  fit.min_ratio = *std::min_element(r.begin(), r.end()) / fit.scale;
  fit.max_ratio = *std::max_element(r.begin(), r.end()) / fit.scale;
  return fit;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream o;
  o << "n,seconds\n";
  for (const auto& r : rows) o << r.n << ',' << format_double(r.seconds) << '\n';
  return o.str();
}

}  // namespace dcurv
