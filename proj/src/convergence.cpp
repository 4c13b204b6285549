#include "dcurv/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dcurv/errors.hpp"
#include "dcurv/io.hpp"
#include "dcurv/oracle.hpp"
#include "dcurv/simulation.hpp"

namespace dcurv {
namespace {

std::size_t count_for(double a, double h) {
  const double r = 2.0 * a / h;
  const double n = std::round(r);
  if (n < 2.0 || std::abs(r - n) > 1e-9 * r) {
    throw ConfigError("h = " + format_double(h) + " does not divide the domain into an integer node count");
  }
  return static_cast<std::size_t>(n);
}

RunConfig with_h(RunConfig cfg, double h) {
  for (int i = 0; i < cfg.grid.d; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    cfg.grid.n[ui] = count_for(cfg.grid.a[ui], h);
  }
  return cfg;
}

SpinorField final_state(const RunConfig& cfg) {
  RunResult r = reference_run(cfg, std::size_t{1}, std::size_t{1});
  if (r.status != RunStatus::Completed) throw NumericalError("sweep run failed: " + r.message);
  return std::move(r.final_state);
}

double distance(const SpinorField& a, const SpinorField& b) {
  SpinorField d = a;
  for (std::size_t i = 0; i < d.flat().size(); ++i) d.flat()[i] -= b.flat()[i];
  return l2_norm(d);
}

}  // namespace

SweepKind parse_sweep_kind(std::string_view text) {
  if (text == "h") return SweepKind::H;
  if (text == "dt") return SweepKind::Dt;
  throw ConfigError("unknown sweep '" + std::string(text) + "' (expected h or dt)");
}

std::vector<SweepRow> convergence_sweep(const RunConfig& base, SweepKind kind, const std::vector<double>& values,
                                        std::optional<double> reference) {
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0)) throw ConfigError("sweep values must be > 0");
    if (i > 0 && !(values[i] < values[i - 1])) throw ConfigError("sweep values must be strictly descending");
  }
  const double ref = reference.value_or(values.back() / (kind == SweepKind::H ? 2.0 : 4.0));
  if (ref > values.back()) throw ConfigError("reference must not be coarser than the finest sweep value");

  RunConfig ref_cfg = base;
  if (kind == SweepKind::H) {
    ref_cfg = with_h(base, ref);
  } else {
    ref_cfg.scheme.dt = ref;
  }
  const SpinorField psi_ref = final_state(ref_cfg);

  std::vector<SweepRow> rows;
  for (double v : values) {
    RunConfig cfg = base;
    if (kind == SweepKind::H) {
      cfg = with_h(base, v);
    } else {
      cfg.scheme.dt = v;
    }
    const SpinorField psi = final_state(cfg);
    rows.push_back({v, distance(psi, restrict_to(psi_ref, psi.grid()))});
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream o;
  o << "param,error\n";
  for (const auto& r : rows) o << format_double(r.param) << ',' << format_double(r.error) << '\n';
  return o.str();
}

double loglog_slope(const std::vector<SweepRow>& rows) {
  if (rows.size() < 2) throw std::invalid_argument("slope needs at least two rows");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    const double x = std::log(r.param);
    const double y = std::log(r.error);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(rows.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace dcurv
