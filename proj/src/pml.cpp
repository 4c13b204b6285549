#include "dcurv/pml.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dcurv/errors.hpp"

namespace dcurv {

std::string_view to_string(PmlType t) {
  static constexpr std::string_view names[] = {"I", "II", "III", "IV", "V", "VI"};
  return names[static_cast<int>(t) - 1];
}

PmlType parse_pml_type(std::string_view text) {
  for (int i = 1; i <= 6; ++i) {
    if (to_string(static_cast<PmlType>(i)) == text) return static_cast<PmlType>(i);
  }
  throw ConfigError("unknown PML type '" + std::string(text) + "' (expected I..VI)");
}

void validate(const PmlConfig& cfg) {
  if (!(cfg.sigma0 >= 0.0) || !std::isfinite(cfg.sigma0)) throw ConfigError("pml.sigma0 must be >= 0");
  if (!(cfg.theta >= 0.0 && cfg.theta < std::numbers::pi / 2)) throw ConfigError("pml.theta must be in [0, pi/2)");
  if (!(cfg.fraction > 0.0 && cfg.fraction < 1.0)) throw ConfigError("pml.fraction must be in (0, 1)");
}

double sigma_profile(PmlType type, double sigma0, double x, double lstar, double l, double clamp_h) {
  if (!(lstar < l)) throw std::invalid_argument("sigma_profile: need L* < L");
  const double ax = std::abs(x);
  if (ax < lstar) return 0.0;
  const double delta = l - lstar;
  double s = ax - l;
  const bool singular = type != PmlType::I && type != PmlType::II;
  if (singular && s >= 0.0) {
    if (!(clamp_h > 0.0)) throw std::invalid_argument("sigma_profile: singular type at |x| = L without clamp");
    s = -clamp_h;
  }
  switch (type) {
    case PmlType::I:
      return sigma0 * (s + delta) * (s + delta);
    case PmlType::II:
      return sigma0 * (s + delta) * (s + delta) * (s + delta);
    case PmlType::III:
      return -sigma0 / s;
    case PmlType::IV:
      return sigma0 / (s * s);
    case PmlType::V:
      return -sigma0 / s - sigma0 / delta;
    case PmlType::VI:
      return sigma0 / (s * s) - sigma0 / (delta * delta);
  }
  return 0.0;
}

std::vector<cplx> stretch_factor(const PmlConfig& cfg, int axis, const Grid& grid) {
  if (axis < 0 || axis >= grid.dim()) throw std::out_of_range("axis out of range");
  std::vector<cplx> st(grid.size(), cplx(1.0, 0.0));
  if (!cfg.enabled) return st;
  const double l = grid.half_width(axis);
  const double lstar = (1.0 - cfg.fraction) * l;
  const double h = grid.spacing(axis);
  const cplx rot = std::polar(1.0, cfg.theta);
  std::vector<cplx> line(grid.count(axis));
  for (std::size_t k = 0; k < line.size(); ++k) {
    line[k] = 1.0 + rot * sigma_profile(cfg.type, cfg.sigma0, grid.node(axis, k), lstar, l, h);
  }
  for (std::size_t k = 0; k < st.size(); ++k) st[k] = line[grid.unflatten(k)[static_cast<std::size_t>(axis)]];
  return st;
}

std::vector<cplx> apply_pml(std::span<const double> a, std::span<const cplx> stretch) {
  if (a.size() != stretch.size()) throw std::invalid_argument("apply_pml: size mismatch");
  std::vector<cplx> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    out[k] = stretch[k] == cplx(1.0, 0.0) ? cplx(a[k], 0.0) : a[k] / stretch[k];
  }
  return out;
}

}  // namespace dcurv
