#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "dcurv/grid.hpp"

namespace dcurv {

enum class PmlType { I = 1, II, III, IV, V, VI };

std::string_view to_string(PmlType t);
PmlType parse_pml_type(std::string_view text);

struct PmlConfig {
  bool enabled = false;
  PmlType type = PmlType::I;
  double sigma0 = 0.0;
  double theta = 0.0;
  // Layer width as a fraction of each half-width: L* = (1 - fraction) a.
  double fraction = 0.1;

  bool operator==(const PmlConfig&) const = default;
};

void validate(const PmlConfig& cfg);

// Absorption profile on one axis, s = |x| - L, delta = L - L*. Singular types
// (III-VI) are evaluated at s = -clamp_h when |x| >= L; clamp_h must then be > 0.
double sigma_profile(PmlType type, double sigma0, double x, double lstar, double l, double clamp_h);

// S^i = 1 + e^{i theta} Sigma(x^i), sampled on every node of the grid.
std::vector<cplx> stretch_factor(const PmlConfig& cfg, int axis, const Grid& grid);

// a^i / S^i elementwise.
std::vector<cplx> apply_pml(std::span<const double> a, std::span<const cplx> stretch);

}  // namespace dcurv
