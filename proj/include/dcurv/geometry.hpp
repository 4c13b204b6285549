#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "dcurv/grid.hpp"
#include "dcurv/spinor.hpp"

namespace dcurv {

// Closed-form scalar profile f(x, y) with analytic gradient. Text form is
// "<kind> <params...>":
//   zero                 0
//   const c              c
//   gaussian A c         A exp(-c r^2)
//   cosgauss A k c       A cos(k x) exp(-c r^2)
//   linear A             A x
//   quadratic A          A x^2
//   invabs A             A / (|x| + 1)
// with r^2 = x^2 + y^2 (y = 0 in 1-D).
class Profile {
 public:
  enum class Kind { Zero, Const, Gaussian, CosGauss, Linear, Quadratic, InvAbs };

  Profile() = default;
  Profile(Kind kind, std::vector<double> params);
  static Profile parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  const std::vector<double>& params() const noexcept { return p_; }
  bool is_zero() const noexcept;

  double value(double x, double y = 0.0) const;
  std::array<double, 2> gradient(double x, double y = 0.0) const;
  std::string to_string() const;

  bool operator==(const Profile&) const = default;

 private:
  Kind kind_ = Kind::Zero;
  std::vector<double> p_;
};

enum class MetricKind { Flat, StaticDiagonal1D, StaticDiagonal2D, RippledGraphene1D };

std::string_view to_string(MetricKind k);
MetricKind parse_metric_kind(std::string_view text);

struct MetricModel {
  MetricKind kind = MetricKind::Flat;
  int spinor_dim = 2;
  double mass = 0.0;
  // Static metrics ds^2 = e^{2 Phi} dt^2 - e^{2 Psi} dx^2.
  Profile phi;
  Profile psi;
  // Rippled graphene h(x) = a0 cos(2 pi k0 x / ell).
  double a0 = 0.0;
  double k0 = 0.0;
  double ell = 1.0;
  // Vector and scalar potentials (flat and graphene).
  Profile ax;
  Profile ay;
  Profile v;

  bool operator==(const MetricModel&) const = default;
};

// Throws ConfigError when the model does not fit the grid dimension.
void validate(const MetricModel& model, const Grid& grid);

double graphene_f(double x, double a0, double k0, double ell);

// a^i(x_k) per axis, each of length grid.size().
std::vector<std::vector<double>> velocity_fields(const MetricModel& model, const Grid& grid);

struct PotentialField {
  double t = 0.0;
  int spinor_dim = 2;
  std::vector<SpinorMatrix> m;  // one S x S matrix per node
};

PotentialField potential_field(const MetricModel& model, const Grid& grid, double t);

// c^i = d_i Phi / 2 for static metrics; zero otherwise.
std::vector<std::vector<double>> connection_fields(const MetricModel& model, const Grid& grid);

// Weight of the conserved covariant norm.
std::vector<double> gamma_weight(const MetricModel& model, const Grid& grid);

}  // namespace dcurv
