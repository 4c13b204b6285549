#include "dcurv/geometry.hpp"

#include <cmath>
#include <charconv>
#include <numbers>
#include <sstream>

#include "dcurv/errors.hpp"

namespace dcurv {
namespace {

struct KindInfo {
  Profile::Kind kind;
  std::string_view name;
  std::size_t nparams;
};

constexpr KindInfo kKinds[] = {
    {Profile::Kind::Zero, "zero", 0},         {Profile::Kind::Const, "const", 1},
    {Profile::Kind::Gaussian, "gaussian", 2}, {Profile::Kind::CosGauss, "cosgauss", 3},
    {Profile::Kind::Linear, "linear", 1},     {Profile::Kind::Quadratic, "quadratic", 1},
    {Profile::Kind::InvAbs, "invabs", 1},
};

const KindInfo& info(Profile::Kind k) {
  for (const auto& i : kKinds) {
    if (i.kind == k) return i;
  }
  throw std::logic_error("unknown profile kind");
}

std::string fmt(double x) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

}  // namespace

Profile::Profile(Kind kind, std::vector<double> params) : kind_(kind), p_(std::move(params)) {
  if (p_.size() != info(kind).nparams) {
    throw ConfigError("profile '" + std::string(info(kind).name) + "' expects " +
                      std::to_string(info(kind).nparams) + " parameters");
  }
  for (double v : p_) {
    if (!std::isfinite(v)) throw ConfigError("profile parameter is not finite");
  }
}

Profile Profile::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string name;
  if (!(in >> name)) throw ConfigError("empty profile");
  std::vector<double> params;
  std::string tok;
  while (in >> tok) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ConfigError("bad profile parameter '" + tok + "'");
    }
    params.push_back(v);
  }
  for (const auto& i : kKinds) {
    if (i.name == name) return Profile(i.kind, std::move(params));
  }
  throw ConfigError("unknown profile '" + name + "'");
}

bool Profile::is_zero() const noexcept { return kind_ == Kind::Zero || p_[0] == 0.0; }

double Profile::value(double x, double y) const {
  switch (kind_) {
    case Kind::Zero:
      return 0.0;
    case Kind::Const:
      return p_[0];
    case Kind::Gaussian:
      return p_[0] * std::exp(-p_[1] * (x * x + y * y));
    case Kind::CosGauss:
      return p_[0] * std::cos(p_[1] * x) * std::exp(-p_[2] * (x * x + y * y));
    case Kind::Linear:
      return p_[0] * x;
    case Kind::Quadratic:
      return p_[0] * x * x;
    case Kind::InvAbs:
      return p_[0] / (std::abs(x) + 1.0);
  }
  return 0.0;
}

std::array<double, 2> Profile::gradient(double x, double y) const {
  switch (kind_) {
    case Kind::Zero:
    case Kind::Const:
      return {0.0, 0.0};
    case Kind::Gaussian: {
      const double g = value(x, y);
      return {-2.0 * p_[1] * x * g, -2.0 * p_[1] * y * g};
    }
    case Kind::CosGauss: {
      const double e = std::exp(-p_[2] * (x * x + y * y));
      const double c = std::cos(p_[1] * x);
      const double s = std::sin(p_[1] * x);
      return {p_[0] * e * (-p_[1] * s - 2.0 * p_[2] * x * c), -2.0 * p_[2] * y * p_[0] * c * e};
    }
    case Kind::Linear:
      return {p_[0], 0.0};
    case Kind::Quadratic:
      return {2.0 * p_[0] * x, 0.0};
    case Kind::InvAbs: {
      const double d = std::abs(x) + 1.0;
      const double sg = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
      return {-p_[0] * sg / (d * d), 0.0};
    }
  }
  return {0.0, 0.0};
}

std::string Profile::to_string() const {
  std::string s(info(kind_).name);
  for (double v : p_) s += " " + fmt(v);
  return s;
}

std::string_view to_string(MetricKind k) {
  switch (k) {
    case MetricKind::Flat:
      return "flat";
    case MetricKind::StaticDiagonal1D:
      return "static1d";
    case MetricKind::StaticDiagonal2D:
      return "static2d";
    case MetricKind::RippledGraphene1D:
      return "graphene";
  }
  return "?";
}

MetricKind parse_metric_kind(std::string_view text) {
  for (auto k : {MetricKind::Flat, MetricKind::StaticDiagonal1D, MetricKind::StaticDiagonal2D,
                 MetricKind::RippledGraphene1D}) {
    if (to_string(k) == text) return k;
  }
  throw ConfigError("unknown metric kind '" + std::string(text) + "'");
}

void validate(const MetricModel& model, const Grid& grid) {
  if (model.spinor_dim != 2 && model.spinor_dim != 4) throw ConfigError("metric.spinor must be 2 or 4");
  if (!std::isfinite(model.mass)) throw ConfigError("metric.m must be finite");
  switch (model.kind) {
    case MetricKind::Flat:
      break;
    case MetricKind::StaticDiagonal1D:
      if (grid.dim() != 1) throw ConfigError("static1d metric needs grid.d = 1");
      break;
    case MetricKind::StaticDiagonal2D:
      if (grid.dim() != 2) throw ConfigError("static2d metric needs grid.d = 2");
      break;
    case MetricKind::RippledGraphene1D:
      if (grid.dim() != 1) throw ConfigError("graphene metric needs grid.d = 1");
      if (!(model.ell > 0.0)) throw ConfigError("metric.ell must be positive");
      break;
  }
  const bool is_static =
      model.kind == MetricKind::StaticDiagonal1D || model.kind == MetricKind::StaticDiagonal2D;
  if (is_static && (!model.ax.is_zero() || !model.ay.is_zero() || !model.v.is_zero())) {
    throw ConfigError("static metrics take no external potentials");
  }
  if (!is_static && (!model.phi.is_zero() || !model.psi.is_zero())) {
    throw ConfigError("metric.Phi / metric.Psi only apply to static metrics");
  }
  if (grid.dim() == 1 && !model.ay.is_zero()) throw ConfigError("metric.Ay needs grid.d = 2");
  if (model.kind == MetricKind::RippledGraphene1D) velocity_fields(model, grid);
}

double graphene_f(double x, double a0, double k0, double ell) {
  const double s = std::sin(2.0 * std::numbers::pi * k0 * x / ell);
  return 2.0 * std::numbers::pi * std::numbers::pi * a0 * a0 * k0 * k0 * s * s / (ell * ell);
}

std::vector<std::vector<double>> velocity_fields(const MetricModel& model, const Grid& grid) {
  const std::size_t n = grid.size();
  std::vector<std::vector<double>> a(static_cast<std::size_t>(grid.dim()), std::vector<double>(n, 1.0));
  switch (model.kind) {
    case MetricKind::Flat:
      break;
    case MetricKind::StaticDiagonal1D:
    case MetricKind::StaticDiagonal2D:
      for (std::size_t k = 0; k < n; ++k) {
        const auto x = grid.coords(k);
        const double v = std::exp(model.phi.value(x[0], x[1]) - model.psi.value(x[0], x[1]));
        for (auto& ai : a) ai[k] = v;
      }
      break;
    case MetricKind::RippledGraphene1D:
      for (std::size_t k = 0; k < n; ++k) {
        const double x = grid.coords(k)[0];
        const double f = graphene_f(x, model.a0, model.k0, model.ell);
        if (f >= 1.0) throw DegeneracyError("graphene metric degenerate: f(x) >= 1 at x = " + std::to_string(x));
        a[0][k] = 1.0 / (1.0 - f);
      }
      break;
  }
  return a;
}

PotentialField potential_field(const MetricModel& model, const Grid& grid, double t) {
  const int s = model.spinor_dim;
  PotentialField out{t, s, {}};
  out.m.resize(grid.size());
  const SpinorMatrix b = beta(s);
  const SpinorMatrix id = identity(s);
  const SpinorMatrix a1 = alpha(1, s);
  const SpinorMatrix a2 = alpha(2, s);
  const auto vel = velocity_fields(model, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto x = grid.coords(k);
    switch (model.kind) {
      case MetricKind::Flat: {
        SpinorMatrix m = model.mass * b + model.v.value(x[0], x[1]) * id - model.ax.value(x[0], x[1]) * a1;
        if (grid.dim() == 2) m -= model.ay.value(x[0], x[1]) * a2;
        out.m[k] = m;
        break;
      }
      case MetricKind::StaticDiagonal1D:
      case MetricKind::StaticDiagonal2D:
        out.m[k] = std::exp(model.phi.value(x[0], x[1])) * model.mass * b;
        break;
      case MetricKind::RippledGraphene1D:
        out.m[k] = -vel[0][k] * model.ax.value(x[0]) * a1 + (model.mass - model.v.value(x[0])) * b;
        break;
    }
  }
  return out;
}

std::vector<std::vector<double>> connection_fields(const MetricModel& model, const Grid& grid) {
  const std::size_t n = grid.size();
  std::vector<std::vector<double>> c(static_cast<std::size_t>(grid.dim()), std::vector<double>(n, 0.0));
  if (model.kind != MetricKind::StaticDiagonal1D && model.kind != MetricKind::StaticDiagonal2D) return c;
  for (std::size_t k = 0; k < n; ++k) {
    const auto x = grid.coords(k);
    const auto g = model.phi.gradient(x[0], x[1]);
    for (int i = 0; i < grid.dim(); ++i) c[static_cast<std::size_t>(i)][k] = 0.5 * g[static_cast<std::size_t>(i)];
  }
  return c;
}

std::vector<double> gamma_weight(const MetricModel& model, const Grid& grid) {
  const std::size_t n = grid.size();
  std::vector<double> w(n, 1.0);
  switch (model.kind) {
    case MetricKind::Flat:
      break;
    case MetricKind::StaticDiagonal1D:
    case MetricKind::StaticDiagonal2D:
      // (w a^i)' = w a^i d_i Phi on every axis, so w = e^Phi / a = e^Psi.
      for (std::size_t k = 0; k < n; ++k) {
        const auto x = grid.coords(k);
        w[k] = std::exp(model.psi.value(x[0], x[1]));
      }
      break;
    case MetricKind::RippledGraphene1D:
      for (std::size_t k = 0; k < n; ++k) {
        w[k] = 1.0 - graphene_f(grid.coords(k)[0], model.a0, model.k0, model.ell);
      }
      break;
  }
  return w;
}

}  // namespace dcurv
