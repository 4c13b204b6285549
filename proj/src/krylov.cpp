#include "dcurv/krylov.hpp"

#include <cmath>
#include <stdexcept>

#include "dcurv/errors.hpp"
#include "dcurv/kernels.hpp"

namespace dcurv {
namespace {

cplx dot(const SpinorField& x, const SpinorField& y) {
  return kernels::active().dot(x.flat().data(), y.flat().data(), x.flat().size());
}

double norm(const SpinorField& x) { return euclidean_norm(x); }

void axpy(SpinorField& y, cplx alpha, const SpinorField& x) {
  kernels::active().axpy(y.flat().data(), alpha, x.flat().data(), y.flat().size());
}

void scale(SpinorField& y, cplx alpha) { kernels::active().scale(y.flat().data(), alpha, y.flat().size()); }

// Complex Givens rotation zeroing b in (a, b).
void givens(cplx a, cplx b, double& c, cplx& s) {
  const double na = std::abs(a);
  const double nb = std::abs(b);
  if (nb == 0.0) {
    c = 1.0;
    s = 0.0;
    return;
  }
  if (na == 0.0) {
    c = 0.0;
    s = std::conj(b) / nb;
    return;
  }
  const double r = std::hypot(na, nb);
  c = na / r;
  s = (a / na) * std::conj(b) / r;
}

}  // namespace

void validate(const KrylovConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw ConfigError("krylov.tol must be > 0");
  if (cfg.restart < 1) throw ConfigError("krylov.restart must be >= 1");
  if (cfg.maxit < 1) throw ConfigError("krylov.maxit must be >= 1");
}

KrylovReport gmres(const LinearOperator& apply, const SpinorField& b, SpinorField& x, const KrylovConfig& cfg) {
  if (!b.same_shape(x)) throw std::invalid_argument("gmres: shape mismatch");
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("gmres: tol must be > 0");
  KrylovReport rep;
  const double bnorm = norm(b);
  if (bnorm == 0.0) {
    std::fill(x.flat().begin(), x.flat().end(), cplx(0.0));
    rep.converged = true;
    return rep;
  }

  const std::size_t m = static_cast<std::size_t>(std::max(1, cfg.restart));
  std::vector<SpinorField> v;
  v.reserve(m + 1);
  SpinorField w = b;
  std::vector<cplx> h((m + 1) * m);
  auto H = [&](std::size_t i, std::size_t j) -> cplx& { return h[j * (m + 1) + i]; };
  std::vector<double> cs(m);
  std::vector<cplx> sn(m);
  std::vector<cplx> g(m + 1);
  std::vector<cplx> proj(m + 1);

  auto residual_into = [&](SpinorField& r) {
    apply(x, r);
    if (!r.all_finite()) throw NumericalError("gmres: operator produced non-finite values");
    auto rf = r.flat();
    auto bf = b.flat();
    for (std::size_t k = 0; k < rf.size(); ++k) rf[k] = bf[k] - rf[k];
  };

  while (true) {
    residual_into(w);
    const double beta = norm(w);
    rep.residual = beta / bnorm;
    if (rep.residual <= cfg.tol) {
      rep.converged = true;
      return rep;
    }
    if (rep.iterations >= cfg.maxit) return rep;

    if (v.empty()) v.push_back(w);
    else v[0] = w;
    scale(v[0], 1.0 / beta);
    std::fill(g.begin(), g.end(), cplx(0.0));
    g[0] = beta;

    std::size_t j = 0;
    for (; j < m && rep.iterations < cfg.maxit; ++j) {
      apply(v[j], w);
      if (!w.all_finite()) throw NumericalError("gmres: operator produced non-finite values");
      for (std::size_t i = 0; i <= j; ++i) {
        H(i, j) = dot(v[i], w);
        axpy(w, -H(i, j), v[i]);
      }
      double wn = norm(w);
      double loss = 0.0;
      for (std::size_t i = 0; i <= j; ++i) {
        proj[i] = dot(v[i], w);
        loss = std::max(loss, std::abs(proj[i]));
      }
      if (wn > 0.0 && loss > 1e-8 * wn) {
        for (std::size_t i = 0; i <= j; ++i) {
          H(i, j) += proj[i];
          axpy(w, -proj[i], v[i]);
        }
        wn = norm(w);
      }
      H(j + 1, j) = wn;
      if (wn > 0.0) {
        if (v.size() <= j + 1) v.push_back(w);
        else v[j + 1] = w;
        scale(v[j + 1], 1.0 / wn);
      }

      for (std::size_t i = 0; i < j; ++i) {
        const cplx t = cs[i] * H(i, j) + sn[i] * H(i + 1, j);
        H(i + 1, j) = -std::conj(sn[i]) * H(i, j) + cs[i] * H(i + 1, j);
        H(i, j) = t;
      }
      givens(H(j, j), H(j + 1, j), cs[j], sn[j]);
      H(j, j) = cs[j] * H(j, j) + sn[j] * H(j + 1, j);
      H(j + 1, j) = 0.0;
      g[j + 1] = -std::conj(sn[j]) * g[j];
      g[j] *= cs[j];

      ++rep.iterations;
      const double est = std::abs(g[j + 1]) / bnorm;
      rep.history.push_back(est);
      if (est <= cfg.tol || wn == 0.0) {
        ++j;
        break;
      }
    }

    // Back-substitution on the j x j triangle, then x += V y.
    std::vector<cplx> y(j);
    for (std::size_t i = j; i-- > 0;) {
      cplx acc = g[i];
      for (std::size_t k = i + 1; k < j; ++k) acc -= H(i, k) * y[k];
      if (H(i, i) == cplx(0.0)) throw NumericalError("gmres: singular Hessenberg matrix");
      y[i] = acc / H(i, i);
    }
    for (std::size_t i = 0; i < j; ++i) axpy(x, y[i], v[i]);
    if (!x.all_finite()) throw NumericalError("gmres: iterate became non-finite");
  }
}

}  // namespace dcurv
