#include "dcurv/spinor.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace dcurv {
namespace {

constexpr cplx I{0.0, 1.0};

void check_s(int s) {
  if (s != 2 && s != 4) throw std::invalid_argument("spinor dimension must be 2 or 4");
}

int axes_for(int s) { return s == 2 ? 2 : 3; }

}  // namespace

SpinorMatrix identity(int s) {
  check_s(s);
  return SpinorMatrix::Identity(s, s);
}

SpinorMatrix pauli(int i) {
  SpinorMatrix m = SpinorMatrix::Zero(2, 2);
  switch (i) {
    case 1:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case 2:
      m(0, 1) = -I;
      m(1, 0) = I;
      break;
    case 3:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    default:
      throw std::invalid_argument("Pauli index must be 1, 2 or 3");
  }
  return m;
}

SpinorMatrix beta(int s) {
  check_s(s);
  if (s == 2) return pauli(3);
  SpinorMatrix b = SpinorMatrix::Identity(4, 4);
  b(2, 2) = -1.0;
  b(3, 3) = -1.0;
  return b;
}

SpinorMatrix alpha(int i, int s) {
  check_s(s);
  if (s == 2) return pauli(i);
  const SpinorMatrix p = pauli(i);
  SpinorMatrix a = SpinorMatrix::Zero(4, 4);
  a.block(0, 2, 2, 2) = p;
  a.block(2, 0, 2, 2) = p;
  return a;
}

SpinorMatrix exp_dirac(cplx g, const std::array<cplx, 3>& gvec, int s) {
  check_s(s);
  if (s == 2 && gvec[2] != cplx(0.0)) {
    throw std::invalid_argument("exp_dirac: third vector component is not available for S = 2");
  }
  SpinorMatrix x = g * beta(s);
  for (int i = 0; i < axes_for(s); ++i) {
    if (gvec[i] != cplx(0.0)) x += gvec[i] * alpha(i + 1, s);
  }
  const cplx g2 = g * g + gvec[0] * gvec[0] + gvec[1] * gvec[1] + gvec[2] * gvec[2];
  const cplx mod = std::sqrt(g2);
  SpinorMatrix out = identity(s);
  if (std::abs(mod) < 1e-150) {
    out += I * x;
    return out;
  }
  out *= std::cos(mod);
  out += (I * std::sin(mod) / mod) * x;
  return out;
}

SpinorMatrix expm_small(const SpinorMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols() || n < 1 || n > 4) throw std::invalid_argument("expm_small: square matrix up to 4x4");
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  if (norm == 0.0) return SpinorMatrix::Identity(n, n);
  const SpinorMatrix comm = m * m.adjoint() - m.adjoint() * m;
  if (comm.cwiseAbs().maxCoeff() <= 1e-14 * norm * norm) {
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(Eigen::MatrixXcd(m), true);
    const Eigen::MatrixXcd& u = schur.matrixU();
    const Eigen::MatrixXcd& t = schur.matrixT();
    Eigen::VectorXcd d(n);
    for (Eigen::Index i = 0; i < n; ++i) d(i) = std::exp(t(i, i));
    return u * d.asDiagonal() * u.adjoint();
  }
  int sq = 0;
  double scaled = norm;
  while (scaled > 0.25) {
    scaled *= 0.5;
    ++sq;
  }
  const SpinorMatrix a = m / std::ldexp(1.0, sq);
  SpinorMatrix term = SpinorMatrix::Identity(n, n);
  SpinorMatrix sum = term;
  for (int k = 1; k <= 18; ++k) {
    term = (term * a) / static_cast<double>(k);
    sum += term;
  }
  for (int k = 0; k < sq; ++k) sum = sum * sum;
  return sum;
}

AlphaDiagonalization diagonalize_alpha(int i, int s) {
  check_s(s);
  if (i < 1 || i > 3) throw std::invalid_argument("alpha index must be 1, 2 or 3");
  const SpinorMatrix a = alpha(i, s);
  std::vector<Eigen::VectorXcd> basis;
  AlphaDiagonalization out{SpinorMatrix::Zero(s, s), Eigen::VectorXd::Zero(s)};
  int col = 0;
  for (double sign : {1.0, -1.0}) {
    const SpinorMatrix proj = 0.5 * (identity(s) + sign * a);
    for (int j = 0; j < s; ++j) {
      Eigen::VectorXcd v = proj.col(j);
      for (const auto& b : basis) v -= b.dot(v) * b;
      const double nv = v.norm();
      if (nv < 1e-8) continue;
      v /= nv;
      for (Eigen::Index k = 0; k < v.size(); ++k) {
        if (std::abs(v(k)) > 1e-12) {
          v *= std::conj(v(k)) / std::abs(v(k));
          v(k) = std::abs(v(k));
          break;
        }
      }
      basis.push_back(v);
      out.pi.col(col) = v;
      out.lambda(col) = sign;
      ++col;
    }
  }
  if (col != s) throw std::logic_error("diagonalize_alpha: incomplete eigenbasis");
  return out;
}

CliffordParts clifford_decompose(const SpinorMatrix& m) {
  const int s = static_cast<int>(m.rows());
  check_s(s);
  const double inv = 1.0 / s;
  CliffordParts p{};
  p.scalar = m.trace() * inv;
  const SpinorMatrix b = beta(s);
  p.g = (b * m).trace() * inv;
  SpinorMatrix rest = m - p.scalar * identity(s) - p.g * b;
  for (int i = 0; i < axes_for(s); ++i) {
    const SpinorMatrix ai = alpha(i + 1, s);
    p.gvec[i] = (ai * m).trace() * inv;
    rest -= p.gvec[i] * ai;
  }
  p.residual = rest.cwiseAbs().maxCoeff();
  return p;
}

SpinorMatrix exp_minus_i(const SpinorMatrix& m, double tau) {
  const CliffordParts p = clifford_decompose(m);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (p.residual <= 1e-13 * scale) {
    const std::array<cplx, 3> gv{-tau * p.gvec[0], -tau * p.gvec[1], -tau * p.gvec[2]};
    return std::exp(-I * tau * p.scalar) * exp_dirac(-tau * p.g, gv, static_cast<int>(m.rows()));
  }
  return expm_small(SpinorMatrix(-I * tau * m));
}

}  // namespace dcurv
