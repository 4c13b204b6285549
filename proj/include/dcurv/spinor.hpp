#pragma once

#include <Eigen/Dense>
#include <array>

#include "dcurv/grid.hpp"

namespace dcurv {

using SpinorMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;

SpinorMatrix identity(int s);
// sigma^i, i = 1, 2, 3.
SpinorMatrix pauli(int i);
// S = 2: beta = sigma^3, alpha^i = sigma^i. S = 4: Dirac representation.
SpinorMatrix beta(int s);
SpinorMatrix alpha(int i, int s);

// I cos|G| + i (beta G + alpha . Gvec) sin|G| / |G|, |G| = sqrt(G^2 + Gvec . Gvec).
// Arguments may be complex. For S = 2 the third entry of Gvec must vanish
// (sigma^3 is already beta and would break the anticommutation the closed
// form relies on).
SpinorMatrix exp_dirac(cplx g, const std::array<cplx, 3>& gvec, int s);

// exp(M) for S <= 4: Schur diagonalisation when M is normal, scaling and
// squaring with a Taylor core otherwise.
SpinorMatrix expm_small(const SpinorMatrix& m);

struct AlphaDiagonalization {
  SpinorMatrix pi;
  Eigen::VectorXd lambda;  // +1 entries first
};

// alpha^i = Pi diag(lambda) Pi^dagger; eigenvectors phase-fixed so the first
// nonzero component is real positive.
AlphaDiagonalization diagonalize_alpha(int i, int s);

// M = s I + G beta + Gvec . alpha + R, coefficients from traces.
struct CliffordParts {
  cplx scalar;
  cplx g;
  std::array<cplx, 3> gvec;
  double residual;  // max |R_ij|
};
CliffordParts clifford_decompose(const SpinorMatrix& m);

// exp(-i tau M), via exp_dirac when M has no Clifford residual.
SpinorMatrix exp_minus_i(const SpinorMatrix& m, double tau);

}  // namespace dcurv
