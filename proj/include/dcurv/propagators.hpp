#pragma once

#include <array>
#include <string_view>
#include <utility>
#include <vector>

#include "dcurv/geometry.hpp"
#include "dcurv/grid.hpp"
#include "dcurv/krylov.hpp"
#include "dcurv/pml.hpp"
#include "dcurv/spinor.hpp"

namespace dcurv {

enum class SchemeKind { CN, Poly1, Poly2 };

std::string_view to_string(SchemeKind k);
SchemeKind parse_scheme_kind(std::string_view text);

struct SchemeConfig {
  SchemeKind kind = SchemeKind::CN;
  double dt = 1e-3;
  double T = 0.0;

  bool operator==(const SchemeConfig&) const = default;
};

void validate(const SchemeConfig& cfg);

// Everything a Strang step needs, precomputed for one (grid, model, pml, dt).
// Per-node S x S matrices are stored as S*S separate node arrays (entry
// (r, c) at index r*S + c). The scratch fields make a workspace unsafe to
// share between threads.
struct StepWorkspace {
  explicit StepWorkspace(Grid g) : grid(std::move(g)) {}

  Grid grid;
  int s = 2;
  SchemeKind scheme = SchemeKind::CN;
  double dt = 0.0;
  double t_half = 0.0;
  KrylovConfig krylov;

  std::vector<SpinorMatrix> potential;            // M at every node
  bool has_potential = false;
  std::vector<std::vector<cplx>> half_exp;        // exp(-i dt/2 M)

  std::vector<std::vector<double>> velocity;      // a^i
  std::vector<std::vector<cplx>> vel;             // a^i / S^i
  std::vector<SpinorMatrix> alpha;                // alpha^i
  std::vector<AlphaDiagonalization> diag;
  std::vector<std::vector<cplx>> d1;              // first-derivative symbols

  std::vector<std::vector<double>> connection;    // c^i
  bool has_connection = false;
  std::vector<std::vector<cplx>> conn_exp;        // exp(-dt/2 sum_i a c^i alpha^i)

  std::vector<std::array<std::vector<cplx>, 2>> shift;  // e^{-i dt lambda xi}/N, lambda = +1, -1
  std::vector<std::vector<cplx>> d2;                    // second-derivative symbols
  std::vector<std::vector<cplx>> poly2_coef;            // a(a-1)/2 dt^2 with a = a^i/S^i

  mutable std::vector<SpinorField> scratch;
};

StepWorkspace make_workspace(const Grid& grid, const MetricModel& model, const PmlConfig& pml,
                             const SchemeConfig& scheme, const KrylovConfig& krylov);
// Recompute the dt-dependent factors. Negative dt steps backwards.
void set_time_step(StepWorkspace& ws, double dt);

// In-place pointwise exp(-i dt/2 M_k).
void half_potential_step(SpinorField& psi, const StepWorkspace& ws);
// In-place pointwise connection factor.
void connection_step(SpinorField& psi, const StepWorkspace& ws);

// out <- psi + sign (dt/2) sum_i (a^i/S^i) alpha^i [[d_i]] psi.
void cn_operator_apply(const SpinorField& psi, SpinorField& out, const StepWorkspace& ws, int sign);
// Solves G x = G~ psi with GMRES warm-started at psi; throws KrylovFailure.
KrylovReport cn_transport_step(SpinorField& psi, const StepWorkspace& ws);

// Directional exponential-stabilised step along one axis.
void poly_axis_step(SpinorField& psi, int axis, const StepWorkspace& ws);
// Same with the explicit a(a-1)/2 dt^2 [[d_i^2]] correction on the shifted field.
void poly_axis_step2(SpinorField& psi, int axis, const StepWorkspace& ws);

struct StepReport {
  int krylov_iterations = -1;  // -1 for explicit schemes
  double krylov_residual = 0.0;
};

StepReport strang_step(SpinorField& psi, const StepWorkspace& ws);

}  // namespace dcurv
