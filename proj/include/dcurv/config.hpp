#pragma once

#include <array>
#include <string>
#include <string_view>

#include "dcurv/geometry.hpp"
#include "dcurv/grid.hpp"
#include "dcurv/krylov.hpp"
#include "dcurv/pml.hpp"
#include "dcurv/propagators.hpp"

namespace dcurv {

struct GridSpec {
  int d = 1;
  std::array<double, 2> a{};
  std::array<std::size_t, 2> n{};

  bool operator==(const GridSpec&) const = default;
};

enum class IcKind { GaussianWavepacket, GraphenePair, Table };

std::string_view to_string(IcKind k);
IcKind parse_ic_kind(std::string_view text);

struct IcSpec {
  IcKind kind = IcKind::GaussianWavepacket;
  std::array<double, 2> k0{};  // wavepacket momentum, one entry per axis
  double beta = 2.0;           // graphene_pair width
  std::string file;            // table: snapshot-format CSV

  bool operator==(const IcSpec&) const = default;
};

struct OutputSpec {
  std::string dir = "out";
  int stride = 0;  // snapshot every `stride` steps; 0 = final state only

  bool operator==(const OutputSpec&) const = default;
};

struct RunConfig {
  GridSpec grid;
  MetricModel metric;
  SchemeConfig scheme;
  PmlConfig pml;
  KrylovConfig krylov;
  IcSpec ic;
  OutputSpec output;

  bool operator==(const RunConfig&) const = default;
};

// Line-based "section.key = value" format with '#' comments. Unknown keys,
// duplicates and malformed values are ConfigErrors carrying the line number.
//
//   grid.d grid.a grid.N
//   metric.kind (flat|static1d|static2d|graphene) metric.spinor metric.m
//   metric.Phi metric.Psi metric.a0 metric.k0 metric.ell metric.Ax metric.Ay metric.V
//   scheme.kind (cn|poly1|poly2) scheme.dt scheme.T
//   pml.enabled pml.type pml.sigma0 pml.theta pml.fraction
//   krylov.tol krylov.restart krylov.maxit
//   ic.kind (gaussian_wavepacket|graphene_pair|table) ic.k0 ic.beta ic.file
//   output.dir output.stride
//
// grid.a, grid.N and ic.k0 take one value per axis; a single value is
// broadcast to both axes when grid.d = 2. Profiles are written
// "<kind> <params...>" (see Profile).
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

void validate(const RunConfig& cfg);
Grid build_grid(const RunConfig& cfg);

}  // namespace dcurv
