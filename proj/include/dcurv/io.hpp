#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dcurv/grid.hpp"
#include "dcurv/simulation.hpp"

namespace dcurv {

// Shortest decimal that parses back to the same double.
std::string format_double(double x);

// "x[,y],re0,im0,re1,im1[,...]", one row per node in row-major order.
std::string snapshot_csv(const SpinorField& psi);
void write_snapshot(const SpinorField& psi, const std::string& path);
// "x[,y],density".
void write_density(const Grid& grid, std::span<const double> rho, const std::string& path);
// "step,t,l2,l2_gamma,krylov_iters"; krylov_iters empty for explicit schemes.
std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& series);
void write_diagnostics(const std::vector<DiagnosticsRecord>& series, const std::string& path);

// Reads values of a snapshot CSV into a field on `grid`; coordinates must
// match the grid nodes.
SpinorField read_snapshot(const std::string& path, const Grid& grid, int spinor_dim);

// Little-endian binary array: "DCRV", u32 rank, u32 extents[rank], f64 payload.
struct BinaryArray {
  std::vector<std::uint32_t> extents;
  std::vector<double> values;
};
void write_binary(const BinaryArray& arr, const std::string& path);
BinaryArray read_binary(const std::string& path);
// Extents (S, N0[, N1], 2), re/im innermost.
BinaryArray to_binary(const SpinorField& psi);

// 2-D fields with more nodes than this are written in binary form.
inline constexpr std::size_t kBinaryThreshold = 256 * 256;

}  // namespace dcurv
