#include "dcurv/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dcurv/errors.hpp"

namespace dcurv {
namespace {

static_assert(std::endian::native == std::endian::little, "binary snapshots assume a little-endian host");

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed: '" + path + "'");
}

void coords_header(std::ostringstream& o, int d) { o << (d == 2 ? "x,y" : "x"); }

void coords_row(std::ostringstream& o, const Grid& grid, std::size_t k) {
  const auto x = grid.coords(k);
  o << format_double(x[0]);
  if (grid.dim() == 2) o << ',' << format_double(x[1]);
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

std::string snapshot_csv(const SpinorField& psi) {
  const Grid& grid = psi.grid();
  std::ostringstream o;
  coords_header(o, grid.dim());
  for (int c = 0; c < psi.spinor_dim(); ++c) o << ",re" << c << ",im" << c;
  o << '\n';
  for (std::size_t k = 0; k < psi.nodes(); ++k) {
    coords_row(o, grid, k);
    for (int c = 0; c < psi.spinor_dim(); ++c) {
      const cplx z = psi(c, k);
      o << ',' << format_double(z.real()) << ',' << format_double(z.imag());
    }
    o << '\n';
  }
  return o.str();
}

void write_snapshot(const SpinorField& psi, const std::string& path) { write_text(path, snapshot_csv(psi)); }

void write_density(const Grid& grid, std::span<const double> rho, const std::string& path) {
  if (rho.size() != grid.size()) throw std::invalid_argument("density size mismatch");
  std::ostringstream o;
  coords_header(o, grid.dim());
  o << ",density\n";
  for (std::size_t k = 0; k < rho.size(); ++k) {
    coords_row(o, grid, k);
    o << ',' << format_double(rho[k]) << '\n';
  }
  write_text(path, o.str());
}

std::string diagnostics_csv(const std::vector<DiagnosticsRecord>& series) {
  std::ostringstream o;
  o << "step,t,l2,l2_gamma,krylov_iters\n";
  for (const auto& r : series) {
    o << r.step << ',' << format_double(r.t) << ',' << format_double(r.l2) << ',' << format_double(r.l2_gamma) << ',';
    if (r.krylov_iters >= 0) o << r.krylov_iters;
    o << '\n';
  }
  return o.str();
}

void write_diagnostics(const std::vector<DiagnosticsRecord>& series, const std::string& path) {
  write_text(path, diagnostics_csv(series));
}

SpinorField read_snapshot(const std::string& path, const Grid& grid, int spinor_dim) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open table '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("table '" + path + "' is empty");
  const int d = grid.dim();
  const std::size_t ncols = static_cast<std::size_t>(d + 2 * spinor_dim);
  SpinorField psi(grid, spinor_dim);
  std::vector<double> vals(ncols);
  std::size_t k = 0;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    if (k >= grid.size()) throw ConfigError(path + ":" + std::to_string(lineno) + ": more rows than grid nodes");
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (std::size_t c = 0; c < ncols; ++c) {
      auto [q, ec] = std::from_chars(p, end, vals[c]);
      if (ec != std::errc()) throw ConfigError(path + ":" + std::to_string(lineno) + ": bad number");
      p = q;
      if (c + 1 < ncols) {
        if (p == end || *p != ',') throw ConfigError(path + ":" + std::to_string(lineno) + ": expected " +
                                                     std::to_string(ncols) + " columns");
        ++p;
      }
    }
    const auto x = grid.coords(k);
    for (int i = 0; i < d; ++i) {
      const double tol = 1e-9 * grid.half_width(i);
      if (std::abs(vals[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i)]) > tol) {
        throw ConfigError(path + ":" + std::to_string(lineno) + ": coordinates do not match the grid");
      }
    }
    for (int c = 0; c < spinor_dim; ++c) {
      psi(c, k) = cplx(vals[static_cast<std::size_t>(d + 2 * c)], vals[static_cast<std::size_t>(d + 2 * c + 1)]);
    }
    ++k;
  }
  if (k != grid.size()) throw ConfigError("table '" + path + "' has " + std::to_string(k) + " rows, grid has " +
                                          std::to_string(grid.size()) + " nodes");
  return psi;
}

void write_binary(const BinaryArray& arr, const std::string& path) {
  std::size_t count = 1;
  for (auto e : arr.extents) count *= e;
  if (count != arr.values.size()) throw std::invalid_argument("binary array: extents do not match payload");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.write("DCRV", 4);
  const auto rank = static_cast<std::uint32_t>(arr.extents.size());
  out.write(reinterpret_cast<const char*>(&rank), sizeof rank);
  out.write(reinterpret_cast<const char*>(arr.extents.data()),
            static_cast<std::streamsize>(arr.extents.size() * sizeof(std::uint32_t)));
  out.write(reinterpret_cast<const char*>(arr.values.data()),
            static_cast<std::streamsize>(arr.values.size() * sizeof(double)));
  if (!out) throw std::runtime_error("write failed: '" + path + "'");
}

BinaryArray read_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "DCRV", 4) != 0) throw std::runtime_error("'" + path + "' is not a DCRV file");
  std::uint32_t rank = 0;
  in.read(reinterpret_cast<char*>(&rank), sizeof rank);
  if (!in || rank > 8) throw std::runtime_error("bad DCRV header in '" + path + "'");
  BinaryArray arr;
  arr.extents.resize(rank);
  in.read(reinterpret_cast<char*>(arr.extents.data()), static_cast<std::streamsize>(rank * sizeof(std::uint32_t)));
  std::size_t count = 1;
  for (auto e : arr.extents) count *= e;
  arr.values.resize(count);
  in.read(reinterpret_cast<char*>(arr.values.data()), static_cast<std::streamsize>(count * sizeof(double)));
  if (!in) throw std::runtime_error("truncated DCRV payload in '" + path + "'");
  return arr;
}

BinaryArray to_binary(const SpinorField& psi) {
  const Grid& g = psi.grid();
  BinaryArray arr;
  arr.extents.push_back(static_cast<std::uint32_t>(psi.spinor_dim()));
  for (int i = 0; i < g.dim(); ++i) arr.extents.push_back(static_cast<std::uint32_t>(g.count(i)));
  arr.extents.push_back(2);
  arr.values.reserve(psi.flat().size() * 2);
  for (const cplx& z : psi.flat()) {
    arr.values.push_back(z.real());
    arr.values.push_back(z.imag());
  }
  return arr;
}

}  // namespace dcurv
