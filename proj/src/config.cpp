#include "dcurv/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include "dcurv/errors.hpp"

namespace dcurv {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t b = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > b) out.push_back(s.substr(b, i - b));
  }
  return out;
}

double to_double(std::string_view s) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ConfigError("expected a number, got '" + std::string(s) + "'");
  return v;
}

long to_long(std::string_view s) {
  long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ConfigError("expected an integer, got '" + std::string(s) + "'");
  return v;
}

bool to_bool(std::string_view s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw ConfigError("expected true or false, got '" + std::string(s) + "'");
}

std::vector<double> doubles(std::string_view s) {
  std::vector<double> out;
  for (auto w : words(s)) out.push_back(to_double(w));
  if (out.empty() || out.size() > 2) throw ConfigError("expected one or two numbers");
  return out;
}

std::string fmt(double x) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

// Per-axis values are stored as given; broadcasting happens after parsing
// once grid.d is known.
struct Pending {
  std::vector<double> a;
  std::vector<double> n;
  std::vector<double> k0;
};

using Setter = std::function<void(RunConfig&, Pending&, std::string_view)>;

std::map<std::string, Setter, std::less<>> make_setters() {
  std::map<std::string, Setter, std::less<>> t;
  t["grid.d"] = [](RunConfig& c, Pending&, std::string_view v) { c.grid.d = static_cast<int>(to_long(v)); };
  t["grid.a"] = [](RunConfig&, Pending& p, std::string_view v) { p.a = doubles(v); };
  t["grid.N"] = [](RunConfig&, Pending& p, std::string_view v) {
    p.n.clear();
    for (auto w : words(v)) {
      const long n = to_long(w);
      if (n < 0) throw ConfigError("expected a nonnegative integer");
      p.n.push_back(static_cast<double>(n));
    }
    if (p.n.empty() || p.n.size() > 2) throw ConfigError("expected one or two integers");
  };
  t["metric.kind"] = [](RunConfig& c, Pending&, std::string_view v) { c.metric.kind = parse_metric_kind(v); };
  t["metric.spinor"] = [](RunConfig& c, Pending&, std::string_view v) { c.metric.spinor_dim = static_cast<int>(to_long(v)); };
  t["metric.m"] = [](RunConfig& c, Pending&, std::string_view v) { c.metric.mass = to_double(v); };
  t["metric.Phi"] = [](RunConfig& c, Pending&, std::string_view v) { c.metric.phi = Profile::parse(v); };
  t["metric.Psi"] = [](RunConfig& c, Pending&, std::string_view v) { c.metric.psi = Profile::parse(v); };
  t["metric.a0"] = [](RunConfig& c, Pending&, std::string_view v) { c.metric.a0 = to_double(v); };
  t["metric.k0"] = [](RunConfig& c, Pending&, std::string_view v) { c.metric.k0 = to_double(v); };
  t["metric.ell"] = [](RunConfig& c, Pending&, std::string_view v) { c.metric.ell = to_double(v); };
  t["metric.Ax"] = [](RunConfig& c, Pending&, std::string_view v) { c.metric.ax = Profile::parse(v); };
  t["metric.Ay"] = [](RunConfig& c, Pending&, std::string_view v) { c.metric.ay = Profile::parse(v); };
  t["metric.V"] = [](RunConfig& c, Pending&, std::string_view v) { c.metric.v = Profile::parse(v); };
  t["scheme.kind"] = [](RunConfig& c, Pending&, std::string_view v) { c.scheme.kind = parse_scheme_kind(v); };
  t["scheme.dt"] = [](RunConfig& c, Pending&, std::string_view v) { c.scheme.dt = to_double(v); };
  t["scheme.T"] = [](RunConfig& c, Pending&, std::string_view v) { c.scheme.T = to_double(v); };
  t["pml.enabled"] = [](RunConfig& c, Pending&, std::string_view v) { c.pml.enabled = to_bool(v); };
  t["pml.type"] = [](RunConfig& c, Pending&, std::string_view v) { c.pml.type = parse_pml_type(v); };
  t["pml.sigma0"] = [](RunConfig& c, Pending&, std::string_view v) { c.pml.sigma0 = to_double(v); };
  t["pml.theta"] = [](RunConfig& c, Pending&, std::string_view v) { c.pml.theta = to_double(v); };
  t["pml.fraction"] = [](RunConfig& c, Pending&, std::string_view v) { c.pml.fraction = to_double(v); };
  t["krylov.tol"] = [](RunConfig& c, Pending&, std::string_view v) { c.krylov.tol = to_double(v); };
  t["krylov.restart"] = [](RunConfig& c, Pending&, std::string_view v) { c.krylov.restart = static_cast<int>(to_long(v)); };
  t["krylov.maxit"] = [](RunConfig& c, Pending&, std::string_view v) { c.krylov.maxit = static_cast<int>(to_long(v)); };
  t["ic.kind"] = [](RunConfig& c, Pending&, std::string_view v) { c.ic.kind = parse_ic_kind(v); };
  t["ic.k0"] = [](RunConfig&, Pending& p, std::string_view v) { p.k0 = doubles(v); };
  t["ic.beta"] = [](RunConfig& c, Pending&, std::string_view v) { c.ic.beta = to_double(v); };
  t["ic.file"] = [](RunConfig& c, Pending&, std::string_view v) { c.ic.file = std::string(v); };
  t["output.dir"] = [](RunConfig& c, Pending&, std::string_view v) { c.output.dir = std::string(v); };
  t["output.stride"] = [](RunConfig& c, Pending&, std::string_view v) { c.output.stride = static_cast<int>(to_long(v)); };
  return t;
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const auto table = make_setters();
  return table;
}

constexpr std::string_view kRequired[] = {"grid.d",      "grid.a",    "grid.N",  "metric.kind",
                                          "scheme.kind", "scheme.dt", "scheme.T", "ic.kind"};

template <class T>
void spread(const std::vector<double>& in, int d, std::array<T, 2>& out, std::string_view key) {
  if (in.empty()) return;
  if (static_cast<int>(in.size()) > d) throw ConfigError(std::string(key) + " has more values than grid.d");
  out = {};
  for (int i = 0; i < d; ++i) {
    out[static_cast<std::size_t>(i)] = static_cast<T>(in.size() == 1 ? in[0] : in[static_cast<std::size_t>(i)]);
  }
}

}  // namespace

std::string_view to_string(IcKind k) {
  switch (k) {
    case IcKind::GaussianWavepacket:
      return "gaussian_wavepacket";
    case IcKind::GraphenePair:
      return "graphene_pair";
    case IcKind::Table:
      return "table";
  }
  return "?";
}

IcKind parse_ic_kind(std::string_view text) {
  for (auto k : {IcKind::GaussianWavepacket, IcKind::GraphenePair, IcKind::Table}) {
    if (to_string(k) == text) return k;
  }
  throw ConfigError("unknown initial condition '" + std::string(text) + "'");
}

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  Pending pending;
  const auto& table = setters();
  std::map<std::string, int, std::less<>> seen;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (eq == std::string_view::npos) throw ConfigError(where + "expected 'section.key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError(where + "unknown key '" + std::string(key) + "'");
    if (seen.count(key)) throw ConfigError(where + "duplicate key '" + std::string(key) + "'");
    seen.emplace(std::string(key), lineno);
    try {
      it->second(cfg, pending, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + std::string(key) + ": " + e.what());
    }
  }
  for (auto key : kRequired) {
    if (!seen.count(key)) throw ConfigError("missing required key " + std::string(key));
  }
  if (cfg.grid.d != 1 && cfg.grid.d != 2) throw ConfigError("line " + std::to_string(seen["grid.d"]) + ": grid.d must be 1 or 2");
  spread(pending.a, cfg.grid.d, cfg.grid.a, "grid.a");
  spread(pending.n, cfg.grid.d, cfg.grid.n, "grid.N");
  spread(pending.k0, cfg.grid.d, cfg.ic.k0, "ic.k0");
  try {
    validate(cfg);
  } catch (const ConfigError& e) {
    // Attribute the message to the line of the key it names, when there is one.
    const std::string msg = e.what();
    for (const auto& [key, line] : seen) {
      if (msg.rfind(key, 0) == 0) throw ConfigError("line " + std::to_string(line) + ": " + msg);
    }
    throw;
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
  std::ostringstream o;
  const int d = c.grid.d;
  auto axes = [d](const auto& arr) {
    std::string s;
    for (int i = 0; i < d; ++i) {
      if (i) s += ' ';
      if constexpr (std::is_same_v<std::decay_t<decltype(arr[0])>, double>) {
        s += fmt(arr[static_cast<std::size_t>(i)]);
      } else {
        s += std::to_string(arr[static_cast<std::size_t>(i)]);
      }
    }
    return s;
  };
  o << "grid.d = " << d << "\n";
  o << "grid.a = " << axes(c.grid.a) << "\n";
  o << "grid.N = " << axes(c.grid.n) << "\n";
  o << "metric.kind = " << to_string(c.metric.kind) << "\n";
  o << "metric.spinor = " << c.metric.spinor_dim << "\n";
  o << "metric.m = " << fmt(c.metric.mass) << "\n";
  o << "metric.Phi = " << c.metric.phi.to_string() << "\n";
  o << "metric.Psi = " << c.metric.psi.to_string() << "\n";
  o << "metric.a0 = " << fmt(c.metric.a0) << "\n";
  o << "metric.k0 = " << fmt(c.metric.k0) << "\n";
  o << "metric.ell = " << fmt(c.metric.ell) << "\n";
  o << "metric.Ax = " << c.metric.ax.to_string() << "\n";
  o << "metric.Ay = " << c.metric.ay.to_string() << "\n";
  o << "metric.V = " << c.metric.v.to_string() << "\n";
  o << "scheme.kind = " << to_string(c.scheme.kind) << "\n";
  o << "scheme.dt = " << fmt(c.scheme.dt) << "\n";
  o << "scheme.T = " << fmt(c.scheme.T) << "\n";
  o << "pml.enabled = " << (c.pml.enabled ? "true" : "false") << "\n";
  o << "pml.type = " << to_string(c.pml.type) << "\n";
  o << "pml.sigma0 = " << fmt(c.pml.sigma0) << "\n";
  o << "pml.theta = " << fmt(c.pml.theta) << "\n";
  o << "pml.fraction = " << fmt(c.pml.fraction) << "\n";
  o << "krylov.tol = " << fmt(c.krylov.tol) << "\n";
  o << "krylov.restart = " << c.krylov.restart << "\n";
  o << "krylov.maxit = " << c.krylov.maxit << "\n";
  o << "ic.kind = " << to_string(c.ic.kind) << "\n";
  o << "ic.k0 = " << axes(c.ic.k0) << "\n";
  o << "ic.beta = " << fmt(c.ic.beta) << "\n";
  if (!c.ic.file.empty()) o << "ic.file = " << c.ic.file << "\n";
  o << "output.dir = " << c.output.dir << "\n";
  o << "output.stride = " << c.output.stride << "\n";
  return o.str();
}

void validate(const RunConfig& cfg) {
  const Grid grid = build_grid(cfg);
  validate(cfg.metric, grid);
  validate(cfg.scheme);
  validate(cfg.pml);
  validate(cfg.krylov);
  for (int i = 0; i < cfg.grid.d; ++i) {
    if (!std::isfinite(cfg.ic.k0[static_cast<std::size_t>(i)])) throw ConfigError("ic.k0 must be finite");
  }
  if (cfg.ic.kind == IcKind::GraphenePair && !(cfg.ic.beta > 0.0)) throw ConfigError("ic.beta must be > 0");
  if (cfg.ic.kind == IcKind::Table && cfg.ic.file.empty()) throw ConfigError("ic.file is required for ic.kind = table");
  if (cfg.output.stride < 0) throw ConfigError("output.stride must be >= 0");
  if (cfg.output.dir.empty()) throw ConfigError("output.dir must not be empty");
}

Grid build_grid(const RunConfig& cfg) {
  return make_grid(cfg.grid.d, std::span<const double>(cfg.grid.a.data(), 2),
                   std::span<const std::size_t>(cfg.grid.n.data(), 2));
}

}  // namespace dcurv
