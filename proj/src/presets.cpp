#include "dcurv/presets.hpp"

#include <algorithm>
#include <array>

#include "dcurv/errors.hpp"

namespace dcurv {
namespace {

struct Entry {
  std::string_view name;
  std::string_view text;
};

constexpr std::array kPresets{
    Entry{"exp1", R"cfg(# Experiment 1: static 1-D metric, Crank-Nicolson
grid.d = 1
grid.a = 5
grid.N = 18027
metric.kind = static1d
metric.m = 1
metric.Phi = gaussian 1 0.005
metric.Psi = gaussian 1 0.01
scheme.kind = cn
scheme.dt = 5e-4
scheme.T = 0.5
ic.kind = gaussian_wavepacket
ic.k0 = 5
output.dir = out/exp1
output.stride = 200
)cfg"},
    Entry{"exp1-flat", R"cfg(# Experiment 1, flat-space control
grid.d = 1
grid.a = 5
grid.N = 18027
metric.kind = flat
metric.m = 1
scheme.kind = cn
scheme.dt = 5e-4
scheme.T = 0.5
ic.kind = gaussian_wavepacket
ic.k0 = 5
output.dir = out/exp1-flat
output.stride = 200
)cfg"},
    Entry{"exp2", R"cfg(# Experiment 2: static 1-D metric with oscillating Psi
grid.d = 1
grid.a = 5
grid.N = 20001
metric.kind = static1d
metric.m = 1
metric.Phi = gaussian 1 0.01
metric.Psi = cosgauss 1 0.1 0.01
scheme.kind = cn
scheme.dt = 5e-4
scheme.T = 1
ic.kind = gaussian_wavepacket
ic.k0 = 5
output.dir = out/exp2
output.stride = 400
)cfg"},
    Entry{"exp2-flat", R"cfg(# Experiment 2, flat-space control
grid.d = 1
grid.a = 5
grid.N = 20001
metric.kind = flat
metric.m = 1
scheme.kind = cn
scheme.dt = 5e-4
scheme.T = 1
ic.kind = gaussian_wavepacket
ic.k0 = 5
output.dir = out/exp2-flat
output.stride = 400
)cfg"},
    Entry{"exp3", R"cfg(# Experiment 3: static 2-D metric, directional polynomial scheme
grid.d = 2
grid.a = 5 5
grid.N = 512 512
metric.kind = static2d
metric.spinor = 2
metric.m = 1
metric.Phi = gaussian 1 0.01
metric.Psi = gaussian 1 0.005
scheme.kind = poly1
scheme.dt = 1.14e-4
scheme.T = 4.56e-2
ic.kind = gaussian_wavepacket
ic.k0 = 5 5
output.dir = out/exp3
output.stride = 50
)cfg"},
    Entry{"exp3-flat", R"cfg(# Experiment 3, flat-space control
grid.d = 2
grid.a = 5 5
grid.N = 512 512
metric.kind = flat
metric.spinor = 2
metric.m = 1
scheme.kind = poly1
scheme.dt = 1.14e-4
scheme.T = 4.56e-2
ic.kind = gaussian_wavepacket
ic.k0 = 5 5
output.dir = out/exp3-flat
output.stride = 50
)cfg"},
    Entry{"exp4", R"cfg(# Experiment 4: rippled graphene with A_x = V = 5x
grid.d = 1
grid.a = 10
grid.N = 2000
metric.kind = graphene
metric.m = 0
metric.a0 = 0.4
metric.k0 = 2
metric.ell = 5
metric.Ax = linear 5
metric.V = linear 5
scheme.kind = cn
scheme.dt = 1e-2
scheme.T = 1.6
ic.kind = graphene_pair
ic.beta = 2
output.dir = out/exp4
output.stride = 40
)cfg"},
    Entry{"exp4-flat", R"cfg(# Experiment 4, flat-space control
grid.d = 1
grid.a = 10
grid.N = 2000
metric.kind = flat
metric.m = 0
metric.Ax = linear 5
metric.V = linear 5
scheme.kind = cn
scheme.dt = 1e-2
scheme.T = 1.6
ic.kind = graphene_pair
ic.beta = 2
output.dir = out/exp4-flat
output.stride = 40
)cfg"},
    Entry{"exp5", R"cfg(# Experiment 5: rippled graphene, V = 1/(|x|+1), A_x = 10 x^2
grid.d = 1
grid.a = 5
grid.N = 1000
metric.kind = graphene
metric.m = 0
metric.a0 = 0.4
metric.k0 = 5
metric.ell = 10
metric.Ax = quadratic 10
metric.V = invabs 1
scheme.kind = cn
scheme.dt = 1e-2
scheme.T = 0.8
ic.kind = graphene_pair
ic.beta = 2
output.dir = out/exp5
output.stride = 20
)cfg"},
    Entry{"exp5-flat", R"cfg(# Experiment 5, flat-space control
grid.d = 1
grid.a = 5
grid.N = 1000
metric.kind = flat
metric.m = 0
metric.Ax = quadratic 10
metric.V = invabs 1
scheme.kind = cn
scheme.dt = 1e-2
scheme.T = 0.8
ic.kind = graphene_pair
ic.beta = 2
output.dir = out/exp5-flat
output.stride = 20
)cfg"},
    Entry{"exp6", R"cfg(# Experiment 6: massless rippled graphene with a type I PML
grid.d = 1
grid.a = 4.5
grid.N = 900
metric.kind = graphene
metric.m = 0
metric.a0 = 0.4
metric.k0 = 2
metric.ell = 5
scheme.kind = cn
scheme.dt = 1e-2
scheme.T = 4
pml.enabled = true
pml.type = I
pml.sigma0 = 1
pml.theta = 0
pml.fraction = 0.1
ic.kind = graphene_pair
ic.beta = 2
output.dir = out/exp6
output.stride = 75
)cfg"},
    Entry{"exp6-flat", R"cfg(# Experiment 6, flat-space control with the same PML
grid.d = 1
grid.a = 4.5
grid.N = 900
metric.kind = flat
metric.m = 0
scheme.kind = cn
scheme.dt = 1e-2
scheme.T = 4
pml.enabled = true
pml.type = I
pml.sigma0 = 1
pml.theta = 0
pml.fraction = 0.1
ic.kind = graphene_pair
ic.beta = 2
output.dir = out/exp6-flat
output.stride = 75
)cfg"},
    Entry{"exp6-nopml", R"cfg(# Experiment 6 without the absorbing layer (periodic wrap-around)
grid.d = 1
grid.a = 4.5
grid.N = 900
metric.kind = graphene
metric.m = 0
metric.a0 = 0.4
metric.k0 = 2
metric.ell = 5
scheme.kind = cn
scheme.dt = 1e-2
scheme.T = 4
ic.kind = graphene_pair
ic.beta = 2
output.dir = out/exp6-nopml
output.stride = 75
)cfg"},
};

}  // namespace
Scale parse_scale(std::string_view text) {
  if (text == "ci") return Scale::Ci;
  if (text == "paper") return Scale::Paper;
  throw ConfigError("unknown scale '" + std::string(text) + "' (expected ci or paper)");
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& e : kPresets) out.emplace_back(e.name);
  return out;
}

std::string_view preset_text(std::string_view name) {
  auto it = std::find_if(kPresets.begin(), kPresets.end(), [&](const Entry& e) { return e.name == name; });
  if (it == kPresets.end()) throw ConfigError("unknown preset '" + std::string(name) + "'");
  return it->text;
}

RunConfig preset(std::string_view name, Scale scale) {
  RunConfig cfg = parse_config(preset_text(name));
  if (scale == Scale::Paper) return cfg;
  for (int i = 0; i < cfg.grid.d; ++i) {
    auto& n = cfg.grid.n[static_cast<std::size_t>(i)];
    if (n > 1024) n = 1024;
  }
  if (name.starts_with("exp3")) {
    cfg.grid.n = {128, 128};
    cfg.scheme.T = 100 * cfg.scheme.dt;
  }
  if (name.starts_with("exp4")) cfg.grid.n[0] = 1000;
  return cfg;
}

}  // namespace dcurv
