#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "dcurv/benchmark.hpp"
#include "dcurv/config.hpp"
#include "dcurv/convergence.hpp"
#include "dcurv/errors.hpp"
#include "dcurv/io.hpp"
#include "dcurv/presets.hpp"
#include "dcurv/simulation.hpp"

namespace fs = std::filesystem;
using namespace dcurv;

namespace {

std::string step_tag(long step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06ld", step);
  return buf;
}

void emit_snapshot(const fs::path& dir, long step, const SpinorField& psi) {
  const auto rho = density(psi);
  const std::string tag = step_tag(step);
  if (psi.grid().dim() == 2 && psi.nodes() > kBinaryThreshold) {
    write_binary(to_binary(psi), (dir / ("psi_" + tag + ".bin")).string());
    BinaryArray d{{static_cast<std::uint32_t>(psi.grid().count(0)), static_cast<std::uint32_t>(psi.grid().count(1))},
                  rho};
    write_binary(d, (dir / ("density_" + tag + ".bin")).string());
  } else {
    write_snapshot(psi, (dir / ("psi_" + tag + ".csv")).string());
    write_density(psi.grid(), rho, (dir / ("density_" + tag + ".csv")).string());
  }
}

int finish(const RunResult& res, const fs::path& dir) {
  write_diagnostics(res.diagnostics, (dir / "diagnostics.csv").string());
  const auto& first = res.diagnostics.front();
  const auto& last = res.diagnostics.back();
  std::cout << "steps " << last.step << "  t " << format_double(last.t) << "  l2 " << format_double(first.l2)
            << " -> " << format_double(last.l2) << "  l2_gamma " << format_double(first.l2_gamma) << " -> "
            << format_double(last.l2_gamma) << "\n";
  if (res.status != RunStatus::Completed) {
    std::cerr << "halted after step " << res.last_good_step << ": " << res.message << "\n";
    return 2;
  }
  return 0;
}

int run(const RunConfig& cfg, bool snapshots) {
  const fs::path dir = cfg.output.dir;
  fs::create_directories(dir);
  SnapshotCallback cb;
  if (snapshots) cb = [&](long step, double, const SpinorField& psi) { emit_snapshot(dir, step, psi); };
  return finish(run_simulation(cfg, cb), dir);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral Dirac solver for static curved space"};
  app.require_subcommand(1);

  std::string config;
  auto* run_cmd = app.add_subcommand("run", "Run a configuration, writing snapshots and diagnostics");
  run_cmd->add_option("config", config, "Configuration file")->required();

  std::string name, scale = "paper", out;
  auto* preset_cmd = app.add_subcommand("preset", "Run a shipped experiment preset");
  preset_cmd->add_option("name", name, "Preset name")->required();
  preset_cmd->add_option("--scale", scale, "ci or paper")->check(CLI::IsMember({"ci", "paper"}));
  preset_cmd->add_option("--out", out, "Output directory");
  bool print_only = false;
  preset_cmd->add_flag("--print", print_only, "Print the configuration instead of running it");

  std::string sweep;
  std::vector<double> values;
  double ref = 0.0;
  auto* conv_cmd = app.add_subcommand("converge", "Error table against a refined reference (CSV param,error)");
  conv_cmd->add_option("config", config, "Configuration file")->required();
  conv_cmd->add_option("--sweep", sweep, "h or dt")->required()->check(CLI::IsMember({"h", "dt"}));
  conv_cmd->add_option("--values", values, "Descending h or dt values")->required();
  auto* ref_opt = conv_cmd->add_option("--ref", ref, "Reference h or dt");

  auto* norms_cmd = app.add_subcommand("norms", "Run and write diagnostics only");
  norms_cmd->add_option("config", config, "Configuration file")->required();

  std::vector<std::size_t> ns;
  bool dense = false;
  auto* bench_cmd = app.add_subcommand("bench", "Time cn_operator_apply (or dense G assembly) per N");
  bench_cmd->add_option("--n", ns, "Grid sizes")->required();
  bench_cmd->add_flag("--dense", dense, "Time dense G assembly instead");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return run(load_config(config), true);
    if (*norms_cmd) return run(load_config(config), false);
    if (*preset_cmd) {
      RunConfig cfg = preset(name, parse_scale(scale));
      if (!out.empty()) cfg.output.dir = out;
      if (print_only) {
        std::cout << serialize_config(cfg);
        return 0;
      }
      return run(cfg, true);
    }
    if (*conv_cmd) {
      std::optional<double> r;
      if (*ref_opt) r = ref;
      const auto rows = convergence_sweep(load_config(config), parse_sweep_kind(sweep), values, r);
      std::cout << sweep_csv(rows);
      if (rows.size() >= 2) std::cerr << "log-log slope " << format_double(loglog_slope(rows)) << "\n";
      return 0;
    }
    if (*bench_cmd) {
      std::cout << bench_csv(dense ? bench_dense_G(ns) : bench_cn_apply(ns));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
