#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "v2x/config.hpp"
#include "v2x/engine.hpp"
#include "v2x/errors.hpp"
#include "v2x/report.hpp"
#include "v2x/rng.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::optional<std::uint64_t> seed_override;
  std::optional<std::string> out_override;
  bool quiet = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "Run configuration file")
      ->required();
  cmd->add_option("--seed", opts.seed_override,
                  "Master seed (overrides the config)");
  cmd->add_option("--out", opts.out_override,
                  "Output directory (overrides the config)");
  cmd->add_flag("--quiet", opts.quiet, "Suppress progress output");
}

v2x::RunConfig load_config(const CommonOpts& opts) {
  v2x::RunConfig cfg = v2x::parse_config_file(opts.config_path);
  if (opts.seed_override) cfg.run.seed = *opts.seed_override;
  if (opts.out_override) cfg.run.out_dir = *opts.out_override;
  cfg.validate();
  return cfg;
}

v2x::MobilityTrace load_trace(const v2x::RunConfig& cfg) {
  using Source = v2x::TraceConfig::Source;
  if (cfg.trace.source == Source::kSynthetic) {
    // The trace stream hangs off the master seed alone, so every run and
    // sweep leg of one experiment drives the same fleet.
    v2x::Rng rng(v2x::derive_seed(
        {cfg.run.seed, v2x::purpose_tag(v2x::StreamPurpose::kMobility)}));
    return v2x::generate_synthetic(cfg.trace.synthetic, rng);
  }
  const std::string& path = cfg.trace.path;
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".xml") {
    std::ifstream in(path);
    if (!in) throw v2x::TraceError("trace file not readable: " + path);
    return v2x::MobilityTrace::from_fcd_xml(in);
  }
  return v2x::MobilityTrace::from_csv_file(path);
}

v2x::RunConfig with_axes(const v2x::RunConfig& base, int k, int f) {
  v2x::RunConfig cfg = base;
  cfg.scheduler.selectivity_k = k;
  cfg.grid.num_sub_bands = f;
  cfg.validate();
  return cfg;
}

v2x::SimulationResult simulate(const v2x::RunConfig& cfg,
                               const v2x::MobilityTrace& trace) {
  v2x::SimulationResult result =
      v2x::run_simulation(cfg.engine_config(), trace, cfg.run.seed);
  result.meta.config_digest = v2x::config_digest(cfg);
  return result;
}

void report_run_line(const v2x::RunArtifacts& art, bool quiet) {
  if (quiet) return;
  std::ostringstream line;
  line << "k=" << art.k << " f=" << art.f;
  const auto bins = v2x::prr_values(art.result.prr);
  if (!bins.empty()) {
    const v2x::BinPrr& last = bins.back();
    line << " prr_raw=" << last.prr_raw << " prr_service=" << last.prr_service
         << " at " << last.d_x << " m";
  } else {
    line << " (no receptions measured)";
  }
  line << ", " << art.result.meta.windows_measured << "/"
       << art.result.meta.windows_total << " windows measured";
  std::cout << line.str() << "\n";
}

int cmd_run(const CommonOpts& opts) {
  const v2x::RunConfig cfg = load_config(opts);
  const v2x::MobilityTrace trace = load_trace(cfg);
  const v2x::SimulationResult result = simulate(cfg, trace);

  const int k = cfg.scheduler.selectivity_k;
  const int f = cfg.grid.num_sub_bands;
  v2x::RunArtifacts art = v2x::write_run_reports(cfg.run.out_dir, k, f, result);
  v2x::write_text_file(
      cfg.run.out_dir + "/summary.json",
      v2x::summary_json({art}, cfg.run.seed, v2x::config_digest(cfg)));
  report_run_line(art, opts.quiet);
  if (!opts.quiet) std::cout << "reports in " << cfg.run.out_dir << "\n";
  return 0;
}

int cmd_sweep(const CommonOpts& opts) {
  const v2x::RunConfig base = load_config(opts);
  if (base.run.sweep_k.empty() || base.run.sweep_f.empty())
    throw v2x::ConfigError(
        "run.sweep_k and run.sweep_f: must be non-empty for sweep");
  const v2x::MobilityTrace trace = load_trace(base);

  std::vector<v2x::RunArtifacts> runs;
  bool any_failed = false;
  for (int k : base.run.sweep_k) {
    for (int f : base.run.sweep_f) {
      try {
        const v2x::RunConfig cfg = with_axes(base, k, f);
        const v2x::SimulationResult result = simulate(cfg, trace);
        runs.push_back(
            v2x::write_run_reports(base.run.out_dir, k, f, result));
        report_run_line(runs.back(), opts.quiet);
      } catch (const std::exception& e) {
        any_failed = true;
        std::cerr << "sweep k=" << k << " f=" << f << " failed: " << e.what()
                  << "\n";
        v2x::RunArtifacts failed;
        failed.k = k;
        failed.f = f;
        failed.error = e.what();
        runs.push_back(failed);
      }
    }
  }

  std::filesystem::create_directories(base.run.out_dir);
  std::ostringstream cmp;
  v2x::write_comparison_csv(cmp, runs);
  v2x::write_text_file(base.run.out_dir + "/comparison.csv", cmp.str());
  v2x::write_text_file(
      base.run.out_dir + "/summary.json",
      v2x::summary_json(runs, base.run.seed, v2x::config_digest(base)));
  if (!opts.quiet) std::cout << "reports in " << base.run.out_dir << "\n";
  return any_failed ? 1 : 0;
}

int cmd_gen_trace(const CommonOpts& opts, const std::string& out_file) {
  const v2x::RunConfig cfg = load_config(opts);
  v2x::Rng rng(v2x::derive_seed(
      {cfg.run.seed, v2x::purpose_tag(v2x::StreamPurpose::kMobility)}));
  const v2x::MobilityTrace trace =
      v2x::generate_synthetic(cfg.trace.synthetic, rng);
  std::ostringstream csv;
  trace.to_csv(csv);
  v2x::write_text_file(out_file, csv.str());
  if (!opts.quiet)
    std::cout << "wrote " << trace.num_vehicles() << " vehicles, "
              << trace.duration_s() << " s to " << out_file << "\n";
  return 0;
}

int cmd_validate(const CommonOpts& opts) {
  const v2x::RunConfig cfg = load_config(opts);
  std::cout << "ok " << v2x::config_digest(cfg) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decentralized V2X subchannel scheduling simulator"};
  app.require_subcommand(1);

  CommonOpts run_opts, sweep_opts, gen_opts, val_opts;
  std::string gen_out_file = "trace.csv";

  CLI::App* run = app.add_subcommand("run", "Single simulation run");
  add_common(run, run_opts);
  CLI::App* sweep =
      app.add_subcommand("sweep", "Run the configured (K, F) grid");
  add_common(sweep, sweep_opts);
  CLI::App* gen =
      app.add_subcommand("gen-trace", "Write the synthetic mobility trace");
  add_common(gen, gen_opts);
  gen->add_option("--trace-out", gen_out_file,
                  "Output CSV path for the trace");
  CLI::App* val = app.add_subcommand("validate", "Check a config file");
  add_common(val, val_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_opts);
    if (sweep->parsed()) return cmd_sweep(sweep_opts);
    if (gen->parsed()) return cmd_gen_trace(gen_opts, gen_out_file);
    if (val->parsed()) return cmd_validate(val_opts);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
