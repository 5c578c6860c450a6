#include <doctest.h>

#include <string>
#include <vector>

#include "v2x/config.hpp"
#include "v2x/errors.hpp"

using namespace v2x;

namespace {

// Smallest complete config text: only the mandatory key.
const char* kMinimal = "[scheduler]\nselectivity_k = 30\n";

RunConfig sample_config() {
  RunConfig cfg;
  cfg.scheduler.selectivity_k = 15;
  cfg.scheduler.sps_duration_choices_windows = {5, 10, 15};
  cfg.scheduler.aux_redraw_per_window = false;
  cfg.channel.tx_power_dbm = 20.5;
  cfg.channel.ibe_vector = {1.0, 2e-3, 5e-5};
  cfg.channel.b1.antenna_height_m = 1.6;
  cfg.metrics.distance_bins_m = {100, 200};
  cfg.metrics.per_annulus = true;
  cfg.trace.source = TraceConfig::Source::kFile;
  cfg.trace.path = "traces/city.csv";
  cfg.trace.synthetic.num_vehicles = 33;
  cfg.run.seed = 987654321;
  cfg.run.warmup_windows = 20;
  cfg.run.out_dir = "results/exp1";
  cfg.run.sweep_k = {1, 15, 100};
  cfg.run.sweep_f = {1, 3};
  return cfg;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

std::string error_of(const std::string& text) {
  try {
    (void)parse_config_text(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("the minimal config fills every default") {
  const RunConfig cfg = parse_config_text(kMinimal);
  CHECK(cfg.scheduler.selectivity_k == 30);
  CHECK(cfg.grid.num_sub_bands == 3);
  CHECK(cfg.channel.tx_power_dbm == 23.0);
  CHECK(cfg.channel.sensitivity_dbm == -103.4);
  CHECK(cfg.reception.rho == 0.916);
  CHECK(cfg.metrics.distance_bins_m ==
        std::vector<double>{50, 100, 150, 200, 250, 300});
  CHECK(cfg.trace.source == TraceConfig::Source::kSynthetic);
  CHECK(cfg.run.seed == 1);
  CHECK(cfg.run.out_dir == "out");
  CHECK(cfg.scheduler.sps_duration_choices_windows ==
        std::vector<int>{5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15});
}

TEST_CASE("serialize then parse is the identity") {
  const RunConfig cfg = sample_config();
  const RunConfig back = parse_config_text(serialize_config(cfg));
  CHECK(back == cfg);
  // And the canonical text is a fixed point.
  CHECK(serialize_config(back) == serialize_config(cfg));
}

TEST_CASE("defaults also survive the round trip") {
  RunConfig cfg;
  cfg.scheduler.selectivity_k = 100;
  CHECK(parse_config_text(serialize_config(cfg)) == cfg);
}

TEST_CASE("comments, blank lines and spacing are tolerated") {
  const RunConfig cfg = parse_config_text(
      "# experiment configuration\n"
      "\n"
      "[scheduler]\n"
      "  selectivity_k   =   30  \n"
      "; trailing comment line\n"
      "[run]\n"
      "seed=42\n");
  CHECK(cfg.scheduler.selectivity_k == 30);
  CHECK(cfg.run.seed == 42);
}

TEST_CASE("reservation durations are given in seconds") {
  const RunConfig cfg = parse_config_text(
      "[scheduler]\nselectivity_k = 5\nsps_duration_choices_s = 0.5,1,1.5\n");
  CHECK(cfg.scheduler.sps_duration_choices_windows ==
        std::vector<int>{5, 10, 15});
  // Serialization converts back to seconds.
  CHECK(contains(serialize_config(cfg), "sps_duration_choices_s = 0.5,1,1.5"));
}

TEST_CASE("fractional-window durations are rejected") {
  const std::string err = error_of(
      "[scheduler]\nselectivity_k = 5\nsps_duration_choices_s = 0.55\n");
  CHECK(contains(err, "sps_duration_choices_s"));
  CHECK(contains(err, "whole number of windows"));
}

TEST_CASE("the selectivity index is mandatory") {
  const std::string err = error_of("[run]\nseed = 1\n");
  CHECK(contains(err, "scheduler.selectivity_k"));
  CHECK(contains(err, "required"));
}

TEST_CASE("unknown keys and sections name the offending path and line") {
  {
    const std::string err =
        error_of("[channel]\nbogus_knob = 3\n[scheduler]\nselectivity_k=1\n");
    CHECK(contains(err, "channel.bogus_knob"));
    CHECK(contains(err, "line 2"));
    CHECK(contains(err, "unknown key"));
  }
  {
    const std::string err =
        error_of("[mystery]\nx = 1\n[scheduler]\nselectivity_k=1\n");
    CHECK(contains(err, "unknown section"));
  }
}

TEST_CASE("duplicate keys are rejected") {
  const std::string err = error_of(
      "[scheduler]\nselectivity_k = 1\nselectivity_k = 2\n");
  CHECK(contains(err, "scheduler.selectivity_k"));
  CHECK(contains(err, "duplicate key"));
  CHECK(contains(err, "line 3"));
}

TEST_CASE("malformed values and structure are rejected") {
  CHECK(contains(error_of("[run]\nseed = twelve\n[scheduler]\nselectivity_k=1\n"),
                 "expected an integer"));
  CHECK(contains(
      error_of("[metrics]\nper_annulus = yes\n[scheduler]\nselectivity_k=1\n"),
      "expected true or false"));
  CHECK(contains(
      error_of("[trace]\nsource = teleport\n[scheduler]\nselectivity_k=1\n"),
      "expected file or synthetic"));
  CHECK(contains(error_of("selectivity_k = 1\n"), "before any [section]"));
  CHECK(contains(error_of("[scheduler\nselectivity_k = 1\n"),
                 "malformed section header"));
  CHECK(contains(error_of("[scheduler]\njust some text\n"),
                 "expected key = value"));
}

TEST_CASE("semantic validation catches cross-field violations") {
  CHECK(contains(
      error_of("[scheduler]\nselectivity_k = 101\n"),
      "scheduler.selectivity_k"));
  CHECK(contains(
      error_of("[grid]\ncam_rate_hz = 20\n[scheduler]\nselectivity_k = 1\n"),
      "grid"));
  CHECK(contains(error_of("[channel]\nibe_vector = 1,0.5,2\n"
                          "[scheduler]\nselectivity_k = 1\n"),
                 "channel.ibe_vector"));
  CHECK(contains(error_of("[trace]\nsource = file\n"
                          "[scheduler]\nselectivity_k = 1\n"),
                 "trace.path"));
  CHECK(contains(error_of("[run]\nsweep_f = 1,4\n"
                          "[scheduler]\nselectivity_k = 1\n"),
                 "run.sweep_f"));
}

TEST_CASE("missing config files fail with the path") {
  try {
    (void)parse_config_file("/nonexistent/v2x.ini");
    CHECK(false);
  } catch (const ConfigError& e) {
    CHECK(contains(e.what(), "/nonexistent/v2x.ini"));
  }
}

TEST_CASE("the digest tracks physics, not bookkeeping") {
  RunConfig cfg = sample_config();
  const std::string base = config_digest(cfg);
  CHECK(base.size() == 16);
  CHECK(config_digest(cfg) == base);

  RunConfig moved = cfg;
  moved.run.out_dir = "elsewhere";
  CHECK(config_digest(moved) == base);

  RunConfig swept = cfg;
  swept.run.sweep_k = {2, 3};
  swept.run.sweep_f.clear();
  CHECK(config_digest(swept) == base);

  RunConfig louder = cfg;
  louder.channel.tx_power_dbm = 24.0;
  CHECK(config_digest(louder) != base);

  RunConfig reseeded = cfg;
  reseeded.run.seed = 1;
  CHECK(config_digest(reseeded) != base);
}

TEST_CASE("engine config single-sources the sensitivity from the channel") {
  RunConfig cfg = sample_config();
  cfg.channel.sensitivity_dbm = -99.0;
  const EngineConfig ec = cfg.engine_config();
  CHECK(ec.thresholds.sensitivity_dbm == -99.0);
  CHECK(ec.thresholds.rho == cfg.reception.rho);
  CHECK(ec.warmup_windows == 20);
  CHECK(ec.grid == cfg.grid);
}

TEST_CASE("format_double is shortest-exact") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(50.0) == "50");
  CHECK(format_double(1e-3) == "0.001");
  CHECK(format_double(-103.4) == "-103.4");
}

}  // TEST_SUITE
