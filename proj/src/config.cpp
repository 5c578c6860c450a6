#include "v2x/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string_view>

#include "v2x/errors.hpp"
#include "v2x/rng.hpp"

namespace v2x {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

[[noreturn]] void fail(const std::string& path, int line,
                       const std::string& why) {
  throw ConfigError(path + " (line " + std::to_string(line) + "): " + why);
}

double to_double(const std::string& path, int line, std::string_view v) {
  double out = 0.0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end || v.empty())
    fail(path, line, "expected a number, got '" + std::string(v) + "'");
  return out;
}

template <typename Int>
Int to_int(const std::string& path, int line, std::string_view v) {
  Int out{};
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end || v.empty())
    fail(path, line, "expected an integer, got '" + std::string(v) + "'");
  return out;
}

bool to_bool(const std::string& path, int line, std::string_view v) {
  if (v == "true") return true;
  if (v == "false") return false;
  fail(path, line, "expected true or false, got '" + std::string(v) + "'");
}

std::vector<std::string_view> split_list(std::string_view v) {
  std::vector<std::string_view> parts;
  if (trim(v).empty()) return parts;
  while (true) {
    const std::size_t comma = v.find(',');
    parts.push_back(trim(v.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return parts;
}

std::vector<double> to_double_list(const std::string& path, int line,
                                   std::string_view v) {
  std::vector<double> out;
  for (std::string_view part : split_list(v))
    out.push_back(to_double(path, line, part));
  return out;
}

std::vector<int> to_int_list(const std::string& path, int line,
                             std::string_view v) {
  std::vector<int> out;
  for (std::string_view part : split_list(v))
    out.push_back(to_int<int>(path, line, part));
  return out;
}

// Milliseconds rendered as decimal seconds, exactly.
std::string seconds_string(std::int64_t ms) {
  std::string out = std::to_string(ms / 1000);
  std::int64_t frac = ms % 1000;
  if (frac == 0) return out;
  char buf[8];
  std::snprintf(buf, sizeof buf, ".%03lld", static_cast<long long>(frac));
  std::string tail(buf);
  while (tail.back() == '0') tail.pop_back();
  return out + tail;
}

struct PendingDurations {
  std::vector<double> seconds;
  int line = 0;
  bool set = false;
};

void apply_key(RunConfig& cfg, const std::string& section,
               const std::string& key, std::string_view value, int line,
               bool& k_seen, PendingDurations& durations) {
  const std::string path = section + "." + key;
  const auto num = [&] { return to_double(path, line, value); };
  const auto integer = [&] { return to_int<int>(path, line, value); };

  if (section == "grid") {
    if (key == "num_sub_bands") cfg.grid.num_sub_bands = integer();
    else if (key == "subchannels_per_band")
      cfg.grid.subchannels_per_band = integer();
    else if (key == "window_ms") cfg.grid.window_ms = integer();
    else if (key == "cam_rate_hz") cfg.grid.cam_rate_hz = integer();
    else fail(path, line, "unknown key");
    return;
  }
  if (section == "channel") {
    auto& ch = cfg.channel;
    if (key == "tx_power_dbm") ch.tx_power_dbm = num();
    else if (key == "antenna_gain_db") ch.antenna_gain_db = num();
    else if (key == "shadow_sigma_db") ch.shadow_sigma_db = num();
    else if (key == "shadow_corr_dist_m") ch.shadow_corr_dist_m = num();
    else if (key == "carrier_freq_ghz") ch.carrier_freq_ghz = num();
    else if (key == "ibe_vector") ch.ibe_vector = to_double_list(path, line, value);
    else if (key == "noise_power_dbm") ch.noise_power_dbm = num();
    else if (key == "sensitivity_dbm") ch.sensitivity_dbm = num();
    else if (key == "distance_floor_m") ch.distance_floor_m = num();
    else if (key == "b1_near_dist_coeff") ch.b1.near_dist_coeff = num();
    else if (key == "b1_near_const") ch.b1.near_const = num();
    else if (key == "b1_near_freq_coeff") ch.b1.near_freq_coeff = num();
    else if (key == "b1_far_dist_coeff") ch.b1.far_dist_coeff = num();
    else if (key == "b1_far_const") ch.b1.far_const = num();
    else if (key == "b1_far_height_coeff") ch.b1.far_height_coeff = num();
    else if (key == "b1_far_freq_coeff") ch.b1.far_freq_coeff = num();
    else if (key == "b1_antenna_height_m") ch.b1.antenna_height_m = num();
    else fail(path, line, "unknown key");
    return;
  }
  if (section == "scheduler") {
    if (key == "selectivity_k") {
      cfg.scheduler.selectivity_k = integer();
      k_seen = true;
    } else if (key == "sps_duration_choices_s") {
      durations.seconds = to_double_list(path, line, value);
      durations.line = line;
      durations.set = true;
    } else if (key == "aux_redraw_per_window") {
      cfg.scheduler.aux_redraw_per_window = to_bool(path, line, value);
    } else {
      fail(path, line, "unknown key");
    }
    return;
  }
  if (section == "reception") {
    if (key == "rho") cfg.reception.rho = num();
    else if (key == "lambda") cfg.reception.lambda = num();
    else fail(path, line, "unknown key");
    return;
  }
  if (section == "metrics") {
    if (key == "distance_bins_m")
      cfg.metrics.distance_bins_m = to_double_list(path, line, value);
    else if (key == "per_annulus")
      cfg.metrics.per_annulus = to_bool(path, line, value);
    else fail(path, line, "unknown key");
    return;
  }
  if (section == "trace") {
    auto& tr = cfg.trace;
    if (key == "source") {
      if (value == "file") tr.source = TraceConfig::Source::kFile;
      else if (value == "synthetic") tr.source = TraceConfig::Source::kSynthetic;
      else fail(path, line, "expected file or synthetic");
    } else if (key == "path") tr.path = std::string(value);
    else if (key == "num_vehicles") tr.synthetic.num_vehicles = integer();
    else if (key == "road_length_m") tr.synthetic.road_length_m = num();
    else if (key == "num_lanes") tr.synthetic.num_lanes = integer();
    else if (key == "lane_width_m") tr.synthetic.lane_width_m = num();
    else if (key == "speed_min_mps") tr.synthetic.speed_min_mps = num();
    else if (key == "speed_max_mps") tr.synthetic.speed_max_mps = num();
    else if (key == "duration_s") tr.synthetic.duration_s = num();
    else fail(path, line, "unknown key");
    return;
  }
  if (section == "run") {
    if (key == "seed") cfg.run.seed = to_int<std::uint64_t>(path, line, value);
    else if (key == "warmup_windows") cfg.run.warmup_windows = integer();
    else if (key == "out_dir") cfg.run.out_dir = std::string(value);
    else if (key == "sweep_k") cfg.run.sweep_k = to_int_list(path, line, value);
    else if (key == "sweep_f") cfg.run.sweep_f = to_int_list(path, line, value);
    else fail(path, line, "unknown key");
    return;
  }
  fail(section, line, "unknown section");
}

}  // namespace

void TraceConfig::validate() const {
  if (source == Source::kFile) {
    if (path.empty()) throw ConfigError("trace.path: required for source=file");
  } else {
    synthetic.validate();
  }
}

void RunConfig::validate() const {
  grid.validate();
  channel.validate(grid.num_sub_bands);
  scheduler.validate(grid);
  reception.validate();
  metrics.validate();
  trace.validate();
  if (run.out_dir.empty()) throw ConfigError("run.out_dir: must not be empty");
  for (int k : run.sweep_k)
    if (k < 1 || k > grid.subchannels_per_band)
      throw ConfigError("run.sweep_k: entries must lie in 1..=" +
                        std::to_string(grid.subchannels_per_band));
  for (int f : run.sweep_f)
    if (f < 1 || f > static_cast<int>(channel.ibe_vector.size()))
      throw ConfigError(
          "run.sweep_f: entries must lie in 1..=" +
          std::to_string(channel.ibe_vector.size()) +
          " (one leakage weight per sub-band offset)");
}

EngineConfig RunConfig::engine_config() const {
  EngineConfig ec;
  ec.grid = grid;
  ec.channel = channel;
  ec.scheduler = scheduler;
  ec.thresholds = reception;
  // The per-subchannel sensitivity lives in [channel]; reception keeps only
  // the throughput parameters.
  ec.thresholds.sensitivity_dbm = channel.sensitivity_dbm;
  ec.metrics = metrics;
  ec.warmup_windows = run.warmup_windows;
  return ec;
}

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  cfg.scheduler.selectivity_k = 0;

  std::string section;
  std::string line;
  int line_no = 0;
  bool k_seen = false;
  PendingDurations durations;
  std::vector<std::string> seen_keys;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#' || body.front() == ';') continue;
    if (body.front() == '[') {
      if (body.back() != ']')
        fail("config", line_no, "malformed section header");
      section = std::string(trim(body.substr(1, body.size() - 2)));
      if (section.empty()) fail("config", line_no, "empty section name");
      continue;
    }
    const std::size_t eq = body.find('=');
    if (eq == std::string_view::npos)
      fail("config", line_no, "expected key = value");
    const std::string key{trim(body.substr(0, eq))};
    const std::string_view value = trim(body.substr(eq + 1));
    if (key.empty()) fail("config", line_no, "empty key");
    if (section.empty())
      fail(key, line_no, "key before any [section] header");

    const std::string path = section + "." + key;
    if (std::find(seen_keys.begin(), seen_keys.end(), path) != seen_keys.end())
      fail(path, line_no, "duplicate key");
    seen_keys.push_back(path);

    apply_key(cfg, section, key, value, line_no, k_seen, durations);
  }

  if (!k_seen)
    throw ConfigError(
        "scheduler.selectivity_k: required, no default (1 = greedy, "
        "subchannels_per_band = purely random)");

  if (durations.set) {
    if (durations.seconds.empty())
      fail("scheduler.sps_duration_choices_s", durations.line,
           "must not be empty");
    std::vector<int> windows;
    for (double sec : durations.seconds) {
      const double w = sec * 1000.0 / cfg.grid.window_ms;
      const double rounded = std::round(w);
      if (!(rounded >= 1.0) || std::abs(w - rounded) > 1e-6)
        fail("scheduler.sps_duration_choices_s", durations.line,
             "each duration must be a positive whole number of windows");
      windows.push_back(static_cast<int>(rounded));
    }
    cfg.scheduler.sps_duration_choices_windows = std::move(windows);
  }

  cfg.validate();
  return cfg;
}

RunConfig parse_config_text(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config file not readable: " + path);
  return parse_config(in);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

namespace {

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_double(v[i]);
  }
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "[grid]\n"
      << "num_sub_bands = " << cfg.grid.num_sub_bands << "\n"
      << "subchannels_per_band = " << cfg.grid.subchannels_per_band << "\n"
      << "window_ms = " << cfg.grid.window_ms << "\n"
      << "cam_rate_hz = " << cfg.grid.cam_rate_hz << "\n\n";

  const ChannelConfig& ch = cfg.channel;
  out << "[channel]\n"
      << "tx_power_dbm = " << format_double(ch.tx_power_dbm) << "\n"
      << "antenna_gain_db = " << format_double(ch.antenna_gain_db) << "\n"
      << "shadow_sigma_db = " << format_double(ch.shadow_sigma_db) << "\n"
      << "shadow_corr_dist_m = " << format_double(ch.shadow_corr_dist_m)
      << "\n"
      << "carrier_freq_ghz = " << format_double(ch.carrier_freq_ghz) << "\n"
      << "ibe_vector = " << join_doubles(ch.ibe_vector) << "\n"
      << "noise_power_dbm = " << format_double(ch.noise_power_dbm) << "\n"
      << "sensitivity_dbm = " << format_double(ch.sensitivity_dbm) << "\n"
      << "distance_floor_m = " << format_double(ch.distance_floor_m) << "\n"
      << "b1_near_dist_coeff = " << format_double(ch.b1.near_dist_coeff)
      << "\n"
      << "b1_near_const = " << format_double(ch.b1.near_const) << "\n"
      << "b1_near_freq_coeff = " << format_double(ch.b1.near_freq_coeff)
      << "\n"
      << "b1_far_dist_coeff = " << format_double(ch.b1.far_dist_coeff) << "\n"
      << "b1_far_const = " << format_double(ch.b1.far_const) << "\n"
      << "b1_far_height_coeff = " << format_double(ch.b1.far_height_coeff)
      << "\n"
      << "b1_far_freq_coeff = " << format_double(ch.b1.far_freq_coeff) << "\n"
      << "b1_antenna_height_m = " << format_double(ch.b1.antenna_height_m)
      << "\n\n";

  out << "[scheduler]\n"
      << "selectivity_k = " << cfg.scheduler.selectivity_k << "\n"
      << "sps_duration_choices_s = ";
  for (std::size_t i = 0; i < cfg.scheduler.sps_duration_choices_windows.size();
       ++i) {
    if (i) out << ',';
    out << seconds_string(
        static_cast<std::int64_t>(
            cfg.scheduler.sps_duration_choices_windows[i]) *
        cfg.grid.window_ms);
  }
  out << "\n"
      << "aux_redraw_per_window = "
      << (cfg.scheduler.aux_redraw_per_window ? "true" : "false") << "\n\n";

  out << "[reception]\n"
      << "rho = " << format_double(cfg.reception.rho) << "\n"
      << "lambda = " << format_double(cfg.reception.lambda) << "\n\n";

  out << "[metrics]\n"
      << "distance_bins_m = " << join_doubles(cfg.metrics.distance_bins_m)
      << "\n"
      << "per_annulus = " << (cfg.metrics.per_annulus ? "true" : "false")
      << "\n\n";

  const TraceConfig& tr = cfg.trace;
  out << "[trace]\n"
      << "source = "
      << (tr.source == TraceConfig::Source::kFile ? "file" : "synthetic")
      << "\n"
      << "path = " << tr.path << "\n"
      << "num_vehicles = " << tr.synthetic.num_vehicles << "\n"
      << "road_length_m = " << format_double(tr.synthetic.road_length_m)
      << "\n"
      << "num_lanes = " << tr.synthetic.num_lanes << "\n"
      << "lane_width_m = " << format_double(tr.synthetic.lane_width_m) << "\n"
      << "speed_min_mps = " << format_double(tr.synthetic.speed_min_mps)
      << "\n"
      << "speed_max_mps = " << format_double(tr.synthetic.speed_max_mps)
      << "\n"
      << "duration_s = " << format_double(tr.synthetic.duration_s) << "\n\n";

  out << "[run]\n"
      << "seed = " << cfg.run.seed << "\n"
      << "warmup_windows = " << cfg.run.warmup_windows << "\n"
      << "out_dir = " << cfg.run.out_dir << "\n"
      << "sweep_k = " << join_ints(cfg.run.sweep_k) << "\n"
      << "sweep_f = " << join_ints(cfg.run.sweep_f) << "\n";
  return out.str();
}

std::string config_digest(const RunConfig& cfg) {
  // Where reports land and which sweep legs run do not change any single
  // run's results, so they stay out of the digest.
  RunConfig canon_cfg = cfg;
  canon_cfg.run.out_dir = "out";
  canon_cfg.run.sweep_k.clear();
  canon_cfg.run.sweep_f.clear();
  const std::string canon = serialize_config(canon_cfg);
  const std::uint64_t h = fnv1a64(canon.data(), canon.size());
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

}  // namespace v2x
