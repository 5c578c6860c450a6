#include "v2x/mobility.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "v2x/errors.hpp"

namespace v2x {
namespace {

bool parse_double(std::string_view s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

// Shortest representation that round-trips exactly.
std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

}  // namespace

MobilityTrace MobilityTrace::from_csv(std::istream& in) {
  std::vector<TraceSample> samples;
  std::unordered_map<std::string, double> last_time;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    auto fields = split(line, ',');
    if (fields.size() != 4) {
      throw TraceError("trace line " + std::to_string(line_no) +
                       ": expected 4 fields time_s,vehicle_id,x_m,y_m");
    }
    TraceSample s;
    if (!parse_double(fields[0], s.time_s)) {
      throw TraceError("trace line " + std::to_string(line_no) +
                       ": bad time value");
    }
    s.vehicle_id = std::string(fields[1]);
    if (s.vehicle_id.empty()) {
      throw TraceError("trace line " + std::to_string(line_no) +
                       ": empty vehicle id");
    }
    if (!parse_double(fields[2], s.x_m) || !parse_double(fields[3], s.y_m)) {
      throw TraceError("trace line " + std::to_string(line_no) +
                       ": bad coordinate value");
    }
    auto [it, inserted] = last_time.try_emplace(s.vehicle_id, s.time_s);
    if (!inserted) {
      if (s.time_s <= it->second) {
        throw TraceError("trace line " + std::to_string(line_no) +
                         ": non-monotone timestamp for vehicle " +
                         s.vehicle_id);
      }
      it->second = s.time_s;
    }
    samples.push_back(std::move(s));
  }
  if (samples.empty()) {
    throw TraceError("trace: empty input");
  }
  return from_samples(std::move(samples));
}

MobilityTrace MobilityTrace::from_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw TraceError("trace: cannot open " + path);
  }
  return from_csv(in);
}

MobilityTrace MobilityTrace::from_samples(std::vector<TraceSample> samples) {
  if (samples.empty()) {
    throw TraceError("trace: empty input");
  }
  std::sort(samples.begin(), samples.end(),
            [](const TraceSample& a, const TraceSample& b) {
              if (a.time_s != b.time_s) return a.time_s < b.time_s;
              return a.vehicle_id < b.vehicle_id;
            });
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (samples[i].time_s == samples[i - 1].time_s &&
        samples[i].vehicle_id == samples[i - 1].vehicle_id) {
      throw TraceError("trace: duplicate sample for vehicle " +
                       samples[i].vehicle_id + " at t=" +
                       format_double(samples[i].time_s));
    }
  }
  MobilityTrace trace;
  trace.samples_ = std::move(samples);
  trace.index_samples();
  return trace;
}

void MobilityTrace::index_samples() {
  for (const TraceSample& s : samples_) {
    if (!std::isfinite(s.x_m) || !std::isfinite(s.y_m) ||
        !std::isfinite(s.time_s)) {
      throw TraceError("trace: non-finite sample for vehicle " + s.vehicle_id);
    }
    Series& ser = series_[s.vehicle_id];
    ser.t.push_back(s.time_s);
    ser.x.push_back(s.x_m);
    ser.y.push_back(s.y_m);
  }
  start_time_ = samples_.front().time_s;
  end_time_ = samples_.back().time_s;
}

void MobilityTrace::to_csv(std::ostream& out) const {
  for (const TraceSample& s : samples_) {
    out << format_double(s.time_s) << ',' << s.vehicle_id << ','
        << format_double(s.x_m) << ',' << format_double(s.y_m) << '\n';
  }
}

std::vector<std::string> MobilityTrace::vehicle_ids() const {
  std::vector<std::string> ids;
  ids.reserve(series_.size());
  for (const auto& [id, ser] : series_) {
    ids.push_back(id);
  }
  return ids;
}

FleetSnapshot MobilityTrace::snapshot_at(WindowIndex window,
                                         const GridConfig& cfg) const {
  double t = start_time_ +
             static_cast<double>(window.n) * cfg.window_ms / 1000.0;
  if (t > end_time_) {
    throw TraceError("snapshot: window " + std::to_string(window.n) +
                     " starts beyond trace end");
  }
  FleetSnapshot snap;
  snap.window = window;
  for (const auto& [id, ser] : series_) {
    if (t < ser.t.front() || t > ser.t.back()) {
      continue;
    }
    // First index with ser.t[hi] >= t.
    auto it = std::lower_bound(ser.t.begin(), ser.t.end(), t);
    std::size_t hi = static_cast<std::size_t>(it - ser.t.begin());
    Vec2 pos;
    if (ser.t[hi] == t || hi == 0) {
      pos = {ser.x[hi], ser.y[hi]};
    } else {
      std::size_t lo = hi - 1;
      double w = (t - ser.t[lo]) / (ser.t[hi] - ser.t[lo]);
      pos = {ser.x[lo] + w * (ser.x[hi] - ser.x[lo]),
             ser.y[lo] + w * (ser.y[hi] - ser.y[lo])};
    }
    snap.vehicles.push_back(VehiclePose{id, pos});
  }
  return snap;
}

namespace {

// Minimal attribute scanner sufficient for SUMO fcd-export files.
bool extract_attr(std::string_view tag, std::string_view name,
                  std::string& out) {
  std::string pattern = std::string(name) + "=\"";
  std::size_t pos = tag.find(pattern);
  if (pos == std::string_view::npos) {
    return false;
  }
  pos += pattern.size();
  std::size_t end = tag.find('"', pos);
  if (end == std::string_view::npos) {
    return false;
  }
  out.assign(tag.substr(pos, end - pos));
  return true;
}

}  // namespace

MobilityTrace MobilityTrace::from_fcd_xml(std::istream& in) {
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  std::vector<TraceSample> samples;
  double current_time = 0.0;
  bool in_timestep = false;
  std::size_t pos = 0;
  while (true) {
    std::size_t open = content.find('<', pos);
    if (open == std::string::npos) {
      break;
    }
    std::size_t close = content.find('>', open);
    if (close == std::string::npos) {
      throw TraceError("fcd: unterminated tag");
    }
    std::string_view tag(content.data() + open, close - open + 1);
    pos = close + 1;
    if (tag.starts_with("<timestep")) {
      std::string time_str;
      if (!extract_attr(tag, "time", time_str) ||
          !parse_double(time_str, current_time)) {
        throw TraceError("fcd: timestep without valid time attribute");
      }
      in_timestep = true;
    } else if (tag.starts_with("</timestep")) {
      in_timestep = false;
    } else if (tag.starts_with("<vehicle") && in_timestep) {
      std::string id, xs, ys;
      TraceSample s;
      s.time_s = current_time;
      if (!extract_attr(tag, "id", id) || !extract_attr(tag, "x", xs) ||
          !extract_attr(tag, "y", ys) || !parse_double(xs, s.x_m) ||
          !parse_double(ys, s.y_m)) {
        throw TraceError("fcd: vehicle tag missing id/x/y");
      }
      s.vehicle_id = std::move(id);
      samples.push_back(std::move(s));
    }
  }
  if (samples.empty()) {
    throw TraceError("fcd: no vehicle samples found");
  }
  return from_samples(std::move(samples));
}

void SyntheticTraceParams::validate() const {
  if (num_vehicles < 1) {
    throw ConfigError("trace.num_vehicles: must be >= 1");
  }
  if (!(road_length_m > 0.0)) {
    throw ConfigError("trace.road_length_m: degenerate area (zero extent)");
  }
  if (num_lanes < 1) {
    throw ConfigError("trace.num_lanes: must be >= 1");
  }
  if (!(lane_width_m > 0.0)) {
    throw ConfigError("trace.lane_width_m: degenerate area (zero extent)");
  }
  if (speed_min_mps < 0.0 || speed_max_mps < speed_min_mps) {
    throw ConfigError("trace.speed_min_mps/speed_max_mps: need 0 <= min <= max");
  }
  if (!(duration_s > 0.0)) {
    throw ConfigError("trace.duration_s: must be > 0");
  }
}

namespace {

// Position after travelling distance d from x0 with reflection at 0 and L.
double reflect_position(double x0, double d, double length) {
  double period = 2.0 * length;
  double p = std::fmod(x0 + d, period);
  if (p < 0.0) {
    p += period;
  }
  return p <= length ? p : period - p;
}

}  // namespace

MobilityTrace generate_synthetic(const SyntheticTraceParams& params, Rng& rng) {
  params.validate();
  int digits = 1;
  for (int v = params.num_vehicles; v >= 10; v /= 10) {
    ++digits;
  }
  struct Vehicle {
    std::string id;
    double x0;
    double lane_y;
    double velocity;  // signed along x
  };
  std::vector<Vehicle> vehicles;
  vehicles.reserve(static_cast<std::size_t>(params.num_vehicles));
  for (int i = 0; i < params.num_vehicles; ++i) {
    std::string num = std::to_string(i);
    std::string id = "v" + std::string(static_cast<std::size_t>(digits) -
                                           num.size(), '0') + num;
    int lane = i % params.num_lanes;
    double dir = (lane % 2 == 0) ? 1.0 : -1.0;
    double x0 = rng.next_unit() * params.road_length_m;
    double speed = params.speed_min_mps +
                   rng.next_unit() * (params.speed_max_mps -
                                      params.speed_min_mps);
    double lane_y = (lane + 0.5) * params.lane_width_m;
    vehicles.push_back(Vehicle{std::move(id), x0, lane_y, dir * speed});
  }
  std::vector<TraceSample> samples;
  auto steps = static_cast<std::int64_t>(std::floor(params.duration_s));
  samples.reserve(vehicles.size() * static_cast<std::size_t>(steps + 1));
  for (std::int64_t t = 0; t <= steps; ++t) {
    for (const Vehicle& v : vehicles) {
      TraceSample s;
      s.time_s = static_cast<double>(t);
      s.vehicle_id = v.id;
      s.x_m = reflect_position(v.x0, v.velocity * static_cast<double>(t),
                               params.road_length_m);
      s.y_m = v.lane_y;
      samples.push_back(std::move(s));
    }
  }
  return MobilityTrace::from_samples(std::move(samples));
}

}  // namespace v2x
