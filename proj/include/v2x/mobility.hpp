#pragma once

#include <cmath>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "v2x/resource_grid.hpp"
#include "v2x/rng.hpp"

namespace v2x {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double distance_m(Vec2 a, Vec2 b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

struct TraceSample {
  double time_s = 0.0;
  std::string vehicle_id;
  double x_m = 0.0;
  double y_m = 0.0;
  friend bool operator==(const TraceSample&, const TraceSample&) = default;
};

struct VehiclePose {
  std::string id;
  Vec2 pos;
};

// Fleet positions at one window's start time, held constant for the whole
// window. Sorted by vehicle id.
struct FleetSnapshot {
  WindowIndex window;
  std::vector<VehiclePose> vehicles;
};

// Time-stamped vehicle positions. Immutable once constructed.
class MobilityTrace {
 public:
  // Parses the header-less CSV format `time_s,vehicle_id,x_m,y_m`.
  static MobilityTrace from_csv(std::istream& in);
  static MobilityTrace from_csv_file(const std::string& path);

  // Adapter for SUMO floating-car-data XML exports
  // (<timestep time=..><vehicle id=.. x=.. y=../></timestep>).
  static MobilityTrace from_fcd_xml(std::istream& in);

  static MobilityTrace from_samples(std::vector<TraceSample> samples);

  // Writes the canonical CSV form; from_csv(to_csv(t)) round-trips exactly.
  void to_csv(std::ostream& out) const;

  double start_time_s() const { return start_time_; }
  double end_time_s() const { return end_time_; }
  double duration_s() const { return end_time_ - start_time_; }
  std::size_t num_vehicles() const { return series_.size(); }
  std::vector<std::string> vehicle_ids() const;

  // Samples sorted by (time, vehicle_id).
  const std::vector<TraceSample>& samples() const { return samples_; }

  // Positions at the window's start time (start_time + n * T_w), with linear
  // interpolation between bracketing samples. Vehicles not present at that
  // time are excluded. Throws TraceError for windows beyond the trace end.
  FleetSnapshot snapshot_at(WindowIndex window, const GridConfig& cfg) const;

 private:
  struct Series {
    std::vector<double> t;
    std::vector<double> x;
    std::vector<double> y;
  };

  void index_samples();

  std::vector<TraceSample> samples_;
  std::map<std::string, Series> series_;
  double start_time_ = 0.0;
  double end_time_ = 0.0;
};

// Straight multi-lane road segment; vehicles move at constant per-vehicle
// speed and reflect at the segment ends so density stays uniform.
struct SyntheticTraceParams {
  int num_vehicles = 200;
  double road_length_m = 1000.0;
  int num_lanes = 4;
  double lane_width_m = 4.0;
  double speed_min_mps = 8.0;
  double speed_max_mps = 14.0;
  double duration_s = 60.0;

  void validate() const;

  friend bool operator==(const SyntheticTraceParams&,
                         const SyntheticTraceParams&) = default;
};

// Deterministic given the generator state; one sample per second.
MobilityTrace generate_synthetic(const SyntheticTraceParams& params, Rng& rng);

}  // namespace v2x
