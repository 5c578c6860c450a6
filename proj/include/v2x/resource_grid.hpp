#pragma once

#include <compare>
#include <cstdint>
#include <utility>
#include <vector>

namespace v2x {

// Coordinate on the time-frequency resource grid. One subchannel carries one
// CAM and fills one 1 ms subframe of one sub-band. Both indices are 1-based.
struct SubchannelId {
  int sub_band = 1;  // f, 1..F; sub-band 1 is the SPS primary
  int subframe = 1;  // k, 1..S
  friend auto operator<=>(const SubchannelId&, const SubchannelId&) = default;
};

// Monotone window counter since simulation start.
struct WindowIndex {
  std::int64_t n = 0;
  friend auto operator<=>(const WindowIndex&, const WindowIndex&) = default;
};

struct GridConfig {
  int num_sub_bands = 3;           // F
  int subchannels_per_band = 100;  // S; one subchannel per 1 ms subframe
  int window_ms = 100;             // T_w
  int cam_rate_hz = 10;            // CAM message rate

  // Enforces S * 1 ms = T_w and T_w = 1000 / cam_rate_hz.
  void validate() const;

  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

// Maps absolute time (integer milliseconds) onto the grid.
std::pair<WindowIndex, int> subframe_of_time(std::int64_t t_ms,
                                             const GridConfig& cfg);

// All subchannels sharing subframe k across the F sub-bands:
// {(1,k), (2,k), ..., (F,k)}.
std::vector<SubchannelId> same_subframe_set(int subframe,
                                            const GridConfig& cfg);

}  // namespace v2x
