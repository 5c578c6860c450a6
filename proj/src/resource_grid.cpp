#include "v2x/resource_grid.hpp"

#include <stdexcept>
#include <string>

#include "v2x/errors.hpp"

namespace v2x {

void GridConfig::validate() const {
  if (num_sub_bands < 1) {
    throw ConfigError("grid.num_sub_bands: must be >= 1");
  }
  if (subchannels_per_band < 1) {
    throw ConfigError("grid.subchannels_per_band: must be >= 1");
  }
  if (window_ms < 1) {
    throw ConfigError("grid.window_ms: must be >= 1");
  }
  if (cam_rate_hz < 1 || window_ms * cam_rate_hz != 1000) {
    throw ConfigError("grid.cam_rate_hz: window_ms must equal 1000/cam_rate_hz");
  }
  // Subframes are 1 ms, so the window holds exactly S of them.
  if (subchannels_per_band != window_ms) {
    throw ConfigError(
        "grid.subchannels_per_band: S subframes of 1 ms must fill one window "
        "(S == window_ms)");
  }
}

std::pair<WindowIndex, int> subframe_of_time(std::int64_t t_ms,
                                             const GridConfig& cfg) {
  if (t_ms < 0) {
    throw std::invalid_argument("subframe_of_time: t must be >= 0");
  }
  WindowIndex w{t_ms / cfg.window_ms};
  int k = static_cast<int>(t_ms % cfg.window_ms) + 1;
  return {w, k};
}

std::vector<SubchannelId> same_subframe_set(int subframe,
                                            const GridConfig& cfg) {
  if (subframe < 1 || subframe > cfg.subchannels_per_band) {
    throw std::invalid_argument("same_subframe_set: subframe out of range 1.." +
                                std::to_string(cfg.subchannels_per_band));
  }
  std::vector<SubchannelId> out;
  out.reserve(static_cast<std::size_t>(cfg.num_sub_bands));
  for (int f = 1; f <= cfg.num_sub_bands; ++f) {
    out.push_back(SubchannelId{f, subframe});
  }
  return out;
}

}  // namespace v2x
