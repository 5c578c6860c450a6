#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "v2x/channel.hpp"
#include "v2x/resource_grid.hpp"
#include "v2x/rng.hpp"
#include "v2x/window_plan.hpp"

namespace v2x {

struct SchedulerConfig {
  // Size of the lowest-sensed-power candidate pool. 1 = greedy, S = purely
  // random. Must be set explicitly; there is no sensible default.
  int selectivity_k = 0;
  // Reservation lengths in windows; a fresh one is drawn uniformly at each
  // reselection. Defaults to 0.5..1.5 s at 100 ms windows.
  std::vector<int> sps_duration_choices_windows{5,  6,  7,  8,  9, 10,
                                                11, 12, 13, 14, 15};
  // When false, auxiliary subframes are held for a whole reservation period
  // instead of being redrawn every window.
  bool aux_redraw_per_window = true;

  void validate(const GridConfig& grid) const;

  friend bool operator==(const SchedulerConfig&, const SchedulerConfig&) =
      default;
};

// Per-subframe sensed power on the primary sub-band, linear mW. Subframes
// where the vehicle itself transmitted are unsensable and excluded from
// reselection.
struct SensedPowerVector {
  static constexpr double kUnsensable =
      std::numeric_limits<double>::infinity();

  std::vector<double> power_mw;  // index subframe - 1

  bool sensable(int subframe) const {
    return std::isfinite(power_mw[static_cast<std::size_t>(subframe - 1)]);
  }
  double at(int subframe) const {
    return power_mw[static_cast<std::size_t>(subframe - 1)];
  }
  int num_subframes() const { return static_cast<int>(power_mw.size()); }
};

struct SpsState {
  SubchannelId primary;          // sub_band always 1
  std::vector<int> aux_subframes;  // length F - 1, entry f-2 for band f
  int windows_remaining = 0;     // 1..=sps_duration_windows
  int sps_duration_windows = 0;
};

// Power perceived on each primary-band subframe of one elapsed window:
// sum over every other vehicle's transmissions in that subframe, weighted
// by the leakage of the transmit band into band 1. Own-transmission
// subframes come back unsensable.
SensedPowerVector sense_powers(int self, const WindowPlan& plan,
                               const double* gain_row,
                               const ChannelConfig& cfg);

// Ranks sensable subframes by ascending power (ties by subframe index),
// keeps the min(K, #sensable) lowest, picks one uniformly. Throws
// std::invalid_argument when nothing is sensable.
SubchannelId rank_and_select(const SensedPowerVector& sensed, int k, Rng& rng);

// Uniform draw from the configured reservation lengths.
int draw_sps_duration(const SchedulerConfig& cfg, Rng& rng);

// F-1 independent uniform subframe draws for the auxiliary bands.
// Coincidences among themselves and with the primary are allowed.
std::vector<int> draw_aux_subframes(int num_sub_bands, int subframes_per_band,
                                    Rng& rng);

// Bootstrap state: uniform primary, uniform counter offset within a fresh
// duration, fresh auxiliary draws. Used for vehicles with no sensing
// history (start of run or mid-trace entry).
SpsState init_sps_state(const GridConfig& grid, const SchedulerConfig& cfg,
                        Rng& rng);

// Advances one vehicle past an elapsed window. Decrements the counter;
// at zero, senses the elapsed window (via the provider, called at most
// once), reselects the primary and draws a fresh duration. Auxiliary
// subframes for the next window are redrawn per config. Returns true when
// a reselection happened; reselected_power then holds the sensed power of
// the new primary (for received-power CDFs).
bool step_window(SpsState& state,
                 const std::function<SensedPowerVector()>& sensed_provider,
                 const GridConfig& grid, const SchedulerConfig& cfg, Rng& rng,
                 double* reselected_power = nullptr);

}  // namespace v2x
