#include "v2x/sps.hpp"

#include <algorithm>
#include <stdexcept>

#include "v2x/errors.hpp"

namespace v2x {

void SchedulerConfig::validate(const GridConfig& grid) const {
  if (selectivity_k < 1 || selectivity_k > grid.subchannels_per_band)
    throw ConfigError("scheduler.selectivity_k: must lie in 1..=" +
                      std::to_string(grid.subchannels_per_band));
  if (sps_duration_choices_windows.empty())
    throw ConfigError("scheduler.sps_duration_choices: must not be empty");
  for (int w : sps_duration_choices_windows)
    if (w < 1)
      throw ConfigError(
          "scheduler.sps_duration_choices: durations must be >= 1 window");
}

SensedPowerVector sense_powers(int self, const WindowPlan& plan,
                               const double* gain_row,
                               const ChannelConfig& cfg) {
  const GridConfig& grid = plan.grid();
  const double tx_mw = cfg.tx_power_mw();
  SensedPowerVector sensed;
  sensed.power_mw.assign(
      static_cast<std::size_t>(grid.subchannels_per_band), 0.0);

  for (int k = 1; k <= grid.subchannels_per_band; ++k) {
    double& slot = sensed.power_mw[static_cast<std::size_t>(k - 1)];
    if (plan.transmits_in_subframe(self, k)) {
      slot = SensedPowerVector::kUnsensable;
      continue;
    }
    double sum = 0.0;
    for (const WindowPlan::Tx& tx : plan.transmissions_in_subframe(k)) {
      if (tx.vehicle == self) continue;
      sum += ibe_weight(1, tx.sub_band, cfg) * tx_mw * gain_row[tx.vehicle];
    }
    slot = sum;
  }
  return sensed;
}

SubchannelId rank_and_select(const SensedPowerVector& sensed, int k,
                             Rng& rng) {
  const int s = sensed.num_subframes();
  if (k < 1) throw std::invalid_argument("rank_and_select: k must be >= 1");

  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(s));
  for (int sf = 1; sf <= s; ++sf)
    if (sensed.sensable(sf)) order.push_back(sf);
  if (order.empty())
    throw std::invalid_argument("rank_and_select: no sensable subframe");

  const auto by_power = [&sensed](int a, int b) {
    const double pa = sensed.at(a), pb = sensed.at(b);
    return pa != pb ? pa < pb : a < b;
  };
  // Fully ordered pool keeps the pick independent of the standard
  // library's partitioning choices (bit-reproducibility across toolchains).
  const int pool = std::min<int>(k, static_cast<int>(order.size()));
  std::partial_sort(order.begin(), order.begin() + pool, order.end(),
                    by_power);
  order.resize(static_cast<std::size_t>(pool));

  const std::uint32_t pick = rng.next_below(static_cast<std::uint32_t>(pool));
  return SubchannelId{1, order[static_cast<std::size_t>(pick)]};
}

int draw_sps_duration(const SchedulerConfig& cfg, Rng& rng) {
  const auto& choices = cfg.sps_duration_choices_windows;
  if (choices.empty())
    throw std::invalid_argument("draw_sps_duration: empty choice set");
  return choices[static_cast<std::size_t>(
      rng.next_below(static_cast<std::uint32_t>(choices.size())))];
}

std::vector<int> draw_aux_subframes(int num_sub_bands, int subframes_per_band,
                                    Rng& rng) {
  if (num_sub_bands < 1)
    throw std::invalid_argument("draw_aux_subframes: need >= 1 sub-band");
  std::vector<int> aux;
  aux.reserve(static_cast<std::size_t>(num_sub_bands - 1));
  for (int f = 2; f <= num_sub_bands; ++f)
    aux.push_back(static_cast<int>(rng.next_below(
                      static_cast<std::uint32_t>(subframes_per_band))) +
                  1);
  return aux;
}

SpsState init_sps_state(const GridConfig& grid, const SchedulerConfig& cfg,
                        Rng& rng) {
  SpsState st;
  st.primary = SubchannelId{
      1, static_cast<int>(rng.next_below(
             static_cast<std::uint32_t>(grid.subchannels_per_band))) +
             1};
  st.sps_duration_windows = draw_sps_duration(cfg, rng);
  st.windows_remaining =
      static_cast<int>(rng.next_below(
          static_cast<std::uint32_t>(st.sps_duration_windows))) +
      1;
  st.aux_subframes =
      draw_aux_subframes(grid.num_sub_bands, grid.subchannels_per_band, rng);
  return st;
}

bool step_window(SpsState& state,
                 const std::function<SensedPowerVector()>& sensed_provider,
                 const GridConfig& grid, const SchedulerConfig& cfg, Rng& rng,
                 double* reselected_power) {
  bool reselected = false;
  if (--state.windows_remaining == 0) {
    const SensedPowerVector sensed = sensed_provider();
    state.primary = rank_and_select(sensed, cfg.selectivity_k, rng);
    if (reselected_power) *reselected_power = sensed.at(state.primary.subframe);
    state.sps_duration_windows = draw_sps_duration(cfg, rng);
    state.windows_remaining = state.sps_duration_windows;
    reselected = true;
  }
  if (cfg.aux_redraw_per_window || reselected)
    state.aux_subframes = draw_aux_subframes(grid.num_sub_bands,
                                             grid.subchannels_per_band, rng);
  return reselected;
}

}  // namespace v2x
