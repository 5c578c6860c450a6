#include "v2x/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "v2x/errors.hpp"
#include "v2x/rng.hpp"

namespace v2x {

namespace {

constexpr double kSpeedOfLight = 3.0e8;

double clamp_distance(double d, const ChannelConfig& cfg) {
  if (!(d > 0.0)) throw std::invalid_argument("pathloss: distance must be > 0");
  return std::max(d, cfg.distance_floor_m);
}

}  // namespace

void ChannelConfig::validate(int num_sub_bands) const {
  if (!(tx_power_dbm > -100.0 && tx_power_dbm < 100.0))
    throw ConfigError("channel.tx_power_dbm: out of range");
  if (!(shadow_sigma_db >= 0.0))
    throw ConfigError("channel.shadow_sigma_db: must be >= 0");
  if (!(shadow_corr_dist_m > 0.0))
    throw ConfigError("channel.shadow_corr_dist_m: must be > 0");
  if (!(carrier_freq_ghz > 0.0))
    throw ConfigError("channel.carrier_freq_ghz: must be > 0");
  if (ibe_vector.empty())
    throw ConfigError("channel.ibe_vector: must not be empty");
  if (ibe_vector.front() != 1.0)
    throw ConfigError("channel.ibe_vector: co-channel weight must be 1");
  for (double w : ibe_vector)
    if (!(w > 0.0 && w <= 1.0))
      throw ConfigError("channel.ibe_vector: weights must lie in (0, 1]");
  if (static_cast<int>(ibe_vector.size()) < num_sub_bands)
    throw ConfigError(
        "channel.ibe_vector: needs one weight per sub-band offset");
  if (!(distance_floor_m > 0.0))
    throw ConfigError("channel.distance_floor_m: must be > 0");
  if (!(b1.antenna_height_m > 1.0))
    throw ConfigError("channel.b1_antenna_height_m: must be > 1");
}

double free_space_pathloss_db(double distance_m, const ChannelConfig& cfg) {
  const double d = clamp_distance(distance_m, cfg);
  const double f_hz = cfg.carrier_freq_ghz * 1e9;
  return 20.0 * std::log10(4.0 * std::numbers::pi * d * f_hz / kSpeedOfLight);
}

double winner_b1_pathloss_db(double distance_m, const ChannelConfig& cfg) {
  const double d = clamp_distance(distance_m, cfg);
  const B1Params& p = cfg.b1;
  const double f_hz = cfg.carrier_freq_ghz * 1e9;
  const double h_eff = p.antenna_height_m - 1.0;
  const double d_bp = 4.0 * h_eff * h_eff * f_hz / kSpeedOfLight;
  const double fc_rel = cfg.carrier_freq_ghz / 5.0;
  if (d <= d_bp) {
    return p.near_dist_coeff * std::log10(d) + p.near_const +
           p.near_freq_coeff * std::log10(fc_rel);
  }
  return p.far_dist_coeff * std::log10(d) + p.far_const +
         2.0 * p.far_height_coeff * std::log10(h_eff) +
         p.far_freq_coeff * std::log10(fc_rel);
}

double pathloss_db(double distance_m, const ChannelConfig& cfg) {
  return std::max(free_space_pathloss_db(distance_m, cfg),
                  winner_b1_pathloss_db(distance_m, cfg));
}

double ibe_weight(int f, int p, const ChannelConfig& cfg) {
  const int off = std::abs(p - f);
  if (off >= static_cast<int>(cfg.ibe_vector.size()))
    throw std::out_of_range("ibe_weight: sub-band offset beyond ibe_vector");
  return cfg.ibe_vector[static_cast<std::size_t>(off)];
}

double link_gain_from_pathloss(double pathloss_db, double shadow_db,
                               const ChannelConfig& cfg) {
  const double gain_db =
      2.0 * cfg.antenna_gain_db - shadow_db - pathloss_db;
  return db_to_linear(gain_db);
}

double link_gain_linear(double distance_m, double shadow_db,
                        const ChannelConfig& cfg) {
  return link_gain_from_pathloss(pathloss_db(distance_m, cfg), shadow_db, cfg);
}

ShadowField::ShadowField(std::uint64_t master_seed, double sigma_db,
                         double corr_dist_m)
    : master_seed_(master_seed),
      sigma_db_(sigma_db),
      corr_dist_m_(corr_dist_m) {
  if (!(corr_dist_m > 0.0))
    throw std::invalid_argument("ShadowField: corr_dist_m must be > 0");
  if (!(sigma_db >= 0.0))
    throw std::invalid_argument("ShadowField: sigma_db must be >= 0");
}

std::uint64_t ShadowField::pair_key(std::uint32_t a, std::uint32_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

double ShadowField::update(std::uint32_t id_lo, std::uint32_t id_hi,
                           Vec2 midpoint) {
  const std::uint64_t key = pair_key(id_lo, id_hi);
  const std::uint64_t draw_key = derive_seed(
      {master_seed_, purpose_tag(StreamPurpose::kShadowing),
       static_cast<std::uint64_t>(window_), key});
  const double innovation = keyed_gaussian(draw_key) * sigma_db_;

  auto [it, fresh] = pairs_.try_emplace(key, PairState{0.0, midpoint});
  if (fresh) {
    it->second.value_db = innovation;
    return innovation;
  }
  const double delta = distance_m(it->second.midpoint, midpoint);
  const double rho = std::exp(-delta / corr_dist_m_);
  it->second.value_db =
      rho * it->second.value_db + std::sqrt(1.0 - rho * rho) * innovation;
  it->second.midpoint = midpoint;
  return it->second.value_db;
}

double ShadowField::value_db(std::uint32_t a, std::uint32_t b) const {
  auto it = pairs_.find(pair_key(a, b));
  return it == pairs_.end() ? 0.0 : it->second.value_db;
}

}  // namespace v2x
