#pragma once

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "v2x/mobility.hpp"
#include "v2x/resource_grid.hpp"

namespace v2x {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double dbm_to_mw(double dbm) { return db_to_linear(dbm); }
inline double mw_to_dbm(double mw) { return linear_to_db(mw); }

// WINNER+ B1 urban-microcell constants (two-slope LOS form). Defaults follow
// the published model family; all of them are configurable because only the
// max-with-free-space combination and monotonicity are contractual.
struct B1Params {
  double near_dist_coeff = 22.7;
  double near_const = 41.0;
  double near_freq_coeff = 20.0;  // * log10(fc/5 GHz)
  double far_dist_coeff = 40.0;
  double far_const = 9.45;
  double far_height_coeff = -17.3;  // applied per terminal, * log10(h_eff)
  double far_freq_coeff = 2.7;      // * log10(fc/5 GHz)
  double antenna_height_m = 1.5;    // effective height is h - 1

  friend bool operator==(const B1Params&, const B1Params&) = default;
};

struct ChannelConfig {
  double tx_power_dbm = 23.0;       // P_T
  double antenna_gain_db = 3.0;     // G_t = G_r
  double shadow_sigma_db = 7.0;     // lognormal shadowing std, dB
  double shadow_corr_dist_m = 10.0;
  double carrier_freq_ghz = 5.9;
  // In-band emission weights; entry |p-f| is the leakage from sub-band p
  // into sub-band f. First entry (co-channel) must be 1.
  std::vector<double> ibe_vector{1.0, 1e-3, 1e-4};
  double noise_power_dbm = -103.4;  // sigma^2 in the SINR denominator
  double sensitivity_dbm = -103.4;  // per-subchannel decode sensitivity
  double distance_floor_m = 1.0;
  B1Params b1;

  double tx_power_mw() const { return dbm_to_mw(tx_power_dbm); }
  double noise_power_mw() const { return dbm_to_mw(noise_power_dbm); }
  double sensitivity_mw() const { return dbm_to_mw(sensitivity_dbm); }

  void validate(int num_sub_bands) const;

  friend bool operator==(const ChannelConfig&, const ChannelConfig&) = default;
};

// 20 log10(4 pi d fc / c), with the configured distance floor applied.
double free_space_pathloss_db(double distance_m, const ChannelConfig& cfg);

// Two-slope WINNER+ B1 value with the configured constants.
double winner_b1_pathloss_db(double distance_m, const ChannelConfig& cfg);

// max(free-space, B1); monotone non-decreasing in distance. Throws
// std::invalid_argument for non-positive distance.
double pathloss_db(double distance_m, const ChannelConfig& cfg);

// Linear leakage weight between sub-bands f and p (both 1-based). Equals 1
// when p == f; symmetric.
double ibe_weight(int f, int p, const ChannelConfig& cfg);

// g = Gt*Gr / (X * PL) in linear terms.
double link_gain_from_pathloss(double pathloss_db, double shadow_db,
                               const ChannelConfig& cfg);
double link_gain_linear(double distance_m, double shadow_db,
                        const ChannelConfig& cfg);

// Per-pair correlated shadowing state (Gudmundson model). Values evolve as
// an AR(1) process in the displacement of the pair midpoint. The Gaussian
// innovations are keyed on (seed, window, pair), so realizations do not
// depend on scheduler settings, fleet iteration order, or how many other
// draws happened — a requirement for paired comparisons across K and F.
class ShadowField {
 public:
  ShadowField(std::uint64_t master_seed, double sigma_db, double corr_dist_m);

  void begin_window(WindowIndex window) { window_ = window.n; }

  // Advances the pair (id_lo, id_hi) to the given midpoint and returns the
  // new shadowing value in dB. First call for a pair draws fresh.
  double update(std::uint32_t id_lo, std::uint32_t id_hi, Vec2 midpoint);

  // Last value for the pair; 0 dB if the pair has never been updated.
  double value_db(std::uint32_t a, std::uint32_t b) const;

  double sigma_db() const { return sigma_db_; }

 private:
  struct PairState {
    double value_db;
    Vec2 midpoint;
  };

  static std::uint64_t pair_key(std::uint32_t a, std::uint32_t b);

  std::uint64_t master_seed_;
  double sigma_db_;
  double corr_dist_m_;
  std::int64_t window_ = 0;
  std::unordered_map<std::uint64_t, PairState> pairs_;
};

}  // namespace v2x
