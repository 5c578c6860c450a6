#pragma once

#include <optional>
#include <vector>

#include "v2x/channel.hpp"
#include "v2x/mobility.hpp"
#include "v2x/resource_grid.hpp"
#include "v2x/window_plan.hpp"

namespace v2x {

// SINR decode threshold gamma_T = 10*log10(2^(rho/lambda) - 1), derived from
// the effective coded throughput and the throughput loss coefficient.
double gamma_t_db(double rho, double lambda);

struct DecodeThresholds {
  double rho = 0.916;
  double lambda = 0.6;
  double sensitivity_dbm = -103.4;

  // Recomputed on demand so the threshold can never go stale against rho
  // and lambda.
  double gamma_t_db() const { return ::v2x::gamma_t_db(rho, lambda); }
  double gamma_t_linear() const { return std::exp2(rho / lambda) - 1.0; }
  double sensitivity_mw() const { return dbm_to_mw(sensitivity_dbm); }

  void validate() const;

  friend bool operator==(const DecodeThresholds&, const DecodeThresholds&) =
      default;
};

enum class Outcome {
  kDecoded,
  kLostHalfDuplex,
  kLostPropagation,
  kLostInterference,
};

struct ReceptionRecord {
  int tx;
  int rx;
  SubchannelId subchannel;
  WindowIndex window;
  double distance_m;
  double rx_power_dbm;
  std::optional<double> sinr_db;  // absent when the receiver was transmitting
  Outcome outcome;
};

// Single-link SINR on subchannel (f, k): wanted power over the leakage-
// weighted sum of every other transmission in subframe k plus noise. The
// transmitter's own replicas in the subframe do not self-interfere.
// Callers must route half-duplex receivers to classify_outcome instead.
double sinr_linear(int rx, int tx, SubchannelId sc, const WindowPlan& plan,
                   const double* rx_gain_row, const ChannelConfig& cfg);

// Loss precedence: half-duplex, then propagation (power under sensitivity),
// then interference (SINR at or under the threshold). Ties at the decode
// threshold count as lost.
Outcome classify_outcome(bool rx_transmitting, double rx_power_mw,
                         double sinr_lin, const DecodeThresholds& th);
Outcome classify_outcome_db(bool rx_transmitting, double rx_power_dbm,
                            std::optional<double> sinr_db,
                            const DecodeThresholds& th);

// Every (transmission, receiver) pair within the awareness limit for one
// window, ordered by (tx, rx, sub_band) so replica groups are contiguous.
std::vector<ReceptionRecord> evaluate_window(
    const WindowPlan& plan, const std::vector<Vec2>& positions,
    const GainMatrix& gains, const ChannelConfig& cfg,
    const DecodeThresholds& th, double awareness_limit_m, WindowIndex window);

}  // namespace v2x
