#include "v2x/reception.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "v2x/errors.hpp"

namespace v2x {

double gamma_t_db(double rho, double lambda) {
  if (!(rho > 0.0) || !(lambda > 0.0))
    throw std::invalid_argument("gamma_t: rho and lambda must be > 0");
  return 10.0 * std::log10(std::exp2(rho / lambda) - 1.0);
}

void DecodeThresholds::validate() const {
  if (!(rho > 0.0)) throw ConfigError("reception.rho: must be > 0");
  if (!(lambda > 0.0)) throw ConfigError("reception.lambda: must be > 0");
}

double sinr_linear(int rx, int tx, SubchannelId sc, const WindowPlan& plan,
                   const double* rx_gain_row, const ChannelConfig& cfg) {
  if (rx == tx) throw std::invalid_argument("sinr: rx == tx");
  const double tx_mw = cfg.tx_power_mw();
  const double signal = tx_mw * rx_gain_row[tx];

  double interference = 0.0;
  for (const WindowPlan::Tx& other :
       plan.transmissions_in_subframe(sc.subframe)) {
    if (other.vehicle == rx || other.vehicle == tx) continue;
    interference += ibe_weight(sc.sub_band, other.sub_band, cfg) * tx_mw *
                    rx_gain_row[other.vehicle];
  }
  return signal / (interference + cfg.noise_power_mw());
}

Outcome classify_outcome(bool rx_transmitting, double rx_power_mw,
                         double sinr_lin, const DecodeThresholds& th) {
  if (rx_transmitting) return Outcome::kLostHalfDuplex;
  if (rx_power_mw < dbm_to_mw(th.sensitivity_dbm))
    return Outcome::kLostPropagation;
  if (!(sinr_lin > th.gamma_t_linear())) return Outcome::kLostInterference;
  return Outcome::kDecoded;
}

Outcome classify_outcome_db(bool rx_transmitting, double rx_power_dbm,
                            std::optional<double> sinr_db,
                            const DecodeThresholds& th) {
  return classify_outcome(
      rx_transmitting, dbm_to_mw(rx_power_dbm),
      sinr_db ? db_to_linear(*sinr_db) : 0.0, th);
}

std::vector<ReceptionRecord> evaluate_window(
    const WindowPlan& plan, const std::vector<Vec2>& positions,
    const GainMatrix& gains, const ChannelConfig& cfg,
    const DecodeThresholds& th, double awareness_limit_m, WindowIndex window) {
  const int n = plan.num_vehicles();
  if (static_cast<int>(positions.size()) != n)
    throw std::invalid_argument("evaluate_window: positions size mismatch");
  const GridConfig& grid = plan.grid();
  const double tx_mw = cfg.tx_power_mw();
  const double sensitivity_mw = th.sensitivity_mw();
  const double gamma_t_lin = th.gamma_t_linear();

  std::vector<ReceptionRecord> records;
  for (int tx = 0; tx < n; ++tx) {
    for (int rx = 0; rx < n; ++rx) {
      if (rx == tx) continue;
      const double dist = distance_m(positions[tx], positions[rx]);
      if (dist > awareness_limit_m) continue;
      const double* row = gains.row(rx);
      const double rx_power_mw = tx_mw * row[tx];
      const double rx_power_dbm = mw_to_dbm(rx_power_mw);

      for (int f = 1; f <= grid.num_sub_bands; ++f) {
        const SubchannelId sc = plan.slot(tx, f);
        ReceptionRecord rec{tx,     rx,   sc,
                            window, dist, rx_power_dbm,
                            std::nullopt, Outcome::kDecoded};
        if (plan.transmits_in_subframe(rx, sc.subframe)) {
          rec.outcome = Outcome::kLostHalfDuplex;
        } else {
          const double sinr = sinr_linear(rx, tx, sc, plan, row, cfg);
          rec.sinr_db = linear_to_db(sinr);
          if (rx_power_mw < sensitivity_mw)
            rec.outcome = Outcome::kLostPropagation;
          else if (!(sinr > gamma_t_lin))
            rec.outcome = Outcome::kLostInterference;
        }
        records.push_back(rec);
      }
    }
  }
  return records;
}

}  // namespace v2x
