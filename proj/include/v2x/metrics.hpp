#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "v2x/reception.hpp"

namespace v2x {

struct MetricsConfig {
  // Awareness distances; a reception counts toward every bin whose distance
  // covers it (cumulative). The annulus switch restricts each reception to
  // the single innermost covering bin instead, for diagnostics.
  std::vector<double> distance_bins_m{50, 100, 150, 200, 250, 300};
  bool per_annulus = false;

  void validate() const;

  friend bool operator==(const MetricsConfig&, const MetricsConfig&) = default;
};

struct BinCounters {
  // Per transmitted copy.
  std::int64_t raw_attempts = 0;
  std::int64_t raw_successes = 0;
  std::int64_t raw_lost_hd = 0;
  std::int64_t raw_lost_prop = 0;
  std::int64_t raw_lost_cci = 0;
  // Per CAM instance and receiver; success when any of the copies decoded.
  std::int64_t service_messages = 0;
  std::int64_t service_successes = 0;
  std::int64_t service_lost_hd = 0;
  std::int64_t service_lost_prop = 0;
  std::int64_t service_lost_cci = 0;

  BinCounters& operator+=(const BinCounters& o);
};

// Distance-binned reception statistics. Records for one (tx, rx) pair and
// window must arrive contiguously (the order evaluate_window produces), as
// the replica grouping is a single linear scan.
class PrrAccumulator {
 public:
  PrrAccumulator() = default;
  explicit PrrAccumulator(const MetricsConfig& cfg);

  void accumulate(const std::vector<ReceptionRecord>& records);

  // Associative, commutative; both sides must share the bin layout.
  void merge(const PrrAccumulator& other);

  const std::vector<double>& bins() const { return bins_; }
  const std::vector<BinCounters>& counters() const { return counters_; }

 private:
  std::vector<double> bins_;
  bool per_annulus_ = false;
  std::vector<BinCounters> counters_;
};

struct BinPrr {
  double d_x;
  double prr_raw;
  double prr_service;
  std::int64_t raw_attempts;
  std::int64_t service_messages;
};

// Bins that saw no attempts are omitted, not reported as zero.
std::vector<BinPrr> prr_values(const PrrAccumulator& acc);

struct BinLoss {
  double d_x;
  double frac_cci;
  double frac_prop;
  double frac_hd;
  std::int64_t service_messages;
};

// Fraction of CAM instances lost per cause; complements prr_service to 1.
// A message is attributed half-duplex only when every copy failed that way,
// propagation when the failures mix propagation and half-duplex, and
// interference as soon as any copy failed on SINR.
std::vector<BinLoss> loss_breakdown(const PrrAccumulator& acc);

// Sample set for an empirical CDF of linear received powers.
class PowerCdfAccumulator {
 public:
  void add(double power_mw);
  void merge(const PowerCdfAccumulator& other);
  const std::vector<double>& samples() const { return samples_; }

 private:
  std::vector<double> samples_;
};

// Right-continuous empirical CDF: one (power, P[X <= power]) point per
// distinct sample value, reaching exactly 1 at the maximum.
std::vector<std::pair<double, double>> power_cdf(
    const PowerCdfAccumulator& acc);

}  // namespace v2x
