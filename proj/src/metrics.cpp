#include "v2x/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "v2x/errors.hpp"

namespace v2x {

void MetricsConfig::validate() const {
  if (distance_bins_m.empty())
    throw ConfigError("metrics.distance_bins_m: must not be empty");
  double prev = 0.0;
  for (double d : distance_bins_m) {
    if (!(d > prev))
      throw ConfigError(
          "metrics.distance_bins_m: must be positive and strictly ascending");
    prev = d;
  }
}

BinCounters& BinCounters::operator+=(const BinCounters& o) {
  raw_attempts += o.raw_attempts;
  raw_successes += o.raw_successes;
  raw_lost_hd += o.raw_lost_hd;
  raw_lost_prop += o.raw_lost_prop;
  raw_lost_cci += o.raw_lost_cci;
  service_messages += o.service_messages;
  service_successes += o.service_successes;
  service_lost_hd += o.service_lost_hd;
  service_lost_prop += o.service_lost_prop;
  service_lost_cci += o.service_lost_cci;
  return *this;
}

PrrAccumulator::PrrAccumulator(const MetricsConfig& cfg)
    : bins_(cfg.distance_bins_m), per_annulus_(cfg.per_annulus) {
  cfg.validate();
  counters_.resize(bins_.size());
}

void PrrAccumulator::accumulate(const std::vector<ReceptionRecord>& records) {
  if (bins_.empty()) throw std::logic_error("PrrAccumulator: no bins");

  auto group_end = [&records](std::size_t i) {
    std::size_t j = i + 1;
    while (j < records.size() && records[j].tx == records[i].tx &&
           records[j].rx == records[i].rx)
      ++j;
    return j;
  };

  for (std::size_t i = 0; i < records.size();) {
    const std::size_t end = group_end(i);
    const double dist = records[i].distance_m;

    int decoded = 0, hd = 0, prop = 0, cci = 0;
    for (std::size_t j = i; j < end; ++j) {
      switch (records[j].outcome) {
        case Outcome::kDecoded: ++decoded; break;
        case Outcome::kLostHalfDuplex: ++hd; break;
        case Outcome::kLostPropagation: ++prop; break;
        case Outcome::kLostInterference: ++cci; break;
      }
    }
    const int copies = static_cast<int>(end - i);

    const auto first_bin =
        std::lower_bound(bins_.begin(), bins_.end(), dist) - bins_.begin();
    const std::size_t last_bin =
        per_annulus_ ? static_cast<std::size_t>(first_bin) : bins_.size() - 1;
    for (std::size_t b = static_cast<std::size_t>(first_bin); b <= last_bin &&
         b < bins_.size();
         ++b) {
      BinCounters& c = counters_[b];
      c.raw_attempts += copies;
      c.raw_successes += decoded;
      c.raw_lost_hd += hd;
      c.raw_lost_prop += prop;
      c.raw_lost_cci += cci;
      c.service_messages += 1;
      if (decoded > 0) {
        c.service_successes += 1;
      } else if (cci > 0) {
        c.service_lost_cci += 1;
      } else if (prop > 0) {
        c.service_lost_prop += 1;
      } else {
        c.service_lost_hd += 1;
      }
    }
    i = end;
  }
}

void PrrAccumulator::merge(const PrrAccumulator& other) {
  if (bins_ != other.bins_ || per_annulus_ != other.per_annulus_)
    throw std::invalid_argument("PrrAccumulator: merging unlike bin layouts");
  for (std::size_t b = 0; b < counters_.size(); ++b)
    counters_[b] += other.counters_[b];
}

std::vector<BinPrr> prr_values(const PrrAccumulator& acc) {
  std::vector<BinPrr> out;
  for (std::size_t b = 0; b < acc.bins().size(); ++b) {
    const BinCounters& c = acc.counters()[b];
    if (c.raw_attempts == 0) continue;
    out.push_back(BinPrr{
        acc.bins()[b],
        static_cast<double>(c.raw_successes) /
            static_cast<double>(c.raw_attempts),
        static_cast<double>(c.service_successes) /
            static_cast<double>(c.service_messages),
        c.raw_attempts, c.service_messages});
  }
  return out;
}

std::vector<BinLoss> loss_breakdown(const PrrAccumulator& acc) {
  std::vector<BinLoss> out;
  for (std::size_t b = 0; b < acc.bins().size(); ++b) {
    const BinCounters& c = acc.counters()[b];
    if (c.service_messages == 0) continue;
    const double total = static_cast<double>(c.service_messages);
    out.push_back(BinLoss{acc.bins()[b],
                          static_cast<double>(c.service_lost_cci) / total,
                          static_cast<double>(c.service_lost_prop) / total,
                          static_cast<double>(c.service_lost_hd) / total,
                          c.service_messages});
  }
  return out;
}

void PowerCdfAccumulator::add(double power_mw) {
  if (!std::isfinite(power_mw) || power_mw < 0.0)
    throw std::invalid_argument(
        "PowerCdfAccumulator: samples must be finite and non-negative");
  samples_.push_back(power_mw);
}

void PowerCdfAccumulator::merge(const PowerCdfAccumulator& other) {
  samples_.insert(samples_.end(), other.samples_.begin(),
                  other.samples_.end());
}

std::vector<std::pair<double, double>> power_cdf(
    const PowerCdfAccumulator& acc) {
  if (acc.samples().empty())
    throw std::invalid_argument("power_cdf: no samples");
  std::vector<double> sorted = acc.samples();
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());

  std::vector<std::pair<double, double>> cdf;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const bool last_of_tie =
        i + 1 == sorted.size() || sorted[i + 1] != sorted[i];
    if (last_of_tie)
      cdf.emplace_back(sorted[i], static_cast<double>(i + 1) / n);
  }
  return cdf;
}

}  // namespace v2x
