#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "v2x/engine.hpp"

namespace v2x {

// Report emission. Output bytes are a pure function of the results: fixed
// row ordering and shortest exact number formatting, so reruns diff clean.

void write_prr_csv(std::ostream& out, const SimulationResult& result);
void write_losses_csv(std::ostream& out, const SimulationResult& result);
void write_cdf_csv(std::ostream& out, const SimulationResult& result);

struct RunArtifacts {
  int k = 0;
  int f = 0;
  SimulationResult result;
  std::string prr_file;
  std::string cdf_file;
  std::string losses_file;
  std::string error;  // non-empty when the run failed
};

// Writes prr_<K>_<F>.csv, cdf_<K>_<F>.csv, losses_<K>_<F>.csv under
// out_dir (created if missing) and returns their names.
RunArtifacts write_run_reports(const std::string& out_dir, int k, int f,
                               const SimulationResult& result);

// One table across a sweep, series keyed by (k, f), mirroring the per-run
// PRR rows.
void write_comparison_csv(std::ostream& out,
                          const std::vector<RunArtifacts>& runs);

// Manifest with the seed, config digest and per-run summaries.
std::string summary_json(const std::vector<RunArtifacts>& runs,
                         std::uint64_t seed, const std::string& config_digest);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace v2x
