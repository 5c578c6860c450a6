#include "v2x/report.hpp"

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "v2x/config.hpp"

namespace v2x {

namespace {

struct BinRow {
  double d_x;
  double prr_raw;
  double prr_service;
  double loss_cci;
  double loss_prop;
  double loss_hd;
  std::int64_t attempts;
  std::int64_t service_messages;
};

std::vector<BinRow> bin_rows(const SimulationResult& result) {
  const auto prr = prr_values(result.prr);
  const auto losses = loss_breakdown(result.prr);
  // Both skip empty bins and a bin with raw attempts always carries service
  // messages, so the two sequences line up one to one.
  if (prr.size() != losses.size())
    throw std::logic_error("report: prr/loss bin mismatch");
  std::vector<BinRow> rows;
  rows.reserve(prr.size());
  for (std::size_t i = 0; i < prr.size(); ++i) {
    rows.push_back(BinRow{prr[i].d_x, prr[i].prr_raw, prr[i].prr_service,
                          losses[i].frac_cci, losses[i].frac_prop,
                          losses[i].frac_hd, prr[i].raw_attempts,
                          losses[i].service_messages});
  }
  return rows;
}

}  // namespace

void write_prr_csv(std::ostream& out, const SimulationResult& result) {
  out << "d_x,prr_raw,prr_service,loss_cci,loss_prop,loss_hd,attempts\n";
  for (const BinRow& r : bin_rows(result)) {
    out << format_double(r.d_x) << ',' << format_double(r.prr_raw) << ','
        << format_double(r.prr_service) << ',' << format_double(r.loss_cci)
        << ',' << format_double(r.loss_prop) << ','
        << format_double(r.loss_hd) << ',' << r.attempts << '\n';
  }
}

void write_losses_csv(std::ostream& out, const SimulationResult& result) {
  out << "d_x,loss_cci,loss_prop,loss_hd,service_messages\n";
  for (const BinLoss& l : loss_breakdown(result.prr)) {
    out << format_double(l.d_x) << ',' << format_double(l.frac_cci) << ','
        << format_double(l.frac_prop) << ',' << format_double(l.frac_hd)
        << ',' << l.service_messages << '\n';
  }
}

void write_cdf_csv(std::ostream& out, const SimulationResult& result) {
  out << "rx_power_dbm,prob\n";
  if (result.power_cdf.samples().empty()) return;
  for (const auto& [power_mw, prob] : power_cdf(result.power_cdf)) {
    out << format_double(mw_to_dbm(power_mw)) << ',' << format_double(prob)
        << '\n';
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

RunArtifacts write_run_reports(const std::string& out_dir, int k, int f,
                               const SimulationResult& result) {
  std::filesystem::create_directories(out_dir);
  const std::string tag = std::to_string(k) + "_" + std::to_string(f);

  RunArtifacts art;
  art.k = k;
  art.f = f;
  art.result = result;
  art.prr_file = "prr_" + tag + ".csv";
  art.cdf_file = "cdf_" + tag + ".csv";
  art.losses_file = "losses_" + tag + ".csv";

  const auto emit = [&out_dir](const std::string& name, auto writer,
                               const SimulationResult& res) {
    std::ostringstream text;
    writer(text, res);
    write_text_file(out_dir + "/" + name, text.str());
  };
  emit(art.prr_file, write_prr_csv, result);
  emit(art.cdf_file, write_cdf_csv, result);
  emit(art.losses_file, write_losses_csv, result);
  return art;
}

void write_comparison_csv(std::ostream& out,
                          const std::vector<RunArtifacts>& runs) {
  out << "k,f,d_x,prr_raw,prr_service,loss_cci,loss_prop,loss_hd,attempts\n";
  for (const RunArtifacts& run : runs) {
    if (!run.error.empty()) continue;
    for (const BinRow& r : bin_rows(run.result)) {
      out << run.k << ',' << run.f << ',' << format_double(r.d_x) << ','
          << format_double(r.prr_raw) << ',' << format_double(r.prr_service)
          << ',' << format_double(r.loss_cci) << ','
          << format_double(r.loss_prop) << ',' << format_double(r.loss_hd)
          << ',' << r.attempts << '\n';
    }
  }
}

std::string summary_json(const std::vector<RunArtifacts>& runs,
                         std::uint64_t seed,
                         const std::string& config_digest) {
  nlohmann::ordered_json doc;
  doc["seed"] = seed;
  doc["config_digest"] = config_digest;
  doc["runs"] = nlohmann::ordered_json::array();
  for (const RunArtifacts& run : runs) {
    nlohmann::ordered_json entry;
    entry["k"] = run.k;
    entry["f"] = run.f;
    if (!run.error.empty()) {
      entry["error"] = run.error;
      doc["runs"].push_back(entry);
      continue;
    }
    const SimulationMeta& meta = run.result.meta;
    entry["config_digest"] = meta.config_digest;
    entry["windows_total"] = meta.windows_total;
    entry["windows_measured"] = meta.windows_measured;
    entry["mean_fleet_size"] = meta.mean_fleet_size;
    entry["files"] = {{"prr", run.prr_file},
                      {"cdf", run.cdf_file},
                      {"losses", run.losses_file}};
    entry["bins"] = nlohmann::ordered_json::array();
    for (const BinRow& r : bin_rows(run.result)) {
      entry["bins"].push_back({{"d_x", r.d_x},
                               {"prr_raw", r.prr_raw},
                               {"prr_service", r.prr_service},
                               {"loss_cci", r.loss_cci},
                               {"loss_prop", r.loss_prop},
                               {"loss_hd", r.loss_hd},
                               {"attempts", r.attempts}});
    }
    doc["runs"].push_back(entry);
  }
  return doc.dump(2) + "\n";
}

}  // namespace v2x
