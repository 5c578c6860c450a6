#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "v2x/config.hpp"
#include "v2x/metrics.hpp"
#include "v2x/report.hpp"

using namespace v2x;

namespace {

ReceptionRecord record(int tx, int rx, double dist, Outcome outcome,
                       int sub_band = 1) {
  return ReceptionRecord{tx,   rx,   SubchannelId{sub_band, 1}, WindowIndex{0},
                         dist, -80.0, 10.0, outcome};
}

// Two bins, round fractions: near bin 1/2 raw and full service, far bin
// adds an all-lost interference message.
SimulationResult tidy_result() {
  MetricsConfig mc;
  mc.distance_bins_m = {50, 100};
  SimulationResult r;
  r.prr = PrrAccumulator(mc);
  r.prr.accumulate({record(0, 1, 25, Outcome::kDecoded, 1),
                    record(0, 1, 25, Outcome::kLostInterference, 2),
                    record(1, 2, 75, Outcome::kLostInterference, 1),
                    record(1, 2, 75, Outcome::kLostInterference, 2)});
  r.power_cdf.add(1e-9);
  r.power_cdf.add(1e-9);
  r.power_cdf.add(4e-9);
  r.power_cdf.add(0.0);
  r.meta.seed = 3;
  r.meta.config_digest = "00000000deadbeef";
  r.meta.windows_total = 10;
  r.meta.windows_measured = 8;
  r.meta.mean_fleet_size = 3.0;
  return r;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("prr csv rows carry exact shortest-form numbers") {
  const SimulationResult r = tidy_result();
  std::ostringstream out;
  write_prr_csv(out, r);
  CHECK(out.str() ==
        "d_x,prr_raw,prr_service,loss_cci,loss_prop,loss_hd,attempts\n"
        "50,0.5,1,0,0,0,2\n"
        "100,0.25,0.5,0.5,0,0,4\n");
}

TEST_CASE("losses csv reports per-cause fractions and message counts") {
  const SimulationResult r = tidy_result();
  std::ostringstream out;
  write_losses_csv(out, r);
  CHECK(out.str() ==
        "d_x,loss_cci,loss_prop,loss_hd,service_messages\n"
        "50,0,0,0,1\n"
        "100,0.5,0,0,2\n");
}

TEST_CASE("cdf csv converts to dBm and keeps tie-collapsed steps") {
  const SimulationResult r = tidy_result();
  std::ostringstream out;
  write_cdf_csv(out, r);
  // 0 mW maps to -inf dBm; 1e-9 mW = -90 dBm, 4e-9 mW ~ -83.98 dBm.
  std::ostringstream want;
  want << "rx_power_dbm,prob\n"
       << format_double(mw_to_dbm(0.0)) << ",0.25\n"
       << "-90,0.75\n"
       << format_double(mw_to_dbm(4e-9)) << ",1\n";
  CHECK(out.str() == want.str());
}

TEST_CASE("cdf csv degrades to a bare header without samples") {
  SimulationResult r = tidy_result();
  r.power_cdf = PowerCdfAccumulator{};
  std::ostringstream out;
  write_cdf_csv(out, r);
  CHECK(out.str() == "rx_power_dbm,prob\n");
}

TEST_CASE("run reports land in the named directory") {
  const auto dir = std::filesystem::temp_directory_path() /
                   "v2x_report_test" / "nested";
  std::filesystem::remove_all(dir.parent_path());

  const RunArtifacts art = write_run_reports(dir.string(), 30, 3, tidy_result());
  CHECK(art.k == 30);
  CHECK(art.f == 3);
  CHECK(art.prr_file == "prr_30_3.csv");
  CHECK(art.cdf_file == "cdf_30_3.csv");
  CHECK(art.losses_file == "losses_30_3.csv");
  CHECK(art.error.empty());

  for (const std::string& name : {art.prr_file, art.cdf_file, art.losses_file})
    CHECK(std::filesystem::exists(dir / name));
  CHECK(read_file(dir / art.prr_file).starts_with("d_x,prr_raw"));

  std::filesystem::remove_all(dir.parent_path());
}

TEST_CASE("comparison table prefixes rows with the sweep axes") {
  RunArtifacts good;
  good.k = 1;
  good.f = 2;
  good.result = tidy_result();
  RunArtifacts failed;
  failed.k = 7;
  failed.f = 1;
  failed.error = "boom";

  std::ostringstream out;
  write_comparison_csv(out, {good, failed});
  CHECK(out.str() ==
        "k,f,d_x,prr_raw,prr_service,loss_cci,loss_prop,loss_hd,attempts\n"
        "1,2,50,0.5,1,0,0,0,2\n"
        "1,2,100,0.25,0.5,0.5,0,0,4\n");
}

TEST_CASE("the summary manifest is valid json with per-run entries") {
  RunArtifacts ok;
  ok.k = 30;
  ok.f = 3;
  ok.result = tidy_result();
  ok.prr_file = "prr_30_3.csv";
  ok.cdf_file = "cdf_30_3.csv";
  ok.losses_file = "losses_30_3.csv";
  RunArtifacts failed;
  failed.k = 100;
  failed.f = 2;
  failed.error = "did not converge";

  const std::string text = summary_json({ok, failed}, 42, "feedc0defeedc0de");
  const auto doc = nlohmann::json::parse(text);
  CHECK(doc["seed"] == 42);
  CHECK(doc["config_digest"] == "feedc0defeedc0de");
  REQUIRE(doc["runs"].size() == 2);

  const auto& run0 = doc["runs"][0];
  CHECK(run0["k"] == 30);
  CHECK(run0["f"] == 3);
  CHECK(run0["windows_total"] == 10);
  CHECK(run0["windows_measured"] == 8);
  CHECK(run0["files"]["prr"] == "prr_30_3.csv");
  REQUIRE(run0["bins"].size() == 2);
  CHECK(run0["bins"][0]["d_x"] == 50);
  CHECK(run0["bins"][0]["prr_raw"] == 0.5);
  CHECK(run0["bins"][1]["attempts"] == 4);

  const auto& run1 = doc["runs"][1];
  CHECK(run1["error"] == "did not converge");
  CHECK_FALSE(run1.contains("bins"));
}

TEST_CASE("text files are written atomically enough to read back") {
  const auto path =
      std::filesystem::temp_directory_path() / "v2x_write_test.txt";
  write_text_file(path.string(), "line\n");
  CHECK(read_file(path) == "line\n");
  std::filesystem::remove(path);
  CHECK_THROWS(write_text_file("/nonexistent_dir/x/y.txt", "x"));
}

}  // TEST_SUITE
