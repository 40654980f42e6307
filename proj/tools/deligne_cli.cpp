// deligne: run one scenario file, write a JSON report (and a CSV summary for
// suite tasks), and exit 0 when every check passes, 2 when a mathematical
// check fails, 1 on structural or parse errors.  Reports are byte-identical
// for equal scenario and seed; wall-clock timings go to stderr only.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dlg/scenario.hpp"

namespace {

std::string sibling_csv_path(const std::string& out) {
  std::filesystem::path p(out);
  p.replace_extension(".csv");
  return p.string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deligne: local-data checks, holonomy, transgression, state "
               "sums and lattice Chern-Simons functionals"};
  std::string scenario_path, out_path = "report.json", format = "json";
  double tolerance = 0.0;
  long long seed = -1;
  int threads = 0;
  app.add_option("--scenario", scenario_path, "scenario JSON file")->required();
  app.add_option("--out", out_path, "report path (default report.json)");
  app.add_option("--format", format, "stdout echo: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tolerance", tolerance, "override scenario tolerance");
  app.add_option("--threads", threads, "override scenario thread count");
  app.add_option("--seed", seed, "override scenario seed");
  CLI11_PARSE(app, argc, argv);

  auto t0 = std::chrono::steady_clock::now();
  dlg::ScenarioRun run;
  std::string task = "?";
  try {
    std::ifstream in(scenario_path);
    if (!in.good()) {
      std::cerr << "error: cannot open scenario file: " << scenario_path << "\n";
      return 1;
    }
    // parse errors carry line/column positions from the JSON layer
    dlg::Json sc = dlg::Json::parse(in);
    dlg::ScenarioOverrides over;
    if (tolerance > 0.0) over.tolerance = tolerance;
    if (seed >= 0) over.seed = (std::uint64_t)seed;
    if (threads > 0) over.threads = threads;
    std::string base_dir =
        std::filesystem::path(scenario_path).parent_path().string();
    if (base_dir.empty()) base_dir = ".";
    run = dlg::run_scenario(sc, base_dir, over);
    task = sc.value("task", "?");
  } catch (const std::exception& e) {
    std::cerr << "error: " << scenario_path << ": " << e.what() << "\n";
    return 1;
  }

  try {
    std::ofstream out(out_path, std::ios::binary);
    if (!out.good()) {
      std::cerr << "error: cannot write report: " << out_path << "\n";
      return 1;
    }
    out << run.report.dump(2) << "\n";
    if (task == "suite") {
      std::string csv_path = sibling_csv_path(out_path);
      std::ofstream csv(csv_path, std::ios::binary);
      if (!csv.good()) {
        std::cerr << "error: cannot write summary: " << csv_path << "\n";
        return 1;
      }
      csv << run.csv;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: writing report: " << e.what() << "\n";
    return 1;
  }

  if (format == "csv")
    std::cout << run.csv;
  else
    std::cout << run.report.dump(2) << "\n";

  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  std::cerr << "deligne: task " << task << (run.all_pass ? " passed" : " FAILED")
            << " in " << ms << " ms\n";
  return run.all_pass ? 0 : 2;
}
