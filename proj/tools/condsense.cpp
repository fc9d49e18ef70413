// Experiment CLI: run a single tester, compute exact truth quantities, or
// drive a sweep grid into a CSV.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "condsense/config.hpp"
#include "condsense/families.hpp"
#include "condsense/harness.hpp"
#include "condsense/truth.hpp"

using namespace condsense;

namespace {

Distribution load_reference(const std::string& arg) {
  if (std::ifstream probe(arg); probe.good()) {
    FamilySpec f;
    f.kind = "file";
    f.path = arg;
    return generate(f).dist;
  }
  return generate(FamilySpec::parse(arg)).dist;
}

struct CommonOpts {
  std::size_t n = 100;
  double eps = 0.1;
  std::uint64_t seed = 1;
  int trials = 1;
  std::string family;
  std::string dstar_path;
  std::string config_path;
  std::string out_path;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--n", o.n, "domain size for the default family");
  cmd->add_option("--eps", o.eps, "accuracy parameter");
  cmd->add_option("--seed", o.seed, "base seed");
  cmd->add_option("--trials", o.trials, "trials (seeds seed..seed+trials-1)");
  cmd->add_option("--family", o.family, "family spec, e.g. zipf:n=200;s=1.2");
  cmd->add_option("--dstar", o.dstar_path,
                  "reference distribution: file path or family spec");
  cmd->add_option("--config", o.config_path, "key = value config file");
  cmd->add_option("--out", o.out_path, "CSV output path");
}

int run_algorithm(const std::string& algorithm, const CommonOpts& o) {
  Config cfg;
  if (!o.config_path.empty()) cfg = Config::load(o.config_path);
  FamilySpec spec = FamilySpec::parse(
      o.family.empty() ? "uniform:n=" + std::to_string(o.n) : o.family);
  std::optional<Distribution> dstar;
  if (!o.dstar_path.empty()) dstar = load_reference(o.dstar_path);

  std::vector<TrialReport> rows;
  bool failed = false;
  for (int t = 0; t < o.trials; ++t) {
    TrialReport r = run_trial(spec, algorithm, o.eps, o.seed + t, cfg,
                              dstar ? &*dstar : nullptr);
    if (!r.error.empty()) failed = true;
    std::cout << csv_row(r) << "\n";
    rows.push_back(std::move(r));
  }
  if (!o.out_path.empty()) write_csv(rows, o.out_path);
  return failed ? 3 : 0;
}

int run_truth(const CommonOpts& o, const std::string& quantity) {
  FamilySpec spec = FamilySpec::parse(
      o.family.empty() ? "uniform:n=" + std::to_string(o.n) : o.family);
  Instance inst = generate(spec);
  Distribution other;
  if (!o.dstar_path.empty()) {
    other = load_reference(o.dstar_path);
  } else if (inst.dstar) {
    other = *inst.dstar;
  } else {
    other = Distribution::from_blocks(
        {{1, inst.dist.size(), 1.0 / static_cast<double>(inst.dist.size())}});
  }

  std::ostringstream out;
  out.precision(17);
  if (quantity == "tv") {
    out << exact_tv(inst.dist, other);
  } else if (quantity == "monotone") {
    out << exact_dist_to_monotone(inst.dist).optimum;
  } else if (quantity == "expo") {
    out << exact_dist_to_expo(inst.dist, o.eps / 4.0).optimum;
  } else if (quantity == "pair") {
    out << pair_expectation(inst.dist, other);
  } else {
    std::cerr << "unknown quantity: " << quantity << "\n";
    return 2;
  }
  std::cout << out.str() << "\n";
  return 0;
}

int run_sweep_cmd(const CommonOpts& o, const std::vector<std::string>& cells) {
  Config cfg;
  if (!o.config_path.empty()) cfg = Config::load(o.config_path);
  std::vector<SweepCell> grid;
  for (const std::string& c : cells) {
    // cell format: algorithm/family-spec/eps
    auto a = c.find('/');
    auto b = c.rfind('/');
    if (a == std::string::npos || b == a) {
      std::cerr << "cell needs algorithm/family/eps: " << c << "\n";
      return 2;
    }
    SweepCell cell;
    cell.algorithm = c.substr(0, a);
    cell.spec = FamilySpec::parse(c.substr(a + 1, b - a - 1));
    cell.eps = std::stod(c.substr(b + 1));
    grid.push_back(std::move(cell));
  }
  auto rows = run_sweep(grid, o.trials, o.seed, cfg);
  if (!o.out_path.empty())
    write_csv(rows, o.out_path);
  else
    for (const auto& r : rows) std::cout << csv_row(r) << "\n";
  for (const auto& r : rows)
    if (!r.error.empty()) return 3;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conditional-sampling distribution testers"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string truth_quantity = "tv";
  std::vector<std::string> cells;

  auto* tu = app.add_subcommand("tolerant-unif", "distance-to-uniform estimate");
  auto* ti = app.add_subcommand("tolerant-id", "distance-to-reference estimate");
  auto* mono = app.add_subcommand("monotone", "monotonicity test");
  auto* pc = app.add_subcommand("paircond-id", "pairwise-conditional identity test");
  auto* truth = app.add_subcommand("truth", "exact oracle quantities");
  auto* sweep = app.add_subcommand("sweep", "grid of trials to CSV");
  for (CLI::App* cmd : {tu, ti, mono, pc, truth, sweep}) add_common(cmd, opts);
  truth->add_option("--quantity", truth_quantity, "tv | monotone | expo | pair");
  sweep->add_option("--cell", cells, "algorithm/family-spec/eps (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (tu->parsed()) return run_algorithm("tolerant-unif", opts);
    if (ti->parsed()) return run_algorithm("tolerant-id", opts);
    if (mono->parsed()) return run_algorithm("monotone", opts);
    if (pc->parsed()) return run_algorithm("paircond-id", opts);
    if (truth->parsed()) return run_truth(opts, truth_quantity);
    if (sweep->parsed()) return run_sweep_cmd(opts, cells);
  } catch (const std::invalid_argument& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
