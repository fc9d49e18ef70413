#pragma once

#include <optional>
#include <string>
#include <vector>

#include "condsense/config.hpp"
#include "condsense/families.hpp"
#include "condsense/oracle.hpp"

namespace condsense {

// Trial runner and sweep machinery. A trial owns one handle seeded from its
// seed; sweeps fan out over cells and emit a deterministic CSV.

struct TrialReport {
  std::string algorithm;
  std::string family;
  std::size_t n = 0;
  double eps = 0.0;
  std::uint64_t seed = 0;
  std::string output;           // estimate with full precision, or a verdict
  std::optional<double> estimate;
  std::optional<bool> verdict;
  std::optional<double> truth;  // exact value when the domain allows it
  QueryLedger ledger;
  std::int64_t wall_ms = 0;
  std::string error;
};

// algorithm is one of tolerant-unif, tolerant-id, monotone, paircond-id.
// The reference for the identity testers is the family's companion when it
// has one, the explicit override when given, else uniform.
TrialReport run_trial(const FamilySpec& spec, const std::string& algorithm,
                      double eps, std::uint64_t seed, const Config& cfg,
                      const Distribution* dstar_override = nullptr);

struct SweepCell {
  FamilySpec spec;
  std::string algorithm;
  double eps;
};

// trials_per_cell seeds base_seed..base_seed+T-1 per cell; failed trials
// become rows with the error column set. Rows are ordered by (algorithm,
// family, eps, seed). Sweep rows pin wall_ms to 0 so re-runs are
// byte-identical; timing lives in single-trial reports.
std::vector<TrialReport> run_sweep(const std::vector<SweepCell>& grid,
                                   int trials_per_cell, std::uint64_t base_seed,
                                   const Config& cfg);

std::string csv_header();
std::string csv_row(const TrialReport& r);
void write_csv(const std::vector<TrialReport>& rows, const std::string& path);

// median of the estimates; even counts average the middle two
double amplify_median(const std::vector<TrialReport>& reports);

}  // namespace condsense
