#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace condsense {

// Every repetition count, threshold, cap, and window the algorithm
// statements leave inside O(.) notation. Counts are computed as
// max(floor, round(mult * formula)). Defaults were fixed by running the
// acceptance suite, not by analysis.
struct Config {
  // ratio comparison primitive
  double compare_reps_mult = 16.0;     // k = mult * gamma^-2 * ln(1/eps)
  double geom_cap_mult = 30.0;         // run-length cap = mult * max(scale,1) * ln(1/eps)
  double compare_accept_lo = 0.98;     // acceptance window on the ratio estimate
  double compare_accept_hi = 1.02;

  // uniformity pipeline
  double ca_R_mult = 6.0;              // anchors: R = max(ca_R_min, mult / eps)
  double ca_R_min = 16.0;
  double ca_threshold_c = 250.0;       // keep pairs with rates > eps / (c * ln(1/eps))
  double ca_gamma = 0.01;
  double window_conf = 0.25;           // confidence for ratio-window membership tests
  double anchor_lo = 5.0 / 9.0;        // good-anchor window [lo/N, hi/N]
  double anchor_hi = 9.0 / 5.0;
  double oracle_gamma = 0.01;
  double oracle_lo = 0.45;             // verdict cut points on the ratio estimate
  double oracle_hi = 2.2;
  double se_K_mult = 2.0;              // refinement reps K = mult / eps^2
  double ect_C_mult = 2.0;             // per-level samples C = mult * (delta/eps)^2
  double ect_C_min = 8.0;
  double ect_Cp_mult = 2.0;            // inner run-length reps C' = mult / delta^2
  double ect_Cp_min = 8.0;
  double ect_T_off = 1.0;              // levels T = log2(gamma1/eps) + off
  double ect_beta_off = 3.0;           // level beta = 2^-(t+off)
  double gge_K_mult = 2.0;             // verdict-frequency reps K = mult / eps^2
  double gge_gamma1_thresh_mult = 2.0; // close-term stage needs gamma1 >= mult*eps
  double tu_scan_K_mult = 2.0;         // no-good-anchor scans K = mult / eps^2
  double tu_scan_lo = 0.78;
  double tu_scan_hi = 1.27;

  // identity pipeline
  double est1_R_mult = 1.0;            // R = mult * eps^-1 * ln(1/eps) * delta^-2
  double est2_R_mult = 0.02;           // R = mult * eps^-2 * ln^3(1/eps) * delta^-2
  double est2_R_cap = 5000.0;
  double est2_ca_R_mult = 2.0;         // anchor stage over the block distribution
  double est2_ca_R_min = 16.0;
  double est2_screen_cands = 16.0;     // fallback pivot candidates when no anchor
  double est2_screen_R = 200.0;        // uniform probes per candidate
  double est3_R_mult = 0.5;            // coarse-ratio reps R = mult * eps^-2 * ln(1/eps)
  double est3_lo = 0.06;               // escape window [lo*eps^2, hi*eps^-2]
  double est3_hi = 18.0;
  double est3_T_mult = 0.05;           // T = mult * max(1/alpha,1) * ln^2(1/eps) * delta^-2
  double est3_T_cap = 10000.0;
  double pd_S_mult = 1.0;              // per-level samples S = mult*(delta/eps)^2*ln(1/eps)
  double pd_S_min = 3.0;
  double pd_T_off = 1.0;               // levels T = log2(1/eps) + off
  double pd_single_mult = 2.0;         // heavy-top-element estimate reps = mult / eps^2
  double ti_c1_mult = 2.0;             // per-round mass estimate reps = mult / eps'^2

  // monotonicity
  double expo_R_mult = 1.0;            // per-level samples R = mult * ln(1/eps) / beta
  double expo_tau_floor_mult = 1.0;    // tau >= mult * eps^2
  double expo_prod_floor_mult = 1.0;   // tau*beta >= mult * eps^2 / ln(1/eps)
  double dtf_samples_mult = 1.0;       // sampled intervals = mult / eps^2
  double dtf_inner_eps_div = 8.0;      // inner uniformity accuracy = eps / div

  // pair-conditional identity
  double vv_mult = 1.0;                // marginal samples = mult * sqrt(K+1) / (eps/10)^2
  double vv_null_sims = 10000.0;       // null simulations fixing the cutoff
  double vv_quantile = 0.90;
  double pcid_R_mult = 1.0;            // per-level pairs R = mult * ln(1/eps) / beta
  double pcid_pair_mult = 4.0;         // per-pair calls = mult * alpha^-2 * ln(1/eps)
  double pcid_alpha_floor_mult = 1.0;  // alpha >= mult * eps
  double pcid_prod_floor_mult = 1.0;   // alpha*beta >= mult * eps / ln(1/eps)

  // plumbing and calibration constants
  double lru_capacity = 64.0;
  double c_tu = 3.0;
  double c_pd = 4.0;
  double c_ti = 4.0;

  // flat key = value table; '#' comments and blank lines allowed
  static Config load(const std::string& path);
  void set(const std::string& key, double value);
  std::map<std::string, double> as_map() const;
};

}  // namespace condsense
