#include "condsense/tolerant_uniformity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace condsense {

namespace {

Elem uniform_elem(PairOracle& o) {
  return static_cast<Elem>(
      std::uniform_int_distribution<std::size_t>(1, o.n())(o.rng()));
}

// window membership feeds averaged indicators, so a constant confidence is
// enough; keeping the eps-dependence here costs an extra log factor in the
// query counts for nothing
bool ratio_in_accept_window(PairOracle& o, Elem a, Elem b, const Config& cfg) {
  if (a == b) return true;  // ratio exactly 1
  CompareResult r = compare(o, a, b, cfg.ca_gamma, cfg.window_conf, cfg);
  return r.in_window(cfg.compare_accept_lo, cfg.compare_accept_hi);
}

void require_good_anchor(PairOracle& o, const AnchorEstimate& anchor,
                         const Config& cfg) {
  double n = static_cast<double>(o.n());
  if (anchor.d_hat < cfg.anchor_lo / n || anchor.d_hat > cfg.anchor_hi / n)
    throw std::invalid_argument("anchor mass estimate outside the usable window");
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

// core of z_estimate without the public precondition checks, also used by
// the close-terms stage at coarser betas
double z_estimate_core(PairOracle& o, double beta, const AnchorEstimate& anchor,
                       Elem z, const Config& cfg) {
  double n = static_cast<double>(o.n());
  int imax = static_cast<int>(std::ceil(std::log2(1.0 / beta))) + 2;
  double est = anchor.d_tilde;
  for (int i = 1; i <= imax; ++i) {
    double width = std::pow(2.0, -i);
    if (z == anchor.x) {
      est = anchor.d_tilde;
    } else {
      // window routing, constant confidence (see ratio_in_accept_window)
      CompareResult r = compare(o, z, anchor.x, width / 20.0, cfg.window_conf, cfg);
      est = r.infinite ? 1e9 * anchor.d_tilde : r.alpha * anchor.d_tilde;
    }
    if (est < (1.0 - width) / n || est > (1.0 + width) / n) return est;
  }
  return est;
}

}  // namespace

std::vector<AnchorEstimate> constant_approx(PairOracle& o, double eps,
                                            const Config& cfg) {
  if (eps <= 0.0 || eps >= 0.5) throw std::invalid_argument("bad eps");
  const double n = static_cast<double>(o.n());
  const std::uint64_t R = reps(1.0, std::max(cfg.ca_R_min, cfg.ca_R_mult / eps));

  std::vector<Elem> xs(R), ws(R), ys(R);
  for (std::uint64_t r = 0; r < R; ++r) {
    xs[r] = o.draw();
    ws[r] = o.draw();
    ys[r] = uniform_elem(o);
  }

  const double thresh = eps / (cfg.ca_threshold_c * std::log(1.0 / eps));
  std::vector<AnchorEstimate> out;
  for (std::uint64_t r = 0; r < R; ++r) {
    double d_rate = 0.0, u_rate = 0.0;
    for (std::uint64_t i = 0; i < R; ++i) {
      if (ratio_in_accept_window(o, xs[r], ws[i], cfg)) d_rate += 1.0 / R;
      if (ratio_in_accept_window(o, xs[r], ys[i], cfg)) u_rate += 1.0 / R;
    }
    if (d_rate > thresh && u_rate > thresh) {
      double d_hat = d_rate / u_rate / n;
      if (d_hat >= 0.9 * eps / n && d_hat <= 1.1 / (eps * n))
        out.push_back({xs[r], d_hat, 0.0, 0.0});
    }
  }
  return out;
}

Verdict oracle_classify(PairOracle& o, double eps, const AnchorEstimate& anchor,
                        Elem z, const Config& cfg) {
  require_good_anchor(o, anchor, cfg);
  if (z == anchor.x) return Verdict::Zero;
  CompareResult r = compare(o, z, anchor.x, cfg.oracle_gamma, eps, cfg);
  if (r.infinite) return Verdict::Plus;
  if (r.alpha < cfg.oracle_lo) return Verdict::Minus;
  if (r.alpha <= cfg.oracle_hi) return Verdict::Zero;
  return Verdict::Plus;
}

SingleElementResult single_element(PairOracle& o, double eps,
                                   const AnchorEstimate& anchor, const Config& cfg) {
  const std::uint64_t K = reps(cfg.se_K_mult, 1.0 / (eps * eps));
  const std::uint64_t cap = geom_cap(cfg.oracle_hi, eps, cfg);
  double g1 = 0.0, g2 = 0.0, g3 = 0.0;
  for (std::uint64_t k = 0; k < K; ++k) {
    Elem y = uniform_elem(o);
    Elem z = o.draw();
    if (oracle_classify(o, eps, anchor, y, cfg) == Verdict::Zero) {
      g1 += 1.0 / K;
      if (y == anchor.x) {
        g3 += 1.0 / K;  // unit ratio, run length contributes its mean
      } else {
        g3 += static_cast<double>(geometric_count(o, y, anchor.x, cap)) / K;
      }
    }
    if (oracle_classify(o, eps, anchor, z, cfg) == Verdict::Zero) g2 += 1.0 / K;
  }
  SingleElementResult res;
  res.gamma1_tilde = g1;
  if (g3 > 0.0) {
    res.d_tilde = g2 / (static_cast<double>(o.n()) * g3);
    res.valid = true;
  }
  return res;
}

double z_estimate(PairOracle& o, double beta, const AnchorEstimate& anchor, Elem z,
                  double eps, const Config& cfg) {
  if (beta < eps || beta > 1.0 / 1600.0)
    throw std::invalid_argument("beta must lie in [eps, 1/1600]");
  if (anchor.d_tilde <= 0.0)
    throw std::invalid_argument("anchor is missing its refined mass estimate");
  (void)eps;
  return z_estimate_core(o, beta, anchor, z, cfg);
}

double estimate_close_terms(PairOracle& o, double eps, AnchorEstimate& anchor,
                            const Config& cfg) {
  SingleElementResult se = single_element(o, eps, anchor, cfg);
  anchor.gamma1_tilde = se.gamma1_tilde;
  if (!se.valid) return 0.0;
  anchor.d_tilde = se.d_tilde;

  const double n = static_cast<double>(o.n());
  int T = static_cast<int>(
      std::ceil(std::log2(std::max(se.gamma1_tilde, 2.0 * eps) / eps)) +
      cfg.ect_T_off);
  if (T < 2) T = 2;

  double W = 0.0;
  for (int t = 1; t <= T; ++t) {
    // level t < T holds the band of deviations around 2^-t; the last level
    // holds everything closer than 2^-T. The coarsest band is open above.
    bool last = (t == T);
    double delta = last ? std::pow(2.0, -T) : std::pow(2.0, -(t + 1));
    double beta = std::max(delta / 8.0, std::pow(2.0, -(t + cfg.ect_beta_off)));
    double ratio = delta / eps;
    std::uint64_t C = reps(cfg.ect_C_mult, ratio * ratio, cfg.ect_C_min);
    std::uint64_t Cp =
        reps(cfg.ect_Cp_mult, 1.0 / (delta * delta), cfg.ect_Cp_min);
    const std::uint64_t cap = geom_cap(cfg.oracle_hi, eps, cfg);

    double w = 0.0;
    for (std::uint64_t i = 0; i < C; ++i) {
      Elem z = uniform_elem(o);
      if (oracle_classify(o, eps, anchor, z, cfg) != Verdict::Zero) continue;
      double dev = n * z_estimate_core(o, beta, anchor, z, cfg) - 1.0;
      int sign = 0;
      if (last) {
        if (std::fabs(dev) < delta) sign = 2;  // signed residual band
      } else if (t == 1) {
        if (dev >= delta) sign = 1;
        else if (dev <= -delta) sign = -1;
      } else {
        if (dev >= delta && dev <= 2.0 * delta) sign = 1;
        else if (dev <= -delta && dev >= -2.0 * delta) sign = -1;
      }
      if (sign == 0) continue;
      double vbar = 0.0;
      for (std::uint64_t j = 0; j < Cp; ++j) {
        if (z == anchor.x) { vbar += 1.0 / Cp; continue; }
        vbar += static_cast<double>(geometric_count(o, z, anchor.x, cap)) / Cp;
      }
      double val = n * anchor.d_tilde * vbar - 1.0;
      if (sign == -1) val = -val;
      w += val / static_cast<double>(C);
    }
    W += w;
  }
  return W;
}

double given_good_elt(PairOracle& o, double eps, const AnchorEstimate& anchor,
                      const Config& cfg) {
  require_good_anchor(o, anchor, cfg);
  const std::uint64_t K = reps(cfg.gge_K_mult, 1.0 / (eps * eps));
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0, g1 = 0.0;
  for (std::uint64_t i = 0; i < K; ++i) {
    Elem z = o.draw();
    switch (oracle_classify(o, eps, anchor, z, cfg)) {
      case Verdict::Plus: a += 1.0 / K; break;
      case Verdict::Minus: c += 1.0 / K; break;
      case Verdict::Zero: g1 += 1.0 / K; break;
    }
    Elem y = uniform_elem(o);
    switch (oracle_classify(o, eps, anchor, y, cfg)) {
      case Verdict::Plus: b += 1.0 / K; break;
      case Verdict::Minus: d += 1.0 / K; break;
      case Verdict::Zero: break;
    }
  }
  double e = 0.0;
  if (g1 >= cfg.gge_gamma1_thresh_mult * eps) {
    AnchorEstimate refined = anchor;
    e = estimate_close_terms(o, eps, refined, cfg);
  }
  return clamp01(0.5 * (e + a - b - c + d));
}

double tolerant_unif(PairOracle& o, double eps, const Config& cfg, TUTrace* trace) {
  if (eps <= 0.0 || eps >= 0.5) throw std::invalid_argument("bad eps");
  if (o.n() == 1) {
    if (trace) trace->branch = 2;
    return 0.0;
  }
  const double n = static_cast<double>(o.n());
  std::vector<AnchorEstimate> S = constant_approx(o, eps, cfg);
  if (S.empty()) {
    if (trace) trace->branch = 1;
    return 1.0;
  }
  for (const AnchorEstimate& a : S) {
    if (a.d_hat >= cfg.anchor_lo / n && a.d_hat <= cfg.anchor_hi / n) {
      if (trace) trace->branch = 2;
      return given_good_elt(o, eps, a, cfg);
    }
  }

  if (trace) trace->branch = 3;
  const std::uint64_t K = reps(cfg.tu_scan_K_mult, 1.0 / (eps * eps));
  double a = 0.0, b = 0.0;

  const AnchorEstimate* heavy = nullptr;  // smallest estimate at or above 1/n
  const AnchorEstimate* light = nullptr;  // largest estimate at or below 1/n
  for (const AnchorEstimate& s : S) {
    if (s.d_hat >= 1.0 / n && (!heavy || s.d_hat < heavy->d_hat)) heavy = &s;
    if (s.d_hat <= 1.0 / n && (!light || s.d_hat > light->d_hat)) light = &s;
  }
  if (heavy) {
    for (std::uint64_t i = 0; i < K; ++i) {
      Elem y = uniform_elem(o);
      if (y == heavy->x) { a += 1.0 / K; continue; }
      if (compare(o, y, heavy->x, cfg.ca_gamma, eps, cfg).at_least(cfg.tu_scan_lo))
        a += 1.0 / K;
    }
  }
  if (light) {
    for (std::uint64_t i = 0; i < K; ++i) {
      Elem z = o.draw();
      if (z == light->x) { b += 1.0 / K; continue; }
      if (compare(o, z, light->x, cfg.ca_gamma, eps, cfg).at_most(cfg.tu_scan_hi))
        b += 1.0 / K;
    }
  }
  return clamp01(1.0 - a - b);
}

double tolerant_unif(OracleHandle& h, double eps, const Config& cfg, TUTrace* trace) {
  SampPcondOracle o(h);
  return tolerant_unif(o, eps, cfg, trace);
}

}  // namespace condsense
