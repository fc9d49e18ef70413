#include "condsense/truth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace condsense {

namespace {

constexpr double kTol = 1e-9;
constexpr std::size_t kLPCap = 200;

void check_sizes(const Distribution& a, const Distribution& b) {
  if (a.size() != b.size()) throw DistError("domain size mismatch");
}

}  // namespace

double exact_tv(const Distribution& d1, const Distribution& d2) {
  check_sizes(d1, d2);
  if (!d1.is_dense() || !d2.is_dense()) {
    // walk the block boundaries of both sides
    double s = 0.0;
    std::size_t i = 1;
    while (i <= d1.size()) {
      // extend the run while both per-element masses stay constant
      double m1 = d1.mass(i), m2 = d2.mass(i);
      std::size_t j = i;
      while (j < d1.size() && d1.mass(j + 1) == m1 && d2.mass(j + 1) == m2) ++j;
      s += std::fabs(m1 - m2) * static_cast<double>(j - i + 1);
      i = j + 1;
    }
    return 0.5 * s;
  }
  double s = 0.0;
  for (std::size_t i = 1; i <= d1.size(); ++i) s += std::fabs(d1.mass(i) - d2.mass(i));
  return 0.5 * s;
}

double tv_positive_part(const Distribution& d1, const Distribution& d2) {
  check_sizes(d1, d2);
  double s = 0.0;
  for (std::size_t i = 1; i <= d1.size(); ++i)
    s += std::max(0.0, d1.mass(i) - d2.mass(i));
  return s;
}

double overlap(const Distribution& d1, const Distribution& d2) {
  check_sizes(d1, d2);
  double s = 0.0;
  for (std::size_t i = 1; i <= d1.size(); ++i) s += std::min(d1.mass(i), d2.mass(i));
  return s;
}

double exact_min_sum(const Distribution& d1, const Distribution& d2, double c1,
                     double c2) {
  check_sizes(d1, d2);
  if (c1 < 0.0 || c1 > 1.0 || c2 < 0.0 || c2 > 1.0)
    throw std::invalid_argument("weights must lie in [0,1]");
  double s = 0.0;
  for (std::size_t i = 1; i <= d1.size(); ++i)
    s += std::min(c1 * d1.mass(i), c2 * d2.mass(i));
  return s;
}

// ---------------------------------------------------------------------------
// dense two-phase simplex

std::vector<double> solve_lp(const std::vector<double>& c,
                             const std::vector<LPRow>& rows) {
  const std::size_t n = c.size();
  const std::size_t m = rows.size();

  // columns: n structural, then one slack/surplus per inequality, then one
  // artificial per row that needs it
  std::size_t n_slack = 0;
  for (const LPRow& r : rows)
    if (r.rel != '=') ++n_slack;

  std::vector<LPRow> R = rows;
  for (LPRow& r : R) {
    if (r.a.size() != n) throw std::invalid_argument("LP row width mismatch");
    if (r.b < 0.0) {
      for (double& v : r.a) v = -v;
      r.b = -r.b;
      if (r.rel == '<') r.rel = '>';
      else if (r.rel == '>') r.rel = '<';
    }
  }

  std::vector<std::size_t> art_rows;
  std::size_t slack_idx = 0;
  std::vector<double> slack_sign(m, 0.0);
  std::vector<std::size_t> slack_col(m, SIZE_MAX);
  for (std::size_t i = 0; i < m; ++i) {
    if (R[i].rel == '<') {
      slack_sign[i] = 1.0;
      slack_col[i] = n + slack_idx++;
    } else if (R[i].rel == '>') {
      slack_sign[i] = -1.0;
      slack_col[i] = n + slack_idx++;
      art_rows.push_back(i);
    } else {
      art_rows.push_back(i);
    }
  }
  const std::size_t n_art = art_rows.size();
  const std::size_t total = n + n_slack + n_art;

  // tableau with objective row appended
  std::vector<std::vector<double>> T(m + 1, std::vector<double>(total + 1, 0.0));
  std::vector<std::size_t> basis(m, SIZE_MAX);
  {
    std::size_t art_idx = 0;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) T[i][j] = R[i].a[j];
      if (slack_col[i] != SIZE_MAX) T[i][slack_col[i]] = slack_sign[i];
      if (R[i].rel == '<') {
        basis[i] = slack_col[i];
      } else {
        std::size_t ac = n + n_slack + art_idx++;
        T[i][ac] = 1.0;
        basis[i] = ac;
      }
      T[i][total] = R[i].b;
    }
  }

  auto pivot = [&](std::size_t pr, std::size_t pc) {
    double pv = T[pr][pc];
    for (double& v : T[pr]) v /= pv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == pr) continue;
      double f = T[i][pc];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= total; ++j) T[i][j] -= f * T[pr][j];
    }
    basis[pr] = pc;
  };

  auto run = [&](std::size_t ncols) {
    for (std::size_t iter = 0; iter < 50000; ++iter) {
      // Bland's rule: first column with negative reduced cost
      std::size_t pc = SIZE_MAX;
      for (std::size_t j = 0; j < ncols; ++j) {
        if (T[m][j] < -kTol) { pc = j; break; }
      }
      if (pc == SIZE_MAX) return;
      std::size_t pr = SIZE_MAX;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m; ++i) {
        if (T[i][pc] > kTol) {
          double ratio = T[i][total] / T[i][pc];
          if (ratio < best - kTol ||
              (ratio < best + kTol && (pr == SIZE_MAX || basis[i] < basis[pr]))) {
            best = ratio;
            pr = i;
          }
        }
      }
      if (pr == SIZE_MAX) throw std::runtime_error("LP unbounded");
      pivot(pr, pc);
    }
    throw std::runtime_error("LP iteration limit");
  };

  // phase 1
  if (n_art > 0) {
    for (std::size_t j = 0; j <= total; ++j) {
      double s = 0.0;
      for (std::size_t i : art_rows) s += T[i][j];
      T[m][j] = -s;
    }
    for (std::size_t k = 0; k < n_art; ++k) T[m][n + n_slack + k] = 0.0;
    run(total);
    if (T[m][total] < -1e-7) throw std::runtime_error("LP infeasible");
    // drive any artificial still in the basis out of it
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] >= n + n_slack) {
        for (std::size_t j = 0; j < n + n_slack; ++j) {
          if (std::fabs(T[i][j]) > kTol) { pivot(i, j); break; }
        }
      }
    }
  }

  // phase 2
  for (std::size_t j = 0; j <= total; ++j) T[m][j] = 0.0;
  for (std::size_t j = 0; j < n; ++j) T[m][j] = c[j];
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n && std::fabs(c[basis[i]]) > 0.0) {
      double f = c[basis[i]];
      for (std::size_t j = 0; j <= total; ++j) T[m][j] -= f * T[i][j];
    }
  }
  run(n + n_slack);

  std::vector<double> x(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) x[basis[i]] = T[i][total];
  return x;
}

namespace {

// shared scaffolding for the two projection LPs: variables are q_1..q_N and
// per-coordinate absolute deviations t_1..t_N
LPResult l1_projection(const Distribution& d,
                       const std::vector<LPRow>& class_rows) {
  const std::size_t N = d.size();
  if (N > kLPCap) throw DistError("exact projection capped at domain size 200");
  std::vector<double> c(2 * N, 0.0);
  for (std::size_t i = 0; i < N; ++i) c[N + i] = 1.0;

  std::vector<LPRow> rows = class_rows;
  for (std::size_t i = 0; i < N; ++i) {
    LPRow lo, hi;
    lo.a.assign(2 * N, 0.0);
    hi.a.assign(2 * N, 0.0);
    lo.a[i] = 1.0; lo.a[N + i] = 1.0;  // q_i + t_i >= d_i
    lo.rel = '>'; lo.b = d.mass(i + 1);
    hi.a[i] = -1.0; hi.a[N + i] = 1.0;  // t_i - q_i >= -d_i
    hi.rel = '>'; hi.b = -d.mass(i + 1);
    rows.push_back(lo);
    rows.push_back(hi);
  }
  LPRow sum;
  sum.a.assign(2 * N, 0.0);
  for (std::size_t i = 0; i < N; ++i) sum.a[i] = 1.0;
  sum.rel = '=';
  sum.b = 1.0;
  rows.push_back(sum);

  std::vector<double> x = solve_lp(c, rows);
  std::vector<double> q(x.begin(), x.begin() + N);
  double opt = 0.0;
  for (std::size_t i = 0; i < N; ++i) opt += std::fabs(q[i] - d.mass(i + 1));
  LPResult res;
  res.optimum = 0.5 * opt;
  for (double& v : q) v = std::max(v, 0.0);
  res.witness = Distribution::from_weights(q);
  return res;
}

}  // namespace

LPResult exact_dist_to_monotone(const Distribution& d) {
  const std::size_t N = d.size();
  std::vector<LPRow> rows;
  for (std::size_t i = 0; i + 1 < N; ++i) {
    LPRow r;
    r.a.assign(2 * N, 0.0);
    r.a[i] = 1.0;
    r.a[i + 1] = -1.0;  // q_i >= q_{i+1}
    r.rel = '>';
    r.b = 0.0;
    rows.push_back(r);
  }
  return l1_projection(d, rows);
}

LPResult exact_dist_to_expo(const Distribution& q, double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("alpha must be non-negative");
  return exact_dist_to_expo(
      q, std::vector<double>(q.size() > 0 ? q.size() - 1 : 0, 1.0 + alpha));
}

LPResult exact_dist_to_expo(const Distribution& q,
                            const std::vector<double>& ratios) {
  const std::size_t N = q.size();
  if (ratios.size() + 1 != N)
    throw std::invalid_argument("need one ratio cap per adjacent pair");
  std::vector<LPRow> rows;
  for (std::size_t i = 0; i + 1 < N; ++i) {
    if (ratios[i] <= 0.0) throw std::invalid_argument("ratio caps must be positive");
    LPRow r;
    r.a.assign(2 * N, 0.0);
    r.a[i] = ratios[i];
    r.a[i + 1] = -1.0;  // r_i p_i - p_{i+1} >= 0
    r.rel = '>';
    r.b = 0.0;
    rows.push_back(r);
  }
  return l1_projection(q, rows);
}

double expo_witness_expectation(const Distribution& q, double alpha) {
  double s = 0.0;
  for (std::size_t i = 2; i <= q.size(); ++i) {
    double qi = q.mass(i);
    if (qi <= 0.0) continue;
    s += qi * std::max(0.0, 1.0 - (1.0 + alpha) * q.mass(i - 1) / qi);
  }
  return s;
}

double pair_expectation(const Distribution& p, const Distribution& pstar) {
  check_sizes(p, pstar);
  const std::size_t m = p.size();
  double s = 0.0;
  for (std::size_t i = 1; i <= m; ++i) {
    double pi = p.mass(i), qi = pstar.mass(i);
    if (pi <= 0.0) continue;
    for (std::size_t j = 1; j <= m; ++j) {
      double a = 0.0, b = 0.0;
      double dp = pi + p.mass(j);
      double dq = qi + pstar.mass(j);
      if (dp > 0.0) a = pi / dp;
      if (dq > 0.0) b = qi / dq;
      s += pi * (1.0 / static_cast<double>(m)) * std::fabs(a - b);
    }
  }
  return s;
}

double monotone_farness_bound(const Distribution& d) {
  const std::size_t N = d.size();
  double best = 0.0;
  double suffix = 0.0;
  for (std::size_t i = N; i >= 1; --i) {
    suffix += d.mass(i);
    double len = static_cast<double>(N - i + 1);
    best = std::max(best, suffix - len / static_cast<double>(N));
  }
  return best;
}

}  // namespace condsense
