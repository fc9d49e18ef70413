#include "condsense/tolerant_identity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "condsense/primitives.hpp"
#include "condsense/tolerant_uniformity.hpp"

namespace condsense {

namespace {

double clamp(double v, double lo, double hi) {
  return std::min(hi, std::max(lo, v));
}

}  // namespace

SortedReference sort_reference(const Distribution& dstar) {
  const std::size_t N = dstar.size();
  SortedReference ref;
  ref.perm.resize(N);
  std::iota(ref.perm.begin(), ref.perm.end(), Elem{1});
  std::stable_sort(ref.perm.begin(), ref.perm.end(),
                   [&](Elem a, Elem b) { return dstar.mass(a) < dstar.mass(b); });
  std::vector<double> w(N);
  ref.inv.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    w[i] = dstar.mass(ref.perm[i]);
    ref.inv[ref.perm[i] - 1] = static_cast<Elem>(i + 1);
  }
  ref.dstar = Distribution::from_weights(std::move(w));
  return ref;
}

GreedyPartition greedy_partition(const std::vector<double>& pstar, Elem z) {
  if (z < 1 || z > pstar.size()) throw std::invalid_argument("bad partition pivot");
  GreedyPartition part;
  const double pz = pstar[z - 1];
  // left to right over [1, z-1], closing a block once it reaches half the
  // pivot's mass; an undersized trailing remainder joins the previous block
  Elem lo = 1;
  double acc = 0.0;
  for (Elem i = 1; i < z; ++i) {
    acc += pstar[i - 1];
    if (acc >= 0.5 * pz) {
      part.blocks.emplace_back(lo, i);
      lo = i + 1;
      acc = 0.0;
    }
  }
  if (lo < z) {
    if (part.blocks.empty()) {
      part.blocks.emplace_back(lo, z - 1);
    } else {
      part.blocks.back().second = z - 1;
    }
  }
  part.blocks.emplace_back(z, z);
  return part;
}

GreedyPartition greedy_partition(const SortedReference& ref, Elem z) {
  std::vector<double> w(ref.dstar.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = ref.dstar.mass(i + 1);
  return greedy_partition(w, z);
}

TiView::TiView(OracleHandle& h, const SortedReference& ref, std::vector<Elem> members)
    : h_(&h), members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("empty view");
  const std::size_t M = members_.size();
  pstar_.resize(M);
  orig_.resize(M);
  double total = 0.0;
  for (std::size_t i = 0; i < M; ++i) {
    pstar_[i] = ref.dstar.mass(members_[i]);
    orig_[i] = ref.perm[members_[i] - 1];
    total += pstar_[i];
  }
  if (total <= 0.0) throw DistError("view carries no reference mass");
  pstar_cum_.resize(M + 1);
  pstar_cum_[0] = 0.0;
  for (std::size_t i = 0; i < M; ++i) {
    pstar_[i] /= total;
    pstar_cum_[i + 1] = pstar_cum_[i] + pstar_[i];
  }
}

double TiView::pstar_prefix(Elem local) const { return pstar_cum_[local]; }

std::vector<Elem> TiView::prefix_set(Elem z) const {
  return std::vector<Elem>(orig_.begin(), orig_.begin() + z);
}

std::vector<Elem> TiView::range_set(Elem lo, Elem hi) const {
  return std::vector<Elem>(orig_.begin() + (lo - 1), orig_.begin() + hi);
}

BlockOracle::BlockOracle(const TiView& view, const GreedyPartition& part)
    : view_(&view), part_(part) {
  sets_.reserve(part_.blocks.size());
  for (const auto& [lo, hi] : part_.blocks) {
    sets_.push_back(view.range_set(lo, hi));
    union_set_.insert(union_set_.end(), sets_.back().begin(), sets_.back().end());
    for (Elem e : sets_.back())
      block_of_[e] = static_cast<Elem>(sets_.size());
  }
}

Elem BlockOracle::locate(Elem original) const {
  auto it = block_of_.find(original);
  if (it == block_of_.end()) throw DistError("draw outside the partition");
  return it->second;
}

Elem BlockOracle::draw() {
  return locate(view_->handle().cond(union_set_));
}

Elem BlockOracle::pair(Elem a, Elem b) {
  std::vector<Elem> u = sets_[a - 1];
  u.insert(u.end(), sets_[b - 1].begin(), sets_[b - 1].end());
  return locate(view_->handle().cond(u));
}

std::uint64_t BlockOracle::pair_count(Elem a, Elem b, std::uint64_t k) {
  return view_->handle().cond_split_count(sets_[a - 1], sets_[b - 1], k);
}

std::uint64_t BlockOracle::pair_runlength(Elem num, Elem den, std::uint64_t cap) {
  return view_->handle().cond_split_runlength(sets_[num - 1], sets_[den - 1], cap);
}

std::mt19937_64& BlockOracle::rng() { return view_->handle().rng(); }

double est1(const TiView& view, double eps, double delta, Elem z, const Config& cfg) {
  if (z < 1 || z > view.size()) throw std::invalid_argument("bad est1 pivot");
  const std::uint64_t R = reps(
      cfg.est1_R_mult, std::log(1.0 / eps) / (eps * delta * delta));
  std::vector<Elem> A = view.prefix_set(z);
  std::vector<Elem> B =
      z == view.size() ? std::vector<Elem>{}
                       : view.range_set(z + 1, static_cast<Elem>(view.size()));
  std::uint64_t c = view.handle().cond_split_count(A, B, R);
  return static_cast<double>(c) / static_cast<double>(R);
}

std::pair<Elem, double> est2(BlockOracle& q, double eps, double delta,
                             const Config& cfg) {
  Config anchor_cfg = cfg;
  anchor_cfg.ca_R_mult = cfg.est2_ca_R_mult;
  anchor_cfg.ca_R_min = cfg.est2_ca_R_min;
  std::vector<AnchorEstimate> anchors = constant_approx(q, eps, anchor_cfg);
  Elem j;
  if (!anchors.empty()) {
    j = anchors.front().x;
  } else {
    // frequency matching finds nothing when the block masses are all
    // distinct at this sample size. Screen a few mass-biased candidates and
    // keep the one whose ratio window catches the most uniform probes, so
    // the match-rate normalization below stays away from zero.
    const auto cands = static_cast<int>(cfg.est2_screen_cands);
    const auto Rs = static_cast<std::uint64_t>(cfg.est2_screen_R);
    j = 0;
    std::uint64_t best = 0;
    for (int c = 0; c < cands; ++c) {
      Elem cand = q.draw();
      std::uint64_t hits = 0;
      for (std::uint64_t r = 0; r < Rs; ++r) {
        Elem y = static_cast<Elem>(
            std::uniform_int_distribution<std::size_t>(1, q.n())(q.rng()));
        if (y == cand ||
            compare(q, y, cand, cfg.ca_gamma, cfg.window_conf, cfg)
                .in_window(cfg.compare_accept_lo, cfg.compare_accept_hi))
          ++hits;
      }
      if (j == 0 || hits > best) {
        j = cand;
        best = hits;
      }
    }
  }

  const double lne = std::log(1.0 / eps);
  const std::uint64_t R = std::min<std::uint64_t>(
      static_cast<std::uint64_t>(cfg.est2_R_cap),
      reps(cfg.est2_R_mult, lne * lne * lne / (eps * eps * delta * delta)));
  const std::uint64_t cap = geom_cap(1.0, eps, cfg);
  const double k = static_cast<double>(q.n());

  double u = 0.0, qt = 0.0;
  for (std::uint64_t r = 0; r < R; ++r) {
    Elem y = static_cast<Elem>(
        std::uniform_int_distribution<std::size_t>(1, q.n())(q.rng()));
    if (y == j ||
        compare(q, y, j, cfg.ca_gamma, cfg.window_conf, cfg)
            .in_window(cfg.compare_accept_lo, cfg.compare_accept_hi))
      u += 1.0 / static_cast<double>(R);
    Elem x = q.draw();
    double X = 0.0;
    if (x == j) {
      X = 1.0;  // unit ratio, the run length contributes its mean
    } else if (compare(q, x, j, cfg.ca_gamma, cfg.window_conf, cfg)
                   .in_window(cfg.compare_accept_lo, cfg.compare_accept_hi)) {
      X = static_cast<double>(q.pair_runlength(j, x, cap));
    }
    qt += X / static_cast<double>(R);
  }
  // unseen pivot: floor the match rate rather than bail out, which keeps the
  // composed estimate small instead of discarding the whole prefix
  if (u <= 0.0) u = 0.5 / static_cast<double>(R);
  return std::make_pair(j, qt / (k * u));
}

double est3(BlockOracle& q, double eps, double delta, Elem j, const Config& cfg) {
  const Elem last = static_cast<Elem>(q.n());
  if (j == last) return 1.0;
  const double lne = std::log(1.0 / eps);
  const std::uint64_t R = reps(cfg.est3_R_mult, lne / (eps * eps));
  std::uint64_t c = q.pair_count(last, j, R);
  double alpha = c == R ? 2.0 * cfg.est3_hi / (eps * eps)
                        : static_cast<double>(c) / static_cast<double>(R - c);
  if (alpha < cfg.est3_lo * eps * eps || alpha > cfg.est3_hi / (eps * eps))
    return alpha;

  const std::uint64_t T = std::min<std::uint64_t>(
      static_cast<std::uint64_t>(cfg.est3_T_cap),
      reps(cfg.est3_T_mult,
           std::max(1.0 / alpha, 1.0) * lne * lne / (delta * delta)));
  const std::uint64_t cap = geom_cap(std::max(alpha, 1.0), eps, cfg);
  double y = 0.0;
  for (std::uint64_t t = 0; t < T; ++t)
    y += static_cast<double>(q.pair_runlength(last, j, cap)) /
         static_cast<double>(T);
  return y;
}

EstOutcome est(const TiView& view, double eps, double delta, Elem z, double c1,
               double c2, const Config& cfg) {
  (void)c2;
  EstOutcome out;
  out.prefix_end = z;
  double p = est1(view, eps, delta, z, cfg);
  if (p <= eps / c1) {
    out.shortcut = true;
    return out;
  }
  std::vector<double> w(z);
  for (Elem i = 1; i <= z; ++i) w[i - 1] = view.pstar(i);
  GreedyPartition part = greedy_partition(w, z);
  double qmass = 1.0;  // conditional mass of the pivot's block within [z]
  if (part.k() > 1) {
    BlockOracle q(view, part);
    auto [j, qj] = est2(q, eps, delta, cfg);
    qmass = qj * est3(q, eps, delta, j, cfg);
  }
  out.x = c1 / view.pstar(z) * p * qmass;
  return out;
}

PDResult partial_determining(const TiView& view, double eps, double c1, double c2,
                             const Config& cfg) {
  const std::size_t M = view.size();
  Elem L = 1;
  while (L < M && view.pstar_prefix(L) < 0.5) ++L;

  PDResult res;
  if (view.pstar(L) >= 1.0 / 3.0) {
    const std::uint64_t R = reps(cfg.pd_single_mult, 1.0 / (eps * eps));
    std::vector<Elem> A = view.range_set(L, L);
    std::vector<Elem> B;
    B.reserve(M - 1);
    for (Elem i = 1; i <= M; ++i)
      if (i != L) B.push_back(view.range_set(i, i)[0]);
    double pl = static_cast<double>(view.handle().cond_split_count(A, B, R)) /
                static_cast<double>(R);
    res.s_local = {L};
    res.estimate = std::max(0.0, std::min(c1 * pl, c2 * view.pstar(L)));
    return res;
  }

  const int T =
      static_cast<int>(std::ceil(std::log2(1.0 / eps)) + cfg.pd_T_off);
  const double psuffix = 1.0 - view.pstar_prefix(L - 1);
  const double lne = std::log(1.0 / eps);

  // draw from the reference restricted to the suffix; algorithm-side
  // randomness, no oracle charge
  auto draw_ref = [&]() {
    double u = std::uniform_real_distribution<double>(0.0, psuffix)(
        view.handle().rng());
    double acc = 0.0;
    for (Elem i = L; i <= M; ++i) {
      acc += view.pstar(i);
      if (u < acc) return i;
    }
    return static_cast<Elem>(M);
  };

  double total = 0.0;
  for (int t = 1; t < T; ++t) {
    double delta_t = std::pow(2.0, -t) / 20.0;
    double width_t = std::pow(2.0, -t);
    std::uint64_t S = reps(cfg.pd_S_mult,
                           (width_t / eps) * (width_t / eps) * lne, cfg.pd_S_min);
    double yt = 0.0;
    for (std::uint64_t s = 0; s < S; ++s) {
      Elem z = draw_ref();
      // levels are nested ratio windows around c2; z lands at level t when
      // it stays inside every coarser window and exits below at width 2^-t
      bool hit = false;
      bool aborted = false;
      for (int i = 1; i <= t; ++i) {
        double w = std::pow(2.0, -i);
        EstOutcome e = est(view, eps, w / 20.0, z, c1, c2, cfg);
        if (e.shortcut) {
          res.s_local.resize(e.prefix_end);
          std::iota(res.s_local.begin(), res.s_local.end(), Elem{1});
          res.estimate = 0.0;
          return res;
        }
        if (i == t) {
          hit = e.x < c2 * (1.0 - w);
        } else if (e.x < c2 * (1.0 - w) || e.x > c2 * (1.0 + w)) {
          aborted = true;
          break;
        }
      }
      if (aborted || !hit) continue;
      EstOutcome e = est(view, eps, delta_t, z, c1, c2, cfg);
      if (e.shortcut) {
        res.s_local.resize(e.prefix_end);
        std::iota(res.s_local.begin(), res.s_local.end(), Elem{1});
        res.estimate = 0.0;
        return res;
      }
      yt += clamp(c2 - e.x, 0.0, c2) / static_cast<double>(S);
    }
    total += psuffix * yt;
  }

  res.s_local.resize(M - L + 1);
  std::iota(res.s_local.begin(), res.s_local.end(), L);
  res.estimate = std::max(0.0, c2 * psuffix - total);
  return res;
}

double tolerant_id(OracleHandle& h, const Distribution& dstar, double eps,
                   const Config& cfg, TITrace* trace) {
  if (eps <= 0.0 || eps >= 0.5) throw std::invalid_argument("bad eps");
  if (dstar.size() != h.n()) throw DistError("domain size mismatch");
  if (h.n() == 1) return 0.0;

  SortedReference ref = sort_reference(dstar);
  const double rounds_scale = std::ceil(std::log2(1.0 / eps));
  const double epsp = eps / (rounds_scale * rounds_scale);
  const std::uint64_t R1 = reps(cfg.ti_c1_mult, 1.0 / (epsp * epsp));

  std::vector<Elem> T(h.n());
  std::iota(T.begin(), T.end(), Elem{1});
  double c1 = 1.0, c2 = 1.0, gamma = 0.0;

  for (int round = 0; round < 200 && !T.empty(); ++round) {
    if (c1 < 2.0 * epsp || c2 < 2.0 * epsp) break;
    if (trace) {
      trace->c1_track.push_back(c1);
      trace->c2_track.push_back(c2);
    }
    TiView view(h, ref, T);
    PDResult pd = partial_determining(view, eps, std::min(c1, 1.0), c2, cfg);
    gamma += pd.estimate;

    // drop the resolved set; locals index into the current T
    std::vector<bool> keep(T.size(), true);
    for (Elem l : pd.s_local) keep[l - 1] = false;
    std::vector<Elem> next;
    next.reserve(T.size());
    for (std::size_t i = 0; i < T.size(); ++i)
      if (keep[i]) next.push_back(T[i]);
    T.swap(next);
    if (T.empty()) break;

    c2 = 0.0;
    std::vector<Elem> orig;
    orig.reserve(T.size());
    for (Elem id : T) {
      c2 += ref.dstar.mass(id);
      orig.push_back(ref.perm[id - 1]);
    }
    c1 = static_cast<double>(h.samp_member_count(orig, R1)) /
         static_cast<double>(R1);
  }
  return clamp(1.0 - gamma, 0.0, 1.0);
}

}  // namespace condsense
