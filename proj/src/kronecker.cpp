#include "bohr/kronecker.hpp"

#include "bohr/highprec.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <future>
#include <iostream>
#include <stdexcept>

namespace bohr {

namespace {

constexpr int kVerifyPrec = 160;

// Largest power of two not exceeding x; exactly representable, so tau stays
// an exact dyadic rational throughout.
double dyadic_floor(double x) {
  if (!(x > 0)) throw std::invalid_argument("expected a positive quantity");
  return std::ldexp(1.0, static_cast<int>(std::floor(std::log2(x))));
}

Rational rational_from_dyadic(double x) {
  // x is a (small) dyadic double by construction
  Rational r(x);
  r.canonicalize();
  return r;
}

double scan_ratio(const KroneckerInstance& inst, double tau) {
  double worst = 0.0;
  for (Eigen::Index k = 0; k < inst.dim(); ++k) {
    double r = tau * inst.c[k] - inst.d[k];
    double dist = std::fabs(r - std::nearbyint(r));
    worst = std::max(worst, dist / inst.eps[k]);
    if (worst >= 1.0) return worst;
  }
  return worst;
}

// Deterministic local polish: shrink a bracket around the best sample of the
// max-residual ratio.
double polish(const KroneckerInstance& inst, double lo, double hi) {
  double best_t = lo, best_v = scan_ratio(inst, lo);
  for (int round = 0; round < 6; ++round) {
    const int grid = 24;
    for (int i = 0; i <= grid; ++i) {
      double t = lo + (hi - lo) * i / grid;
      double v = scan_ratio(inst, t);
      if (v < best_v) {
        best_v = v;
        best_t = t;
      }
    }
    double w = (hi - lo) / grid;
    lo = best_t - w;
    hi = best_t + w;
  }
  return best_t;
}

struct Chunk {
  std::vector<TauCandidate> found;
};

Chunk scan_chunk(const KroneckerInstance& inst, double t0, double t1,
                 double step, std::size_t cap) {
  Chunk out;
  bool in_cluster = false;
  double cluster_start = 0.0;
  long steps = static_cast<long>(std::ceil((t1 - t0) / step));
  for (long i = 0; i <= steps; ++i) {
    double t = t0 + i * step;
    bool pass = t <= t1 && scan_ratio(inst, t) < 1.0;
    if (pass && !in_cluster) {
      in_cluster = true;
      cluster_start = t;
    } else if (!pass && in_cluster) {
      in_cluster = false;
      double refined = polish(inst, cluster_start - step, t);
      auto cand = verify_candidate(inst, Rational(refined), "grid");
      if (cand) {
        out.found.push_back(std::move(*cand));
        if (out.found.size() >= cap) return out;
      }
    }
  }
  if (in_cluster) {
    double refined = polish(inst, cluster_start - step, t1);
    auto cand = verify_candidate(inst, Rational(refined), "grid");
    if (cand) out.found.push_back(std::move(*cand));
  }
  return out;
}

}  // namespace

KroneckerInstance KroneckerInstance::make(Vec c, Vec d, double eps1) {
  if (c.size() == 0 || c.size() != d.size())
    throw std::invalid_argument("kronecker instance: dimension mismatch");
  if (!(eps1 > 0)) throw std::invalid_argument("kronecker instance: eps1 must be > 0");
  KroneckerInstance inst;
  inst.c = std::move(c);
  inst.d = std::move(d);
  inst.eps1 = eps1;
  inst.eps = Vec::Constant(inst.c.size(), eps1);
  return inst;
}

KroneckerInstance KroneckerInstance::make_weighted(Vec c, Vec d, Vec eps,
                                                   std::vector<BigFloat> c_hp) {
  if (c.size() == 0 || c.size() != d.size() || c.size() != eps.size())
    throw std::invalid_argument("kronecker instance: dimension mismatch");
  for (Eigen::Index k = 0; k < eps.size(); ++k)
    if (!(eps[k] > 0))
      throw std::invalid_argument("kronecker instance: tolerances must be > 0");
  if (!c_hp.empty() && c_hp.size() != static_cast<size_t>(c.size()))
    throw std::invalid_argument("kronecker instance: c_hp length mismatch");
  KroneckerInstance inst;
  inst.c = std::move(c);
  inst.d = std::move(d);
  inst.eps = std::move(eps);
  inst.eps1 = inst.eps.maxCoeff();
  inst.c_hp = std::move(c_hp);
  return inst;
}

BigFloat KroneckerInstance::c_high(Eigen::Index k) const {
  if (!c_hp.empty()) return c_hp[static_cast<size_t>(k)];
  return BigFloat(c[k], kVerifyPrec);
}

double TauCandidate::worst_ratio(const KroneckerInstance& inst) const {
  double worst = 0.0;
  for (Eigen::Index k = 0; k < inst.dim(); ++k)
    worst = std::max(worst, residuals[k] / inst.eps[k]);
  return worst;
}

std::optional<TauCandidate> verify_candidate(const KroneckerInstance& inst,
                                             const Rational& tau,
                                             const std::string& method) {
  TauCandidate cand;
  cand.tau_exact = tau;
  cand.tau = num::to_d(tau);
  cand.residuals = Vec(inst.dim());
  cand.method = method;
  for (Eigen::Index k = 0; k < inst.dim(); ++k) {
    double r = hp::residual_mod1(tau, inst.c_high(k), inst.d[k], kVerifyPrec);
    if (!(r < inst.eps[k])) return std::nullopt;
    cand.residuals[k] = r;
  }
  return cand;
}

double grid_step_rule(const KroneckerInstance& inst) {
  double cmax = inst.c.cwiseAbs().maxCoeff();
  if (!(cmax > 0)) throw std::invalid_argument("kronecker instance: c is zero");
  return inst.eps.minCoeff() / (4.0 * cmax);
}

std::vector<TauCandidate> solve_grid(const KroneckerInstance& inst, double t0,
                                     double t1, const GridParams& p) {
  if (!(t1 > t0)) throw std::invalid_argument("solve_grid: empty window");
  double rule = grid_step_rule(inst);
  double step = p.step > 0 ? p.step : rule;
  if (step > 2.0 * rule)
    throw std::invalid_argument(
        "solve_grid: step too coarse; the residual test needs step <= " +
        std::to_string(2.0 * rule) + " (step rule " + std::to_string(rule) + ")");

  int threads = std::max(1, p.threads);
  std::vector<TauCandidate> all;
  if (threads == 1) {
    all = scan_chunk(inst, t0, t1, step, p.max_candidates).found;
  } else {
    double span = (t1 - t0) / threads;
    std::vector<std::future<Chunk>> futs;
    for (int i = 0; i < threads; ++i) {
      double a = t0 + i * span, b = (i + 1 == threads) ? t1 : t0 + (i + 1) * span;
      futs.push_back(std::async(std::launch::async, [&, a, b] {
        return scan_chunk(inst, a, b, step, p.max_candidates);
      }));
    }
    for (auto& f : futs) {
      Chunk ch = f.get();
      all.insert(all.end(), ch.found.begin(), ch.found.end());
    }
    std::sort(all.begin(), all.end(),
              [](const TauCandidate& x, const TauCandidate& y) { return x.tau < y.tau; });
    // merge duplicates straddling chunk boundaries
    std::vector<TauCandidate> dedup;
    for (auto& cnd : all) {
      if (!dedup.empty() && std::fabs(dedup.back().tau - cnd.tau) < 2.0 * step) {
        if (cnd.worst_ratio(inst) < dedup.back().worst_ratio(inst)) dedup.back() = cnd;
      } else {
        dedup.push_back(cnd);
      }
    }
    all = std::move(dedup);
  }
  if (all.size() > p.max_candidates) all.resize(p.max_candidates);
  return all;
}

LatticeSearch solve_lattice(const KroneckerInstance& inst, double search_bound,
                            const LatticeParams& p) {
  if (inst.dim() < 1) throw std::invalid_argument("solve_lattice: dim must be >= 1");
  if (!(search_bound > 0))
    throw std::invalid_argument("solve_lattice: search bound must be > 0");
  LatticeSearch result;
  result.bound_reached = search_bound;

  // tau = 0 is immediate whenever the targets are already near integers.
  if (auto zero = verify_candidate(inst, Rational(0), "lattice")) {
    result.candidate = *zero;
    result.candidates.push_back(std::move(*zero));
    return result;
  }

  // Coordinates with eps >= 0.5 are unconstrained (mod-1 distance never
  // exceeds 1/2); they stay out of the embedding and verify trivially.
  std::vector<Eigen::Index> active;
  for (Eigen::Index k = 0; k < inst.dim(); ++k)
    if (inst.eps[k] < 0.5) active.push_back(k);
  if (active.empty())
    throw std::invalid_argument("solve_lattice: no constrained coordinate");
  const Eigen::Index m = static_cast<Eigen::Index>(active.size());

  double delta_raw = std::numeric_limits<double>::infinity();
  for (Eigen::Index a = 0; a < m; ++a) {
    Eigen::Index k = active[static_cast<size_t>(a)];
    if (inst.c[k] == 0.0)
      throw std::invalid_argument("solve_lattice: zero coefficient on a constrained coordinate");
    delta_raw = std::min(delta_raw, inst.eps[k] / std::fabs(inst.c[k]));
  }
  double delta = dyadic_floor(delta_raw / 4.0);
  const double t_half = search_bound / 2.0;
  // window midpoint, kept on the dyadic grid of delta (exact rational)
  Integer mid_mult;
  mpz_set_d(mid_mult.get_mpz_t(), std::floor(t_half / delta));
  Rational tau_mid = rational_from_dyadic(delta) * mid_mult;

  int prec = p.precision_bits;
  if (prec == 0) {
    double range_bits = std::log2(std::max(2.0, search_bound / delta)) +
                        std::log2(std::max(2.0, 1.0 / inst.eps.minCoeff()));
    prec = static_cast<int>(std::max(192.0, range_bits + 96.0));
  }

  const bool debug = std::getenv("BOHR_DEBUG_LATTICE") != nullptr;
  auto tick = std::chrono::steady_clock::now();
  auto lap = [&](const char* what) {
    if (!debug) return;
    auto now = std::chrono::steady_clock::now();
    std::cerr << "[lattice] " << what << " "
              << std::chrono::duration<double>(now - tick).count() << "s\n";
    tick = now;
  };

  // Shifted targets d'_k = d_k - t_mid*c_k, reduced mod 1 in high precision.
  Vec d_shift(m);
  for (Eigen::Index a = 0; a < m; ++a) {
    Eigen::Index k = active[static_cast<size_t>(a)];
    BigFloat x = hp::mul(tau_mid, inst.c_high(k), prec);
    BigFloat f(0, mpf_get_prec(x.get_mpf_t()));
    f = inst.d[k] - x;
    f = hp::mod1(f);
    d_shift[a] = f.get_d();
  }

  // Scaled embedding over the active coordinates plus a soft tau slot.
  // Coordinate scales are exact powers of two: the integer-relaxation rows
  // carry coefficients as large as tau*|c_k|, so any rounding in their
  // entries would swamp the tolerances; dyadic scales make them exact.
  num::DefaultPrecGuard prec_guard(prec);
  const double kappa = 0.5;
  Vec scale(m), thresh(m);
  for (Eigen::Index a = 0; a < m; ++a) {
    Eigen::Index k = active[static_cast<size_t>(a)];
    scale[a] = 2.0 / dyadic_floor(inst.eps[k]);  // 1/eps <= scale < 2/eps
    thresh[a] = inst.eps[k] * scale[a];          // feasibility: |coord| < thresh
  }
  FMat rows(m + 1, m + 1);
  for (Eigen::Index i = 0; i <= m; ++i)
    for (Eigen::Index j = 0; j <= m; ++j) rows(i, j) = BigFloat(0, prec);
  for (Eigen::Index a = 0; a < m; ++a) {
    Eigen::Index k = active[static_cast<size_t>(a)];
    BigFloat e(0, prec);
    e = inst.c_high(k) * delta * scale[a];
    rows(0, a) = e;
    rows(a + 1, a) = BigFloat(scale[a], prec);
  }
  rows(0, m) = BigFloat(delta / t_half * kappa, prec);

  LatticeBasis<BigFloat> basis{rows, prec};
  lap("embedding built");
  Reduction<BigFloat> red = lattice_reduce(basis, p.lll_delta);
  lap("lll");

  // Enumeration runs in double on the reduced geometry; every candidate is
  // re-verified in high precision before acceptance.
  Mat rows_d(m + 1, m + 1);
  for (Eigen::Index i = 0; i <= m; ++i)
    for (Eigen::Index j = 0; j <= m; ++j)
      rows_d(i, j) = num::to_d(red.basis.rows(i, j));
  Gso<double> gso = gram_schmidt(rows_d);

  Vec target(m + 1);
  for (Eigen::Index a = 0; a < m; ++a) target[a] = d_shift[a] * scale[a];
  target[m] = 0.0;

  Rational delta_q = rational_from_dyadic(delta);
  std::vector<TauCandidate> found;
  long n_leaves = 0, n_prefilter = 0, n_window = 0;
  double best_seen = std::numeric_limits<double>::infinity();
  auto consider = [&](const long* coeffs, Eigen::Index nred) -> bool {
    ++n_leaves;
    // cheap double-precision screen on the scaled coordinates first
    for (Eigen::Index col = 0; col < m; ++col) {
      double x = 0.0;
      for (Eigen::Index i = 0; i < nred; ++i)
        x += static_cast<double>(coeffs[i]) * rows_d(i, col);
      if (std::fabs(x - target[col]) > 1.05 * thresh[col]) return false;
    }
    ++n_prefilter;
    IVec red_coeffs(nred);
    for (Eigen::Index i = 0; i < nred; ++i) red_coeffs[i] = coeffs[i];
    IVec orig = red.transform.transpose() * red_coeffs;
    Integer j = orig[0];
    Rational tau = tau_mid + delta_q * j;
    if (tau < 0 || num::to_d(tau) > search_bound * (1.0 + 1e-12)) return false;
    ++n_window;
    // local polish on the exact dyadic grid around the lattice hit
    Rational fine = delta_q / 8;
    Rational best_tau = tau;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int off = -16; off <= 16; ++off) {
      Rational t = tau + fine * off;
      if (t < 0) continue;
      double worst = 0.0;
      for (Eigen::Index a = 0; a < m && worst < best_ratio; ++a) {
        Eigen::Index k = active[static_cast<size_t>(a)];
        double r = hp::residual_mod1(t, inst.c_high(k), inst.d[k], kVerifyPrec);
        worst = std::max(worst, r / inst.eps[k]);
      }
      if (worst < best_ratio) {
        best_ratio = worst;
        best_tau = t;
      }
    }
    best_seen = std::min(best_seen, best_ratio);
    if (best_ratio >= 1.0) return false;
    auto cand = verify_candidate(inst, best_tau, "lattice");
    if (!cand) return false;
    for (const TauCandidate& c0 : found)
      if (c0.tau_exact == cand->tau_exact) return false;
    found.push_back(std::move(*cand));
    return true;
  };

  // Babai first.
  {
    VecT<BigFloat> target_f(m + 1);
    for (Eigen::Index a = 0; a <= m; ++a) target_f[a] = BigFloat(target[a], prec);
    CvpResult<BigFloat> babai = closest_vector_approx(red.basis, target_f);
    std::vector<long> bc(static_cast<size_t>(m + 1));
    bool in_range = true;
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (!babai.coeffs[i].fits_slong_p()) in_range = false;
      else bc[static_cast<size_t>(i)] = babai.coeffs[i].get_si();
    }
    if (in_range) consider(bc.data(), m + 1);
    lap("babai");
  }

  const double tmax = thresh.maxCoeff();
  double radius = std::sqrt(thresh.squaredNorm() * 0.25 + kappa * kappa);
  const double radius_cap =
      std::sqrt(thresh.squaredNorm() + kappa * kappa) * 1.05;
  long budget = p.node_budget;
  int branch = p.branch_cap;
  for (int esc = 0; esc <= p.max_escalations; ++esc) {
    EnumOptions opt;
    opt.radius = radius;
    opt.node_budget = budget;
    opt.branch_cap = branch;
    long nodes = enumerate_close_vectors(
        rows_d, gso, target, opt,
        [&](const long* coeffs, Eigen::Index nred, double) {
          consider(coeffs, nred);
          return static_cast<int>(found.size()) >= p.want;
        });
    result.nodes_used += nodes;
    lap("enumeration round");
    if (!found.empty()) {
      result.escalations = esc;
      break;
    }
    radius = std::min(radius * 1.45, radius_cap);
    budget *= 2;
    branch += 16;
    result.escalations = esc + 1;
    result.note += "escalation " + std::to_string(esc + 1) + ": radius " +
                   std::to_string(radius) + " (cap " + std::to_string(radius_cap) +
                   ", coord " + std::to_string(tmax) + "), nodes " +
                   std::to_string(budget) + "; ";
  }
  if (debug)
    std::cerr << "[lattice] leaves=" << n_leaves << " prefilter=" << n_prefilter
              << " in-window=" << n_window << " best-ratio=" << best_seen << "\n";

  if (found.empty()) {
    result.note += "no verified candidate within tau <= " + std::to_string(search_bound);
    return result;
  }
  std::sort(found.begin(), found.end(),
            [](const TauCandidate& a, const TauCandidate& b) { return a.tau < b.tau; });
  result.candidates = std::move(found);
  result.candidate = result.candidates.front();
  return result;
}

std::vector<WindowScan> enumerate_relatively_dense(const KroneckerInstance& inst,
                                                   double L, long count,
                                                   const GridParams& p) {
  if (!(L > 0)) throw std::invalid_argument("enumerate_relatively_dense: L must be > 0");
  std::vector<WindowScan> out;
  for (long w = 0; w < count; ++w) {
    WindowScan scan;
    scan.index = w;
    scan.t0 = w * L;
    scan.t1 = (w + 1) * L;
    std::vector<TauCandidate> found = solve_grid(inst, scan.t0, scan.t1, p);
    scan.hit = !found.empty();
    if (scan.hit) {
      auto best = std::min_element(found.begin(), found.end(),
                                   [&](const TauCandidate& a, const TauCandidate& b) {
                                     return a.worst_ratio(inst) < b.worst_ratio(inst);
                                   });
      scan.best = *best;
    }
    out.push_back(std::move(scan));
  }
  return out;
}

}  // namespace bohr
