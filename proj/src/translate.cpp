#include "bohr/translate.hpp"

#include "bohr/highprec.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace bohr {

namespace {

constexpr int kPrec = 192;

// Rough spacing of Kronecker solutions for window sizing: the hit set has
// measure prod(2 t_k) on the torus and a visit lasts about the time the
// fastest coordinate needs to cross its window.
double expected_gap(const Vec& c, const Vec& eps) {
  double log_measure = 0.0;
  double dwell = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    double w = std::min(1.0, 2.0 * eps[k]);
    if (w >= 1.0) continue;  // unconstrained coordinate
    log_measure += std::log(w);
    dwell = std::min(dwell, w / std::fabs(c[k]));
  }
  if (!std::isfinite(dwell)) return 1.0;
  return std::min(dwell * std::exp(-log_measure), 1e300);
}

struct PlanInputs {
  Vec slope;      // converts coordinate k's mod-1 residual to bound mass
  Vec free_cost;  // worst-case bound mass if coordinate k is unconstrained
  std::vector<Eigen::Index> by_slope;  // descending
};

PlanInputs plan_inputs(const ExpSum& f1, double q, const Vec& weights) {
  const FrequencySystem& sys = f1.system();
  const Eigen::Index m = sys.generator_count();
  PlanInputs in;
  in.slope = Vec::Zero(m);
  in.free_cost = Vec::Zero(m);
  for (Eigen::Index j = 0; j < f1.size(); ++j) {
    double mass = std::abs(f1.coeff(j)) * weights[j];
    if (mass == 0.0) continue;
    for (Eigen::Index k = 0; k < m; ++k) {
      double rjk = std::fabs(num::to_d(sys.coeff(j)[k]));
      if (rjk == 0.0) continue;
      in.slope[k] += num::two_pi * q * rjk * mass;
      in.free_cost[k] += 2.0 * mass;
    }
  }
  in.by_slope.resize(static_cast<size_t>(m));
  std::iota(in.by_slope.begin(), in.by_slope.end(), 0);
  std::sort(in.by_slope.begin(), in.by_slope.end(),
            [&](Eigen::Index a, Eigen::Index b) { return in.slope[a] > in.slope[b]; });
  return in;
}

struct Plan {
  Vec eps;
  int constrained = 0;
  double planned_bound = 0.0;  // freed coordinates costed at 0.7 of worst case
  double gap = 0.0;
  bool feasible = false;
};

// Constrain the K most influential coordinates, spending the budget evenly
// across them; freed coordinates are charged at 70% of their worst case (the
// final coefficient-bound verification remains the arbiter).
Plan plan_for(const PlanInputs& in, const Vec& c, double budget, int K,
              double eps_floor) {
  const Eigen::Index m = in.slope.size();
  Plan plan;
  plan.eps = Vec::Constant(m, 0.51);
  double fixed = 0.0;
  for (Eigen::Index pos = K; pos < m; ++pos)
    fixed += 0.70 * in.free_cost[in.by_slope[static_cast<size_t>(pos)]];
  double share = (budget - fixed) / K;
  if (share <= 0) return plan;
  plan.planned_bound = fixed;
  for (int pos = 0; pos < K; ++pos) {
    Eigen::Index k = in.by_slope[static_cast<size_t>(pos)];
    if (in.slope[k] == 0.0) continue;
    double t = std::clamp(share / in.slope[k], eps_floor, 0.45);
    plan.eps[k] = t;
    plan.planned_bound += t * in.slope[k];
    ++plan.constrained;
  }
  plan.feasible = plan.constrained > 0 && plan.planned_bound <= budget * 1.35;
  plan.gap = expected_gap(c, plan.eps);
  return plan;
}

}  // namespace

TranslateBudget budget_from(const ExpSum& f1, const ExpSum& f2,
                            const Strip& strip, double eps) {
  require_comparable(f1, f2);
  if (!(eps > 0)) throw std::invalid_argument("budget_from: eps must be > 0");
  const FrequencySystem& sys = f1.system();
  TranslateBudget b;
  b.q = sys.denominator_lcm();
  b.m = sys.generator_count();
  b.n = sys.frequency_count();
  for (Eigen::Index j = 0; j < f1.size(); ++j)
    b.a = std::max(b.a, std::abs(f1.coeff(j)));
  if (!(b.a > 0)) throw std::invalid_argument("budget_from: f1 has no nonzero coefficient");
  for (Eigen::Index j = 0; j < b.n; ++j) {
    for (Eigen::Index k = 0; k < b.m; ++k)
      b.r = std::max(b.r, std::fabs(num::to_d(sys.coeff(j)[k])));
    b.E = std::max(b.E, strip_weight(sys.lambda(j), strip, f1.kind()));
  }
  if (!(b.r > 0)) throw std::invalid_argument("budget_from: all coefficient vectors are zero");
  double q = num::to_d(b.q);
  b.eps1 = (1.0 / (num::two_pi * q)) * (eps / 2.0) /
           (b.a * static_cast<double>(b.m) * static_cast<double>(b.n) * b.r * b.E);
  return b;
}

namespace {

// c_k = g_k/(2 pi q) and d_k = x_{0,k}/(2 pi q), in double and high precision.
void instance_geometry(const FrequencySystem& sys, const Integer& q_exact,
                       const Vec& witness_x, Vec& c, Vec& d,
                       std::vector<BigFloat>& c_hp) {
  const Eigen::Index m = sys.generator_count();
  double q = num::to_d(q_exact);
  c = Vec(m);
  d = Vec(m);
  c_hp.clear();
  c_hp.reserve(static_cast<size_t>(m));
  BigFloat two_pi_q(0, kPrec);
  two_pi_q = 2 * hp::pi(kPrec) * BigFloat(q_exact, kPrec);
  for (Eigen::Index k = 0; k < m; ++k) {
    BigFloat ck(0, kPrec);
    ck = sys.generator(k).value_hp / two_pi_q;
    c_hp.push_back(ck);
    c[k] = ck.get_d();
    d[k] = witness_x[k] / (num::two_pi * q);
  }
}

}  // namespace

KroneckerInstance translate_instance(const ExpSum& f1, const ExpSum& f2,
                                     const Strip& strip, double eps,
                                     const Vec& witness_x,
                                     const TranslateOptions& opts) {
  const FrequencySystem& sys = f1.system();
  TranslateBudget budget = budget_from(f1, f2, strip, eps);
  Vec c, d;
  std::vector<BigFloat> c_hp;
  instance_geometry(sys, budget.q, witness_x, c, d, c_hp);

  if (!opts.adaptive_eps1)
    return KroneckerInstance::make_weighted(
        std::move(c), std::move(d),
        Vec::Constant(sys.generator_count(), budget.eps1), std::move(c_hp));

  Vec weights(f1.size());
  for (Eigen::Index j = 0; j < f1.size(); ++j)
    weights[j] = strip_weight(sys.lambda(j), strip, f1.kind());
  PlanInputs in = plan_inputs(f1, num::to_d(budget.q), weights);
  const int m = static_cast<int>(sys.generator_count());
  Plan best;
  for (int K = 1; K <= m; ++K) {
    Plan p = plan_for(in, c, opts.headroom * eps, K, budget.eps1);
    if (!p.feasible) continue;
    if (!best.feasible || p.gap < best.gap) best = p;
  }
  if (!best.feasible)
    return KroneckerInstance::make_weighted(
        std::move(c), std::move(d),
        Vec::Constant(sys.generator_count(), budget.eps1), std::move(c_hp));
  return KroneckerInstance::make_weighted(std::move(c), std::move(d),
                                          std::move(best.eps), std::move(c_hp));
}

TranslateResult find_translate(const ExpSum& f1, const ExpSum& f2,
                               const Strip& strip, double eps,
                               const TranslateOptions& opts) {
  require_comparable(f1, f2);
  TranslateResult res;
  res.eps = eps;
  res.budget = budget_from(f1, f2, strip, eps);

  EquivalenceVerdict verdict = bohr_equivalent(f1, f2, opts.equiv_tol);
  res.equivalence = verdict;
  if (!verdict.equivalent) {
    res.status = "not_equivalent";
    return res;
  }
  const Vec& x0 = verdict.witness->x;

  Vec c, d;
  std::vector<BigFloat> c_hp;
  instance_geometry(f1.system(), res.budget.q, x0, c, d, c_hp);

  // E_j weights for the rigorous per-coefficient verification
  Vec weights(f1.size());
  for (Eigen::Index j = 0; j < f1.size(); ++j)
    weights[j] = strip_weight(f1.system().lambda(j), strip, f1.kind());

  // Plans: the conservative uniform budget by default; adaptive tolerance
  // ladders (fewest constrained coordinates first) when requested.
  std::vector<Vec> plans;
  if (!opts.adaptive_eps1) {
    plans.push_back(Vec::Constant(f1.system().generator_count(), res.budget.eps1));
  } else {
    PlanInputs in = plan_inputs(f1, num::to_d(res.budget.q), weights);
    const int m = static_cast<int>(f1.system().generator_count());
    std::vector<std::pair<double, Vec>> ranked;
    for (int K = 1; K <= m; ++K) {
      Plan p = plan_for(in, c, opts.headroom * eps, K, res.budget.eps1);
      if (p.feasible) ranked.emplace_back(p.gap, p.eps);
    }
    std::sort(ranked.begin(), ranked.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 0; i < ranked.size() && i < 3; ++i)
      plans.push_back(ranked[i].second);
    if (plans.empty())
      plans.push_back(Vec::Constant(f1.system().generator_count(), res.budget.eps1));
  }

  auto accept = [&](const TauCandidate& cand) -> bool {
    ExpSum shifted = translate(f1, cand.tau_exact);
    double bound = 0.0;
    for (Eigen::Index j = 0; j < f1.size(); ++j)
      bound += std::abs(shifted.coeff(j) - f2.coeff(j)) * weights[j];
    if (!(bound < eps)) return false;
    res.verification = sup_norm_diff(shifted, f2, strip, opts.grid);
    res.coeff_bound = res.verification.coeff_bound;
    res.tau = cand;
    res.passed = res.verification.grid_max < eps && res.coeff_bound < eps;
    res.status = "ok";
    return true;
  };

  // tau = 0 settles the self-translate case (and any pair whose witness is
  // already congruent to zero) without a search.
  {
    KroneckerInstance inst =
        KroneckerInstance::make_weighted(c, d, plans.front(), c_hp);
    res.instance = inst;
    if (auto zero = verify_candidate(inst, Rational(0), "direct"))
      if (accept(*zero)) return res;
  }

  for (const Vec& plan_eps : plans) {
    KroneckerInstance inst =
        KroneckerInstance::make_weighted(c, d, plan_eps, c_hp);
    res.instance = inst;
    double gap = expected_gap(c, plan_eps);
    if (opts.method == SearchMethod::grid) {
      if (gap > 5e8) {
        res.note += "grid skipped: expected solution spacing " +
                    std::to_string(gap) + "; ";
        continue;
      }
      double window = opts.grid_window > 0 ? opts.grid_window
                                           : std::max(1.0e3, 12.0 * gap);
      GridParams gp;
      gp.threads = opts.threads;
      gp.max_candidates = 16;
      std::vector<TauCandidate> found = solve_grid(inst, 0.0, window, gp);
      bool ok = false;
      for (const TauCandidate& cand : found)
        if (accept(cand)) {
          ok = true;
          break;
        }
      if (ok) return res;
      res.note += "grid window [0, " + std::to_string(window) + "] exhausted; ";
    } else {
      double bound = opts.lattice_bound > 0 ? opts.lattice_bound
                                            : std::max(1.0e6, 200.0 * gap);
      LatticeSearch search = solve_lattice(inst, bound);
      bool ok = false;
      for (const TauCandidate& cand : search.candidates)
        if (accept(cand)) {
          ok = true;
          break;
        }
      if (ok) return res;
      res.note += "lattice search exhausted (tau <= " + std::to_string(bound) +
                  "): " + search.note + "; ";
    }
  }

  res.status = "tau_not_found";
  return res;
}

TranslateResult orbit_approximate(const ExpSum& f, const ExpSum& target,
                                  const Strip& strip, double eps, long bf_order,
                                  const TranslateOptions& opts) {
  require_comparable(f, target);
  ExpSum P = bochner_fejer(f, bf_order);
  ExpSum Q = bochner_fejer(target, bf_order);

  TranslateResult res = find_translate(P, Q, strip, eps, opts);
  res.bf_order = bf_order;
  if (res.status != "ok") return res;

  Vec p = bochner_fejer_factors(f.system(), bf_order);
  for (Eigen::Index j = 0; j < f.size(); ++j) {
    double Ej = strip_weight(f.system().lambda(j), strip, f.kind());
    res.bf_term_f += (1.0 - p[j]) * std::abs(f.coeff(j)) * Ej;
    res.bf_term_target += (1.0 - p[j]) * std::abs(target.coeff(j)) * Ej;
  }
  double middle = res.coeff_bound;  // sup|P(.+tau) - Q| by coefficients
  res.three_term_bound = res.bf_term_f + middle + res.bf_term_target;

  // verification against the original pair
  ExpSum shifted = translate(f, res.tau->tau_exact);
  res.verification = sup_norm_diff(shifted, target, strip, opts.grid);
  res.coeff_bound = res.verification.coeff_bound;
  res.passed = res.verification.grid_max < res.three_term_bound + 1e-12 &&
               res.coeff_bound <= res.three_term_bound + 1e-12;
  return res;
}

}  // namespace bohr
