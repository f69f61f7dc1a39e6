#pragma once

// The near-translation pipeline for equivalent finite exponential sums: build
// the epsilon_1 budget, turn the equivalence witness into a Kronecker
// instance, search for tau, and certify |f1(s+i tau) - f2(s)| < eps on the
// strip by the coefficient bound (the grid sample is reported alongside).

#include "bohr/equivalence.hpp"
#include "bohr/expsum.hpp"
#include "bohr/kronecker.hpp"

#include <optional>
#include <string>

namespace bohr {

struct TranslateBudget {
  Integer q;       // lcm of coefficient denominators
  double a = 0.0;  // max |a_j| over f1
  double r = 0.0;  // max |r_{j,k}|
  double E = 0.0;  // max_j max(e^{lambda_j s0}, e^{lambda_j s1}); 1 for real kind
  Eigen::Index m = 0, n = 0;
  double eps1 = 0.0;  // (1/(2 pi q)) * (eps/2) / (a m n r E)
};

TranslateBudget budget_from(const ExpSum& f1, const ExpSum& f2,
                            const Strip& strip, double eps);

enum class SearchMethod { grid, lattice };

struct TranslateOptions {
  SearchMethod method = SearchMethod::grid;
  // Conservative uniform eps1 by default. The adaptive plan spends
  // headroom*eps across the generators in proportion to their influence on
  // the coefficient bound, freeing coordinates that barely matter; required
  // for wide systems where the uniform budget is unreachable at desk scale.
  bool adaptive_eps1 = false;
  double headroom = 0.7;
  double grid_window = 0.0;    // 0: derived from the expected solution spacing
  double lattice_bound = 0.0;  // 0: derived likewise
  int threads = 1;
  GridSpec grid;
  double equiv_tol = 1e-9;
};

struct TranslateResult {
  std::string status;  // "ok" | "not_equivalent" | "tau_not_found"
  bool passed = false;
  std::optional<TauCandidate> tau;
  TranslateBudget budget;
  SupNormReport verification;  // translate(f1, tau) vs f2 on the strip
  double coeff_bound = 0.0;    // rigorous: sum_j |b_j(tau) - b_j| E_j
  double eps = 0.0;
  std::optional<EquivalenceVerdict> equivalence;
  std::optional<KroneckerInstance> instance;
  std::string note;

  // filled by orbit_approximate
  long bf_order = -1;
  double bf_term_f = 0.0;        // sup|f - P| coefficient bound
  double bf_term_target = 0.0;   // sup|Q - target| coefficient bound
  double three_term_bound = 0.0; // bf_term_f + sup|P(.+tau)-Q| bound + bf_term_target
};

// The Kronecker instance the pipeline solves: c_k = g_k/(2 pi q),
// d_k = x_{0,k}/(2 pi q), tolerances per the chosen plan.
KroneckerInstance translate_instance(const ExpSum& f1, const ExpSum& f2,
                                     const Strip& strip, double eps,
                                     const Vec& witness_x,
                                     const TranslateOptions& opts);

TranslateResult find_translate(const ExpSum& f1, const ExpSum& f2,
                               const Strip& strip, double eps,
                               const TranslateOptions& opts = {});

// Bochner-Fejer ladder step: translate between order-N approximants, then
// report the three-term bound against the original pair.
TranslateResult orbit_approximate(const ExpSum& f, const ExpSum& target,
                                  const Strip& strip, double eps, long bf_order,
                                  const TranslateOptions& opts = {});

}  // namespace bohr
