#pragma once

// Simultaneous inhomogeneous Diophantine approximation: find real tau with
// |tau*c_k - e_k - d_k| < eps_k for integers e_k. Two routes: an exhaustive
// grid scan (the oracle; sound for its window under the step rule) and a
// lattice route (LLL + nearest-plane + bounded enumeration) that reaches tau
// far beyond any scan. Kronecker's theorem guarantees solutions exist, so a
// miss is always "not found within budget", never a nonexistence claim.

#include "bohr/lattice.hpp"
#include "bohr/numeric.hpp"
#include "bohr/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bohr {

struct KroneckerInstance {
  Vec c;       // declared rationally independent
  Vec d;       // inhomogeneous targets
  double eps1 = 0.0;
  Vec eps;     // per-coordinate tolerances; uniform instances use eps1 everywhere
  std::vector<BigFloat> c_hp;  // optional high-precision values of c

  static KroneckerInstance make(Vec c, Vec d, double eps1);
  static KroneckerInstance make_weighted(Vec c, Vec d, Vec eps,
                                         std::vector<BigFloat> c_hp = {});

  Eigen::Index dim() const { return c.size(); }
  BigFloat c_high(Eigen::Index k) const;
};

struct TauCandidate {
  Rational tau_exact;
  double tau = 0.0;
  Vec residuals;  // dist(tau*c_k - d_k, Z), recomputed in high precision
  std::string method;

  double worst_ratio(const KroneckerInstance& inst) const;
};

// High-precision residual check; nullopt unless every residual < eps_k.
std::optional<TauCandidate> verify_candidate(const KroneckerInstance& inst,
                                             const Rational& tau,
                                             const std::string& method);

double grid_step_rule(const KroneckerInstance& inst);

struct GridParams {
  double step = 0.0;  // 0: use the step rule eps_min / (4 max|c_k|)
  int threads = 1;
  std::size_t max_candidates = 100000;
};

// Every passing cluster in [t0, t1), each refined to its residual-minimizing
// tau. Rejects steps coarser than twice the step rule.
std::vector<TauCandidate> solve_grid(const KroneckerInstance& inst, double t0,
                                     double t1, const GridParams& p = {});

struct LatticeParams {
  int precision_bits = 0;  // 0: derived from the window/tolerance dynamic range
  long node_budget = 30'000'000;
  int branch_cap = 64;
  int max_escalations = 4;
  double lll_delta = 0.99;
  int want = 8;  // stop after this many verified candidates per search
};

struct LatticeSearch {
  std::optional<TauCandidate> candidate;     // smallest verified tau
  std::vector<TauCandidate> candidates;      // all verified, by tau ascending
  double bound_reached = 0.0;
  long nodes_used = 0;
  int escalations = 0;
  std::string note;
};

// Searches tau in [0, search_bound].
LatticeSearch solve_lattice(const KroneckerInstance& inst, double search_bound,
                            const LatticeParams& p = {});

struct WindowScan {
  long index = 0;
  double t0 = 0.0, t1 = 0.0;
  bool hit = false;
  std::optional<TauCandidate> best;
};

// Grid-scans count consecutive windows of length L; misses are reported, not
// thrown. Exhibits relative density empirically.
std::vector<WindowScan> enumerate_relatively_dense(const KroneckerInstance& inst,
                                                   double L, long count,
                                                   const GridParams& p = {});

}  // namespace bohr
