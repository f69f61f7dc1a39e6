#pragma once

// Riemann zeta on the absolute-convergence half-plane, the Liouville
// Dirichlet series, Euler-product infimum formulas, and the translate demos
// tying them to the equivalence machinery. Every value carries a rigorous
// truncation bound; limit statements are represented by floors, brackets and
// hit rates, never claimed as computed limits.

#include "bohr/expsum.hpp"
#include "bohr/translate.hpp"

#include <complex>
#include <memory>
#include <vector>

namespace bohr {

struct CertifiedValue {
  Complex value{0.0, 0.0};
  double error_bound = 0.0;  // rigorous truncation bound (float rounding excluded)
  long terms_used = 0;
  bool met_tol = false;
  std::string bound_formula;
};

// Smallest-prime-factor sieve carrying lambda(n) = (-1)^Omega(n).
class LiouvilleSieve {
 public:
  explicit LiouvilleSieve(long bound);

  int lambda(long n) const;  // throws beyond the sieve bound
  long bound() const { return static_cast<long>(lam_.size()) - 1; }
  void grow(long new_bound);

 private:
  std::vector<int8_t> lam_;
};

// Partial sum to N plus the first Euler-Maclaurin corrections
// N^{1-s}/(s-1) + N^{-s}/2 + s N^{-s-1}/12; the remainder is bounded by the
// first omitted correction times |s+3|/(sigma+3). Requires Re s >= 1 + 0.05.
CertifiedValue zeta_eval(Complex s, double tol, long term_ceiling = 30'000'000);

// Direct truncated sum of lambda(n)/n^s with the integral-test tail bound.
// cross_check carries |value - zeta(2s)/zeta(s)| for the classical identity.
struct LiouvilleSeriesValue {
  CertifiedValue certified;
  double cross_check = 0.0;
  double cross_check_bound = 0.0;
};
LiouvilleSeriesValue liouville_series_eval(Complex s, double tol,
                                           const LiouvilleSieve& sieve,
                                           long term_ceiling = 8'000'000);

// Dirichlet-polynomial prefixes over prime_log_system(N); coefficient 1
// (resp. lambda(n)) on the frequency -log n, n = 1..N.
ExpSum zeta_prefix(long N);
ExpSum liouville_prefix(long N, const LiouvilleSieve& sieve);
ExpSum zeta_prefix(long N, const SystemPtr& sys);
ExpSum liouville_prefix(long N, const LiouvilleSieve& sieve, const SystemPtr& sys);

struct InfimumReport {
  double sigma0 = 0.0;
  double ratio_value = 0.0;   // zeta(2 sigma0)/zeta(sigma0)
  double ratio_err = 0.0;     // propagated certified errors of the two evals
  double euler_partial = 0.0; // prod_{p<=P} 1/(1+p^{-sigma0})
  long P = 0;
  double tail_bound = 0.0;    // dominates |ratio_value - euler_partial|
};

InfimumReport infimum_report(double sigma0, long P, double tol = 1e-10);

struct LiouvilleTranslateReport {
  TranslateResult translate;
  long N = 0;
  double tail_zeta = 0.0;       // sum_{n>N} n^{-sigma0} bound
  double tail_liouville = 0.0;  // same bound (|lambda| = 1)
  double full_bracket = 0.0;    // eps + both tails
};

LiouvilleTranslateReport approximate_liouville_by_translate(
    long N, const Strip& strip, double eps,
    TranslateOptions opts = {});

struct SmallZetaSample {
  Rational t_exact;
  double t = 0.0;
  double abs_zeta = 0.0;
  double err = 0.0;
};

struct SmallZetaReport {
  double sigma0 = 0.0;
  long prime_cutoff = 0;
  double floor_value = 0.0;  // zeta(2 sigma0)/zeta(sigma0)
  double floor_err = 0.0;
  std::vector<SmallZetaSample> evaluations;  // running minima, best last
  bool budget_exhausted = false;
  std::string note;
};

// Directed search: align tau*log p near pi (mod 2 pi) for primes p <= cutoff,
// evaluate |zeta(sigma0 + i tau)| at the candidates and record the minima.
// Every evaluation respects the strict floor zeta(2s0)/zeta(s0).
SmallZetaReport small_zeta_search(double sigma0, double t_budget,
                                  long prime_cutoff = 13,
                                  SearchMethod method = SearchMethod::lattice,
                                  double align_tol_radians = 0.2);

}  // namespace bohr
