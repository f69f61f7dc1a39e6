#include "bohr/zeta.hpp"

#include "bohr/highprec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bohr {

namespace {

constexpr double kSigmaFloor = 1.05;  // delta_min = 0.05 above the pole line

double integral_tail(double N, double sigma) {
  // sum_{n>N} n^{-sigma} <= N^{1-sigma}/(sigma-1)
  return std::pow(N, 1.0 - sigma) / (sigma - 1.0);
}

// Remainder bound after the B_2 correction: |T_2(s,N)| * |s+3|/(sigma+3).
double em_bound(Complex s, double N) {
  double t2 = std::abs(s) * std::abs(s + 1.0) * std::abs(s + 2.0) / 720.0 *
              std::pow(N, -(s.real() + 3.0));
  return t2 * std::abs(s + 3.0) / (s.real() + 3.0);
}

}  // namespace

LiouvilleSieve::LiouvilleSieve(long bound) { grow(bound); }

void LiouvilleSieve::grow(long new_bound) {
  if (new_bound < 1) throw std::invalid_argument("sieve bound must be >= 1");
  if (new_bound <= bound()) return;
  std::vector<int32_t> spf(static_cast<size_t>(new_bound) + 1, 0);
  for (long i = 2; i <= new_bound; ++i) {
    if (spf[static_cast<size_t>(i)] != 0) continue;
    for (long j = i; j <= new_bound; j += i)
      if (spf[static_cast<size_t>(j)] == 0)
        spf[static_cast<size_t>(j)] = static_cast<int32_t>(i);
  }
  lam_.assign(static_cast<size_t>(new_bound) + 1, 0);
  lam_[1] = 1;
  for (long n = 2; n <= new_bound; ++n)
    lam_[static_cast<size_t>(n)] =
        static_cast<int8_t>(-lam_[static_cast<size_t>(n / spf[static_cast<size_t>(n)])]);
}

int LiouvilleSieve::lambda(long n) const {
  if (n < 1 || n > bound())
    throw std::out_of_range("liouville: n beyond the sieve bound " +
                            std::to_string(bound()));
  return lam_[static_cast<size_t>(n)];
}

CertifiedValue zeta_eval(Complex s, double tol, long term_ceiling) {
  const double sigma = s.real();
  if (!(sigma >= kSigmaFloor))
    throw std::invalid_argument("zeta_eval requires Re s >= 1.05");
  if (!(tol > 0)) throw std::invalid_argument("zeta_eval: tol must be > 0");

  // invert the remainder bound for N, then nudge up until it holds
  double target = std::abs(s) * std::abs(s + 1.0) * std::abs(s + 2.0) / 720.0 *
                  std::abs(s + 3.0) / (sigma + 3.0) / tol;
  long N = static_cast<long>(std::ceil(std::pow(std::max(target, 1.0),
                                                1.0 / (sigma + 3.0))));
  N = std::max<long>(N, 16);
  while (N < term_ceiling && em_bound(s, static_cast<double>(N)) > tol) N *= 2;
  N = std::min(N, term_ceiling);

  Complex sum(0.0, 0.0);
  const double t = s.imag();
  for (long n = 1; n < N; ++n) {
    double ln = std::log(static_cast<double>(n));
    double r = std::exp(-sigma * ln);
    double ph = -t * ln;
    sum += Complex(r * std::cos(ph), r * std::sin(ph));
  }
  double lnN = std::log(static_cast<double>(N));
  Complex Npow_1ms = std::exp(Complex(1.0 - sigma, -t) * lnN);  // N^{1-s}
  Complex Npow_ms = std::exp(Complex(-sigma, -t) * lnN);        // N^{-s}
  sum += Npow_1ms / (s - 1.0);
  sum += Npow_ms * 0.5;
  sum += s * Npow_ms / static_cast<double>(N) / 12.0;

  CertifiedValue out;
  out.value = sum;
  out.error_bound = em_bound(s, static_cast<double>(N));
  out.terms_used = N;
  out.met_tol = out.error_bound <= tol;
  out.bound_formula =
      "|s(s+1)(s+2)|/720 * N^-(sigma+3) * |s+3|/(sigma+3), N=" + std::to_string(N);
  return out;
}

LiouvilleSeriesValue liouville_series_eval(Complex s, double tol,
                                           const LiouvilleSieve& sieve,
                                           long term_ceiling) {
  const double sigma = s.real();
  if (!(sigma >= kSigmaFloor))
    throw std::invalid_argument("liouville_series_eval requires Re s >= 1.05");
  if (!(tol > 0)) throw std::invalid_argument("tol must be > 0");

  long N = static_cast<long>(
      std::ceil(std::pow((sigma - 1.0) * tol, -1.0 / (sigma - 1.0))));
  N = std::max<long>(N, 16);
  N = std::min({N, term_ceiling, sieve.bound()});

  Complex sum(0.0, 0.0);
  const double t = s.imag();
  for (long n = 1; n <= N; ++n) {
    double ln = std::log(static_cast<double>(n));
    double r = std::exp(-sigma * ln) * sieve.lambda(n);
    double ph = -t * ln;
    sum += Complex(r * std::cos(ph), r * std::sin(ph));
  }

  LiouvilleSeriesValue out;
  out.certified.value = sum;
  out.certified.terms_used = N;
  out.certified.error_bound = integral_tail(static_cast<double>(N), sigma);
  out.certified.met_tol = out.certified.error_bound <= tol;
  out.certified.bound_formula =
      "integral-test tail N^(1-sigma)/(sigma-1), N=" + std::to_string(N);

  CertifiedValue z1 = zeta_eval(s, tol * 0.1, term_ceiling);
  CertifiedValue z2 = zeta_eval(2.0 * s, tol * 0.1, term_ceiling);
  Complex ratio = z2.value / z1.value;
  out.cross_check = std::abs(sum - ratio);
  double z1abs = std::abs(z1.value);
  out.cross_check_bound = out.certified.error_bound +
                          (z2.error_bound + std::abs(ratio) * z1.error_bound) /
                              (z1abs - z1.error_bound);
  return out;
}

ExpSum zeta_prefix(long N, const SystemPtr& sys) {
  if (N < 2) throw std::invalid_argument("zeta_prefix: N must be >= 2");
  CVec coeffs = CVec::Constant(sys->frequency_count(), Complex(1.0, 0.0));
  return ExpSum(sys, std::move(coeffs), Kind::complex_variable);
}

ExpSum zeta_prefix(long N) {
  auto sys = std::make_shared<FrequencySystem>(prime_log_system(N).system);
  return zeta_prefix(N, sys);
}

ExpSum liouville_prefix(long N, const LiouvilleSieve& sieve, const SystemPtr& sys) {
  if (N < 2) throw std::invalid_argument("liouville_prefix: N must be >= 2");
  CVec coeffs(sys->frequency_count());
  for (long n = 1; n <= N; ++n)
    coeffs[n - 1] = Complex(static_cast<double>(sieve.lambda(n)), 0.0);
  return ExpSum(sys, std::move(coeffs), Kind::complex_variable);
}

ExpSum liouville_prefix(long N, const LiouvilleSieve& sieve) {
  auto sys = std::make_shared<FrequencySystem>(prime_log_system(N).system);
  return liouville_prefix(N, sieve, sys);
}

InfimumReport infimum_report(double sigma0, long P, double tol) {
  if (!(sigma0 > 1.0)) throw std::invalid_argument("infimum_report: sigma0 must be > 1");
  if (P < 2) throw std::invalid_argument("infimum_report: P must be >= 2");

  CertifiedValue z1 = zeta_eval(Complex(sigma0, 0.0), tol);
  CertifiedValue z2 = zeta_eval(Complex(2.0 * sigma0, 0.0), tol);
  double v1 = z1.value.real(), v2 = z2.value.real();

  InfimumReport rep;
  rep.sigma0 = sigma0;
  rep.P = P;
  rep.ratio_value = v2 / v1;
  rep.ratio_err = (z2.error_bound + rep.ratio_value * z1.error_bound) /
                  (v1 - z1.error_bound);

  double partial = 1.0;
  for (long p : primes_upto(P)) partial /= 1.0 + std::pow(static_cast<double>(p), -sigma0);
  rep.euler_partial = partial;

  // ratio = partial * prod_{p>P} (1+p^-s)^{-1}; the tail factor sits in
  // [exp(-T), 1] with T = sum_{p>P} p^{-sigma0} <= P^{1-sigma0}/(sigma0-1).
  double T = integral_tail(static_cast<double>(P), sigma0);
  rep.tail_bound = partial * T + rep.ratio_err;
  return rep;
}

LiouvilleTranslateReport approximate_liouville_by_translate(long N,
                                                            const Strip& strip,
                                                            double eps,
                                                            TranslateOptions opts) {
  if (!(strip.sigma0 > 1.0))
    throw std::invalid_argument("the strip must lie in the absolute-convergence half-plane");
  // The uniform worst-case budget for a prime-log system this wide sits below
  // any reachable search; this demo always runs the adaptive tolerance plan.
  opts.adaptive_eps1 = true;

  LiouvilleSieve sieve(std::max<long>(N, 2));
  auto sys = std::make_shared<FrequencySystem>(prime_log_system(N).system);
  ExpSum f1 = zeta_prefix(N, sys);
  ExpSum f2 = liouville_prefix(N, sieve, sys);

  LiouvilleTranslateReport rep;
  rep.N = N;
  rep.translate = find_translate(f1, f2, strip, eps, opts);
  rep.tail_zeta = integral_tail(static_cast<double>(N), strip.sigma0);
  rep.tail_liouville = rep.tail_zeta;
  rep.full_bracket = eps + rep.tail_zeta + rep.tail_liouville;
  return rep;
}

SmallZetaReport small_zeta_search(double sigma0, double t_budget,
                                  long prime_cutoff, SearchMethod method,
                                  double align_tol_radians) {
  if (!(sigma0 >= 1.2))
    throw std::invalid_argument(
        "small_zeta_search: certified evaluation needs sigma0 >= 1.2");
  if (!(t_budget > 0)) throw std::invalid_argument("t_budget must be > 0");

  SmallZetaReport rep;
  rep.sigma0 = sigma0;
  rep.prime_cutoff = prime_cutoff;
  InfimumReport inf = infimum_report(sigma0, 100000, 1e-10);
  rep.floor_value = inf.ratio_value;
  rep.floor_err = inf.ratio_err;

  std::vector<long> primes = primes_upto(prime_cutoff);
  const Eigen::Index m = static_cast<Eigen::Index>(primes.size());
  constexpr int prec = 192;
  Vec c(m), d(m);
  std::vector<BigFloat> c_hp;
  BigFloat two_pi(0, prec);
  two_pi = 2 * hp::pi(prec);
  for (Eigen::Index k = 0; k < m; ++k) {
    BigFloat ck(0, prec);
    ck = hp::log_int(static_cast<unsigned long>(primes[static_cast<size_t>(k)]), prec) / two_pi;
    c_hp.push_back(ck);
    c[k] = ck.get_d();
    d[k] = 0.5;
  }
  KroneckerInstance inst = KroneckerInstance::make_weighted(
      std::move(c), std::move(d),
      Vec::Constant(m, align_tol_radians / num::two_pi), std::move(c_hp));

  std::vector<TauCandidate> candidates;
  if (method == SearchMethod::grid) {
    GridParams gp;
    gp.max_candidates = 24;
    candidates = solve_grid(inst, 0.0, t_budget, gp);
  } else {
    // a few growing windows give several distinct hits
    double bound = std::max(1.0e5, t_budget / 16.0);
    while (bound <= t_budget * (1.0 + 1e-9) && candidates.size() < 8) {
      LatticeSearch search = solve_lattice(inst, bound);
      if (search.candidate) {
        bool fresh = true;
        for (const TauCandidate& c0 : candidates)
          if (std::fabs(c0.tau - search.candidate->tau) < 1.0) fresh = false;
        if (fresh) candidates.push_back(*search.candidate);
      }
      bound *= 4.0;
    }
  }
  if (candidates.empty()) {
    rep.budget_exhausted = true;
    rep.note = "no aligned tau within budget " + std::to_string(t_budget);
    return rep;
  }

  std::sort(candidates.begin(), candidates.end(),
            [](const TauCandidate& a, const TauCandidate& b) { return a.tau < b.tau; });
  double best = std::numeric_limits<double>::infinity();
  for (const TauCandidate& cand : candidates) {
    if (cand.tau > 1.0e9) {
      rep.note += "skipped tau=" + std::to_string(cand.tau) +
                  " (beyond double-safe evaluation); ";
      continue;
    }
    CertifiedValue z = zeta_eval(Complex(sigma0, cand.tau), 1e-6);
    double az = std::abs(z.value);
    if (az < best) {
      best = az;
      rep.evaluations.push_back(
          SmallZetaSample{cand.tau_exact, cand.tau, az, z.error_bound});
    }
  }
  return rep;
}

}  // namespace bohr
