#include "bohr/highprec.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace bohr::hp {

namespace {

std::mutex cache_mutex;

// binary exponent: |x| = d * 2^e with d in [0.5, 1)
long exp2_of(const mpf_class& x) {
  long e = 0;
  mpf_get_d_2exp(&e, x.get_mpf_t());
  return e;
}

// atan(1/k) by the Gregory series, at the precision of the result template r.
BigFloat atan_inv(unsigned long k, int prec) {
  BigFloat inv_k2(0, prec), term(0, prec), sum(0, prec), tmp(0, prec);
  inv_k2 = 1;
  inv_k2 /= (k * k);
  term = 1;
  term /= k;
  sum = term;
  bool plus = false;
  for (unsigned long i = 1;; ++i, plus = !plus) {
    term *= inv_k2;
    tmp = term / (2 * i + 1);
    if (plus)
      sum += tmp;
    else
      sum -= tmp;
    if (mpf_sgn(tmp.get_mpf_t()) == 0 || exp2_of(tmp) < -(prec + 8)) break;
  }
  return sum;
}

// atanh(x) for 0 <= x <= 1/3 at working precision prec.
BigFloat atanh_small(const BigFloat& x, int prec) {
  BigFloat x2(0, prec), term(0, prec), sum(0, prec), tmp(0, prec);
  x2 = x * x;
  term = x;
  sum = x;
  for (unsigned long i = 1;; ++i) {
    term *= x2;
    tmp = term / (2 * i + 1);
    sum += tmp;
    if (mpf_sgn(tmp.get_mpf_t()) == 0 || exp2_of(tmp) < -(prec + 8)) break;
  }
  return sum;
}

BigFloat compute_pi(int prec) {
  int wp = prec + 32;
  BigFloat r(0, wp);
  r = 16 * atan_inv(5, wp) - 4 * atan_inv(239, wp);
  return r;
}

BigFloat compute_log(unsigned long n, int prec) {
  if (n == 0) throw std::invalid_argument("log_int: n must be >= 1");
  int wp = prec + 32;
  if (n == 1) return BigFloat(0, wp);
  // n = 2^e * m with m in [1, 2); log m = 2 atanh((m-1)/(m+1)).
  int e = 0;
  unsigned long v = n;
  while (v > 1) {
    v >>= 1;
    ++e;
  }
  BigFloat m(0, wp);
  m = n;
  mpf_div_2exp(m.get_mpf_t(), m.get_mpf_t(), e);
  if (m >= 2) {
    ++e;
    mpf_div_2exp(m.get_mpf_t(), m.get_mpf_t(), 1);
  }
  BigFloat x(0, wp);
  x = (m - 1) / (m + 1);
  BigFloat log_m(0, wp);
  log_m = 2 * atanh_small(x, wp);
  if (e == 0) return log_m;
  // log 2 = 2 atanh(1/3)
  BigFloat third(0, wp);
  third = 1;
  third /= 3;
  BigFloat log2(0, wp);
  log2 = 2 * atanh_small(third, wp);
  BigFloat r(0, wp);
  r = e * log2 + log_m;
  return r;
}

}  // namespace

BigFloat pi(int prec_bits) {
  static std::map<int, BigFloat> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(prec_bits);
  if (it != cache.end()) return it->second;
  BigFloat value = compute_pi(prec_bits);
  cache.emplace(prec_bits, value);
  return value;
}

BigFloat log_int(unsigned long n, int prec_bits) {
  static std::map<std::pair<unsigned long, int>, BigFloat> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto key = std::make_pair(n, prec_bits);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  BigFloat value = compute_log(n, prec_bits);
  cache.emplace(key, value);
  return value;
}

BigFloat mod1(const BigFloat& x) {
  BigFloat r(0, mpf_get_prec(x.get_mpf_t()));
  r = x - floor(x);
  if (r < 0) r += 1;  // guard against rounding at the boundary
  if (r >= 1) r -= 1;
  return r;
}

BigFloat mul(const Rational& tau, const BigFloat& w, int prec_bits) {
  // Working precision covers the integer part of tau*w plus prec_bits of
  // fraction, so the reduction below loses nothing that matters.
  long num_bits =
      static_cast<long>(mpz_sizeinbase(tau.get_num().get_mpz_t(), 2));
  long w_exp = exp2_of(w);
  int wp = static_cast<int>(prec_bits + std::max<long>(0, num_bits) +
                            std::max<long>(0, w_exp) + 64);
  BigFloat x(0, wp);
  x = w;
  BigFloat n(0, wp), d(0, wp);
  n = BigFloat(tau.get_num(), wp);
  d = BigFloat(tau.get_den(), wp);
  x *= n;
  x /= d;
  return x;
}

double residual_mod1(const Rational& tau, const BigFloat& c, double d,
                     int prec_bits) {
  BigFloat x = mul(tau, c, prec_bits);
  x -= d;
  BigFloat f = mod1(x);
  double r = f.get_d();
  return std::min(r, 1.0 - r);
}

double mod_two_pi(const Rational& tau, const BigFloat& w, int prec_bits) {
  BigFloat x = mul(tau, w, prec_bits);
  int wp = static_cast<int>(mpf_get_prec(x.get_mpf_t()));
  BigFloat tp(0, wp);
  tp = 2 * pi(wp);
  BigFloat q(0, wp);
  q = floor(x / tp);
  BigFloat r(0, wp);
  r = x - q * tp;
  if (r < 0) r += tp;
  if (r >= tp) r -= tp;
  return r.get_d();
}

}  // namespace bohr::hp
