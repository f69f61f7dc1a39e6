#pragma once

// Scalar substrate: Eigen dense types over double, GMP integers (mpz_class),
// rationals (mpq_class) and floats (mpf_class). Exact types carry exponent
// coefficients and congruence systems; floating types carry generator values,
// phases and evaluations.

#include <gmpxx.h>

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  typedef mpz_class Real;
  typedef mpz_class NonInteger;
  typedef mpz_class Nested;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 30,
    MulCost = 50
  };
};

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 60,
    MulCost = 80
  };
};

template <>
struct NumTraits<mpf_class> : GenericNumTraits<mpf_class> {
  typedef mpf_class Real;
  typedef mpf_class NonInteger;
  typedef mpf_class Nested;
  static inline Real epsilon() { return mpf_class(std::ldexp(1.0, -160)); }
  static inline Real dummy_precision() { return mpf_class(std::ldexp(1.0, -140)); }
  static inline int digits10() { return 45; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 40,
    MulCost = 60
  };
};

}  // namespace Eigen

namespace bohr {

using Integer = mpz_class;
using Rational = mpq_class;
using BigFloat = mpf_class;
using Complex = std::complex<double>;

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;

using IVec = Eigen::Matrix<Integer, Eigen::Dynamic, 1>;
using IMat = Eigen::Matrix<Integer, Eigen::Dynamic, Eigen::Dynamic>;
using QVec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using QMat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using FVec = Eigen::Matrix<BigFloat, Eigen::Dynamic, 1>;
using FMat = Eigen::Matrix<BigFloat, Eigen::Dynamic, Eigen::Dynamic>;

template <class S>
using VecT = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using MatT = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

namespace num {

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double two_pi = 2.0 * pi;

inline double to_d(double x) { return x; }
inline double to_d(const mpf_class& x) { return x.get_d(); }
inline double to_d(const mpq_class& x) { return x.get_d(); }
inline double to_d(const mpz_class& x) { return x.get_d(); }

inline double floor_(double x) { return std::floor(x); }
inline mpf_class floor_(const mpf_class& x) { return floor(x); }

inline double round_(double x) { return std::nearbyint(x); }
inline mpf_class round_(const mpf_class& x) { return floor(x + mpf_class(0.5)); }

inline double sqrt_(double x) { return std::sqrt(x); }
inline mpf_class sqrt_(const mpf_class& x) { return sqrt(x); }

inline double abs_(double x) { return std::fabs(x); }
inline mpf_class abs_(const mpf_class& x) { return abs(x); }

// Nearest-integer rounding of a rational, ties toward +inf.
inline Integer round_to_integer(const Rational& x) {
  Integer q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x.get_num().get_mpz_t(),
              x.get_den().get_mpz_t());
  Integer twice_r = 2 * r;
  if (twice_r >= x.get_den()) q += 1;
  return q;
}

// Distance of x to the nearest integer.
inline double dist_to_int(double x) {
  return std::fabs(x - std::nearbyint(x));
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// Scoped GMP default-float precision. Temporaries materialized inside Eigen
// expressions pick up the process-wide default, so high-precision code must
// raise it for the duration of the computation.
class DefaultPrecGuard {
 public:
  explicit DefaultPrecGuard(int bits) : old_(mpf_get_default_prec()) {
    if (bits > 0) mpf_set_default_prec(static_cast<mp_bitcnt_t>(bits));
  }
  ~DefaultPrecGuard() { mpf_set_default_prec(old_); }
  DefaultPrecGuard(const DefaultPrecGuard&) = delete;
  DefaultPrecGuard& operator=(const DefaultPrecGuard&) = delete;

 private:
  mp_bitcnt_t old_;
};

}  // namespace num
}  // namespace bohr
