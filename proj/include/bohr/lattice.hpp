#pragma once

// Lattice reduction and approximate closest-vector routines, templated on the
// floating scalar (double in standard mode, mpf_class in high-precision mode).
// Basis vectors are the rows of an Eigen matrix; reductions carry an exact
// integer transform so lattice membership stays provable after the fact.

#include "bohr/intmatrix.hpp"
#include "bohr/numeric.hpp"

#include <functional>
#include <stdexcept>

namespace bohr {

template <class S>
struct LatticeBasis {
  MatT<S> rows;  // one basis vector per row
  int precision_bits = 53;
};

template <class S>
struct Gso {
  MatT<S> bstar;   // orthogonalized rows
  MatT<S> mu;      // lower-triangular coefficients
  VecT<S> bnorm2;  // squared norms of bstar rows
};

template <class S>
struct Reduction {
  LatticeBasis<S> basis;
  IMat transform;      // basis.rows = transform * input.rows
  IMat transform_inv;  // exact inverse, so input rows are integer combos back
};

template <class S>
struct CvpResult {
  VecT<S> point;  // the chosen lattice vector
  IVec coeffs;    // its coordinates in the given basis
  double distance;
};

namespace detail {

template <class S>
Integer to_integer_rounded(const S& x) {
  S r = num::round_(x);
  if constexpr (std::is_same_v<S, double>) {
    Integer z;
    mpz_set_d(z.get_mpz_t(), r);
    return z;
  } else {
    Integer z;
    mpz_set_f(z.get_mpz_t(), r.get_mpf_t());
    return z;
  }
}

}  // namespace detail

template <class S>
Gso<S> gram_schmidt(const MatT<S>& rows) {
  const Eigen::Index n = rows.rows();
  Gso<S> g;
  g.bstar = rows;
  g.mu = MatT<S>::Zero(n, n);
  g.bnorm2 = VecT<S>::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      S dot = rows.row(i).dot(g.bstar.row(j));
      g.mu(i, j) = dot / g.bnorm2[j];
      g.bstar.row(i) -= g.mu(i, j) * g.bstar.row(j).eval();
    }
    g.bnorm2[i] = g.bstar.row(i).dot(g.bstar.row(i));
    if (!(num::to_d(g.bnorm2[i]) > 0))
      throw std::invalid_argument("lattice basis is dependent at recorded precision");
  }
  return g;
}

namespace detail {

// One LLL pass at a fixed delta over shared state; returns swap count.
template <class S>
long lll_pass(MatT<S>& b, IMat& T, IMat& Tinv, Gso<S>& g, double delta) {
  const Eigen::Index n = b.rows();
  MatT<S>& mu = g.mu;
  VecT<S>& B = g.bnorm2;

  auto red = [&](Eigen::Index k, Eigen::Index l) {
    S half = S(0.5);
    if (!(num::abs_(mu(k, l)) > half)) return;
    Integer q = detail::to_integer_rounded(mu(k, l));
    S qs;
    if constexpr (std::is_same_v<S, double>)
      qs = q.get_d();
    else
      qs = S(q);
    b.row(k) -= qs * b.row(l).eval();
    T.row(k) -= q * T.row(l).eval();
    Tinv.col(l) += q * Tinv.col(k).eval();
    for (Eigen::Index j = 0; j < l; ++j) mu(k, j) -= qs * mu(l, j);
    mu(k, l) -= qs;
  };

  long swaps = 0;
  const long swap_guard = 80'000'000;
  Eigen::Index k = 1;
  while (k < n) {
    red(k, k - 1);
    S lhs = B[k];
    S rhs = (S(delta) - mu(k, k - 1) * mu(k, k - 1)) * B[k - 1];
    if (lhs < rhs) {
      if (++swaps > swap_guard)
        throw std::runtime_error("lattice_reduce: swap guard tripped");
      b.row(k).swap(b.row(k - 1));
      T.row(k).swap(T.row(k - 1));
      Tinv.col(k).swap(Tinv.col(k - 1));
      // incremental GSO update after the swap
      S m = mu(k, k - 1);
      S Bt = B[k] + m * m * B[k - 1];
      mu(k, k - 1) = m * B[k - 1] / Bt;
      B[k] = B[k - 1] * B[k] / Bt;
      B[k - 1] = Bt;
      for (Eigen::Index j = 0; j < k - 1; ++j) std::swap(mu(k, j), mu(k - 1, j));
      for (Eigen::Index i = k + 1; i < n; ++i) {
        S t = mu(i, k);
        mu(i, k) = mu(i, k - 1) - m * t;
        mu(i, k - 1) = t + mu(k, k - 1) * mu(i, k);
      }
      k = std::max<Eigen::Index>(k - 1, 1);
    } else {
      for (Eigen::Index l = k - 2; l >= 0; --l) red(k, l);
      ++k;
    }
  }
  return swaps;
}

}  // namespace detail

// LLL reduction, delta in (1/4, 1); default matches the documented 0.99.
// Runs a cheap delta=0.75 pass first when the target delta is stronger; the
// final pass carries the documented quality guarantee either way.
template <class S>
Reduction<S> lattice_reduce(const LatticeBasis<S>& input, double delta = 0.99) {
  const Eigen::Index n = input.rows.rows();
  if (n == 0) throw std::invalid_argument("lattice_reduce: empty basis");
  num::DefaultPrecGuard prec_guard(
      std::is_same_v<S, BigFloat> ? input.precision_bits : 0);
  MatT<S> b = input.rows;
  IMat T = identity_imat(n), Tinv = identity_imat(n);

  Gso<S> g = gram_schmidt(b);
  if (delta > 0.8 && n > 4) {
    detail::lll_pass(b, T, Tinv, g, 0.75);
    g = gram_schmidt(b);  // refresh: incremental updates drift over long runs
  }
  detail::lll_pass(b, T, Tinv, g, delta);

  Reduction<S> out;
  out.basis.rows = std::move(b);
  out.basis.precision_bits = input.precision_bits;
  out.transform = std::move(T);
  out.transform_inv = std::move(Tinv);
  return out;
}

// Babai nearest-plane on an already reduced basis. The returned point is a
// lattice vector whose distance to the target is within 2^(n/2) of optimal.
template <class S>
CvpResult<S> closest_vector_approx(const LatticeBasis<S>& reduced,
                                   const VecT<S>& target) {
  const Eigen::Index n = reduced.rows.rows();
  if (target.size() != reduced.rows.cols())
    throw std::invalid_argument("closest_vector_approx: dimension mismatch");
  num::DefaultPrecGuard prec_guard(
      std::is_same_v<S, BigFloat> ? reduced.precision_bits : 0);
  Gso<S> g = gram_schmidt(reduced.rows);
  VecT<S> w = target;
  CvpResult<S> res;
  res.coeffs = IVec(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    S l = w.dot(g.bstar.row(i)) / g.bnorm2[i];
    Integer c = detail::to_integer_rounded(l);
    res.coeffs[i] = c;
    S cs;
    if constexpr (std::is_same_v<S, double>)
      cs = c.get_d();
    else
      cs = S(c);
    w -= cs * reduced.rows.row(i).eval();
  }
  res.point = target - w;
  S d2 = w.dot(w);
  res.distance = std::sqrt(num::to_d(d2));
  return res;
}

// Bounded Schnorr-Euchner enumeration of lattice points near a target, in
// double precision (candidates get re-verified exactly by callers).
// visit(coeffs, n, dist2) gets the reduced-basis coordinates as raw longs and
// returns true to stop the search early.
struct EnumOptions {
  double radius = 1.0;
  long node_budget = 2'000'000;
  int branch_cap = 64;  // max children per level; huge-range levels get capped
};

long enumerate_close_vectors(
    const Mat& rows, const Gso<double>& gso, const Vec& target,
    const EnumOptions& opt,
    const std::function<bool(const long*, Eigen::Index, double)>& visit);

}  // namespace bohr
