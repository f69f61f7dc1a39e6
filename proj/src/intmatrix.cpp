#include "bohr/intmatrix.hpp"

#include <stdexcept>

namespace bohr {

namespace {

// Quotient of a/b rounded to nearest (|a - q*b| <= |b|/2).
Integer nearest_quotient(const Integer& a, const Integer& b) {
  Integer q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  Integer abs_b = abs(b);
  if (2 * r > abs_b) q += (b > 0 ? 1 : -1);
  return q;
}

struct SnfState {
  IMat S, U, Uinv, V, Vinv;

  // Row ops on S, mirrored so that A = U * S * V stays an identity.
  void row_swap(Eigen::Index i, Eigen::Index j) {
    S.row(i).swap(S.row(j));
    Uinv.row(i).swap(Uinv.row(j));
    U.col(i).swap(U.col(j));
  }
  void row_submul(Eigen::Index i, Eigen::Index t, const Integer& c) {
    // row_i -= c * row_t
    S.row(i) -= c * S.row(t).eval();
    Uinv.row(i) -= c * Uinv.row(t).eval();
    U.col(t) += c * U.col(i).eval();
  }
  void row_negate(Eigen::Index i) {
    S.row(i) = -S.row(i).eval();
    Uinv.row(i) = -Uinv.row(i).eval();
    U.col(i) = -U.col(i).eval();
  }
  // Column ops.
  void col_swap(Eigen::Index i, Eigen::Index j) {
    S.col(i).swap(S.col(j));
    V.row(i).swap(V.row(j));
    Vinv.col(i).swap(Vinv.col(j));
  }
  void col_submul(Eigen::Index j, Eigen::Index t, const Integer& c) {
    // col_j -= c * col_t
    S.col(j) -= c * S.col(t).eval();
    V.row(t) += c * V.row(j).eval();
    Vinv.col(j) -= c * Vinv.col(t).eval();
  }
};

}  // namespace

IMat identity_imat(Eigen::Index n) {
  IMat I(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) I(i, j) = (i == j) ? 1 : 0;
  return I;
}

Eigen::Index SmithDecomposition::rank() const {
  Eigen::Index r = 0;
  Eigen::Index d = std::min(S.rows(), S.cols());
  while (r < d && S(r, r) != 0) ++r;
  return r;
}

SmithDecomposition smith_normal_form(const IMat& A) {
  if (A.rows() == 0 || A.cols() == 0)
    throw std::invalid_argument("smith_normal_form: empty matrix");
  const Eigen::Index n = A.rows(), m = A.cols();
  SnfState st;
  st.S = A;
  st.U = identity_imat(n);
  st.Uinv = identity_imat(n);
  st.V = identity_imat(m);
  st.Vinv = identity_imat(m);

  const Eigen::Index dmin = std::min(n, m);
  for (Eigen::Index t = 0; t < dmin; ++t) {
    for (;;) {
      // Pivot: entry of minimal nonzero magnitude in the trailing block.
      Eigen::Index pi = -1, pj = -1;
      Integer best;
      for (Eigen::Index i = t; i < n; ++i)
        for (Eigen::Index j = t; j < m; ++j) {
          if (st.S(i, j) == 0) continue;
          Integer a = abs(st.S(i, j));
          if (pi < 0 || a < best) {
            best = a;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) goto done;  // trailing block is zero
      if (pi != t) st.row_swap(t, pi);
      if (pj != t) st.col_swap(t, pj);

      bool clean = true;
      for (Eigen::Index i = t + 1; i < n; ++i) {
        if (st.S(i, t) == 0) continue;
        Integer c = nearest_quotient(st.S(i, t), st.S(t, t));
        if (c != 0) st.row_submul(i, t, c);
        if (st.S(i, t) != 0) clean = false;
      }
      for (Eigen::Index j = t + 1; j < m; ++j) {
        if (st.S(t, j) == 0) continue;
        Integer c = nearest_quotient(st.S(t, j), st.S(t, t));
        if (c != 0) st.col_submul(j, t, c);
        if (st.S(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Divisibility: every remaining entry must be a multiple of the pivot.
      Eigen::Index bad_row = -1;
      for (Eigen::Index i = t + 1; i < n && bad_row < 0; ++i)
        for (Eigen::Index j = t + 1; j < m; ++j) {
          Integer r = st.S(i, j) % st.S(t, t);
          if (r != 0) {
            bad_row = i;
            break;
          }
        }
      if (bad_row >= 0) {
        st.row_submul(t, bad_row, Integer(-1));  // row_t += row_bad
        continue;
      }
      break;
    }
    if (st.S(t, t) < 0) st.row_negate(t);
  }
done:
  SmithDecomposition out;
  out.U = std::move(st.U);
  out.S = std::move(st.S);
  out.V = std::move(st.V);
  out.Uinv = std::move(st.Uinv);
  out.Vinv = std::move(st.Vinv);
  return out;
}

std::optional<IVec> solve_integer(const IMat& A, const IVec& b) {
  if (A.rows() != b.size())
    throw std::invalid_argument("solve_integer: dimension mismatch");
  SmithDecomposition d = smith_normal_form(A);
  IVec w = d.Uinv * b;
  const Eigen::Index m = A.cols();
  const Eigen::Index r = d.rank();
  IVec z(m);
  for (Eigen::Index i = 0; i < m; ++i) z[i] = 0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (i < r) {
      Integer rem = w[i] % d.S(i, i);
      if (rem != 0) return std::nullopt;
      z[i] = w[i] / d.S(i, i);
    } else if (w[i] != 0) {
      return std::nullopt;
    }
  }
  IVec x = d.Vinv * z;
  return x;
}

}  // namespace bohr
