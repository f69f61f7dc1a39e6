#pragma once

// Exact integer linear algebra over mpz_class: Smith normal form with full
// unimodular transforms (and their inverses), plus an exact linear solver
// built on it. Matrices are small here (a few hundred rows at most), so the
// classical pivoting algorithm with arbitrary-precision entries is used
// throughout; no modular shortcuts.

#include "bohr/numeric.hpp"

#include <optional>

namespace bohr {

// A = U * S * V with U, V unimodular and S diagonal, nonnegative,
// s_1 | s_2 | ... . Uinv and Vinv are maintained alongside so that solvers
// and obstruction extraction need no separate inversion.
struct SmithDecomposition {
  IMat U, S, V;
  IMat Uinv, Vinv;

  Eigen::Index rank() const;
  Integer invariant_factor(Eigen::Index i) const { return S(i, i); }
};

SmithDecomposition smith_normal_form(const IMat& A);

// Exact solution of A x = b over the integers, if one exists.
std::optional<IVec> solve_integer(const IMat& A, const IVec& b);

IMat identity_imat(Eigen::Index n);

}  // namespace bohr
