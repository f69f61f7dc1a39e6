#pragma once

// Deciding equivalence of exponential sums over a shared frequency system.
// The coefficient condition b_j = a_j e^{i<r_j, x>} becomes an integer phase
// congruence R y = phi (mod 1) after rescaling to an integral basis; Smith
// normal form decides solvability and produces either a witness or an exact
// integer obstruction.

#include "bohr/expsum.hpp"
#include "bohr/intmatrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bohr {

struct PhaseWitness {
  Vec x;  // radians, coordinate k canonical in [0, 2*pi*q_k)
};

struct CongruenceSystem {
  IMat R;      // integer rows, one per frequency with nonzero coefficient
  Vec phi;     // target phases divided by 2*pi, in [0, 1)
  double tol;  // absolute tolerance on mod-1 residuals of transformed targets
};

struct CongruenceSolution {
  bool solvable = false;
  Vec y;  // R y = phi (mod 1); canonical in [0,1), free coordinates 0
  std::optional<IVec> obstruction;  // u with u^T R = 0 and u^T phi not integral
  double worst_residual = 0.0;
};

CongruenceSolution solve_phase_congruence(const CongruenceSystem& sys);

struct EquivalenceVerdict {
  bool equivalent = false;
  std::optional<PhaseWitness> witness;
  std::optional<IVec> obstruction;
  std::string detail;
  double witness_residual = 0.0;  // max_j |b_j - a_j e^{i<r_j,x>}| / (1+|a_j|)
  double tol = 0.0;
  std::string mode;  // "bohr" or "star"
  bool nonintegral_caveat = false;
};

// ||a_j| - |b_j|| <= tol*(1+|a_j|) for all j, with a_j = 0 iff b_j = 0.
bool moduli_equal(const ExpSum& f, const ExpSum& g, double tol);

EquivalenceVerdict bohr_equivalent(const ExpSum& f, const ExpSum& g,
                                   double tol = 1e-9);

struct StarReport {
  std::vector<EquivalenceVerdict> prefixes;  // verdict for prefix length n = 1..
  bool all_equivalent = false;
};

StarReport star_equivalent(const ExpSum& f, const ExpSum& g, double tol = 1e-9);

// The class map: coefficients a_j e^{i<r_j, x>}.
ExpSum class_point(const ExpSum& f, const Vec& x);

// Independent check of a claimed witness (never goes through the solver).
double witness_residual(const ExpSum& f, const ExpSum& g, const Vec& x);

}  // namespace bohr
