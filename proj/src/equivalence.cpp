#include "bohr/equivalence.hpp"

#include <Eigen/QR>

#include <cmath>
#include <stdexcept>

namespace bohr {

namespace {

double mod1(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r -= 1.0;
  if (r < 0.0) r += 1.0;
  return r;
}

IVec canonical_sign(IVec u) {
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    if (u[i] < 0)
      for (Eigen::Index j = 0; j < u.size(); ++j) u[j] = -u[j];
    break;
  }
  return u;
}

// Rows (with their targets) for frequencies carrying nonzero coefficients in
// the first `prefix` positions, over the integral rescaling of the system.
struct CongruenceData {
  IMat R;
  Vec phi;
  std::vector<Eigen::Index> rows;  // frequency index per congruence row
};

CongruenceData build_congruence(const ExpSum& f, const ExpSum& g,
                                const IntegralSystem& integral,
                                Eigen::Index prefix) {
  const Eigen::Index m = integral.system.generator_count();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < prefix; ++j)
    if (std::abs(f.coeff(j)) != 0.0) keep.push_back(j);

  CongruenceData data;
  data.R = IMat(static_cast<Eigen::Index>(keep.size()), m);
  data.phi = Vec(static_cast<Eigen::Index>(keep.size()));
  data.rows = keep;
  for (size_t i = 0; i < keep.size(); ++i) {
    Eigen::Index j = keep[i];
    for (Eigen::Index k = 0; k < m; ++k)
      data.R(static_cast<Eigen::Index>(i), k) =
          integral.system.coeff(j)[k].get_num();
    Complex ratio = g.coeff(j) / f.coeff(j);
    data.phi[static_cast<Eigen::Index>(i)] = mod1(std::arg(ratio) / num::two_pi);
  }
  return data;
}

EquivalenceVerdict decide(const ExpSum& f, const ExpSum& g, double tol,
                          Eigen::Index prefix, const IntegralSystem& integral,
                          const std::string& mode) {
  EquivalenceVerdict v;
  v.tol = tol;
  v.mode = mode;
  v.nonintegral_caveat = (mode == "bohr") && !f.system().is_integral();

  for (Eigen::Index j = 0; j < prefix; ++j) {
    double am = std::abs(f.coeff(j)), bm = std::abs(g.coeff(j));
    if ((am == 0.0) != (bm == 0.0) || std::fabs(am - bm) > tol * (1.0 + am)) {
      v.equivalent = false;
      v.detail = "modulus mismatch at j=" + std::to_string(j + 1);
      return v;
    }
  }

  CongruenceData data = build_congruence(f, g, integral, prefix);
  const Eigen::Index m = integral.system.generator_count();
  if (data.R.rows() == 0) {
    v.equivalent = true;
    v.witness = PhaseWitness{Vec::Zero(m)};
    return v;
  }

  CongruenceSolution sol = solve_phase_congruence({data.R, data.phi, tol});
  if (!sol.solvable) {
    v.equivalent = false;
    v.obstruction = sol.obstruction;
    v.detail = "phase congruence unsolvable (mod-1 residual " +
               std::to_string(sol.worst_residual) + ")";
    return v;
  }

  Vec x(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    double qk = num::to_d(integral.scale_record[static_cast<size_t>(k)]);
    x[k] = num::two_pi * qk * sol.y[k];
  }
  v.equivalent = true;
  v.witness = PhaseWitness{x};
  v.witness_residual = witness_residual(f, g, x);
  return v;
}

}  // namespace

CongruenceSolution solve_phase_congruence(const CongruenceSystem& sys) {
  if (sys.tol <= 0) throw std::invalid_argument("congruence tolerance must be > 0");
  const Eigen::Index n = sys.R.rows(), m = sys.R.cols();
  if (sys.phi.size() != n)
    throw std::invalid_argument("congruence target length mismatch");

  SmithDecomposition d = smith_normal_form(sys.R);
  const Eigen::Index rank = d.rank();

  // The targets are doubles, hence dyadic rationals; the whole solve runs
  // exactly over Q, so unimodular transforms amplify nothing. Floats only
  // reappear when the witness is converted back at the very end.
  QVec psi(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Rational acc(0);
    for (Eigen::Index k = 0; k < n; ++k) {
      if (d.Uinv(i, k) == 0 || sys.phi[k] == 0.0) continue;
      acc += Rational(d.Uinv(i, k)) * Rational(sys.phi[k]);
    }
    psi[i] = acc;
  }

  CongruenceSolution out;
  for (Eigen::Index i = rank; i < n; ++i) {
    Rational res = psi[i] - num::round_to_integer(psi[i]);
    Rational res_abs = abs(res);
    out.worst_residual = std::max(out.worst_residual, num::to_d(res_abs));
    if (num::to_d(res_abs) > sys.tol) {
      out.solvable = false;
      out.obstruction = canonical_sign(d.Uinv.row(i).transpose());
      return out;
    }
  }

  QVec z(m);
  for (Eigen::Index i = 0; i < m; ++i) z[i] = 0;
  for (Eigen::Index i = 0; i < std::min(rank, m); ++i)
    z[i] = psi[i] / Rational(d.S(i, i));
  Vec y(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    Rational acc(0);
    for (Eigen::Index i = 0; i < m; ++i) {
      if (d.Vinv(k, i) == 0 || z[i] == 0) continue;
      acc += Rational(d.Vinv(k, i)) * z[i];
    }
    // exact reduction into [0, 1)
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), acc.get_num().get_mpz_t(),
               acc.get_den().get_mpz_t());
    acc -= Rational(fl);
    y[k] = num::to_d(acc);
  }
  // One least-squares polish in the original row space: the float targets
  // are inconsistent at rounding level for overdetermined systems, and the
  // unimodular transforms amplify that into the reconstructed witness. A
  // single wrapped-residual correction removes the range-space component.
  Mat Rd(n, m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < m; ++k) Rd(i, k) = num::to_d(sys.R(i, k));
  for (int round = 0; round < 2; ++round) {
    Vec resid(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      double v = Rd.row(i).dot(y) - sys.phi[i];
      resid[i] = v - std::nearbyint(v);
    }
    if (resid.cwiseAbs().maxCoeff() < 1e-15) break;
    Vec delta = Rd.colPivHouseholderQr().solve(Vec(-resid));
    for (Eigen::Index k = 0; k < m; ++k) y[k] = mod1(y[k] + delta[k]);
  }
  out.solvable = true;
  out.y = std::move(y);
  return out;
}

bool moduli_equal(const ExpSum& f, const ExpSum& g, double tol) {
  require_comparable(f, g);
  for (Eigen::Index j = 0; j < f.size(); ++j) {
    double am = std::abs(f.coeff(j)), bm = std::abs(g.coeff(j));
    if ((am == 0.0) != (bm == 0.0)) return false;
    if (std::fabs(am - bm) > tol * (1.0 + am)) return false;
  }
  return true;
}

EquivalenceVerdict bohr_equivalent(const ExpSum& f, const ExpSum& g, double tol) {
  require_comparable(f, g);
  IntegralSystem integral = to_integral(f.system());
  return decide(f, g, tol, f.size(), integral, "bohr");
}

StarReport star_equivalent(const ExpSum& f, const ExpSum& g, double tol) {
  require_comparable(f, g);
  IntegralSystem integral = to_integral(f.system());
  StarReport rep;
  rep.all_equivalent = true;
  for (Eigen::Index n = 1; n <= f.size(); ++n) {
    EquivalenceVerdict v = decide(f, g, tol, n, integral, "star");
    rep.all_equivalent = rep.all_equivalent && v.equivalent;
    rep.prefixes.push_back(std::move(v));
  }
  return rep;
}

ExpSum class_point(const ExpSum& f, const Vec& x) {
  if (x.size() != f.system().generator_count())
    throw std::invalid_argument("phase vector length does not match generator count");
  CVec b(f.size());
  for (Eigen::Index j = 0; j < f.size(); ++j) {
    double ph = 0.0;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
      const Rational& r = f.system().coeff(j)[k];
      if (r == 0) continue;
      ph += num::to_d(r) * x[k];
    }
    b[j] = f.coeff(j) * Complex(std::cos(ph), std::sin(ph));
  }
  return f.with_coeffs(std::move(b));
}

double witness_residual(const ExpSum& f, const ExpSum& g, const Vec& x) {
  ExpSum h = class_point(f, x);
  double worst = 0.0;
  for (Eigen::Index j = 0; j < f.size(); ++j) {
    double am = std::abs(f.coeff(j));
    double r = std::abs(g.coeff(j) - h.coeff(j)) / (1.0 + am);
    worst = std::max(worst, r);
  }
  return worst;
}

}  // namespace bohr
