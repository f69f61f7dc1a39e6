#pragma once

// Exponential sums sum_j a_j e^{lambda_j p} bound to a frequency system:
// evaluation, vertical translates, certified sup-norm bounds on strips, and
// the product-Fejer approximants used on integral systems.

#include "bohr/frequency.hpp"

#include <complex>

namespace bohr {

enum class Kind { real_variable, complex_variable };

struct Strip {
  double sigma0 = 0.0;
  double sigma1 = 0.0;

  static Strip make(double s0, double s1);
};

struct GridSpec {
  Eigen::Index sigma_points = 64;
  Eigen::Index t_points = 256;
  double t0 = 0.0;
  double t1 = num::two_pi * 50.0;
};

struct SupNormReport {
  double grid_max = 0.0;     // max |f-g| over the sample grid
  double coeff_bound = 0.0;  // rigorous: sum |a_j-b_j| E_j dominates the strip sup
  GridSpec grid;
};

class ExpSum {
 public:
  ExpSum() = default;
  ExpSum(SystemPtr system, CVec coeffs, Kind kind);

  const FrequencySystem& system() const { return *system_; }
  const SystemPtr& system_ptr() const { return system_; }
  const CVec& coeffs() const { return coeffs_; }
  Complex coeff(Eigen::Index j) const { return coeffs_[j]; }
  Kind kind() const { return kind_; }
  Eigen::Index size() const { return coeffs_.size(); }

  ExpSum with_coeffs(CVec coeffs) const { return ExpSum(system_, std::move(coeffs), kind_); }

 private:
  SystemPtr system_;
  CVec coeffs_;
  Kind kind_ = Kind::complex_variable;
};

bool same_system(const ExpSum& f, const ExpSum& g);
void require_comparable(const ExpSum& f, const ExpSum& g);

// f(s) = sum a_j e^{lambda_j s} for the complex-variable kind.
Complex evaluate(const ExpSum& f, Complex s);
// f(t) = sum a_j e^{i lambda_j t} for the real-variable kind.
Complex evaluate(const ExpSum& f, double t);

// Vertical translate: coefficients b_j = a_j e^{i tau lambda_j}.
ExpSum translate(const ExpSum& f, double tau);
// Exact-tau variant; phases are reduced mod 2*pi in high precision, so tau
// may carry hundreds of bits without losing the coefficients.
ExpSum translate(const ExpSum& f, const Rational& tau);

// Per-frequency strip weight E_j = max(e^{lambda_j s0}, e^{lambda_j s1});
// 1 for the real-variable kind.
double strip_weight(double lambda, const Strip& strip, Kind kind);

SupNormReport sup_norm_diff(const ExpSum& f, const ExpSum& g,
                            const Strip& strip, const GridSpec& grid = {});

// Product-Fejer factors p_{j,N} = prod_k max(0, 1 - |r_{j,k}|/(N+1));
// requires an integral system.
Vec bochner_fejer_factors(const FrequencySystem& sys, long order);
ExpSum bochner_fejer(const ExpSum& f, long order);

}  // namespace bohr
