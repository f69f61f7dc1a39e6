#include "bohr/expsum.hpp"

#include "bohr/highprec.hpp"

#include <cmath>
#include <stdexcept>

namespace bohr {

Strip Strip::make(double s0, double s1) {
  if (!std::isfinite(s0) || !std::isfinite(s1) || s0 > s1)
    throw std::invalid_argument("strip bounds must be finite with sigma0 <= sigma1");
  return Strip{s0, s1};
}

ExpSum::ExpSum(SystemPtr system, CVec coeffs, Kind kind)
    : system_(std::move(system)), coeffs_(std::move(coeffs)), kind_(kind) {
  if (!system_) throw std::invalid_argument("exp sum needs a frequency system");
  if (coeffs_.size() != system_->frequency_count())
    throw std::invalid_argument("coefficient count does not match frequency count");
}

bool same_system(const ExpSum& f, const ExpSum& g) {
  if (f.system_ptr() == g.system_ptr()) return true;
  return f.system().same_as(g.system());
}

void require_comparable(const ExpSum& f, const ExpSum& g) {
  if (!same_system(f, g))
    throw std::invalid_argument("exp sums are bound to different frequency systems");
  if (f.kind() != g.kind())
    throw std::invalid_argument("exp sums have different variable kinds");
}

Complex evaluate(const ExpSum& f, Complex s) {
  if (f.kind() != Kind::complex_variable)
    throw std::invalid_argument("complex evaluation point on a real-variable sum");
  Complex acc(0.0, 0.0);
  for (Eigen::Index j = 0; j < f.size(); ++j) {
    double lam = f.system().lambda(j);
    double mod = std::exp(lam * s.real());
    double ph = lam * s.imag();
    acc += f.coeff(j) * Complex(mod * std::cos(ph), mod * std::sin(ph));
  }
  return acc;
}

Complex evaluate(const ExpSum& f, double t) {
  if (f.kind() != Kind::real_variable)
    throw std::invalid_argument("real evaluation point on a complex-variable sum");
  Complex acc(0.0, 0.0);
  for (Eigen::Index j = 0; j < f.size(); ++j) {
    double ph = f.system().lambda(j) * t;
    acc += f.coeff(j) * Complex(std::cos(ph), std::sin(ph));
  }
  return acc;
}

ExpSum translate(const ExpSum& f, double tau) {
  CVec b(f.size());
  for (Eigen::Index j = 0; j < f.size(); ++j) {
    double ph = tau * f.system().lambda(j);
    b[j] = f.coeff(j) * Complex(std::cos(ph), std::sin(ph));
  }
  return f.with_coeffs(std::move(b));
}

ExpSum translate(const ExpSum& f, const Rational& tau) {
  const FrequencySystem& sys = f.system();
  const Eigen::Index m = sys.generator_count();
  constexpr int prec = 192;
  // Reduce tau * lambda_j mod 2*pi generator by generator when coefficients
  // are integral (the common large-tau path), else per frequency.
  CVec b(f.size());
  if (sys.is_integral()) {
    std::vector<double> omega(static_cast<size_t>(m));
    for (Eigen::Index k = 0; k < m; ++k)
      omega[static_cast<size_t>(k)] =
          hp::mod_two_pi(tau, sys.generator(k).value_hp, prec);
    for (Eigen::Index j = 0; j < f.size(); ++j) {
      double ph = 0.0;
      for (Eigen::Index k = 0; k < m; ++k) {
        const Rational& r = sys.coeff(j)[k];
        if (r == 0) continue;
        ph += num::to_d(r) * omega[static_cast<size_t>(k)];
      }
      b[j] = f.coeff(j) * Complex(std::cos(ph), std::sin(ph));
    }
  } else {
    for (Eigen::Index j = 0; j < f.size(); ++j) {
      BigFloat lam(0, prec);
      for (Eigen::Index k = 0; k < m; ++k) {
        const Rational& r = sys.coeff(j)[k];
        if (r == 0) continue;
        BigFloat rn(r.get_num(), prec), rd(r.get_den(), prec);
        lam += rn / rd * sys.generator(k).value_hp;
      }
      double ph = hp::mod_two_pi(tau, lam, prec);
      b[j] = f.coeff(j) * Complex(std::cos(ph), std::sin(ph));
    }
  }
  return f.with_coeffs(std::move(b));
}

double strip_weight(double lambda, const Strip& strip, Kind kind) {
  if (kind == Kind::real_variable) return 1.0;
  return std::max(std::exp(lambda * strip.sigma0), std::exp(lambda * strip.sigma1));
}

SupNormReport sup_norm_diff(const ExpSum& f, const ExpSum& g,
                            const Strip& strip, const GridSpec& grid) {
  require_comparable(f, g);
  SupNormReport rep;
  rep.grid = grid;
  CVec d = f.coeffs() - g.coeffs();
  for (Eigen::Index j = 0; j < d.size(); ++j)
    rep.coeff_bound += std::abs(d[j]) * strip_weight(f.system().lambda(j), strip, f.kind());

  ExpSum diff = f.with_coeffs(std::move(d));
  double worst = 0.0;
  if (f.kind() == Kind::complex_variable) {
    for (Eigen::Index i = 0; i < grid.sigma_points; ++i) {
      double sigma =
          (grid.sigma_points == 1)
              ? strip.sigma0
              : strip.sigma0 + (strip.sigma1 - strip.sigma0) * i / (grid.sigma_points - 1);
      for (Eigen::Index l = 0; l < grid.t_points; ++l) {
        double t = grid.t0 + (grid.t1 - grid.t0) * l / std::max<Eigen::Index>(grid.t_points - 1, 1);
        worst = std::max(worst, std::abs(evaluate(diff, Complex(sigma, t))));
      }
    }
  } else {
    Eigen::Index samples = grid.sigma_points * grid.t_points;
    for (Eigen::Index l = 0; l < samples; ++l) {
      double t = grid.t0 + (grid.t1 - grid.t0) * l / std::max<Eigen::Index>(samples - 1, 1);
      worst = std::max(worst, std::abs(evaluate(diff, t)));
    }
  }
  rep.grid_max = worst;
  return rep;
}

Vec bochner_fejer_factors(const FrequencySystem& sys, long order) {
  if (order < 0) throw std::invalid_argument("bochner_fejer: order must be >= 0");
  if (!sys.is_integral())
    throw std::invalid_argument("bochner_fejer requires an integral system");
  Vec p(sys.frequency_count());
  const double denom = static_cast<double>(order) + 1.0;
  for (Eigen::Index j = 0; j < sys.frequency_count(); ++j) {
    double factor = 1.0;
    for (Eigen::Index k = 0; k < sys.generator_count(); ++k) {
      const Rational& r = sys.coeff(j)[k];
      if (r == 0) continue;
      double a = std::fabs(num::to_d(r));
      factor *= std::max(0.0, 1.0 - a / denom);
      if (factor == 0.0) break;
    }
    p[j] = factor;
  }
  return p;
}

ExpSum bochner_fejer(const ExpSum& f, long order) {
  Vec p = bochner_fejer_factors(f.system(), order);
  CVec b(f.size());
  for (Eigen::Index j = 0; j < f.size(); ++j) b[j] = p[j] * f.coeff(j);
  return f.with_coeffs(std::move(b));
}

}  // namespace bohr
