#include "bohr/expsum.hpp"

#include "bohr/highprec.hpp"
#include "bohr/zeta.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace bohr;

namespace {

ExpSum constant_one() {
  std::vector<Generator> gens{Generator::make("one", 1.0, "unit")};
  QVec r(1);
  r << Rational(0);
  auto sys = std::make_shared<FrequencySystem>(FrequencySystem::define(
      std::move(gens), {r}, Independence{true, "trivial"}, true));
  CVec c(1);
  c << Complex(1.0, 0.0);
  return ExpSum(sys, c, Kind::complex_variable);
}

ExpSum two_to_minus_s(double scale = 1.0) {
  std::vector<Generator> gens{
      Generator::make_hp("-log2", BigFloat(-hp::log_int(2, 192)), "log of 2")};
  QVec r(1);
  r << Rational(1);
  auto sys = std::make_shared<FrequencySystem>(
      FrequencySystem::define(std::move(gens), {r}));
  CVec c(1);
  c << Complex(scale, 0.0);
  return ExpSum(sys, c, Kind::complex_variable);
}

}  // namespace

TEST_CASE("evaluate: stated cases") {
  CHECK(std::abs(evaluate(constant_one(), Complex(2.5, 100.0)) - 1.0) < 1e-15);

  ExpSum z3 = zeta_prefix(3);
  Complex v = evaluate(z3, Complex(2.0, 0.0));
  CHECK(v.real() == doctest::Approx(49.0 / 36.0).epsilon(1e-14));
  CHECK(v.imag() == doctest::Approx(0.0));

  // |2^{-s}| on the strip [1.5, 2] is sigma-driven with max 2^{-1.5}
  ExpSum f = two_to_minus_s();
  double worst = 0.0;
  for (double sigma : {1.5, 1.75, 2.0})
    for (double t : {0.0, 3.7, 1000.0})
      worst = std::max(worst, std::abs(evaluate(f, Complex(sigma, t))));
  CHECK(worst == doctest::Approx(std::pow(2.0, -1.5)).epsilon(1e-12));
}

TEST_CASE("translate: stated cases") {
  ExpSum z3 = zeta_prefix(3);
  SUBCASE("tau = 0 is the identity") {
    ExpSum t = translate(z3, 0.0);
    CHECK((t.coeffs() - z3.coeffs()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("tau = 2 pi / log 2 fixes the n=2 coefficient") {
    double tau = num::two_pi / std::log(2.0);
    ExpSum f = two_to_minus_s();
    ExpSum t = translate(f, tau);
    CHECK(std::abs(t.coeff(0) - f.coeff(0)) < 1e-12);
  }
  SUBCASE("zeta prefix: n=3 coefficient rotates by -2 pi log3/log2") {
    double tau = num::two_pi / std::log(2.0);
    ExpSum t = translate(z3, tau);
    // lambda_3 = -log 3, so the rotation angle is -tau log 3
    Complex expected = std::polar(1.0, -tau * std::log(3.0));
    CHECK(std::abs(t.coeff(2) - expected) < 1e-10);
    CHECK(std::abs(t.coeff(1) - z3.coeff(1)) < 1e-10);
  }
}

TEST_CASE("translate is a group action preserving moduli") {
  auto g = test::rng(51);
  SystemPtr sys = test::random_integral_system(g, 3, 8);
  ExpSum f(sys, test::random_coeffs(g, 8), Kind::complex_variable);
  for (int iter = 0; iter < 30; ++iter) {
    double t1 = test::uniform(g, -20.0, 20.0);
    double t2 = test::uniform(g, -20.0, 20.0);
    ExpSum a = translate(translate(f, t1), t2);
    ExpSum b = translate(f, t1 + t2);
    CHECK((a.coeffs() - b.coeffs()).cwiseAbs().maxCoeff() < 1e-12);
    for (Eigen::Index j = 0; j < f.size(); ++j)
      CHECK(std::abs(std::abs(a.coeff(j)) - std::abs(f.coeff(j))) < 1e-12);
  }
}

TEST_CASE("exact-tau translate agrees with the double path for small tau") {
  ExpSum z5 = zeta_prefix(5);
  double tau = 12.625;  // dyadic
  ExpSum a = translate(z5, tau);
  ExpSum b = translate(z5, Rational(tau));
  CHECK((a.coeffs() - b.coeffs()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("sup_norm_diff: stated cases") {
  Strip strip = Strip::make(1.5, 2.0);
  SUBCASE("f = g gives zeros") {
    ExpSum f = two_to_minus_s();
    SupNormReport rep = sup_norm_diff(f, f, strip);
    CHECK(rep.grid_max == 0.0);
    CHECK(rep.coeff_bound == 0.0);
  }
  SUBCASE("f = 2^-s vs -2^-s") {
    ExpSum f = two_to_minus_s(1.0);
    ExpSum gneg = two_to_minus_s(-1.0);
    SupNormReport rep = sup_norm_diff(f, gneg, strip);
    CHECK(rep.coeff_bound == doctest::Approx(2.0 * std::pow(2.0, -1.5)).epsilon(1e-12));
    CHECK(rep.grid_max <= rep.coeff_bound + 1e-9);
    CHECK(rep.grid_max == doctest::Approx(2.0 * std::pow(2.0, -1.5)).epsilon(1e-3));
  }
}

TEST_CASE("grid max never exceeds the coefficient bound") {
  auto g = test::rng(61);
  SystemPtr sys = test::random_integral_system(g, 3, 6);
  Strip strip = Strip::make(-0.5, 0.75);
  for (int iter = 0; iter < 20; ++iter) {
    ExpSum f(sys, test::random_coeffs(g, 6), Kind::complex_variable);
    ExpSum h(sys, test::random_coeffs(g, 6), Kind::complex_variable);
    SupNormReport rep = sup_norm_diff(f, h, strip);
    CHECK(rep.grid_max <= rep.coeff_bound + 1e-9);
  }
}

TEST_CASE("bochner-fejer factors: stated cases") {
  SUBCASE("single generator, r=1, order 1 gives 1/2") {
    ExpSum f = two_to_minus_s();
    Vec p = bochner_fejer_factors(f.system(), 1);
    CHECK(p[0] == doctest::Approx(0.5));
    ExpSum bf = bochner_fejer(f, 1);
    CHECK(std::abs(bf.coeff(0) - Complex(0.5, 0.0)) < 1e-15);
  }
  SUBCASE("all factors positive once the order reaches max |r|") {
    IntegralSystem s = prime_log_system(20);
    auto sys = std::make_shared<FrequencySystem>(s.system);
    long max_r = 4;  // 16 = 2^4 <= 20
    Vec p = bochner_fejer_factors(*sys, max_r);
    for (Eigen::Index j = 0; j < p.size(); ++j) CHECK(p[j] > 0.0);
  }
  SUBCASE("constant term keeps factor 1 at every order") {
    IntegralSystem s = prime_log_system(6);
    for (long order : {0L, 1L, 5L, 50L})
      CHECK(bochner_fejer_factors(s.system, order)[0] == 1.0);
  }
  SUBCASE("non-integral systems are rejected") {
    std::vector<Generator> gens{Generator::make("one", 1.0, "unit")};
    QVec r(1);
    r << Rational(1, 2);
    auto sys = std::make_shared<FrequencySystem>(
        FrequencySystem::define(std::move(gens), {r}));
    ExpSum f(sys, CVec::Constant(1, Complex(1, 0)), Kind::complex_variable);
    CHECK_THROWS_AS(bochner_fejer(f, 3), std::invalid_argument);
  }
}

TEST_CASE("bochner-fejer factors rise monotonically to 1") {
  IntegralSystem s = prime_log_system(30);
  Vec prev = bochner_fejer_factors(s.system, 1);
  for (long order = 2; order <= 64; order *= 2) {
    Vec p = bochner_fejer_factors(s.system, order);
    for (Eigen::Index j = 0; j < p.size(); ++j) {
      CHECK(p[j] >= prev[j] - 1e-15);
      CHECK(p[j] >= 0.0);
      CHECK(p[j] <= 1.0);
    }
    prev = p;
  }
  for (Eigen::Index j = 0; j < prev.size(); ++j) CHECK(1.0 - prev[j] < 0.3);
}
