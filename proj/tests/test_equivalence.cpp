#include "bohr/equivalence.hpp"

#include "bohr/zeta.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace bohr;

namespace {

SystemPtr sqrt2_real_system() {
  std::vector<Generator> gens{Generator::make("one", 1.0, "unit"),
                              Generator::make("sqrt2", std::sqrt(2.0), "surd")};
  QVec r1(2), r2(2);
  r1 << Rational(1), Rational(0);
  r2 << Rational(0), Rational(1);
  return std::make_shared<FrequencySystem>(FrequencySystem::define(
      std::move(gens), {r1, r2}, Independence{true, "sqrt2 irrational"}));
}

}  // namespace

TEST_CASE("moduli_equal: stated cases") {
  auto g = test::rng(71);
  SystemPtr sys = test::random_integral_system(g, 2, 2);
  CVec a(2), b(2);
  a << Complex(1, 0), Complex(1, 0);
  b << Complex(1, 0), Complex(2, 0);
  ExpSum f(sys, a, Kind::complex_variable);
  ExpSum h(sys, b, Kind::complex_variable);
  CHECK(moduli_equal(f, f, 1e-9));
  CHECK(!moduli_equal(f, h, 1e-9));

  LiouvilleSieve sieve(16);
  auto zsys = std::make_shared<FrequencySystem>(prime_log_system(10).system);
  CHECK(moduli_equal(zeta_prefix(10, zsys), liouville_prefix(10, sieve, zsys), 1e-9));
}

TEST_CASE("solve_phase_congruence: stated cases") {
  SUBCASE("identity system") {
    IMat R(2, 2);
    R << 1, 0, 0, 1;
    Vec phi(2);
    phi << 0.25, 0.25;
    CongruenceSolution sol = solve_phase_congruence({R, phi, 1e-9});
    REQUIRE(sol.solvable);
    CHECK(sol.y[0] == doctest::Approx(0.25));
    CHECK(sol.y[1] == doctest::Approx(0.25));
  }
  SUBCASE("consistent third row") {
    IMat R(3, 2);
    R << 1, 0, 0, 1, 1, 1;
    Vec phi(3);
    phi << 0.25, 0.25, 0.5;
    CongruenceSolution sol = solve_phase_congruence({R, phi, 1e-9});
    REQUIRE(sol.solvable);
    CHECK(sol.y[0] == doctest::Approx(0.25));
    CHECK(sol.y[1] == doctest::Approx(0.25));
  }
  SUBCASE("inconsistent third row yields the obstruction (1,1,-1)") {
    IMat R(3, 2);
    R << 1, 0, 0, 1, 1, 1;
    Vec phi(3);
    phi << 0.25, 0.25, 0.4;
    CongruenceSolution sol = solve_phase_congruence({R, phi, 1e-9});
    REQUIRE(!sol.solvable);
    REQUIRE(sol.obstruction.has_value());
    const IVec& u = *sol.obstruction;
    // u R = 0 and u . phi = 0.1 (mod 1) away from an integer
    IVec uR = R.transpose() * u;
    CHECK(uR[0] == 0);
    CHECK(uR[1] == 0);
    double uphi = 0;
    for (int i = 0; i < 3; ++i) uphi += num::to_d(u[i]) * phi[i];
    CHECK(num::dist_to_int(uphi) == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(u[0] == 1);
    CHECK(u[1] == 1);
    CHECK(u[2] == -1);
  }
  SUBCASE("brute grid confirms unsolvability of the 0.4 case") {
    // scan x in [0, 2 pi)^2 at step 1e-3 radians: nothing beats tolerance
    IMat R(3, 2);
    R << 1, 0, 0, 1, 1, 1;
    Vec phi(3);
    phi << 0.25, 0.25, 0.4;
    double best = 1.0;
    const double step = 1e-3 / num::two_pi;  // mod-1 units
    for (double y0 = 0; y0 < 1.0; y0 += step) {
      // rows 0 and 1 pin y0, y1 near phi0, phi1; only scan near them
      if (std::fabs(y0 - 0.25) > 0.02) continue;
      for (double y1 = 0.23; y1 < 0.27; y1 += step) {
        double worst = std::max(
            {num::dist_to_int(y0 - 0.25), num::dist_to_int(y1 - 0.25),
             num::dist_to_int(y0 + y1 - 0.4)});
        best = std::min(best, worst);
      }
    }
    CHECK(best > 0.03);  // far above any reasonable tolerance
  }
  SUBCASE("tol must be positive") {
    IMat R(1, 1);
    R << 1;
    Vec phi(1);
    phi << 0.5;
    CHECK_THROWS_AS(solve_phase_congruence({R, phi, 0.0}), std::invalid_argument);
  }
}

TEST_CASE("bohr_equivalent: stated cases") {
  SUBCASE("translates are equivalent with witness tau*g") {
    auto g = test::rng(81);
    SystemPtr sys = test::random_integral_system(g, 3, 7);
    ExpSum f(sys, test::random_coeffs(g, 7), Kind::complex_variable);
    double tau = 3.25;
    ExpSum ft = translate(f, tau);
    EquivalenceVerdict v = bohr_equivalent(f, ft);
    REQUIRE(v.equivalent);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness_residual <= 1e-9);
    // the witness need not literally be tau*g, but tau*g must verify too
    Vec xg(sys->generator_count());
    for (Eigen::Index k = 0; k < xg.size(); ++k) xg[k] = tau * sys->generator(k).value;
    CHECK(witness_residual(f, ft, xg) <= 1e-9);
  }
  SUBCASE("sign flip on e^{it}+e^{i sqrt2 t} has witness (pi, pi)") {
    SystemPtr sys = sqrt2_real_system();
    CVec a(2), b(2);
    a << Complex(1, 0), Complex(1, 0);
    b << Complex(-1, 0), Complex(-1, 0);
    ExpSum f(sys, a, Kind::real_variable);
    ExpSum h(sys, b, Kind::real_variable);
    EquivalenceVerdict v = bohr_equivalent(f, h);
    REQUIRE(v.equivalent);
    CHECK(v.witness->x[0] == doctest::Approx(num::pi).epsilon(1e-12));
    CHECK(v.witness->x[1] == doctest::Approx(num::pi).epsilon(1e-12));
  }
  SUBCASE("zeta vs liouville prefixes: witness (pi,pi,pi,pi)") {
    LiouvilleSieve sieve(16);
    auto sys = std::make_shared<FrequencySystem>(prime_log_system(10).system);
    ExpSum z = zeta_prefix(10, sys);
    ExpSum l = liouville_prefix(10, sieve, sys);
    EquivalenceVerdict v = bohr_equivalent(z, l);
    REQUIRE(v.equivalent);
    REQUIRE(v.witness.has_value());
    const Vec& x = v.witness->x;
    REQUIRE(x.size() == 4);
    for (Eigen::Index k = 0; k < 4; ++k)
      CHECK(x[k] == doctest::Approx(num::pi).epsilon(1e-12));
    // direct check through lambda(n) = (-1)^Omega(n)
    CHECK(v.witness_residual <= 1e-12);
  }
  SUBCASE("modulus mismatch is its own verdict, no obstruction") {
    auto g = test::rng(82);
    SystemPtr sys = test::random_integral_system(g, 2, 2);
    CVec a(2), b(2);
    a << Complex(1, 0), Complex(1, 0);
    b << Complex(1, 0), Complex(2, 0);
    EquivalenceVerdict v = bohr_equivalent(ExpSum(sys, a, Kind::complex_variable),
                                           ExpSum(sys, b, Kind::complex_variable));
    CHECK(!v.equivalent);
    CHECK(!v.witness.has_value());
    CHECK(!v.obstruction.has_value());
    CHECK(v.detail == "modulus mismatch at j=2");
  }
}

TEST_CASE("class_point: stated cases") {
  auto g = test::rng(91);
  SystemPtr sys = test::random_integral_system(g, 3, 6);
  ExpSum f(sys, test::random_coeffs(g, 6), Kind::complex_variable);
  SUBCASE("x = 0 is the identity") {
    ExpSum h = class_point(f, Vec::Zero(3));
    CHECK((h.coeffs() - f.coeffs()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("class_point(f, tau g) equals translate(f, tau)") {
    double tau = -1.75;
    Vec xg(3);
    for (int k = 0; k < 3; ++k) xg[k] = tau * sys->generator(k).value;
    ExpSum a = class_point(f, xg);
    ExpSum b = translate(f, tau);
    CHECK((a.coeffs() - b.coeffs()).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("class_point at (pi,...,pi) maps zeta prefix to liouville prefix") {
    LiouvilleSieve sieve(32);
    auto zsys = std::make_shared<FrequencySystem>(prime_log_system(20).system);
    ExpSum z = zeta_prefix(20, zsys);
    ExpSum l = liouville_prefix(20, sieve, zsys);
    Vec x = Vec::Constant(zsys->generator_count(), num::pi);
    ExpSum h = class_point(z, x);
    CHECK((h.coeffs() - l.coeffs()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("star_equivalent: stated cases") {
  auto g = test::rng(101);
  SystemPtr sys = test::random_integral_system(g, 3, 8);
  ExpSum f(sys, test::random_coeffs(g, 8), Kind::complex_variable);
  SUBCASE("self-comparison passes every prefix with witness 0") {
    StarReport rep = star_equivalent(f, f);
    CHECK(rep.all_equivalent);
    CHECK(rep.prefixes.size() == 8);
    for (const EquivalenceVerdict& v : rep.prefixes) {
      CHECK(v.equivalent);
      CHECK(v.witness->x.cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SUBCASE("star agrees with bohr on integral systems, randomized") {
    for (int iter = 0; iter < 100; ++iter) {
      ExpSum f2(sys, test::random_coeffs(g, 8), Kind::complex_variable);
      Vec x = test::random_phases(g, 3, num::two_pi);
      ExpSum h = class_point(f2, x);
      // sometimes perturb one modulus to force a negative verdict
      bool perturbed = iter % 3 == 0;
      if (perturbed) {
        CVec c = h.coeffs();
        c[static_cast<Eigen::Index>(iter % 8)] *= 1.001;
        h = h.with_coeffs(std::move(c));
      }
      EquivalenceVerdict b = bohr_equivalent(f2, h, 1e-6);
      StarReport s = star_equivalent(f2, h, 1e-6);
      CHECK(b.equivalent == s.all_equivalent);
    }
  }
  SUBCASE("modulus mismatch at j=3: prefixes 1,2 pass, later fail") {
    CVec a(8);
    for (int j = 0; j < 8; ++j) a[j] = Complex(1.0, 0.0);
    CVec b = a;
    b[2] = Complex(2.0, 0.0);
    ExpSum fa(sys, a, Kind::complex_variable);
    ExpSum fb(sys, b, Kind::complex_variable);
    StarReport rep = star_equivalent(fa, fb);
    CHECK(!rep.all_equivalent);
    CHECK(rep.prefixes[0].equivalent);
    CHECK(rep.prefixes[1].equivalent);
    for (size_t n = 2; n < rep.prefixes.size(); ++n)
      CHECK(!rep.prefixes[n].equivalent);
  }
}

TEST_CASE("equivalence axioms and completeness on random instances") {
  auto g = test::rng(111);
  for (int iter = 0; iter < 60; ++iter) {
    int m = static_cast<int>(test::uniform_int(g, 1, 4));
    int n = static_cast<int>(test::uniform_int(g, 1, 10));
    SystemPtr sys = test::random_integral_system(g, m, n);
    ExpSum f(sys, test::random_coeffs(g, n), Kind::complex_variable);
    Vec x = test::random_phases(g, m, num::two_pi);
    ExpSum h = class_point(f, x);

    // completeness on consistently generated targets
    EquivalenceVerdict v = bohr_equivalent(f, h);
    REQUIRE(v.equivalent);
    // soundness, checked independently of the solver
    CHECK(witness_residual(f, h, v.witness->x) <= 1e-9);

    // reflexive / symmetric / transitive with tolerance composition
    EquivalenceVerdict refl = bohr_equivalent(f, f);
    CHECK(refl.equivalent);
    CHECK(witness_residual(f, f, Vec::Zero(m)) == 0.0);
    CHECK(witness_residual(h, f, Vec(-v.witness->x)) <= 2e-9);

    Vec x2 = test::random_phases(g, m, num::two_pi);
    ExpSum h2 = class_point(h, x2);
    EquivalenceVerdict v2 = bohr_equivalent(h, h2);
    REQUIRE(v2.equivalent);
    CHECK(witness_residual(f, h2, Vec(v.witness->x + v2.witness->x)) <= 2e-9);

    // scale invariance: c*f ~ c*h with the same witness
    Complex c = std::polar(test::uniform(g, 0.25, 3.0), test::uniform(g, 0.0, 6.28));
    ExpSum cf = f.with_coeffs(CVec(c * f.coeffs()));
    ExpSum ch = h.with_coeffs(CVec(c * h.coeffs()));
    EquivalenceVerdict vc = bohr_equivalent(cf, ch);
    CHECK(vc.equivalent);
    CHECK(witness_residual(cf, ch, v.witness->x) <= 1e-9);
  }
}

TEST_CASE("perturbed moduli flip the verdict") {
  auto g = test::rng(121);
  for (int iter = 0; iter < 40; ++iter) {
    int m = static_cast<int>(test::uniform_int(g, 1, 4));
    int n = static_cast<int>(test::uniform_int(g, 2, 10));
    SystemPtr sys = test::random_integral_system(g, m, n);
    ExpSum f(sys, test::random_coeffs(g, n), Kind::complex_variable);
    ExpSum h = class_point(f, test::random_phases(g, m, num::two_pi));
    CVec c = h.coeffs();
    Eigen::Index idx = test::uniform_int(g, 0, n - 1);
    c[idx] *= (1.0 + 1e-3);
    EquivalenceVerdict v = bohr_equivalent(f, h.with_coeffs(std::move(c)));
    CHECK(!v.equivalent);
  }
}
