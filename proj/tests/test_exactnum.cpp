#include "bohr/highprec.hpp"
#include "bohr/intmatrix.hpp"
#include "bohr/rational.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace bohr;

TEST_CASE("rational arithmetic and lcm of denominators") {
  Rational a = parse_rational("1/2"), b = parse_rational("1/3");
  CHECK(rat_add(a, b) == parse_rational("5/6"));

  std::vector<Rational> v1{parse_rational("1/2"), parse_rational("2/3"),
                           parse_rational("5/6")};
  CHECK(lcm_den(std::span<const Rational>(v1)) == 6);

  std::vector<Rational> v2{Rational(3), Rational(-7)};
  CHECK(lcm_den(std::span<const Rational>(v2)) == 1);

  CHECK(format_rational(parse_rational("4/6")) == "2/3");
  CHECK(format_rational(Rational(3)) == "3/1");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("zebra"), std::invalid_argument);
}

TEST_CASE("rational arithmetic is exact on random values") {
  auto g = test::rng(11);
  for (int i = 0; i < 500; ++i) {
    Rational a(test::uniform_int(g, -1000, 1000), test::uniform_int(g, 1, 997));
    Rational b(test::uniform_int(g, -1000, 1000), test::uniform_int(g, 1, 997));
    a.canonicalize();
    b.canonicalize();
    CHECK(rat_add(a, b) - b == a);
    if (b != 0) CHECK(rat_mul(a, b) / b == a);
  }
}

TEST_CASE("pi and integer logs hit reference digits") {
  BigFloat p = hp::pi(200);
  CHECK(std::fabs(p.get_d() - 3.14159265358979323846) < 1e-15);
  CHECK(std::fabs(hp::log_int(2, 200).get_d() - 0.6931471805599453) < 1e-15);
  CHECK(std::fabs(hp::log_int(3, 200).get_d() - 1.0986122886681098) < 1e-15);
  CHECK(std::fabs(hp::log_int(97, 200).get_d() - std::log(97.0)) < 1e-14);
  CHECK(hp::log_int(1, 200) == 0);

  // residues for exactly-representable cases
  Rational tau(3, 2);
  BigFloat c(4.0, 192);
  CHECK(hp::residual_mod1(tau, c, 0.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(hp::residual_mod1(Rational(1, 2), c, 0.5) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("phase reduction survives enormous tau") {
  // tau = j * 2^-20 with ~70-bit j; check against a direct all-hp reference
  Integer j("1208925819614629174706176");  // 2^80
  Rational tau = Rational(j) / Rational(1 << 20);
  BigFloat lg2 = hp::log_int(2, 320);
  double r = hp::mod_two_pi(tau, lg2, 256);
  // reference at even higher precision
  BigFloat x = hp::mul(tau, hp::log_int(2, 512), 512);
  BigFloat tp(0, 512);
  tp = 2 * hp::pi(512);
  BigFloat q(0, 512);
  q = floor(x / tp);
  BigFloat ref(0, 512);
  ref = x - q * tp;
  CHECK(std::fabs(r - ref.get_d()) < 1e-12);
}

TEST_CASE("smith normal form: stated cases") {
  SUBCASE("diag(2,2) is already smith") {
    IMat A(2, 2);
    A << 2, 0, 0, 2;
    SmithDecomposition d = smith_normal_form(A);
    CHECK(d.S(0, 0) == 2);
    CHECK(d.S(1, 1) == 2);
    CHECK(IMat(d.U * d.S * d.V) == A);
  }
  SUBCASE("3x2 with unit invariant factors") {
    IMat A(3, 2);
    A << 1, 0, 0, 1, 1, 1;
    SmithDecomposition d = smith_normal_form(A);
    CHECK(d.rank() == 2);
    CHECK(d.S(0, 0) == 1);
    CHECK(d.S(1, 1) == 1);
    CHECK(d.S(2, 0) == 0);
    CHECK(d.S(2, 1) == 0);
    // oracle: rank 2 and the gcd of all 2x2 minors is 1
    Integer g = 0;
    for (int r0 = 0; r0 < 3; ++r0)
      for (int r1 = r0 + 1; r1 < 3; ++r1) {
        Integer minor = A(r0, 0) * A(r1, 1) - A(r0, 1) * A(r1, 0);
        g = num::gcd(g, minor);
      }
    CHECK(g == 1);
    CHECK(IMat(d.U * d.S * d.V) == A);
  }
  SUBCASE("[[2,4],[6,8]] has invariant factors 2 and 4") {
    IMat A(2, 2);
    A << 2, 4, 6, 8;
    SmithDecomposition d = smith_normal_form(A);
    // oracle: s1 = gcd of entries, s1*s2 = |det|
    Integer g = 0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) g = num::gcd(g, A(i, j));
    Integer det = A(0, 0) * A(1, 1) - A(0, 1) * A(1, 0);
    CHECK(d.S(0, 0) == g);
    CHECK(d.S(0, 0) * d.S(1, 1) == abs(det));
    CHECK(d.S(0, 0) == 2);
    CHECK(d.S(1, 1) == 4);
    CHECK(IMat(d.U * d.S * d.V) == A);
  }
}

TEST_CASE("smith normal form properties on random matrices") {
  auto g = test::rng(23);
  for (int iter = 0; iter < 60; ++iter) {
    int n = static_cast<int>(test::uniform_int(g, 1, 6));
    int m = static_cast<int>(test::uniform_int(g, 1, 6));
    IMat A(n, m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) A(i, j) = test::uniform_int(g, -9, 9);
    SmithDecomposition d = smith_normal_form(A);

    CHECK(IMat(d.U * d.S * d.V) == A);
    CHECK(IMat(d.U * d.Uinv) == identity_imat(n));
    CHECK(IMat(d.V * d.Vinv) == identity_imat(m));
    Eigen::Index dm = std::min(d.S.rows(), d.S.cols());
    for (Eigen::Index t = 0; t < dm; ++t) {
      CHECK(d.S(t, t) >= 0);
      if (t + 1 < dm && d.S(t + 1, t + 1) != 0) {
        CHECK(d.S(t, t) != 0);
        CHECK(d.S(t + 1, t + 1) % d.S(t, t) == 0);
      }
    }
    for (Eigen::Index i = 0; i < d.S.rows(); ++i)
      for (Eigen::Index j = 0; j < d.S.cols(); ++j)
        if (i != j) CHECK(d.S(i, j) == 0);
  }
}

TEST_CASE("exact integer solve via the decomposition") {
  auto g = test::rng(31);
  for (int iter = 0; iter < 40; ++iter) {
    int n = static_cast<int>(test::uniform_int(g, 1, 5));
    int m = static_cast<int>(test::uniform_int(g, 1, 5));
    IMat A(n, m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) A(i, j) = test::uniform_int(g, -7, 7);
    IVec x(m);
    for (int j = 0; j < m; ++j) x[j] = test::uniform_int(g, -5, 5);
    IVec b = A * x;
    auto sol = solve_integer(A, b);
    REQUIRE(sol.has_value());
    CHECK(IVec(A * *sol) == b);
  }
  // an unsolvable system
  IMat A(2, 1);
  A << 2, 4;
  IVec b(2);
  b << 1, 2;
  CHECK(!solve_integer(A, b).has_value());
}
