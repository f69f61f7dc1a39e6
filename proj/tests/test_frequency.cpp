#include "bohr/frequency.hpp"

#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace bohr;

namespace {

SystemPtr one_sqrt2_system() {
  std::vector<Generator> gens{Generator::make("one", 1.0, "unit"),
                              Generator::make("sqrt2", std::sqrt(2.0), "surd")};
  std::vector<QVec> freqs;
  QVec r1(2), r2(2), r3(2);
  r1 << Rational(1), Rational(0);
  r2 << Rational(0), Rational(1);
  r3 << Rational(1), Rational(1);
  freqs = {r1, r2, r3};
  return std::make_shared<FrequencySystem>(FrequencySystem::define(
      std::move(gens), std::move(freqs), Independence{true, "sqrt2 irrational"}));
}

}  // namespace

TEST_CASE("define_system: values, duplicates, factorization") {
  SystemPtr sys = one_sqrt2_system();
  CHECK(sys->lambda(0) == doctest::Approx(1.0));
  CHECK(sys->lambda(1) == doctest::Approx(std::sqrt(2.0)));
  CHECK(sys->lambda(2) == doctest::Approx(1.0 + std::sqrt(2.0)));

  SUBCASE("duplicate vectors rejected") {
    std::vector<Generator> gens{Generator::make("one", 1.0, "unit")};
    QVec r(1);
    r << Rational(1);
    std::vector<QVec> freqs{r, r};
    CHECK_THROWS_AS(FrequencySystem::define(std::move(gens), std::move(freqs)),
                    std::invalid_argument);
  }
  SUBCASE("length mismatch rejected") {
    std::vector<Generator> gens{Generator::make("one", 1.0, "unit")};
    QVec r(2);
    r << Rational(1), Rational(0);
    CHECK_THROWS_AS(FrequencySystem::define(std::move(gens), {r}),
                    std::invalid_argument);
  }
  SUBCASE("nonfinite generator rejected") {
    CHECK_THROWS_AS(FrequencySystem::define(
                        {Generator::make("bad", std::nan(""), "x")}, {}),
                    std::invalid_argument);
  }
  SUBCASE("-log12 = 2(-log2) + (-log3)") {
    IntegralSystem ps = prime_log_system(3);
    std::vector<Generator> gens{ps.system.generator(0), ps.system.generator(1)};
    QVec r(2);
    r << Rational(2), Rational(1);
    FrequencySystem sys12 = FrequencySystem::define(std::move(gens), {r});
    CHECK(sys12.lambda(0) == doctest::Approx(-std::log(12.0)).epsilon(1e-14));
  }
}

TEST_CASE("prime_log_system: stated cases") {
  SUBCASE("N=4") {
    IntegralSystem s = prime_log_system(4);
    CHECK(s.system.generator_count() == 2);
    CHECK(s.system.generator(0).label == "-log2");
    CHECK(s.system.generator(1).label == "-log3");
    // frequencies n = 1..4: vectors (0,0), (1,0), (0,1), (2,0)
    CHECK(s.system.frequency_count() == 4);
    CHECK(s.system.coeff(1)[0] == 1);
    CHECK(s.system.coeff(2)[1] == 1);
    CHECK(s.system.coeff(3)[0] == 2);
    CHECK(s.system.zero_frequency_index() == 0);
  }
  SUBCASE("N=12: vector for n=12 over primes 2,3,5,7,11") {
    IntegralSystem s = prime_log_system(12);
    CHECK(s.system.generator_count() == 5);
    const QVec& r12 = s.system.coeff(11);
    CHECK(r12[0] == 2);
    CHECK(r12[1] == 1);
    CHECK(r12[2] == 0);
    CHECK(r12[3] == 0);
    CHECK(r12[4] == 0);
  }
  SUBCASE("N=30 has 10 generators") {
    CHECK(prime_log_system(30).system.generator_count() == 10);
  }
  SUBCASE("N<2 rejected") {
    CHECK_THROWS_AS(prime_log_system(1), std::invalid_argument);
  }
}

TEST_CASE("prime_log_system coefficients reproduce n exactly") {
  IntegralSystem s = prime_log_system(60);
  std::vector<long> primes = primes_upto(60);
  for (long n = 1; n <= 60; ++n) {
    Integer prod = 1;
    const QVec& r = s.system.coeff(n - 1);
    for (Eigen::Index k = 0; k < r.size(); ++k) {
      Integer e = r[k].get_num();
      for (Integer i = 0; i < e; ++i) prod *= primes[static_cast<size_t>(k)];
    }
    CHECK(prod == n);
  }
}

TEST_CASE("to_integral: stated cases and invariants") {
  SUBCASE("already integral: identity, all q_k = 1") {
    IntegralSystem s = prime_log_system(10);
    IntegralSystem t = to_integral(s.system);
    for (const Integer& q : t.scale_record) CHECK(q == 1);
    CHECK(t.system.same_as(s.system));
  }
  SUBCASE("g=1 with coefficients 1/2, 3/2") {
    std::vector<Generator> gens{Generator::make("one", 1.0, "unit")};
    QVec a(1), b(1);
    a << Rational(1, 2);
    b << Rational(3, 2);
    FrequencySystem sys = FrequencySystem::define(std::move(gens), {a, b});
    IntegralSystem t = to_integral(sys);
    CHECK(t.scale_record[0] == 2);
    CHECK(t.system.generator(0).value == doctest::Approx(0.5));
    CHECK(t.system.coeff(0)[0] == 1);
    CHECK(t.system.coeff(1)[0] == 3);
    CHECK(t.system.lambda(0) == doctest::Approx(sys.lambda(0)).epsilon(1e-12));
    CHECK(t.system.lambda(1) == doctest::Approx(sys.lambda(1)).epsilon(1e-12));
  }
  SUBCASE("generators {1, sqrt2}, coefficient (1/2, 1/3)") {
    std::vector<Generator> gens{Generator::make("one", 1.0, "unit"),
                                Generator::make("sqrt2", std::sqrt(2.0), "surd")};
    QVec r(2);
    r << Rational(1, 2), Rational(1, 3);
    FrequencySystem sys = FrequencySystem::define(std::move(gens), {r});
    IntegralSystem t = to_integral(sys);
    CHECK(t.scale_record[0] == 2);
    CHECK(t.scale_record[1] == 3);
    CHECK(t.system.generator(0).value == doctest::Approx(0.5));
    CHECK(t.system.generator(1).value == doctest::Approx(std::sqrt(2.0) / 3.0));
    CHECK(t.system.coeff(0)[0] == 1);
    CHECK(t.system.coeff(0)[1] == 1);
  }
}

TEST_CASE("to_integral preserves every exponent value on random systems") {
  auto g = test::rng(41);
  for (int iter = 0; iter < 25; ++iter) {
    int m = static_cast<int>(test::uniform_int(g, 1, 4));
    int n = static_cast<int>(test::uniform_int(g, 1, 8));
    std::vector<Generator> gens;
    for (int k = 0; k < m; ++k)
      gens.push_back(Generator::make("g" + std::to_string(k),
                                     test::uniform(g, 0.2, 3.0), "test"));
    std::vector<QVec> freqs;
    while (static_cast<int>(freqs.size()) < n) {
      QVec r(m);
      bool nz = false;
      for (int k = 0; k < m; ++k) {
        r[k] = Rational(test::uniform_int(g, -6, 6),
                        test::uniform_int(g, 1, 6));
        r[k].canonicalize();
        if (r[k] != 0) nz = true;
      }
      if (!nz) continue;
      bool dup = false;
      for (const QVec& p : freqs)
        if (p == r) dup = true;
      if (!dup) freqs.push_back(r);
    }
    FrequencySystem sys = FrequencySystem::define(std::move(gens), freqs);
    IntegralSystem t = to_integral(sys);
    CHECK(t.system.is_integral());
    for (Eigen::Index j = 0; j < sys.frequency_count(); ++j)
      CHECK(std::fabs(t.system.lambda(j) - sys.lambda(j)) <=
            1e-12 * (1.0 + std::fabs(sys.lambda(j))));
  }
}
