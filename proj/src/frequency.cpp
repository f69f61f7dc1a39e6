#include "bohr/frequency.hpp"

#include "bohr/highprec.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace bohr {

namespace {
constexpr int kGeneratorPrec = 192;
}

Generator Generator::make(std::string label, double value,
                          std::string provenance) {
  Generator g;
  g.label = std::move(label);
  g.value = value;
  g.provenance = std::move(provenance);
  // GMP floats cannot carry nonfinite doubles; define() rejects via `value`
  g.value_hp = BigFloat(std::isfinite(value) ? value : 0.0, kGeneratorPrec);
  return g;
}

Generator Generator::make_hp(std::string label, BigFloat value_hp,
                             std::string provenance) {
  Generator g;
  g.label = std::move(label);
  g.value_hp = std::move(value_hp);
  g.value = g.value_hp.get_d();
  g.provenance = std::move(provenance);
  return g;
}

FrequencySystem FrequencySystem::define(std::vector<Generator> generators,
                                        std::vector<QVec> freqs,
                                        Independence independence,
                                        bool allow_zero_frequency) {
  if (generators.empty())
    throw std::invalid_argument("frequency system needs at least one generator");
  std::set<std::string> labels;
  for (const Generator& g : generators) {
    if (!std::isfinite(g.value) || g.value == 0.0)
      throw std::invalid_argument("generator value must be finite and nonzero: " +
                                  g.label);
    if (!labels.insert(g.label).second)
      throw std::invalid_argument("duplicate generator label: " + g.label);
  }
  const Eigen::Index m = static_cast<Eigen::Index>(generators.size());
  for (const QVec& r : freqs) {
    if (r.size() != m)
      throw std::invalid_argument("coefficient vector length does not match generator count");
  }
  for (size_t a = 0; a < freqs.size(); ++a)
    for (size_t b = a + 1; b < freqs.size(); ++b)
      if (freqs[a] == freqs[b])
        throw std::invalid_argument("duplicate frequency coefficient vectors");
  for (const QVec& r : freqs) {
    bool all_zero = true;
    for (Eigen::Index k = 0; k < m; ++k)
      if (r[k] != 0) {
        all_zero = false;
        break;
      }
    if (all_zero && !allow_zero_frequency)
      throw std::invalid_argument("zero frequency vector not allowed in this system");
  }

  FrequencySystem sys;
  sys.gens_ = std::move(generators);
  sys.freqs_ = std::move(freqs);
  sys.indep_ = std::move(independence);
  sys.allow_zero_ = allow_zero_frequency;
  sys.lambda_ = Vec(static_cast<Eigen::Index>(sys.freqs_.size()));
  for (Eigen::Index j = 0; j < sys.frequency_count(); ++j) {
    double v = 0.0;
    BigFloat v_hp(0, kGeneratorPrec);
    for (Eigen::Index k = 0; k < m; ++k) {
      const Rational& r = sys.freqs_[j][k];
      if (r == 0) continue;
      v += num::to_d(r) * sys.gens_[k].value;
      BigFloat rn(r.get_num(), kGeneratorPrec);
      BigFloat rd(r.get_den(), kGeneratorPrec);
      v_hp += rn / rd * sys.gens_[k].value_hp;
    }
    sys.lambda_[j] = v;
    double v_ref = v_hp.get_d();
    if (std::fabs(v - v_ref) > 1e-12 * (1.0 + std::fabs(v_ref)))
      throw std::invalid_argument(
          "cached exponent value disagrees with the high-precision path");
  }
  return sys;
}

bool FrequencySystem::is_integral() const {
  for (const QVec& r : freqs_)
    for (Eigen::Index k = 0; k < r.size(); ++k)
      if (r[k].get_den() != 1) return false;
  return true;
}

Integer FrequencySystem::column_lcm(Eigen::Index k) const {
  Integer l = 1;
  for (const QVec& r : freqs_) l = num::lcm(l, r[k].get_den());
  return l;
}

Integer FrequencySystem::denominator_lcm() const {
  Integer l = 1;
  for (Eigen::Index k = 0; k < generator_count(); ++k)
    l = num::lcm(l, column_lcm(k));
  return l;
}

std::optional<Eigen::Index> FrequencySystem::zero_frequency_index() const {
  for (Eigen::Index j = 0; j < frequency_count(); ++j) {
    bool zero = true;
    for (Eigen::Index k = 0; k < freqs_[j].size(); ++k)
      if (freqs_[j][k] != 0) {
        zero = false;
        break;
      }
    if (zero) return j;
  }
  return std::nullopt;
}

bool FrequencySystem::same_as(const FrequencySystem& other) const {
  if (gens_.size() != other.gens_.size() || freqs_.size() != other.freqs_.size())
    return false;
  for (size_t k = 0; k < gens_.size(); ++k) {
    if (gens_[k].label != other.gens_[k].label) return false;
    if (gens_[k].value != other.gens_[k].value) return false;
  }
  for (size_t j = 0; j < freqs_.size(); ++j)
    if (freqs_[j] != other.freqs_[j]) return false;
  return true;
}

IntegralSystem to_integral(const FrequencySystem& sys) {
  const Eigen::Index m = sys.generator_count();
  std::vector<Integer> q(static_cast<size_t>(m));
  for (Eigen::Index k = 0; k < m; ++k) q[static_cast<size_t>(k)] = sys.column_lcm(k);

  std::vector<Generator> gens;
  gens.reserve(static_cast<size_t>(m));
  for (Eigen::Index k = 0; k < m; ++k) {
    const Generator& g = sys.generator(k);
    const Integer& qk = q[static_cast<size_t>(k)];
    if (qk == 1) {
      gens.push_back(g);
      continue;
    }
    BigFloat scaled(0, kGeneratorPrec);
    scaled = g.value_hp / BigFloat(qk, kGeneratorPrec);
    gens.push_back(Generator::make_hp(
        "(" + g.label + ")/" + qk.get_str(), scaled,
        g.provenance + "; rescaled by 1/" + qk.get_str()));
  }

  std::vector<QVec> freqs;
  freqs.reserve(static_cast<size_t>(sys.frequency_count()));
  for (Eigen::Index j = 0; j < sys.frequency_count(); ++j) {
    QVec r = sys.coeff(j);
    for (Eigen::Index k = 0; k < m; ++k) {
      Rational s(q[static_cast<size_t>(k)]);
      r[k] = r[k] * s;
    }
    freqs.push_back(std::move(r));
  }

  IntegralSystem out;
  out.system = FrequencySystem::define(std::move(gens), std::move(freqs),
                                       sys.independence(),
                                       sys.allow_zero_frequency());
  out.scale_record = std::move(q);
  return out;
}

std::vector<long> primes_upto(long N) {
  std::vector<long> primes;
  if (N < 2) return primes;
  std::vector<bool> composite(static_cast<size_t>(N) + 1, false);
  for (long p = 2; p <= N; ++p) {
    if (composite[static_cast<size_t>(p)]) continue;
    primes.push_back(p);
    for (long q = p * p; q <= N; q += p) composite[static_cast<size_t>(q)] = true;
  }
  return primes;
}

IntegralSystem prime_log_system(long N) {
  if (N < 2) throw std::invalid_argument("prime_log_system: N must be >= 2");
  std::vector<long> primes = primes_upto(N);
  const Eigen::Index m = static_cast<Eigen::Index>(primes.size());

  std::vector<Generator> gens;
  gens.reserve(primes.size());
  for (long p : primes) {
    BigFloat lg(0, kGeneratorPrec);
    lg = -hp::log_int(static_cast<unsigned long>(p), kGeneratorPrec);
    gens.push_back(Generator::make_hp(
        "-log" + std::to_string(p), lg,
        "negative natural log of prime " + std::to_string(p)));
  }

  std::vector<QVec> freqs;
  freqs.reserve(static_cast<size_t>(N));
  for (long n = 1; n <= N; ++n) {
    QVec r(m);
    for (Eigen::Index k = 0; k < m; ++k) r[k] = 0;
    long v = n;
    for (Eigen::Index k = 0; k < m && v > 1; ++k) {
      long p = primes[static_cast<size_t>(k)];
      long e = 0;
      while (v % p == 0) {
        v /= p;
        ++e;
      }
      if (e > 0) r[k] = e;
    }
    freqs.push_back(std::move(r));
  }

  IntegralSystem out;
  out.system = FrequencySystem::define(
      std::move(gens), std::move(freqs),
      Independence{true, "unique factorization of integers"},
      /*allow_zero_frequency=*/true);
  out.scale_record.assign(primes.size(), Integer(1));
  return out;
}

}  // namespace bohr
