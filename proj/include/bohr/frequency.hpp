#pragma once

// Frequency systems: a declared Q-basis of generators plus exact rational
// coefficient vectors realizing each exponent lambda_j = sum_k r_{j,k} g_k.
// Q-linear independence of the generator values is declared, never verified
// numerically; builders record their justification.

#include "bohr/numeric.hpp"
#include "bohr/rational.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace bohr {

struct Generator {
  std::string label;
  double value = 0.0;
  std::string provenance;
  BigFloat value_hp;  // authoritative value; defaults to the exact double

  static Generator make(std::string label, double value, std::string provenance);
  static Generator make_hp(std::string label, BigFloat value_hp,
                           std::string provenance);
};

struct Independence {
  bool declared = false;
  std::string justification;
};

class FrequencySystem {
 public:
  FrequencySystem() = default;

  // Validates and caches; throws std::invalid_argument on duplicate
  // coefficient vectors, length mismatches, or nonfinite generator values.
  static FrequencySystem define(std::vector<Generator> generators,
                                std::vector<QVec> freqs,
                                Independence independence = {},
                                bool allow_zero_frequency = false);

  Eigen::Index generator_count() const {
    return static_cast<Eigen::Index>(gens_.size());
  }
  Eigen::Index frequency_count() const {
    return static_cast<Eigen::Index>(freqs_.size());
  }
  const Generator& generator(Eigen::Index k) const { return gens_[k]; }
  const std::vector<Generator>& generators() const { return gens_; }
  const QVec& coeff(Eigen::Index j) const { return freqs_[j]; }
  const std::vector<QVec>& coeffs() const { return freqs_; }
  double lambda(Eigen::Index j) const { return lambda_[j]; }
  const Vec& lambdas() const { return lambda_; }
  const Independence& independence() const { return indep_; }
  bool allow_zero_frequency() const { return allow_zero_; }

  bool is_integral() const;
  // lcm of coefficient denominators in column k; 1 on integral columns.
  Integer column_lcm(Eigen::Index k) const;
  // lcm over all coefficients (the q of the translation budget).
  Integer denominator_lcm() const;
  // Index of the zero coefficient vector (the constant term), if present.
  std::optional<Eigen::Index> zero_frequency_index() const;

  // Deep value equality: generators (label + value), coefficients (exact).
  bool same_as(const FrequencySystem& other) const;

 private:
  std::vector<Generator> gens_;
  std::vector<QVec> freqs_;
  Vec lambda_;
  Independence indep_;
  bool allow_zero_ = false;
};

using SystemPtr = std::shared_ptr<const FrequencySystem>;

struct IntegralSystem {
  FrequencySystem system;
  std::vector<Integer> scale_record;  // per-generator divisor q_k applied
};

// Rescales generator k by 1/q_k (q_k = column lcm) so every coefficient is
// an integer; exponent values are unchanged.
IntegralSystem to_integral(const FrequencySystem& sys);

// Generators -log p for primes p <= N; one frequency per n = 1..N with the
// exponent vector of n's factorization (n = 1 is the zero vector / constant).
IntegralSystem prime_log_system(long N);

std::vector<long> primes_upto(long N);

}  // namespace bohr
