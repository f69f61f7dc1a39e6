#include "bohr/rational.hpp"

#include <stdexcept>

namespace bohr {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  Rational x;
  if (mpq_set_str(x.get_mpq_t(), text.c_str(), 10) != 0)
    throw std::invalid_argument("malformed rational literal: " + text);
  if (x.get_den() == 0)
    throw std::invalid_argument("zero denominator in rational literal: " + text);
  x.canonicalize();
  return x;
}

std::string format_rational(const Rational& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Integer lcm_den(std::span<const Rational> values) {
  Integer l = 1;
  for (const Rational& v : values) l = num::lcm(l, v.get_den());
  return l;
}

Integer lcm_den(const QVec& values) {
  Integer l = 1;
  for (Eigen::Index i = 0; i < values.size(); ++i)
    l = num::lcm(l, values[i].get_den());
  return l;
}

}  // namespace bohr
