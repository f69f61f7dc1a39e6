#pragma once

// Minimal high-precision real routines on top of GMP floats: pi, logarithms
// of positive integers, and reduction of tau*c modulo 2*pi (or mod 1) for
// exact rational tau. Translation numbers found by the lattice search can be
// far too large for double phase arithmetic; these routines keep the reduced
// arguments accurate to well below any tolerance used elsewhere.

#include "bohr/numeric.hpp"

namespace bohr::hp {

// pi to at least prec_bits of precision (Machin's formula, cached).
BigFloat pi(int prec_bits);

// log n for integer n >= 1 (argument reduction + atanh series, cached).
BigFloat log_int(unsigned long n, int prec_bits);

// x reduced into [0, 1): x - floor(x).
BigFloat mod1(const BigFloat& x);

// tau * w computed with enough working precision that the fractional part
// carries ~prec_bits correct bits even when tau has hundreds of bits.
BigFloat mul(const Rational& tau, const BigFloat& w, int prec_bits);

// Distance of tau*c - d to the nearest integer, as a double.
// c is carried in high precision; d is an ordinary double target.
double residual_mod1(const Rational& tau, const BigFloat& c, double d,
                     int prec_bits = 160);

// tau*w mod 2*pi in [0, 2*pi), as a double.
double mod_two_pi(const Rational& tau, const BigFloat& w, int prec_bits = 160);

}  // namespace bohr::hp
