#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace hopfkit {

// All arithmetic in this library is exact. Int is an arbitrary-precision
// integer, Rat an arbitrary-precision rational. No floating point anywhere.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// q^e for integer e >= 0, with the power-series convention q^0 = 1 (also
// for q = 0).
Rat rat_pow(const Rat& base, unsigned exp);

// Parses "3", "-3", "1/2", "-7/4". Throws std::invalid_argument on
// malformed input or zero denominator.
Rat parse_rat(const std::string& s);

// Renders as "p" for integers, "p/q" otherwise, canonical lowest terms.
std::string rat_str(const Rat& r);

bool is_integer(const Rat& r);

Int factorial(unsigned n);
Int binomial(unsigned n, unsigned k);
Int bell_number(unsigned n);
Int ordered_bell_number(unsigned n);

}  // namespace hopfkit
