#pragma once

// Exact q-binomials and the two subspace-counting inequalities. No floating
// point: every comparison is between integers or exact rationals.

#include <cstdint>
#include <span>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "symrank/report.hpp"

namespace symrank {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// prod_{i=1..b} (q^(a-i+1) - 1) / (q^i - 1): the number of b-dimensional
/// subspaces of GF(q)^a.
BigInt gaussian_binomial(std::uint64_t a, std::uint64_t b, std::uint64_t q);

std::string to_string(const Rational& r);

/// For each x: (x^a - 1)/(x^b - 1) < x^(a-b) (1 + x^(1-b)) when x >= 2, and
/// F(x) = gaussian_binomial(a, b, x) < 4 x^((a-b) b) when x >= 4.
VerificationReport check_inequalities(std::uint64_t a, std::uint64_t b,
                                      std::span<const std::uint64_t> xs);

/// All pairs 1 <= b <= a with a <= a_max, b <= b_max, over x in [x_lo, x_hi].
VerificationReport check_inequality_sweep(std::uint64_t a_max, std::uint64_t b_max,
                                          std::uint64_t x_lo, std::uint64_t x_hi);

}  // namespace symrank
