#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational scalar support used throughout the library.
 *
 * All order comparisons and certificate extrema are computed on exact
 * rationals (GMP). Logarithms and square roots appear only at the
 * reporting boundary, never inside a comparison that decides a
 * certificate.
 */

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace perron {

using Int = long long;
using Rat = mpq_class;
using BigInt = mpz_class;

/// Canonicalized rational from a numerator/denominator pair.
inline Rat make_rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat make_rat(Int num, Int den) {
    return make_rat(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
}

/// Parses "p/q" or "p" (optionally signed); lowest terms on return.
Rat parse_rat(const std::string& text);

/// Serializes in lowest terms as "p/q", or "p" when the denominator is 1.
std::string rat_to_string(const Rat& q);

/// Largest integer <= q.
BigInt floor_rat(const Rat& q);

/// Smallest integer >= q.
BigInt ceil_rat(const Rat& q);

/// floor/ceil for values known to fit in Int.
Int floor_rat_int(const Rat& q);
Int ceil_rat_int(const Rat& q);

/// Natural log of a positive rational, robust to huge numerators and
/// denominators (splits into mantissa and binary exponent first).
double log_rat(const Rat& q);

inline double rat_to_double(const Rat& q) { return q.get_d(); }

/// Exact rational equal to the given double (doubles are dyadic rationals).
Rat rat_from_double(double x);

/// Formats a real with 12 significant digits (the reporting format).
std::string real_to_string(double x);

}  // namespace perron
