#pragma once

#include <cstdint>

namespace bergman {

/// Largest n for which n! fits in an unsigned 64-bit integer.
inline constexpr int kExactFactorialLimit = 20;

/// n! as a double. Exact integer table for n <= kExactFactorialLimit,
/// exp(lgamma(n+1)) beyond.
double factorial(int n);

double log_factorial(int n);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// Binomial coefficient in exact 64-bit arithmetic; throws
/// std::overflow_error instead of wrapping.
std::uint64_t binomial(int n, int k);

/// a * b with overflow check.
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

}  // namespace bergman
