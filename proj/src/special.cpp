#include "bergman/special.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "bergman/errors.hpp"

namespace bergman {
namespace {

constexpr std::array<std::uint64_t, kExactFactorialLimit + 1> make_table() {
  std::array<std::uint64_t, kExactFactorialLimit + 1> t{};
  t[0] = 1;
  for (int i = 1; i <= kExactFactorialLimit; ++i) t[i] = t[i - 1] * static_cast<std::uint64_t>(i);
  return t;
}

constexpr auto kFactorials = make_table();

}  // namespace

double factorial(int n) {
  if (n < 0) throw InputError("factorial of negative integer");
  if (n <= kExactFactorialLimit) return static_cast<double>(kFactorials[n]);
  return std::exp(std::lgamma(static_cast<double>(n) + 1.0));
}

double log_factorial(int n) {
  if (n < 0) throw InputError("factorial of negative integer");
  if (n <= kExactFactorialLimit) return std::log(static_cast<double>(kFactorials[n]));
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw InputError("log_gamma requires a positive argument");
  return std::lgamma(x);
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("64-bit integer overflow");
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  // r_i = C(n-k+i, i) stays integral at every step.
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
    if (r > static_cast<unsigned __int128>(UINT64_MAX)) throw std::overflow_error("binomial coefficient overflows 64 bits");
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace bergman
