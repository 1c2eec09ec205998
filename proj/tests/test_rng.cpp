#include <cmath>

#include "bergman/rng.hpp"
#include "doctest.h"

using namespace bergman;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  // Reference vectors distributed with Random123.
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == Philox4x32Block{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}) ==
        Philox4x32Block{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}) ==
        Philox4x32Block{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams are deterministic and substreams differ") {
  RandomStream a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  RandomStream base(42);
  RandomStream s1 = base.split(1), s1b = base.split(1), s2 = base.split(2);
  CHECK(s1.stream_id() == s1b.stream_id());
  CHECK(s1.stream_id() != s2.stream_id());
  int equal = 0;
  for (int i = 0; i < 100; ++i) equal += s1.next_u32() == s2.next_u32();
  CHECK(equal < 3);
  CHECK(RandomStream(1).next_u64() != RandomStream(2).next_u64());
}

namespace {

struct Moments {
  double mean = 0.0;
  double var = 0.0;
};

template <class F>
Moments moments(F&& draw, int n) {
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = draw();
    s += x;
    s2 += x * x;
  }
  Moments m;
  m.mean = s / n;
  m.var = s2 / n - m.mean * m.mean;
  return m;
}

}  // namespace

TEST_CASE("distribution moments within 5 sigma") {
  const int n = 200000;
  RandomStream rng(7);
  const auto u = moments([&] { return rng.uniform(); }, n);
  CHECK(std::abs(u.mean - 0.5) < 5.0 * std::sqrt(1.0 / 12.0 / n));
  const auto g = moments([&] { return rng.normal(); }, n);
  CHECK(std::abs(g.mean) < 5.0 / std::sqrt(n));
  CHECK(std::abs(g.var - 1.0) < 5.0 * std::sqrt(2.0 / n));
  for (double shape : {0.3, 1.0, 2.5, 7.0}) {
    const auto gm = moments([&] { return rng.gamma(shape); }, n);
    CHECK(std::abs(gm.mean - shape) < 5.0 * std::sqrt(shape / n));
    CHECK(gm.var == doctest::Approx(shape).epsilon(0.05));
  }
  // Beta(2, 3.5): mean 2/5.5
  const auto bt = moments([&] { return rng.beta(2.0, 3.5); }, n);
  const double mb = 2.0 / 5.5;
  const double vb = 2.0 * 3.5 / (5.5 * 5.5 * 6.5);
  CHECK(std::abs(bt.mean - mb) < 5.0 * std::sqrt(vb / n));
  const auto cz = moments([&] { return std::norm(rng.complex_normal()); }, n);
  CHECK(std::abs(cz.mean - 1.0) < 5.0 / std::sqrt(n));
}

TEST_CASE("uniform ranges") {
  RandomStream rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    const double v = rng.uniform_positive();
    CHECK((u >= 0.0 && u < 1.0));
    CHECK((v > 0.0 && v <= 1.0));
  }
}
