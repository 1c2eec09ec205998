#include <algorithm>
#include <set>

#include "bergman/errors.hpp"
#include "bergman/mindex.hpp"
#include "bergman/special.hpp"
#include "doctest.h"

using namespace bergman;

TEST_CASE("kappa_of sums blocks") {
  CHECK(kappa_of(MultiIndex{2, 0, 1}, Partition{1, 2}) == KappaIndex{2, 1});
  CHECK(kappa_of(MultiIndex{0, 0, 0}, Partition{1, 2}) == KappaIndex{0, 0});
  CHECK(kappa_of(MultiIndex{1, 1, 0, 3}, Partition{2, 2}) == KappaIndex{2, 3});
  CHECK_THROWS_AS(kappa_of(MultiIndex{1, 1}, Partition{1, 2}), InputError);
}

TEST_CASE("partition fields") {
  const Partition p{2, 1, 3, 1};
  CHECK(p.n() == 7);
  CHECK(p.m() == 4);
  CHECK(p.h() == 2);
  CHECK(p.offset(2) == 3);
  CHECK(p.block_of(3) == 2);
  CHECK(p.block_of(6) == 3);
  CHECK(p.without(1) == Partition{2, 3, 1});
  CHECK_THROWS_AS(Partition({0, 2}), InputError);
  CHECK_THROWS_AS(Partition(std::vector<int>{}), InputError);
  CHECK_THROWS_AS(MultiIndex({1, -1}), InputError);
}

TEST_CASE("dim_P frozen values") {
  CHECK(dim_P(Partition{1, 2}, KappaIndex{2, 1}) == 2u);
  CHECK(dim_P(Partition{2, 2}, KappaIndex{1, 2}) == 6u);
  CHECK(dim_P(Partition{3, 1, 2}, KappaIndex{0, 0, 0}) == 1u);
}

TEST_CASE("enumerate_basis examples") {
  const auto b1 = enumerate_basis(Partition{1, 2}, KappaIndex{1, 1});
  REQUIRE(b1.size() == 2);
  CHECK(b1.alphas[0] == MultiIndex{1, 1, 0});
  CHECK(b1.alphas[1] == MultiIndex{1, 0, 1});
  const auto b2 = enumerate_basis(Partition{1, 1}, KappaIndex{0, 0});
  REQUIRE(b2.size() == 1);
  CHECK(b2.alphas[0] == MultiIndex{0, 0});
  const auto b3 = enumerate_basis(Partition{2}, KappaIndex{2});
  REQUIRE(b3.size() == 3);
  CHECK(b3.alphas[0] == MultiIndex{2, 0});
  CHECK(b3.alphas[1] == MultiIndex{1, 1});
  CHECK(b3.alphas[2] == MultiIndex{0, 2});
  CHECK(b3.index_of(MultiIndex{1, 1}) == 1);
  CHECK(b3.index_of(MultiIndex{3, 0}) == -1);
}

TEST_CASE("enumerate_kappas examples") {
  const auto k1 = enumerate_kappas(Partition{3}, 2);
  REQUIRE(k1.size() == 3);
  CHECK(k1[2] == KappaIndex{2});
  const auto k2 = enumerate_kappas(Partition{1, 1}, 1);
  REQUIRE(k2.size() == 3);
  CHECK(k2[0] == KappaIndex{0, 0});
  CHECK(k2[1] == KappaIndex{1, 0});
  CHECK(k2[2] == KappaIndex{0, 1});
  CHECK(enumerate_kappas(Partition{2, 2}, 2).size() == 6);
}

TEST_CASE("split_alpha examples") {
  auto [b1, r1] = split_alpha(MultiIndex{2, 0, 1}, Partition{1, 2}, 1);
  CHECK(b1 == std::vector<int>{0, 1});
  CHECK(r1 == std::vector<int>{2});
  auto [b2, r2] = split_alpha(MultiIndex{1, 1, 0, 3}, Partition{2, 2}, 0);
  CHECK(b2 == std::vector<int>{1, 1});
  CHECK(r2 == std::vector<int>{0, 3});
  auto [b3, r3] = split_alpha(MultiIndex{0, 0}, Partition{1, 1}, 0);
  CHECK(b3 == std::vector<int>{0});
  CHECK(r3 == std::vector<int>{0});
  CHECK_THROWS_AS(split_alpha(MultiIndex{0, 0}, Partition{1, 1}, 2), InputError);
}

namespace {

// Brute force: every alpha in {0..deg}^n with the right block sums.
std::vector<MultiIndex> brute_force(const Partition& p, const KappaIndex& kappa) {
  std::vector<MultiIndex> out;
  const int deg = kappa.total();
  std::vector<int> a(static_cast<std::size_t>(p.n()), 0);
  for (;;) {
    const MultiIndex alpha(a);
    if (kappa_of(alpha, p) == kappa) out.push_back(alpha);
    int i = 0;
    while (i < p.n() && ++a[static_cast<std::size_t>(i)] > deg) a[static_cast<std::size_t>(i++)] = 0;
    if (i == p.n()) break;
  }
  return out;
}

}  // namespace

TEST_CASE("basis size, order and partition of each degree") {
  for (const Partition& p : {Partition{1, 2}, Partition{2, 2}, Partition{1, 1, 2}, Partition{3, 1}}) {
    for (const auto& kappa : enumerate_kappas(p, 5)) {
      const auto basis = enumerate_basis(p, kappa);
      CHECK(static_cast<std::uint64_t>(basis.size()) == dim_P(p, kappa));
      const auto brute = brute_force(p, kappa);
      CHECK(brute.size() == basis.alphas.size());
      CHECK(std::is_sorted(basis.alphas.begin(), basis.alphas.end(),
                           [](const MultiIndex& a, const MultiIndex& b) { return graded_lex_less(a, b); }));
      std::set<MultiIndex> unique(basis.alphas.begin(), basis.alphas.end());
      CHECK(unique.size() == basis.alphas.size());
      for (int i = 0; i < basis.size(); ++i) CHECK(basis.index_of(basis.alphas[static_cast<std::size_t>(i)]) == i);
    }
    for (int deg = 0; deg <= 5; ++deg) {
      std::size_t count = 0;
      for (const auto& kappa : enumerate_kappas(p, deg))
        if (kappa.total() == deg) count += enumerate_basis(p, kappa).alphas.size();
      CHECK(count == binomial(p.n() + deg - 1, deg));
    }
  }
}

TEST_CASE("split then join is the identity") {
  const Partition p{2, 1, 2};
  for (const auto& alpha : enumerate_monomials(p, 4))
    for (int j = 0; j < p.m(); ++j) {
      auto [block, rest] = split_alpha(alpha, p, j);
      CHECK(static_cast<int>(block.size()) == p.block_size(j));
      const MultiIndex back = join_alpha(block, rest, p, j);
      CHECK(back == alpha);
      CHECK(kappa_of(back, p) == kappa_of(alpha, p));
    }
}
