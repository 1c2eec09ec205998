#pragma once

// Partitions of n, multi-index combinatorics and the monomial bases of the
// isotypic slices P_kappa(C^n).
//
// Ordering convention used everywhere a list of indices is produced:
// graded lexicographic, i.e. ascending total degree and, within one degree,
// lexicographically descending ((1,0) before (0,1)). Inside a fixed kappa
// every alpha has the same degree, so the basis order is plain descending
// lex; this makes the basis of P_kappa the row-major product of the
// per-block bases, which the tensor identifications rely on.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace bergman {

/// Non-negative integer vector with a phantom tag so monomial exponents and
/// isotypic labels cannot be mixed up.
template <class Tag>
class IndexVector {
 public:
  IndexVector() = default;
  explicit IndexVector(std::vector<int> entries);
  IndexVector(std::initializer_list<int> entries) : IndexVector(std::vector<int>(entries)) {}

  static IndexVector zeros(int size) { return IndexVector(std::vector<int>(static_cast<std::size_t>(size), 0)); }

  int size() const { return static_cast<int>(e_.size()); }
  int operator[](int i) const { return e_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& values() const { return e_; }
  auto begin() const { return e_.begin(); }
  auto end() const { return e_.end(); }

  /// |v| = sum of entries.
  int total() const;

  friend bool operator==(const IndexVector&, const IndexVector&) = default;
  friend auto operator<=>(const IndexVector&, const IndexVector&) = default;

 private:
  std::vector<int> e_;
};

struct MultiIndexTag;
struct KappaIndexTag;
using MultiIndex = IndexVector<MultiIndexTag>;  // alpha in N^n
using KappaIndex = IndexVector<KappaIndexTag>;  // kappa in N^m

/// Strict weak order implementing the graded-lex convention above.
template <class Tag>
bool graded_lex_less(const IndexVector<Tag>& a, const IndexVector<Tag>& b);

/// alpha! = prod alpha_i!
double factorial(const MultiIndex& alpha);

template <class Tag>
std::string to_string(const IndexVector<Tag>& v);

/// Ordered partition k = (k_1, ..., k_m) of n. Sortedness is not required.
class Partition {
 public:
  explicit Partition(std::vector<int> k);
  Partition(std::initializer_list<int> k) : Partition(std::vector<int>(k)) {}

  const std::vector<int>& k() const { return k_; }
  int n() const { return n_; }
  int m() const { return static_cast<int>(k_.size()); }
  /// Number of unit blocks.
  int h() const { return h_; }
  int block_size(int j) const;
  /// First coordinate of block j in z = (z_(1), ..., z_(m)).
  int offset(int j) const;
  /// Block containing coordinate i.
  int block_of(int i) const;

  /// The partition with block j removed (k with hat j).
  Partition without(int j) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> k_;
  std::vector<int> offsets_;
  int n_ = 0;
  int h_ = 0;
};

std::string to_string(const Partition& p);

/// kappa_j = |alpha_(j)|.
KappaIndex kappa_of(const MultiIndex& alpha, const Partition& p);

/// dim P_kappa(C^n) = prod_j C(k_j + kappa_j - 1, kappa_j), exact.
std::uint64_t dim_P(const Partition& p, const KappaIndex& kappa);

/// All alpha in N^size with |alpha| = degree, descending lex.
std::vector<std::vector<int>> compositions(int size, int degree);

/// Ordered monomial basis of P_kappa(C^n).
struct BasisP {
  Partition partition{1};
  KappaIndex kappa;
  std::vector<MultiIndex> alphas;

  int size() const { return static_cast<int>(alphas.size()); }
  /// Position of alpha in the basis, or -1.
  int index_of(const MultiIndex& alpha) const;
};

BasisP enumerate_basis(const Partition& p, const KappaIndex& kappa);

/// All kappa in N^m with |kappa| <= degree, graded-lex.
std::vector<KappaIndex> enumerate_kappas(const Partition& p, int degree);

/// All alpha in N^n with |alpha| <= degree, grouped by kappa in
/// enumerate_kappas order and by basis order inside each kappa.
std::vector<MultiIndex> enumerate_monomials(const Partition& p, int degree);

/// (alpha_(j), alpha with block j removed). Blocks are 0-based.
std::pair<std::vector<int>, std::vector<int>> split_alpha(const MultiIndex& alpha, const Partition& p, int j);

/// Inverse of split_alpha.
MultiIndex join_alpha(const std::vector<int>& block, const std::vector<int>& rest, const Partition& p, int j);

}  // namespace bergman
