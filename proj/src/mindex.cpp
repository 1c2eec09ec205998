#include "bergman/mindex.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "bergman/errors.hpp"
#include "bergman/special.hpp"

namespace bergman {

template <class Tag>
IndexVector<Tag>::IndexVector(std::vector<int> entries) : e_(std::move(entries)) {
  for (int v : e_)
    if (v < 0) throw InputError("index vectors must have non-negative entries");
}

template <class Tag>
int IndexVector<Tag>::total() const {
  return std::accumulate(e_.begin(), e_.end(), 0);
}

template <class Tag>
bool graded_lex_less(const IndexVector<Tag>& a, const IndexVector<Tag>& b) {
  const int ta = a.total();
  const int tb = b.total();
  if (ta != tb) return ta < tb;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

template <class Tag>
std::string to_string(const IndexVector<Tag>& v) {
  std::ostringstream os;
  os << '(';
  for (int i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

template class IndexVector<MultiIndexTag>;
template class IndexVector<KappaIndexTag>;
template bool graded_lex_less(const MultiIndex&, const MultiIndex&);
template bool graded_lex_less(const KappaIndex&, const KappaIndex&);
template std::string to_string(const MultiIndex&);
template std::string to_string(const KappaIndex&);

double factorial(const MultiIndex& alpha) {
  double out = 1.0;
  for (int a : alpha) out *= factorial(a);
  return out;
}

Partition::Partition(std::vector<int> k) : k_(std::move(k)) {
  if (k_.empty()) throw InputError("partition must have at least one block");
  offsets_.reserve(k_.size());
  for (int kj : k_) {
    if (kj < 1) throw InputError("partition blocks must be positive");
    offsets_.push_back(n_);
    n_ += kj;
    if (kj == 1) ++h_;
  }
}

int Partition::block_size(int j) const {
  if (j < 0 || j >= m()) throw InputError("block index out of range");
  return k_[static_cast<std::size_t>(j)];
}

int Partition::offset(int j) const {
  if (j < 0 || j >= m()) throw InputError("block index out of range");
  return offsets_[static_cast<std::size_t>(j)];
}

int Partition::block_of(int i) const {
  if (i < 0 || i >= n_) throw InputError("coordinate index out of range");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), i);
  return static_cast<int>(it - offsets_.begin()) - 1;
}

Partition Partition::without(int j) const {
  if (m() < 2) throw InputError("cannot remove the only block of a partition");
  std::vector<int> rest;
  for (int l = 0; l < m(); ++l)
    if (l != j) rest.push_back(k_[static_cast<std::size_t>(l)]);
  return Partition(std::move(rest));
}

std::string to_string(const Partition& p) {
  std::ostringstream os;
  os << '(';
  for (int j = 0; j < p.m(); ++j) os << (j ? "," : "") << p.k()[static_cast<std::size_t>(j)];
  os << ')';
  return os.str();
}

KappaIndex kappa_of(const MultiIndex& alpha, const Partition& p) {
  if (alpha.size() != p.n()) throw InputError("multi-index length does not match the partition");
  std::vector<int> kappa(static_cast<std::size_t>(p.m()), 0);
  for (int i = 0; i < p.n(); ++i) kappa[static_cast<std::size_t>(p.block_of(i))] += alpha[i];
  return KappaIndex(std::move(kappa));
}

std::uint64_t dim_P(const Partition& p, const KappaIndex& kappa) {
  if (kappa.size() != p.m()) throw InputError("kappa length does not match the partition");
  std::uint64_t d = 1;
  for (int j = 0; j < p.m(); ++j) d = checked_mul(d, binomial(p.block_size(j) + kappa[j] - 1, kappa[j]));
  return d;
}

namespace {

void compositions_rec(int pos, int remaining, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  const int size = static_cast<int>(cur.size());
  if (pos == size - 1) {
    cur[static_cast<std::size_t>(pos)] = remaining;
    out.push_back(cur);
    return;
  }
  for (int v = remaining; v >= 0; --v) {
    cur[static_cast<std::size_t>(pos)] = v;
    compositions_rec(pos + 1, remaining - v, cur, out);
  }
}

}  // namespace

std::vector<std::vector<int>> compositions(int size, int degree) {
  if (size < 0 || degree < 0) throw InputError("compositions: negative argument");
  std::vector<std::vector<int>> out;
  if (size == 0) {
    if (degree == 0) out.emplace_back();
    return out;
  }
  std::vector<int> cur(static_cast<std::size_t>(size), 0);
  compositions_rec(0, degree, cur, out);
  return out;
}

int BasisP::index_of(const MultiIndex& alpha) const {
  const auto it = std::lower_bound(alphas.begin(), alphas.end(), alpha,
                                   [](const MultiIndex& a, const MultiIndex& b) { return graded_lex_less(a, b); });
  if (it == alphas.end() || *it != alpha) return -1;
  return static_cast<int>(it - alphas.begin());
}

BasisP enumerate_basis(const Partition& p, const KappaIndex& kappa) {
  if (kappa.size() != p.m()) throw InputError("kappa length does not match the partition");
  // Row-major product of the per-block bases; descending lex on the
  // concatenation follows because blocks are compared left to right.
  std::vector<std::vector<int>> acc{{}};
  for (int j = 0; j < p.m(); ++j) {
    const auto block = compositions(p.block_size(j), kappa[j]);
    std::vector<std::vector<int>> next;
    next.reserve(acc.size() * block.size());
    for (const auto& prefix : acc)
      for (const auto& b : block) {
        auto v = prefix;
        v.insert(v.end(), b.begin(), b.end());
        next.push_back(std::move(v));
      }
    acc = std::move(next);
  }
  BasisP basis{p, kappa, {}};
  basis.alphas.reserve(acc.size());
  for (auto& v : acc) basis.alphas.emplace_back(std::move(v));
  return basis;
}

std::vector<KappaIndex> enumerate_kappas(const Partition& p, int degree) {
  if (degree < 0) throw InputError("truncation degree must be non-negative");
  std::vector<KappaIndex> out;
  for (int d = 0; d <= degree; ++d)
    for (auto& c : compositions(p.m(), d)) out.emplace_back(std::move(c));
  return out;
}

std::vector<MultiIndex> enumerate_monomials(const Partition& p, int degree) {
  std::vector<MultiIndex> out;
  for (const auto& kappa : enumerate_kappas(p, degree)) {
    auto basis = enumerate_basis(p, kappa);
    out.insert(out.end(), basis.alphas.begin(), basis.alphas.end());
  }
  return out;
}

std::pair<std::vector<int>, std::vector<int>> split_alpha(const MultiIndex& alpha, const Partition& p, int j) {
  if (alpha.size() != p.n()) throw InputError("multi-index length does not match the partition");
  if (j < 0 || j >= p.m()) throw InputError("block index out of range");
  const int begin = p.offset(j);
  const int end = begin + p.block_size(j);
  std::vector<int> block(alpha.begin() + begin, alpha.begin() + end);
  std::vector<int> rest(alpha.begin(), alpha.begin() + begin);
  rest.insert(rest.end(), alpha.begin() + end, alpha.end());
  return {std::move(block), std::move(rest)};
}

MultiIndex join_alpha(const std::vector<int>& block, const std::vector<int>& rest, const Partition& p, int j) {
  if (static_cast<int>(block.size()) != p.block_size(j) ||
      static_cast<int>(rest.size()) != p.n() - p.block_size(j))
    throw InputError("join_alpha: block lengths do not match the partition");
  const auto begin = static_cast<std::ptrdiff_t>(p.offset(j));
  std::vector<int> out(rest.begin(), rest.begin() + begin);
  out.insert(out.end(), block.begin(), block.end());
  out.insert(out.end(), rest.begin() + begin, rest.end());
  return MultiIndex(std::move(out));
}

}  // namespace bergman
