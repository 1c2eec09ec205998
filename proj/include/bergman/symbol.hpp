#pragma once

// Symbols: bounded functions on the ball with a declared invariance class
// and optional separable payloads.

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bergman/mindex.hpp"
#include "bergman/rng.hpp"

namespace bergman {

enum class InvarianceKind { General, TmInvariant, KJQuasiHomogeneous, QuasiRadial, SeparatelyRadial, Radial };

/// Declared invariance. block is used only by KJQuasiHomogeneous (0-based).
struct InvarianceClass {
  InvarianceKind kind = InvarianceKind::General;
  int block = -1;

  friend bool operator==(const InvarianceClass&, const InvarianceClass&) = default;
};

std::string to_string(const InvarianceClass& c);

enum class GroupKind { Tm, UkjT, Uk, Tn, Un };

/// Subgroups of U(n) attached to a partition.
struct Group {
  GroupKind kind = GroupKind::Tm;
  int block = -1;  // UkjT only

  static Group tm() { return {GroupKind::Tm, -1}; }
  static Group ukjt(int j) { return {GroupKind::UkjT, j}; }
  static Group uk() { return {GroupKind::Uk, -1}; }
  static Group tn() { return {GroupKind::Tn, -1}; }
  static Group un() { return {GroupKind::Un, -1}; }
};

std::string to_string(const Group& g);

/// Whether every symbol of class c is invariant under g.
bool guarantees(const InvarianceClass& c, const Group& g);

/// The group whose invariance defines the class (General has none).
std::optional<Group> defining_group(const InvarianceClass& c);

using Evaluator = std::function<std::complex<double>(const Eigen::VectorXcd& z)>;
/// profile(r_1, ..., r_m)
using RadialProfile = std::function<std::complex<double>(const Eigen::VectorXd& r)>;
/// f(r, xi_(j)), invariant under xi -> eta xi
using FFunction = std::function<std::complex<double>(const Eigen::VectorXd& r, const Eigen::VectorXcd& xi)>;
/// g(r, s_(j), t_(j)), invariant under t -> eta t
using GFunction =
    std::function<std::complex<double>(const Eigen::VectorXd& r, const Eigen::VectorXd& s, const Eigen::VectorXcd& t)>;

struct FForm {
  int block = 0;
  FFunction f;
};

struct GForm {
  int block = 0;
  GFunction g;
};

struct SymbolPayloads {
  std::optional<RadialProfile> profile;
  std::optional<FForm> f;
  std::optional<GForm> g;
};

/// Sampling used to validate declared invariance at construction.
struct ValidationOptions {
  int samples = 256;
  double tol = 1e-10;
  std::uint64_t seed = 0x5EEDull;
};

class Symbol {
 public:
  /// No validation; use the factories below unless the class is known.
  Symbol(Partition p, Evaluator eval, InvarianceClass cls, double bound, std::string name,
         SymbolPayloads payloads = {}, bool real_valued = false);

  std::complex<double> operator()(const Eigen::VectorXcd& z) const { return eval_(z); }

  const Partition& partition() const { return partition_; }
  const InvarianceClass& invariance() const { return class_; }
  double bound() const { return bound_; }
  const std::string& name() const { return name_; }
  bool real_valued() const { return real_; }
  const SymbolPayloads& payloads() const { return payloads_; }
  const Evaluator& evaluator() const { return eval_; }

 private:
  Partition partition_;
  Evaluator eval_;
  InvarianceClass class_;
  double bound_;
  std::string name_;
  SymbolPayloads payloads_;
  bool real_;
};

/// a(z) = profile(|z_(1)|, ..., |z_(m)|). Class QuasiRadial (Radial if m = 1).
Symbol from_radial_profile(const Partition& p, RadialProfile profile, std::string name = "profile",
                           const ValidationOptions& opts = {});

/// a(z) = f(|z_(1)|, ..., |z_(m)|, xi_(j)). Throws InputError with a witness
/// if f is not invariant under a common phase of xi. For k_j = 1 the class
/// is QuasiRadial.
Symbol from_f(const Partition& p, int j, FFunction f, std::string name = "f", const ValidationOptions& opts = {});

/// a(z) = g(|z_(1)|, ..., |z_(m)|, s_(j), t_(j)). Also carries the f payload
/// f(r, xi) = g(r, |xi|, xi / |xi|).
Symbol from_g(const Partition& p, int j, GFunction g, std::string name = "g", const ValidationOptions& opts = {});

/// A . a = a o A^{-1}. Keeps the strongest class that A provably preserves.
Symbol act(const Eigen::MatrixXcd& A, const Symbol& a);

bool is_unitary(const Eigen::MatrixXcd& A, double tol = 1e-10);
bool is_block_diagonal(const Eigen::MatrixXcd& A, const Partition& p);

/// Draw from the group attached to p.
Eigen::MatrixXcd sample_group(const Group& g, const Partition& p, RandomStream& rng);

struct InvarianceReport {
  Group group;
  int samples = 0;
  double max_deviation = 0.0;
  double tol = 0.0;
  bool passed = true;
  Eigen::VectorXcd witness_z;
  Eigen::MatrixXcd witness_A;
};

/// max over N random (z, A in H) of |a(A^{-1} z) - a(z)|.
InvarianceReport check_invariance(const Symbol& a, const Group& g, int samples, double tol, RandomStream& rng);

/// Haar average over U(k) with a fixed draw of N unitaries.
struct QuasiRadialized {
  Symbol symbol;
  std::shared_ptr<const std::vector<Eigen::MatrixXcd>> unitaries;
  /// Standard error of the average at z.
  double standard_error(const Eigen::VectorXcd& z) const;
  /// The original symbol.
  std::shared_ptr<const Symbol> source;
};

/// Evaluator z -> (1/N) sum_i a(A_i^{-1} z), A_i = haar_uk_sample. The profile
/// payload reads the average on (r_1 e_1, ..., r_m e_1).
QuasiRadialized quasi_radialize(const Symbol& a, int samples, RandomStream& rng);

/// Canonical point (r_1 e_1, ..., r_m e_1).
Eigen::VectorXcd canonical_point(const Eigen::VectorXd& r, const Partition& p);

// Parametric families.

/// sum c prod r_j^{e_j}
struct RadialTerm {
  std::complex<double> coef;
  std::vector<int> powers;
};
/// sum c prod s_i^{e_i}
struct SphereTerm {
  std::complex<double> coef;
  std::vector<int> powers;
};
/// c z^p conj(z)^q
struct PolynomialTerm {
  std::complex<double> coef;
  std::vector<int> p;
  std::vector<int> q;
};

Symbol constant_symbol(const Partition& p, std::complex<double> c);

/// Polynomial profile in the block radii.
Symbol radial_polynomial(const Partition& p, std::vector<RadialTerm> terms, std::string name = "radial");

/// phi_{p,q} = profile(r) xi^p conj(xi)^q with |p_(j)| = |q_(j)| for all j.
/// An f-form on block j when p and q vanish outside block j; quasi-radial
/// when both vanish; otherwise T^m-invariant.
Symbol phi_symbol(const Partition& p, std::vector<int> pexp, std::vector<int> qexp,
                  std::vector<RadialTerm> profile = {}, std::string name = "phi");

/// b(s_(j)) t_(j)^e with e in Z^{k_j}, |e| = 0, as a g-form on block j.
Symbol pseudo_homogeneous(const Partition& p, int j, std::vector<SphereTerm> b, std::vector<int> texp,
                          std::string name = "pseudo");

/// xi^p conj(xi)^q without any constraint; class General.
Symbol xi_monomial(const Partition& p, std::vector<int> pexp, std::vector<int> qexp, std::string name = "xi");

/// sum c z^p conj(z)^q with a declared class, checked by sampling against
/// the class's defining group.
Symbol polynomial_symbol(const Partition& p, std::vector<PolynomialTerm> terms, InvarianceClass declared,
                         std::string name = "poly", const ValidationOptions& opts = {});

}  // namespace bergman
