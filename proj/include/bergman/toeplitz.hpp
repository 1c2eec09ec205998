#pragma once

// Truncated Toeplitz operators in the orthonormal monomial basis e_alpha.
// Matrix convention: entry (row beta, column alpha) = <T e_alpha, e_beta>.

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bergman/mindex.hpp"
#include "bergman/quad.hpp"
#include "bergman/rng.hpp"
#include "bergman/symbol.hpp"

namespace bergman {

enum class Provenance { Oracle, FForm, GForm, DiagonalGamma, Averaged, Quadrature };

std::string to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);

struct Block {
  BasisP basis;
  Eigen::MatrixXcd matrix;
  /// Entrywise standard error (zero for deterministic paths).
  Eigen::MatrixXd stderr_;
  /// Standard error of the trace.
  double trace_stderr = 0.0;

  const KappaIndex& kappa() const { return basis.kappa; }
  int dim() const { return basis.size(); }
};

struct BlockOperator {
  Partition partition{1};
  double lambda = 0.0;
  int degree = 0;
  Provenance provenance = Provenance::Oracle;
  std::uint64_t seed = 0;
  std::string symbol;
  std::vector<std::string> warnings;
  /// In enumerate_kappas order.
  std::vector<Block> blocks;

  const Block& at(const KappaIndex& kappa) const;
  Block& at(const KappaIndex& kappa);
  bool has(const KappaIndex& kappa) const;
};

/// ||z^alpha||^2 = alpha! Gamma(n+lambda+1) / Gamma(n+lambda+|alpha|+1).
double monomial_norm_sq(int n, double lambda, const MultiIndex& alpha);

/// e_alpha(z) for every alpha in the list.
class MonomialEvaluator {
 public:
  MonomialEvaluator(int n, double lambda, std::vector<MultiIndex> alphas);
  void evaluate(const Eigen::VectorXcd& z, Eigen::Ref<Eigen::RowVectorXcd, 0, Eigen::InnerStride<>> out) const;
  int size() const { return static_cast<int>(alphas_.size()); }
  const std::vector<MultiIndex>& alphas() const { return alphas_; }

 private:
  int n_;
  int max_degree_ = 0;
  std::vector<MultiIndex> alphas_;
  std::vector<double> inv_norm_;
};

/// Monte Carlo estimate of <a e_alpha, e_beta>_lambda over a monomial list.
struct OracleEstimate {
  std::vector<MultiIndex> alphas;
  Eigen::MatrixXcd mean;
  Eigen::MatrixXd stderr_;
  double trace_stderr = 0.0;
  int samples = 0;
};

/// With `transform` R, estimates R T R^* from the same samples so the
/// reported errors belong to the transformed matrix.
OracleEstimate oracle_matrix(const Symbol& a, std::vector<MultiIndex> alphas, double lambda, int samples,
                             RandomStream& rng, const Eigen::MatrixXcd* transform = nullptr);

Block toeplitz_block_oracle(const Symbol& a, const KappaIndex& kappa, const QuadratureSpec& spec, RandomStream& rng);

/// Compression to span{e_alpha : |alpha| <= D}, alphas as enumerate_monomials.
OracleEstimate oracle_compression(const Symbol& a, int degree, const QuadratureSpec& spec, RandomStream& rng);

/// Matrix on the P_{kappa_j}(C^{k_j}) slice from the f payload, entries
/// ordered by compositions(k_j, kappa_j); includes the full prefactor.
Eigen::MatrixXcd reduced_matrix_f(const Symbol& a, const KappaIndex& kappa, const QuadratureSpec& spec);
/// Same from the g payload, integrating over (s, t).
Eigen::MatrixXcd reduced_matrix_g(const Symbol& a, const KappaIndex& kappa, const QuadratureSpec& spec);

/// M repeated on the alpha_hat == beta_hat slices of the kappa block, zeros elsewhere.
Eigen::MatrixXcd expand_slice_matrix(const Eigen::MatrixXcd& M, const BasisP& basis, int j);

Block toeplitz_block_f(const Symbol& a, const KappaIndex& kappa, const QuadratureSpec& spec);
Block toeplitz_block_g(const Symbol& a, const KappaIndex& kappa, const QuadratureSpec& spec);

/// Deterministic product quadrature over tau(B^m) x prod_j S^{k_j} for a
/// T^m-invariant symbol, one phase pinned per block.
Block toeplitz_block_quadrature(const Symbol& a, const KappaIndex& kappa, const QuadratureSpec& spec);

/// gamma_{lambda,a}(kappa) for a quasi-radial profile.
std::complex<double> gamma_quasi_radial(const RadialProfile& profile, const KappaIndex& kappa, const Partition& p,
                                        const QuadratureSpec& spec);
/// 2^m Gamma(n+lambda+|kappa|+1) / (Gamma(lambda+1) prod (k_j+kappa_j-1)!).
double gamma_prefactor(const Partition& p, const KappaIndex& kappa, double lambda);

BlockOperator assemble_diagonal(const std::function<std::complex<double>(const KappaIndex&)>& gamma, const Partition& p,
                                int degree, double lambda);

/// Matrix of pi_lambda(A) on P_kappa; independent of lambda. Kronecker product
/// of the per-block factors. Throws InputError unless A is a block-diagonal
/// unitary.
Eigen::MatrixXcd unitary_action_matrix(const Eigen::MatrixXcd& A, const Partition& p, const KappaIndex& kappa);
/// Same by direct multinomial expansion of (A^{-1} z)^alpha on all of C^n.
Eigen::MatrixXcd unitary_action_matrix_direct(const Eigen::MatrixXcd& A, const Partition& p, const KappaIndex& kappa);

struct AveragedOperator {
  BlockOperator op;
  /// ||T_kappa - (tr T_kappa / dim) I||_F per block.
  std::vector<double> deviation_from_scalar;
};

/// (1/N) sum_i R(A_i) T R(A_i)^*, A_i Haar on U(k).
AveragedOperator average_operator(const BlockOperator& T, int samples, RandomStream& rng);

double deviation_from_scalar(const Eigen::MatrixXcd& M);

/// Every block with |kappa| <= D. Quasi-radial symbols with a profile use the
/// diagonal-gamma path, symbols with a g or f payload the reduced formulas,
/// everything else the oracle. Non-T^m-invariant symbols produce a warning.
BlockOperator toeplitz_operator(const Symbol& a, int degree, const QuadratureSpec& spec, RandomStream& rng,
                                int jobs = 1);

/// Every block through a fixed path.
BlockOperator toeplitz_operator_via(Provenance path, const Symbol& a, int degree, const QuadratureSpec& spec,
                                    RandomStream& rng, int jobs = 1);

}  // namespace bergman
