#pragma once

// Structural checks on block operators: off-block leakage, constancy along
// the alpha_hat slices, commutators, traces, the trace identity and trace
// integral, normalized trace sequences and equivariance.
//
// Every metric is non-negative and compared against its own tolerance.
// Metrics built from Monte Carlo estimates are z-scores (|x| / sigma) with
// tolerance 5; deterministic ones are absolute values.

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bergman/mindex.hpp"
#include "bergman/quad.hpp"
#include "bergman/rng.hpp"
#include "bergman/symbol.hpp"
#include "bergman/toeplitz.hpp"

namespace bergman {

inline constexpr double kSigmaBand = 5.0;
inline constexpr double kDeterministicTol = 1e-8;

struct Metric {
  std::string name;
  std::optional<KappaIndex> kappa;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  std::string detail;
};

struct StructureReport {
  std::string check;
  std::vector<Metric> metrics;
  /// A negative control: the check is designed to fail.
  bool expected_fail = false;
  std::map<std::string, std::string> provenance;

  void add(std::string name, std::optional<KappaIndex> kappa, double value, double tolerance, std::string detail = {});
  bool passed() const;
  /// passed() for ordinary checks, !passed() for negative controls.
  bool as_expected() const;
  double max_value() const;
  double mean_value() const;
};

/// Largest |<a e_alpha, e_beta>| / sigma over pairs in different kappa
/// blocks, one metric per row block.
StructureReport offblock_leakage(const Symbol& a, int degree, const QuadratureSpec& spec, RandomStream& rng);

struct ExtractedM {
  /// Matrix on P_{kappa_j}(C^{k_j}), indices in compositions(k_j, kappa_j) order.
  Eigen::MatrixXcd M;
  /// max sub-block deviation from M plus max off-slice magnitude.
  double residual = 0.0;
  /// Number of alpha_hat slices, dim P_{kappa_hat}(C^{n-k_j}).
  int copies = 0;
};

ExtractedM extract_M(const BlockOperator& T, int j, const KappaIndex& kappa);

/// extract_M over every block of T; residuals against tol.
StructureReport tensor_constancy(const BlockOperator& T, int j, double tol = kDeterministicTol);

struct CommutatorNorms {
  KappaIndex kappa;
  double frobenius = 0.0;
  double spectral = 0.0;
  /// Propagated one-sigma Frobenius error from the block standard errors.
  double error = 0.0;
};

std::vector<CommutatorNorms> commutator(const BlockOperator& Ta, const BlockOperator& Tb);

/// Frobenius norms against max(tol, 5 error).
StructureReport commutator_report(const BlockOperator& Ta, const BlockOperator& Tb, double tol = kDeterministicTol);

struct TraceEntry {
  KappaIndex kappa;
  std::uint64_t dim = 0;
  std::complex<double> trace;
  std::complex<double> normalized;
  double stderr_ = 0.0;
};

std::vector<TraceEntry> block_traces(const BlockOperator& T);

struct Estimate {
  std::complex<double> value;
  double stderr_ = 0.0;
};

/// Radial rule over tau(B^m) times Haar sampling over U(k) of
/// a(r_1 A_1^{-1} u_1, ..., r_m A_m^{-1} u_m), with the trace prefactor.
/// Throws InputError unless every u_j is a unit vector in C^{k_j}.
Estimate trace_integral(const Symbol& a, const KappaIndex& kappa, const std::vector<Eigen::VectorXcd>& u,
                        const QuadratureSpec& spec, RandomStream& rng);

/// Oracle trace of the kappa block against dim_P gamma_{lambda, a_hat}(kappa),
/// a_hat = quasi_radialize(a, spec.haar_samples).
StructureReport trace_identity_check(const Symbol& a, const KappaIndex& kappa, const QuadratureSpec& spec,
                                     RandomStream& rng);

/// trace_integral against the oracle trace, and two choices of u against
/// each other.
StructureReport trace_integral_check(const Symbol& a, const KappaIndex& kappa, const QuadratureSpec& spec,
                                     RandomStream& rng);

struct OscillationDiagnostic {
  double delta = 0.0;
  int pairs = 0;
  double value = 0.0;
};

struct Sequence {
  std::vector<std::complex<double>> x;
  std::vector<double> stderr_;
  std::vector<OscillationDiagnostic> diagnostics;
};

/// max |x_r - x_s| over r != s with |(r+1)/(s+1) - 1| <= delta.
OscillationDiagnostic oscillation(const std::vector<std::complex<double>>& x, double delta);

/// Normalized traces x_kappa = tr(T_a|P_kappa) / dim P_kappa for kappa = 0..K,
/// m = 1 only.
Sequence sequence_ST(const BlockOperator& T, const std::vector<double>& deltas = {0.5, 0.25, 0.1});
Sequence sequence_ST(const Symbol& a, int K, const QuadratureSpec& spec, RandomStream& rng,
                     const std::vector<double>& deltas = {0.5, 0.25, 0.1});

/// Oracle estimates of R(A) T_a R(A)^* and T_{A.a} on the kappa block from
/// independent samples; the metric is the largest entrywise z-score.
StructureReport equivariance_check(const Symbol& a, const Eigen::MatrixXcd& A, const KappaIndex& kappa,
                                   const QuadratureSpec& spec, RandomStream& rng);

}  // namespace bergman
