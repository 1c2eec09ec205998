#include "bergman/structure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bergman/errors.hpp"
#include "bergman/special.hpp"

namespace bergman {

using cd = std::complex<double>;

namespace {

// Fresh child stream; advancing the parent keeps repeated calls independent.
RandomStream child(RandomStream& rng) { return rng.split(rng.next_u64()); }

// Differences at rounding level count as zero; otherwise a sample
// variance that is itself rounding noise would produce huge scores.
double z_score(double diff, double sigma, double scale = 1.0) {
  if (diff <= 1e-12 * std::max(1.0, scale)) return 0.0;
  if (sigma > 0.0) return diff / sigma;
  return std::numeric_limits<double>::infinity();
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

std::string fmt(cd x) { return "(" + fmt(x.real()) + "," + fmt(x.imag()) + ")"; }

void describe(StructureReport& rep, const Symbol& a, const QuadratureSpec& spec, RandomStream& rng) {
  rep.provenance["symbol"] = a.name();
  rep.provenance["class"] = to_string(a.invariance());
  rep.provenance["partition"] = to_string(a.partition());
  rep.provenance["lambda"] = fmt(spec.lambda);
  rep.provenance["seed"] = std::to_string(rng.seed());
  rep.provenance["stream"] = std::to_string(rng.stream_id());
}

Estimate mean_estimate(const std::vector<cd>& xs) {
  const double N = static_cast<double>(xs.size());
  cd mean = 0.0;
  for (const cd& x : xs) mean += x;
  mean /= N;
  double var = 0.0;
  for (const cd& x : xs) var += std::norm(x - mean);
  var /= N;
  return {mean, xs.size() > 1 ? std::sqrt(var / (N - 1.0)) : 0.0};
}

// x_i = c sum_q w_q a(A_i^{-1} (r_1 u_1, ..., r_m u_m)) for each unitary.
std::vector<cd> haar_radial_samples(const Symbol& a, const KappaIndex& kappa, const std::vector<Eigen::VectorXcd>& u,
                                    const std::vector<Eigen::MatrixXcd>& unitaries, double prefactor,
                                    const QuadratureSpec& spec) {
  const Partition& p = a.partition();
  const RadialRule rule = radial_rule(p, kappa, spec);
  std::vector<Eigen::VectorXcd> points(static_cast<std::size_t>(rule.size()), Eigen::VectorXcd(p.n()));
  for (int q = 0; q < rule.size(); ++q)
    for (int j = 0; j < p.m(); ++j)
      points[static_cast<std::size_t>(q)].segment(p.offset(j), p.block_size(j)) =
          rule.r(j, q) * u[static_cast<std::size_t>(j)];
  std::vector<cd> out;
  out.reserve(unitaries.size());
  for (const auto& A : unitaries) {
    const Eigen::MatrixXcd Ainv = A.adjoint();
    cd acc = 0.0;
    for (int q = 0; q < rule.size(); ++q) acc += rule.w(q) * a((Ainv * points[static_cast<std::size_t>(q)]).eval());
    out.push_back(prefactor * acc);
  }
  return out;
}

std::vector<Eigen::VectorXcd> first_basis_vectors(const Partition& p) {
  std::vector<Eigen::VectorXcd> u;
  for (int j = 0; j < p.m(); ++j) u.push_back(Eigen::VectorXcd::Unit(p.block_size(j), 0));
  return u;
}

double trace_integral_prefactor(const Partition& p, const KappaIndex& kappa, double lambda) {
  double lg = p.m() * std::log(2.0) + log_gamma(p.n() + lambda + kappa.total() + 1.0) - log_gamma(lambda + 1.0);
  for (int j = 0; j < p.m(); ++j) lg -= log_factorial(kappa[j]) + log_factorial(p.block_size(j) - 1);
  return std::exp(lg);
}

void require_tm(const Symbol& a, const char* what) {
  if (!guarantees(a.invariance(), Group::tm()))
    throw InputError(std::string(what) + ": symbol '" + a.name() + "' has class " + to_string(a.invariance()) +
                     ", expected T^m-invariant or stronger");
}

}  // namespace

void StructureReport::add(std::string name, std::optional<KappaIndex> kappa, double value, double tolerance,
                          std::string detail) {
  metrics.push_back(Metric{std::move(name), std::move(kappa), value, tolerance, value <= tolerance, std::move(detail)});
}

bool StructureReport::passed() const {
  return std::all_of(metrics.begin(), metrics.end(), [](const Metric& m) { return m.passed; });
}

bool StructureReport::as_expected() const { return expected_fail ? !passed() : passed(); }

double StructureReport::max_value() const {
  double out = 0.0;
  for (const auto& m : metrics) out = std::max(out, m.value);
  return out;
}

double StructureReport::mean_value() const {
  if (metrics.empty()) return 0.0;
  double s = 0.0;
  for (const auto& m : metrics) s += m.value;
  return s / static_cast<double>(metrics.size());
}

StructureReport offblock_leakage(const Symbol& a, int degree, const QuadratureSpec& spec, RandomStream& rng) {
  StructureReport rep;
  rep.check = "offblock";
  describe(rep, a, spec, rng);
  rep.provenance["degree"] = std::to_string(degree);
  RandomStream sub = child(rng);
  const OracleEstimate est = oracle_compression(a, degree, spec, sub);
  const Partition& p = a.partition();
  std::vector<KappaIndex> kappas;
  for (const auto& alpha : est.alphas) kappas.push_back(kappa_of(alpha, p));
  const auto d = static_cast<Eigen::Index>(est.alphas.size());
  for (const auto& kappa : enumerate_kappas(p, degree)) {
    double worst = 0.0;
    double worst_abs = 0.0;
    for (Eigen::Index row = 0; row < d; ++row) {
      if (kappas[static_cast<std::size_t>(row)] != kappa) continue;
      for (Eigen::Index col = 0; col < d; ++col) {
        if (kappas[static_cast<std::size_t>(col)] == kappa) continue;
        const double z = z_score(std::abs(est.mean(row, col)), est.stderr_(row, col));
        if (z > worst) {
          worst = z;
          worst_abs = std::abs(est.mean(row, col));
        }
      }
    }
    rep.add("leakage_z", kappa, worst, kSigmaBand, "max |entry| " + fmt(worst_abs));
  }
  return rep;
}

ExtractedM extract_M(const BlockOperator& T, int j, const KappaIndex& kappa) {
  const Partition& p = T.partition;
  if (j < 0 || j >= p.m()) throw InputError("extract_M: block index out of range");
  if (!T.has(kappa)) throw InputError("extract_M: operator has no block for kappa = " + to_string(kappa));
  const Block& b = T.at(kappa);
  const auto block_basis = compositions(p.block_size(j), kappa[j]);
  const int k = static_cast<int>(block_basis.size());

  // Position of every alpha as (slice of alpha_hat, index inside the slice).
  std::map<std::vector<int>, int> slice_of;
  std::vector<std::pair<int, int>> pos;
  for (const auto& alpha : b.basis.alphas) {
    auto [blk, rest] = split_alpha(alpha, p, j);
    const auto it = slice_of.emplace(rest, static_cast<int>(slice_of.size())).first;
    const int inner = static_cast<int>(std::find(block_basis.begin(), block_basis.end(), blk) - block_basis.begin());
    pos.emplace_back(it->second, inner);
  }
  const int copies = static_cast<int>(slice_of.size());

  ExtractedM out;
  out.copies = copies;
  out.M = Eigen::MatrixXcd::Zero(k, k);
  const int d = b.dim();
  double off = 0.0;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      if (pos[static_cast<std::size_t>(r)].first == pos[static_cast<std::size_t>(c)].first)
        out.M(pos[static_cast<std::size_t>(r)].second, pos[static_cast<std::size_t>(c)].second) += b.matrix(r, c);
      else
        off = std::max(off, std::abs(b.matrix(r, c)));
    }
  out.M /= static_cast<double>(copies);
  double dev = 0.0;
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c)
      if (pos[static_cast<std::size_t>(r)].first == pos[static_cast<std::size_t>(c)].first)
        dev = std::max(dev, std::abs(b.matrix(r, c) - out.M(pos[static_cast<std::size_t>(r)].second,
                                                            pos[static_cast<std::size_t>(c)].second)));
  out.residual = dev + off;
  return out;
}

StructureReport tensor_constancy(const BlockOperator& T, int j, double tol) {
  StructureReport rep;
  rep.check = "tensor-constancy";
  rep.provenance["symbol"] = T.symbol;
  rep.provenance["operator"] = to_string(T.provenance);
  rep.provenance["block"] = std::to_string(j);
  for (const auto& b : T.blocks) {
    const auto ex = extract_M(T, j, b.kappa());
    rep.add("residual", b.kappa(), ex.residual, tol, std::to_string(ex.copies) + " copies");
  }
  return rep;
}

std::vector<CommutatorNorms> commutator(const BlockOperator& Ta, const BlockOperator& Tb) {
  if (!(Ta.partition == Tb.partition) || Ta.lambda != Tb.lambda || Ta.degree != Tb.degree)
    throw InputError("commutator: operators differ in partition, lambda or degree");
  std::vector<CommutatorNorms> out;
  for (const auto& ba : Ta.blocks) {
    const Block& bb = Tb.at(ba.kappa());
    const Eigen::MatrixXcd C = ba.matrix * bb.matrix - bb.matrix * ba.matrix;
    CommutatorNorms c;
    c.kappa = ba.kappa();
    c.frobenius = C.norm();
    c.spectral = C.size() ? Eigen::JacobiSVD<Eigen::MatrixXcd>(C).singularValues()(0) : 0.0;
    const double sa = ba.stderr_.size() ? ba.stderr_.norm() : 0.0;
    const double sb = bb.stderr_.size() ? bb.stderr_.norm() : 0.0;
    c.error = 2.0 * (ba.matrix.norm() * sb + sa * bb.matrix.norm());
    out.push_back(c);
  }
  return out;
}

StructureReport commutator_report(const BlockOperator& Ta, const BlockOperator& Tb, double tol) {
  StructureReport rep;
  rep.check = "commutator";
  rep.provenance["symbol"] = Ta.symbol;
  rep.provenance["with"] = Tb.symbol;
  rep.provenance["a_operator"] = to_string(Ta.provenance);
  rep.provenance["b_operator"] = to_string(Tb.provenance);
  for (const auto& c : commutator(Ta, Tb))
    rep.add("frobenius", c.kappa, c.frobenius, std::max(tol, kSigmaBand * c.error), "spectral " + fmt(c.spectral));
  return rep;
}

std::vector<TraceEntry> block_traces(const BlockOperator& T) {
  std::vector<TraceEntry> out;
  for (const auto& b : T.blocks) {
    TraceEntry e;
    e.kappa = b.kappa();
    e.dim = static_cast<std::uint64_t>(b.dim());
    e.trace = b.matrix.trace();
    e.normalized = e.dim ? e.trace / static_cast<double>(e.dim) : cd(0.0);
    e.stderr_ = b.trace_stderr;
    out.push_back(e);
  }
  return out;
}

Estimate trace_integral(const Symbol& a, const KappaIndex& kappa, const std::vector<Eigen::VectorXcd>& u,
                        const QuadratureSpec& spec, RandomStream& rng) {
  const Partition& p = a.partition();
  if (kappa.size() != p.m()) throw InputError("kappa length does not match the partition");
  if (static_cast<int>(u.size()) != p.m()) throw InputError("trace_integral needs one vector per block");
  for (int j = 0; j < p.m(); ++j) {
    const auto& uj = u[static_cast<std::size_t>(j)];
    if (uj.size() != p.block_size(j) || std::abs(uj.norm() - 1.0) > 1e-12)
      throw InputError("trace_integral: u_" + std::to_string(j) + " is not a unit vector of C^" +
                       std::to_string(p.block_size(j)));
  }
  spec.validate();
  RandomStream sub = child(rng);
  std::vector<Eigen::MatrixXcd> unitaries;
  for (int i = 0; i < spec.haar_samples; ++i) unitaries.push_back(haar_uk_sample(p, sub));
  return mean_estimate(
      haar_radial_samples(a, kappa, u, unitaries, trace_integral_prefactor(p, kappa, spec.lambda), spec));
}

StructureReport trace_identity_check(const Symbol& a, const KappaIndex& kappa, const QuadratureSpec& spec,
                                     RandomStream& rng) {
  require_tm(a, "trace_identity_check");
  StructureReport rep;
  rep.check = "trace-identity";
  describe(rep, a, spec, rng);
  const Partition& p = a.partition();
  RandomStream haar = child(rng);
  RandomStream oracle = child(rng);
  const QuasiRadialized ahat = quasi_radialize(a, spec.haar_samples, haar);
  const cd gamma = gamma_quasi_radial(*ahat.symbol.payloads().profile, kappa, p, spec);
  const Estimate g = mean_estimate(haar_radial_samples(a, kappa, first_basis_vectors(p), *ahat.unitaries,
                                                       gamma_prefactor(p, kappa, spec.lambda), spec));
  const Block b = toeplitz_block_oracle(a, kappa, spec, oracle);
  const double dim = static_cast<double>(b.dim());
  const cd lhs = b.matrix.trace();
  const cd rhs = dim * gamma;
  const double sigma = std::hypot(b.trace_stderr, dim * g.stderr_);
  rep.add("discrepancy_z", kappa, z_score(std::abs(lhs - rhs), sigma, std::abs(rhs)), kSigmaBand,
          "trace " + fmt(lhs) + " dim*gamma " + fmt(rhs) + " sigma " + fmt(sigma));
  return rep;
}

StructureReport trace_integral_check(const Symbol& a, const KappaIndex& kappa, const QuadratureSpec& spec,
                                     RandomStream& rng) {
  require_tm(a, "trace_integral_check");
  StructureReport rep;
  rep.check = "trace-integral";
  describe(rep, a, spec, rng);
  const Partition& p = a.partition();
  RandomStream vectors = child(rng);
  std::vector<Eigen::VectorXcd> u1 = first_basis_vectors(p), u2;
  for (int j = 0; j < p.m(); ++j) {
    Eigen::VectorXcd v(p.block_size(j));
    for (auto& x : v) x = vectors.complex_normal();
    u2.push_back(v / v.norm());
  }
  const Estimate i1 = trace_integral(a, kappa, u1, spec, rng);
  const Estimate i2 = trace_integral(a, kappa, u2, spec, rng);
  RandomStream oracle = child(rng);
  const Block b = toeplitz_block_oracle(a, kappa, spec, oracle);
  const cd tr = b.matrix.trace();
  rep.add("vs_trace_z", kappa, z_score(std::abs(i1.value - tr), std::hypot(i1.stderr_, b.trace_stderr), std::abs(tr)), kSigmaBand,
          "integral " + fmt(i1.value) + " trace " + fmt(tr));
  rep.add("u_choice_z", kappa, z_score(std::abs(i1.value - i2.value), std::hypot(i1.stderr_, i2.stderr_), std::abs(i1.value)), kSigmaBand,
          "integral " + fmt(i1.value) + " vs " + fmt(i2.value));
  return rep;
}

OscillationDiagnostic oscillation(const std::vector<cd>& x, double delta) {
  OscillationDiagnostic out;
  out.delta = delta;
  const int K = static_cast<int>(x.size());
  for (int r = 0; r < K; ++r)
    for (int s = r + 1; s < K; ++s) {
      if (std::abs(static_cast<double>(r + 1) / (s + 1) - 1.0) > delta) continue;
      ++out.pairs;
      out.value = std::max(out.value, std::abs(x[static_cast<std::size_t>(r)] - x[static_cast<std::size_t>(s)]));
    }
  return out;
}

Sequence sequence_ST(const BlockOperator& T, const std::vector<double>& deltas) {
  if (T.partition.m() != 1) throw InputError("sequence_ST needs a single block partition k = (n)");
  Sequence out;
  for (const auto& e : block_traces(T)) {
    out.x.push_back(e.normalized);
    out.stderr_.push_back(e.dim ? e.stderr_ / static_cast<double>(e.dim) : 0.0);
  }
  for (double d : deltas) out.diagnostics.push_back(oscillation(out.x, d));
  return out;
}

Sequence sequence_ST(const Symbol& a, int K, const QuadratureSpec& spec, RandomStream& rng,
                     const std::vector<double>& deltas) {
  if (a.partition().m() != 1) throw InputError("sequence_ST needs a single block partition k = (n)");
  RandomStream sub = child(rng);
  return sequence_ST(toeplitz_operator(a, K, spec, sub), deltas);
}

StructureReport equivariance_check(const Symbol& a, const Eigen::MatrixXcd& A, const KappaIndex& kappa,
                                   const QuadratureSpec& spec, RandomStream& rng) {
  StructureReport rep;
  rep.check = "equivariance";
  describe(rep, a, spec, rng);
  spec.validate();
  const Partition& p = a.partition();
  const Eigen::MatrixXcd R = unitary_action_matrix(A, p, kappa);
  const Symbol moved = act(A, a);
  const auto alphas = enumerate_basis(p, kappa).alphas;
  RandomStream s1 = child(rng);
  RandomStream s2 = child(rng);
  const OracleEstimate lhs = oracle_matrix(a, alphas, spec.lambda, spec.mc_samples, s1, &R);
  const OracleEstimate rhs = oracle_matrix(moved, alphas, spec.lambda, spec.mc_samples, s2);
  double worst = 0.0;
  for (Eigen::Index r = 0; r < lhs.mean.rows(); ++r)
    for (Eigen::Index c = 0; c < lhs.mean.cols(); ++c)
      worst = std::max(worst, z_score(std::abs(lhs.mean(r, c) - rhs.mean(r, c)),
                                      std::hypot(lhs.stderr_(r, c), rhs.stderr_(r, c))));
  rep.add("residual_z", kappa, worst, kSigmaBand, "frobenius " + fmt((lhs.mean - rhs.mean).norm()));
  return rep;
}

}  // namespace bergman
