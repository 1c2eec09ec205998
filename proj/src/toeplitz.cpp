#include "bergman/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "bergman/errors.hpp"
#include "bergman/parallel.hpp"
#include "bergman/special.hpp"

namespace bergman {

using cd = std::complex<double>;
using std::numbers::pi;

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::Oracle: return "oracle";
    case Provenance::FForm: return "f-form";
    case Provenance::GForm: return "g-form";
    case Provenance::DiagonalGamma: return "diagonal-gamma";
    case Provenance::Averaged: return "averaged";
    case Provenance::Quadrature: return "quadrature";
  }
  return "?";
}

Provenance provenance_from_string(const std::string& s) {
  for (auto p : {Provenance::Oracle, Provenance::FForm, Provenance::GForm, Provenance::DiagonalGamma,
                 Provenance::Averaged, Provenance::Quadrature})
    if (to_string(p) == s) return p;
  throw InputError("unknown provenance '" + s + "'");
}

const Block& BlockOperator::at(const KappaIndex& kappa) const {
  for (const auto& b : blocks)
    if (b.kappa() == kappa) return b;
  throw InputError("operator has no block for kappa = " + to_string(kappa));
}

Block& BlockOperator::at(const KappaIndex& kappa) {
  return const_cast<Block&>(static_cast<const BlockOperator&>(*this).at(kappa));
}

bool BlockOperator::has(const KappaIndex& kappa) const {
  return std::any_of(blocks.begin(), blocks.end(), [&](const Block& b) { return b.kappa() == kappa; });
}

double monomial_norm_sq(int n, double lambda, const MultiIndex& alpha) {
  if (!(lambda > -1.0)) throw ConfigError("lambda must be > -1");
  double lg = log_gamma(n + lambda + 1.0) - log_gamma(n + lambda + alpha.total() + 1.0);
  for (int a : alpha) lg += log_factorial(a);
  return std::exp(lg);
}

MonomialEvaluator::MonomialEvaluator(int n, double lambda, std::vector<MultiIndex> alphas)
    : n_(n), alphas_(std::move(alphas)) {
  inv_norm_.reserve(alphas_.size());
  for (const auto& a : alphas_) {
    if (a.size() != n) throw InputError("multi-index length does not match n");
    inv_norm_.push_back(1.0 / std::sqrt(monomial_norm_sq(n, lambda, a)));
    for (int v : a) max_degree_ = std::max(max_degree_, v);
  }
}

void MonomialEvaluator::evaluate(const Eigen::VectorXcd& z, Eigen::Ref<Eigen::RowVectorXcd, 0, Eigen::InnerStride<>> out) const {
  Eigen::MatrixXcd pw(n_, max_degree_ + 1);
  for (int i = 0; i < n_; ++i) {
    pw(i, 0) = 1.0;
    for (int e = 1; e <= max_degree_; ++e) pw(i, e) = pw(i, e - 1) * z(i);
  }
  for (std::size_t k = 0; k < alphas_.size(); ++k) {
    cd v = inv_norm_[k];
    const auto& a = alphas_[k];
    for (int i = 0; i < n_; ++i) v *= pw(i, a[i]);
    out(static_cast<Eigen::Index>(k)) = v;
  }
}

OracleEstimate oracle_matrix(const Symbol& a, std::vector<MultiIndex> alphas, double lambda, int samples,
                             RandomStream& rng, const Eigen::MatrixXcd* transform) {
  if (samples < 2) throw ConfigError("the oracle needs at least two samples");
  const int n = a.partition().n();
  const int d = static_cast<int>(alphas.size());
  if (transform && (transform->rows() != d || transform->cols() != d))
    throw InputError("oracle transform has the wrong size");
  MonomialEvaluator ev(n, lambda, alphas);
  BallSampler sample(n, lambda);

  constexpr int kChunk = 2048;
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
  Eigen::MatrixXd sum2 = Eigen::MatrixXd::Zero(d, d);
  cd tr_sum = 0.0;
  double tr_sum2 = 0.0;
  Eigen::MatrixXcd V(kChunk, d);
  Eigen::VectorXcd av(kChunk);
  for (int start = 0; start < samples; start += kChunk) {
    const int cnt = std::min(kChunk, samples - start);
    for (int i = 0; i < cnt; ++i) {
      const Eigen::VectorXcd z = sample(rng);
      ev.evaluate(z, V.row(i));
      av(i) = a(z);
    }
    // Row i holds conj(e(z_i))^T, so entry (beta, alpha) of W^T diag(a) conj(W)
    // is sum_i a_i e_alpha(z_i) conj(e_beta(z_i)).
    Eigen::MatrixXcd W = V.topRows(cnt).conjugate();
    if (transform) W = W * transform->transpose();
    const auto a_chunk = av.head(cnt);
    sum.noalias() += W.transpose() * (a_chunk.asDiagonal() * W.conjugate());
    const Eigen::MatrixXd P = W.cwiseAbs2();
    const Eigen::VectorXd a2 = a_chunk.cwiseAbs2();
    sum2.noalias() += P.transpose() * (a2.asDiagonal() * P);
    for (int i = 0; i < cnt; ++i) {
      const cd x = a_chunk(i) * W.row(i).squaredNorm();
      tr_sum += x;
      tr_sum2 += std::norm(x);
    }
  }
  const double N = samples;
  OracleEstimate est;
  est.alphas = std::move(alphas);
  est.samples = samples;
  est.mean = sum / N;
  const Eigen::MatrixXd var = (sum2 / N - est.mean.cwiseAbs2()).cwiseMax(0.0);
  est.stderr_ = (var / (N - 1.0)).cwiseSqrt();
  const double tr_var = std::max(0.0, tr_sum2 / N - std::norm(tr_sum / N));
  est.trace_stderr = std::sqrt(tr_var / (N - 1.0));
  return est;
}

Block toeplitz_block_oracle(const Symbol& a, const KappaIndex& kappa, const QuadratureSpec& spec, RandomStream& rng) {
  spec.validate();
  BasisP basis = enumerate_basis(a.partition(), kappa);
  auto est = oracle_matrix(a, basis.alphas, spec.lambda, spec.mc_samples, rng);
  return Block{std::move(basis), std::move(est.mean), std::move(est.stderr_), est.trace_stderr};
}

OracleEstimate oracle_compression(const Symbol& a, int degree, const QuadratureSpec& spec, RandomStream& rng) {
  spec.validate();
  return oracle_matrix(a, enumerate_monomials(a.partition(), degree), spec.lambda, spec.mc_samples, rng);
}

namespace {

// log of 2^(m-1) Gamma(n+lambda+|kappa|+1) / (pi^k_j Gamma(lambda+1) prod_{l != j} (k_l+kappa_l-1)!)
double log_slice_prefactor(const Partition& p, const KappaIndex& kappa, int j, double lambda) {
  double lg = (p.m() - 1) * std::log(2.0) + log_gamma(p.n() + lambda + kappa.total() + 1.0) -
              p.block_size(j) * std::log(pi) - log_gamma(lambda + 1.0);
  for (int l = 0; l < p.m(); ++l)
    if (l != j) lg -= log_factorial(p.block_size(l) + kappa[l] - 1);
  return lg;
}

void require_slice_class(const Symbol& a, int j, const char* what) {
  const auto kind = a.invariance().kind;
  const bool ok = kind == InvarianceKind::Radial || kind == InvarianceKind::QuasiRadial ||
                  (kind == InvarianceKind::KJQuasiHomogeneous && a.invariance().block == j);
  if (!ok)
    throw InputError(std::string(what) + ": symbol '" + a.name() + "' has class " + to_string(a.invariance()) +
                     ", expected KJQuasiHomogeneous(" + std::to_string(j) + ")");
}

double factorial_vec(const std::vector<int>& v) {
  double out = 1.0;
  for (int x : v) out *= factorial(x);
  return out;
}

}  // namespace

Eigen::MatrixXcd reduced_matrix_f(const Symbol& a, const KappaIndex& kappa, const QuadratureSpec& spec) {
  const auto& f = a.payloads().f;
  if (!f) throw InputError("toeplitz_block_f: symbol '" + a.name() + "' has no f-form payload");
  const int j = f->block;
  require_slice_class(a, j, "toeplitz_block_f");
  const Partition& p = a.partition();
  if (kappa.size() != p.m()) throw InputError("kappa length does not match the partition");
  spec.validate();
  const int kj = p.block_size(j);
  const auto slice = compositions(kj, kappa[j]);
  const int dj = static_cast<int>(slice.size());
  const RadialRule radial = radial_rule(p, kappa, spec);
  const SphereRule sphere = sphere_rule(kj, spec, true);

  Eigen::VectorXcd c(sphere.size());
  Eigen::MatrixXcd E(sphere.size(), dj);
  for (int s = 0; s < sphere.size(); ++s) {
    const Eigen::VectorXcd xi = sphere.xi.col(s);
    cd acc = 0.0;
    for (int q = 0; q < radial.size(); ++q) acc += radial.w(q) * f->f(radial.r.col(q), xi);
    c(s) = sphere.w(s) * acc;
    for (int b = 0; b < dj; ++b) {
      cd v = 1.0;
      for (int i = 0; i < kj; ++i)
        for (int e = 0; e < slice[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)]; ++e) v *= xi(i);
      E(s, b) = v;
    }
  }
  Eigen::MatrixXcd M = E.adjoint() * c.asDiagonal() * E;
  const double pref = std::exp(log_slice_prefactor(p, kappa, j, spec.lambda));
  for (int col = 0; col < dj; ++col)
    for (int row = 0; row < dj; ++row)
      M(row, col) *= pref / std::sqrt(factorial_vec(slice[static_cast<std::size_t>(row)]) *
                                      factorial_vec(slice[static_cast<std::size_t>(col)]));
  return M;
}

Eigen::MatrixXcd reduced_matrix_g(const Symbol& a, const KappaIndex& kappa, const QuadratureSpec& spec) {
  const auto& g = a.payloads().g;
  if (!g) throw InputError("toeplitz_block_g: symbol '" + a.name() + "' has no g-form payload");
  const int j = g->block;
  require_slice_class(a, j, "toeplitz_block_g");
  const Partition& p = a.partition();
  if (kappa.size() != p.m()) throw InputError("kappa length does not match the partition");
  spec.validate();
  const int kj = p.block_size(j);
  const auto slice = compositions(kj, kappa[j]);
  const int dj = static_cast<int>(slice.size());
  const RadialRule radial = radial_rule(p, kappa, spec);
  const PositiveSphereRule ps = positive_sphere_rule(kj, spec.sphere_nodes);
  // g is invariant under a common phase of t, so t_1 = 1 and the first circle
  // contributes its length 2 pi.
  const TorusRule torus = torus_rule(kj - 1, spec.torus_nodes);

  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dj, dj);
  Eigen::VectorXcd t(kj);
  for (int sa = 0; sa < ps.size(); ++sa) {
    const Eigen::VectorXd s = ps.s.col(sa);
    const double jac = s.prod();
    for (int tb = 0; tb < torus.size(); ++tb) {
      t(0) = 1.0;
      if (kj > 1) t.tail(kj - 1) = torus.t.col(tb);
      cd acc = 0.0;
      for (int q = 0; q < radial.size(); ++q) acc += radial.w(q) * g->g(radial.r.col(q), s, t);
      const cd c = acc * ps.w(sa) * torus.w(tb) * 2.0 * pi * jac;
      for (int col = 0; col < dj; ++col)
        for (int row = 0; row < dj; ++row) {
          // s^(alpha+beta) t^(alpha-beta)
          cd v = c;
          for (int i = 0; i < kj; ++i) {
            const int ea = slice[static_cast<std::size_t>(col)][static_cast<std::size_t>(i)];
            const int eb = slice[static_cast<std::size_t>(row)][static_cast<std::size_t>(i)];
            for (int e = 0; e < ea + eb; ++e) v *= s(i);
            for (int e = 0; e < ea - eb; ++e) v *= t(i);
            for (int e = 0; e < eb - ea; ++e) v *= std::conj(t(i));
          }
          M(row, col) += v;
        }
    }
  }
  const double pref = std::exp(log_slice_prefactor(p, kappa, j, spec.lambda));
  for (int col = 0; col < dj; ++col)
    for (int row = 0; row < dj; ++row)
      M(row, col) *= pref / std::sqrt(factorial_vec(slice[static_cast<std::size_t>(row)]) *
                                      factorial_vec(slice[static_cast<std::size_t>(col)]));
  return M;
}

Eigen::MatrixXcd expand_slice_matrix(const Eigen::MatrixXcd& M, const BasisP& basis, int j) {
  const Partition& p = basis.partition;
  const auto slice = compositions(p.block_size(j), basis.kappa[j]);
  if (M.rows() != static_cast<Eigen::Index>(slice.size()) || M.cols() != M.rows())
    throw InputError("slice matrix has the wrong size");
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < slice.size(); ++i) index[slice[i]] = static_cast<int>(i);
  const int d = basis.size();
  std::vector<std::pair<int, std::vector<int>>> parts;
  parts.reserve(static_cast<std::size_t>(d));
  for (const auto& alpha : basis.alphas) {
    auto [blk, rest] = split_alpha(alpha, p, j);
    parts.emplace_back(index.at(blk), std::move(rest));
  }
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(d, d);
  for (int col = 0; col < d; ++col)
    for (int row = 0; row < d; ++row)
      if (parts[static_cast<std::size_t>(row)].second == parts[static_cast<std::size_t>(col)].second)
        T(row, col) = M(parts[static_cast<std::size_t>(row)].first, parts[static_cast<std::size_t>(col)].first);
  return T;
}

Block toeplitz_block_f(const Symbol& a, const KappaIndex& kappa, const QuadratureSpec& spec) {
  const Eigen::MatrixXcd M = reduced_matrix_f(a, kappa, spec);
  BasisP basis = enumerate_basis(a.partition(), kappa);
  Eigen::MatrixXcd T = expand_slice_matrix(M, basis, a.payloads().f->block);
  const auto d = T.rows();
  return Block{std::move(basis), std::move(T), Eigen::MatrixXd::Zero(d, d), 0.0};
}

Block toeplitz_block_g(const Symbol& a, const KappaIndex& kappa, const QuadratureSpec& spec) {
  const Eigen::MatrixXcd M = reduced_matrix_g(a, kappa, spec);
  BasisP basis = enumerate_basis(a.partition(), kappa);
  Eigen::MatrixXcd T = expand_slice_matrix(M, basis, a.payloads().g->block);
  const auto d = T.rows();
  return Block{std::move(basis), std::move(T), Eigen::MatrixXd::Zero(d, d), 0.0};
}

Block toeplitz_block_quadrature(const Symbol& a, const KappaIndex& kappa, const QuadratureSpec& spec) {
  if (!guarantees(a.invariance(), Group::tm()))
    throw InputError("toeplitz_block_quadrature: symbol '" + a.name() + "' is not declared T^m-invariant");
  const Partition& p = a.partition();
  if (kappa.size() != p.m()) throw InputError("kappa length does not match the partition");
  spec.validate();
  BasisP basis = enumerate_basis(p, kappa);
  const int d = basis.size();
  const RadialRule radial = radial_rule(p, kappa, spec);
  std::vector<SphereRule> spheres;
  long total = 1;
  for (int j = 0; j < p.m(); ++j) {
    spheres.push_back(sphere_rule(p.block_size(j), spec, true));
    total *= spheres.back().size();
  }
  MonomialEvaluator ev(p.n(), spec.lambda, basis.alphas);
  Eigen::VectorXcd c(total);
  Eigen::MatrixXcd E(total, d);
  Eigen::VectorXcd xi(p.n());
  Eigen::VectorXcd z(p.n());
  std::vector<int> idx(static_cast<std::size_t>(p.m()), 0);
  for (long s = 0; s < total; ++s) {
    double w = 1.0;
    for (int j = 0; j < p.m(); ++j) {
      const auto& sr = spheres[static_cast<std::size_t>(j)];
      xi.segment(p.offset(j), p.block_size(j)) = sr.xi.col(idx[static_cast<std::size_t>(j)]);
      w *= sr.w(idx[static_cast<std::size_t>(j)]);
    }
    cd acc = 0.0;
    for (int q = 0; q < radial.size(); ++q) {
      for (int j = 0; j < p.m(); ++j)
        z.segment(p.offset(j), p.block_size(j)) = radial.r(j, q) * xi.segment(p.offset(j), p.block_size(j));
      acc += radial.w(q) * a(z);
    }
    c(s) = w * acc;
    // e_alpha(xi) carries 1/sqrt(N_alpha) already
    ev.evaluate(xi, E.row(s));
    for (int j = p.m() - 1; j >= 0; --j) {
      if (++idx[static_cast<std::size_t>(j)] < spheres[static_cast<std::size_t>(j)].size()) break;
      idx[static_cast<std::size_t>(j)] = 0;
    }
  }
  Eigen::MatrixXcd T = normalizing_constant(p.n(), spec.lambda) * (E.adjoint() * c.asDiagonal() * E);
  return Block{std::move(basis), std::move(T), Eigen::MatrixXd::Zero(d, d), 0.0};
}

double gamma_prefactor(const Partition& p, const KappaIndex& kappa, double lambda) {
  double lg = p.m() * std::log(2.0) + log_gamma(p.n() + lambda + kappa.total() + 1.0) - log_gamma(lambda + 1.0);
  for (int j = 0; j < p.m(); ++j) lg -= log_factorial(p.block_size(j) + kappa[j] - 1);
  return std::exp(lg);
}

cd gamma_quasi_radial(const RadialProfile& profile, const KappaIndex& kappa, const Partition& p,
                      const QuadratureSpec& spec) {
  if (!profile) throw InputError("empty radial profile");
  const RadialRule rule = radial_rule(p, kappa, spec);
  cd acc = 0.0;
  for (int q = 0; q < rule.size(); ++q) acc += rule.w(q) * profile(rule.r.col(q));
  return gamma_prefactor(p, kappa, spec.lambda) * acc;
}

BlockOperator assemble_diagonal(const std::function<cd(const KappaIndex&)>& gamma, const Partition& p, int degree,
                                double lambda) {
  BlockOperator op;
  op.partition = p;
  op.lambda = lambda;
  op.degree = degree;
  op.provenance = Provenance::DiagonalGamma;
  for (const auto& kappa : enumerate_kappas(p, degree)) {
    BasisP basis = enumerate_basis(p, kappa);
    const int d = basis.size();
    op.blocks.push_back(Block{std::move(basis), gamma(kappa) * Eigen::MatrixXcd::Identity(d, d),
                              Eigen::MatrixXd::Zero(d, d), 0.0});
  }
  return op;
}

namespace {

void require_uk(const Eigen::MatrixXcd& A, const Partition& p) {
  if (A.rows() != p.n() || A.cols() != p.n()) throw InputError("unitary has the wrong size");
  if (!is_unitary(A)) throw InputError("matrix is not unitary");
  if (!is_block_diagonal(A, p)) throw InputError("matrix is not block diagonal for the partition");
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

Eigen::MatrixXcd unitary_action_matrix_direct(const Eigen::MatrixXcd& A, const Partition& p, const KappaIndex& kappa) {
  require_uk(A, p);
  const BasisP basis = enumerate_basis(p, kappa);
  const int d = basis.size();
  const int n = p.n();
  Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(d, d);
  for (int col = 0; col < d; ++col) {
    const MultiIndex& alpha = basis.alphas[static_cast<std::size_t>(col)];
    // (A^{-1} z)_i = sum_l conj(A(l, i)) z_l
    std::map<std::vector<int>, cd> poly{{std::vector<int>(static_cast<std::size_t>(n), 0), 1.0}};
    for (int i = 0; i < n; ++i)
      for (int e = 0; e < alpha[i]; ++e) {
        std::map<std::vector<int>, cd> next;
        for (const auto& [gamma, c] : poly)
          for (int l = 0; l < n; ++l) {
            const cd coef = std::conj(A(l, i));
            if (coef == 0.0) continue;
            auto g = gamma;
            ++g[static_cast<std::size_t>(l)];
            next[g] += c * coef;
          }
        poly = std::move(next);
      }
    const double fa = factorial(alpha);
    for (const auto& [gamma, c] : poly) {
      const MultiIndex g(gamma);
      const int row = basis.index_of(g);
      if (row < 0) {
        if (std::abs(c) > 1e-12) throw InputError("unitary does not preserve P_kappa");
        continue;
      }
      R(row, col) = c * std::sqrt(factorial(g) / fa);
    }
  }
  return R;
}

Eigen::MatrixXcd unitary_action_matrix(const Eigen::MatrixXcd& A, const Partition& p, const KappaIndex& kappa) {
  require_uk(A, p);
  if (kappa.size() != p.m()) throw InputError("kappa length does not match the partition");
  Eigen::MatrixXcd R = Eigen::MatrixXcd::Ones(1, 1);
  for (int j = 0; j < p.m(); ++j) {
    const int k = p.block_size(j);
    const Eigen::MatrixXcd Aj = A.block(p.offset(j), p.offset(j), k, k);
    R = kron(R, unitary_action_matrix_direct(Aj, Partition{k}, KappaIndex{kappa[j]}));
  }
  return R;
}

double deviation_from_scalar(const Eigen::MatrixXcd& M) {
  const auto d = M.rows();
  if (d == 0) return 0.0;
  return (M - (M.trace() / static_cast<double>(d)) * Eigen::MatrixXcd::Identity(d, d)).norm();
}

AveragedOperator average_operator(const BlockOperator& T, int samples, RandomStream& rng) {
  if (samples < 1) throw InputError("average_operator needs at least one sample");
  const Partition& p = T.partition;
  AveragedOperator out;
  out.op = T;
  out.op.provenance = Provenance::Averaged;
  for (auto& b : out.op.blocks) {
    b.matrix.setZero();
    b.stderr_.setZero(b.dim(), b.dim());
    b.trace_stderr = 0.0;
  }
  for (int i = 0; i < samples; ++i) {
    const Eigen::MatrixXcd A = haar_uk_sample(p, rng);
    std::map<std::pair<int, int>, Eigen::MatrixXcd> factors;
    for (std::size_t bi = 0; bi < T.blocks.size(); ++bi) {
      const auto& kappa = T.blocks[bi].kappa();
      Eigen::MatrixXcd R = Eigen::MatrixXcd::Ones(1, 1);
      for (int j = 0; j < p.m(); ++j) {
        auto key = std::make_pair(j, kappa[j]);
        auto it = factors.find(key);
        if (it == factors.end()) {
          const int k = p.block_size(j);
          it = factors
                   .emplace(key, unitary_action_matrix_direct(A.block(p.offset(j), p.offset(j), k, k), Partition{k},
                                                              KappaIndex{kappa[j]}))
                   .first;
        }
        R = kron(R, it->second);
      }
      out.op.blocks[bi].matrix.noalias() += R * T.blocks[bi].matrix * R.adjoint();
    }
  }
  for (auto& b : out.op.blocks) {
    b.matrix /= static_cast<double>(samples);
    out.deviation_from_scalar.push_back(deviation_from_scalar(b.matrix));
  }
  return out;
}

namespace {

Block build_block(Provenance path, const Symbol& a, const KappaIndex& kappa, const QuadratureSpec& spec,
                  RandomStream& rng) {
  switch (path) {
    case Provenance::Oracle: return toeplitz_block_oracle(a, kappa, spec, rng);
    case Provenance::FForm: return toeplitz_block_f(a, kappa, spec);
    case Provenance::GForm: return toeplitz_block_g(a, kappa, spec);
    case Provenance::Quadrature: return toeplitz_block_quadrature(a, kappa, spec);
    case Provenance::DiagonalGamma: {
      const auto& profile = a.payloads().profile;
      const auto kind = a.invariance().kind;
      if (!profile || (kind != InvarianceKind::QuasiRadial && kind != InvarianceKind::Radial))
        throw InputError("diagonal-gamma path needs a quasi-radial symbol with a profile");
      BasisP basis = enumerate_basis(a.partition(), kappa);
      const int d = basis.size();
      const cd g = gamma_quasi_radial(*profile, kappa, a.partition(), spec);
      return Block{std::move(basis), g * Eigen::MatrixXcd::Identity(d, d), Eigen::MatrixXd::Zero(d, d), 0.0};
    }
    case Provenance::Averaged: break;
  }
  throw InputError("operators cannot be built through the '" + to_string(path) + "' path");
}

}  // namespace

BlockOperator toeplitz_operator_via(Provenance path, const Symbol& a, int degree, const QuadratureSpec& spec,
                                    RandomStream& rng, int jobs) {
  spec.validate();
  BlockOperator op;
  op.partition = a.partition();
  op.lambda = spec.lambda;
  op.degree = degree;
  op.provenance = path;
  op.seed = rng.seed();
  op.symbol = a.name();
  if (!guarantees(a.invariance(), Group::tm()))
    op.warnings.push_back("symbol '" + a.name() +
                          "' is not declared T^m-invariant: blocks are the diagonal part of the compression to "
                          "|alpha| <= D and off-block entries are dropped");
  const auto kappas = enumerate_kappas(a.partition(), degree);
  op.blocks.resize(kappas.size());
  parallel_for(kappas.size(), jobs, [&](std::size_t i) {
    RandomStream sub = rng.split(i);
    op.blocks[i] = build_block(path, a, kappas[i], spec, sub);
  });
  return op;
}

BlockOperator toeplitz_operator(const Symbol& a, int degree, const QuadratureSpec& spec, RandomStream& rng, int jobs) {
  const auto kind = a.invariance().kind;
  const auto& pl = a.payloads();
  Provenance path = Provenance::Oracle;
  if (pl.profile && (kind == InvarianceKind::QuasiRadial || kind == InvarianceKind::Radial))
    path = Provenance::DiagonalGamma;
  else if (pl.g && kind == InvarianceKind::KJQuasiHomogeneous)
    path = Provenance::GForm;
  else if (pl.f && kind == InvarianceKind::KJQuasiHomogeneous)
    path = Provenance::FForm;
  return toeplitz_operator_via(path, a, degree, spec, rng, jobs);
}

}  // namespace bergman
