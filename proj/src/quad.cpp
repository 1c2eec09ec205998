#include "bergman/quad.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "bergman/errors.hpp"
#include "bergman/special.hpp"

namespace bergman {

using std::numbers::pi;

void QuadratureSpec::validate() const {
  if (!(lambda > -1.0) || !std::isfinite(lambda)) throw ConfigError("lambda must be a finite number > -1");
  if (radial_nodes < 1 || torus_nodes < 1 || sphere_nodes < 1) throw ConfigError("quadrature node counts must be >= 1");
  if (mc_samples < 2 || haar_samples < 2) throw ConfigError("Monte Carlo sample counts must be >= 2");
  if (invariance_samples < 1) throw ConfigError("invariance_samples must be >= 1");
  if (!(invariance_tol >= 0.0)) throw ConfigError("invariance_tol must be non-negative");
}

double normalizing_constant(int n, double lambda) {
  if (!(lambda > -1.0)) throw ConfigError("lambda must be > -1");
  return std::exp(log_gamma(n + lambda + 1.0) - log_gamma(lambda + 1.0) - n * std::log(pi));
}

void split_direction(const Eigen::VectorXcd& xi, Eigen::VectorXd& s, Eigen::VectorXcd& t) {
  s.resize(xi.size());
  t.resize(xi.size());
  for (Eigen::Index i = 0; i < xi.size(); ++i) {
    s(i) = std::abs(xi(i));
    t(i) = s(i) > 0.0 ? xi(i) / s(i) : std::complex<double>(1.0, 0.0);
  }
}

PolarCoords to_polar(const Eigen::VectorXcd& z, const Partition& p) {
  if (z.size() != p.n()) throw InputError("point dimension does not match the partition");
  PolarCoords out;
  out.r.resize(p.m());
  for (int j = 0; j < p.m(); ++j) {
    const Eigen::VectorXcd zj = z.segment(p.offset(j), p.block_size(j));
    const double rj = zj.norm();
    out.r(j) = rj;
    Eigen::VectorXcd xi;
    if (rj > 0.0) {
      xi = zj / rj;
    } else {
      xi = Eigen::VectorXcd::Zero(p.block_size(j));
      xi(0) = 1.0;
    }
    Eigen::VectorXd s;
    Eigen::VectorXcd t;
    split_direction(xi, s, t);
    out.xi.push_back(std::move(xi));
    out.s.push_back(std::move(s));
    out.t.push_back(std::move(t));
  }
  return out;
}

Eigen::VectorXcd from_polar(const Eigen::VectorXd& r, const std::vector<Eigen::VectorXcd>& xi, const Partition& p) {
  if (r.size() != p.m() || static_cast<int>(xi.size()) != p.m()) throw InputError("polar data does not match the partition");
  Eigen::VectorXcd z(p.n());
  for (int j = 0; j < p.m(); ++j) {
    if (xi[static_cast<std::size_t>(j)].size() != p.block_size(j)) throw InputError("direction length does not match block");
    z.segment(p.offset(j), p.block_size(j)) = r(j) * xi[static_cast<std::size_t>(j)];
  }
  return z;
}

GaussRule gauss_jacobi(int nodes, double a, double b) {
  if (nodes < 1) throw ConfigError("Gauss rule needs at least one node");
  if (!(a > -1.0) || !(b > -1.0)) throw ConfigError("Jacobi exponents must be > -1");
  // Jacobi on [-1, 1] with (1-y)^al (1+y)^be, then x = (1+y)/2.
  const double al = b;
  const double be = a;
  const double ab = al + be;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(nodes, nodes);
  J(0, 0) = (be - al) / (ab + 2.0);
  for (int i = 1; i < nodes; ++i) {
    const double c = 2.0 * i + ab;
    J(i, i) = (be * be - al * al) / (c * (c + 2.0));
    double off2;
    if (i == 1)
      off2 = 4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    else
      off2 = 4.0 * i * (i + al) * (i + be) * (i + ab) / (c * c * (c + 1.0) * (c - 1.0));
    J(i, i - 1) = J(i - 1, i) = std::sqrt(off2);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  const double mu0 = std::exp(log_gamma(a + 1.0) + log_gamma(b + 1.0) - log_gamma(a + b + 2.0));
  GaussRule rule;
  rule.x = (es.eigenvalues().array() + 1.0) / 2.0;
  rule.w = mu0 * es.eigenvectors().row(0).transpose().array().square();
  return rule;
}

GaussRule gauss_legendre(int nodes, double lo, double hi) {
  GaussRule rule = gauss_jacobi(nodes, 0.0, 0.0);
  rule.x = lo + (hi - lo) * rule.x.array();
  rule.w *= (hi - lo);
  return rule;
}

RadialRule radial_rule(const std::vector<double>& a, double lambda, int nodes) {
  if (!(lambda > -1.0)) throw ConfigError("lambda must be > -1");
  if (a.empty()) throw InputError("radial rule needs at least one coordinate");
  const int m = static_cast<int>(a.size());
  // u_j = r_j^2 on the simplex, Duffy collapse u_1 = x_1,
  // u_i = x_i prod_{l<i} (1 - x_l); each x_i carries a Jacobi weight.
  std::vector<GaussRule> rules;
  double tail = 0.0;
  std::vector<double> tails(static_cast<std::size_t>(m));
  for (int i = m - 1; i >= 0; --i) {
    tails[static_cast<std::size_t>(i)] = tail;
    tail += a[static_cast<std::size_t>(i)];
  }
  for (int i = 0; i < m; ++i)
    rules.push_back(gauss_jacobi(nodes, a[static_cast<std::size_t>(i)] - 1.0, lambda + tails[static_cast<std::size_t>(i)]));

  long total = 1;
  for (int i = 0; i < m; ++i) total *= nodes;
  RadialRule out;
  out.r.resize(m, total);
  out.w.resize(total);
  const double scale = std::ldexp(1.0, -m);
  std::vector<int> idx(static_cast<std::size_t>(m), 0);
  for (long q = 0; q < total; ++q) {
    double remaining = 1.0;
    double w = scale;
    for (int i = 0; i < m; ++i) {
      const auto& rule = rules[static_cast<std::size_t>(i)];
      const double x = rule.x(idx[static_cast<std::size_t>(i)]);
      out.r(i, q) = std::sqrt(remaining * x);
      remaining *= 1.0 - x;
      w *= rule.w(idx[static_cast<std::size_t>(i)]);
    }
    out.w(q) = w;
    for (int i = m - 1; i >= 0; --i) {
      if (++idx[static_cast<std::size_t>(i)] < nodes) break;
      idx[static_cast<std::size_t>(i)] = 0;
    }
  }
  return out;
}

RadialRule radial_rule(const Partition& p, const KappaIndex& kappa, const QuadratureSpec& spec) {
  if (kappa.size() != p.m()) throw InputError("kappa length does not match the partition");
  spec.validate();
  std::vector<double> a;
  for (int j = 0; j < p.m(); ++j) a.push_back(static_cast<double>(p.block_size(j) + kappa[j]));
  return radial_rule(a, spec.lambda, spec.radial_nodes);
}

double radial_mass(const Partition& p, const KappaIndex& kappa, double lambda) {
  if (!(lambda > -1.0)) throw ConfigError("lambda must be > -1");
  double lg = log_gamma(lambda + 1.0) - log_gamma(p.n() + lambda + kappa.total() + 1.0) - p.m() * std::log(2.0);
  for (int j = 0; j < p.m(); ++j) lg += log_gamma(static_cast<double>(p.block_size(j) + kappa[j]));
  return std::exp(lg);
}

TorusRule torus_rule(int k, int nodes) {
  if (k < 0 || nodes < 1) throw ConfigError("torus rule needs k >= 0 and at least one node");
  long total = 1;
  for (int i = 0; i < k; ++i) total *= nodes;
  TorusRule out;
  out.t.resize(k, total);
  out.w = Eigen::VectorXd::Constant(total, std::pow(2.0 * pi / nodes, k));
  for (long q = 0; q < total; ++q) {
    long rest = q;
    for (int i = 0; i < k; ++i) {
      const long l = rest % nodes;
      rest /= nodes;
      out.t(i, q) = std::polar(1.0, 2.0 * pi * static_cast<double>(l) / nodes);
    }
  }
  return out;
}

PositiveSphereRule positive_sphere_rule(int k, int nodes) {
  if (k < 1) throw InputError("sphere dimension must be >= 1");
  PositiveSphereRule out;
  if (k == 1) {
    out.s = Eigen::MatrixXd::Ones(1, 1);
    out.w = Eigen::VectorXd::Ones(1);
    return out;
  }
  const GaussRule g = gauss_legendre(nodes, 0.0, pi / 2.0);
  const int angles = k - 1;
  long total = 1;
  for (int i = 0; i < angles; ++i) total *= nodes;
  out.s.resize(k, total);
  out.w.resize(total);
  for (long q = 0; q < total; ++q) {
    long rest = q;
    double sin_prod = 1.0;
    double w = 1.0;
    for (int i = 0; i < angles; ++i) {
      const long l = rest % nodes;
      rest /= nodes;
      const double th = g.x(l);
      out.s(i, q) = sin_prod * std::cos(th);
      // measure prod_{i=1}^{k-2} sin^{k-1-i}(theta_i), i 1-based
      w *= g.w(l) * std::pow(std::sin(th), angles - 1 - i);
      sin_prod *= std::sin(th);
    }
    out.s(k - 1, q) = sin_prod;
    out.w(q) = w;
  }
  return out;
}

SphereRule sphere_rule(int k, const QuadratureSpec& spec, bool phase_reduced) {
  const PositiveSphereRule ps = positive_sphere_rule(k, spec.sphere_nodes);
  const int free = phase_reduced ? k - 1 : k;
  const TorusRule tr = torus_rule(free, spec.torus_nodes);
  const double extra = phase_reduced ? 2.0 * pi : 1.0;
  const long total = static_cast<long>(ps.size()) * tr.size();
  SphereRule out;
  out.s.resize(k, total);
  out.t.resize(k, total);
  out.xi.resize(k, total);
  out.w.resize(total);
  long q = 0;
  for (int a = 0; a < ps.size(); ++a) {
    const double jac = ps.s.col(a).prod();
    for (int b = 0; b < tr.size(); ++b, ++q) {
      out.s.col(q) = ps.s.col(a);
      if (phase_reduced) {
        out.t(0, q) = 1.0;
        if (free > 0) out.t.col(q).tail(free) = tr.t.col(b);
      } else {
        out.t.col(q) = tr.t.col(b);
      }
      out.xi.col(q) = out.t.col(q).cwiseProduct(out.s.col(q).cast<std::complex<double>>());
      out.w(q) = ps.w(a) * tr.w(b) * jac * extra;
    }
  }
  return out;
}

std::complex<double> sphere_monomial_integral(int k, const std::vector<int>& alpha, const std::vector<int>& beta) {
  if (static_cast<int>(alpha.size()) != k || static_cast<int>(beta.size()) != k)
    throw InputError("multi-index length does not match the sphere dimension");
  if (alpha != beta) return 0.0;
  const MultiIndex a(alpha);
  const double lg = std::log(2.0) + k * std::log(pi) + std::log(factorial(a)) - log_factorial(k - 1 + a.total());
  return std::exp(lg);
}

Eigen::MatrixXcd haar_unitary(int d, RandomStream& rng) {
  if (d < 1) throw InputError("unitary dimension must be >= 1");
  Eigen::MatrixXcd g(d, d);
  for (int c = 0; c < d; ++c)
    for (int r = 0; r < d; ++r) g(r, c) = rng.complex_normal();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(d, d);
  const auto& r = qr.matrixQR();
  for (int i = 0; i < d; ++i) {
    const double mod = std::abs(r(i, i));
    q.col(i) *= mod > 0.0 ? r(i, i) / mod : std::complex<double>(1.0, 0.0);
  }
  return q;
}

Eigen::MatrixXcd haar_uk_sample(const Partition& p, RandomStream& rng) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(p.n(), p.n());
  for (int j = 0; j < p.m(); ++j)
    a.block(p.offset(j), p.offset(j), p.block_size(j), p.block_size(j)) = haar_unitary(p.block_size(j), rng);
  return a;
}

BallSampler::BallSampler(int n, double lambda) : n_(n), lambda_(lambda) {
  if (n < 1) throw InputError("ball dimension must be >= 1");
  if (!(lambda > -1.0)) throw ConfigError("lambda must be > -1");
}

Eigen::VectorXcd BallSampler::operator()(RandomStream& rng) const {
  Eigen::VectorXcd z(n_);
  for (int i = 0; i < n_; ++i) z(i) = rng.complex_normal();
  const double rho = rng.beta(static_cast<double>(n_), lambda_ + 1.0);
  return z * (std::sqrt(rho) / z.norm());
}

}  // namespace bergman
