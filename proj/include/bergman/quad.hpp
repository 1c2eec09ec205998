#pragma once

// Coordinates, measures, deterministic rules and samplers on the ball.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "bergman/mindex.hpp"
#include "bergman/rng.hpp"

namespace bergman {

/// Numeric reproducibility contract: every integral in a run is fixed by
/// these values.
struct QuadratureSpec {
  double lambda = 0.0;
  int radial_nodes = 16;       // Gauss-Jacobi nodes per radial coordinate
  int torus_nodes = 16;        // equispaced nodes per circle
  int sphere_nodes = 16;       // Gauss-Legendre nodes per spherical angle
  int mc_samples = 200000;     // ball samples per Monte Carlo estimate
  int haar_samples = 10000;    // Haar samples for averaging
  int invariance_samples = 256;
  double invariance_tol = 1e-10;
  std::uint64_t seed = 0;

  /// Throws ConfigError.
  void validate() const;
};

/// c_lambda = Gamma(n+lambda+1) / (pi^n Gamma(lambda+1)).
double normalizing_constant(int n, double lambda);

/// z_(j) = r_j xi_(j), xi_(j) = t_(j) . s_(j).
struct PolarCoords {
  Eigen::VectorXd r;
  std::vector<Eigen::VectorXcd> xi;
  std::vector<Eigen::VectorXd> s;
  std::vector<Eigen::VectorXcd> t;
};

/// Polar decomposition of z. Where r_j = 0 the direction is taken to be the
/// first basis vector; where a coordinate of xi vanishes its phase is 1.
PolarCoords to_polar(const Eigen::VectorXcd& z, const Partition& p);
Eigen::VectorXcd from_polar(const Eigen::VectorXd& r, const std::vector<Eigen::VectorXcd>& xi, const Partition& p);
/// (s, t) with xi = t . s.
void split_direction(const Eigen::VectorXcd& xi, Eigen::VectorXd& s, Eigen::VectorXcd& t);

/// Gauss rule for the weight x^a (1-x)^b on [0, 1] (Golub-Welsch).
struct GaussRule {
  Eigen::VectorXd x;
  Eigen::VectorXd w;
};
GaussRule gauss_jacobi(int nodes, double a, double b);
GaussRule gauss_legendre(int nodes, double lo, double hi);

/// Rule on tau(B^m) for the weight (1-|r|^2)^lambda prod r_j^(2 a_j - 1).
/// Columns of r are nodes.
struct RadialRule {
  Eigen::MatrixXd r;
  Eigen::VectorXd w;
  int size() const { return static_cast<int>(w.size()); }
};
RadialRule radial_rule(const std::vector<double>& a, double lambda, int nodes);
/// The rule with a_j = k_j + kappa_j.
RadialRule radial_rule(const Partition& p, const KappaIndex& kappa, const QuadratureSpec& spec);
/// Closed form of the radial integral of 1 for a_j = k_j + kappa_j.
double radial_mass(const Partition& p, const KappaIndex& kappa, double lambda);

/// Equispaced product rule on T^k, N^k nodes of weight (2 pi / N)^k.
struct TorusRule {
  Eigen::MatrixXcd t;
  Eigen::VectorXd w;
  int size() const { return static_cast<int>(w.size()); }
};
TorusRule torus_rule(int k, int nodes);

/// Surface measure on S_+^(k-1) through k-1 angles in [0, pi/2].
struct PositiveSphereRule {
  Eigen::MatrixXd s;
  Eigen::VectorXd w;
  int size() const { return static_cast<int>(w.size()); }
};
PositiveSphereRule positive_sphere_rule(int k, int nodes);

/// Rule on the unit sphere of C^k from xi = t . s, dxi = s^(1_k) ds dt; the
/// Jacobian is folded into w. With phase_reduced the first phase is pinned to
/// 1 and the weight carries the missing 2 pi; this integrates exactly the
/// same functions only when they are invariant under xi -> eta xi.
struct SphereRule {
  Eigen::MatrixXd s;
  Eigen::MatrixXcd t;
  Eigen::MatrixXcd xi;
  Eigen::VectorXd w;
  int size() const { return static_cast<int>(w.size()); }
};
SphereRule sphere_rule(int k, const QuadratureSpec& spec, bool phase_reduced);

/// Integral of xi^alpha conj(xi)^beta over the unit sphere of C^k:
/// delta_{alpha beta} 2 pi^k alpha! / (k - 1 + |alpha|)!.
std::complex<double> sphere_monomial_integral(int k, const std::vector<int>& alpha, const std::vector<int>& beta);

/// Haar-distributed element of U(d).
Eigen::MatrixXcd haar_unitary(int d, RandomStream& rng);
/// Independent Haar blocks on the diagonal, zeros elsewhere.
Eigen::MatrixXcd haar_uk_sample(const Partition& p, RandomStream& rng);

/// Draws from dv_lambda: |z|^2 ~ Beta(n, lambda+1) and a uniform direction.
class BallSampler {
 public:
  BallSampler(int n, double lambda);
  Eigen::VectorXcd operator()(RandomStream& rng) const;
  int n() const { return n_; }
  double lambda() const { return lambda_; }

 private:
  int n_;
  double lambda_;
};

}  // namespace bergman
