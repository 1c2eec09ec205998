#include <cmath>
#include <numbers>

#include "bergman/errors.hpp"
#include "bergman/toeplitz.hpp"
#include "doctest.h"

using namespace bergman;
using cd = std::complex<double>;

namespace {

double max_z(const Eigen::MatrixXcd& diff, const Eigen::MatrixXd& se) {
  double worst = 0.0;
  for (Eigen::Index c = 0; c < diff.cols(); ++c)
    for (Eigen::Index r = 0; r < diff.rows(); ++r) {
      const double e = std::abs(diff(r, c));
      if (se(r, c) > 0.0) worst = std::max(worst, e / se(r, c));
      else if (e > 1e-12) worst = std::max(worst, 1e300);
    }
  return worst;
}

QuadratureSpec small_spec(double lambda = 0.0) {
  QuadratureSpec s;
  s.lambda = lambda;
  s.radial_nodes = 10;
  s.torus_nodes = 8;
  s.sphere_nodes = 12;
  s.mc_samples = 100000;
  return s;
}

// f(r, xi) on a 2-block: xi_1 conj(xi_2) + 0.5 |xi_1|^2 r_2^2 (not Hermitian on purpose)
FFunction quad_f() {
  return [](const Eigen::VectorXd& r, const Eigen::VectorXcd& xi) {
    return xi(0) * std::conj(xi(1)) + 0.5 * std::norm(xi(0)) * r(1) * r(1);
  };
}

}  // namespace

TEST_CASE("monomial_norm_sq examples") {
  CHECK(monomial_norm_sq(3, 0.7, MultiIndex{0, 0, 0}) == doctest::Approx(1.0));
  CHECK(monomial_norm_sq(1, 0.0, MultiIndex{2}) == doctest::Approx(1.0 / 3.0));
  CHECK(monomial_norm_sq(2, 0.0, MultiIndex{1, 0}) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("identity symbol through every path") {
  for (const Partition& p : {Partition{1, 2}, Partition{2, 2}})
    for (double lambda : {0.0, 2.5}) {
      const auto spec = small_spec(lambda);
      RandomStream rng(1);
      const Symbol one = constant_symbol(p, 1.0);
      const Symbol f_one = from_f(p, 1, [](const Eigen::VectorXd&, const Eigen::VectorXcd&) { return cd(1.0); });
      const Symbol g_one = from_g(p, 1, [](const Eigen::VectorXd&, const Eigen::VectorXd&, const Eigen::VectorXcd&) { return cd(1.0); });
      for (const auto& kappa : enumerate_kappas(p, 3)) {
        const auto d = static_cast<Eigen::Index>(dim_P(p, kappa));
        const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(d, d);
        CHECK((toeplitz_block_f(f_one, kappa, spec).matrix - I).cwiseAbs().maxCoeff() < 1e-8);
        CHECK((toeplitz_block_g(g_one, kappa, spec).matrix - I).cwiseAbs().maxCoeff() < 1e-8);
        CHECK((toeplitz_block_quadrature(one, kappa, spec).matrix - I).cwiseAbs().maxCoeff() < 1e-8);
        CHECK(std::abs(gamma_quasi_radial(*one.payloads().profile, kappa, p, spec) - 1.0) < 1e-8);
        const Block ob = toeplitz_block_oracle(one, kappa, spec, rng);
        CHECK(max_z(ob.matrix - I, ob.stderr_) < 5.0);
      }
    }
}

TEST_CASE("gamma for |z|^2 on the disc") {
  QuadratureSpec spec;
  const Partition p{1};
  const RadialProfile r2 = [](const Eigen::VectorXd& r) { return cd(r(0) * r(0)); };
  for (int k = 0; k <= 10; ++k)
    CHECK(std::abs(gamma_quasi_radial(r2, KappaIndex{k}, p, spec) - (k + 1.0) / (k + 2.0)) < 1e-12);
  const RadialProfile c = [](const Eigen::VectorXd&) { return cd(2.5, -1.0); };
  CHECK(std::abs(gamma_quasi_radial(c, KappaIndex{1, 3}, Partition{2, 1}, spec) - cd(2.5, -1.0)) < 1e-12);
  // Oracle: a = |z|^2 on the disc is (k+1)/(k+2) on z^k.
  RandomStream rng(3);
  const Symbol a = radial_polynomial(p, {{1.0, {2}}});
  for (int k : {0, 2, 5}) {
    const Block b = toeplitz_block_oracle(a, KappaIndex{k}, spec, rng);
    CHECK(std::abs(b.matrix(0, 0) - (k + 1.0) / (k + 2.0)) < 5.0 * b.stderr_(0, 0));
  }
}

TEST_CASE("f-form entries against the sphere monomial oracle") {
  const Partition p{2};
  const Symbol a = from_f(p, 0, [](const Eigen::VectorXd&, const Eigen::VectorXcd& xi) { return xi(0) * std::conj(xi(1)); });
  for (double lambda : {0.0, 1.5}) {
    const Block b = toeplitz_block_f(a, KappaIndex{1}, small_spec(lambda));
    // basis [(1,0), (0,1)]; row beta = (1,0), column alpha = (0,1)
    CHECK(std::abs(b.matrix(0, 1) - 1.0 / 3.0) < 1e-10);
    CHECK(std::abs(b.matrix(0, 0)) < 1e-12);
    CHECK(std::abs(b.matrix(1, 1)) < 1e-12);
    CHECK(std::abs(b.matrix(1, 0)) < 1e-12);
  }
}

TEST_CASE("f-form, g-form, quadrature and oracle agree") {
  const Partition p{2, 2};
  for (double lambda : {0.0, 1.5}) {
    const auto spec = small_spec(lambda);
    RandomStream rng(17);
    const Symbol fa = from_f(p, 0, quad_f());
    for (const KappaIndex& kappa : {KappaIndex{1, 1}, KappaIndex{2, 1}}) {
      const Block bf = toeplitz_block_f(fa, kappa, spec);
      const Block bq = toeplitz_block_quadrature(fa, kappa, spec);
      CHECK((bf.matrix - bq.matrix).cwiseAbs().maxCoeff() < 1e-8);
      const Block bo = toeplitz_block_oracle(fa, kappa, spec, rng);
      CHECK(max_z(bf.matrix - bo.matrix, bo.stderr_) < 5.0);
    }
  }
}

TEST_CASE("g = s1 s2 t1 conj(t2) matches f = xi1 conj(xi2); g = t1 conj(t2) matches its f") {
  const Partition p{2, 1};
  const auto spec = small_spec(0.5);
  const Symbol f1 = from_f(p, 0, [](const Eigen::VectorXd&, const Eigen::VectorXcd& xi) { return xi(0) * std::conj(xi(1)); });
  const Symbol g1 = from_g(p, 0, [](const Eigen::VectorXd&, const Eigen::VectorXd& s, const Eigen::VectorXcd& t) {
    return s(0) * s(1) * t(0) * std::conj(t(1));
  });
  const Symbol f2 = from_f(p, 0, [](const Eigen::VectorXd&, const Eigen::VectorXcd& xi) {
    return xi(0) * std::conj(xi(1)) / std::abs(xi(0) * xi(1));
  });
  const Symbol g2 = from_g(p, 0, [](const Eigen::VectorXd&, const Eigen::VectorXd&, const Eigen::VectorXcd& t) {
    return t(0) * std::conj(t(1));
  });
  for (const auto& kappa : enumerate_kappas(p, 4)) {
    CHECK((toeplitz_block_f(f1, kappa, spec).matrix - toeplitz_block_g(g1, kappa, spec).matrix).cwiseAbs().maxCoeff() < 1e-8);
    CHECK((toeplitz_block_f(f2, kappa, spec).matrix - toeplitz_block_g(g2, kappa, spec).matrix).cwiseAbs().maxCoeff() < 1e-8);
  }
  // The two symbols differ, so must their operators.
  const KappaIndex k11{1, 1};
  CHECK((toeplitz_block_g(g1, k11, spec).matrix - toeplitz_block_g(g2, k11, spec).matrix).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("wrong class is rejected by the reduced paths") {
  const Partition p{2, 2};
  const Symbol tm = phi_symbol(p, {1, 0, 0, 1}, {0, 1, 1, 0});
  CHECK_THROWS_AS(toeplitz_block_f(tm, KappaIndex{1, 1}, QuadratureSpec{}), InputError);
  CHECK_THROWS_AS(toeplitz_block_g(tm, KappaIndex{1, 1}, QuadratureSpec{}), InputError);
  const Symbol general = xi_monomial(p, {1, 0, 0, 0}, {0, 0, 0, 0});
  CHECK_THROWS_AS(toeplitz_block_quadrature(general, KappaIndex{1, 1}, QuadratureSpec{}), InputError);
}

TEST_CASE("assemble_diagonal") {
  const Partition p{1};
  const auto op = assemble_diagonal([](const KappaIndex& k) { return cd((k[0] + 1.0) / (k[0] + 2.0)); }, p, 4, 0.0);
  CHECK(op.blocks.size() == 5);
  CHECK(op.at(KappaIndex{3}).matrix(0, 0).real() == doctest::Approx(0.8));
  CHECK(op.provenance == Provenance::DiagonalGamma);
  CHECK_THROWS_AS(op.at(KappaIndex{7}), InputError);
}

TEST_CASE("unitary action matrices") {
  const Partition p{2, 1};
  RandomStream rng(23);
  for (const auto& kappa : enumerate_kappas(p, 4)) {
    const auto d = static_cast<Eigen::Index>(dim_P(p, kappa));
    CHECK((unitary_action_matrix(Eigen::MatrixXcd::Identity(3, 3), p, kappa) - Eigen::MatrixXcd::Identity(d, d)).norm() < 1e-14);
    const Eigen::MatrixXcd A = haar_uk_sample(p, rng);
    const Eigen::MatrixXcd B = haar_uk_sample(p, rng);
    const Eigen::MatrixXcd RA = unitary_action_matrix(A, p, kappa);
    CHECK((RA.adjoint() * RA - Eigen::MatrixXcd::Identity(d, d)).norm() <= 1e-10);
    CHECK((RA - unitary_action_matrix_direct(A, p, kappa)).norm() <= 1e-12);
    CHECK((RA * unitary_action_matrix(B, p, kappa) - unitary_action_matrix(A * B, p, kappa)).norm() <= 1e-10);
  }
  // diagonal A = diag(t) acts by t^{-alpha}
  Eigen::VectorXcd t(3);
  t << std::polar(1.0, 0.4), std::polar(1.0, -1.3), std::polar(1.0, 2.2);
  const KappaIndex kappa{2, 1};
  const auto basis = enumerate_basis(p, kappa);
  const Eigen::MatrixXcd R = unitary_action_matrix(Eigen::MatrixXcd(t.asDiagonal()), p, kappa);
  for (int i = 0; i < basis.size(); ++i) {
    cd expected = 1.0;
    for (int c = 0; c < 3; ++c) expected *= std::pow(std::conj(t(c)), basis.alphas[i][c]);
    CHECK(std::abs(R(i, i) - expected) < 1e-14);
  }
  CHECK(std::abs(R.norm() - std::sqrt(double(basis.size()))) < 1e-12);
  CHECK_THROWS_AS(unitary_action_matrix(haar_unitary(3, rng), p, kappa), InputError);
  CHECK_THROWS_AS(unitary_action_matrix(2.0 * Eigen::MatrixXcd::Identity(3, 3), p, kappa), InputError);
}

TEST_CASE("averaging keeps traces and fixes scalar blocks") {
  const Partition p{2, 2};
  const auto spec = small_spec();
  RandomStream rng(31);
  const Symbol fa = from_f(p, 0, quad_f());
  const BlockOperator T = toeplitz_operator(fa, 3, spec, rng);
  const auto avg = average_operator(T, 200, rng);
  for (std::size_t i = 0; i < T.blocks.size(); ++i) {
    const cd t0 = T.blocks[i].matrix.trace();
    CHECK(std::abs(avg.op.blocks[i].matrix.trace() - t0) <= 1e-12 * std::max(1.0, std::abs(t0)));
  }
  const auto diag = assemble_diagonal([](const KappaIndex& k) { return cd(1.0 / (1.0 + k.total())); }, p, 3, 0.0);
  const auto avg_diag = average_operator(diag, 50, rng);
  for (std::size_t i = 0; i < diag.blocks.size(); ++i)
    CHECK((avg_diag.op.blocks[i].matrix - diag.blocks[i].matrix).norm() < 1e-12);
}

TEST_CASE("dispatch and operator-level properties") {
  const Partition p{1, 2};
  const auto spec = small_spec();
  RandomStream rng(41);
  const auto one = toeplitz_operator(constant_symbol(p, 1.0), 3, spec, rng);
  CHECK(one.provenance == Provenance::DiagonalGamma);
  for (const auto& b : one.blocks) CHECK((b.matrix - Eigen::MatrixXcd::Identity(b.dim(), b.dim())).norm() < 1e-10);

  const Symbol qr = radial_polynomial(p, {{1.0, {2, 0}}, {0.5, {0, 4}}});
  const auto gam = toeplitz_operator(qr, 3, spec, rng);
  const auto orc = toeplitz_operator_via(Provenance::Oracle, qr, 3, spec, rng);
  for (std::size_t i = 0; i < gam.blocks.size(); ++i)
    CHECK(max_z(gam.blocks[i].matrix - orc.blocks[i].matrix, orc.blocks[i].stderr_) < 5.0);

  // real, non-negative symbol: Hermitian and positive semidefinite blocks
  const Symbol pos = from_f(p, 1, [](const Eigen::VectorXd& r, const Eigen::VectorXcd& xi) {
    return cd(std::norm(xi(0) + xi(1)) * (1.0 + r(0)));
  });
  CHECK(pos.real_valued());
  const auto fo = toeplitz_operator(pos, 4, spec, rng);
  CHECK(fo.provenance == Provenance::FForm);
  const auto oo = toeplitz_operator_via(Provenance::Oracle, pos, 4, spec, rng);
  for (std::size_t i = 0; i < fo.blocks.size(); ++i) {
    const auto& M = fo.blocks[i].matrix;
    CHECK((M - M.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
    CHECK(es.eigenvalues().minCoeff() > -1e-10);
    CHECK(max_z(M - oo.blocks[i].matrix, oo.blocks[i].stderr_) < 5.0);
  }

  const auto gen = toeplitz_operator(xi_monomial(p, {1, 0, 0}, {0, 0, 0}), 2, spec, rng);
  CHECK(gen.provenance == Provenance::Oracle);
  CHECK(gen.warnings.size() == 1);
}

TEST_CASE("jobs do not change results") {
  const Partition p{2, 1};
  auto spec = small_spec();
  spec.mc_samples = 5000;
  const Symbol a = phi_symbol(p, {1, 0, 0}, {0, 1, 0}, {{1.0, {0, 2}}});
  RandomStream r1(5), r2(5);
  const auto a1 = toeplitz_operator_via(Provenance::Oracle, a, 3, spec, r1, 1);
  const auto a2 = toeplitz_operator_via(Provenance::Oracle, a, 3, spec, r2, 3);
  for (std::size_t i = 0; i < a1.blocks.size(); ++i) CHECK((a1.blocks[i].matrix - a2.blocks[i].matrix).norm() == 0.0);
}
