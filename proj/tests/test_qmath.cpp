#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "spinergo/qmath.hpp"
#include "test_util.hpp"

using namespace spinergo;
using namespace spinergo::qmath;

namespace {

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

TEST_CASE("herm_eig on diagonal and textbook inputs") {
  Matrix d01 = mat2(0, 0, 0, 1);
  auto es = herm_eig(d01);
  CHECK(es.values(0) == doctest::Approx(0.0));
  CHECK(es.values(1) == doctest::Approx(1.0));
  CHECK(testutil::max_abs_diff(es.vectors.cwiseAbs(),
                               Matrix::Identity(2, 2)) < 1e-12);

  Matrix px = mat2(0, 1, 1, 0);
  auto ex = herm_eig(px);
  CHECK(ex.values(0) == doctest::Approx(-1.0));
  CHECK(ex.values(1) == doctest::Approx(1.0));
}

TEST_CASE("herm_eig round-trip on random Hermitian matrices") {
  auto g = testutil::make_rng(11);
  for (Eigen::Index d = 2; d <= 9; ++d) {
    for (int rep = 0; rep < 20; ++rep) {
      Matrix m = testutil::random_hermitian(d, g);
      auto es = herm_eig(m);
      Matrix rebuilt = es.vectors *
                       es.values.asDiagonal().toDenseMatrix().cast<Complex>() *
                       es.vectors.adjoint();
      CHECK(testutil::max_abs_diff(rebuilt, m) < 1e-10);
      CHECK(qmath::max_abs(es.vectors * es.vectors.adjoint() -
                           Matrix::Identity(d, d)) < 1e-12);
      for (Eigen::Index i = 1; i < d; ++i) CHECK(es.values(i) >= es.values(i - 1));
    }
  }
}

TEST_CASE("herm_eig rejects non-Hermitian input") {
  Matrix m = mat2(0, 1, 0, 0);
  CHECK_THROWS_AS(herm_eig(m), NonHermitian);
}

TEST_CASE("matrix_exp basics") {
  auto g = testutil::make_rng(12);
  Matrix m = testutil::random_hermitian(3, g);
  CHECK(testutil::max_abs_diff(matrix_exp(m, Complex{0, 0}),
                               Matrix::Identity(3, 3)) < 1e-14);

  // exp(-i diag(eps,0) tau) with eps*tau = 0.525
  Matrix h = mat2(1.05, 0, 0, 0);
  Matrix u = matrix_exp(h, Complex{0.0, -0.5});
  CHECK(std::abs(u(0, 0) - std::exp(Complex{0, -0.525})) < 1e-14);
  CHECK(std::abs(u(1, 1) - Complex{1, 0}) < 1e-14);
  CHECK(std::abs(u(0, 1)) < 1e-14);
}

TEST_CASE("matrix_exp matches Taylor series oracle") {
  auto g = testutil::make_rng(13);
  for (int rep = 0; rep < 10; ++rep) {
    Matrix h = testutil::random_hermitian(4, g);
    CHECK(testutil::max_abs_diff(matrix_exp(h), testutil::exp_series(h)) < 1e-12);
    Matrix anti = Complex{0, -1} * h;
    CHECK(testutil::max_abs_diff(matrix_exp(h, Complex{0, -1}),
                                 testutil::exp_series(anti)) < 1e-12);
    // non-normal path (Pade)
    Matrix n = 0.5 * testutil::ginibre(4, g);
    CHECK(testutil::max_abs_diff(matrix_exp(n), testutil::exp_series(n)) < 1e-11);
  }
}

TEST_CASE("matrix_exp of -iHt is unitary") {
  auto g = testutil::make_rng(14);
  for (int rep = 0; rep < 30; ++rep) {
    Matrix h = testutil::random_hermitian(5, g);
    Matrix u = matrix_exp(h, Complex{0, -0.7});
    CHECK(qmath::max_abs(u.adjoint() * u - Matrix::Identity(5, 5)) < 1e-12);
  }
}

TEST_CASE("matrix_exp rejects non-square input") {
  Matrix m(2, 3);
  m.setZero();
  CHECK_THROWS_AS(matrix_exp(m), DimensionMismatch);
}

TEST_CASE("tensor_product identities and projector case") {
  Matrix i2 = Matrix::Identity(2, 2);
  CHECK(testutil::max_abs_diff(tensor_product(i2, i2), Matrix::Identity(4, 4)) ==
        0.0);

  Matrix p = mat2(1, 0, 0, 0);
  Matrix d = mat2(Complex{0.3, 0}, 0, 0, Complex{0.7, 0});
  Matrix t = tensor_product(p, d);
  Matrix expect = Matrix::Zero(4, 4);
  expect(0, 0) = 0.3;
  expect(1, 1) = 0.7;
  CHECK(testutil::max_abs_diff(t, expect) == 0.0);
}

TEST_CASE("tensor_product mixed-product property") {
  auto g = testutil::make_rng(15);
  for (int rep = 0; rep < 20; ++rep) {
    Matrix a = testutil::ginibre(2, g), b = testutil::ginibre(2, g);
    Matrix c = testutil::ginibre(2, g), d = testutil::ginibre(2, g);
    CHECK(testutil::max_abs_diff(tensor_product(a, b) * tensor_product(c, d),
                                 tensor_product(a * c, b * d)) < 1e-12);
  }
}

TEST_CASE("partial_trace recovers factors of a product state") {
  auto g = testutil::make_rng(16);
  Matrix ra = testutil::random_density(2, g);
  Matrix rb = testutil::random_density(3, g);
  DensityMatrix joint{tensor_product(ra, rb)};
  CHECK(testutil::max_abs_diff(partial_trace(joint, {2, 3}, 0).mat(), ra) < 1e-12);
  CHECK(testutil::max_abs_diff(partial_trace(joint, {2, 3}, 1).mat(), rb) < 1e-12);
}

TEST_CASE("partial_trace of a maximally entangled pair gives I/2") {
  Vector bell(4);
  bell << 1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0);
  auto rho = DensityMatrix::pure(bell);
  for (int keep : {0, 1}) {
    auto red = partial_trace(rho, {2, 2}, keep);
    CHECK(testutil::max_abs_diff(red.mat(), Matrix::Identity(2, 2) / 2.0) < 1e-12);
  }
}

TEST_CASE("partial_trace matches the explicit joint-state construction") {
  // Joint state 1/2 [[rho, rho U^dag],[U rho, U rho U^dag]] traced over the
  // system must give 1/2 [[1, Tr(rho U^dag)],[Tr(rho U), 1]].
  Vector psi(2);
  psi << std::sqrt(2.0 / 3.0), std::sqrt(1.0 / 3.0);
  Matrix rho = psi * psi.adjoint();
  Matrix u = mat2(std::exp(Complex{0, -0.525}), 0, 0, 1);
  Matrix joint(4, 4);
  joint.block(0, 0, 2, 2) = rho / 2.0;
  joint.block(0, 2, 2, 2) = rho * u.adjoint() / 2.0;
  joint.block(2, 0, 2, 2) = u * rho / 2.0;
  joint.block(2, 2, 2, 2) = u * rho * u.adjoint() / 2.0;
  auto anc = partial_trace(DensityMatrix{joint}, {2, 2}, 0);
  const Complex offdiag = (rho * u.adjoint()).trace() / 2.0;
  CHECK(std::abs(anc(0, 0) - Complex{0.5, 0}) < 1e-12);
  CHECK(std::abs(anc(1, 1) - Complex{0.5, 0}) < 1e-12);
  CHECK(std::abs(anc(0, 1) - offdiag) < 1e-12);
}

TEST_CASE("partial_trace preserves trace and positivity") {
  auto g = testutil::make_rng(17);
  for (int rep = 0; rep < 50; ++rep) {
    DensityMatrix joint{testutil::random_density(6, g)};
    for (int keep : {0, 1}) {
      auto red = partial_trace(joint, {2, 3}, keep);
      CHECK(std::abs(red.mat().trace().real() - 1.0) < 1e-12);
      Eigen::SelfAdjointEigenSolver<Matrix> es(red.mat(), Eigen::EigenvaluesOnly);
      CHECK(es.eigenvalues().minCoeff() > -1e-12);
    }
  }
  CHECK_THROWS_AS(partial_trace(DensityMatrix::maximally_mixed(6), {2, 2}, 0),
                  DimensionMismatch);
}

TEST_CASE("von Neumann entropy reference values") {
  auto g = testutil::make_rng(18);
  auto pure = DensityMatrix::pure(testutil::random_ket(4, g));
  CHECK(von_neumann_entropy(pure) == doctest::Approx(0.0).epsilon(1e-10));

  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(2)) ==
        doctest::Approx(std::log(2.0)));

  // scalar oracle for diag(2/3, 1/3)
  const double expected =
      -(2.0 / 3.0) * std::log(2.0 / 3.0) - (1.0 / 3.0) * std::log(1.0 / 3.0);
  Eigen::VectorXd pops(2);
  pops << 2.0 / 3.0, 1.0 / 3.0;
  CHECK(von_neumann_entropy(DensityMatrix::diagonal(pops)) ==
        doctest::Approx(expected).epsilon(1e-14));
  CHECK(expected == doctest::Approx(0.6365).epsilon(2e-4));
}

TEST_CASE("relative entropy reference values and support violation") {
  auto g = testutil::make_rng(19);
  DensityMatrix rho{testutil::random_density(3, g)};
  CHECK(relative_entropy(rho, rho) == doctest::Approx(0.0).epsilon(1e-12));

  // pure rho_S against its dephased state: D = S(delta) - S(rho) = S(delta)
  Vector psi(2);
  psi << std::sqrt(2.0 / 3.0), std::sqrt(1.0 / 3.0);
  auto rs = DensityMatrix::pure(psi);
  Eigen::VectorXd pops(2);
  pops << 2.0 / 3.0, 1.0 / 3.0;
  auto delta = DensityMatrix::diagonal(pops);
  const double expected =
      -(2.0 / 3.0) * std::log(2.0 / 3.0) - (1.0 / 3.0) * std::log(1.0 / 3.0);
  CHECK(relative_entropy(rs, delta) == doctest::Approx(expected).epsilon(1e-12));

  Eigen::VectorXd e0(2), e1(2);
  e0 << 1, 0;
  e1 << 0, 1;
  auto excited = DensityMatrix::diagonal(e0);
  auto ground = DensityMatrix::diagonal(e1);
  CHECK(std::isinf(relative_entropy(excited, ground)));
}

TEST_CASE("Klein inequality on random pairs") {
  auto g = testutil::make_rng(20);
  for (int rep = 0; rep < 10000; ++rep) {
    const Eigen::Index d = 2 + (rep % 3);
    DensityMatrix rho{testutil::random_density(d, g)};
    DensityMatrix sigma{testutil::random_density(d, g)};
    CHECK(relative_entropy(rho, sigma) >= 0.0);
  }
}

TEST_CASE("state fidelity reference values") {
  auto g = testutil::make_rng(21);
  DensityMatrix rho{testutil::random_density(3, g)};
  CHECK(state_fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-10));

  Eigen::VectorXd e0(2), e1(2);
  e0 << 1, 0;
  e1 << 0, 1;
  CHECK(state_fidelity(DensityMatrix::diagonal(e0), DensityMatrix::diagonal(e1)) ==
        doctest::Approx(0.0).epsilon(1e-12));

  for (double p : {0.1, 0.5, 0.9}) {
    Eigen::VectorXd mix(2);
    mix << p, 1 - p;
    CHECK(state_fidelity(DensityMatrix::diagonal(e0), DensityMatrix::diagonal(mix)) ==
          doctest::Approx(p).epsilon(1e-10));
  }
}

TEST_CASE("fidelity is symmetric, bounded, and equals pure overlap") {
  auto g = testutil::make_rng(22);
  for (int rep = 0; rep < 100; ++rep) {
    DensityMatrix a{testutil::random_density(3, g)};
    DensityMatrix b{testutil::random_density(3, g)};
    const double f = state_fidelity(a, b);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    CHECK(f == doctest::Approx(state_fidelity(b, a)).epsilon(1e-9));
  }
  for (int rep = 0; rep < 50; ++rep) {
    Vector u = testutil::random_ket(3, g), v = testutil::random_ket(3, g);
    const double overlap = std::norm(u.dot(v));
    // sqrt-eigenvalue noise floor is ~sqrt(machine eps)
    CHECK(std::abs(state_fidelity(DensityMatrix::pure(u), DensityMatrix::pure(v)) -
                   overlap) < 1e-7);
  }
}

TEST_CASE("density matrix validation") {
  Matrix bad = mat2(0.5, Complex{0, 0.3}, Complex{0, 0.3}, 0.5);
  CHECK_THROWS(DensityMatrix{bad});  // not Hermitian
  Matrix neg = mat2(1.2, 0, 0, -0.2);
  CHECK_THROWS_AS(DensityMatrix{neg}, DomainError);
  Matrix tr = mat2(0.6, 0, 0, 0.6);
  CHECK_THROWS_AS(DensityMatrix{tr}, DomainError);
}

TEST_CASE("HamiltonianSpec canonicalizes ordering") {
  Eigen::VectorXd e(2);
  e << 1.05, 0.0;
  auto h = HamiltonianSpec::diagonal(e);
  CHECK(h.energies()(0) == 0.0);
  CHECK(h.energies()(1) == 1.05);
  CHECK(h.span() == doctest::Approx(1.05));
  // eigenvector for the low energy is |g> = (0,1)
  CHECK(std::abs(h.eigenvectors()(1, 0)) == doctest::Approx(1.0));
  CHECK(testutil::max_abs_diff(h.matrix(), mat2(1.05, 0, 0, 0)) < 1e-14);
}
