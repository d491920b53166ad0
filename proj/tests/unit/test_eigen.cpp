#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "qcrit/qtensor.hpp"
#include "support.hpp"

using namespace qcrit;

namespace {

double residual(const ComplexMatrix& m, const EigenSystem& sys) {
  const std::size_t n = m.rows();
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<Complex> v(n);
    for (std::size_t r = 0; r < n; ++r) v[r] = sys.vectors(r, k);
    const auto mv = matvec(m, v);
    for (std::size_t r = 0; r < n; ++r) worst = std::max(worst, std::abs(mv[r] - sys.values[k] * v[r]));
  }
  return worst;
}

double orthonormality(const EigenSystem& sys) {
  const auto gram = sys.vectors.adjoint() * sys.vectors;
  return max_abs_diff(gram, ComplexMatrix::identity(gram.rows()));
}

std::vector<double> eigen_oracle(const ComplexMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.rows());
  Eigen::MatrixXcd e(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) e(r, c) = m(r, c);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(e);
  std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  return out;
}

}  // namespace

TEST_CASE("trivial spectra") {
  const auto id = eig_hermitian(ComplexMatrix::identity(4));
  for (double v : id.values) CHECK(v == doctest::Approx(1.0));
  const auto sx = eig_hermitian(pauli::x());
  CHECK(sx.values[0] == doctest::Approx(-1.0));
  CHECK(sx.values[1] == doctest::Approx(1.0));
}

TEST_CASE("Jacobi and Householder paths agree with an independent solver") {
  for (std::size_t n : {3u, 16u, 17u, 64u, 100u, 200u}) {
    const auto m = qt::random_hermitian(n);
    const auto sys = eig_hermitian(m);
    const auto ref = eigen_oracle(m);
    double scale = 0.0;
    for (double v : ref) scale = std::max(scale, std::abs(v));
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(sys.values[k] - ref[k]) < 1e-11 * scale);
    CHECK(residual(m, sys) < 1e-10 * scale);
    CHECK(orthonormality(sys) < 1e-10);
    double sum = 0.0;
    for (double v : sys.values) sum += v;
    CHECK(std::abs(sum - m.trace().real()) < 1e-10 * std::max(1.0, std::abs(sum)));
    CHECK(std::is_sorted(sys.values.begin(), sys.values.end()));
    const auto vals = eigvals_hermitian(m);
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(vals[k] - sys.values[k]) < 1e-11 * scale);
  }
}

TEST_CASE("both backends on the same input") {
  const auto m = qt::random_hermitian(40);
  const auto a = detail::jacobi_eigen(m);
  const auto b = detail::householder_ql_eigen(m, true);
  for (std::size_t k = 0; k < 40; ++k) CHECK(std::abs(a.values[k] - b.values[k]) < 1e-12);
  CHECK(residual(m, b) < 1e-11);
}

TEST_CASE("degenerate and structured inputs") {
  // Heavily degenerate: projector of rank 3 in dimension 80.
  ComplexMatrix v = qt::random_matrix(80, 3);
  ComplexMatrix p = v * v.adjoint();
  const auto sys = eig_hermitian(p);
  CHECK(residual(p, sys) < 1e-10 * sys.values.back());
  CHECK(orthonormality(sys) < 1e-10);
  std::size_t zeros = 0;
  for (double x : sys.values) zeros += std::abs(x) < 1e-10 * sys.values.back();
  CHECK(zeros == 77);
  // Already diagonal and already tridiagonal real input.
  const auto d = eig_hermitian(ComplexMatrix::diagonal(std::vector<double>(90, 2.5)));
  for (double x : d.values) CHECK(x == doctest::Approx(2.5));
}

TEST_CASE("non-Hermitian input is rejected") {
  ComplexMatrix m = qt::random_hermitian(5);
  m(0, 1) += Complex(0.0, 1e-3);
  CHECK_THROWS_AS(eig_hermitian(m), std::invalid_argument);
  CHECK_THROWS_AS(eig_hermitian(ComplexMatrix(2, 3)), std::invalid_argument);
}
