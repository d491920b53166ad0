#include <doctest.h>

#include <cmath>

#include "qcrit/qtensor.hpp"
#include "support.hpp"

using namespace qcrit;

namespace {

// Sum-over-environment partial trace written directly from the element
// definition, independent of the library's reshaping.
ComplexMatrix brute_rdm(const std::vector<std::size_t>& dims, std::span<const Complex> psi,
                        std::size_t i, std::size_t j) {
  const std::size_t n = dims.size();
  const std::size_t di = dims[i], dj = dims[j];
  ComplexMatrix rho(di * dj, di * dj);
  std::vector<std::size_t> digits(n, 0), other(n, 0);
  std::size_t total = psi.size();
  auto index_of = [&](const std::vector<std::size_t>& d) {
    std::size_t idx = 0;
    for (std::size_t s = 0; s < n; ++s) idx = idx * dims[s] + d[s];
    return idx;
  };
  for (std::size_t a = 0; a < total; ++a) {
    std::size_t rem = a;
    for (std::size_t s = n; s-- > 0;) {
      digits[s] = rem % dims[s];
      rem /= dims[s];
    }
    for (std::size_t g = 0; g < di; ++g)
      for (std::size_t d = 0; d < dj; ++d) {
        other = digits;
        other[i] = g;
        other[j] = d;
        // rho_{(ai bj),(g d)} += psi(.. ai .. bj ..) psi*(.. g .. d ..)
        rho(digits[i] * dj + digits[j], g * dj + d) += psi[a] * std::conj(psi[index_of(other)]);
      }
  }
  return rho;
}

}  // namespace

TEST_CASE("kron follows the index formula") {
  CHECK(max_abs_diff(kron(pauli::identity(), pauli::identity()), ComplexMatrix::identity(4)) == 0.0);
  const auto yy = kron(pauli::y(), pauli::y());
  CHECK(yy(0, 3) == Complex(-1.0));
  CHECK(yy(1, 2) == Complex(1.0));
  CHECK(yy(2, 1) == Complex(1.0));
  CHECK(yy(3, 0) == Complex(-1.0));
  const auto a = qt::random_matrix(2, 3), b = qt::random_matrix(3, 2);
  const auto k = kron(a, b);
  REQUIRE(k.rows() == 6);
  REQUIRE(k.cols() == 6);
  for (std::size_t ra = 0; ra < 2; ++ra)
    for (std::size_t ca = 0; ca < 3; ++ca)
      for (std::size_t rb = 0; rb < 3; ++rb)
        for (std::size_t cb = 0; cb < 2; ++cb)
          CHECK(k(3 * ra + rb, 2 * ca + cb) == a(ra, ca) * b(rb, cb));
}

TEST_CASE("PureState validates normalization") {
  CHECK_THROWS_AS(PureState({2}, {Complex(1.0), Complex(1.0)}), std::invalid_argument);
  CHECK_THROWS_AS(PureState({2, 2}, {Complex(1.0), Complex(0.0)}), std::invalid_argument);
  CHECK_NOTHROW(PureState::normalized({2}, {Complex(1.0), Complex(1.0)}));
}

TEST_CASE("reduced_density on Bell and GHZ states") {
  const double s = 1.0 / std::sqrt(2.0);
  const PureState bell({2, 2}, {s, 0.0, 0.0, s});
  const auto rho = reduced_density(bell, 0, 1);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      const double expect = ((r == 0 || r == 3) && (c == 0 || c == 3)) ? 0.5 : 0.0;
      CHECK(std::abs(rho.matrix()(r, c) - expect) < 1e-15);
    }
  std::vector<Complex> ghz(8);
  ghz[0] = s;
  ghz[7] = s;
  const auto r01 = reduced_density(PureState({2, 2, 2}, ghz), 0, 1);
  const double diag[] = {0.5, 0.0, 0.0, 0.5};
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      CHECK(std::abs(r01.matrix()(r, c) - (r == c ? diag[r] : 0.0)) < 1e-15);
  CHECK_THROWS_AS(reduced_density(bell, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(reduced_density(bell, 0, 2), std::out_of_range);
}

TEST_CASE("reduced_density matches the sum-over-environment oracle") {
  const std::vector<std::vector<std::size_t>> shapes{{2, 2, 2}, {2, 3, 2}, {3, 2, 3, 2}, {2, 2, 2, 2}};
  for (const auto& dims : shapes) {
    std::size_t dim = 1;
    for (auto d : dims) dim *= d;
    const PureState psi(dims, qt::random_amplitudes(dim));
    for (std::size_t i = 0; i < dims.size(); ++i)
      for (std::size_t j = 0; j < dims.size(); ++j) {
        if (i == j) continue;
        const auto rho = reduced_density(psi, i, j);
        CHECK(max_abs_diff(rho.matrix(), brute_rdm(dims, psi.amplitudes(), i, j)) < 1e-13);
        CHECK(is_hermitian(rho.matrix()));
        CHECK(std::abs(rho.matrix().trace() - 1.0) < 1e-12);
        CHECK_NOTHROW(rho.check_positive(1e-12));
      }
  }
}

TEST_CASE("reduced_density of reversed pair is the factor swap") {
  const PureState psi({2, 3, 2}, qt::random_amplitudes(12));
  const auto r02 = reduced_density(psi, 0, 1);
  const auto r20 = reduced_density(psi, 1, 0);
  CHECK(max_abs_diff(swap_factors(r02.matrix(), 2, 3), r20.matrix()) < 1e-15);
}

TEST_CASE("single_site_rdm") {
  const double s = 1.0 / std::sqrt(2.0);
  const auto bell = reduced_density(PureState({2, 2}, {s, 0.0, 0.0, s}), 0, 1);
  const auto half = ComplexMatrix::identity(2) * Complex(0.5);
  CHECK(max_abs_diff(single_site_rdm(bell, Site::first).matrix(), half) < 1e-15);
  CHECK(max_abs_diff(single_site_rdm(bell, Site::second).matrix(), half) < 1e-15);

  const auto prod = reduced_density(PureState({2, 2}, {0.0, 1.0, 0.0, 0.0}), 0, 1);
  const auto up = single_site_rdm(prod, Site::first).matrix();
  CHECK(up(0, 0) == Complex(1.0));
  CHECK(single_site_rdm(prod, Site::second).matrix()(1, 1) == Complex(1.0));

  const DensityMatrix rnd(qt::random_density(4), {2, 2});
  CHECK(std::abs(single_site_rdm(rnd, Site::first).matrix().trace() - 1.0) < 1e-14);
  CHECK_THROWS(single_site_rdm(DensityMatrix(ComplexMatrix::identity(2) * Complex(0.5), {2}), Site::first));
}

TEST_CASE("partial_transpose index rule, involution and spectra") {
  const DensityMatrix rho(qt::random_density(4), {2, 2});
  const auto pt = partial_transpose(rho);
  // <01|pt|10> = <11|rho|00>
  CHECK(pt(1, 2) == rho.matrix()(3, 0));
  CHECK(max_abs_diff(partial_transpose(pt, 2, 2), rho.matrix()) < 1e-16);
  CHECK(std::abs(pt.trace() - rho.matrix().trace()) < 1e-15);
  CHECK(is_hermitian(pt));

  const double s = 1.0 / std::sqrt(2.0);
  const auto bell = reduced_density(PureState({2, 2}, {s, 0.0, 0.0, s}), 0, 1);
  const auto mu = eigvals_hermitian(partial_transpose(bell));
  CHECK(mu[0] == doctest::Approx(-0.5).epsilon(1e-14));
  for (int k = 1; k < 4; ++k) CHECK(mu[k] == doctest::Approx(0.5).epsilon(1e-14));

  const auto prod = kron(qt::random_density(2), qt::random_density(2));
  for (double v : eigvals_hermitian(partial_transpose(prod, 2, 2))) CHECK(v > -1e-14);

  const auto big = qt::random_density(6);
  CHECK(max_abs_diff(partial_transpose(partial_transpose(big, 2, 3), 2, 3), big) == 0.0);
  CHECK_THROWS(partial_transpose(ComplexMatrix(4, 3), 2, 2));
  CHECK_THROWS(partial_transpose(ComplexMatrix(6, 6), 2, 2));
}

TEST_CASE("DensityMatrix validation") {
  CHECK_THROWS(DensityMatrix(ComplexMatrix::identity(4), {2, 2}));  // trace 4
  ComplexMatrix nh = qt::random_density(4);
  nh(0, 1) += Complex(0.1);
  CHECK_THROWS(DensityMatrix(nh, {2, 2}));
  ComplexMatrix neg = ComplexMatrix::diagonal(std::vector<double>{1.2, -0.2, 0.0, 0.0});
  const DensityMatrix d(neg, {2, 2});
  CHECK_THROWS_AS(d.check_positive(), std::domain_error);
}

TEST_CASE("sqrt_psd") {
  const auto root = sqrt_psd(ComplexMatrix::diagonal(std::vector<double>{4.0, 1.0}));
  CHECK(std::abs(root(0, 0) - 2.0) < 1e-14);
  CHECK(std::abs(root(1, 1) - 1.0) < 1e-14);
  const double s = 1.0 / std::sqrt(2.0);
  const auto p = reduced_density(PureState({2, 2}, {0.0, s, -s, 0.0}), 0, 1).matrix();
  CHECK(max_abs_diff(sqrt_psd(p), p) < 1e-12);
  for (std::size_t n : {2u, 4u, 9u, 70u}) {
    const auto m = qt::random_density(n);
    const auto r = sqrt_psd(m);
    CHECK(max_abs_diff(r * r, m) < 1e-10);
  }
  CHECK_THROWS_AS(sqrt_psd(ComplexMatrix::diagonal(std::vector<double>{1.0, -1e-6})), std::domain_error);
}
