#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qcrit/ed.hpp"
#include "qcrit/ising.hpp"

using namespace qcrit;
using ising::IsingParams;
using ising::Method;

namespace {

// Direct k-sum for the xx correlator through Wick's theorem on Majorana
// pairs, written without the Bogoliubov angle: (1/N) sum (cos k + lambda)/omega.
double xx_oracle(std::size_t n, double lam) {
  double acc = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    const double k = (2.0 * static_cast<double>(m) + 1.0 - static_cast<double>(n)) *
                     std::numbers::pi / static_cast<double>(n);
    acc += (std::cos(k) + lam) / std::sqrt(1.0 + lam * lam + 2.0 * lam * std::cos(k));
  }
  return acc / static_cast<double>(n);
}

double energy_fd2(std::size_t n, double lam, double h) {
  // Richardson on the symmetric second difference, steps h and h / 2.
  auto e = [&](double x) { return ising::energy_density(IsingParams(n, x)); };
  auto d2 = [&](double s) { return (e(lam + s) - 2.0 * e(lam) + e(lam - s)) / (s * s); };
  return (4.0 * d2(h / 2.0) - d2(h)) / 3.0;
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(IsingParams(7, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(IsingParams(2, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(IsingParams(8, -0.1), std::invalid_argument);
  CHECK_NOTHROW(IsingParams(4, 0.0));
}

TEST_CASE("limits") {
  const auto c0 = ising::correlators(IsingParams(100, 0.0));
  CHECK(c0.mz == 1.0);
  CHECK(std::abs(c0.g_plus) < 1e-15);
  CHECK(std::abs(c0.g_minus) < 1e-15);
  const auto rho0 = ising::rdm_nn(IsingParams(100, 0.0));
  CHECK(std::abs(rho0.element(1, 1) - 1.0) < 1e-15);
  CHECK(ising::energy_density(IsingParams(100, 0.0)) == doctest::Approx(-1.0));
  CHECK(ising::concurrence_ising(IsingParams(100, 0.0)) == 0.0);

  const auto big = ising::correlators(IsingParams(100, 1e6));
  CHECK(std::abs(big.xx() - 1.0) < 1e-6);
  CHECK(std::abs(big.yy()) < 1e-6);
  CHECK(std::abs(big.mz) < 1e-6);
  CHECK(ising::concurrence_ising(IsingParams(100, 1e6)) < 1e-6);
}

TEST_CASE("xx correlator against a direct k-sum") {
  for (double lam : {0.1, 0.7, 1.0, 1.9}) {
    const auto c = ising::correlators(IsingParams(64, lam));
    CHECK(std::abs(c.xx() - xx_oracle(64, lam)) < 1e-14);
  }
}

TEST_CASE("critical values approach the closed-form integrals") {
  const IsingParams p(3050, 1.0);
  CHECK(std::abs(ising::correlators(p).mz - 2.0 / std::numbers::pi) < 2e-3);
  CHECK(std::abs(ising::energy_density(p) + 4.0 / std::numbers::pi) < 2e-3);
}

TEST_CASE("RDM structure and validity") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int t = 0; t < 200; ++t) {
    const auto rho = ising::rdm_nn(IsingParams(40, u(rng)));
    CHECK(std::abs(rho.matrix().trace() - 1.0) < 1e-14);
    CHECK_NOTHROW(rho.check_positive(1e-12));
    CHECK(rho.element(1, 2) == Complex(0.0));
    CHECK(rho.element(2, 2) == rho.element(3, 3));
  }
}

TEST_CASE("free fermions against exact diagonalization") {
  for (std::size_t n : {8u, 10u}) {
    const auto chain = ising::hamiltonian(n);
    for (double lam : {0.3, 0.5, 0.8, 1.2, 1.6}) {
      const auto level = ed::ground_level(chain, lam);
      const IsingParams p(n, lam);
      CHECK(max_abs_diff(ed::averaged_rdm(level, 0, 1).matrix(), ising::rdm_nn(p).matrix()) < 1e-10);
      CHECK(std::abs(level.energy / static_cast<double>(n) - ising::energy_density(p)) < 1e-10);
    }
  }
}

TEST_CASE("energy expressions agree") {
  for (double lam : {0.25, 0.5, 1.0, 1.5}) {
    const IsingParams p(200, lam);
    CHECK(std::abs(ising::energy_from_rdm(ising::rdm_nn(p), lam) - ising::energy_density(p)) < 1e-12);
    const double h = 1e-4;
    const double fd = (ising::energy_density(IsingParams(200, lam + h)) -
                       ising::energy_density(IsingParams(200, lam - h))) / (2.0 * h);
    CHECK(std::abs(ising::denergy_dlambda(p) - fd) < 1e-7);
  }
}

TEST_CASE("analytic and finite-difference derivatives") {
  for (double lam : {0.2, 0.5, 0.9, 1.5}) {
    const IsingParams p(1000, lam);
    const auto a = ising::drho_dlambda(p, Method::analytic);
    const auto f = ising::drho_dlambda(p, Method::fd);
    CHECK(max_abs_diff(a, f) < (lam == 0.5 ? 1e-8 : 1e-7));
    CHECK(std::abs(a.trace()) < 1e-10);
    CHECK(std::abs(f.trace()) < 1e-10);
  }
  CHECK_THROWS_AS(ising::drho_dlambda(IsingParams(100, 0.0005), Method::fd, 1e-3), std::domain_error);
  CHECK_THROWS_AS(ising::drho_dlambda(IsingParams(100, 0.5), Method::fd, 1e-10), std::domain_error);
}

TEST_CASE("drho22 dominates near the critical point") {
  const auto d = ising::drho_dlambda(IsingParams(1000, 0.999), Method::analytic);
  const double d22 = std::abs(d(1, 1).real());
  CHECK(d22 > std::abs(d(3, 3).real()));
  CHECK(d22 > std::abs(d(0, 3).real()));
  // dC/dlambda is carried by -2 drho22 close to the transition.
  const double dc = ising::dconcurrence_dlambda(IsingParams(1000, 0.999));
  CHECK(std::abs(-2.0 * d(1, 1).real()) > 0.5 * std::abs(dc));
}

TEST_CASE("second derivative: three routes") {
  const auto chain = ising::hamiltonian(1000);
  for (double lam : {0.5, 0.9, 1.1, 1.5}) {
    const IsingParams p(1000, lam);
    const double pop = ising::d2e_populations(p);
    const double generic = ising::d2e_generic(chain, p);
    const double fd = energy_fd2(1000, lam, 4e-3);
    CHECK(std::abs(pop - generic) < 1e-7);
    CHECK(std::abs(pop - fd) < 1e-7);
    CHECK(std::abs(generic - fd) < 1e-7);
  }
  CHECK_THROWS_AS(ising::d2e_populations(IsingParams(100, 0.0)), std::domain_error);
}

TEST_CASE("second derivative grows at the critical point and converges away from it") {
  double prev = 0.0;
  for (std::size_t n : {100u, 400u, 1600u}) {
    const double v = std::abs(ising::d2e_populations(IsingParams(n, 1.0)));
    CHECK(v > prev);
    prev = v;
  }
  const double a = ising::d2e_populations(IsingParams(400, 10.0));
  const double b = ising::d2e_populations(IsingParams(1600, 10.0));
  CHECK(std::abs(a) < 1e-2);
  CHECK(std::abs(a - b) < 1e-12);
}

TEST_CASE("pairwise summation is exact on integers and order-stable") {
  std::vector<double> v(1000);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = static_cast<double>(k);
  CHECK(ising::pairwise_sum(v) == 499500.0);
  CHECK(ising::pairwise_sum(std::vector<double>{}) == 0.0);
}
