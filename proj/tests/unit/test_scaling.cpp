#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qcrit/scaling.hpp"

using namespace qcrit::scaling;

namespace {

Curve sample(double lo, double hi, std::size_t n, double (*f)(double)) {
  Curve c;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    c.grid.push_back(x);
    c.values.push_back(f(x));
  }
  return c;
}

double max_err(const Curve& c, double (*f)(double), std::size_t skip = 0) {
  double e = 0.0;
  for (std::size_t k = skip; k + skip < c.grid.size(); ++k) e = std::max(e, std::abs(c.values[k] - f(c.grid[k])));
  return e;
}

// Lorentzian-like family with a size-dependent centre, width 1 / N and height.
Curve family(std::size_t n, double nu, double shift) {
  Curve c;
  c.n = n;
  const double scale = std::pow(static_cast<double>(n), 1.0 / nu);
  for (int k = -400; k <= 400; ++k) {
    const double lam = 1.0 + 0.025 * k / scale;
    const double x = scale * (lam - (1.0 - shift / scale));
    c.grid.push_back(lam);
    c.values.push_back(std::log(static_cast<double>(n)) - std::log(1.0 + x * x));
  }
  return c;
}

}  // namespace

TEST_CASE("finite differences are exact on quadratics") {
  const auto c = sample(-1.0, 2.0, 31, [](double x) { return x * x; });
  const auto d1 = finite_diff(c, 1);
  const auto d2 = finite_diff(c, 2);
  for (std::size_t k = 0; k < c.grid.size(); ++k) {
    CHECK(std::abs(d1.values[k] - 2.0 * c.grid[k]) < 1e-12);
    CHECK(std::abs(d2.values[k] - 2.0) < 1e-9);
  }
}

TEST_CASE("finite differences converge at second order") {
  const auto coarse = finite_diff(sample(0.0, 1.0, 1001, [](double x) { return std::sin(x); }), 1);
  CHECK(max_err(coarse, [](double x) { return std::cos(x); }) < 1e-6);
  const auto c2 = sample(0.0, 1.0, 101, [](double x) { return std::sin(x); });
  const auto f2 = sample(0.0, 1.0, 201, [](double x) { return std::sin(x); });
  const double ec = max_err(finite_diff(c2, 1), [](double x) { return std::cos(x); }, 1);
  const double ef = max_err(finite_diff(f2, 1), [](double x) { return std::cos(x); }, 1);
  CHECK(ec / ef == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("second difference equals the first difference applied twice") {
  const auto c = sample(0.0, 1.0, 201, [](double x) { return std::exp(x) * std::sin(3 * x); });
  const auto direct = finite_diff(c, 2);
  const auto twice = finite_diff(finite_diff(c, 1), 1);
  const double h = 1.0 / 200.0;
  for (std::size_t k = 2; k + 2 < c.grid.size(); ++k)
    CHECK(std::abs(direct.values[k] - twice.values[k]) < 100.0 * h * h);
}

TEST_CASE("finite_diff preconditions") {
  CHECK_THROWS(finite_diff(sample(0, 1, 4, [](double x) { return x; }), 1));
  CHECK_THROWS(finite_diff(sample(0, 1, 10, [](double x) { return x; }), 3));
  Curve bad = sample(0, 1, 10, [](double x) { return x; });
  std::swap(bad.grid[2], bad.grid[3]);
  CHECK_THROWS(finite_diff(bad, 1));
}

TEST_CASE("fd_weights on a non-uniform stencil") {
  const double x[] = {0.0, 0.1, 0.35};
  const auto w = fd_weights(0.1, x, 1);
  // exact on x^2: derivative 0.2
  CHECK(std::abs(w[0] * 0.0 + w[1] * 0.01 + w[2] * 0.1225 - 0.2) < 1e-13);
}

TEST_CASE("find_peak") {
  const auto c = sample(0.5, 1.5, 101, [](double x) { return 3.0 - 7.0 * (x - 1.05) * (x - 1.05); });
  const auto p = find_peak(c);
  CHECK(std::abs(p.position - 1.05) < 1e-6);
  CHECK(std::abs(p.value - 3.0) < 1e-10);
  CHECK_THROWS_AS(find_peak(sample(0.0, 1.0, 20, [](double x) { return x; })), std::domain_error);
  CHECK_THROWS_AS(find_peak(sample(0.0, 1.0, 20, [](double) { return 1.0; })), std::domain_error);
}

TEST_CASE("logfit") {
  const std::vector<double> ns{50, 150, 450, 1350, 3050};
  std::vector<double> ys;
  for (double n : ns) ys.push_back(0.135 * std::log(n) + 2.0);
  const auto f = logfit(ns, ys);
  CHECK(std::abs(f.slope - 0.135) < 1e-12);
  CHECK(std::abs(f.intercept - 2.0) < 1e-11);
  CHECK(f.residual_rms < 1e-12);
  CHECK_THROWS(logfit(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}));
  CHECK_THROWS(logfit(std::vector<double>{1, 2, 3, -4}, std::vector<double>{1, 2, 3, 4}));
  CHECK_THROWS(logfit(std::vector<double>{2, 2, 3, 4}, std::vector<double>{1, 2, 3, 4}));
}

TEST_CASE("collapse of an exactly scaling family") {
  std::vector<Curve> curves{family(50, 1.0, 0.2), family(200, 1.0, 0.2), family(800, 1.0, 0.2)};
  const auto good = collapse(curves, 1.0);
  CHECK(good.quality < 1e-4);
  const auto bad = collapse(curves, 2.0);
  CHECK(bad.quality > 5.0 * good.quality);
  for (std::size_t k = 0; k < 3; ++k) CHECK(good.curves[k].lambda_m < 1.0);

  std::vector<Curve> same{family(50, 1.0, 0.0), family(50, 1.0, 0.0), family(50, 1.0, 0.0)};
  CHECK(collapse(same, 1.0).quality == 0.0);

  std::vector<Curve> shuffled{curves[2], curves[0], curves[1]};
  CHECK(collapse(shuffled, 1.0).quality == good.quality);
}

TEST_CASE("collapse preconditions") {
  std::vector<Curve> two{family(50, 1.0, 0.0), family(100, 1.0, 0.0)};
  CHECK_THROWS(collapse(two, 1.0));
  std::vector<Curve> edge{family(50, 1.0, 0.0), family(100, 1.0, 0.0), family(200, 1.0, 0.0)};
  for (auto& v : edge[1].values) v = -v;  // minimum instead of a maximum
  CHECK_THROWS_AS(collapse(edge, 1.0), std::domain_error);
}
