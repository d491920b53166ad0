#include "qcrit/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace qcrit::scaling {

void Curve::validate() const {
  if (grid.size() != values.size())
    throw std::invalid_argument("Curve: grid and values differ in length");
  for (std::size_t k = 1; k < grid.size(); ++k)
    if (!(grid[k] > grid[k - 1])) throw std::invalid_argument("Curve: grid not strictly increasing");
}

std::vector<double> fd_weights(double x0, std::span<const double> x, int order) {
  const std::size_t n = x.size();
  if (order < 0 || static_cast<std::size_t>(order) >= n)
    throw std::invalid_argument("fd_weights: stencil too small for the derivative order");
  const auto m = static_cast<std::size_t>(order);
  // c[j][k]: weight of x[j] for the k-th derivative.
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0, c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k)
          c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k)
        c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j) w[j] = c[j][m];
  return w;
}

Curve finite_diff(const Curve& c, int order) {
  c.validate();
  if (order != 1 && order != 2) throw std::invalid_argument("finite_diff: order must be 1 or 2");
  const std::size_t n = c.grid.size();
  if (n < 5) throw std::invalid_argument("finite_diff: need at least 5 points");
  Curve out;
  out.grid = c.grid;
  out.values.resize(n);
  out.quantity = c.quantity + (order == 1 ? "'" : "''");
  out.n = c.n;
  const std::size_t edge_width = order == 1 ? 3 : 4;
  auto apply = [&](std::size_t at, std::size_t first, std::size_t count) {
    std::span<const double> xs(c.grid.data() + first, count);
    const auto w = fd_weights(c.grid[at], xs, order);
    double acc = 0.0;
    for (std::size_t k = 0; k < count; ++k) acc += w[k] * c.values[first + k];
    out.values[at] = acc;
  };
  apply(0, 0, edge_width);
  for (std::size_t i = 1; i + 1 < n; ++i) apply(i, i - 1, 3);
  apply(n - 1, n - edge_width, edge_width);
  return out;
}

Peak find_peak(const Curve& c) {
  c.validate();
  if (c.grid.size() < 3) throw std::invalid_argument("find_peak: need at least 3 points");
  const auto it = std::max_element(c.values.begin(), c.values.end());
  const auto i = static_cast<std::size_t>(it - c.values.begin());
  if (i == 0 || i + 1 == c.grid.size())
    throw std::domain_error("find_peak: maximum at grid edge");
  std::span<const double> xs(c.grid.data() + i - 1, 3);
  const double y0 = c.values[i - 1], y1 = c.values[i], y2 = c.values[i + 1];
  const auto w1 = fd_weights(c.grid[i], xs, 1);
  const auto w2 = fd_weights(c.grid[i], xs, 2);
  const double d1 = w1[0] * y0 + w1[1] * y1 + w1[2] * y2;
  const double d2 = w2[0] * y0 + w2[1] * y1 + w2[2] * y2;
  if (!(d2 < 0.0)) throw std::domain_error("find_peak: curve is flat at its maximum");
  Peak p;
  p.index = i;
  p.position = c.grid[i] - d1 / d2;
  p.value = y1 - d1 * d1 / (2.0 * d2);
  return p;
}

LogFit logfit(std::span<const double> ns, std::span<const double> ys) {
  if (ns.size() != ys.size()) throw std::invalid_argument("logfit: size mismatch");
  if (ns.size() < 4) throw std::invalid_argument("logfit: need at least 4 points");
  std::set<double> distinct;
  for (double n : ns) {
    if (!(n > 0.0)) throw std::invalid_argument("logfit: N must be positive");
    distinct.insert(n);
  }
  if (distinct.size() < 4) throw std::invalid_argument("logfit: need at least 4 distinct N");
  const auto m = static_cast<double>(ns.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    mx += std::log(ns[k]);
    my += ys[k];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    const double dx = std::log(ns[k]) - mx;
    sxx += dx * dx;
    sxy += dx * (ys[k] - my);
  }
  LogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t k = 0; k < ns.size(); ++k) {
    const double r = ys[k] - (fit.slope * std::log(ns[k]) + fit.intercept);
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / m);
  return fit;
}

double interpolate(const Curve& c, double x) {
  const auto& g = c.grid;
  if (x < g.front() || x > g.back()) throw std::domain_error("interpolate: outside the grid");
  auto hi = std::upper_bound(g.begin(), g.end(), x);
  if (hi == g.end()) return c.values.back();
  const auto k = static_cast<std::size_t>(hi - g.begin());
  const double t = (x - g[k - 1]) / (g[k] - g[k - 1]);
  return c.values[k - 1] + t * (c.values[k] - c.values[k - 1]);
}

CollapseReport collapse(std::span<const Curve> curves, double nu, const CollapseOptions& opts) {
  if (curves.size() < 3) throw std::invalid_argument("collapse: need at least 3 curves");
  if (!(nu > 0.0)) throw std::invalid_argument("collapse: nu must be positive");
  if (opts.grid_points < 2) throw std::invalid_argument("collapse: grid too small");

  // Fix the order so the result does not depend on how curves were passed in.
  std::vector<const Curve*> sorted;
  for (const auto& c : curves) sorted.push_back(&c);
  std::sort(sorted.begin(), sorted.end(), [](const Curve* a, const Curve* b) {
    if (a->n != b->n) return a->n < b->n;
    if (a->grid != b->grid) return a->grid < b->grid;
    return a->values < b->values;
  });

  CollapseReport rep;
  rep.nu = nu;
  std::vector<Curve> scaled;
  double lo = -opts.window, hi = opts.window;
  for (const Curve* c : sorted) {
    const Peak pk = find_peak(*c);
    const double factor = std::pow(static_cast<double>(c->n), 1.0 / nu);
    Curve s;
    s.n = c->n;
    for (std::size_t k = 0; k < c->grid.size(); ++k) {
      s.grid.push_back(factor * (c->grid[k] - pk.position));
      s.values.push_back(c->values[k] - pk.value);
    }
    lo = std::max(lo, s.grid.front());
    hi = std::min(hi, s.grid.back());
    rep.curves.push_back({c->n, pk.position, pk.value, {}});
    scaled.push_back(std::move(s));
  }
  if (!(lo < hi)) throw std::domain_error("collapse: scaled ranges do not overlap");

  const std::size_t g = opts.grid_points;
  for (std::size_t k = 0; k < g; ++k)
    rep.x.push_back(
        std::min(hi, lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(g - 1)));
  rep.x.back() = hi;
  for (std::size_t c = 0; c < scaled.size(); ++c)
    for (double x : rep.x) rep.curves[c].values.push_back(interpolate(scaled[c], x));

  double mean_peak = 0.0;
  for (const auto& c : rep.curves) mean_peak += c.peak;
  mean_peak /= static_cast<double>(rep.curves.size());
  if (!(std::abs(mean_peak) > 0.0)) throw std::domain_error("collapse: zero peak height");

  const auto m = static_cast<double>(rep.curves.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < g; ++k) {
    // Deviations from the first curve, so coinciding curves give exactly zero.
    const double ref = rep.curves.front().values[k];
    double mean = 0.0;
    for (const auto& c : rep.curves) mean += c.values[k] - ref;
    mean /= m;
    double var = 0.0;
    for (const auto& c : rep.curves) {
      const double d = c.values[k] - ref - mean;
      var += d * d;
    }
    acc += var / m;
  }
  rep.quality = std::sqrt(acc / static_cast<double>(g)) / std::abs(mean_peak);
  return rep;
}

}  // namespace qcrit::scaling
