// Dense Hermitian eigensolvers.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "qcrit/qtensor.hpp"

namespace qcrit {

namespace {

constexpr std::size_t kJacobiMaxDim = 16;
constexpr int kJacobiMaxSweeps = 100;
constexpr int kQlMaxIterations = 60;

void require_hermitian(const ComplexMatrix& m) {
  if (!m.is_square()) throw std::invalid_argument("eig_hermitian: matrix is not square");
  const double tol = 1e-10 * std::max(1.0, m.max_abs());
  if (!is_hermitian(m, tol)) throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");
}

EigenSystem sorted(std::vector<double> values, const ComplexMatrix& vectors) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  EigenSystem out;
  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.values[k] = values[order[k]];
  if (!vectors.empty()) {
    out.vectors = ComplexMatrix(vectors.rows(), n);
    for (std::size_t r = 0; r < vectors.rows(); ++r)
      for (std::size_t k = 0; k < n; ++k) out.vectors(r, k) = vectors(r, order[k]);
  }
  return out;
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t p = 0; p < a.rows(); ++p)
    for (std::size_t q = p + 1; q < a.cols(); ++q) s += std::norm(a(p, q));
  return std::sqrt(2.0 * s);
}

double frobenius(const ComplexMatrix& a) {
  double s = 0.0;
  for (const auto& z : a.data()) s += std::norm(z);
  return std::sqrt(s);
}

// Implicit QL on a real symmetric tridiagonal matrix. d: diagonal,
// e[i]: coupling between i and i + 1 (e[n-1] ignored). When rows is
// non-null it holds n row vectors (row k = eigenvector k on exit).
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>* rows) {
  const int n = static_cast<int>(d.size());
  if (n == 0) return;
  e[n - 1] = 0.0;
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m != l) {
        if (iter++ == kQlMaxIterations)
          throw ConvergenceError("eig_hermitian: QL iteration did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (rows != nullptr) {
            double* zi = rows->data() + static_cast<std::size_t>(i) * n;
            double* zi1 = zi + n;
            for (int k = 0; k < n; ++k) {
              f = zi1[k];
              zi1[k] = s * zi[k] + c * f;
              zi[k] = c * zi[k] - s * f;
            }
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

namespace detail {

EigenSystem jacobi_eigen(const ComplexMatrix& m) {
  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = frobenius(a);
  if (scale == 0.0) return sorted(std::vector<double>(n, 0.0), v);

  int sweep = 0;
  while (off_diagonal_norm(a) > 1e-15 * scale) {
    if (++sweep > kJacobiMaxSweeps)
      throw ConvergenceError("eig_hermitian: Jacobi sweeps did not converge");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag < 1e-300) continue;
        const Complex phase = apq / mag;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = std::isinf(theta * theta)
                             ? 0.5 / theta
                             : std::copysign(1.0, theta) /
                                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex cph = std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * cph * akq;
          a(k, q) = s * akp + c * cph * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * cph * vkq;
          v(k, q) = s * vkp + c * cph * vkq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<double> values(n);
  for (std::size_t k = 0; k < n; ++k) values[k] = a(k, k).real();
  return sorted(std::move(values), v);
}

EigenSystem householder_ql_eigen(const ComplexMatrix& m, bool want_vectors) {
  const std::size_t n = m.rows();
  ComplexMatrix a = m;
  std::vector<std::vector<Complex>> reflectors(n > 2 ? n - 2 : 0);
  std::vector<Complex> sub(n, 0.0);  // sub[k] = T(k + 1, k)

  std::vector<Complex> p(n), w(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    const std::size_t len = n - k - 1;
    double xnorm = 0.0;
    for (std::size_t r = k + 1; r < n; ++r) xnorm += std::norm(a(r, k));
    xnorm = std::sqrt(xnorm);
    if (xnorm == 0.0) continue;

    const Complex x0 = a(k + 1, k);
    const Complex ph = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex(1.0);
    const Complex alpha = -ph * xnorm;
    auto& v = reflectors[k];
    v.resize(len);
    for (std::size_t r = 0; r < len; ++r) v[r] = a(k + 1 + r, k);
    v[0] -= alpha;
    double vnorm = 0.0;
    for (const auto& z : v) vnorm += std::norm(z);
    vnorm = std::sqrt(vnorm);
    for (auto& z : v) z /= vnorm;

    // Trailing block update: A <- A - 2 (v w^H + w v^H), w = A v - (v^H A v) v.
    for (std::size_t r = 0; r < len; ++r) {
      Complex acc = 0.0;
      const Complex* row = &a(k + 1 + r, k + 1);
      for (std::size_t c = 0; c < len; ++c) acc += row[c] * v[c];
      p[r] = acc;
    }
    Complex kk = 0.0;
    for (std::size_t r = 0; r < len; ++r) kk += std::conj(v[r]) * p[r];
    const double kr = kk.real();
    for (std::size_t r = 0; r < len; ++r) w[r] = p[r] - kr * v[r];
    for (std::size_t r = 0; r < len; ++r) {
      Complex* row = &a(k + 1 + r, k + 1);
      const Complex vr = 2.0 * v[r], wr = 2.0 * w[r];
      for (std::size_t c = 0; c < len; ++c)
        row[c] -= vr * std::conj(w[c]) + wr * std::conj(v[c]);
    }
    a(k + 1, k) = alpha;
    a(k, k + 1) = std::conj(alpha);
    for (std::size_t r = k + 2; r < n; ++r) {
      a(r, k) = 0.0;
      a(k, r) = 0.0;
    }
  }

  std::vector<double> d(n), e(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) d[k] = a(k, k).real();
  for (std::size_t k = 0; k + 1 < n; ++k) sub[k] = a(k + 1, k);

  // Phase scaling to a real tridiagonal matrix: T = D T_r D^H.
  std::vector<Complex> phases(n, 1.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double mag = std::abs(sub[k]);
    e[k] = mag;
    phases[k + 1] = mag > 0.0 ? phases[k] * (sub[k] / mag) : phases[k];
  }

  if (!want_vectors) {
    tridiagonal_ql(d, e, nullptr);
    return sorted(std::move(d), ComplexMatrix());
  }

  std::vector<double> rows(n * n, 0.0);
  for (std::size_t k = 0; k < n; ++k) rows[k * n + k] = 1.0;
  tridiagonal_ql(d, e, &rows);

  // Eigenvectors: Q D Z, with Q = H_0 H_1 ... H_{n-3}.
  ComplexMatrix vec(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) vec(r, k) = phases[r] * rows[k * n + r];
  std::vector<Complex> acc(n);
  for (std::size_t k = reflectors.size(); k-- > 0;) {
    const auto& v = reflectors[k];
    if (v.empty()) continue;
    const std::size_t off = k + 1;
    std::fill(acc.begin(), acc.end(), Complex{});
    for (std::size_t r = 0; r < v.size(); ++r) {
      const Complex cv = std::conj(v[r]);
      const Complex* row = &vec(off + r, 0);
      for (std::size_t c = 0; c < n; ++c) acc[c] += cv * row[c];
    }
    for (std::size_t r = 0; r < v.size(); ++r) {
      const Complex s = 2.0 * v[r];
      Complex* row = &vec(off + r, 0);
      for (std::size_t c = 0; c < n; ++c) row[c] -= s * acc[c];
    }
  }
  return sorted(std::move(d), vec);
}

}  // namespace detail

EigenSystem eig_hermitian(const ComplexMatrix& m) {
  require_hermitian(m);
  if (m.rows() <= kJacobiMaxDim) return detail::jacobi_eigen(m);
  return detail::householder_ql_eigen(m, true);
}

std::vector<double> eigvals_hermitian(const ComplexMatrix& m) {
  require_hermitian(m);
  if (m.rows() <= kJacobiMaxDim) return detail::jacobi_eigen(m).values;
  return detail::householder_ql_eigen(m, false).values;
}

}  // namespace qcrit
