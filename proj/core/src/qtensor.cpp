#include "qcrit/qtensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qcrit {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw std::invalid_argument("ComplexMatrix: data size does not match shape");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) m(k, k) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t k = 0; k < values.size(); ++k) m(k, k) = values[k];
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<Complex> data;
  data.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw std::invalid_argument("from_rows: ragged rows");
    data.insert(data.end(), row.begin(), row.end());
  }
  return ComplexMatrix(r, c, std::move(data));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix out = *this;
  for (auto& z : out.data_) z = std::conj(z);
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw std::invalid_argument("trace: matrix is not square");
  Complex t = 0.0;
  for (std::size_t k = 0; k < rows_; ++k) t += (*this)(k, k);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("matrix sum: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_)
    throw std::invalid_argument("matrix difference: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex ark = a(r, k);
      if (ark == Complex{}) continue;
      for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) += ark * b(k, c);
    }
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (!m.is_square()) return false;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = r; c < m.cols(); ++c)
      if (std::abs(m(r, c) - std::conj(m(c, r))) > tol) return false;
  return true;
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols())
    throw std::invalid_argument("trace_product: shape mismatch");
  Complex t = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) t += a(r, k) * b(k, r);
  return t;
}

std::vector<Complex> matvec(const ComplexMatrix& m, std::span<const Complex> v) {
  if (m.cols() != v.size()) throw std::invalid_argument("matvec: shape mismatch");
  std::vector<Complex> out(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Complex acc = 0.0;
    for (std::size_t c = 0; c < m.cols(); ++c) acc += m(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ra = 0; ra < a.rows(); ++ra)
    for (std::size_t ca = 0; ca < a.cols(); ++ca) {
      const Complex s = a(ra, ca);
      for (std::size_t rb = 0; rb < b.rows(); ++rb)
        for (std::size_t cb = 0; cb < b.cols(); ++cb)
          out(ra * b.rows() + rb, ca * b.cols() + cb) = s * b(rb, cb);
    }
  return out;
}

namespace pauli {
ComplexMatrix identity() { return ComplexMatrix::identity(2); }
ComplexMatrix x() { return ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}); }
ComplexMatrix y() {
  return ComplexMatrix::from_rows({{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}});
}
ComplexMatrix z() { return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}); }
}  // namespace pauli

namespace {

std::size_t product(const std::vector<std::size_t>& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         std::multiplies<>());
}

double norm_squared(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s;
}

void check_dims(const std::vector<std::size_t>& dims, std::size_t size) {
  if (dims.empty()) throw std::invalid_argument("PureState: no sites");
  for (auto d : dims)
    if (d < 2) throw std::invalid_argument("PureState: site dimension below 2");
  if (product(dims) != size)
    throw std::invalid_argument("PureState: amplitude count does not match dims");
}

}  // namespace

PureState::PureState(std::vector<std::size_t> dims, std::vector<Complex> amplitudes)
    : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
  check_dims(dims_, amplitudes_.size());
  if (std::abs(norm_squared(amplitudes_) - 1.0) > 1e-12)
    throw std::invalid_argument("PureState: state is not normalized");
}

PureState PureState::normalized(std::vector<std::size_t> dims,
                                std::vector<Complex> amplitudes) {
  check_dims(dims, amplitudes.size());
  const double n = std::sqrt(norm_squared(amplitudes));
  if (n == 0.0) throw std::invalid_argument("PureState: zero vector");
  for (auto& z : amplitudes) z /= n;
  return PureState(std::move(dims), std::move(amplitudes));
}

DensityMatrix::DensityMatrix(ComplexMatrix m, std::vector<std::size_t> dims)
    : m_(std::move(m)), dims_(std::move(dims)) {
  if (!m_.is_square()) throw std::invalid_argument("DensityMatrix: not square");
  if (dims_.empty() || dims_.size() > 2 || product(dims_) != m_.rows())
    throw std::invalid_argument("DensityMatrix: dims do not factor the matrix");
  if (!is_hermitian(m_, kTolerance))
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  const Complex tr = m_.trace();
  if (std::abs(tr - 1.0) > kTolerance)
    throw std::invalid_argument("DensityMatrix: trace is " + std::to_string(tr.real()));
}

void DensityMatrix::check_positive(double tol) const {
  const auto values = eigvals_hermitian(m_);
  if (values.front() < -tol)
    throw std::domain_error("DensityMatrix: negative eigenvalue " +
                            std::to_string(values.front()));
}

DensityMatrix reduced_density(const PureState& psi, std::size_t i, std::size_t j) {
  const auto& dims = psi.dims();
  const std::size_t n = dims.size();
  if (i >= n || j >= n) throw std::out_of_range("reduced_density: site out of range");
  if (i == j) throw std::invalid_argument("reduced_density: sites must differ");

  const std::size_t di = dims[i], dj = dims[j];
  const std::size_t pair_dim = di * dj;
  const std::size_t env_dim = psi.dimension() / pair_dim;

  // Rearrange amplitudes into a (pair, environment) matrix; then
  // rho_{(gd),(ab)} = sum_m psi(gd m) conj(psi(ab m)).
  std::vector<Complex> block(pair_dim * env_dim);
  std::vector<std::size_t> digits(n, 0);
  const auto amps = psi.amplitudes();
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    std::size_t env = 0;
    for (std::size_t s = 0; s < n; ++s)
      if (s != i && s != j) env = env * dims[s] + digits[s];
    block[(digits[i] * dj + digits[j]) * env_dim + env] = amps[idx];
    for (std::size_t s = n; s-- > 0;) {
      if (++digits[s] < dims[s]) break;
      digits[s] = 0;
    }
  }

  ComplexMatrix rho(pair_dim, pair_dim);
  for (std::size_t r = 0; r < pair_dim; ++r)
    for (std::size_t c = r; c < pair_dim; ++c) {
      Complex acc = 0.0;
      for (std::size_t m = 0; m < env_dim; ++m)
        acc += block[r * env_dim + m] * std::conj(block[c * env_dim + m]);
      rho(r, c) = acc;
      rho(c, r) = std::conj(acc);
    }
  return DensityMatrix(std::move(rho), {di, dj});
}

DensityMatrix single_site_rdm(const DensityMatrix& rho_ij, Site which) {
  if (rho_ij.dims().size() != 2)
    throw std::invalid_argument("single_site_rdm: input is not a two-site RDM");
  const std::size_t da = rho_ij.dims()[0], db = rho_ij.dims()[1];
  const auto& m = rho_ij.matrix();
  if (which == Site::first) {
    ComplexMatrix out(da, da);
    for (std::size_t a = 0; a < da; ++a)
      for (std::size_t c = 0; c < da; ++c)
        for (std::size_t b = 0; b < db; ++b) out(a, c) += m(a * db + b, c * db + b);
    return DensityMatrix(std::move(out), {da});
  }
  ComplexMatrix out(db, db);
  for (std::size_t b = 0; b < db; ++b)
    for (std::size_t d = 0; d < db; ++d)
      for (std::size_t a = 0; a < da; ++a) out(b, d) += m(a * db + b, a * db + d);
  return DensityMatrix(std::move(out), {db});
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t dim_a,
                                std::size_t dim_b) {
  if (!m.is_square() || m.rows() != dim_a * dim_b)
    throw std::invalid_argument("partial_transpose: dimensions do not factor");
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t a = 0; a < dim_a; ++a)
    for (std::size_t b = 0; b < dim_b; ++b)
      for (std::size_t c = 0; c < dim_a; ++c)
        for (std::size_t d = 0; d < dim_b; ++d)
          out(a * dim_b + b, c * dim_b + d) = m(c * dim_b + b, a * dim_b + d);
  return out;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho) {
  if (rho.dims().size() != 2)
    throw std::invalid_argument("partial_transpose: need a two-site density matrix");
  return partial_transpose(rho.matrix(), rho.dims()[0], rho.dims()[1]);
}

ComplexMatrix swap_factors(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b) {
  if (!m.is_square() || m.rows() != dim_a * dim_b)
    throw std::invalid_argument("swap_factors: dimensions do not factor");
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t a = 0; a < dim_a; ++a)
    for (std::size_t b = 0; b < dim_b; ++b)
      for (std::size_t c = 0; c < dim_a; ++c)
        for (std::size_t d = 0; d < dim_b; ++d)
          out(b * dim_a + a, d * dim_a + c) = m(a * dim_b + b, c * dim_b + d);
  return out;
}

ComplexMatrix sqrt_psd(const ComplexMatrix& m) {
  auto sys = eig_hermitian(m);
  const std::size_t n = m.rows();
  std::vector<double> roots(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double v = sys.values[k];
    if (v < -1e-8) throw std::domain_error("sqrt_psd: matrix is not positive semidefinite");
    roots[k] = v > 0.0 ? std::sqrt(v) : 0.0;
  }
  ComplexMatrix out(n, n);
  const auto& vec = sys.vectors;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        if (roots[k] != 0.0) acc += vec(r, k) * roots[k] * std::conj(vec(c, k));
      out(r, c) = acc;
    }
  return out;
}

}  // namespace qcrit
