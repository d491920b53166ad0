// qtensor.hpp
// Dense complex linear algebra and quantum-state utilities.
//
// Index convention (used everywhere in qcrit): in a product basis the first
// site is the slow index. For a pair (i, j) the two-site basis state
// |a_i b_j> has index a * d_j + b, so for qubits the order is
// {|00>, |01>, |10>, |11>}. For an N-site state the amplitude index is the
// mixed-radix number (a_0 a_1 ... a_{N-1}) with site 0 most significant.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace qcrit {

using Complex = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return data_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<Complex> data() { return data_; }
  std::span<const Complex> data() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  Complex trace() const;
  // Largest absolute entry.
  double max_abs() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool is_hermitian(const ComplexMatrix& m, double tol = 1e-12);
// Tr(A B) without forming the product.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<Complex> matvec(const ComplexMatrix& m, std::span<const Complex> v);

// Tensor product; entry (d_B r_A + r_B, d_B c_A + c_B) = A(r_A, c_A) B(r_B, c_B).
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

// Normalized state on a register of qudits with per-site dimensions.
class PureState {
 public:
  PureState(std::vector<std::size_t> dims, std::vector<Complex> amplitudes);
  // Normalizes the amplitudes instead of rejecting unnormalized input.
  static PureState normalized(std::vector<std::size_t> dims,
                              std::vector<Complex> amplitudes);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  std::size_t num_sites() const { return dims_.size(); }
  std::size_t dimension() const { return amplitudes_.size(); }

 private:
  std::vector<std::size_t> dims_;
  std::vector<Complex> amplitudes_;
};

// Hermitian unit-trace matrix together with the dimensions of the sites it
// describes (one or two sites).
class DensityMatrix {
 public:
  static constexpr double kTolerance = 1e-8;

  DensityMatrix(ComplexMatrix m, std::vector<std::size_t> dims);

  const ComplexMatrix& matrix() const { return m_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t dimension() const { return m_.rows(); }
  // 1-based element access matching the rho_11 ... rho_44 labelling.
  Complex element(std::size_t a, std::size_t b) const { return m_(a - 1, b - 1); }

  // Throws std::domain_error when an eigenvalue is below -tol.
  void check_positive(double tol = kTolerance) const;

 private:
  ComplexMatrix m_;
  std::vector<std::size_t> dims_;
};

enum class Site { first, second };

DensityMatrix reduced_density(const PureState& psi, std::size_t i, std::size_t j);
DensityMatrix single_site_rdm(const DensityMatrix& rho_ij, Site which);

// <a b| rho^{T_A} |c d> = <c b| rho |a d>, transposing the first factor.
ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t dim_a,
                                std::size_t dim_b);
ComplexMatrix partial_transpose(const DensityMatrix& rho);

// Exchanges the two tensor factors: the (j, i) view of a (i, j) operator.
ComplexMatrix swap_factors(const ComplexMatrix& m, std::size_t dim_a,
                           std::size_t dim_b);

struct EigenSystem {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k belongs to values[k]
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Cyclic Jacobi up to dimension 16, Householder tridiagonalization plus
// implicit QL above that.
EigenSystem eig_hermitian(const ComplexMatrix& m);
// Eigenvalues only (same algorithms, no vector accumulation for QL).
std::vector<double> eigvals_hermitian(const ComplexMatrix& m);

// Eigenvalues in [-1e-8, 0) are clamped to zero; anything lower throws.
ComplexMatrix sqrt_psd(const ComplexMatrix& m);

namespace detail {
EigenSystem jacobi_eigen(const ComplexMatrix& m);
EigenSystem householder_ql_eigen(const ComplexMatrix& m, bool want_vectors);
}  // namespace detail

}  // namespace qcrit
