#include "qcrit/entanglement.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>

namespace qcrit {

namespace {

void require_two_qubits(const DensityMatrix& rho, double tol) {
  if (rho.dims() != std::vector<std::size_t>{2, 2})
    throw std::domain_error("two-qubit measure requires a 4x4 density matrix on 2x2 sites");
  rho.check_positive(tol);
}

}  // namespace

ComplexMatrix spin_flip(const ComplexMatrix& rho) {
  const ComplexMatrix yy = kron(pauli::y(), pauli::y());
  return yy * rho.conj() * yy;
}

MeasureResult concurrence(const DensityMatrix& rho, double tol) {
  require_two_qubits(rho, tol);
  // gamma are the eigenvalues of sqrt(sqrt(rho) rho~ sqrt(rho)), i.e. the
  // singular values of A = sqrt(rho) sqrt(rho~). They are read off the
  // Hermitian dilation [[0, A], [A^H, 0]] whose spectrum is {+-sigma}.
  const ComplexMatrix root = sqrt_psd(rho.matrix());
  const ComplexMatrix a = root * spin_flip(root);
  ComplexMatrix dilation(8, 8);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      dilation(r, 4 + c) = a(r, c);
      dilation(4 + c, r) = std::conj(a(r, c));
    }
  const auto spectrum = eigvals_hermitian(dilation);

  MeasureResult out;
  for (std::size_t k = 8; k-- > 4;) {
    double g = spectrum[k];
    if (g < -1e-10) throw std::domain_error("concurrence: negative gamma " + std::to_string(g));
    out.ingredients.push_back(std::max(g, 0.0));
  }
  std::sort(out.ingredients.begin(), out.ingredients.end(), std::greater<>());
  const auto& g = out.ingredients;
  out.value = std::max(g[0] - g[1] - g[2] - g[3], 0.0);
  return out;
}

MeasureResult negativity(const DensityMatrix& rho, double tol) {
  require_two_qubits(rho, tol);
  MeasureResult out;
  out.ingredients = eigvals_hermitian(partial_transpose(rho));
  out.value = 2.0 * std::max(0.0, -out.ingredients.front());
  return out;
}

}  // namespace qcrit
