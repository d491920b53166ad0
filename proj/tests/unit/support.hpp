// Shared helpers for the unit tests: seeded random matrices and states.
#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "qcrit/qtensor.hpp"

namespace qt {

using qcrit::Complex;
using qcrit::ComplexMatrix;

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(12345);
  return engine;
}

inline Complex gauss_c() {
  std::normal_distribution<double> g;
  return {g(rng()), g(rng())};
}

inline ComplexMatrix random_matrix(std::size_t r, std::size_t c) {
  ComplexMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = gauss_c();
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t n) {
  ComplexMatrix m = random_matrix(n, n);
  ComplexMatrix h = m;
  h += m.adjoint();
  h *= Complex(0.5);
  return h;
}

// Random density matrix of full rank: G G^H / Tr.
inline ComplexMatrix random_density(std::size_t n) {
  ComplexMatrix g = random_matrix(n, n);
  ComplexMatrix rho = g * g.adjoint();
  rho *= Complex(1.0 / rho.trace().real());
  return rho;
}

inline std::vector<Complex> random_amplitudes(std::size_t dim) {
  std::vector<Complex> a(dim);
  double norm = 0.0;
  for (auto& z : a) {
    z = gauss_c();
    norm += std::norm(z);
  }
  for (auto& z : a) z /= std::sqrt(norm);
  return a;
}

// Random single-qubit unitary from the QR-free parameterization.
inline ComplexMatrix random_unitary2() {
  std::uniform_real_distribution<double> u(0.0, 2.0 * 3.141592653589793);
  const double a = u(rng()), b = u(rng()), c = u(rng()), t = u(rng()) / 4.0;
  const Complex ea = std::polar(1.0, a), eb = std::polar(1.0, b), ec = std::polar(1.0, c);
  return ComplexMatrix::from_rows({{ea * std::cos(t), eb * std::sin(t)},
                                   {-std::conj(eb) * ec * std::sin(t), std::conj(ea) * ec * std::cos(t)}});
}

}  // namespace qt
