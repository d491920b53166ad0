// entanglement.hpp
// Two-qubit entanglement measures: Wootters concurrence and the doubled
// single-minimum negativity N = 2 max(0, -min mu), mu the spectrum of the
// partial transpose.

#pragma once

#include <vector>

#include "qcrit/qtensor.hpp"

namespace qcrit {

struct MeasureResult {
  double value = 0.0;
  // Concurrence: gamma_1 >= ... >= gamma_4. Negativity: mu ascending.
  std::vector<double> ingredients;
};

// Inputs are validated as two-qubit states: Hermitian, unit trace and PSD
// within `tol`; std::domain_error otherwise.
MeasureResult concurrence(const DensityMatrix& rho, double tol = DensityMatrix::kTolerance);
MeasureResult negativity(const DensityMatrix& rho, double tol = DensityMatrix::kTolerance);

// rho~ = (sigma_y x sigma_y) rho^* (sigma_y x sigma_y), conjugation in the
// standard basis.
ComplexMatrix spin_flip(const ComplexMatrix& rho);

}  // namespace qcrit
