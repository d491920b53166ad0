// ed.hpp
// Exact diagonalization of TwoBodyHamiltonian instances: ground level with
// degeneracy detection, degenerate-averaged RDMs, and symmetry checks.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qcrit/hamiltonian.hpp"
#include "qcrit/qtensor.hpp"

namespace qcrit::ed {

struct GroundLevel {
  double energy = 0.0;
  std::size_t degeneracy = 0;
  std::vector<PureState> states;
  double gap = 0.0;  // E_1 - E_0, E_1 the first level above the degenerate block
};

struct Options {
  std::size_t dense_limit = 512;
  std::size_t max_dimension = 65536;
  std::size_t block_size = 4;
  std::size_t max_krylov = 160;
  std::size_t max_restarts = 200;
  double residual_tolerance = 1e-12;  // relative to the spectral radius estimate
};

// |E - E_0| <= 1e-8 max(1, |E_0|) counts as degenerate.
double degeneracy_tolerance(double e0);

std::vector<Complex> apply_hamiltonian(const TwoBodyHamiltonian& h, double lambda,
                                       std::span<const Complex> psi);
ComplexMatrix dense_hamiltonian(const TwoBodyHamiltonian& h, double lambda);
double expectation(const TwoBodyHamiltonian& h, double lambda, const PureState& psi);

// Throws std::length_error past max_dimension, ConvergenceError when the
// Krylov solver stalls, std::runtime_error on an unresolvable level
// structure (near-degeneracy, degeneracy beyond the block size).
GroundLevel ground_level(const TwoBodyHamiltonian& h, double lambda, const Options& opts = {});

// Equal-weight mixture of the per-state RDMs of a degenerate level.
DensityMatrix averaged_rdm(const GroundLevel& level, std::size_t i, std::size_t j);
PairRdms averaged_rdms(const GroundLevel& level, std::span<const Edge> edges);

// Largest entrywise deviation between the averaged RDMs of the listed pairs.
double translation_invariance_check(const GroundLevel& level, std::span<const Edge> pairs);

}  // namespace qcrit::ed
