// verify.hpp
// Randomized property suite over the energy/RDM identities, ED versus free
// fermions, and the entanglement measures.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "qcrit/hamiltonian.hpp"

namespace qcrit::cli {

struct VerifyConfig {
  std::uint64_t seed = 20240601;
  std::size_t trials = 20;
  std::size_t min_qubits = 6;
  std::size_t max_qubits = 8;
  // Negative control: perturbs U(0, 1) so the closure check must fail.
  bool corrupt_u = false;
};

struct CheckResult {
  std::string name;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::size_t samples = 0;
  bool passed() const { return samples > 0 && max_deviation <= tolerance; }
};

struct VerifyReport {
  VerifyConfig config;
  std::vector<CheckResult> checks;

  bool passed() const;
  std::string to_json() const;
};

// Random two-body qubit Hamiltonian with polynomial and trigonometric
// lambda-dependence on a ring plus random chords.
TwoBodyHamiltonian random_hamiltonian(std::size_t qubits, std::mt19937_64& rng);

VerifyReport run_verify(const VerifyConfig& cfg);

}  // namespace qcrit::cli
