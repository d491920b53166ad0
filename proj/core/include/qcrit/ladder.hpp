// ladder.hpp
// Frustrated two-leg spin-1/2 ladder
//
//   H = J_R sum_r S_r1.S_r2 + J sum_r sum_{a,b} S_ra.S_(r+1)b - h sum_i S^z_i
//
// with equal leg and diagonal exchange J. For J_R > 1.401 J the total spin of
// every rung is conserved and the ground state is a product of rung singlets
// and S^z = 1 rung triplets. Fields are thermodynamic-limit values.

#pragma once

#include <cstddef>
#include <string_view>

#include "qcrit/hamiltonian.hpp"
#include "qcrit/qtensor.hpp"

namespace qcrit::ladder {

inline constexpr double kFrustrationBound = 1.401;

class LadderParams {
 public:
  // Requires J_R > 0, J >= 0, J_R > 1.401 J and finite h (std::invalid_argument).
  LadderParams(double jr, double j, double h);

  double jr() const { return jr_; }
  double j() const { return j_; }
  double h() const { return h_; }
  double hc1() const { return jr_; }
  double hc2() const { return jr_ + 2.0 * j_; }

  LadderParams with_field(double h) const { return {jr_, j_, h}; }

 private:
  double jr_;
  double j_;
  double h_;
};

enum class Phase { all_singlet, alternating, all_triplet };

std::string_view to_string(Phase p);

// Critical fields are assigned to the phase above them.
Phase phase(const LadderParams& p);

struct RungState {
  Phase phase;
  DensityMatrix rung1;
  DensityMatrix rung2;
  DensityMatrix averaged;  // (rung1 + rung2) / 2
};

// Singlet rung: rho_22 = rho_33 = 1/2, rho_23 = rho_32 = -1/2.
DensityMatrix singlet_rdm();
// S^z = 1 triplet rung: rho_11 = 1.
DensityMatrix triplet_rdm();

RungState rung_rdm(const LadderParams& p);

// Energy per site. Below h_c2 it is evaluated on the averaged rung RDM; the
// all-triplet phase adds the interaction J of each adjacent triplet pair.
double energy_density(const LadderParams& p);

struct FieldDerivative {
  double value = 0.0;
  // Set when h sits exactly on a critical field; value is then the right limit.
  bool at_discontinuity = false;
};

// dE/dh = -rho^r_11 / 2.
FieldDerivative denergy_dh(const LadderParams& p);

struct RungEntanglement {
  double concurrence = 0.0;
  double negativity = 0.0;
};

// C = N = 1 - rho^r_11.
RungEntanglement rung_entanglement(const LadderParams& p);

// Finite periodic ladder with `rungs` rungs; site 2r + a is leg a of rung r.
// The field h is the scan parameter. Needs at least 3 rungs.
TwoBodyHamiltonian hamiltonian(std::size_t rungs, double jr, double j);

}  // namespace qcrit::ladder
