// ising.hpp
// Transverse-field Ising chain H = -sum_i (lambda sx_i sx_{i+1} + sz_i) with
// periodic boundaries, solved through Jordan-Wigner fermions and a
// Bogoliubov rotation in the even-parity (antiperiodic) sector.
//
// k-grid: k_m = (2m + 1) pi / N, m = -N/2 ... N/2 - 1
// omega_k = sqrt(1 + lambda^2 + 2 lambda cos k)
// cos theta_k = (1 + lambda cos k) / omega_k, sin theta_k = lambda sin k / omega_k
// G(r) = (1/N) sum_k [cos(k r) cos theta_k + sin(k r) sin theta_k]
//
// <sz> = G(0), <sx sx> = G(1), <sy sy> = G(-1), <sz sz> = G(0)^2 - G(1) G(-1).
// Which of G(+-1) is the xx correlator is fixed by lambda -> infinity
// (<sx sx> -> 1) and checked against exact diagonalization.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qcrit/hamiltonian.hpp"
#include "qcrit/qtensor.hpp"

namespace qcrit::ising {

inline constexpr double kCriticalCoupling = 1.0;

class IsingParams {
 public:
  // Requires even n >= 4 and lambda >= 0 (std::invalid_argument).
  IsingParams(std::size_t n, double lambda);

  std::size_t n() const { return n_; }
  double lambda() const { return lambda_; }

 private:
  std::size_t n_;
  double lambda_;
};

struct CorrelatorSet {
  double mz = 0.0;       // <sz> = G(0)
  double g_plus = 0.0;   // G(1)
  double g_minus = 0.0;  // G(-1)
  std::vector<double> omega;

  double xx() const { return g_plus; }
  double yy() const { return g_minus; }
  double zz() const { return mz * mz - g_plus * g_minus; }
};

struct CorrelatorDerivatives {
  double mz = 0.0;
  double g_plus = 0.0;
  double g_minus = 0.0;

  double xx() const { return g_plus; }
  double yy() const { return g_minus; }
};

enum class Method { fd, analytic };

CorrelatorSet correlators(const IsingParams& p);
// Closed-form lambda-derivatives of G(0), G(+-1).
CorrelatorDerivatives correlator_derivatives(const IsingParams& p);

// X-state nearest-neighbour RDM assembled from the correlators.
DensityMatrix rdm_nn(const IsingParams& p);
DensityMatrix rdm_from_correlators(const CorrelatorSet& c);

// -(1/N) sum_k omega_k.
double energy_density(const IsingParams& p);
// -<sz> - 2 lambda (rho_14 + rho_23), evaluated on an RDM.
double energy_from_rdm(const DensityMatrix& rho, double lambda);
// d(E/N)/dlambda = -<sx sx> = -2 (rho_14 + rho_23).
double denergy_dlambda(const IsingParams& p);

// Entrywise d rho / d lambda. The analytic branch differentiates the k-sums;
// the fd branch uses Richardson-extrapolated central differences with
// steps fd_step and fd_step / 2 and needs lambda >= fd_step.
ComplexMatrix drho_dlambda(const IsingParams& p, Method method, double fd_step = 1e-3);

// d2(E/N)/dlambda2 = -(2 / lambda) d(rho_22 + rho_44)/dlambda; lambda > 0.
double d2e_populations(const IsingParams& p, Method method = Method::analytic, double fd_step = 1e-3);
// The same quantity through the generic second-derivative identity applied to
// the chain Hamiltonian `h` (built by hamiltonian(p.n())).
double d2e_generic(const TwoBodyHamiltonian& h, const IsingParams& p,
               Method method = Method::analytic, double fd_step = 1e-3);

// max(0, 2 (rho_14 - rho_22)).
double concurrence_ising(const IsingParams& p);
// d C / d lambda on the branch C > 0, zero where C vanishes.
double dconcurrence_dlambda(const IsingParams& p, Method method = Method::analytic,
                            double fd_step = 1e-3);

// The chain as a TwoBodyHamiltonian with lambda as the scan parameter.
TwoBodyHamiltonian hamiltonian(std::size_t n);

// Deterministic pairwise (tree) summation.
double pairwise_sum(std::span<const double> values);

}  // namespace qcrit::ising
