#include "qcrit/ising.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qcrit::ising {

namespace {

struct KGrid {
  std::vector<double> cos_k;
  std::vector<double> sin_k;
};

KGrid make_grid(std::size_t n) {
  KGrid g;
  g.cos_k.reserve(n);
  g.sin_k.reserve(n);
  const auto half = static_cast<long>(n / 2);
  for (long m = -half; m < half; ++m) {
    const double k = static_cast<double>(2 * m + 1) * std::numbers::pi / static_cast<double>(n);
    g.cos_k.push_back(std::cos(k));
    g.sin_k.push_back(std::sin(k));
  }
  return g;
}

// cos(k r), sin(k r) for r in {-1, 0, 1}.
double cos_kr(const KGrid& g, std::size_t m, int r) { return r == 0 ? 1.0 : g.cos_k[m]; }
double sin_kr(const KGrid& g, std::size_t m, int r) {
  return r == 0 ? 0.0 : (r > 0 ? g.sin_k[m] : -g.sin_k[m]);
}

double mean_of(std::vector<double>& terms) {
  return pairwise_sum(terms) / static_cast<double>(terms.size());
}

ComplexMatrix x_state(double r11, double r22, double r33, double r44, double r14, double r23) {
  ComplexMatrix m(4, 4);
  m(0, 0) = r11;
  m(1, 1) = r22;
  m(2, 2) = r33;
  m(3, 3) = r44;
  m(0, 3) = r14;
  m(3, 0) = r14;
  m(1, 2) = r23;
  m(2, 1) = r23;
  return m;
}

ComplexMatrix analytic_drho(const IsingParams& p) {
  const auto c = correlators(p);
  const auto d = correlator_derivatives(p);
  const double dzz = 2.0 * c.mz * d.mz - d.g_plus * c.g_minus - c.g_plus * d.g_minus;
  return x_state((2.0 * d.mz + dzz) / 4.0, -dzz / 4.0, -dzz / 4.0, (-2.0 * d.mz + dzz) / 4.0,
                 (d.xx() - d.yy()) / 4.0, (d.xx() + d.yy()) / 4.0);
}

ComplexMatrix fd_drho(const IsingParams& p, double step) {
  if (!(step > 1e-8)) throw std::domain_error("drho_dlambda: fd step underflow");
  if (p.lambda() - step < 0.0)
    throw std::domain_error("drho_dlambda: lambda too close to the grid edge at 0 for fd step");
  auto central = [&](double h) {
    ComplexMatrix plus = rdm_nn(IsingParams(p.n(), p.lambda() + h)).matrix();
    plus -= rdm_nn(IsingParams(p.n(), p.lambda() - h)).matrix();
    plus *= Complex(1.0 / (2.0 * h));
    return plus;
  };
  ComplexMatrix fine = central(step / 2.0);
  fine *= Complex(4.0 / 3.0);
  fine -= central(step) * Complex(1.0 / 3.0);
  return fine;
}

}  // namespace

IsingParams::IsingParams(std::size_t n, double lambda) : n_(n), lambda_(lambda) {
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("IsingParams: N must be even and at least 4 (got " +
                                std::to_string(n) + ")");
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("IsingParams: lambda must be finite and non-negative");
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
  }
  const std::size_t mid = values.size() / 2;
  return pairwise_sum(values.first(mid)) + pairwise_sum(values.subspan(mid));
}

CorrelatorSet correlators(const IsingParams& p) {
  const auto grid = make_grid(p.n());
  const double lam = p.lambda();
  const std::size_t n = p.n();
  CorrelatorSet out;
  out.omega.resize(n);
  std::vector<double> t0(n), tp(n), tm(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double ck = grid.cos_k[m];
    const double omega = std::sqrt(1.0 + lam * lam + 2.0 * lam * ck);
    out.omega[m] = omega;
    const double cos_t = (1.0 + lam * ck) / omega;
    const double sin_t = lam * grid.sin_k[m] / omega;
    t0[m] = cos_kr(grid, m, 0) * cos_t + sin_kr(grid, m, 0) * sin_t;
    tp[m] = cos_kr(grid, m, 1) * cos_t + sin_kr(grid, m, 1) * sin_t;
    tm[m] = cos_kr(grid, m, -1) * cos_t + sin_kr(grid, m, -1) * sin_t;
  }
  out.mz = mean_of(t0);
  out.g_plus = mean_of(tp);
  out.g_minus = mean_of(tm);
  return out;
}

CorrelatorDerivatives correlator_derivatives(const IsingParams& p) {
  const auto grid = make_grid(p.n());
  const double lam = p.lambda();
  const std::size_t n = p.n();
  std::vector<double> t0(n), tp(n), tm(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double ck = grid.cos_k[m], sk = grid.sin_k[m];
    const double omega = std::sqrt(1.0 + lam * lam + 2.0 * lam * ck);
    const double domega = (lam + ck) / omega;
    const double dcos_t = ck / omega - (1.0 + lam * ck) * domega / (omega * omega);
    const double dsin_t = sk / omega - lam * sk * domega / (omega * omega);
    t0[m] = dcos_t;
    tp[m] = cos_kr(grid, m, 1) * dcos_t + sin_kr(grid, m, 1) * dsin_t;
    tm[m] = cos_kr(grid, m, -1) * dcos_t + sin_kr(grid, m, -1) * dsin_t;
  }
  CorrelatorDerivatives out;
  out.mz = mean_of(t0);
  out.g_plus = mean_of(tp);
  out.g_minus = mean_of(tm);
  return out;
}

DensityMatrix rdm_from_correlators(const CorrelatorSet& c) {
  const double zz = c.zz();
  return DensityMatrix(x_state((1.0 + 2.0 * c.mz + zz) / 4.0, (1.0 - zz) / 4.0, (1.0 - zz) / 4.0,
                               (1.0 - 2.0 * c.mz + zz) / 4.0, (c.xx() - c.yy()) / 4.0,
                               (c.xx() + c.yy()) / 4.0),
                       {2, 2});
}

DensityMatrix rdm_nn(const IsingParams& p) { return rdm_from_correlators(correlators(p)); }

double energy_density(const IsingParams& p) {
  auto omega = correlators(p).omega;
  return -mean_of(omega);
}

double energy_from_rdm(const DensityMatrix& rho, double lambda) {
  const double mz = (rho.element(1, 1) - rho.element(4, 4)).real();
  return -mz - 2.0 * lambda * (rho.element(1, 4) + rho.element(2, 3)).real();
}

double denergy_dlambda(const IsingParams& p) { return -correlators(p).xx(); }

ComplexMatrix drho_dlambda(const IsingParams& p, Method method, double fd_step) {
  return method == Method::analytic ? analytic_drho(p) : fd_drho(p, fd_step);
}

double d2e_populations(const IsingParams& p, Method method, double fd_step) {
  if (!(p.lambda() > 0.0))
    throw std::domain_error("d2e_populations: the identity is singular at lambda = 0");
  const auto d = drho_dlambda(p, method, fd_step);
  return -(2.0 / p.lambda()) * (d(1, 1) + d(3, 3)).real();
}

double d2e_generic(const TwoBodyHamiltonian& h, const IsingParams& p, Method method,
               double fd_step) {
  if (h.num_sites() != p.n()) throw std::invalid_argument("d2e_generic: chain length mismatch");
  const auto rho = rdm_nn(p);
  const auto drho = drho_dlambda(p, method, fd_step);
  PairRdms rdms;
  PairMatrices drdms;
  for (std::size_t i = 0; i < p.n(); ++i) {
    const std::size_t j = (i + 1) % p.n();
    // Translation invariance: every bond carries the same (i, i+1) RDM.
    const Edge e = make_edge(i, j);
    const bool forward = e.first == i;
    rdms.emplace(e, forward ? rho : DensityMatrix(swap_factors(rho.matrix(), 2, 2), {2, 2}));
    drdms.emplace(e, forward ? drho : swap_factors(drho, 2, 2));
  }
  return d2energy_dlambda2(h, p.lambda(), rdms, drdms);
}

double concurrence_ising(const IsingParams& p) {
  const auto rho = rdm_nn(p);
  return std::max(0.0, 2.0 * (rho.element(1, 4) - rho.element(2, 2)).real());
}

double dconcurrence_dlambda(const IsingParams& p, Method method, double fd_step) {
  if (concurrence_ising(p) <= 0.0) return 0.0;
  const auto d = drho_dlambda(p, method, fd_step);
  return 2.0 * (d(0, 3) - d(1, 1)).real();
}

TwoBodyHamiltonian hamiltonian(std::size_t n) {
  if (n < 3) throw std::invalid_argument("ising::hamiltonian: need at least 3 sites");
  TwoBodyHamiltonian h(std::vector<std::size_t>(n, 2));
  const ComplexMatrix xx = kron(pauli::x(), pauli::x());
  for (std::size_t i = 0; i < n; ++i) {
    h.add_pair(i, (i + 1) % n, xx, Coupling::polynomial({0.0, -1.0}));
    h.add_local(i, pauli::z(), Coupling::constant(-1.0));
  }
  return h;
}

}  // namespace qcrit::ising
