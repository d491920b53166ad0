#include "qcrit/ladder.hpp"

#include <cmath>
#include <stdexcept>

namespace qcrit::ladder {

namespace {

ComplexMatrix heisenberg() {
  const ComplexMatrix xx = kron(pauli::x(), pauli::x());
  const ComplexMatrix yy = kron(pauli::y(), pauli::y());
  const ComplexMatrix zz = kron(pauli::z(), pauli::z());
  ComplexMatrix s = xx;
  s += yy;
  s += zz;
  s *= Complex(0.25);
  return s;
}

ComplexMatrix mix(const DensityMatrix& a, const DensityMatrix& b) {
  ComplexMatrix m = a.matrix();
  m += b.matrix();
  m *= Complex(0.5);
  return m;
}

}  // namespace

LadderParams::LadderParams(double jr, double j, double h) : jr_(jr), j_(j), h_(h) {
  if (!std::isfinite(jr) || !std::isfinite(j) || !std::isfinite(h))
    throw std::invalid_argument("LadderParams: non-finite parameter");
  if (!(jr > 0.0)) throw std::invalid_argument("LadderParams: J_R must be positive");
  if (!(j >= 0.0)) throw std::invalid_argument("LadderParams: J must be non-negative");
  if (!(jr > kFrustrationBound * j))
    throw std::invalid_argument("LadderParams: requires J_R > 1.401 J");
}

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::all_singlet:
      return "all-singlet";
    case Phase::alternating:
      return "alternating";
    case Phase::all_triplet:
      return "all-triplet";
  }
  return "unknown";
}

Phase phase(const LadderParams& p) {
  if (p.h() < p.hc1()) return Phase::all_singlet;
  if (p.h() < p.hc2()) return Phase::alternating;
  return Phase::all_triplet;
}

DensityMatrix singlet_rdm() {
  ComplexMatrix m(4, 4);
  m(1, 1) = 0.5;
  m(2, 2) = 0.5;
  m(1, 2) = -0.5;
  m(2, 1) = -0.5;
  return DensityMatrix(std::move(m), {2, 2});
}

DensityMatrix triplet_rdm() {
  ComplexMatrix m(4, 4);
  m(0, 0) = 1.0;
  return DensityMatrix(std::move(m), {2, 2});
}

RungState rung_rdm(const LadderParams& p) {
  const Phase ph = phase(p);
  DensityMatrix r1 = ph == Phase::all_singlet ? singlet_rdm() : triplet_rdm();
  DensityMatrix r2 = ph == Phase::all_triplet ? triplet_rdm() : singlet_rdm();
  DensityMatrix avg(mix(r1, r2), {2, 2});
  return {ph, std::move(r1), std::move(r2), std::move(avg)};
}

double energy_density(const LadderParams& p) {
  const auto state = rung_rdm(p);
  const auto& r = state.averaged;
  auto el = [&](std::size_t a, std::size_t b) { return r.element(a, b).real(); };
  const double rung = p.jr() / 4.0 *
                      (el(1, 1) - el(2, 2) - el(3, 3) + el(4, 4) + 2.0 * (el(3, 2) + el(2, 3)));
  const double field = p.h() * (el(1, 1) - el(4, 4));
  // Adjacent triplet rungs only occur in the all-triplet phase: one bond of
  // strength J per rung, shared by two sites.
  const double legs = state.phase == Phase::all_triplet ? p.j() : 0.0;
  return 0.5 * (rung - field + legs);
}

FieldDerivative denergy_dh(const LadderParams& p) {
  FieldDerivative out;
  out.value = -0.5 * rung_rdm(p).averaged.element(1, 1).real();
  out.at_discontinuity = p.h() == p.hc1() || p.h() == p.hc2();
  return out;
}

RungEntanglement rung_entanglement(const LadderParams& p) {
  const double c = 1.0 - rung_rdm(p).averaged.element(1, 1).real();
  return {c, c};
}

TwoBodyHamiltonian hamiltonian(std::size_t rungs, double jr, double j) {
  if (rungs < 3) throw std::invalid_argument("ladder::hamiltonian: need at least 3 rungs");
  LadderParams check(jr, j, 0.0);
  TwoBodyHamiltonian h(std::vector<std::size_t>(2 * rungs, 2));
  const ComplexMatrix ss = heisenberg();
  ComplexMatrix sz = pauli::z();
  sz *= Complex(0.5);
  for (std::size_t r = 0; r < rungs; ++r) {
    const std::size_t next = (r + 1) % rungs;
    h.add_pair(2 * r, 2 * r + 1, ss, Coupling::constant(jr));
    if (j != 0.0) {
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b)
          h.add_pair(2 * r + a, 2 * next + b, ss, Coupling::constant(j));
    }
    for (std::size_t a = 0; a < 2; ++a)
      h.add_local(2 * r + a, sz, Coupling::polynomial({0.0, -1.0}));
  }
  return h;
}

}  // namespace qcrit::ladder
