#include "qcrit/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qcrit {

namespace {

constexpr double kFdStep = 1e-3;

double richardson(const Coupling::Fn& f, double x, int order) {
  auto central = [&](double h) {
    if (order == 1) return (f(x + h) - f(x - h)) / (2.0 * h);
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
  };
  const double coarse = central(kFdStep);
  const double fine = central(kFdStep / 2.0);
  const double result = (4.0 * fine - coarse) / 3.0;
  if (!std::isfinite(result))
    throw std::domain_error("coupling derivative is not finite (non-smooth parameterization)");
  return result;
}

const PairRdms::mapped_type& rdm_for(const PairRdms& rdms, const Edge& e) {
  auto it = rdms.find(e);
  if (it == rdms.end())
    throw std::invalid_argument("missing RDM for edge (" + std::to_string(e.first) + ", " +
                                std::to_string(e.second) + ")");
  return it->second;
}

const ComplexMatrix& matrix_for(const PairMatrices& m, const Edge& e) {
  auto it = m.find(e);
  if (it == m.end())
    throw std::invalid_argument("missing RDM derivative for edge (" +
                                std::to_string(e.first) + ", " + std::to_string(e.second) +
                                ")");
  return it->second;
}

CouplingMatrix assemble(const UBuilder& builder, const TwoBodyHamiltonian& h, std::size_t i,
                        std::size_t j, double lambda, int order) {
  return builder ? builder(h, i, j, lambda, order) : build_U(h, i, j, lambda, order);
}

// Visits both orders of every edge: f(i, j, rho in (i, j) ordering).
template <typename F>
void for_each_ordered(const TwoBodyHamiltonian& h, const ComplexMatrix& forward,
                      const Edge& e, F&& f) {
  const std::size_t di = h.dims()[e.first], dj = h.dims()[e.second];
  f(e.first, e.second, forward);
  f(e.second, e.first, swap_factors(forward, di, dj));
}

}  // namespace

Coupling Coupling::constant(double c) {
  return polynomial({c});
}

Coupling Coupling::polynomial(std::vector<double> coeffs) {
  auto eval = [](const std::vector<double>& c, double x) {
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
    return acc;
  };
  std::vector<double> d1, d2;
  for (std::size_t k = 1; k < coeffs.size(); ++k) d1.push_back(static_cast<double>(k) * coeffs[k]);
  for (std::size_t k = 1; k < d1.size(); ++k) d2.push_back(static_cast<double>(k) * d1[k]);
  Coupling c;
  c.value_ = [eval, coeffs](double x) { return eval(coeffs, x); };
  c.first_ = [eval, d1](double x) { return eval(d1, x); };
  c.second_ = [eval, d2](double x) { return eval(d2, x); };
  return c;
}

Coupling Coupling::function(Fn value, Fn first, Fn second) {
  if (!value) throw std::invalid_argument("Coupling::function: empty value function");
  Coupling c;
  c.value_ = std::move(value);
  c.first_ = std::move(first);
  c.second_ = std::move(second);
  return c;
}

double Coupling::value(double lambda) const { return value_(lambda); }

double Coupling::derivative(double lambda, int order) const {
  switch (order) {
    case 0:
      return value_(lambda);
    case 1:
      return first_ ? first_(lambda) : richardson(value_, lambda, 1);
    case 2:
      return second_ ? second_(lambda) : richardson(value_, lambda, 2);
    default:
      throw std::invalid_argument("Coupling::derivative: order must be 0, 1 or 2");
  }
}

bool Coupling::has_closed_form_derivatives() const {
  return static_cast<bool>(first_) && static_cast<bool>(second_);
}

Edge make_edge(std::size_t i, std::size_t j) {
  if (i == j) throw std::invalid_argument("edge endpoints must differ");
  return i < j ? Edge{i, j} : Edge{j, i};
}

TwoBodyHamiltonian::TwoBodyHamiltonian(std::vector<std::size_t> dims)
    : dims_(std::move(dims)), degree_(dims_.size(), 0), local_index_(dims_.size()) {
  if (dims_.size() < 2) throw std::invalid_argument("TwoBodyHamiltonian: need at least two sites");
  for (auto d : dims_)
    if (d < 2) throw std::invalid_argument("TwoBodyHamiltonian: site dimension below 2");
}

std::size_t TwoBodyHamiltonian::hilbert_dimension() const {
  std::size_t total = 1;
  for (auto d : dims_) {
    if (total > std::numeric_limits<std::size_t>::max() / d)
      throw std::overflow_error("Hilbert dimension overflows");
    total *= d;
  }
  return total;
}

bool TwoBodyHamiltonian::has_edge(std::size_t i, std::size_t j) const {
  if (i == j) return false;
  return std::binary_search(edges_.begin(), edges_.end(), make_edge(i, j));
}

void TwoBodyHamiltonian::add_edge(std::size_t i, std::size_t j) {
  if (i >= num_sites() || j >= num_sites())
    throw std::out_of_range("add_edge: site out of range");
  const Edge e = make_edge(i, j);
  auto pos = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (pos == edges_.end() || *pos != e) {
    edges_.insert(pos, e);
    ++degree_[i];
    ++degree_[j];
  }
}

void TwoBodyHamiltonian::add_local(std::size_t site, ComplexMatrix op, Coupling coupling) {
  if (site >= num_sites()) throw std::out_of_range("add_local: site out of range");
  if (op.rows() != dims_[site] || op.cols() != dims_[site])
    throw std::invalid_argument("add_local: operator dimension does not match site");
  local_index_[site].push_back(locals_.size());
  locals_.push_back({site, std::move(op), std::move(coupling)});
}

void TwoBodyHamiltonian::add_pair(std::size_t i, std::size_t j, ComplexMatrix op,
                                  Coupling coupling) {
  if (i >= num_sites() || j >= num_sites())
    throw std::out_of_range("add_pair: site out of range");
  const std::size_t d = dims_[i] * dims_[j];
  if (op.rows() != d || op.cols() != d)
    throw std::invalid_argument("add_pair: operator dimension does not match pair");
  add_edge(i, j);
  pair_index_[make_edge(i, j)].push_back(pairs_.size());
  pairs_.push_back({i, j, std::move(op), std::move(coupling)});
}

std::size_t TwoBodyHamiltonian::degree(std::size_t site) const {
  return degree_.at(site);
}

ComplexMatrix TwoBodyHamiltonian::local_matrix(std::size_t site, double lambda, int order) const {
  ComplexMatrix out(dims_.at(site), dims_.at(site));
  for (auto idx : local_index_[site]) {
    const auto& t = locals_[idx];
    out += t.op * Complex(t.coupling.derivative(lambda, order));
  }
  return out;
}

ComplexMatrix TwoBodyHamiltonian::pair_matrix(std::size_t i, std::size_t j, double lambda,
                                              int order) const {
  const std::size_t di = dims_.at(i), dj = dims_.at(j);
  ComplexMatrix out(di * dj, di * dj);
  auto found = pair_index_.find(make_edge(i, j));
  if (found == pair_index_.end()) return out;
  for (auto idx : found->second) {
    const auto& t = pairs_[idx];
    const Complex c = t.coupling.derivative(lambda, order);
    if (t.i == i && t.j == j) {
      out += t.op * c;
    } else if (t.i == j && t.j == i) {
      out += swap_factors(t.op, dj, di) * c;
    }
  }
  return out;
}

void TwoBodyHamiltonian::validate(double lambda) const {
  for (const auto& t : locals_) {
    if (degree(t.site) == 0)
      throw std::invalid_argument("site " + std::to_string(t.site) +
                                  " has a local term but no interaction edge");
    if (!is_hermitian(t.op * Complex(t.coupling.value(lambda)), 1e-12))
      throw std::invalid_argument("local term is not Hermitian");
  }
  for (const auto& t : pairs_)
    if (!is_hermitian(t.op * Complex(t.coupling.value(lambda)), 1e-12))
      throw std::invalid_argument("pair term is not Hermitian");
}

CouplingMatrix build_U(const TwoBodyHamiltonian& h, std::size_t i, std::size_t j,
                       double lambda, int derivative_order) {
  if (!h.has_edge(i, j))
    throw std::invalid_argument("build_U: (" + std::to_string(i) + ", " + std::to_string(j) +
                                ") is not an interaction edge");
  const std::size_t dj = h.dims()[j];
  const double inv_degree = 1.0 / static_cast<double>(h.degree(i));
  ComplexMatrix u = kron(h.local_matrix(i, lambda, derivative_order), ComplexMatrix::identity(dj));
  u *= inv_degree;
  u += h.pair_matrix(i, j, lambda, derivative_order) * Complex(0.5);
  return {i, j, std::move(u)};
}

double energy_from_rdms(const TwoBodyHamiltonian& h, double lambda, const PairRdms& rdms,
                        const UBuilder& builder) {
  double total = 0.0;
  for (const auto& e : h.edges()) {
    for_each_ordered(h, rdm_for(rdms, e).matrix(), e,
                     [&](std::size_t a, std::size_t b, const ComplexMatrix& rho) {
                       total += trace_product(assemble(builder, h, a, b, lambda, 0).u, rho).real();
                     });
  }
  return total;
}

double denergy_dlambda(const TwoBodyHamiltonian& h, double lambda, const PairRdms& rdms,
                       const UBuilder& builder) {
  double total = 0.0;
  for (const auto& e : h.edges()) {
    for_each_ordered(h, rdm_for(rdms, e).matrix(), e,
                     [&](std::size_t a, std::size_t b, const ComplexMatrix& rho) {
                       total += trace_product(assemble(builder, h, a, b, lambda, 1).u, rho).real();
                     });
  }
  return total / static_cast<double>(h.num_sites());
}

double sum_rule(const TwoBodyHamiltonian& h, double lambda, const PairRdms& rdms,
                const PairMatrices& drdms, const UBuilder& builder) {
  (void)rdms;
  double total = 0.0;
  for (const auto& e : h.edges()) {
    for_each_ordered(h, matrix_for(drdms, e), e,
                     [&](std::size_t a, std::size_t b, const ComplexMatrix& drho) {
                       total += trace_product(assemble(builder, h, a, b, lambda, 0).u, drho).real();
                     });
  }
  return total;
}

double d2energy_dlambda2(const TwoBodyHamiltonian& h, double lambda, const PairRdms& rdms,
                         const PairMatrices& drdms, const UBuilder& builder) {
  double total = 0.0;
  for (const auto& e : h.edges()) {
    for_each_ordered(h, rdm_for(rdms, e).matrix(), e,
                     [&](std::size_t a, std::size_t b, const ComplexMatrix& rho) {
                       total += trace_product(assemble(builder, h, a, b, lambda, 2).u, rho).real();
                     });
    for_each_ordered(h, matrix_for(drdms, e), e,
                     [&](std::size_t a, std::size_t b, const ComplexMatrix& drho) {
                       total += trace_product(assemble(builder, h, a, b, lambda, 1).u, drho).real();
                     });
  }
  return total / static_cast<double>(h.num_sites());
}

double denergy_negativity_form(const TwoBodyHamiltonian& h, double lambda,
                               const PairRdms& rdms, const UBuilder& builder) {
  double total = 0.0;
  for (const auto& e : h.edges()) {
    for_each_ordered(h, rdm_for(rdms, e).matrix(), e,
                     [&](std::size_t a, std::size_t b, const ComplexMatrix& rho) {
                       const std::size_t da = h.dims()[a], db = h.dims()[b];
                       const auto spectrum = eig_hermitian(partial_transpose(rho, da, db));
                       // W = V^H, so (W X W^H)_aa = v_a^H X v_a.
                       const ComplexMatrix du_pt =
                           partial_transpose(assemble(builder, h, a, b, lambda, 1).u, da, db);
                       const auto& v = spectrum.vectors;
                       const std::size_t n = v.rows();
                       for (std::size_t k = 0; k < n; ++k) {
                         Complex diag = 0.0;
                         for (std::size_t r = 0; r < n; ++r) {
                           Complex row = 0.0;
                           for (std::size_t c = 0; c < n; ++c) row += du_pt(r, c) * v(c, k);
                           diag += std::conj(v(r, k)) * row;
                         }
                         total += diag.real() * spectrum.values[k];
                       }
                     });
  }
  return total / static_cast<double>(h.num_sites());
}

}  // namespace qcrit
