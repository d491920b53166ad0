// hamiltonian.hpp
// General two-body qudit Hamiltonians
//
//   H(lambda) = sum_i eps^i(lambda) + sum_{<ij>} V^ij(lambda)
//
// and the identities that express the energy and its lambda-derivatives as
// linear functionals of two-site reduced density matrices.
//
// Pair sums run over ordered pairs: each interaction edge {i, j} contributes
// both U(i, j) and U(j, i). The pair term V^ij is split evenly between the two
// orders, and the local term eps^i enters every U(i, .) with weight 1/N_i,
// where N_i is the degree of site i in the interaction graph. With this
// convention E = sum_(i,j) Tr(U(i, j) rho^ij) holds exactly.

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "qcrit/qtensor.hpp"

namespace qcrit {

// Scalar coefficient c(lambda). Polynomial couplings carry closed-form
// derivatives; arbitrary functions fall back to Richardson-extrapolated
// central differences (steps 1e-3 and 5e-4).
class Coupling {
 public:
  using Fn = std::function<double(double)>;

  static Coupling constant(double c);
  // coeffs[k] multiplies lambda^k.
  static Coupling polynomial(std::vector<double> coeffs);
  static Coupling function(Fn value, Fn first = {}, Fn second = {});

  double value(double lambda) const;
  // order in {0, 1, 2}.
  double derivative(double lambda, int order) const;
  bool has_closed_form_derivatives() const;

 private:
  Fn value_;
  Fn first_;
  Fn second_;
};

using Edge = std::pair<std::size_t, std::size_t>;  // normalized: first < second

Edge make_edge(std::size_t i, std::size_t j);

struct LocalTerm {
  std::size_t site;
  ComplexMatrix op;
  Coupling coupling;
};

// op acts on the ordered pair (i, j), site i being the slow index.
struct PairTerm {
  std::size_t i;
  std::size_t j;
  ComplexMatrix op;
  Coupling coupling;
};

class TwoBodyHamiltonian {
 public:
  explicit TwoBodyHamiltonian(std::vector<std::size_t> dims);

  void add_edge(std::size_t i, std::size_t j);
  void add_local(std::size_t site, ComplexMatrix op, Coupling coupling);
  // Adds the edge {i, j} when missing.
  void add_pair(std::size_t i, std::size_t j, ComplexMatrix op, Coupling coupling);

  std::size_t num_sites() const { return dims_.size(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t hilbert_dimension() const;
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(std::size_t i, std::size_t j) const;
  const std::vector<LocalTerm>& locals() const { return locals_; }
  const std::vector<PairTerm>& pairs() const { return pairs_; }

  // N_i: number of sites that site i interacts with.
  std::size_t degree(std::size_t site) const;

  // Sum of the local terms on a site, differentiated `order` times.
  ComplexMatrix local_matrix(std::size_t site, double lambda, int order = 0) const;
  // Sum of the pair terms on {i, j} in (i, j) ordering, differentiated.
  ComplexMatrix pair_matrix(std::size_t i, std::size_t j, double lambda, int order = 0) const;

  // Checks Hermiticity of every term at lambda and N_i >= 1 wherever a
  // local term lives. Throws std::invalid_argument.
  void validate(double lambda) const;

 private:
  std::vector<std::size_t> dims_;
  std::vector<Edge> edges_;
  std::vector<LocalTerm> locals_;
  std::vector<PairTerm> pairs_;
  std::vector<std::size_t> degree_;
  std::vector<std::vector<std::size_t>> local_index_;
  std::map<Edge, std::vector<std::size_t>> pair_index_;
};

struct CouplingMatrix {
  std::size_t i;
  std::size_t j;
  ComplexMatrix u;
};

// U_{ab,cd}(i, j) = eps^i_{ac} delta_{bd} / N_i + V^ij_{abcd} / 2, or its
// lambda-derivative of the given order.
CouplingMatrix build_U(const TwoBodyHamiltonian& h, std::size_t i, std::size_t j,
                       double lambda, int derivative_order = 0);

// Replaceable assembly step, used by the verification suite to inject
// faulty coupling matrices.
using UBuilder = std::function<CouplingMatrix(const TwoBodyHamiltonian&, std::size_t,
                                              std::size_t, double, int)>;

// Keyed by normalized edge; each matrix in (first, second) ordering.
using PairRdms = std::map<Edge, DensityMatrix>;
using PairMatrices = std::map<Edge, ComplexMatrix>;

// E = sum over ordered pairs of Tr(U(ij) rho^ij). Works for any two-body
// observable packaged as a TwoBodyHamiltonian.
double energy_from_rdms(const TwoBodyHamiltonian& h, double lambda, const PairRdms& rdms,
                        const UBuilder& builder = {});

// d(E/N)/dlambda = (1/N) sum Tr(dU rho).
double denergy_dlambda(const TwoBodyHamiltonian& h, double lambda, const PairRdms& rdms,
                       const UBuilder& builder = {});

// sum Tr(U drho); vanishes for eigenstate RDMs.
double sum_rule(const TwoBodyHamiltonian& h, double lambda, const PairRdms& rdms,
                const PairMatrices& drdms, const UBuilder& builder = {});

// d2(E/N)/dlambda2 = (1/N) sum [Tr(d2U rho) + Tr(dU drho)].
double d2energy_dlambda2(const TwoBodyHamiltonian& h, double lambda, const PairRdms& rdms,
                         const PairMatrices& drdms, const UBuilder& builder = {});

// First derivative through the partial-transpose spectra mu_a of rho^ij:
// (1/N) sum_ij sum_a {W dU^{T_A} W^H}_aa mu_a, W diagonalizing rho^{T_A}.
double denergy_negativity_form(const TwoBodyHamiltonian& h, double lambda,
                               const PairRdms& rdms, const UBuilder& builder = {});

}  // namespace qcrit
