#include "qcrit/ed.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace qcrit::ed {

namespace {

// Mixed-radix strides: index = sum_s digit_s * stride_s, site 0 slowest.
std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> strides(dims.size());
  std::size_t s = 1;
  for (std::size_t k = dims.size(); k-- > 0;) {
    strides[k] = s;
    s *= dims[k];
  }
  return strides;
}

// A local or pair operator scattered onto the full register.
struct SiteOperator {
  std::vector<std::size_t> sites;  // one or two sites, slow first
  ComplexMatrix op;
};

std::vector<SiteOperator> collect_operators(const TwoBodyHamiltonian& h, double lambda) {
  std::vector<SiteOperator> ops;
  for (std::size_t s = 0; s < h.num_sites(); ++s) {
    ComplexMatrix m = h.local_matrix(s, lambda);
    if (m.max_abs() > 0.0) ops.push_back({{s}, std::move(m)});
  }
  for (const auto& e : h.edges()) {
    ComplexMatrix m = h.pair_matrix(e.first, e.second, lambda);
    if (m.max_abs() > 0.0) ops.push_back({{e.first, e.second}, std::move(m)});
  }
  return ops;
}

// out[target] += coeff * in[source] for every nonzero operator entry.
template <typename Sink>
void scatter(const TwoBodyHamiltonian& h, const std::vector<SiteOperator>& ops, Sink&& sink) {
  const auto& dims = h.dims();
  const auto strides = strides_of(dims);
  const std::size_t dim = h.hilbert_dimension();
  for (const auto& so : ops) {
    std::size_t local_dim = 1;
    for (auto s : so.sites) local_dim *= dims[s];
    std::vector<std::size_t> offset(local_dim, 0);  // local index -> full-index contribution
    for (std::size_t l = 0; l < local_dim; ++l) {
      std::size_t rem = l, off = 0;
      for (std::size_t k = so.sites.size(); k-- > 0;) {
        const std::size_t s = so.sites[k];
        off += (rem % dims[s]) * strides[s];
        rem /= dims[s];
      }
      offset[l] = off;
    }
    for (std::size_t idx = 0; idx < dim; ++idx) {
      std::size_t col = 0, base = idx;
      for (auto s : so.sites) {
        const std::size_t digit = (idx / strides[s]) % dims[s];
        col = col * dims[s] + digit;
        base -= digit * strides[s];
      }
      for (std::size_t row = 0; row < local_dim; ++row) {
        const Complex v = so.op(row, col);
        if (v != Complex{}) sink(base + offset[row], idx, v);
      }
    }
  }
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  Complex acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += std::conj(a[k]) * b[k];
  return acc;
}

double norm(std::span<const Complex> a) { return std::sqrt(inner(a, a).real()); }

// Orthogonalizes v against basis twice; returns the remaining norm.
double orthogonalize(const std::vector<std::vector<Complex>>& basis, std::vector<Complex>& v) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis) {
      const Complex c = inner(q, v);
      for (std::size_t k = 0; k < v.size(); ++k) v[k] -= c * q[k];
    }
  }
  return norm(v);
}

struct Eigenpairs {
  std::vector<double> values;
  std::vector<std::vector<Complex>> vectors;
};

Eigenpairs dense_lowest(const TwoBodyHamiltonian& h, double lambda, std::size_t count) {
  const auto sys = eig_hermitian(dense_hamiltonian(h, lambda));
  const std::size_t n = sys.values.size();
  count = std::min(count, n);
  Eigenpairs out;
  for (std::size_t k = 0; k < count; ++k) {
    out.values.push_back(sys.values[k]);
    std::vector<Complex> v(n);
    for (std::size_t r = 0; r < n; ++r) v[r] = sys.vectors(r, k);
    out.vectors.push_back(std::move(v));
  }
  return out;
}

// Restarted block Krylov / Rayleigh-Ritz with full reorthogonalization.
Eigenpairs krylov_lowest(const TwoBodyHamiltonian& h, double lambda, std::size_t count,
                         const Options& opts) {
  const std::size_t dim = h.hilbert_dimension();
  const auto ops = collect_operators(h, lambda);
  auto apply = [&](std::span<const Complex> in) {
    std::vector<Complex> out(dim);
    scatter(h, ops, [&](std::size_t r, std::size_t c, Complex v) { out[r] += v * in[c]; });
    return out;
  };

  const std::size_t max_basis = std::min(dim, std::max(opts.max_krylov, 4 * count));
  const std::size_t keep = std::min(max_basis / 2, std::max(opts.block_size, count) + 2);

  std::mt19937_64 rng(0x5eed1234abcdULL);
  std::normal_distribution<double> gauss;
  std::vector<std::vector<Complex>> start;
  for (std::size_t b = 0; b < opts.block_size; ++b) {
    std::vector<Complex> v(dim);
    for (auto& z : v) z = Complex(gauss(rng), gauss(rng));
    start.push_back(std::move(v));
  }

  for (std::size_t restart = 0; restart <= opts.max_restarts; ++restart) {
    std::vector<std::vector<Complex>> basis;
    for (auto& v : start) {
      const double n = orthogonalize(basis, v);
      if (n < 1e-12) continue;
      for (auto& z : v) z /= n;
      basis.push_back(std::move(v));
    }
    ComplexMatrix proj(max_basis, max_basis);
    std::size_t processed = 0;
    while (processed < max_basis) {
      if (processed == basis.size()) {
        // Invariant subspace reached: continue from a fresh random direction
        // so that missing (e.g. degenerate) eigenvectors can still enter.
        std::vector<Complex> v(dim);
        for (auto& z : v) z = Complex(gauss(rng), gauss(rng));
        const double n = orthogonalize(basis, v);
        if (n < 1e-8) break;
        for (auto& z : v) z /= n;
        basis.push_back(std::move(v));
      }
      std::vector<Complex> w = apply(basis[processed]);
      const double wnorm = norm(w);
      for (std::size_t j = 0; j <= processed; ++j) {
        const Complex c = inner(basis[j], w);
        proj(j, processed) = c;
        proj(processed, j) = std::conj(c);
      }
      if (basis.size() < max_basis) {
        const double rn = orthogonalize(basis, w);
        if (rn > 1e-14 * std::max(1.0, wnorm)) {
          for (auto& z : w) z /= rn;
          basis.push_back(std::move(w));
        }
      }
      ++processed;
    }

    ComplexMatrix small(processed, processed);
    for (std::size_t r = 0; r < processed; ++r) {
      for (std::size_t c = 0; c < processed; ++c) small(r, c) = proj(r, c);
      small(r, r) = small(r, r).real();
    }
    const auto ritz = eig_hermitian(small);
    const std::size_t nritz = std::min(processed, std::max(keep, count));

    std::vector<std::vector<Complex>> vectors;
    for (std::size_t k = 0; k < nritz; ++k) {
      std::vector<Complex> y(dim);
      for (std::size_t p = 0; p < processed; ++p) {
        const Complex s = ritz.vectors(p, k);
        const auto& q = basis[p];
        for (std::size_t r = 0; r < dim; ++r) y[r] += s * q[r];
      }
      vectors.push_back(std::move(y));
    }

    double scale = 1.0;
    for (double v : ritz.values) scale = std::max(scale, std::abs(v));
    const std::size_t want = std::min(count, processed);
    bool converged = true;
    for (std::size_t k = 0; k < want && converged; ++k) {
      auto hy = apply(vectors[k]);
      for (std::size_t r = 0; r < dim; ++r) hy[r] -= ritz.values[k] * vectors[k][r];
      converged = norm(hy) <= opts.residual_tolerance * scale;
    }
    if (converged || processed == dim) {
      Eigenpairs out;
      for (std::size_t k = 0; k < want; ++k) {
        out.values.push_back(ritz.values[k]);
        out.vectors.push_back(std::move(vectors[k]));
      }
      return out;
    }
    start = std::move(vectors);
  }
  throw ConvergenceError("ground_level: Krylov solver did not converge");
}

}  // namespace

double degeneracy_tolerance(double e0) { return 1e-8 * std::max(1.0, std::abs(e0)); }

std::vector<Complex> apply_hamiltonian(const TwoBodyHamiltonian& h, double lambda,
                                       std::span<const Complex> psi) {
  const std::size_t dim = h.hilbert_dimension();
  if (psi.size() != dim) throw std::invalid_argument("apply_hamiltonian: dimension mismatch");
  std::vector<Complex> out(dim);
  scatter(h, collect_operators(h, lambda),
          [&](std::size_t r, std::size_t c, Complex v) { out[r] += v * psi[c]; });
  return out;
}

ComplexMatrix dense_hamiltonian(const TwoBodyHamiltonian& h, double lambda) {
  const std::size_t dim = h.hilbert_dimension();
  ComplexMatrix m(dim, dim);
  scatter(h, collect_operators(h, lambda),
          [&](std::size_t r, std::size_t c, Complex v) { m(r, c) += v; });
  return m;
}

double expectation(const TwoBodyHamiltonian& h, double lambda, const PureState& psi) {
  const auto hpsi = apply_hamiltonian(h, lambda, psi.amplitudes());
  return inner(psi.amplitudes(), hpsi).real();
}

GroundLevel ground_level(const TwoBodyHamiltonian& h, double lambda, const Options& opts) {
  const std::size_t dim = h.hilbert_dimension();
  if (dim > opts.max_dimension)
    throw std::length_error("ground_level: Hilbert dimension " + std::to_string(dim) +
                            " exceeds the budget of " + std::to_string(opts.max_dimension));
  h.validate(lambda);

  const std::size_t wanted = opts.block_size + 1;
  Eigenpairs pairs = dim <= opts.dense_limit ? dense_lowest(h, lambda, wanted)
                                             : krylov_lowest(h, lambda, wanted, opts);

  GroundLevel level;
  level.energy = pairs.values.front();
  const double tol = degeneracy_tolerance(level.energy);
  std::size_t d = 0;
  while (d < pairs.values.size() && pairs.values[d] - level.energy <= tol) ++d;
  if (d == pairs.values.size() && d < dim)
    throw std::runtime_error("ground_level: degeneracy exceeds the resolvable block size");
  level.degeneracy = d;
  level.gap = d < pairs.values.size() ? pairs.values[d] - level.energy : 0.0;
  if (d < pairs.values.size() && level.gap <= 10.0 * tol)
    throw std::runtime_error("ground_level: ambiguous near-degeneracy (gap " +
                             std::to_string(level.gap) + ")");
  for (std::size_t k = 0; k < d; ++k)
    level.states.push_back(PureState::normalized(h.dims(), std::move(pairs.vectors[k])));
  return level;
}

DensityMatrix averaged_rdm(const GroundLevel& level, std::size_t i, std::size_t j) {
  if (level.states.empty()) throw std::invalid_argument("averaged_rdm: empty level");
  ComplexMatrix sum;
  std::vector<std::size_t> dims;
  for (const auto& psi : level.states) {
    auto rho = reduced_density(psi, i, j);
    if (sum.empty()) {
      sum = rho.matrix();
      dims = rho.dims();
    } else {
      sum += rho.matrix();
    }
  }
  sum *= Complex(1.0 / static_cast<double>(level.states.size()));
  return DensityMatrix(std::move(sum), std::move(dims));
}

PairRdms averaged_rdms(const GroundLevel& level, std::span<const Edge> edges) {
  PairRdms out;
  for (const auto& e : edges) out.emplace(e, averaged_rdm(level, e.first, e.second));
  return out;
}

double translation_invariance_check(const GroundLevel& level, std::span<const Edge> pairs) {
  if (pairs.size() < 2) return 0.0;
  const auto ref = averaged_rdm(level, pairs[0].first, pairs[0].second);
  double worst = 0.0;
  for (std::size_t k = 1; k < pairs.size(); ++k) {
    const auto rho = averaged_rdm(level, pairs[k].first, pairs[k].second);
    worst = std::max(worst, max_abs_diff(ref.matrix(), rho.matrix()));
  }
  return worst;
}

}  // namespace qcrit::ed
