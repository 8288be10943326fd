#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "spinevo/angmom.hpp"
#include "spinevo/errors.hpp"
#include "spinevo/linalg.hpp"
#include "spinevo/models.hpp"

namespace spinevo {

// Exact propagator data for a flip-basis Hamiltonian: time evolution is a
// phase rotation in the eigenbasis, so every sampled time is exact.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;  // ascending
  Matrix eigenvectors;              // orthogonal, column i <-> eigenvalues[i]
  int n = 0;
  double coupling = 1.0;

  int dim() const { return static_cast<int>(eigenvalues.size()); }
};

inline SpectralDecomposition diagonalize(const TridiagonalHamiltonian& h) {
  EigenSystem s = tridiagonal_eigensystem(h.diag, h.offdiag);
  SpectralDecomposition d;
  d.eigenvalues = std::move(s.values);
  d.eigenvectors = std::move(s.vectors);
  d.n = h.n;
  d.coupling = h.coupling;
  return d;
}

/// psi(t) = V exp(-i Lambda t) V^T psi(0); norm is conserved to rounding.
inline StateVector propagate(const SpectralDecomposition& decomp, const StateVector& psi0,
                             double t) {
  const int dim = decomp.dim();
  if (psi0.dim() != dim)
    throw dimension_mismatch("propagate: state dimension does not match the decomposition");
  if (t == 0.0) return psi0;  // identity propagator, exactly
  std::vector<std::complex<double>> modal(static_cast<size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    std::complex<double> c{0.0, 0.0};
    for (int k = 0; k < dim; ++k)
      c += decomp.eigenvectors(k, i) * psi0.amplitudes[static_cast<size_t>(k)];
    modal[static_cast<size_t>(i)] = c * std::polar(1.0, -decomp.eigenvalues[static_cast<size_t>(i)] * t);
  }
  StateVector out;
  out.amplitudes.assign(static_cast<size_t>(dim), {0.0, 0.0});
  for (int k = 0; k < dim; ++k) {
    std::complex<double> c{0.0, 0.0};
    for (int i = 0; i < dim; ++i) c += decomp.eigenvectors(k, i) * modal[static_cast<size_t>(i)];
    out.amplitudes[static_cast<size_t>(k)] = c;
  }
  return out;
}

/// |<psi0|psi_t>|^2
inline double survival_probability(const StateVector& psi_t, const StateVector& psi0) {
  if (psi_t.dim() != psi0.dim())
    throw dimension_mismatch("survival_probability: dimension mismatch");
  std::complex<double> ov{0.0, 0.0};
  for (int k = 0; k < psi_t.dim(); ++k)
    ov += std::conj(psi0.amplitudes[static_cast<size_t>(k)]) * psi_t.amplitudes[static_cast<size_t>(k)];
  return std::norm(ov);
}

/// Average fraction of upper-tier spins still up: sum_k |psi_k|^2 (n-k)/n.
inline double upper_tier_fraction(const StateVector& psi_t, int n) {
  if (psi_t.dim() != n + 1)
    throw dimension_mismatch("upper_tier_fraction: state dimension does not match n");
  double r = 0.0;
  for (int k = 0; k <= n; ++k)
    r += std::norm(psi_t.amplitudes[static_cast<size_t>(k)]) * static_cast<double>(n - k) / n;
  return r;
}

/// Von Neumann entropy of either tier, in nats. Every flip-basis state is a
/// product of one collective upper-tier state and the matching lower-tier
/// state, so the flip expansion is already a Schmidt decomposition and the
/// reduced density matrix is diagonal with entries |psi_k|^2.
inline double entanglement_entropy(const StateVector& psi_t) {
  double s = 0.0;
  for (const auto& a : psi_t.amplitudes) {
    double p = std::norm(a);
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

// Direct evaluation of the model-A observables as coherent sums over total
// spin j with phases exp(-i G j(j+1) t), using the coupling coefficients for
// each flip count. Independent of the tridiagonal route; the two must agree
// to rounding. The coefficient table costs O(n^2) once, each time O(n^2) for
// the upper fraction and O(n) for survival.
class ModelACgSums {
 public:
  ModelACgSums(int n, double coupling) : n_(n), coupling_(coupling) {
    if (n < 1) throw config_error("ModelACgSums: n must be positive");
    if (!(coupling > 0.0)) throw config_error("ModelACgSums: coupling must be positive");
    c_.assign(static_cast<size_t>(n + 1) * (n + 1), 0.0);
    for (int k = 0; k <= n; ++k) {
      CgColumn col(n, -n + 2 * k, n, n - 2 * k);
      for (int j = 0; j <= n; ++j) c_[idx(k, j)] = col.at(2 * j);
    }
  }

  double survival(double t) const {
    std::complex<double> s{0.0, 0.0};
    for (int j = 0; j <= n_; ++j) {
      double c0 = c_[idx(0, j)];
      s += c0 * c0 * phase(j, t);
    }
    return std::norm(s);
  }

  double upper_fraction(double t) const {
    double drop = 0.0;
    for (int k = 1; k <= n_; ++k) {
      std::complex<double> a{0.0, 0.0};
      for (int j = 0; j <= n_; ++j) a += c_[idx(k, j)] * c_[idx(0, j)] * phase(j, t);
      drop += (static_cast<double>(k) / n_) * std::norm(a);
    }
    return 1.0 - drop;
  }

 private:
  std::complex<double> phase(int j, double t) const {
    return std::polar(1.0, -coupling_ * j * (j + 1.0) * t);
  }
  size_t idx(int k, int j) const { return static_cast<size_t>(k) * (n_ + 1) + j; }

  int n_;
  double coupling_;
  std::vector<double> c_;
};

/// Model-A survival probability from the coupling-coefficient sum.
inline double survival_cg_sum(int n, double coupling, double t) {
  return ModelACgSums(n, coupling).survival(t);
}

/// Model-A upper-tier fraction from the coupling-coefficient sums.
inline double r_cg_sum(int n, double coupling, double t) {
  return ModelACgSums(n, coupling).upper_fraction(t);
}

struct TraceRow {
  double t;
  double gnt;  // dimensionless G*n*t
  double survival;
  double upper_fraction;
  double entropy;
};

struct EvolutionTrace {
  std::vector<TraceRow> rows;
};

/// Uniformly sampled trace of (P, R, S_e) from a single spectral
/// decomposition (models A, B) or the closed form (model C, always a product
/// state so its tier entanglement stays zero).
inline EvolutionTrace trace(const ModelSpec& spec, double t_max, int points) {
  spec.validate();
  if (!(t_max > 0.0)) throw config_error("trace: t_max must be positive");
  if (points < 2) throw config_error("trace: need at least 2 points");

  EvolutionTrace tr;
  tr.rows.reserve(static_cast<size_t>(points));
  const double gn = spec.coupling * spec.n;

  if (spec.variant == Model::C) {
    for (int i = 0; i < points; ++i) {
      double t = t_max * i / (points - 1);
      ModelCObservables o = model_c_observables(spec.n, spec.coupling, t);
      tr.rows.push_back(TraceRow{t, gn * t, o.survival, o.upper_fraction, 0.0});
    }
    return tr;
  }

  SpectralDecomposition d = diagonalize(build_hamiltonian(spec));
  StateVector psi0 = initial_state(spec.n);
  for (int i = 0; i < points; ++i) {
    double t = t_max * i / (points - 1);
    StateVector psi = propagate(d, psi0, t);
    tr.rows.push_back(TraceRow{t, gn * t, survival_probability(psi, psi0),
                               upper_tier_fraction(psi, spec.n), entanglement_entropy(psi)});
  }
  return tr;
}

}  // namespace spinevo
