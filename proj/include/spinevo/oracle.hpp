#pragma once

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <vector>

#include "spinevo/angmom.hpp"
#include "spinevo/errors.hpp"
#include "spinevo/evolution.hpp"
#include "spinevo/linalg.hpp"
#include "spinevo/models.hpp"

// Brute-force ground truth in the full 2^(2n)-dimensional register for small
// n. Everything here exists to certify the (n+1)-dimensional restriction and
// the floating coupling coefficients; none of it is a production path.

namespace spinevo {

struct FullRegisterState {
  int n = 0;
  std::vector<std::complex<double>> amplitudes;  // index = bitmask, bit i = spin i up
};

// Bit convention: bits 0..n-1 are the upper tier, bits n..2n-1 the lower
// tier. The initial product state is the mask with all upper bits set.
inline unsigned initial_mask(int n) { return (1u << n) - 1u; }

/// Pairwise exchange Hamiltonian over the full register: strength G on every
/// unordered pair (model A) or on the upper-lower pairs only (model B).
inline Matrix build_full_hamiltonian(const ModelSpec& spec) {
  spec.validate();
  if (spec.variant == Model::C)
    throw unsupported_variant("model C has no register Hamiltonian here");
  if (spec.n > 6) throw size_error("full register limited to n <= 6 (dimension 4096)");
  const int n = spec.n;
  const int N = 2 * n;
  const int dim = 1 << N;
  Matrix h(dim, dim);
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      bool intra = (i < n && j < n) || (i >= n && j >= n);
      if (spec.variant == Model::B && intra) continue;
      for (int m = 0; m < dim; ++m) {
        int bi = (m >> i) & 1, bj = (m >> j) & 1;
        if (bi != bj) {
          int m2 = m ^ (1 << i) ^ (1 << j);
          h(m2, m) += spec.coupling;
        }
      }
    }
  }
  return h;
}

/// Initial-state mean energy and spread straight from the register matrix
/// (no diagonalization; the spread is basis-shift free).
inline SpeedLimitInputs full_register_energy_stats(const ModelSpec& spec) {
  Matrix h = build_full_hamiltonian(spec);
  const int m0 = static_cast<int>(initial_mask(spec.n));
  double e = h(m0, m0);
  double e2 = 0.0;
  for (int m = 0; m < h.rows(); ++m) e2 += h(m, m0) * h(m, m0);
  return SpeedLimitInputs{e, std::sqrt(e2 - e * e), 0.0};
}

/// Embed flip-basis state |k> into the register: the product of the two
/// collective tier states, uniform over the C(n,k)^2 masks with k upper
/// spins down and the matching k lower spins up.
inline FullRegisterState embed_flip_state(int n, int k) {
  if (n < 1 || n > 6) throw size_error("embed_flip_state: n out of the oracle range");
  if (k < 0 || k > n) throw config_error("embed_flip_state: flip count out of range");
  FullRegisterState st;
  st.n = n;
  st.amplitudes.assign(1u << (2 * n), {0.0, 0.0});
  double binom = 1.0;
  for (int i = 0; i < k; ++i) binom = binom * (n - i) / (i + 1);
  const double amp = 1.0 / binom;
  for (unsigned u = 0; u < (1u << n); ++u) {
    if (__builtin_popcount(u) != n - k) continue;  // upper: n-k still up
    for (unsigned l = 0; l < (1u << n); ++l) {
      if (__builtin_popcount(l) != k) continue;  // lower: k raised
      st.amplitudes[u | (l << n)] = amp;
    }
  }
  return st;
}

/// Largest relative leakage of H|k> out of the span of the embedded flip
/// states, over k = 0..n. Zero (to rounding) certifies the restricted
/// matrix.
inline double subspace_closure_defect(const ModelSpec& spec) {
  Matrix h = build_full_hamiltonian(spec);
  const int n = spec.n;
  std::vector<std::vector<double>> basis;
  for (int k = 0; k <= n; ++k) {
    FullRegisterState st = embed_flip_state(n, k);
    std::vector<double> v(st.amplitudes.size());
    for (size_t i = 0; i < v.size(); ++i) v[i] = st.amplitudes[i].real();
    basis.push_back(std::move(v));
  }
  double worst = 0.0;
  for (int k = 0; k <= n; ++k) {
    std::vector<double> y = matvec(h, basis[static_cast<size_t>(k)]);
    double ynorm2 = 0.0;
    for (double v : y) ynorm2 += v * v;
    for (int j = 0; j <= n; ++j) {
      double dot = 0.0;
      for (size_t i = 0; i < y.size(); ++i) dot += basis[static_cast<size_t>(j)][i] * y[i];
      for (size_t i = 0; i < y.size(); ++i) y[i] -= dot * basis[static_cast<size_t>(j)][i];
    }
    double res2 = 0.0;
    for (double v : y) res2 += v * v;
    worst = std::max(worst, std::sqrt(res2) / std::max(1.0, std::sqrt(ynorm2)));
  }
  return worst;
}

/// Full-register evolution of the product initial state by dense
/// eigendecomposition: P from the exact overlap, R from the upper-tier
/// occupation operator, S_e from an explicit partial trace and
/// diagonalization of the reduced density matrix. No flip-basis shortcut
/// enters anywhere.
inline EvolutionTrace brute_force_trace(const ModelSpec& spec, double t_max, int points) {
  spec.validate();
  if (spec.n > 5) throw size_error("brute-force evolution limited to n <= 5");
  if (!(t_max > 0.0)) throw config_error("brute_force_trace: t_max must be positive");
  if (points < 2) throw config_error("brute_force_trace: need at least 2 points");

  const int n = spec.n;
  const int dim = 1 << (2 * n);
  const int nl = 1 << n;
  Matrix h = build_full_hamiltonian(spec);
  EigenSystem es = symmetric_eigensystem(std::move(h));
  const int m0 = static_cast<int>(initial_mask(n));

  std::vector<double> c0(static_cast<size_t>(dim));
  for (int i = 0; i < dim; ++i) c0[static_cast<size_t>(i)] = es.vectors(m0, i);

  EvolutionTrace tr;
  tr.rows.reserve(static_cast<size_t>(points));
  const double gn = spec.coupling * spec.n;

  std::vector<std::complex<double>> psi(static_cast<size_t>(dim));
  std::vector<std::complex<double>> rho(static_cast<size_t>(nl) * nl);
  for (int s = 0; s < points; ++s) {
    const double t = t_max * s / (points - 1);
    for (auto& a : psi) a = {0.0, 0.0};
    if (t == 0.0) {
      psi[static_cast<size_t>(m0)] = {1.0, 0.0};
    } else {
      for (int i = 0; i < dim; ++i) {
        std::complex<double> w =
            c0[static_cast<size_t>(i)] * std::polar(1.0, -es.values[static_cast<size_t>(i)] * t);
        for (int m = 0; m < dim; ++m) psi[static_cast<size_t>(m)] += es.vectors(m, i) * w;
      }
    }

    double P = std::norm(psi[static_cast<size_t>(m0)]);

    double R = 0.0;
    for (int m = 0; m < dim; ++m)
      R += std::norm(psi[static_cast<size_t>(m)]) *
           __builtin_popcount(static_cast<unsigned>(m) & initial_mask(n)) / static_cast<double>(n);

    // rho_L[l][l'] = sum_u psi(u, l) conj(psi(u, l'))
    for (auto& z : rho) z = {0.0, 0.0};
    for (int l = 0; l < nl; ++l)
      for (int lp = 0; lp < nl; ++lp) {
        std::complex<double> z{0.0, 0.0};
        for (int u = 0; u < nl; ++u)
          z += psi[static_cast<size_t>(u | (l << n))] *
               std::conj(psi[static_cast<size_t>(u | (lp << n))]);
        rho[static_cast<size_t>(l) * nl + lp] = z;
      }
    std::vector<double> ev = hermitian_eigenvalues(rho, nl);
    double S = 0.0;
    for (double p : ev)
      if (p > 1e-14) S -= p * std::log(p);

    tr.rows.push_back(TraceRow{t, gn * t, P, R, S});
  }
  return tr;
}

// ---------------------------------------------------------------------------
// Exact rational coupling coefficients (test oracle for the float backend).

struct ExactCgSq {
  int sign;         // sign of the coefficient itself; 0 when it vanishes
  mpq_class value;  // squared magnitude as an exact rational
};

namespace detail {

inline mpz_class exact_factorial_half(int doubled) {
  if (doubled < 0 || (doubled & 1)) throw invalid_quantum_numbers("factorial of a non-integer");
  mpz_class f = 1;
  for (int i = 2; i <= doubled / 2; ++i) f *= i;
  return f;
}

}  // namespace detail

/// Squared coefficient as an exact big-integer rational via the single-sum
/// (Racah) formula, which is exact over rationals even though it cancels
/// catastrophically in floating point. Guarded to doubled quantum numbers
/// <= 80; this is a test oracle, not a production path.
inline ExactCgSq cg_exact_rational(const CgArgs& a) {
  detail::check_quantum_numbers(a);
  if (a.two_j1 > 80 || a.two_j2 > 80)
    throw overflow_guard("cg_exact_rational: doubled quantum numbers above the guard bound");
  if (a.two_m1 + a.two_m2 != a.two_m) return ExactCgSq{0, mpq_class(0)};
  if (a.two_j < std::abs(a.two_j1 - a.two_j2) || a.two_j > a.two_j1 + a.two_j2)
    return ExactCgSq{0, mpq_class(0)};
  if ((a.two_j1 + a.two_j2 + a.two_j) & 1) return ExactCgSq{0, mpq_class(0)};

  using detail::exact_factorial_half;
  mpq_class pref(a.two_j + 1, 1);
  pref *= mpq_class(exact_factorial_half(a.two_j + a.two_j1 - a.two_j2) *
                        exact_factorial_half(a.two_j - a.two_j1 + a.two_j2) *
                        exact_factorial_half(a.two_j1 + a.two_j2 - a.two_j),
                    exact_factorial_half(a.two_j1 + a.two_j2 + a.two_j + 2));
  pref *= exact_factorial_half(a.two_j + a.two_m);
  pref *= exact_factorial_half(a.two_j - a.two_m);
  pref *= exact_factorial_half(a.two_j1 - a.two_m1);
  pref *= exact_factorial_half(a.two_j1 + a.two_m1);
  pref *= exact_factorial_half(a.two_j2 - a.two_m2);
  pref *= exact_factorial_half(a.two_j2 + a.two_m2);

  const int kmin = std::max({0, -(a.two_j - a.two_j2 + a.two_m1) / 2,
                             -(a.two_j - a.two_j1 - a.two_m2) / 2});
  const int kmax = std::min({(a.two_j1 + a.two_j2 - a.two_j) / 2, (a.two_j1 - a.two_m1) / 2,
                             (a.two_j2 + a.two_m2) / 2});
  mpq_class sum(0);
  for (int k = kmin; k <= kmax; ++k) {
    mpz_class den = exact_factorial_half(2 * k);
    den *= exact_factorial_half(a.two_j1 + a.two_j2 - a.two_j - 2 * k);
    den *= exact_factorial_half(a.two_j1 - a.two_m1 - 2 * k);
    den *= exact_factorial_half(a.two_j2 + a.two_m2 - 2 * k);
    den *= exact_factorial_half(a.two_j - a.two_j2 + a.two_m1 + 2 * k);
    den *= exact_factorial_half(a.two_j - a.two_j1 - a.two_m2 + 2 * k);
    mpq_class term(k % 2 == 0 ? 1 : -1, den);
    term.canonicalize();
    sum += term;
  }
  if (sum == 0) return ExactCgSq{0, mpq_class(0)};
  ExactCgSq out;
  out.sign = sgn(sum) > 0 ? 1 : -1;
  out.value = pref * sum * sum;
  out.value.canonicalize();
  return out;
}

}  // namespace spinevo
