#include <catch_amalgamated.hpp>

#include <cmath>

#include "spinevo/linalg.hpp"
#include "spinevo/models.hpp"
#include "spinevo/oracle.hpp"

using namespace spinevo;

TEST_CASE("flip-basis matrices for the smallest tiers") {
  TridiagonalHamiltonian b2 = build_hamiltonian({Model::B, 2, 1.0});
  CHECK(b2.diag == std::vector<double>{0.0, 0.0, 0.0});
  CHECK(b2.offdiag == std::vector<double>{2.0, 2.0});

  TridiagonalHamiltonian a2 = build_hamiltonian({Model::A, 2, 1.0});
  CHECK(a2.diag == std::vector<double>{2.0, 4.0, 2.0});
  CHECK(a2.offdiag == std::vector<double>{2.0, 2.0});

  TridiagonalHamiltonian a1 = build_hamiltonian({Model::A, 1, 1.0});
  CHECK(a1.diag == std::vector<double>{1.0, 1.0});
  CHECK(a1.offdiag == std::vector<double>{1.0});

  EigenSystem s1 = tridiagonal_eigensystem(a1.diag, a1.offdiag, false);
  CHECK_THAT(s1.values[0], Catch::Matchers::WithinAbs(0.0, 1e-14));
  CHECK_THAT(s1.values[1], Catch::Matchers::WithinAbs(2.0, 1e-14));

  CHECK_THROWS_AS(build_hamiltonian({Model::C, 4, 1.0}), unsupported_variant);
  CHECK_THROWS_AS(build_hamiltonian({Model::A, 0, 1.0}), config_error);
  CHECK_THROWS_AS(build_hamiltonian({Model::A, 4, -1.0}), config_error);
}

TEST_CASE("model A spectrum is {G j(j+1)} for every n up to 256") {
  const double G = 0.7;
  for (int n = 1; n <= 256; ++n) {
    TridiagonalHamiltonian h = build_hamiltonian({Model::A, n, G});
    EigenSystem s = tridiagonal_eigensystem(h.diag, h.offdiag, /*want_vectors=*/false);
    for (int j = 0; j <= n; ++j) {
      double expect = G * j * (j + 1.0);
      REQUIRE(std::fabs(s.values[static_cast<size_t>(j)] - expect) <=
              1e-9 * std::max(1.0, expect));
    }
  }
}

TEST_CASE("model A trace identity") {
  for (int n : {1, 2, 3, 17, 64, 128, 256}) {
    TridiagonalHamiltonian h = build_hamiltonian({Model::A, n, 1.0});
    double tr = 0.0;
    for (double d : h.diag) tr += d;
    double expect = n * (n + 1.0) * (n + 2.0) / 3.0;
    CHECK(std::fabs(tr - expect) <= 1e-10 * expect);
  }
}

TEST_CASE("model B spectrum is symmetric under negation") {
  for (int n : {2, 3, 16, 64}) {
    TridiagonalHamiltonian h = build_hamiltonian({Model::B, n, 1.0});
    EigenSystem s = tridiagonal_eigensystem(h.diag, h.offdiag, false);
    double scale = h.norm_inf();
    for (int i = 0; i <= n; ++i)
      CHECK(std::fabs(s.values[static_cast<size_t>(i)] + s.values[static_cast<size_t>(n - i)]) <=
            1e-10 * scale);
    if (n % 2 == 0) CHECK(std::fabs(s.values[static_cast<size_t>(n / 2)]) <= 1e-10 * scale);
  }
}

TEST_CASE("initial state puts everything on zero flips") {
  StateVector psi = initial_state(4);
  REQUIRE(psi.dim() == 5);
  CHECK(psi.amplitudes[0] == std::complex<double>(1.0, 0.0));
  for (int k = 1; k <= 4; ++k) CHECK(psi.amplitudes[static_cast<size_t>(k)] == std::complex<double>(0.0, 0.0));
  CHECK_THAT(psi.norm(), Catch::Matchers::WithinAbs(1.0, 1e-15));
}

TEST_CASE("energy_stats reference values") {
  SpeedLimitInputs a = energy_stats({Model::A, 4, 1.0});
  CHECK(a.mean_energy == 4.0);
  CHECK_THAT(a.spread, Catch::Matchers::WithinRel(4.0 * std::sqrt(2.0), 1e-15));
  CHECK(a.ground_energy == 0.0);

  SpeedLimitInputs b1 = energy_stats({Model::B, 1, 1.0});
  CHECK(b1.mean_energy == 0.0);
  CHECK(b1.spread == 1.0);
  CHECK_THAT(b1.ground_energy, Catch::Matchers::WithinAbs(-1.0, 1e-13));

  SpeedLimitInputs c = energy_stats({Model::C, 4, 2.0});
  CHECK(c.mean_energy == 0.0);
  CHECK_THAT(c.spread, Catch::Matchers::WithinRel(0.5 * kPi * 2.0 * 8.0, 1e-15));
  CHECK_THAT(c.ground_energy, Catch::Matchers::WithinRel(-0.5 * kPi * 2.0 * 16.0, 1e-15));
}

TEST_CASE("model B ground energy at n = 64 and the quoted quadratic") {
  SpeedLimitInputs b = energy_stats({Model::B, 64, 1.0});
  // frozen from two independent eigensolvers
  CHECK_THAT(b.ground_energy, Catch::Matchers::WithinRel(-2066.914813723105, 1e-9));
  // the quoted -0.34 n - 0.49 n^2 misses the true value by ~1.8%, not <1%
  double quoted = -0.34 * 64 - 0.49 * 64 * 64;
  double dev = std::fabs(quoted - b.ground_energy) / std::fabs(b.ground_energy);
  CHECK(dev > 0.015);
  CHECK(dev < 0.022);
}

TEST_CASE("gap beats spread for model B across the fitted range") {
  for (int n = 4; n <= 100; ++n) {
    SpeedLimitInputs b = energy_stats({Model::B, n, 1.0});
    CHECK(b.mean_energy - b.ground_energy > b.spread);
  }
}

TEST_CASE("initial-state spread agrees between flip basis and full register") {
  // the flip-basis variance is offdiag[0]^2 = (nG)^2 for both tier models;
  // the 2^(2n) register must say the same
  for (Model m : {Model::A, Model::B}) {
    for (int n = 1; n <= 5; ++n) {
      ModelSpec spec{m, n, 1.0};
      SpeedLimitInputs full = full_register_energy_stats(spec);
      TridiagonalHamiltonian h = build_hamiltonian(spec);
      CHECK_THAT(full.spread, Catch::Matchers::WithinAbs(h.offdiag[0], 1e-12 * n));
      CHECK_THAT(full.spread, Catch::Matchers::WithinAbs(static_cast<double>(n), 1e-12 * n));
    }
  }
}

TEST_CASE("model C observables") {
  ModelCObservables at0 = model_c_observables(4, 1.0, 0.0);
  CHECK(at0.survival == 1.0);
  CHECK(at0.upper_fraction == 1.0);

  // full flip at t = 1/(G N)
  ModelCObservables flip = model_c_observables(8, 2.0, 1.0 / (2.0 * 8.0));
  CHECK_THAT(flip.upper_fraction, Catch::Matchers::WithinAbs(0.0, 1e-15));

  ModelCObservables half = model_c_observables(2, 1.0, 0.25);
  CHECK_THAT(half.upper_fraction, Catch::Matchers::WithinAbs(0.5, 1e-15));
  CHECK_THAT(half.survival, Catch::Matchers::WithinAbs(0.25, 1e-15));

  CHECK_THROWS_AS(model_c_observables(0, 1.0, 0.1), config_error);
  CHECK_THROWS_AS(model_c_observables(2, 1.0, -0.1), config_error);
}
