#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "spinevo/errors.hpp"
#include "spinevo/models.hpp"

namespace spinevo {

/// beta(eps) = 2*arccos(sqrt(eps))/pi, the spread-side saturation profile;
/// 1 at eps = 0, 0 at eps = 1.
inline double beta(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw config_error("beta: overlap threshold must lie in [0, 1]");
  return 2.0 * std::acos(std::sqrt(epsilon)) / kPi;
}

/// alpha(eps), taken as beta(eps)^2 throughout (the closed form used for
/// every mean-energy curve here; the exact profile is only available
/// numerically in the literature).
inline double alpha(double epsilon) {
  double b = beta(epsilon);
  return b * b;
}

enum class BoundKind { MeanEnergy, Spread };

inline const char* bound_kind_name(BoundKind k) {
  return k == BoundKind::MeanEnergy ? "MeanEnergy" : "Spread";
}

struct SpeedLimitReport {
  double mean_energy;    // E
  double spread;         // dE
  double ground_energy;  // E0
  double tau_ml;         // pi*alpha(eps) / (2 (E - E0))
  double tau_mt;         // pi*beta(eps) / (2 dE)
  double tau_limit;      // max of the two
  BoundKind dominant;
  double epsilon;
};

/// Fastest admissible time to reach squared overlap eps, from the mean
/// energy above ground and from the energy spread; the larger of the two
/// binds.
inline SpeedLimitReport speed_limit(const SpeedLimitInputs& stats, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw config_error("speed_limit: overlap threshold must lie in (0, 1)");
  const double gap = stats.mean_energy - stats.ground_energy;
  if (gap <= 0.0 && stats.spread <= 0.0)
    throw degenerate_energy("speed_limit: frozen state, no finite bound");
  const double inf = std::numeric_limits<double>::infinity();
  double tau_ml = gap > 0.0 ? kPi * alpha(epsilon) / (2.0 * gap) : inf;
  double tau_mt = stats.spread > 0.0 ? kPi * beta(epsilon) / (2.0 * stats.spread) : inf;
  SpeedLimitReport r;
  r.mean_energy = stats.mean_energy;
  r.spread = stats.spread;
  r.ground_energy = stats.ground_energy;
  r.tau_ml = tau_ml;
  r.tau_mt = tau_mt;
  r.tau_limit = std::max(tau_ml, tau_mt);
  r.dominant = tau_ml >= tau_mt ? BoundKind::MeanEnergy : BoundKind::Spread;
  r.epsilon = epsilon;
  return r;
}

/// The overlap trajectory eps(t) that meets the bound with equality: the
/// dashed saturation curve next to the model curves. Exact inversion of the
/// bound with alpha = beta^2, clamped to 0 once the inverted angle passes
/// pi/2 (past orthogonality the curve carries no content).
inline double saturation_epsilon(const SpeedLimitInputs& stats, BoundKind kind, double t) {
  if (t < 0.0) throw config_error("saturation_epsilon: negative time");
  double angle;
  if (kind == BoundKind::Spread) {
    angle = stats.spread * t;  // beta = 2 dE t / pi, angle = (pi/2) beta
  } else {
    const double gap = stats.mean_energy - stats.ground_energy;
    angle = 0.5 * kPi * std::sqrt(2.0 * gap * t / kPi);  // beta = sqrt(2 gap t / pi)
  }
  if (angle >= 0.5 * kPi) return 0.0;
  double c = std::cos(angle);
  return c * c;
}

}  // namespace spinevo
