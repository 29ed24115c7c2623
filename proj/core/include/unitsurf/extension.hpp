#pragma once

// Complete profiles built by gluing copies of the separatrix (shifted by
// 2pi in theta) and horizontal segments at height 1, with a finite
// difference check of the regularity at each junction.

#include <array>
#include <vector>

#include "unitsurf/integrator.hpp"
#include "unitsurf/profile.hpp"

namespace unitsurf {

struct ExtensionSpec {
  int copies = 1;
  std::vector<double> segment_lengths;  // copies - 1 non-negative lengths

  // Throws SpecInvalid.
  void validate() const;
};

// Highest order of the profile curve verified at a junction: C^{k+1} when
// theta and its first k derivatives are continuous.
enum class Continuity { C0, C1, C2, C3, C4Plus };

std::string_view to_string(Continuity c);

enum class PieceKind { Copy, Segment };

struct JunctionRegularity {
  double t = 0.0;
  PieceKind left = PieceKind::Copy;
  PieceKind right = PieceKind::Copy;
  Continuity order = Continuity::C0;
  // |left - right| one-sided estimates of theta, theta', theta'', theta'''.
  std::array<double, 4> jumps{};
  std::array<double, 4> thresholds{};
  double position_jump = 0.0;
};

struct RegularityReport {
  double h = 0.0;
  std::vector<JunctionRegularity> junctions;
};

struct Extension {
  ProfileCurve profile;
  RegularityReport regularity;
};

// Default step of the one-sided difference stencils.
inline constexpr double kDefaultRegularityStep = 1e-3;

// Glues copies of `separatrix` (the full trajectory on [-b, b] from
// separatrix_trajectory) and segments. Arc length starts at -b so that a
// single copy reproduces the separatrix profile itself.
Extension extend_separatrix(const ExtensionSpec& spec, const Trajectory& separatrix,
                            double spacing = kDefaultProfileSpacing, double h = kDefaultRegularityStep);

Extension extend_separatrix(const ExtensionSpec& spec, const IntegratorConfig& cfg,
                            double spacing = kDefaultProfileSpacing, double h = kDefaultRegularityStep);

// A derivative of order k counts as continuous when its jump is below
// max(1e-3, 50 h^(4-k)).
double continuity_threshold(int k, double h);

}  // namespace unitsurf
