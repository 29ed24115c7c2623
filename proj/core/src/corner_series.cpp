#include "unitsurf/corner_series.hpp"

#include <array>
#include <cmath>

namespace unitsurf::corner_series {

namespace {

// Odd powers s^3 .. s^11.
constexpr std::array<double, 5> kTheta = {
    1.0 / 18.0,
    1.0 / 432.0,
    -17.0 / 77760.0,
    -257.0 / 6718464.0,
    -1549.0 / 14108774400.0,
};
// Even powers s^4 .. s^12.
constexpr std::array<double, 5> kLift = {
    1.0 / 72.0,
    1.0 / 2592.0,
    -17.0 / 622080.0,
    -449.0 / 67184640.0,
    -51949.0 / 169305292800.0,
};
// Odd powers s^7 .. s^13 (plus the leading s).
constexpr std::array<double, 4> kX = {
    -1.0 / 4536.0,
    -1.0 / 69984.0,
    53.0 / 61585920.0,
    1831.0 / 7860602880.0,
};

}  // namespace

SeriesState evaluate(double s) {
  const double s2 = s * s;
  SeriesState out;
  out.s = s;

  // theta = sum c_k s^(2k+3); evaluate value and three derivatives term by term.
  double pw = s * s2;  // s^3
  for (std::size_t k = 0; k < kTheta.size(); ++k) {
    const double n = static_cast<double>(2 * k + 3);
    const double c = kTheta[k];
    out.theta += c * pw;
    out.dtheta += c * n * pw / s;
    out.d2theta += c * n * (n - 1.0) * pw / s2;
    out.d3theta += c * n * (n - 1.0) * (n - 2.0) * pw / (s2 * s);
    pw *= s2;
  }
  if (s == 0.0) {
    out.dtheta = out.d2theta = 0.0;
    out.d3theta = 6.0 * kTheta[0];
  }

  pw = s2 * s2;  // s^4
  for (double c : kLift) {
    out.lift += c * pw;
    pw *= s2;
  }

  pw = s2 * s2 * s2 * s;  // s^7
  out.x = s;
  for (double c : kX) {
    out.x += c * pw;
    pw *= s2;
  }
  return out;
}

double constraint_residual(double s) {
  const SeriesState st = evaluate(s);
  const PhasePoint p = PhasePoint::from_lift(st.theta, st.lift);
  const double z = p.z();
  // theta'^2 - (z - cos)(z + cos)/z^2, both sides carried in gap form
  return std::abs(st.dtheta * st.dtheta - lower_gap(p) * upper_gap(p) / (z * z));
}

}  // namespace unitsurf::corner_series
