#include "unitsurf/extension.hpp"

#include <cmath>
#include <string>

#include "unitsurf/errors.hpp"

namespace unitsurf {

namespace {

constexpr int kStencil = 7;

// W[k][i]: weight of f(i*sign*h) in h^k f^(k)(0) for the one-sided degree-6
// interpolating polynomial.
using Weights = std::array<std::array<double, kStencil>, 4>;

Weights one_sided_weights(double sign) {
  long double a[kStencil][2 * kStencil] = {};
  for (int i = 0; i < kStencil; ++i) {
    long double term = 1.0L;
    for (int j = 0; j < kStencil; ++j) {
      a[i][j] = term;
      term *= sign * i / static_cast<long double>(j + 1);
    }
    a[i][kStencil + i] = 1.0L;
  }
  for (int c = 0; c < kStencil; ++c) {
    int pivot = c;
    for (int r = c + 1; r < kStencil; ++r) {
      if (std::fabs(a[r][c]) > std::fabs(a[pivot][c])) pivot = r;
    }
    for (int j = 0; j < 2 * kStencil; ++j) std::swap(a[c][j], a[pivot][j]);
    const long double p = a[c][c];
    for (int j = 0; j < 2 * kStencil; ++j) a[c][j] /= p;
    for (int r = 0; r < kStencil; ++r) {
      if (r == c) continue;
      const long double f = a[r][c];
      for (int j = 0; j < 2 * kStencil; ++j) a[r][j] -= f * a[c][j];
    }
  }
  Weights w{};
  for (int k = 0; k < 4; ++k) {
    for (int i = 0; i < kStencil; ++i) w[k][i] = static_cast<double>(a[k][kStencil + i]);
  }
  return w;
}

struct Piece {
  PieceKind kind = PieceKind::Copy;
  double t_begin = 0.0;
  double length = 0.0;
  double x_begin = 0.0;
  double theta_base = 0.0;  // 2pi k
};

struct State {
  double x, z, theta;
};

class Assembly {
 public:
  Assembly(const Trajectory& sep, std::vector<Piece> pieces) : sep_(sep), pieces_(std::move(pieces)) {}

  // Evaluates piece p at t; segments extrapolate linearly past their ends.
  State eval(const Piece& p, double t) const {
    if (p.kind == PieceKind::Segment) return {p.x_begin + (t - p.t_begin), 1.0, p.theta_base};
    const double b = sep_.t_max();
    const double tau = std::clamp(t - p.t_begin - b, -b, b);
    const auto s = sep_.dense_eval(tau);
    return {p.x_begin + (s.x - sep_.front().x), s.z(), p.theta_base + s.theta};
  }

  const std::vector<Piece>& pieces() const { return pieces_; }

 private:
  const Trajectory& sep_;
  std::vector<Piece> pieces_;
};

}  // namespace

void ExtensionSpec::validate() const {
  if (copies < 1) throw SpecInvalid("copies must be at least 1");
  if (segment_lengths.size() != static_cast<std::size_t>(copies - 1)) {
    throw SpecInvalid("expected " + std::to_string(copies - 1) + " segment lengths, got " +
                      std::to_string(segment_lengths.size()));
  }
  for (double l : segment_lengths) {
    if (!(l >= 0.0) || !std::isfinite(l)) throw SpecInvalid("segment lengths must be finite and non-negative");
  }
}

std::string_view to_string(Continuity c) {
  switch (c) {
    case Continuity::C0:
      return "C0";
    case Continuity::C1:
      return "C1";
    case Continuity::C2:
      return "C2";
    case Continuity::C3:
      return "C3";
    case Continuity::C4Plus:
      return "C4+";
  }
  return "Unknown";
}

double continuity_threshold(int k, double h) { return std::max(1e-3, 50.0 * std::pow(h, 4 - k)); }

Extension extend_separatrix(const ExtensionSpec& spec, const Trajectory& separatrix, double spacing, double h) {
  spec.validate();
  if (!(spacing > 0.0)) throw InvalidInput("profile spacing must be positive");
  if (!(h > 0.0)) throw InvalidInput("regularity step must be positive");
  const double b = separatrix.t_max();
  const double width = separatrix.back().x - separatrix.front().x;

  std::vector<Piece> pieces;
  double t = separatrix.t_min();
  double x = separatrix.front().x;
  for (int k = 0; k < spec.copies; ++k) {
    pieces.push_back({PieceKind::Copy, t, 2.0 * b, x, 2.0 * kPi * k});
    t += 2.0 * b;
    x += width;
    if (k + 1 < spec.copies) {
      const double len = spec.segment_lengths[static_cast<std::size_t>(k)];
      if (len > 0.0) {
        pieces.push_back({PieceKind::Segment, t, len, x, 2.0 * kPi * (k + 1)});
        t += len;
        x += len;
      }
    }
  }
  const Assembly asm_(separatrix, std::move(pieces));

  Extension out;
  out.profile.kind = spec.copies == 1 ? ProfileKind::Separatrix : ProfileKind::Extension;
  for (std::size_t p = 0; p < asm_.pieces().size(); ++p) {
    const Piece& piece = asm_.pieces()[p];
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(piece.length / spacing)));
    for (std::size_t i = p == 0 ? 0 : 1; i <= n; ++i) {
      const double ti = piece.t_begin + piece.length * static_cast<double>(i) / static_cast<double>(n);
      const State s = asm_.eval(piece, ti);
      out.profile.samples.push_back({ti, s.x, s.z, s.theta});
    }
  }

  static const Weights right_w = one_sided_weights(1.0);
  static const Weights left_w = one_sided_weights(-1.0);
  out.regularity.h = h;
  for (std::size_t p = 1; p < asm_.pieces().size(); ++p) {
    const Piece& l = asm_.pieces()[p - 1];
    const Piece& r = asm_.pieces()[p];
    JunctionRegularity j;
    j.t = r.t_begin;
    j.left = l.kind;
    j.right = r.kind;
    const State sl = asm_.eval(l, j.t);
    const State sr = asm_.eval(r, j.t);
    j.position_jump = std::hypot(sl.x - sr.x, sl.z - sr.z);
    std::array<double, kStencil> fl{}, fr{};
    for (int i = 0; i < kStencil; ++i) {
      fl[i] = asm_.eval(l, j.t - i * h).theta - r.theta_base;
      fr[i] = asm_.eval(r, j.t + i * h).theta - r.theta_base;
    }
    j.order = Continuity::C4Plus;
    bool broken = false;
    for (int k = 0; k < 4; ++k) {
      double dl = 0.0, dr = 0.0;
      for (int i = 0; i < kStencil; ++i) {
        dl += left_w[k][i] * fl[i];
        dr += right_w[k][i] * fr[i];
      }
      const double scale = std::pow(h, k);
      j.jumps[k] = std::abs(dl - dr) / scale;
      j.thresholds[k] = continuity_threshold(k, h);
      if (!broken && !(j.jumps[k] < j.thresholds[k])) {
        j.order = static_cast<Continuity>(k);
        broken = true;
      }
    }
    out.regularity.junctions.push_back(j);
  }
  return out;
}

Extension extend_separatrix(const ExtensionSpec& spec, const IntegratorConfig& cfg, double spacing, double h) {
  spec.validate();
  return extend_separatrix(spec, separatrix_trajectory(cfg), spacing, h);
}

}  // namespace unitsurf
