#pragma once

#include "maxsurf/domain.hpp"
#include "maxsurf/lorentz.hpp"

namespace maxsurf {

// Parametrized arc in the z-chart.
struct Segment {
  enum class Kind { Line, Arc };
  Kind kind = Kind::Line;
  Complex a{0.0, 0.0}, b{0.0, 0.0};  // line endpoints
  Complex center{0.0, 0.0};          // arc data
  double radius = 0.0;
  double theta0 = 0.0, theta1 = 0.0;  // arc runs CCW when theta1 > theta0

  static Segment line(const Complex& a, const Complex& b);
  static Segment arc(const Complex& center, double radius, double theta0, double theta1);

  Complex point(double s) const;       // s in [0,1]
  Complex derivative(double s) const;  // dz/ds
  Complex start() const { return point(0.0); }
  Complex end() const { return point(1.0); }
  double length() const;
  double distance_to(const Complex& p) const;
};

struct PathSpec {
  std::vector<Segment> segments;
  std::optional<Complex> base_w;  // sheet at the path start (double covers)

  static PathSpec line(const Complex& a, const Complex& b);
  static PathSpec circle(const Complex& center, double radius);  // full CCW loop
  PathSpec& append(const Segment& s);

  bool empty() const { return segments.empty(); }
  Complex start() const;
  Complex end() const;
  double length() const;
  bool closed(double tol = 1e-12) const;
};

struct IntegralResult {
  std::array<Complex, 3> value{Complex(0.0), Complex(0.0), Complex(0.0)};
  std::array<double, 3> estimated_error{0.0, 0.0, 0.0};
  std::optional<Complex> w_end;  // sheet at the path end

  LorentzVec real_part() const {
    return LorentzVec(value[0].real(), value[1].real(), value[2].real());
  }
};

struct PeriodResult {
  std::array<Complex, 3> value{Complex(0.0), Complex(0.0), Complex(0.0)};
  LorentzVec real_part = LorentzVec::Zero();
  std::array<double, 3> estimated_error{0.0, 0.0, 0.0};
};

// Integral of Phi along the path, by composite 12-point Gauss panels with
// adaptive halving; per-component error estimates come from the last
// refinement disagreement. Sheets are continued along the path on double
// covers. Throws PoleOnPath / BranchTooClose on bad paths and
// ToleranceNotReached past tol.max_depth halvings.
IntegralResult integrate_path(const WeierstrassData& data, const PathSpec& path,
                              const Tolerances& tol = {});

// Closed-loop period of Phi: start and end must agree, including the sheet.
PeriodResult period(const WeierstrassData& data, const PathSpec& loop, const Tolerances& tol = {});

// (1/2 pi i) * integral of Phi over the circle of given radius around the
// pole, on the pole's sheet. Throws EnclosureViolation when the disk holds
// another singular point or a branch point.
std::array<Complex, 3> residue_numeric(const WeierstrassData& data, const SurfacePoint& pole,
                                       double radius, const Tolerances& tol = {});

// Residues at the two points over z = infinity (or the single point on disk
// domains), computed over the circle |z| = R against the outward loop.
std::vector<std::array<Complex, 3>> residues_at_infinity(const WeierstrassData& data, double R,
                                                         const Tolerances& tol = {});

// Pole-avoiding route from one chart point to another: straight segment
// with deterministic counterclockwise detours of radius 2*tol.pole around
// singular points, plus a branch-point loop when the target sheet requires
// the other lift.
PathSpec route(const WeierstrassData& data, const SurfacePoint& from, const SurfacePoint& to,
               const Tolerances& tol = {});

// X(p) = Re integral of Phi from base to p, well defined in L^3 modulo the
// period lattice.
LorentzVec immerse(const WeierstrassData& data, const SurfacePoint& base, const SurfacePoint& p,
                   const Tolerances& tol = {});

// Conformal factor of the induced metric against |dz|^2:
// ((|phi3|/2) (1/|g| - |g|))^2.
double metric_factor(const WeierstrassData& data, const SurfacePoint& p,
                     const Tolerances& tol = {});

// Loop tracing the boundary circle |z| = 1 on the lift recorded for the
// given circle id.
PathSpec boundary_circle_loop(const WeierstrassData& data, int circle_id);

// Closed loop around the straight cut joining two branch points, at the
// given margin, on the sheet seeded by w at the loop start.
PathSpec cut_loop(const WeierstrassData& data, const Complex& b1, const Complex& b2, double margin,
                  const Tolerances& tol = {});

}  // namespace maxsurf
