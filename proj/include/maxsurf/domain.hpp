#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "maxsurf/rational.hpp"

namespace maxsurf {

// Point of the conformal support: a z-chart coordinate plus, on double
// covers, the sheet value w with w^2 = curve_rhs(z). Points over z = infinity
// carry the finite w value there.
struct SurfacePoint {
  Complex z{0.0, 0.0};
  std::optional<Complex> w;
  bool at_infinity = false;

  static SurfacePoint disk(const Complex& z) { return {z, std::nullopt, false}; }
  static SurfacePoint curve(const Complex& z, const Complex& w) { return {z, w, false}; }
  static SurfacePoint infinity() { return {{0.0, 0.0}, std::nullopt, true}; }
  static SurfacePoint infinity_on_curve(const Complex& w) { return {{0.0, 0.0}, w, true}; }
};

enum class DomainKind { PuncturedClosedDisk, HyperellipticDisk };

struct EndSpec {
  Complex z{0.0, 0.0};
  bool at_infinity = false;
  int preimages = 1;  // number of surface points over this z-value
};

// Boundary circle of the conformal support. In the chart every circle sits
// over |z| = 1; on double covers the two lifts are told apart by the sheet
// value at z = 1.
struct BoundaryCircle {
  int id = 0;
  std::optional<Complex> w_at_one;
};

struct DomainSpec {
  DomainKind kind = DomainKind::PuncturedClosedDisk;
  RationalFn curve_rhs;  // w^2 = curve_rhs(z); hyperelliptic domains only
  std::vector<EndSpec> ends;
  std::vector<BoundaryCircle> boundary_circles;
  int rank_hint = 0;
  int xi0 = 0;  // declared genus of the compactified quotient surface
  // Sheet normalization on double covers: w value at the base z.
  Complex base_z{0.0, 0.0};
  Complex base_w{0.0, 0.0};

  bool hyperelliptic() const { return kind == DomainKind::HyperellipticDisk; }
  int sheet_count() const { return hyperelliptic() ? 2 : 1; }

  // Odd-order zeros/poles of curve_rhs: the branch points of the cover.
  std::vector<Complex> branch_points() const;
  // Zeros of w (any order), where 1/w blows up in the z-chart.
  std::vector<Complex> w_zeros() const;
};

// Tolerances shared across the analytic machinery.
struct Tolerances {
  double root = 1e-9;
  double pole = 1e-7;
  double curve = 1e-9;
  double branch = 1e-6;
  double integrate = 1e-10;
  int max_depth = 24;
};

// Integer vanishing orders in the intrinsic local chart of the surface
// (negative for poles). At branch points the chart is sqrt(z - z0), at a
// non-branch infinity it is u = 1/z.
struct LocalOrders {
  std::array<int, 3> ord{0, 0, 0};
  bool branch = false;
  int min() const { return std::min({ord[0], ord[1], ord[2]}); }
  int max_pole() const { return -min(); }
};

class WeierstrassData {
public:
  WeierstrassData() = default;
  WeierstrassData(DomainSpec domain, RationalFn g, RationalFn phi3_q, int w_power,
                  std::string label = {});

  const DomainSpec& domain() const { return domain_; }
  const RationalFn& g() const { return g_; }
  const RationalFn& phi3_q() const { return phi3_q_; }
  int w_power() const { return w_power_; }
  const std::string& label() const { return label_; }

  // Reduced rational coefficient of phi_k against w^w_power dz.
  const RationalFn& coeff(int k) const { return coeff_[static_cast<size_t>(k)]; }

  // (phi1, phi2, phi3) divided by dz at p. Throws PoleHit near a pole of
  // some component and OffCurve when w^2 != curve_rhs(z).
  std::array<Complex, 3> eval_phi(const SurfacePoint& p, const Tolerances& tol = {}) const;

  // phi3/dz alone.
  Complex phi3_coeff(const SurfacePoint& p) const;

  // z-chart locations where some component of Phi is unbounded (poles of the
  // reduced coefficients, plus w = 0 points when phi3 carries 1/w).
  const std::vector<Complex>& singular_points() const { return singular_; }
  bool has_singular_point_at_infinity() const { return singular_at_infinity_; }

  // singular_points plus the branch points of the cover; what paths must
  // stay away from.
  const std::vector<Complex>& avoid_points() const { return avoid_; }

  LocalOrders phi_orders_at(const Complex& z0) const;
  LocalOrders phi_orders_at_infinity() const;
  // Order of omega = phi3/g in the local chart (ends analysis, rank 1).
  int omega_order_at(const Complex& z0) const;
  int omega_order_at_infinity() const;

  // Reduced q/g and q*g, the two rational halves of the metric factor.
  const RationalFn& metric_low() const { return metric_low_; }
  const RationalFn& metric_high() const { return metric_high_; }

private:
  LocalOrders orders_of(const std::array<const RationalFn*, 3>& parts, const Complex& z0) const;
  LocalOrders orders_of_at_infinity(const std::array<const RationalFn*, 3>& parts) const;

  DomainSpec domain_;
  RationalFn g_;
  RationalFn phi3_q_;
  int w_power_ = 0;
  std::string label_;
  std::array<RationalFn, 3> coeff_;
  RationalFn omega_;
  RationalFn metric_low_, metric_high_;
  std::vector<Complex> singular_;
  std::vector<Complex> avoid_;
  bool singular_at_infinity_ = false;
};

// Mirror involution J(z) = 1/conj(z), J(z,w) = (1/conj(z), 1/conj(w)).
SurfacePoint mirror(const DomainSpec& domain, const SurfacePoint& p);

// Analytic continuation of the sheet along a z-path on [0,1]: at every
// accepted step the square root of curve_rhs closer to the previous w is
// chosen, with the step halved until consecutive values differ by less than
// half the local |w|. Throws BranchTooClose when the path runs within
// tol.branch of a branch point and ContinuationAmbiguous when halving
// cannot separate the two roots.
Complex continue_sheet(const DomainSpec& domain, const std::function<Complex(double)>& path,
                       const Complex& w_start, const Tolerances& tol = {});

// The two candidate sheet values over z.
std::array<Complex, 2> sheet_values(const DomainSpec& domain, const Complex& z);

// |w^2 - curve_rhs(z)| <= tol * (1 + |curve_rhs(z)|)?
bool on_curve(const DomainSpec& domain, const Complex& z, const Complex& w, double tol = 1e-9);

}  // namespace maxsurf
