#include "maxsurf/integrate.hpp"

#include <algorithm>
#include <cmath>

namespace maxsurf {

namespace {

constexpr double kPi = 3.14159265358979323846;

// 12-point Gauss-Legendre rule on [-1, 1].
constexpr double kGLX[12] = {
    -0.9815606342467192506905491, -0.9041172563704748566784659, -0.7699026741943046870368938,
    -0.5873179542866174472967024, -0.3678314989981801937526915, -0.1252334085114689154724414,
    0.1252334085114689154724414,  0.3678314989981801937526915,  0.5873179542866174472967024,
    0.7699026741943046870368938,  0.9041172563704748566784659,  0.9815606342467192506905491};
constexpr double kGLW[12] = {
    0.0471753363865118271946160, 0.1069393259953184309602547, 0.1600783285433462263346525,
    0.2031674267230659217490645, 0.2334925365383548087608499, 0.2491470458134027850005624,
    0.2491470458134027850005624, 0.2334925365383548087608499, 0.2031674267230659217490645,
    0.1600783285433462263346525, 0.1069393259953184309602547, 0.0471753363865118271946160};

}  // namespace

Segment Segment::line(const Complex& a, const Complex& b) {
  Segment s;
  s.kind = Kind::Line;
  s.a = a;
  s.b = b;
  return s;
}

Segment Segment::arc(const Complex& center, double radius, double theta0, double theta1) {
  Segment s;
  s.kind = Kind::Arc;
  s.center = center;
  s.radius = radius;
  s.theta0 = theta0;
  s.theta1 = theta1;
  return s;
}

Complex Segment::point(double s) const {
  if (kind == Kind::Line) return a + s * (b - a);
  const double th = theta0 + s * (theta1 - theta0);
  return center + radius * Complex(std::cos(th), std::sin(th));
}

Complex Segment::derivative(double s) const {
  if (kind == Kind::Line) return b - a;
  const double th = theta0 + s * (theta1 - theta0);
  return Complex(0.0, 1.0) * radius * (theta1 - theta0) * Complex(std::cos(th), std::sin(th));
}

double Segment::length() const {
  if (kind == Kind::Line) return std::abs(b - a);
  return std::abs(theta1 - theta0) * radius;
}

double Segment::distance_to(const Complex& p) const {
  if (kind == Kind::Line) {
    const Complex d = b - a;
    const double L2 = std::norm(d);
    if (L2 == 0.0) return std::abs(p - a);
    double t = ((p - a).real() * d.real() + (p - a).imag() * d.imag()) / L2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * d));
  }
  const double lo = std::min(theta0, theta1);
  const double sweep = std::abs(theta1 - theta0);
  const Complex rel = p - center;
  if (sweep >= 2.0 * kPi) return std::abs(std::abs(rel) - radius);
  double phi = std::arg(rel) - lo;
  phi -= 2.0 * kPi * std::floor(phi / (2.0 * kPi));
  if (phi <= sweep) return std::abs(std::abs(rel) - radius);
  return std::min(std::abs(p - point(0.0)), std::abs(p - point(1.0)));
}

PathSpec PathSpec::line(const Complex& a, const Complex& b) {
  PathSpec p;
  p.segments.push_back(Segment::line(a, b));
  return p;
}

PathSpec PathSpec::circle(const Complex& center, double radius) {
  PathSpec p;
  p.segments.push_back(Segment::arc(center, radius, 0.0, 2.0 * kPi));
  return p;
}

PathSpec& PathSpec::append(const Segment& s) {
  segments.push_back(s);
  return *this;
}

Complex PathSpec::start() const { return segments.empty() ? Complex(0.0) : segments.front().start(); }
Complex PathSpec::end() const { return segments.empty() ? Complex(0.0) : segments.back().end(); }

double PathSpec::length() const {
  double L = 0.0;
  for (const auto& s : segments) L += s.length();
  return L;
}

bool PathSpec::closed(double tol) const {
  if (segments.empty()) return true;
  return std::abs(start() - end()) <= tol * (1.0 + std::abs(start()));
}

namespace {

// Sheet reference along one segment: samples of (s, w), dense enough that
// nearest-sample root selection is unambiguous.
struct SheetTrace {
  std::vector<double> s;
  std::vector<Complex> w;

  Complex reference(double at) const {
    // last sample with s <= at
    auto it = std::upper_bound(s.begin(), s.end(), at);
    const size_t idx = it == s.begin() ? 0 : static_cast<size_t>(it - s.begin() - 1);
    return w[idx];
  }
};

SheetTrace trace_segment(const WeierstrassData& data, const Segment& seg, const Complex& w0,
                         const Tolerances& tol) {
  SheetTrace tr;
  tr.s.push_back(0.0);
  tr.w.push_back(w0);
  Complex w = w0;
  double s = 0.0;
  double ds = 1.0 / 32.0;
  const double ds_min = 1e-12;
  while (s < 1.0) {
    const double s_next = std::min(s + ds, 1.0);
    const Complex z = seg.point(s_next);
    const Complex r = std::sqrt(data.domain().curve_rhs.eval(z));
    const Complex cand = std::abs(r - w) <= std::abs(-r - w) ? r : -r;
    const double scale = std::max(std::abs(w), std::abs(r));
    if (std::abs(cand - w) >= 0.5 * scale && scale > 0.0) {
      ds *= 0.5;
      if (ds < ds_min)
        fail(ErrorCode::ContinuationAmbiguous, "sheet roots not separable along segment");
      continue;
    }
    w = cand;
    s = s_next;
    tr.s.push_back(s);
    tr.w.push_back(w);
    ds = std::min(ds * 1.5, 1.0 / 32.0);
  }
  return tr;
}

struct Integrand {
  const WeierstrassData& data;
  const Segment& seg;
  const SheetTrace* trace;  // null on disk domains

  std::array<Complex, 3> operator()(double s) const {
    const Complex z = seg.point(s);
    Complex wfac(1.0, 0.0);
    if (trace != nullptr && data.w_power() == -1) {
      const Complex r = std::sqrt(data.domain().curve_rhs.eval(z));
      const Complex ref = trace->reference(s);
      const Complex w = std::abs(r - ref) <= std::abs(-r - ref) ? r : -r;
      wfac = 1.0 / w;
    }
    const Complex dz = seg.derivative(s);
    return {data.coeff(0).eval(z) * wfac * dz, data.coeff(1).eval(z) * wfac * dz,
            data.coeff(2).eval(z) * wfac * dz};
  }
};

std::array<Complex, 3> gauss_panel(const Integrand& f, double s0, double s1) {
  std::array<Complex, 3> acc{Complex(0.0), Complex(0.0), Complex(0.0)};
  const double mid = 0.5 * (s0 + s1);
  const double half = 0.5 * (s1 - s0);
  for (int i = 0; i < 12; ++i) {
    const auto v = f(mid + half * kGLX[i]);
    for (int k = 0; k < 3; ++k) acc[static_cast<size_t>(k)] += kGLW[i] * v[static_cast<size_t>(k)];
  }
  for (auto& a : acc) a *= half;
  return acc;
}

void adaptive_panel(const Integrand& f, double s0, double s1, const std::array<Complex, 3>& whole,
                    double tol_leaf, int depth, int max_depth, std::array<Complex, 3>& out,
                    std::array<double, 3>& err) {
  const double sm = 0.5 * (s0 + s1);
  const auto left = gauss_panel(f, s0, sm);
  const auto right = gauss_panel(f, sm, s1);
  std::array<double, 3> diff{};
  bool ok = true;
  for (int k = 0; k < 3; ++k) {
    diff[static_cast<size_t>(k)] = std::abs(whole[static_cast<size_t>(k)] -
                                            left[static_cast<size_t>(k)] -
                                            right[static_cast<size_t>(k)]);
    if (diff[static_cast<size_t>(k)] > tol_leaf) ok = false;
  }
  if (ok) {
    for (int k = 0; k < 3; ++k) {
      out[static_cast<size_t>(k)] += left[static_cast<size_t>(k)] + right[static_cast<size_t>(k)];
      err[static_cast<size_t>(k)] += diff[static_cast<size_t>(k)];
    }
    return;
  }
  if (depth >= max_depth)
    fail(ErrorCode::ToleranceNotReached, "adaptive quadrature hit the subdivision limit");
  adaptive_panel(f, s0, sm, left, tol_leaf, depth + 1, max_depth, out, err);
  adaptive_panel(f, sm, s1, right, tol_leaf, depth + 1, max_depth, out, err);
}

void check_path_clearance(const WeierstrassData& data, const PathSpec& path,
                          const Tolerances& tol) {
  for (const auto& seg : path.segments) {
    for (const auto& p : data.singular_points())
      if (seg.distance_to(p) < tol.pole)
        fail(ErrorCode::PoleOnPath, "path within pole tolerance of a singularity");
    if (data.domain().hyperelliptic())
      for (const auto& b : data.domain().branch_points())
        if (seg.distance_to(b) < tol.branch)
          fail(ErrorCode::BranchTooClose, "path within branch tolerance of a branch point");
  }
}

}  // namespace

IntegralResult integrate_path(const WeierstrassData& data, const PathSpec& path,
                              const Tolerances& tol) {
  IntegralResult res;
  if (path.empty()) return res;
  check_path_clearance(data, path, tol);

  const bool curve = data.domain().hyperelliptic();
  Complex w = path.base_w.value_or(Complex(0.0, 0.0));
  if (curve && !path.base_w)
    fail(ErrorCode::OffCurve, "path on a double cover without a starting sheet");
  if (curve && !on_curve(data.domain(), path.start(), w, std::max(tol.curve, 1e-6)))
    fail(ErrorCode::OffCurve, "starting sheet does not satisfy the curve equation");

  // Per-leaf acceptance: with the leaf budget at tol/(segments*128) the
  // accumulated estimate stays near tol even for the dyadic panel chains
  // that approach a pole detour.
  const double tol_leaf =
      tol.integrate / (128.0 * static_cast<double>(std::max<size_t>(1, path.segments.size())));
  for (const auto& seg : path.segments) {
    SheetTrace trace;
    if (curve) trace = trace_segment(data, seg, w, tol);
    Integrand f{data, seg, curve ? &trace : nullptr};
    const auto whole = gauss_panel(f, 0.0, 1.0);
    adaptive_panel(f, 0.0, 1.0, whole, tol_leaf, 0, tol.max_depth, res.value,
                   res.estimated_error);
    if (curve) w = trace.w.back();
  }
  if (curve) res.w_end = w;
  return res;
}

PeriodResult period(const WeierstrassData& data, const PathSpec& loop, const Tolerances& tol) {
  if (!loop.closed(1e-9)) fail(ErrorCode::NotClosed, "loop start and end differ");
  const IntegralResult r = integrate_path(data, loop, tol);
  if (r.w_end && loop.base_w) {
    const double scale = std::max(1.0, std::abs(*loop.base_w));
    if (std::abs(*r.w_end - *loop.base_w) > 1e-6 * scale)
      fail(ErrorCode::NotClosed, "loop returns on the other sheet");
  }
  PeriodResult out;
  out.value = r.value;
  out.real_part = r.real_part();
  out.estimated_error = r.estimated_error;
  return out;
}

std::array<Complex, 3> residue_numeric(const WeierstrassData& data, const SurfacePoint& pole,
                                       double radius, const Tolerances& tol) {
  if (pole.at_infinity) {
    const auto all = residues_at_infinity(data, 1.0 / radius, tol);
    if (!pole.w || !data.domain().hyperelliptic()) return all[0];
    // pick the sheet whose seed is nearer to the requested w at infinity
    const Complex winf = std::sqrt(data.domain().curve_rhs.eval_at_infinity());
    return std::abs(winf - *pole.w) <= std::abs(-winf - *pole.w) ? all[0] : all[1];
  }
  for (const auto& s : data.singular_points()) {
    if (std::abs(s - pole.z) <= tol.pole) continue;  // the pole itself
    if (std::abs(s - pole.z) < radius + tol.pole)
      fail(ErrorCode::EnclosureViolation, "another singularity inside the residue circle");
  }
  if (data.domain().hyperelliptic())
    for (const auto& b : data.domain().branch_points())
      if (std::abs(b - pole.z) < radius + tol.branch)
        fail(ErrorCode::EnclosureViolation, "branch point inside the residue circle");

  PathSpec loop = PathSpec::circle(pole.z, radius);
  if (data.domain().hyperelliptic()) {
    if (!pole.w) fail(ErrorCode::OffCurve, "sheet value missing for a residue on a double cover");
    // carry the sheet radially from the pole to the circle start
    const Complex z_start = pole.z + radius;
    const Complex r0 = std::sqrt(data.domain().curve_rhs.eval(z_start));
    // no branch point inside the disk, so the nearer root continues the sheet
    Complex w_near = *pole.w;
    const int steps = 16;
    for (int i = 1; i <= steps; ++i) {
      const Complex z = pole.z + radius * static_cast<double>(i) / steps;
      const Complex r = std::sqrt(data.domain().curve_rhs.eval(z));
      w_near = std::abs(r - w_near) <= std::abs(-r - w_near) ? r : -r;
    }
    loop.base_w = std::abs(r0 - w_near) <= std::abs(-r0 - w_near) ? r0 : -r0;
  }
  const IntegralResult r = integrate_path(data, loop, tol);
  const Complex two_pi_i(0.0, 2.0 * kPi);
  return {r.value[0] / two_pi_i, r.value[1] / two_pi_i, r.value[2] / two_pi_i};
}

std::vector<std::array<Complex, 3>> residues_at_infinity(const WeierstrassData& data, double R,
                                                         const Tolerances& tol) {
  const Complex two_pi_i(0.0, 2.0 * kPi);
  std::vector<std::array<Complex, 3>> out;
  std::vector<Complex> seeds;
  if (data.domain().hyperelliptic()) {
    const Complex r = std::sqrt(data.domain().curve_rhs.eval(Complex(R, 0.0)));
    seeds = {r, -r};
  } else {
    seeds = {Complex(0.0, 0.0)};
  }
  for (const auto& seed : seeds) {
    PathSpec loop = PathSpec::circle(Complex(0.0, 0.0), R);
    if (data.domain().hyperelliptic()) loop.base_w = seed;
    const IntegralResult r = integrate_path(data, loop, tol);
    // CCW in z is clockwise around infinity
    out.push_back({-r.value[0] / two_pi_i, -r.value[1] / two_pi_i, -r.value[2] / two_pi_i});
  }
  return out;
}

namespace {

void append_line_with_detours(PathSpec& path, const WeierstrassData& data, const Complex& z0,
                              const Complex& z1, const Tolerances& tol) {
  struct Detour {
    double t;
    Complex center;
    double radius;
  };
  const Complex d = z1 - z0;
  const double L = std::abs(d);
  if (L == 0.0) return;
  std::vector<Detour> detours;
  auto consider = [&](const Complex& c, double r_d) {
    const double t = ((c - z0).real() * d.real() + (c - z0).imag() * d.imag()) / (L * L);
    if (t <= 0.0 || t >= 1.0) return;
    const Complex foot = z0 + t * d;
    if (std::abs(c - foot) < r_d) detours.push_back({t, c, r_d});
  };
  for (const auto& p : data.singular_points()) consider(p, 2.0 * tol.pole);
  if (data.domain().hyperelliptic())
    for (const auto& b : data.domain().branch_points()) consider(b, 10.0 * tol.branch);
  std::sort(detours.begin(), detours.end(), [](const Detour& a, const Detour& b) { return a.t < b.t; });

  Complex cur = z0;
  for (const auto& det : detours) {
    const Complex foot = z0 + det.t * d;
    const double dist = std::abs(det.center - foot);
    const double half_chord = std::sqrt(std::max(det.radius * det.radius - dist * dist, 0.0));
    const Complex entry = foot - (half_chord / L) * d;
    const Complex exit = foot + (half_chord / L) * d;
    if (std::abs(entry - cur) > 0.0) path.append(Segment::line(cur, entry));
    const double th0 = std::arg(entry - det.center);
    double sweep = std::arg(exit - det.center) - th0;
    sweep -= 2.0 * kPi * std::floor(sweep / (2.0 * kPi));  // counterclockwise
    if (sweep == 0.0) sweep = 2.0 * kPi;
    path.append(Segment::arc(det.center, det.radius, th0, th0 + sweep));
    cur = exit;
  }
  if (std::abs(z1 - cur) > 0.0) path.append(Segment::line(cur, z1));
}

Complex trace_path_sheet(const WeierstrassData& data, const PathSpec& path, const Complex& w0,
                         const Tolerances& tol) {
  Complex w = w0;
  for (const auto& seg : path.segments) w = trace_segment(data, seg, w, tol).w.back();
  return w;
}

}  // namespace

PathSpec route(const WeierstrassData& data, const SurfacePoint& from, const SurfacePoint& to,
               const Tolerances& tol) {
  if (from.at_infinity || to.at_infinity)
    fail(ErrorCode::Unroutable, "routing through infinity is not supported");
  PathSpec path;
  append_line_with_detours(path, data, from.z, to.z, tol);
  if (!data.domain().hyperelliptic()) return path;

  if (!from.w || !to.w) fail(ErrorCode::OffCurve, "sheet values required on a double cover");
  path.base_w = *from.w;
  const Complex w_end = path.empty() ? *from.w : trace_path_sheet(data, path, *from.w, tol);
  const double scale = std::max(1.0, std::abs(*to.w));
  if (std::abs(w_end - *to.w) <= 1e-6 * scale) return path;
  if (std::abs(w_end + *to.w) > 1e-6 * scale)
    fail(ErrorCode::Unroutable, "target sheet does not satisfy the curve equation");

  // Wrong lift: detour once around a branch point to swap sheets.
  const auto branches = data.domain().branch_points();
  if (branches.empty()) fail(ErrorCode::Unroutable, "sheet flip needed but no branch point");
  Complex best = branches[0];
  double best_d = INFINITY;
  for (const auto& b : branches) {
    const double dist = std::abs(b - from.z);
    if (dist < best_d) {
      best_d = dist;
      best = b;
    }
  }
  double clearance = INFINITY;
  for (const auto& b : branches)
    if (std::abs(b - best) > 1e-9) clearance = std::min(clearance, std::abs(b - best));
  for (const auto& p : data.singular_points())
    if (std::abs(p - best) > 1e-9) clearance = std::min(clearance, std::abs(p - best));
  const double rho = std::min(0.4 * clearance, 0.25);

  const Complex dir = (from.z - best) / std::abs(from.z - best);
  const Complex approach = best + rho * dir;
  PathSpec flip;
  flip.base_w = *from.w;
  append_line_with_detours(flip, data, from.z, approach, tol);
  const double th0 = std::arg(approach - best);
  flip.append(Segment::arc(best, rho, th0, th0 + 2.0 * kPi));
  append_line_with_detours(flip, data, approach, to.z, tol);
  const Complex w_flip = trace_path_sheet(data, flip, *from.w, tol);
  if (std::abs(w_flip - *to.w) > 1e-6 * scale)
    fail(ErrorCode::Unroutable, "sheet flip detour failed to reach the requested lift");
  return flip;
}

LorentzVec immerse(const WeierstrassData& data, const SurfacePoint& base, const SurfacePoint& p,
                   const Tolerances& tol) {
  const PathSpec path = route(data, base, p, tol);
  return integrate_path(data, path, tol).real_part();
}

double metric_factor(const WeierstrassData& data, const SurfacePoint& p, const Tolerances& tol) {
  for (const auto& s : data.singular_points())
    if (std::abs(p.z - s) <= tol.pole)
      fail(ErrorCode::PoleHit, "metric factor within pole tolerance of a singularity");
  Complex wfac(1.0, 0.0);
  if (data.domain().hyperelliptic() && data.w_power() == -1) {
    if (!p.w) fail(ErrorCode::OffCurve, "sheet value missing on a double cover");
    wfac = 1.0 / *p.w;
  }
  // (|phi3|/2 (1/|g| - |g|))^2 evaluated as ((|phi3/g| - |phi3 g|)/2)^2 so
  // that cancelled factors (e.g. g and phi3 both vanishing) stay finite.
  const double lo = std::abs(data.metric_low().eval(p.z) * wfac);
  const double hi = std::abs(data.metric_high().eval(p.z) * wfac);
  const double h = 0.5 * (lo - hi);
  return h * h;
}

PathSpec boundary_circle_loop(const WeierstrassData& data, int circle_id) {
  PathSpec loop = PathSpec::circle(Complex(0.0, 0.0), 1.0);
  for (const auto& c : data.domain().boundary_circles)
    if (c.id == circle_id && c.w_at_one) loop.base_w = *c.w_at_one;
  if (data.domain().hyperelliptic() && !loop.base_w)
    fail(ErrorCode::ParamOutOfRange, "unknown boundary circle id");
  return loop;
}

PathSpec cut_loop(const WeierstrassData& data, const Complex& b1, const Complex& b2, double margin,
                  const Tolerances& tol) {
  const Complex d = b2 - b1;
  const double L = std::abs(d);
  if (L == 0.0) fail(ErrorCode::ParamOutOfRange, "cut endpoints coincide");
  const Complex u = d / L;
  const Complex n = Complex(0.0, 1.0) * u;
  PathSpec loop;
  const Complex p0 = b1 - margin * n;
  const Complex p1 = b2 - margin * n;
  const Complex p2 = b2 + margin * n;
  const Complex p3 = b1 + margin * n;
  const double th_minus = std::arg(-n);
  const double th_plus = std::arg(n);
  loop.append(Segment::line(p0, p1));
  loop.append(Segment::arc(b2, margin, th_minus, th_minus + kPi));
  loop.append(Segment::line(p2, p3));
  loop.append(Segment::arc(b1, margin, th_plus, th_plus + kPi));
  if (data.domain().hyperelliptic()) loop.base_w = std::sqrt(data.domain().curve_rhs.eval(p0));
  (void)tol;
  return loop;
}

}  // namespace maxsurf
