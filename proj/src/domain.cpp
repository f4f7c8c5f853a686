#include "maxsurf/domain.hpp"

#include <algorithm>
#include <cmath>

namespace maxsurf {

std::vector<Complex> DomainSpec::branch_points() const {
  std::vector<Complex> out;
  if (!hyperelliptic()) return out;
  const auto zp = curve_rhs.zeros_and_poles_all();
  for (const auto& z : zp.zeros)
    if (z.order % 2 == 1) out.push_back(z.location);
  for (const auto& p : zp.poles)
    if (p.order % 2 == 1) out.push_back(p.location);
  return out;
}

std::vector<Complex> DomainSpec::w_zeros() const {
  std::vector<Complex> out;
  if (!hyperelliptic()) return out;
  for (const auto& z : curve_rhs.zeros_and_poles_all().zeros) out.push_back(z.location);
  return out;
}

namespace {

void push_unique(std::vector<Complex>& v, const Complex& z) {
  for (const auto& e : v)
    if (std::abs(e - z) <= 1e-9 * std::max(1.0, std::abs(z))) return;
  v.push_back(z);
}

}  // namespace

WeierstrassData::WeierstrassData(DomainSpec domain, RationalFn g, RationalFn phi3_q, int w_power,
                                 std::string label)
    : domain_(std::move(domain)),
      g_(std::move(g)),
      phi3_q_(std::move(phi3_q)),
      w_power_(w_power),
      label_(std::move(label)) {
  if (w_power_ != 0 && w_power_ != -1)
    fail(ErrorCode::ParamOutOfRange, "w_power must be 0 or -1");
  if (w_power_ == -1 && !domain_.hyperelliptic())
    fail(ErrorCode::ParamOutOfRange, "1/w form on a plain disk domain");
  const RationalFn one = RationalFn::constant(1.0);
  const Complex half_i(0.0, 0.5);
  coeff_[0] = (((one - g_ * g_) / g_) * phi3_q_ * RationalFn::constant(half_i)).reduced();
  coeff_[1] = (((one + g_ * g_) / g_) * phi3_q_ * RationalFn::constant(Complex(-0.5, 0.0))).reduced();
  coeff_[2] = phi3_q_.reduced();
  omega_ = (phi3_q_ / g_).reduced();
  metric_low_ = omega_;
  metric_high_ = (phi3_q_ * g_).reduced();

  for (const auto& r : coeff_) {
    if (r.num().is_zero()) continue;
    for (const auto& p : r.zeros_and_poles_all().poles) push_unique(singular_, p.location);
  }
  if (w_power_ == -1)
    for (const auto& z : domain_.w_zeros()) push_unique(singular_, z);
  avoid_ = singular_;
  for (const auto& b : domain_.branch_points()) push_unique(avoid_, b);

  const LocalOrders inf = phi_orders_at_infinity();
  singular_at_infinity_ = inf.min() < 0;
}

std::array<Complex, 3> WeierstrassData::eval_phi(const SurfacePoint& p, const Tolerances& tol) const {
  if (p.at_infinity) fail(ErrorCode::ParamOutOfRange, "eval_phi needs a finite chart point");
  for (const auto& s : singular_)
    if (std::abs(p.z - s) <= tol.pole)
      fail(ErrorCode::PoleHit, "point within pole tolerance of a singularity of Phi");
  Complex wfac(1.0, 0.0);
  if (domain_.hyperelliptic()) {
    if (!p.w) fail(ErrorCode::OffCurve, "sheet value missing on a double cover");
    if (!on_curve(domain_, p.z, *p.w, tol.curve))
      fail(ErrorCode::OffCurve, "w^2 != curve_rhs(z) beyond tolerance");
    if (w_power_ == -1) wfac = 1.0 / *p.w;
  }
  return {coeff_[0].eval(p.z) * wfac, coeff_[1].eval(p.z) * wfac, coeff_[2].eval(p.z) * wfac};
}

Complex WeierstrassData::phi3_coeff(const SurfacePoint& p) const {
  Complex wfac(1.0, 0.0);
  if (domain_.hyperelliptic() && w_power_ == -1) {
    if (!p.w) fail(ErrorCode::OffCurve, "sheet value missing on a double cover");
    wfac = 1.0 / *p.w;
  }
  return coeff_[2].eval(p.z) * wfac;
}

LocalOrders WeierstrassData::orders_of(const std::array<const RationalFn*, 3>& parts,
                                       const Complex& z0) const {
  LocalOrders out;
  int k = 0;
  if (domain_.hyperelliptic()) k = domain_.curve_rhs.order_at(z0);
  out.branch = (std::abs(k) % 2 == 1);
  for (int j = 0; j < 3; ++j) {
    const int oz = parts[static_cast<size_t>(j)]->order_at(z0);
    out.ord[static_cast<size_t>(j)] =
        out.branch ? 2 * oz + w_power_ * k + 1 : oz + w_power_ * (k / 2);
  }
  return out;
}

LocalOrders WeierstrassData::orders_of_at_infinity(
    const std::array<const RationalFn*, 3>& parts) const {
  LocalOrders out;
  int k = 0;
  if (domain_.hyperelliptic()) k = domain_.curve_rhs.order_at_infinity();
  out.branch = (std::abs(k) % 2 == 1);
  for (int j = 0; j < 3; ++j) {
    const int ou = parts[static_cast<size_t>(j)]->order_at_infinity();
    out.ord[static_cast<size_t>(j)] =
        out.branch ? 2 * ou + w_power_ * k - 3 : ou + w_power_ * (k / 2) - 2;
  }
  return out;
}

LocalOrders WeierstrassData::phi_orders_at(const Complex& z0) const {
  return orders_of({&coeff_[0], &coeff_[1], &coeff_[2]}, z0);
}

LocalOrders WeierstrassData::phi_orders_at_infinity() const {
  return orders_of_at_infinity({&coeff_[0], &coeff_[1], &coeff_[2]});
}

int WeierstrassData::omega_order_at(const Complex& z0) const {
  return orders_of({&omega_, &omega_, &omega_}, z0).ord[0];
}

int WeierstrassData::omega_order_at_infinity() const {
  return orders_of_at_infinity({&omega_, &omega_, &omega_}).ord[0];
}

SurfacePoint mirror(const DomainSpec& domain, const SurfacePoint& p) {
  auto inv_conj = [](const Complex& v) {
    if (std::abs(v) == 0.0) return Complex(INFINITY, 0.0);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return Complex(0.0, 0.0);
    return 1.0 / std::conj(v);
  };
  SurfacePoint out;
  if (p.at_infinity) {
    out.z = {0.0, 0.0};
    out.at_infinity = false;
  } else if (std::abs(p.z) == 0.0) {
    out.at_infinity = true;
  } else {
    out.z = 1.0 / std::conj(p.z);
  }
  if (domain.hyperelliptic()) {
    if (!p.w) fail(ErrorCode::OffCurve, "sheet value missing on a double cover");
    out.w = inv_conj(*p.w);
  }
  return out;
}

std::array<Complex, 2> sheet_values(const DomainSpec& domain, const Complex& z) {
  const Complex r = std::sqrt(domain.curve_rhs.eval(z));
  return {r, -r};
}

bool on_curve(const DomainSpec& domain, const Complex& z, const Complex& w, double tol) {
  const Complex rhs = domain.curve_rhs.eval(z);
  return std::abs(w * w - rhs) <= tol * (1.0 + std::abs(rhs));
}

Complex continue_sheet(const DomainSpec& domain, const std::function<Complex(double)>& path,
                       const Complex& w_start, const Tolerances& tol) {
  if (!domain.hyperelliptic()) fail(ErrorCode::OffCurve, "sheet continuation on a disk domain");
  const std::vector<Complex> branches = domain.branch_points();
  auto guard_branch = [&](const Complex& z) {
    for (const auto& b : branches)
      if (std::abs(z - b) < tol.branch)
        fail(ErrorCode::BranchTooClose, "continuation path within branch tolerance");
  };
  const Complex z0 = path(0.0);
  guard_branch(z0);
  if (!on_curve(domain, z0, w_start, std::max(tol.curve, 1e-6)))
    fail(ErrorCode::OffCurve, "w_start does not satisfy the curve equation");

  Complex w = w_start;
  double s = 0.0;
  double ds = 1.0 / 16.0;
  const double ds_min = 1e-12;
  while (s < 1.0) {
    const double s_next = std::min(s + ds, 1.0);
    const Complex z = path(s_next);
    guard_branch(z);
    const Complex r = std::sqrt(domain.curve_rhs.eval(z));
    const Complex cand = std::abs(r - w) <= std::abs(-r - w) ? r : -r;
    const double jump = std::abs(cand - w);
    const double scale = std::max(std::abs(w), std::abs(r));
    if (jump >= 0.5 * scale && scale > 0.0) {
      ds *= 0.5;
      if (ds < ds_min)
        fail(ErrorCode::ContinuationAmbiguous, "sheet roots not separable along the path");
      continue;
    }
    w = cand;
    s = s_next;
    ds = std::min(ds * 1.5, 1.0 / 16.0);
  }
  return w;
}

}  // namespace maxsurf
