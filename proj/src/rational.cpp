#include "maxsurf/rational.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace maxsurf {

namespace {

double coeff_scale(const std::vector<Complex>& c) {
  double s = 0.0;
  for (const auto& a : c) s = std::max(s, std::abs(a));
  return s;
}

}  // namespace

void Polynomial::trim() {
  const double scale = coeff_scale(c_);
  const double cut = scale * 1e-14;
  while (!c_.empty() && std::abs(c_.back()) <= cut) c_.pop_back();
}

Polynomial Polynomial::from_roots(const std::vector<Complex>& roots, const Complex& lead) {
  Polynomial p = Polynomial::constant(lead);
  for (const auto& r : roots) p = p * Polynomial({-r, 1.0});
  return p;
}

Complex Polynomial::eval(const Complex& z) const {
  Complex acc(0.0, 0.0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial();
  std::vector<Complex> d(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Complex(static_cast<double>(k), 0.0);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::taylor_shift(const Complex& z0) const {
  // In-place repeated synthetic division: afterwards a[k] is the coefficient
  // of t^k in p(t + z0).
  std::vector<Complex> a = c_;
  const int n = degree();
  for (int k = 0; k < n; ++k)
    for (int j = n - 1; j >= k; --j) a[j] += z0 * a[j + 1];
  return Polynomial(std::move(a));
}

Polynomial Polynomial::deflate(const Complex& root) const {
  const int n = degree();
  if (n < 1) return Polynomial();
  std::vector<Complex> q(static_cast<size_t>(n), Complex(0.0, 0.0));
  Complex carry = c_[static_cast<size_t>(n)];
  for (int j = n - 1; j >= 0; --j) {
    q[static_cast<size_t>(j)] = carry;
    carry = c_[static_cast<size_t>(j)] + root * carry;
  }
  return Polynomial(std::move(q));
}

int Polynomial::root_order(const Complex& z0, double tol) const {
  if (is_zero()) return 0;
  const Polynomial shifted = taylor_shift(z0);
  const double scale = std::max(coeff_scale(shifted.c_), 1e-300);
  int order = 0;
  for (const auto& a : shifted.c_) {
    if (std::abs(a) > tol * scale) break;
    ++order;
  }
  return order;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Complex> out(std::max(c_.size(), o.c_.size()), Complex(0.0, 0.0));
  for (size_t k = 0; k < c_.size(); ++k) out[k] += c_[k];
  for (size_t k = 0; k < o.c_.size(); ++k) out[k] += o.c_[k];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * Complex(-1.0); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return Polynomial();
  std::vector<Complex> out(c_.size() + o.c_.size() - 1, Complex(0.0, 0.0));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(const Complex& s) const {
  std::vector<Complex> out = c_;
  for (auto& a : out) a *= s;
  return Polynomial(std::move(out));
}

std::vector<Complex> Polynomial::roots() const {
  const int n = degree();
  if (n <= 0) return {};
  if (n == 1) return {-c_[0] / c_[1]};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c_[i] / c_[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success)
    fail(ErrorCode::RootFindingFailed, "companion eigensolver did not converge");
  std::vector<Complex> out(n);
  const Polynomial d = derivative();
  for (int i = 0; i < n; ++i) {
    Complex r = solver.eigenvalues()(i);
    for (int it = 0; it < 3; ++it) {  // Newton polish (no-op on multiple roots)
      const Complex dp = d.eval(r);
      if (std::abs(dp) < 1e-14) break;
      const Complex step = eval(r) / dp;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      if (std::abs(step) > 0.1 * (1.0 + std::abs(r))) break;
      r -= step;
    }
    out[i] = r;
  }
  std::sort(out.begin(), out.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return out;
}

std::vector<RootCluster> cluster_roots(const std::vector<Complex>& roots, double tol) {
  std::vector<RootCluster> clusters;
  std::vector<bool> used(roots.size(), false);
  for (size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    Complex sum = roots[i];
    int count = 1;
    used[i] = true;
    for (size_t j = i + 1; j < roots.size(); ++j) {
      if (used[j]) continue;
      const double sep = tol * std::max(1.0, std::abs(roots[i]));
      // Multiple roots of a degree-d cluster scatter like eps^(1/d); allow a
      // generous basin relative to the dedup tolerance.
      if (std::abs(roots[j] - roots[i]) <= std::max(sep, 1e-6 * std::max(1.0, std::abs(roots[i])))) {
        sum += roots[j];
        ++count;
        used[j] = true;
      }
    }
    clusters.push_back({sum / static_cast<double>(count), count});
  }
  return clusters;
}

RationalFn::RationalFn(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) fail(ErrorCode::ParamOutOfRange, "rational function with zero denominator");
}

Complex RationalFn::eval_at_infinity() const {
  const int dn = num_.degree();
  const int dd = den_.degree();
  if (dn > dd) return {INFINITY, 0.0};
  if (dn < dd) return {0.0, 0.0};
  return num_.leading() / den_.leading();
}

RationalFn RationalFn::operator+(const RationalFn& o) const {
  return RationalFn(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
RationalFn RationalFn::operator-(const RationalFn& o) const {
  return RationalFn(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
RationalFn RationalFn::operator*(const RationalFn& o) const {
  return RationalFn(num_ * o.num_, den_ * o.den_);
}
RationalFn RationalFn::operator/(const RationalFn& o) const {
  if (o.num_.is_zero()) fail(ErrorCode::ParamOutOfRange, "division by the zero function");
  return RationalFn(num_ * o.den_, den_ * o.num_);
}
RationalFn RationalFn::derivative() const {
  return RationalFn(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalFn RationalFn::substitute_reciprocal() const {
  // f(1/u) = u^(dd-dn) * rev(num)(u) / rev(den)(u)
  std::vector<Complex> rn(num_.coeffs().rbegin(), num_.coeffs().rend());
  std::vector<Complex> rd(den_.coeffs().rbegin(), den_.coeffs().rend());
  const int dn = num_.degree();
  const int dd = den_.degree();
  Polynomial pn{std::move(rn)};
  Polynomial pd{std::move(rd)};
  if (dd > dn) {
    std::vector<Complex> shift(static_cast<size_t>(dd - dn), Complex(0.0, 0.0));
    shift.push_back(1.0);
    pn = pn * Polynomial(std::move(shift));
  } else if (dn > dd) {
    std::vector<Complex> shift(static_cast<size_t>(dn - dd), Complex(0.0, 0.0));
    shift.push_back(1.0);
    pd = pd * Polynomial(std::move(shift));
  }
  return RationalFn(std::move(pn), std::move(pd));
}

int RationalFn::order_at(const Complex& z0, double tol) const {
  return num_.root_order(z0, tol) - den_.root_order(z0, tol);
}

RationalFn RationalFn::reduced(double tol) const {
  if (num_.is_zero()) return *this;
  Polynomial n = num_;
  Polynomial d = den_;
  const auto droots = cluster_roots(d.roots(), tol);
  for (const auto& r : droots) {
    const int shared = std::min(n.root_order(r.location, tol), r.order);
    for (int i = 0; i < shared; ++i) {
      n = n.deflate(r.location);
      d = d.deflate(r.location);
    }
  }
  return RationalFn(std::move(n), std::move(d));
}

int RationalFn::order_at_infinity() const { return den_.degree() - num_.degree(); }

RationalFn::ZerosPoles RationalFn::zeros_and_poles_all(double tol) const {
  if (num_.is_zero()) fail(ErrorCode::ParamOutOfRange, "zeros of the identically-zero function");
  std::vector<RootCluster> zs = cluster_roots(num_.roots(), tol);
  std::vector<RootCluster> ps = cluster_roots(den_.roots(), tol);
  // cancel common roots
  for (auto& z : zs) {
    for (auto& p : ps) {
      if (p.order == 0 || z.order == 0) continue;
      if (std::abs(z.location - p.location) <= tol * std::max(1.0, std::abs(z.location))) {
        const int cancel = std::min(z.order, p.order);
        z.order -= cancel;
        p.order -= cancel;
      }
    }
  }
  ZerosPoles out;
  for (const auto& z : zs)
    if (z.order > 0) out.zeros.push_back(z);
  for (const auto& p : ps)
    if (p.order > 0) out.poles.push_back(p);
  return out;
}

RationalFn::ZerosPoles RationalFn::zeros_and_poles(const Region& region, double tol) const {
  ZerosPoles all = zeros_and_poles_all(tol);
  ZerosPoles out;
  for (const auto& z : all.zeros)
    if (region.contains(z.location, tol)) out.zeros.push_back(z);
  for (const auto& p : all.poles)
    if (region.contains(p.location, tol)) out.poles.push_back(p);
  return out;
}

Complex RationalFn::residue_at(const Complex& pole, double tol) const {
  const int m = -order_at(pole, tol);
  if (m <= 0) return {0.0, 0.0};
  const Polynomial ns = num_.taylor_shift(pole);
  const Polynomial ds = den_.taylor_shift(pole);
  // den = t^k * den_red with den_red(0) != 0.
  const size_t k = static_cast<size_t>(den_.root_order(pole, tol));
  const auto& dc = ds.coeffs();
  std::vector<Complex> dred(dc.begin() + static_cast<long>(k), dc.end());
  // power-series inverse of den_red to order k
  std::vector<Complex> inv(k, Complex(0.0, 0.0));
  inv[0] = 1.0 / dred[0];
  for (size_t j = 1; j < k; ++j) {
    Complex acc(0.0, 0.0);
    for (size_t i = 1; i <= j && i < dred.size(); ++i) acc += dred[i] * inv[j - i];
    inv[j] = -acc / dred[0];
  }
  // residue = coefficient of t^(k-1) in num_shift * inv
  Complex res(0.0, 0.0);
  const auto& nc = ns.coeffs();
  for (size_t i = 0; i < k; ++i) {
    const size_t j = k - 1 - i;
    if (i < nc.size()) res += nc[i] * inv[j];
  }
  return res;
}

}  // namespace maxsurf
