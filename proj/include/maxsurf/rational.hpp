#pragma once

#include <complex>
#include <vector>

#include "maxsurf/errors.hpp"

namespace maxsurf {

using Complex = std::complex<double>;

// Polynomial over C with coefficients in ascending degree order.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Polynomial constant(const Complex& a) { return Polynomial({a}); }
  static Polynomial z() { return Polynomial({{0.0, 0.0}, {1.0, 0.0}}); }
  static Polynomial from_roots(const std::vector<Complex>& roots, const Complex& lead = 1.0);

  const std::vector<Complex>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for the zero polynomial
  Complex leading() const { return c_.empty() ? Complex(0.0) : c_.back(); }

  Complex eval(const Complex& z) const;
  Polynomial derivative() const;
  // Coefficients of p(t + z0) in powers of t.
  Polynomial taylor_shift(const Complex& z0) const;
  // Quotient of the division by (z - root); the remainder is dropped.
  Polynomial deflate(const Complex& root) const;
  // Multiplicity of z0 as a root, judged against tol relative to the
  // coefficient scale.
  int root_order(const Complex& z0, double tol = 1e-9) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Complex& s) const;

  // All complex roots via the companion matrix, Newton-polished.
  std::vector<Complex> roots() const;

private:
  void trim();
  std::vector<Complex> c_;
};

struct RootCluster {
  Complex location;
  int order = 0;
};

// Groups nearby roots into multiple roots at their mean.
std::vector<RootCluster> cluster_roots(const std::vector<Complex>& roots, double tol = 1e-9);

// Annulus r_inner < |z| < r_outer; a disk is r_inner = 0.
struct Region {
  double r_inner = 0.0;
  double r_outer = 1.0;
  bool contains(const Complex& z, double tol = 1e-9) const {
    const double r = std::abs(z);
    const bool above = r_inner == 0.0 ? true : r > r_inner + tol;
    return above && r < r_outer - tol;
  }
};

class RationalFn {
public:
  RationalFn() : num_(Polynomial::constant(0.0)), den_(Polynomial::constant(1.0)) {}
  RationalFn(Polynomial num, Polynomial den);
  static RationalFn z() { return RationalFn(Polynomial::z(), Polynomial::constant(1.0)); }
  static RationalFn constant(const Complex& a) {
    return RationalFn(Polynomial::constant(a), Polynomial::constant(1.0));
  }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() <= 0; }

  Complex eval(const Complex& z) const { return num_.eval(z) / den_.eval(z); }
  // Value at z = infinity of the rational function (may be infinite).
  Complex eval_at_infinity() const;

  RationalFn operator+(const RationalFn& o) const;
  RationalFn operator-(const RationalFn& o) const;
  RationalFn operator*(const RationalFn& o) const;
  RationalFn operator/(const RationalFn& o) const;
  RationalFn derivative() const;

  // f(1/u) as a rational function of u.
  RationalFn substitute_reciprocal() const;

  // Cancels common roots of numerator and denominator (within tol) by
  // synthetic deflation.
  RationalFn reduced(double tol = 1e-9) const;

  // Order of vanishing at z0 (negative for poles), with numerator/denominator
  // common roots cancelled.
  int order_at(const Complex& z0, double tol = 1e-9) const;
  // Order of vanishing at infinity (negative for a pole at infinity).
  int order_at_infinity() const;

  struct ZerosPoles {
    std::vector<RootCluster> zeros;
    std::vector<RootCluster> poles;
  };
  // Zeros and poles inside the region, with common roots of numerator and
  // denominator deduplicated at tol.
  ZerosPoles zeros_and_poles(const Region& region, double tol = 1e-9) const;
  // Same over the whole finite plane.
  ZerosPoles zeros_and_poles_all(double tol = 1e-9) const;

  // Residue at a finite pole of arbitrary order (exact rational arithmetic
  // through a Taylor shift and power-series inversion).
  Complex residue_at(const Complex& pole, double tol = 1e-9) const;

private:
  Polynomial num_, den_;
};

}  // namespace maxsurf
