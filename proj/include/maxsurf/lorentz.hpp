#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

#include "maxsurf/errors.hpp"

namespace maxsurf {

// Points and vectors of L^3 in a (2,1)-coordinate system. The metric is
// dx1^2 + dx2^2 - dx3^2 and is carried by the free functions below rather
// than by the type itself.
using LorentzVec = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline Mat3 minkowski_metric() {
  Mat3 eta = Mat3::Identity();
  eta(2, 2) = -1.0;
  return eta;
}

template <typename DA, typename DB>
double minkowski_inner(const Eigen::MatrixBase<DA>& u, const Eigen::MatrixBase<DB>& v) {
  return u(0) * v(0) + u(1) * v(1) - u(2) * v(2);
}

template <typename D>
double minkowski_norm2(const Eigen::MatrixBase<D>& v) {
  return minkowski_inner(v, v);
}

enum class Causal { Spacelike, Timelike, Lightlike };

struct CausalClass {
  Causal tag = Causal::Spacelike;
  double tolerance_used = 0.0;
};

const char* causal_name(Causal c);

// Classification of v by the sign of <v,v>, with a band of width
// tol * max(1, |v|^2_euclid) around zero counted as lightlike.
// The zero vector is spacelike by definition.
CausalClass causal_class(const LorentzVec& v, double tol = 1e-10);

// Stereographic projection onto the hyperbolic sphere H^2 = {<x,x> = -1}.
// |z| < 1 maps to the lower sheet, |z| > 1 to the upper one, infinity to
// (0,0,1). Throws UnitModulusInput when z sits on the unit circle.
LorentzVec stereographic(const std::complex<double>& z, double tol = 1e-12);
LorentzVec stereographic_infinity();

// Affine isometry x -> linear*x + translation of L^3.
struct Isometry {
  Mat3 linear = Mat3::Identity();
  LorentzVec translation = LorentzVec::Zero();

  static Isometry identity() { return {}; }
  static Isometry make_translation(const LorentzVec& v) { return {Mat3::Identity(), v}; }

  LorentzVec apply(const LorentzVec& x) const { return linear * x + translation; }
  Isometry compose(const Isometry& other) const {  // (*this) after other
    return {linear * other.linear, linear * other.translation + translation};
  }
  Isometry inverse() const {
    Mat3 li = linear.inverse();
    return {li, -(li * translation)};
  }

  // Deviation from L^T eta L = eta.
  double isometry_defect() const;
  bool is_lorentz(double tol = 1e-9) const { return isometry_defect() <= tol; }
  bool is_positive() const { return linear.determinant() > 0.0; }
};

// Orthochronous iff the linear part preserves the future cone, tested on
// the image of (0,0,1).
bool is_orthochronous(const Isometry& R);

enum class IsometryKind {
  Identity,
  Translation,
  EllipticRotation,
  HyperbolicRotation,
  ParabolicRotation,
  EllipticScrew,
  HyperbolicScrew,
  ParabolicScrew,
  NegativeOrthochronous,
  NegativeNonOrthochronous,
};

const char* isometry_kind_name(IsometryKind k);

struct IsometryClass {
  IsometryKind kind = IsometryKind::Identity;
  double angle = 0.0;   // t of the rotation normal forms
  double lambda = 0.0;  // screw translation along the axis; 0 for plain rotations
  int epsilon = 1;      // hyperbolic case only

  bool is_screw() const {
    return kind == IsometryKind::EllipticScrew || kind == IsometryKind::HyperbolicScrew ||
           kind == IsometryKind::ParabolicScrew;
  }
};

// Identifies the kind of a positive isometry by the causal character of the
// fixed direction of its linear part (timelike -> elliptic, spacelike ->
// hyperbolic, lightlike -> parabolic) and extracts (t, lambda, epsilon)
// against the three matrix normal forms. Negative isometries are only
// split by orthochronicity. Throws NotAnIsometry if the linear part does
// not satisfy L^T eta L = eta within tol.
IsometryClass classify_isometry(const Isometry& R, double tol = 1e-9);

// Normal-form builders (angle conventions as in classify_isometry).
Isometry elliptic_normal_form(double t, double lambda);
Isometry hyperbolic_normal_form(double t, double lambda, int epsilon);
Isometry parabolic_normal_form(double t, double lambda);

enum class GroupCaseKind { Trivial, T, T1T2, R0, R0T0, R1, R1T1, R2, R2T2, R0R2 };

const char* group_case_name(GroupCaseKind k);

// Parameters of the normalized generators. Which fields are meaningful
// depends on the case:
//   T: lambda          T1T2: lambda, mu      R0: nu        R0T0: nu, lambda
//   R1: delta          R1T1: delta, lambda   R2: delta     R2T2: delta, lambda, mu
//   R0R2: nu, delta
struct GroupParams {
  double nu = 0.0;
  double delta = 0.0;
  double lambda = 0.0;
  double mu = 0.0;
};

struct GroupCase {
  GroupCaseKind kind = GroupCaseKind::Trivial;
  GroupParams params;
  // Frame N with N * g * N^-1 equal to the normal form, for every input
  // generator g (possibly after the generator substitutions recorded in
  // normalized_generators).
  Isometry normalizing_frame = Isometry::identity();
  std::vector<Isometry> normalized_generators;
};

// Matches <= 2 fixed-point-free generators against the classification of
// discrete isometry groups admitting entire maximal surfaces of finite
// type. Groups outside the finite table (e.g. containing an elliptic or
// parabolic screw motion) are rejected with UnsupportedGroup; generators or
// products with fixed points raise NotFreeProper.
GroupCase classify_group(const std::vector<Isometry>& generators, double tol = 1e-9);

}  // namespace maxsurf
