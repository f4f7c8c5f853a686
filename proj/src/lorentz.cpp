#include "maxsurf/lorentz.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <sstream>

namespace maxsurf {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnitModulusInput: return "UnitModulusInput";
    case ErrorCode::NotAnIsometry: return "NotAnIsometry";
    case ErrorCode::UnsupportedGroup: return "UnsupportedGroup";
    case ErrorCode::NotFreeProper: return "NotFreeProper";
    case ErrorCode::PoleHit: return "PoleHit";
    case ErrorCode::OffCurve: return "OffCurve";
    case ErrorCode::BranchTooClose: return "BranchTooClose";
    case ErrorCode::ContinuationAmbiguous: return "ContinuationAmbiguous";
    case ErrorCode::RootFindingFailed: return "RootFindingFailed";
    case ErrorCode::PoleOnPath: return "PoleOnPath";
    case ErrorCode::ToleranceNotReached: return "ToleranceNotReached";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::EnclosureViolation: return "EnclosureViolation";
    case ErrorCode::Unroutable: return "Unroutable";
    case ErrorCode::NotUnitModulus: return "NotUnitModulus";
    case ErrorCode::WindingUnstable: return "WindingUnstable";
    case ErrorCode::AnnulusContaminated: return "AnnulusContaminated";
    case ErrorCode::NonSimpleScherkPole: return "NonSimpleScherkPole";
    case ErrorCode::ResidueImbalance: return "ResidueImbalance";
    case ErrorCode::OddVl: return "OddVl";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::SymmetryFailed: return "SymmetryFailed";
    case ErrorCode::MeshDegenerate: return "MeshDegenerate";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Error";
}

const char* causal_name(Causal c) {
  switch (c) {
    case Causal::Spacelike: return "spacelike";
    case Causal::Timelike: return "timelike";
    case Causal::Lightlike: return "lightlike";
  }
  return "?";
}

CausalClass causal_class(const LorentzVec& v, double tol) {
  const double q = minkowski_norm2(v);
  const double band = tol * std::max(1.0, v.squaredNorm());
  CausalClass out;
  out.tolerance_used = tol;
  if (std::abs(q) <= band)
    out.tag = v.squaredNorm() == 0.0 ? Causal::Spacelike : Causal::Lightlike;
  else
    out.tag = q < 0.0 ? Causal::Timelike : Causal::Spacelike;
  return out;
}

LorentzVec stereographic_infinity() { return LorentzVec(0.0, 0.0, 1.0); }

LorentzVec stereographic(const std::complex<double>& z, double tol) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return stereographic_infinity();
  const double m2 = std::norm(z);
  if (std::abs(std::sqrt(m2) - 1.0) <= tol)
    fail(ErrorCode::UnitModulusInput, "stereographic projection undefined on |z| = 1");
  const double d = m2 - 1.0;
  return LorentzVec(2.0 * z.imag() / d, 2.0 * z.real() / d, (m2 + 1.0) / d);
}

double Isometry::isometry_defect() const {
  const Mat3 eta = minkowski_metric();
  return (linear.transpose() * eta * linear - eta).cwiseAbs().maxCoeff();
}

bool is_orthochronous(const Isometry& R) { return R.linear(2, 2) > 0.0; }

const char* isometry_kind_name(IsometryKind k) {
  switch (k) {
    case IsometryKind::Identity: return "identity";
    case IsometryKind::Translation: return "translation";
    case IsometryKind::EllipticRotation: return "elliptic_rotation";
    case IsometryKind::HyperbolicRotation: return "hyperbolic_rotation";
    case IsometryKind::ParabolicRotation: return "parabolic_rotation";
    case IsometryKind::EllipticScrew: return "elliptic_screw";
    case IsometryKind::HyperbolicScrew: return "hyperbolic_screw";
    case IsometryKind::ParabolicScrew: return "parabolic_screw";
    case IsometryKind::NegativeOrthochronous: return "negative_orthochronous";
    case IsometryKind::NegativeNonOrthochronous: return "negative_non_orthochronous";
  }
  return "?";
}

Isometry elliptic_normal_form(double t, double lambda) {
  Isometry R;
  R.linear << std::cos(t), std::sin(t), 0.0, -std::sin(t), std::cos(t), 0.0, 0.0, 0.0, 1.0;
  R.translation = LorentzVec(0.0, 0.0, lambda);
  return R;
}

Isometry hyperbolic_normal_form(double t, double lambda, int epsilon) {
  const double e = epsilon >= 0 ? 1.0 : -1.0;
  Isometry R;
  R.linear << 1.0, 0.0, 0.0, 0.0, e * std::cosh(t), e * std::sinh(t), 0.0, e * std::sinh(t),
      e * std::cosh(t);
  R.translation = LorentzVec(lambda, 0.0, 0.0);
  return R;
}

Isometry parabolic_normal_form(double t, double lambda) {
  Isometry R;
  R.linear << 1.0, -t, t, t, 1.0 - t * t / 2.0, t * t / 2.0, t, -t * t / 2.0, 1.0 + t * t / 2.0;
  R.translation = LorentzVec(0.0, 0.0, lambda);
  return R;
}

namespace {

// Direction spanning the (numerical) kernel of M. M is expected to be rank
// deficient; the smallest singular direction is what we want even when the
// deficiency is only approximate.
LorentzVec kernel_direction(const Mat3& M) {
  Eigen::JacobiSVD<Mat3> svd(M, Eigen::ComputeFullV);
  return svd.matrixV().col(2);
}

// Vector Minkowski-orthogonal to v in the horizontal plane; nonzero unless
// v is vertical.
LorentzVec horizontal_orthogonal(const LorentzVec& v) { return LorentzVec(v(1), -v(0), 0.0); }

// eta * (a x b) is Minkowski-orthogonal to both a and b.
LorentzVec minkowski_cross(const LorentzVec& a, const LorentzVec& b) {
  LorentzVec c = a.cross(b);
  c(2) = -c(2);
  return c;
}

Mat3 lorentz_inverse(const Mat3& L) {
  const Mat3 eta = minkowski_metric();
  return eta * L.transpose() * eta;
}

// Frame adapted to a timelike axis u (normalized, future pointing):
// columns (e, f, u) form a Lorentz frame with det +1.
Mat3 elliptic_frame(const LorentzVec& u) {
  LorentzVec e = horizontal_orthogonal(u);
  if (e.norm() < 1e-12)
    e = LorentzVec(1.0, 0.0, 0.0);
  else
    e /= std::sqrt(minkowski_norm2(e));
  LorentzVec f = minkowski_cross(u, e);
  f /= std::sqrt(minkowski_norm2(f));
  Mat3 F;
  F.col(0) = e;
  F.col(1) = f;
  F.col(2) = u;
  if (F.determinant() < 0.0) F.col(1) = -f;
  return F;
}

// Frame adapted to a spacelike axis u: columns (u, e, f) with f timelike
// future pointing and det +1.
Mat3 hyperbolic_frame(const LorentzVec& u) {
  LorentzVec f = LorentzVec(0.0, 0.0, 1.0) + u(2) * u;  // projection of e3 onto u-perp
  f /= std::sqrt(-minkowski_norm2(f));
  LorentzVec e = minkowski_cross(f, u);
  e /= std::sqrt(minkowski_norm2(e));
  Mat3 F;
  F.col(0) = u;
  F.col(1) = e;
  F.col(2) = f;
  if (F.determinant() < 0.0) F.col(1) = -e;
  return F;
}

}  // namespace

IsometryClass classify_isometry(const Isometry& R, double tol) {
  if (!R.is_lorentz(tol))
    fail(ErrorCode::NotAnIsometry, "linear part violates L^T eta L = eta, defect " +
                                       std::to_string(R.isometry_defect()));
  const Mat3& L = R.linear;
  const LorentzVec& c = R.translation;
  IsometryClass out;

  const double lin_dev = (L - Mat3::Identity()).cwiseAbs().maxCoeff();
  if (lin_dev <= tol) {
    out.kind = c.norm() <= tol ? IsometryKind::Identity : IsometryKind::Translation;
    return out;
  }

  if (L.determinant() < 0.0) {
    out.kind = is_orthochronous(R) ? IsometryKind::NegativeOrthochronous
                                   : IsometryKind::NegativeNonOrthochronous;
    return out;
  }

  // Positive, non-identity: rotation or screw motion. The fixed direction of
  // L decides the kind. The kernel direction is obtained from an SVD of
  // L - I rather than by merging eigenvalues near 1: a defective eigenvalue
  // (parabolic case) perturbs computed eigenvalues like eps^(1/3), which
  // would defeat any merge tolerance near machine precision.
  LorentzVec axis = kernel_direction(L - Mat3::Identity());
  const double q = minkowski_norm2(axis);  // axis has Euclidean norm 1
  const double axis_tol = 1e-6;

  if (std::abs(q) <= axis_tol) {
    // Lightlike axis: parabolic. Canonical null frame: n scaled to n3 = 1,
    // e = (n2, -n1, 0) spacelike unit in n-perp, m = (-n1, -n2, 1) the
    // opposite null direction with <n,m> = -2.
    LorentzVec n = axis / axis(2);
    const LorentzVec e(n(1), -n(0), 0.0);
    const LorentzVec m(-n(0), -n(1), 1.0);
    const double t = -minkowski_inner(L * e, m) / 2.0;
    const double lambda = -minkowski_inner(c, n);
    out.angle = t;
    out.lambda = lambda;
    out.kind =
        std::abs(lambda) > tol ? IsometryKind::ParabolicScrew : IsometryKind::ParabolicRotation;
    return out;
  }

  if (q < 0.0) {
    // Timelike axis: elliptic.
    LorentzVec u = axis / std::sqrt(-q);
    if (u(2) < 0.0) u = -u;
    const Mat3 F = elliptic_frame(u);
    const Mat3 Ln = lorentz_inverse(F) * L * F;
    double t = std::atan2(Ln(0, 1), Ln(0, 0));
    if (t <= 0.0) t += 2.0 * M_PI;
    out.angle = t;
    out.lambda = -minkowski_inner(c, u);
    out.kind =
        std::abs(out.lambda) > tol ? IsometryKind::EllipticScrew : IsometryKind::EllipticRotation;
    return out;
  }

  // Spacelike axis: hyperbolic. Canonical sign: largest-magnitude component
  // positive, so literal normal forms (axis e1) are reproduced exactly.
  LorentzVec u = axis / std::sqrt(q);
  int imax = 0;
  u.cwiseAbs().maxCoeff(&imax);
  if (u(imax) < 0.0) u = -u;
  const Mat3 F = hyperbolic_frame(u);
  const Mat3 Ln = lorentz_inverse(F) * L * F;
  const int epsilon = Ln(2, 2) > 0.0 ? 1 : -1;
  const double t = std::asinh(epsilon * Ln(2, 1));
  out.angle = t;
  out.epsilon = epsilon;
  out.lambda = minkowski_inner(c, u);
  out.kind =
      std::abs(out.lambda) > tol ? IsometryKind::HyperbolicScrew : IsometryKind::HyperbolicRotation;
  return out;
}

const char* group_case_name(GroupCaseKind k) {
  switch (k) {
    case GroupCaseKind::Trivial: return "trivial";
    case GroupCaseKind::T: return "T";
    case GroupCaseKind::T1T2: return "T1T2";
    case GroupCaseKind::R0: return "R0";
    case GroupCaseKind::R0T0: return "R0T0";
    case GroupCaseKind::R1: return "R1";
    case GroupCaseKind::R1T1: return "R1T1";
    case GroupCaseKind::R2: return "R2";
    case GroupCaseKind::R2T2: return "R2T2";
    case GroupCaseKind::R0R2: return "R0R2";
  }
  return "?";
}

namespace {

enum class GenType { SpacelikeTranslation, R0Like, R1Like, R2Like };

struct GenInfo {
  GenType type;
  Isometry g;
  LorentzVec dir = LorentzVec::Zero();    // axis (R0), mirror direction (R1/R2)
  LorentzVec glide = LorentzVec::Zero();  // in-plane glide vector (R1/R2), or translation (T)
  double param = 0.0;                     // nu (R0) / delta (R1, R2) / lambda (T)
};

// Minkowski projector onto the span of unit u (<u,u> = +-1).
Mat3 projector(const LorentzVec& u) {
  const double s = minkowski_norm2(u);
  const Mat3 eta = minkowski_metric();
  return u * (eta * u).transpose() / s;
}

GenInfo analyze_generator(const Isometry& g, double tol) {
  if (!g.is_lorentz(tol)) fail(ErrorCode::NotAnIsometry, "group generator is not an isometry");
  const Mat3& L = g.linear;
  const LorentzVec& c = g.translation;
  const double tol_lin = std::max(tol, 1e-9);
  const double tol_aff = std::max(tol, 1e-8) * (1.0 + c.norm());

  GenInfo info;
  info.g = g;

  if ((L - Mat3::Identity()).cwiseAbs().maxCoeff() <= tol_lin) {
    if (c.norm() <= tol_aff) fail(ErrorCode::NotFreeProper, "identity generator");
    const Causal ct = causal_class(c, 1e-9).tag;
    if (ct != Causal::Spacelike)
      fail(ErrorCode::UnsupportedGroup, "translation generator is not spacelike");
    info.type = GenType::SpacelikeTranslation;
    info.glide = c;
    info.param = std::sqrt(minkowski_norm2(c));
    return info;
  }

  if (L.determinant() > 0.0) {
    if (is_orthochronous(g)) {
      const IsometryClass cls = classify_isometry(g, tol);
      if (!cls.is_screw()) fail(ErrorCode::NotFreeProper, "positive orthochronous rotation");
      fail(ErrorCode::UnsupportedGroup, std::string("positive orthochronous screw motion (") +
                                            isometry_kind_name(cls.kind) + ") not in the table");
    }
    // Positive non-orthochronous: must be conjugate to
    // R0(x) = (x1 + nu, -x2, -x3), i.e. L = 2 P_a - I with a spacelike axis.
    LorentzVec a = kernel_direction(L - Mat3::Identity());
    const double q = minkowski_norm2(a);
    if (q <= 1e-6) fail(ErrorCode::UnsupportedGroup, "positive generator without spacelike axis");
    a /= std::sqrt(q);
    if ((L - (2.0 * projector(a) - Mat3::Identity())).cwiseAbs().maxCoeff() > 1e-6)
      fail(ErrorCode::UnsupportedGroup, "positive non-orthochronous generator with nonzero angle");
    double nu = minkowski_inner(c, a);
    if (nu < 0.0) {
      a = -a;
      nu = -nu;
    }
    if (nu <= tol_aff) fail(ErrorCode::NotFreeProper, "R0-type generator with zero axis step");
    info.type = GenType::R0Like;
    info.dir = a;
    info.param = nu;
    return info;
  }

  // Negative isometry: the table only admits glide reflections, so the
  // linear part must be an involution I - 2 P_m.
  LorentzVec m = kernel_direction(L + Mat3::Identity());
  const double q = minkowski_norm2(m);
  if (std::abs(q) <= 1e-6)
    fail(ErrorCode::UnsupportedGroup, "negative generator with lightlike reflection direction");
  m /= std::sqrt(std::abs(q));
  if ((L - (Mat3::Identity() - 2.0 * projector(m))).cwiseAbs().maxCoeff() > 1e-6)
    fail(ErrorCode::UnsupportedGroup, "negative generator is not a glide reflection");
  const Mat3 P = projector(m);
  const LorentzVec glide = c - P * c;

  if (q > 0.0) {
    // Mirror direction spacelike: fixed plane timelike, orthochronous.
    const double g2 = minkowski_norm2(glide);
    if (g2 <= tol_aff * tol_aff) {
      if (glide.norm() <= tol_aff) fail(ErrorCode::NotFreeProper, "reflection with zero glide");
      fail(ErrorCode::UnsupportedGroup, "glide vector of R1-type generator is not spacelike");
    }
    info.type = GenType::R1Like;
    info.dir = m;
    info.glide = glide;
    info.param = std::sqrt(g2);
    return info;
  }

  // Mirror direction timelike: fixed plane spacelike (R2 family); glide is
  // automatically spacelike.
  if (glide.norm() <= tol_aff) fail(ErrorCode::NotFreeProper, "reflection with zero glide");
  LorentzVec mm = m(2) > 0.0 ? m : LorentzVec(-m);
  info.type = GenType::R2Like;
  info.dir = mm;
  info.glide = glide;
  info.param = std::sqrt(minkowski_norm2(glide));
  return info;
}

// Builds the inverse of the affine frame Q = (F, p), i.e. the isometry N
// with N o g o N^-1 in normal form whenever Q^-1 g Q is.
Isometry frame_to_normalizer(const Mat3& F, const LorentzVec& p) {
  Isometry Q{F, p};
  return Q.inverse();
}

Isometry conjugate(const Isometry& N, const Isometry& g) {
  return N.compose(g).compose(N.inverse());
}

// Completes two Minkowski-orthonormal columns to a frame. kind selects the
// signature pattern of the inputs.
LorentzVec complete_timelike(const LorentzVec& s1, const LorentzVec& s2) {
  LorentzVec f = minkowski_cross(s1, s2);
  f /= std::sqrt(-minkowski_norm2(f));
  if (f(2) < 0.0) f = -f;
  return f;
}

LorentzVec complete_spacelike(const LorentzVec& a, const LorentzVec& b) {
  LorentzVec e = minkowski_cross(a, b);
  e /= std::sqrt(minkowski_norm2(e));
  return e;
}

}  // namespace

GroupCase classify_group(const std::vector<Isometry>& generators, double tol) {
  GroupCase out;
  if (generators.empty()) {
    out.kind = GroupCaseKind::Trivial;
    return out;
  }
  if (generators.size() > 2)
    fail(ErrorCode::UnsupportedGroup, "more than two generators");

  std::vector<GenInfo> info;
  info.reserve(generators.size());
  for (const auto& g : generators) info.push_back(analyze_generator(g, tol));

  const double tol_aff = std::max(tol, 1e-8);

  if (info.size() == 1) {
    const GenInfo& gi = info[0];
    switch (gi.type) {
      case GenType::SpacelikeTranslation: {
        out.kind = GroupCaseKind::T;
        out.params.lambda = gi.param;
        LorentzVec w = gi.glide / gi.param;
        LorentzVec e = horizontal_orthogonal(w);
        e /= std::sqrt(minkowski_norm2(e));
        Mat3 F;
        F.col(0) = e;
        F.col(1) = w;
        F.col(2) = complete_timelike(e, w);
        out.normalizing_frame = frame_to_normalizer(F, LorentzVec::Zero());
        break;
      }
      case GenType::R0Like: {
        out.kind = GroupCaseKind::R0;
        out.params.nu = gi.param;
        const LorentzVec& a = gi.dir;
        LorentzVec e = horizontal_orthogonal(a);
        if (e.norm() < 1e-12) e = LorentzVec(1.0, 0.0, 0.0);
        e /= std::sqrt(minkowski_norm2(e));
        Mat3 F;
        F.col(0) = a;
        F.col(1) = e;
        F.col(2) = complete_timelike(a, e);
        const LorentzVec p = (gi.g.translation - gi.g.linear * gi.g.translation) / 4.0;
        out.normalizing_frame = frame_to_normalizer(F, p);
        break;
      }
      case GenType::R1Like: {
        out.kind = GroupCaseKind::R1;
        out.params.delta = gi.param;
        const LorentzVec wg = gi.glide / gi.param;
        Mat3 F;
        F.col(0) = wg;
        F.col(1) = gi.dir;
        F.col(2) = complete_timelike(wg, gi.dir);
        const LorentzVec p = (gi.g.translation - gi.g.linear * gi.g.translation) / 4.0;
        out.normalizing_frame = frame_to_normalizer(F, p);
        break;
      }
      case GenType::R2Like: {
        out.kind = GroupCaseKind::R2;
        out.params.delta = gi.param;
        const LorentzVec wg = gi.glide / gi.param;
        Mat3 F;
        F.col(0) = complete_spacelike(wg, gi.dir);
        F.col(1) = wg;
        F.col(2) = gi.dir;
        if (F.determinant() < 0.0) F.col(0) = -F.col(0);
        const LorentzVec p = (gi.g.translation - gi.g.linear * gi.g.translation) / 4.0;
        out.normalizing_frame = frame_to_normalizer(F, p);
        break;
      }
    }
    out.normalized_generators.push_back(conjugate(out.normalizing_frame, generators[0]));
    return out;
  }

  // Two generators: order them so a reflection/R0 comes first.
  GenInfo g1 = info[0];
  GenInfo g2 = info[1];
  const bool first_is_translation = g1.type == GenType::SpacelikeTranslation;
  if (first_is_translation && g2.type != GenType::SpacelikeTranslation) std::swap(g1, g2);

  if (g1.type == GenType::SpacelikeTranslation && g2.type == GenType::SpacelikeTranslation) {
    const LorentzVec w1 = g1.glide;
    const LorentzVec w2 = g2.glide;
    const double gram = minkowski_norm2(w1) * minkowski_norm2(w2) -
                        minkowski_inner(w1, w2) * minkowski_inner(w1, w2);
    if (gram <= tol_aff)
      fail(ErrorCode::UnsupportedGroup, "translations do not span a spacelike plane");
    out.kind = GroupCaseKind::T1T2;
    out.params.lambda = g1.param;
    out.params.mu = g2.param;
    LorentzVec u1 = w1 / g1.param;
    LorentzVec u2 = w2 - minkowski_inner(w2, u1) * u1;
    u2 /= std::sqrt(minkowski_norm2(u2));
    Mat3 F;
    F.col(0) = u1;
    F.col(1) = u2;
    F.col(2) = complete_timelike(u1, u2);
    out.normalizing_frame = frame_to_normalizer(F, LorentzVec::Zero());
    out.normalized_generators.push_back(conjugate(out.normalizing_frame, g1.g));
    out.normalized_generators.push_back(conjugate(out.normalizing_frame, g2.g));
    return out;
  }

  if (g2.type == GenType::SpacelikeTranslation) {
    LorentzVec w = g2.glide;
    switch (g1.type) {
      case GenType::R0Like: {
        // Reduce the axis component of w by even powers of R0 (R0^2 is the
        // translation 2 nu a), then w must live in the reflected plane.
        const LorentzVec& a = g1.dir;
        const double axial = minkowski_inner(w, a);
        const long k = std::lround(axial / (2.0 * g1.param));
        LorentzVec wr = w - 2.0 * static_cast<double>(k) * g1.param * a;
        if (std::abs(minkowski_inner(wr, a)) > 1e-6 * (1.0 + w.norm()))
          fail(ErrorCode::UnsupportedGroup, "translation not reducible to the R0 eigenplane");
        const double l2 = minkowski_norm2(wr);
        if (l2 <= tol_aff) fail(ErrorCode::UnsupportedGroup, "reduced translation not spacelike");
        out.kind = GroupCaseKind::R0T0;
        out.params.nu = g1.param;
        out.params.lambda = std::sqrt(l2);
        LorentzVec e = wr / out.params.lambda;
        Mat3 F;
        F.col(0) = a;
        F.col(1) = e;
        F.col(2) = complete_timelike(a, e);
        const LorentzVec p = (g1.g.translation - g1.g.linear * g1.g.translation) / 4.0;
        out.normalizing_frame = frame_to_normalizer(F, p);
        out.normalized_generators.push_back(conjugate(out.normalizing_frame, g1.g));
        out.normalized_generators.push_back(
            conjugate(out.normalizing_frame, Isometry::make_translation(wr)));
        return out;
      }
      case GenType::R1Like: {
        // w must be parallel to the mirror direction after reducing its
        // glide-plane component by R1^2 = translation by twice the glide.
        const LorentzVec& m = g1.dir;
        const LorentzVec wg = g1.glide / g1.param;
        const double along_glide = minkowski_inner(w, wg);
        const long k = std::lround(along_glide / (2.0 * g1.param));
        LorentzVec wr = w - 2.0 * static_cast<double>(k) * g1.param * wg;
        const double lambda = minkowski_inner(wr, m);
        if ((wr - lambda * m).norm() > 1e-6 * (1.0 + w.norm()))
          fail(ErrorCode::UnsupportedGroup, "translation not reducible to the R1 mirror line");
        if (std::abs(lambda) <= tol_aff)
          fail(ErrorCode::NotFreeProper, "degenerate R1T1 translation");
        out.kind = GroupCaseKind::R1T1;
        out.params.delta = g1.param;
        out.params.lambda = std::abs(lambda);
        const LorentzVec mm = lambda > 0.0 ? m : LorentzVec(-m);
        Mat3 F;
        F.col(0) = wg;
        F.col(1) = mm;
        F.col(2) = complete_timelike(wg, mm);
        const LorentzVec p = (g1.g.translation - g1.g.linear * g1.g.translation) / 4.0;
        out.normalizing_frame = frame_to_normalizer(F, p);
        out.normalized_generators.push_back(conjugate(out.normalizing_frame, g1.g));
        out.normalized_generators.push_back(
            conjugate(out.normalizing_frame, Isometry::make_translation(wr)));
        return out;
      }
      case GenType::R2Like: {
        const LorentzVec& m = g1.dir;
        if (std::abs(minkowski_inner(w, m)) > 1e-6 * (1.0 + w.norm()))
          fail(ErrorCode::UnsupportedGroup, "R2T2 translation is not horizontal");
        const LorentzVec wg = g1.glide / g1.param;
        LorentzVec e = complete_spacelike(wg, m);
        double lambda = minkowski_inner(w, e);
        if (std::abs(lambda) <= tol_aff)
          fail(ErrorCode::NotFreeProper, "R2T2 translation parallel to the glide");
        if (lambda < 0.0) {
          e = -e;
          lambda = -lambda;
        }
        out.kind = GroupCaseKind::R2T2;
        out.params.delta = g1.param;
        out.params.lambda = lambda;
        out.params.mu = minkowski_inner(w, wg);
        Mat3 F;
        F.col(0) = e;
        F.col(1) = wg;
        F.col(2) = m;
        const LorentzVec p = (g1.g.translation - g1.g.linear * g1.g.translation) / 4.0;
        out.normalizing_frame = frame_to_normalizer(F, p);
        out.normalized_generators.push_back(conjugate(out.normalizing_frame, g1.g));
        out.normalized_generators.push_back(
            conjugate(out.normalizing_frame, Isometry::make_translation(w)));
        return out;
      }
      default: break;
    }
  }

  // R0 + R2 pair (either order).
  if ((g1.type == GenType::R0Like && g2.type == GenType::R2Like) ||
      (g1.type == GenType::R2Like && g2.type == GenType::R0Like)) {
    const GenInfo& r0 = g1.type == GenType::R0Like ? g1 : g2;
    const GenInfo& r2 = g1.type == GenType::R0Like ? g2 : g1;
    const LorentzVec& a = r0.dir;
    const LorentzVec& m = r2.dir;
    if (std::abs(minkowski_inner(a, m)) > 1e-6)
      fail(ErrorCode::UnsupportedGroup, "R0 axis is not horizontal in the R2 mirror plane");
    // Reduce the axis component of the R2 glide by R0^2.
    LorentzVec wg = r2.glide;
    const long k = std::lround(minkowski_inner(wg, a) / (2.0 * r0.param));
    wg -= 2.0 * static_cast<double>(k) * r0.param * a;
    if (std::abs(minkowski_inner(wg, a)) > 1e-6 * (1.0 + r2.glide.norm()))
      fail(ErrorCode::UnsupportedGroup, "R2 glide not reducible orthogonal to the R0 axis");
    const double delta = std::sqrt(minkowski_norm2(wg));
    if (delta <= tol_aff) fail(ErrorCode::NotFreeProper, "degenerate R0R2 pair");
    out.kind = GroupCaseKind::R0R2;
    out.params.nu = r0.param;
    out.params.delta = delta;
    const LorentzVec e = wg / delta;
    Mat3 F;
    F.col(0) = a;
    F.col(1) = e;
    F.col(2) = m;
    const LorentzVec p = (r0.g.translation - r0.g.linear * r0.g.translation) / 4.0;
    out.normalizing_frame = frame_to_normalizer(F, p);
    const Isometry r2_reduced =
        Isometry::make_translation(-2.0 * static_cast<double>(k) * r0.param * a).compose(r2.g);
    const Isometry n0 = conjugate(out.normalizing_frame, r0.g);
    const Isometry n2 = conjugate(out.normalizing_frame, r2_reduced);
    // The same frame must put the R2 generator in normal form; a leftover
    // vertical component cannot be conjugated away consistently.
    if (std::abs(n2.translation(0)) > 1e-6 * (1.0 + r2.g.translation.norm()) ||
        std::abs(n2.translation(2)) > 1e-6 * (1.0 + r2.g.translation.norm()))
      fail(ErrorCode::UnsupportedGroup, "R0/R2 affine parts are not simultaneously normalizable");
    out.normalized_generators.push_back(n0);
    out.normalized_generators.push_back(n2);
    return out;
  }

  fail(ErrorCode::UnsupportedGroup, "generator pair does not match any listed case");
}

}  // namespace maxsurf
