#include "maxsurf/families.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace maxsurf {

namespace {

constexpr double kPi = 3.14159265358979323846;

Polynomial poly(std::initializer_list<Complex> cs) { return Polynomial(std::vector<Complex>(cs)); }

// w at z continued from the domain base point along a straight segment.
Complex sheet_at(const DomainSpec& domain, const Complex& z, const Tolerances& tol) {
  if (std::abs(z - domain.base_z) < 1e-14) return domain.base_w;
  const Complex z0 = domain.base_z;
  return continue_sheet(
      domain, [&](double s) { return z0 + s * (z - z0); }, domain.base_w, tol);
}

void attach_boundary_circles(DomainSpec& domain, const Tolerances& tol) {
  if (!domain.hyperelliptic()) {
    domain.boundary_circles = {{0, std::nullopt}};
    return;
  }
  const Complex w1 = sheet_at(domain, {1.0, 0.0}, tol);
  domain.boundary_circles = {{0, w1}, {1, -w1}};
}

}  // namespace

const char* family_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::ScherkType: return "scherk";
    case FamilyKind::RiemannType: return "riemann";
    case FamilyKind::DoublyPeriodic: return "doubly";
  }
  return "?";
}

std::vector<LorentzVec> reduce_lattice(std::vector<LorentzVec> periods, double drop_tol) {
  std::vector<LorentzVec> basis;
  auto reduce_once = [&](LorentzVec v) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& b : basis) {
        const double n = std::round(v.dot(b) / b.squaredNorm());
        if (n != 0.0) {
          v -= n * b;
          changed = true;
        }
      }
    }
    return v;
  };
  std::sort(periods.begin(), periods.end(),
            [](const LorentzVec& x, const LorentzVec& y) { return x.norm() < y.norm(); });
  for (const auto& p : periods) {
    const LorentzVec r = reduce_once(p);
    if (r.norm() > drop_tol) {
      basis.push_back(r);
      std::sort(basis.begin(), basis.end(),
                [](const LorentzVec& x, const LorentzVec& y) { return x.norm() < y.norm(); });
      // keep the basis mutually reduced
      for (size_t j = 1; j < basis.size(); ++j) {
        LorentzVec v = basis[j];
        for (size_t k = 0; k < j; ++k) {
          const double n = std::round(v.dot(basis[k]) / basis[k].squaredNorm());
          v -= n * basis[k];
        }
        basis[j] = v;
      }
      basis.erase(std::remove_if(basis.begin(), basis.end(),
                                 [&](const LorentzVec& v) { return v.norm() <= drop_tol; }),
                  basis.end());
    }
  }
  std::sort(basis.begin(), basis.end(),
            [](const LorentzVec& x, const LorentzVec& y) { return x.norm() < y.norm(); });
  return basis;
}

double lattice_distance(const LorentzVec& v, const std::vector<LorentzVec>& gens, int range) {
  if (gens.empty()) return v.norm();
  double best = INFINITY;
  if (gens.size() == 1) {
    for (int n = -range; n <= range; ++n) best = std::min(best, (v - n * gens[0]).norm());
    return best;
  }
  for (int n1 = -range; n1 <= range; ++n1)
    for (int n2 = -range; n2 <= range; ++n2)
      best = std::min(best, (v - n1 * gens[0] - n2 * gens[1]).norm());
  return best;
}

namespace {

BuiltFamily build_scherk(const FamilySpec& spec, const Tolerances& tol) {
  const double b = spec.b;
  if (!(b > 0.0 && b < 1.0)) fail(ErrorCode::ParamOutOfRange, "scherk family needs b in (0,1)");
  DomainSpec domain;
  domain.kind = DomainKind::PuncturedClosedDisk;
  domain.ends = {{{b, 0.0}, false, 1}, {{-b, 0.0}, false, 1}};
  domain.rank_hint = 1;
  domain.xi0 = 0;
  attach_boundary_circles(domain, tol);

  const Polynomial den = poly({-b * b, 0.0, 1.0}) * poly({-1.0, 0.0, b * b});
  WeierstrassData data(domain, RationalFn::z(), RationalFn(poly({0.0, 1.0}), den), 0, "scherk");

  BuiltFamily out;
  out.spec = spec;
  out.data = std::move(data);
  out.base = SurfacePoint::disk({0.0, 0.0});
  out.closed_form_translations = {LorentzVec(kPi / (2.0 * b * (b * b + 1.0)), 0.0, 0.0)};

  const double radius = 0.5 * std::min({2.0 * b, 1.0 / b - b, 1.0 - b});
  out.lattice_loops = {PathSpec::circle({b, 0.0}, radius)};
  std::vector<LorentzVec> periods;
  for (const auto& loop : out.lattice_loops)
    periods.push_back(period(out.data, loop, tol).real_part);
  out.lattice = reduce_lattice(periods);
  return out;
}

BuiltFamily build_riemann(const FamilySpec& spec, const Tolerances& tol) {
  const double a = spec.a;
  const double b = spec.b;
  if (!(b < a && a < 1.0 && a > 0.0 && b != 0.0 && std::abs(b) < 1.0))
    fail(ErrorCode::ParamOutOfRange, "riemann family needs b<a<1, a>0, b!=0, |b|<1");
  DomainSpec domain;
  domain.kind = DomainKind::HyperellipticDisk;
  domain.curve_rhs = RationalFn(poly({a * b, -(a + b), 1.0}), poly({1.0, -(a + b), a * b}));
  domain.ends = {{{0.0, 0.0}, false, 2}};
  domain.rank_hint = 1;
  domain.xi0 = 0;
  domain.base_z = {0.0, 0.5};
  domain.base_w = std::sqrt(domain.curve_rhs.eval(domain.base_z));
  attach_boundary_circles(domain, tol);

  WeierstrassData data(domain, RationalFn::z(),
                       RationalFn(poly({1.0}), poly({1.0, -(a + b), a * b})), -1, "riemann");

  BuiltFamily out;
  out.spec = spec;
  out.data = std::move(data);
  out.base = SurfacePoint::curve(domain.base_z, domain.base_w);

  const Complex s = std::sqrt(Complex(a * b, 0.0));
  out.closed_form_translations = {
      LorentzVec((Complex(-kPi, 0.0) / s).real(), (Complex(0.0, -kPi) / s).real(), 0.0)};

  const double radius = 0.5 * std::min(std::abs(a), std::abs(b));
  PathSpec loop = PathSpec::circle({0.0, 0.0}, radius);
  loop.base_w = sheet_at(out.data.domain(), {radius, 0.0}, tol);
  out.lattice_loops = {loop};
  std::vector<LorentzVec> periods;
  for (const auto& l : out.lattice_loops) periods.push_back(period(out.data, l, tol).real_part);
  out.lattice = reduce_lattice(periods);
  return out;
}

BuiltFamily build_doubly(const FamilySpec& spec, const Tolerances& tol) {
  const double a1 = spec.a1;
  const double a2 = spec.a2;
  if (!(a1 != 0.0 && a2 != 0.0 && std::abs(a1) < 1.0 && std::abs(a2) < 1.0 &&
        std::abs(std::abs(a1) - std::abs(a2)) > 1e-12))
    fail(ErrorCode::ParamOutOfRange, "doubly family needs nonzero a1, a2 in (-1,1), |a1| != |a2|");
  DomainSpec domain;
  domain.kind = DomainKind::HyperellipticDisk;
  domain.curve_rhs = RationalFn(poly({-a1 * a1, 0.0, 1.0}) * poly({-a2 * a2, 0.0, 1.0}),
                                poly({-1.0, 0.0, a1 * a1}) * poly({-1.0, 0.0, a2 * a2}));
  domain.rank_hint = 2;
  domain.xi0 = 1;
  domain.base_z = {0.0, 0.5};
  domain.base_w = std::sqrt(domain.curve_rhs.eval(domain.base_z));
  attach_boundary_circles(domain, tol);

  WeierstrassData data(domain, RationalFn::z(),
                       RationalFn(poly({0.0, 1.0}),
                                  poly({-1.0, 0.0, a1 * a1}) * poly({-1.0, 0.0, a2 * a2})),
                       -1, "doubly");

  BuiltFamily out;
  out.spec = spec;
  out.data = std::move(data);
  out.base = SurfacePoint::curve(domain.base_z, domain.base_w);

  // Cut loops around adjacent branch-point pairs inside the disk generate
  // enough of the homology to span the lattice.
  const double lo = std::min(std::abs(a1), std::abs(a2));
  const double hi = std::max(std::abs(a1), std::abs(a2));
  const double m1 = 0.35 * std::min(2.0 * lo, hi - lo);
  const double m2 = 0.35 * std::min({hi - lo, 1.0 / hi - hi, 2.0 * lo});
  out.lattice_loops.push_back(cut_loop(out.data, {-lo, 0.0}, {lo, 0.0}, m1, tol));
  out.lattice_loops.push_back(cut_loop(out.data, {lo, 0.0}, {hi, 0.0}, m2, tol));
  out.lattice_loops.push_back(cut_loop(out.data, {-hi, 0.0}, {-lo, 0.0}, m2, tol));
  std::vector<LorentzVec> periods;
  for (const auto& l : out.lattice_loops) periods.push_back(period(out.data, l, tol).real_part);
  out.lattice = reduce_lattice(periods);
  return out;
}

}  // namespace

BuiltFamily build_family(const FamilySpec& spec, const Tolerances& tol) {
  switch (spec.family) {
    case FamilyKind::ScherkType: return build_scherk(spec, tol);
    case FamilyKind::RiemannType: return build_riemann(spec, tol);
    case FamilyKind::DoublyPeriodic: return build_doubly(spec, tol);
  }
  fail(ErrorCode::ParamOutOfRange, "unknown family");
}

std::vector<DomainInvolution> family_involutions(const FamilySpec& spec) {
  std::vector<DomainInvolution> out;
  auto diag = [](double s1, double s2, double s3) {
    Mat3 m = Mat3::Zero();
    m(0, 0) = s1;
    m(1, 1) = s2;
    m(2, 2) = s3;
    return m;
  };
  switch (spec.family) {
    case FamilyKind::ScherkType: {
      DomainInvolution A;
      A.name = "A(z)=-conj(z)";
      A.expected_linear = diag(1, -1, 1);
      A.map = [](const SurfacePoint& p) { return SurfacePoint::disk(-std::conj(p.z)); };
      out.push_back(std::move(A));
      break;
    }
    case FamilyKind::RiemannType: {
      if (std::abs(spec.b + spec.a) > 1e-12) break;  // symmetric sub-case only
      DomainInvolution A0;
      A0.name = "A0(z,w)=(-conj(z),conj(w))";
      A0.expected_linear = diag(-1, 1, -1);
      A0.map = [](const SurfacePoint& p) {
        return SurfacePoint::curve(-std::conj(p.z), std::conj(*p.w));
      };
      DomainInvolution A1;
      A1.name = "A1(z,w)=(conj(z),conj(w))";
      A1.expected_linear = diag(-1, 1, 1);
      A1.map = [](const SurfacePoint& p) {
        return SurfacePoint::curve(std::conj(p.z), std::conj(*p.w));
      };
      DomainInvolution A2;
      A2.name = "A2(z,w)=(-z,w)";
      A2.expected_linear = diag(1, 1, -1);
      A2.map = [](const SurfacePoint& p) { return SurfacePoint::curve(-p.z, *p.w); };
      out.push_back(std::move(A0));
      out.push_back(std::move(A1));
      out.push_back(std::move(A2));
      break;
    }
    case FamilyKind::DoublyPeriodic: {
      DomainInvolution A0;
      A0.name = "A0(z,w)=(conj(z),-conj(w))";
      A0.expected_linear = diag(1, -1, -1);
      A0.map = [](const SurfacePoint& p) {
        return SurfacePoint::curve(std::conj(p.z), -std::conj(*p.w));
      };
      DomainInvolution A1;
      A1.name = "A1(z,w)=(conj(z),conj(w))";
      A1.expected_linear = diag(-1, 1, 1);
      A1.map = [](const SurfacePoint& p) {
        return SurfacePoint::curve(std::conj(p.z), std::conj(*p.w));
      };
      DomainInvolution A2;
      A2.name = "A2(z,w)=(-z,-w)";
      A2.expected_linear = diag(1, 1, -1);
      A2.map = [](const SurfacePoint& p) { return SurfacePoint::curve(-p.z, -*p.w); };
      out.push_back(std::move(A0));
      out.push_back(std::move(A1));
      out.push_back(std::move(A2));
      break;
    }
  }
  return out;
}

SymmetryLift verify_symmetry_lift(const WeierstrassData& data, const SurfacePoint& base,
                                  const DomainInvolution& A, const std::vector<LorentzVec>& lattice,
                                  int samples, double tol, const Tolerances& tols) {
  const LorentzVec c = immerse(data, base, A.map(base), tols);
  Isometry lift;
  lift.linear = A.expected_linear;
  lift.translation = c;

  std::mt19937 rng(20240612);
  std::uniform_real_distribution<double> rad(0.3, 0.8);
  std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
  double worst = 0.0;
  int accepted = 0;
  int guard = 0;
  while (accepted < samples && guard < samples * 40) {
    ++guard;
    const Complex z = std::polar(rad(rng), ang(rng));
    bool clear = true;
    for (const auto& s : data.avoid_points()) {
      if (std::abs(z - s) < 0.05 || std::abs(-std::conj(z) - s) < 0.05 ||
          std::abs(std::conj(z) - s) < 0.05 || std::abs(z + s) < 0.05)
        clear = false;
    }
    if (!clear) continue;
    SurfacePoint p = SurfacePoint::disk(z);
    if (data.domain().hyperelliptic()) {
      const Complex r = std::sqrt(data.domain().curve_rhs.eval(z));
      p = SurfacePoint::curve(z, (accepted % 2 == 0) ? r : -r);
    }
    const SurfacePoint q = A.map(p);
    const LorentzVec left = immerse(data, base, q, tols);
    const LorentzVec right = lift.apply(immerse(data, base, p, tols));
    const double dev = lattice_distance(left - right, lattice);
    worst = std::max(worst, dev);
    ++accepted;
  }
  if (accepted < samples)
    fail(ErrorCode::SymmetryFailed, "could not place enough clear sample points");
  if (worst > tol) {
    std::ostringstream msg;
    msg << "symmetry identity fails, max deviation " << worst;
    fail(ErrorCode::SymmetryFailed, msg.str());
  }
  return {lift, worst};
}

}  // namespace maxsurf
