#include <chrono>
#include <cmath>
#include <map>

#include "doctest.h"
#include "maxsurf/families.hpp"
#include "maxsurf/integrate.hpp"
#include "oracles.hpp"

using namespace maxsurf;

namespace {

BuiltFamily& scherk(double b = 0.5) {
  static std::map<double, BuiltFamily> cache;
  auto it = cache.find(b);
  if (it == cache.end()) {
    FamilySpec s;
    s.family = FamilyKind::ScherkType;
    s.b = b;
    it = cache.emplace(b, build_family(s)).first;
  }
  return it->second;
}

BuiltFamily& riemann_sym() {
  static BuiltFamily f = [] {
    FamilySpec s;
    s.family = FamilyKind::RiemannType;
    s.a = 0.5;
    s.b = -0.5;
    return build_family(s);
  }();
  return f;
}

}  // namespace

TEST_SUITE_BEGIN("integrate");

TEST_CASE("empty path integrates to zero") {
  const IntegralResult r = integrate_path(scherk().data, PathSpec{});
  for (int k = 0; k < 3; ++k) CHECK(std::abs(r.value[static_cast<size_t>(k)]) == 0.0);
}

TEST_CASE("path followed by its reversal cancels") {
  PathSpec p;
  p.append(Segment::line({0.0, 0.0}, {0.2, 0.6}));
  p.append(Segment::line({0.2, 0.6}, {0.0, 0.0}));
  const IntegralResult r = integrate_path(scherk().data, p);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(r.value[static_cast<size_t>(k)]) < 2e-10);
}

TEST_CASE("poles on the requested path are a hard error") {
  PathSpec p;
  p.append(Segment::line({0.0, 0.0}, {0.9, 0.0}));  // passes through z = 0.5
  CHECK_THROWS_WITH_AS((void)integrate_path(scherk().data, p), doctest::Contains("PoleOnPath"),
                       Error);
}

TEST_CASE("family-1 translation period matches the closed form") {
  for (double b : {0.25, 0.5, 0.75}) {
    const BuiltFamily& f = scherk(b);
    const auto t0 = std::chrono::steady_clock::now();
    const PeriodResult pr = period(f.data, f.lattice_loops[0]);
    const auto dt = std::chrono::steady_clock::now() - t0;
    CHECK(std::chrono::duration_cast<std::chrono::milliseconds>(dt).count() < 1000);
    const LorentzVec expected(M_PI / (2.0 * b * (b * b + 1.0)), 0.0, 0.0);
    CHECK((pr.real_part - expected).norm() < 1e-8);
  }
}

TEST_CASE("residue circle vs analytic residue (family 1, both poles)") {
  const BuiltFamily& f = scherk();
  const Tolerances tol;
  for (double p : {0.5, -0.5}) {
    const auto num = residue_numeric(f.data, SurfacePoint::disk({p, 0.0}), 0.12, tol);
    for (int k = 0; k < 3; ++k) {
      const Complex ana = f.data.coeff(k).residue_at({p, 0.0});
      CHECK(std::abs(num[static_cast<size_t>(k)] - ana) < 1e-9);
    }
  }
}

TEST_CASE("residue of a synthetic dz/z form") {
  DomainSpec d;
  d.kind = DomainKind::PuncturedClosedDisk;
  d.boundary_circles = {{0, std::nullopt}};
  d.ends = {{{0.0, 0.0}, false, 1}};
  // g = 1/2 constant so only phi3 = dz/z matters for the third component
  const WeierstrassData data(d, RationalFn::constant({0.5, 0.0}),
                             RationalFn(Polynomial::constant(1.0), Polynomial({{0, 0}, {1, 0}})),
                             0);
  const auto res = residue_numeric(data, SurfacePoint::disk({0.0, 0.0}), 0.3);
  CHECK(std::abs(res[2] - Complex(1.0)) < 1e-10);
}

TEST_CASE("enclosure violations are detected") {
  const BuiltFamily& f = scherk();
  CHECK_THROWS_WITH_AS((void)residue_numeric(f.data, SurfacePoint::disk({0.5, 0.0}), 1.2),
                       doctest::Contains("EnclosureViolation"), Error);
}

TEST_CASE("boundary circle has vanishing real period (family 1)") {
  const PeriodResult pr = period(scherk().data, boundary_circle_loop(scherk().data, 0));
  CHECK(pr.real_part.norm() < 1e-8);
}

TEST_CASE("boundary circles have vanishing real periods (family 2, both lifts)") {
  const BuiltFamily& f = riemann_sym();
  for (int id : {0, 1}) {
    const PeriodResult pr = period(f.data, boundary_circle_loop(f.data, id));
    CHECK(pr.real_part.norm() < 1e-8);
  }
}

TEST_CASE("family-2 translation: residue route vs closed form up to branch") {
  const BuiltFamily& f = riemann_sym();
  REQUIRE(f.lattice.size() == 1);
  const LorentzVec got = f.lattice[0];
  const LorentzVec want = f.closed_form_translations[0];
  const double match = std::min((got - want).norm(), (got + want).norm());
  CHECK(match < 1e-8);
  // residue at the end over z=0 gives the same vector
  const Complex w0 = sheet_values(f.data.domain(), {0.0, 0.0})[0];
  const auto res = residue_numeric(f.data, SurfacePoint::curve({0.0, 0.0}, w0), 0.2);
  const Complex tpi(0.0, 2.0 * M_PI);
  const LorentzVec v((tpi * res[0]).real(), (tpi * res[1]).real(), (tpi * res[2]).real());
  CHECK(std::min((v - want).norm(), (v + want).norm()) < 1e-9);
  // third component vanishes
  CHECK(std::abs(v(2)) < 1e-10);
}

TEST_CASE("homotopic loops agree and the lattice closes") {
  const BuiltFamily& f = scherk();
  const PeriodResult p1 = period(f.data, PathSpec::circle({0.5, 0.0}, 0.1));
  const PeriodResult p2 = period(f.data, PathSpec::circle({0.5, 0.0}, 0.22));
  for (int k = 0; k < 3; ++k)
    CHECK(std::abs(p1.value[static_cast<size_t>(k)] - p2.value[static_cast<size_t>(k)]) < 2e-10);
  // a loop winding twice is twice the period
  PathSpec twice;
  twice.append(Segment::arc({0.5, 0.0}, 0.1, 0.0, 4.0 * M_PI));
  const PeriodResult pd = period(f.data, twice);
  CHECK((pd.real_part - 2.0 * p1.real_part).norm() < 1e-9);
}

TEST_CASE("additivity over concatenated paths") {
  const BuiltFamily& f = scherk();
  PathSpec whole = PathSpec::line({-0.2, -0.4}, {0.3, 0.55});
  PathSpec part1 = PathSpec::line({-0.2, -0.4}, {0.1, 0.1});
  PathSpec part2 = PathSpec::line({0.1, 0.1}, {0.3, 0.55});
  const auto rw = integrate_path(f.data, whole);
  const auto r1 = integrate_path(f.data, part1);
  const auto r2 = integrate_path(f.data, part2);
  for (int k = 0; k < 3; ++k) {
    const auto ks = static_cast<size_t>(k);
    CHECK(std::abs(rw.value[ks] - r1.value[ks] - r2.value[ks]) < 1e-10);
  }
}

TEST_CASE("residue theorem: interior residues vs boundary integral") {
  // family 1: poles at +-b inside the disk; (1/2pi i) * boundary integral
  const BuiltFamily& f = scherk();
  const auto rb = integrate_path(f.data, boundary_circle_loop(f.data, 0));
  const auto res_p = residue_numeric(f.data, SurfacePoint::disk({0.5, 0.0}), 0.12);
  const auto res_m = residue_numeric(f.data, SurfacePoint::disk({-0.5, 0.0}), 0.12);
  const Complex tpi(0.0, 2.0 * M_PI);
  for (int k = 0; k < 3; ++k) {
    const auto ks = static_cast<size_t>(k);
    CHECK(std::abs(rb.value[ks] / tpi - (res_p[ks] + res_m[ks])) < 1e-9);
  }
  // family 2: both lifted circles vs both end sheets
  const BuiltFamily& f2 = riemann_sym();
  const auto c0 = integrate_path(f2.data, boundary_circle_loop(f2.data, 0));
  const auto c1 = integrate_path(f2.data, boundary_circle_loop(f2.data, 1));
  const Complex w0 = sheet_values(f2.data.domain(), {0.0, 0.0})[0];
  const auto e0 = residue_numeric(f2.data, SurfacePoint::curve({0.0, 0.0}, w0), 0.2);
  const auto e1 = residue_numeric(f2.data, SurfacePoint::curve({0.0, 0.0}, -w0), 0.2);
  for (int k = 0; k < 3; ++k) {
    const auto ks = static_cast<size_t>(k);
    CHECK(std::abs((c0.value[ks] + c1.value[ks]) / tpi - (e0[ks] + e1[ks])) < 1e-9);
  }
}

TEST_CASE("trapezoid oracle confirms the quadrature on a residue circle") {
  const BuiltFamily& f = scherk();
  const auto lib = integrate_path(f.data, PathSpec::circle({0.5, 0.0}, 0.15));
  for (int k = 0; k < 3; ++k) {
    const Complex orc = oracles::trapezoid_circle(
        [&](Complex z) { return f.data.coeff(k).eval(z); }, {0.5, 0.0}, 0.15);
    CHECK(std::abs(lib.value[static_cast<size_t>(k)] - orc) < 1e-10);
  }
}

TEST_CASE("immerse basics") {
  const BuiltFamily& f = scherk();
  const Tolerances tol;
  CHECK(immerse(f.data, f.base, f.base, tol).norm() == 0.0);
  // two homotopic routes agree
  const SurfacePoint target = SurfacePoint::disk({0.3, 0.4});
  const LorentzVec direct = immerse(f.data, f.base, target, tol);
  PathSpec dogleg;
  dogleg.append(Segment::line({0.0, 0.0}, {0.0, 0.45}));
  dogleg.append(Segment::line({0.0, 0.45}, {0.3, 0.4}));
  const LorentzVec indirect = integrate_path(f.data, dogleg, tol).real_part();
  CHECK((direct - indirect).norm() < 2e-10);
  // routes differing by a loop around z=b differ by the lattice vector
  PathSpec with_loop = dogleg;
  with_loop.append(Segment::arc({0.3, 0.4}, 0.05, M_PI / 2.0, M_PI / 2.0 + 2.0 * M_PI));
  // loop of radius 0.05 around (0.3,0.4) encloses nothing; use one around b
  PathSpec around_b;
  around_b.append(Segment::line({0.0, 0.0}, {0.5, -0.3}));
  around_b.append(Segment::arc({0.5, 0.0}, 0.3, -M_PI / 2.0, -M_PI / 2.0 + 2.0 * M_PI));
  around_b.append(Segment::line({0.5, -0.3}, {0.3, 0.4}));
  const LorentzVec looped = integrate_path(f.data, around_b, tol).real_part();
  const LorentzVec diff = looped - direct;
  CHECK((diff - f.lattice[0]).norm() < 1e-8);
}

TEST_CASE("immerse routes straight through a pole deterministically") {
  const BuiltFamily& f = scherk();
  // target collinear with the pole at z=0.5: router must detour
  const LorentzVec x = immerse(f.data, f.base, SurfacePoint::disk({0.8, 0.0}));
  CHECK(std::isfinite(x(0)));
  CHECK(std::isfinite(x(1)));
  CHECK(std::isfinite(x(2)));
  const LorentzVec again = immerse(f.data, f.base, SurfacePoint::disk({0.8, 0.0}));
  CHECK((x - again).norm() == 0.0);
}

TEST_CASE("immerse reaches the requested sheet") {
  const BuiltFamily& f = riemann_sym();
  const Complex z(0.3, 0.2);
  const Complex w = sheet_values(f.data.domain(), z)[0];
  const LorentzVec x_plus = immerse(f.data, f.base, SurfacePoint::curve(z, w));
  const LorentzVec x_minus = immerse(f.data, f.base, SurfacePoint::curve(z, -w));
  CHECK((x_plus - x_minus).norm() > 1e-3);  // genuinely different points
}

TEST_CASE("metric factor identities") {
  const BuiltFamily& f = scherk();
  // The conformal factor of Re-integral of Phi is half the naive coefficient
  // sum: <X_u, X_u> = (|phi1|^2 + |phi2|^2 - |phi3|^2) / 2, which is the
  // closed form ((|phi3|/2)(1/|g| - |g|))^2.
  for (const Complex z : {Complex(0.3, 0.1), Complex(-0.2, 0.6), Complex(0.1, -0.7)}) {
    const SurfacePoint p = SurfacePoint::disk(z);
    const auto phi = f.data.eval_phi(p);
    const double direct =
        0.5 * (std::norm(phi[0]) + std::norm(phi[1]) - std::norm(phi[2]));
    CHECK(std::abs(metric_factor(f.data, p) - direct) < 1e-10 * (1.0 + std::abs(direct)));
  }
  // |g| = 1 makes it vanish
  DomainSpec d;
  d.kind = DomainKind::PuncturedClosedDisk;
  d.boundary_circles = {{0, std::nullopt}};
  const WeierstrassData unit_g(d, RationalFn::constant({1.0, 0.0}),
                               RationalFn::constant({2.0, 0.0}), 0);
  CHECK(metric_factor(unit_g, SurfacePoint::disk({0.3, 0.0})) == 0.0);
}

TEST_CASE("metric factor decays monotonically toward the singular circle") {
  const BuiltFamily& f = scherk();
  double prev = INFINITY;
  for (int i = 0; i < 30; ++i) {
    const double r = 0.70 + 0.29 * i / 29.0;
    const double m = metric_factor(f.data, SurfacePoint::disk(std::polar(r, M_PI / 7.0)));
    CHECK(m < prev);
    prev = m;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("period rejects open loops") {
  CHECK_THROWS_WITH_AS((void)period(scherk().data, PathSpec::line({0, 0}, {0.1, 0.1})),
                       doctest::Contains("NotClosed"), Error);
}

TEST_SUITE_END();
