#include <cmath>
#include <random>

#include "doctest.h"
#include "maxsurf/domain.hpp"
#include "maxsurf/families.hpp"
#include "oracles.hpp"

using namespace maxsurf;

namespace {

BuiltFamily& scherk_half() {
  static BuiltFamily f = build_family({FamilyKind::ScherkType, 0.5});
  return f;
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

BuiltFamily& doubly_std() {
  static BuiltFamily f = [] {
    FamilySpec s;
    s.family = FamilyKind::DoublyPeriodic;
    s.a1 = 0.5;
    s.a2 = 1.0 / 3.0;
    return build_family(s);
  }();
  return f;
}

}  // namespace

TEST_SUITE_BEGIN("domain");

TEST_CASE("eval_phi by direct substitution (family 1, b=1/4)") {
  FamilySpec s;
  s.family = FamilyKind::ScherkType;
  s.b = 0.25;
  const BuiltFamily f = build_family(s);
  const auto phi = f.data.eval_phi(SurfacePoint::disk({0.5, 0.0}));
  const double expected = 0.5 / ((0.25 - 1.0 / 16.0) * (1.0 / 64.0 - 1.0));
  CHECK(std::abs(phi[2] - Complex(expected)) < 1e-13);
  // phi1 = (i/2)(1/g - g) phi3
  const Complex g(0.5, 0.0);
  const Complex want1 = Complex(0, 0.5) * (1.0 / g - g) * Complex(expected);
  CHECK(std::abs(phi[0] - want1) < 1e-13);
}

TEST_CASE("eval_phi pole proximity raises PoleHit") {
  const BuiltFamily& f = scherk_half();
  CHECK_THROWS_WITH_AS((void)f.data.eval_phi(SurfacePoint::disk({0.5, 1e-9})),
                       doctest::Contains("PoleHit"), Error);
  // zeros of g with nonzero phi3 blow up phi1/phi2: synthetic g=z, phi3=dz
  DomainSpec d;
  d.kind = DomainKind::PuncturedClosedDisk;
  d.boundary_circles = {{0, std::nullopt}};
  const WeierstrassData bad(d, RationalFn::z(), RationalFn::constant(1.0), 0);
  CHECK_THROWS_WITH_AS((void)bad.eval_phi(SurfacePoint::disk({0.0, 0.0})),
                       doctest::Contains("PoleHit"), Error);
}

TEST_CASE("eval_phi rejects off-curve points") {
  const BuiltFamily& f = riemann_sym();
  CHECK_THROWS_WITH_AS((void)f.data.eval_phi(SurfacePoint::curve({0.4, 0.1}, {5.0, 5.0})),
                       doctest::Contains("OffCurve"), Error);
}

TEST_CASE("mirror involution") {
  const DomainSpec disk;
  const SurfacePoint p = mirror(disk, SurfacePoint::disk({0.5, 0.0}));
  CHECK(std::abs(p.z - Complex(2.0, 0.0)) < 1e-15);
  const SurfacePoint back = mirror(disk, p);
  CHECK(std::abs(back.z - Complex(0.5, 0.0)) < 1e-15);
  // boundary circle is fixed pointwise
  const SurfacePoint q = mirror(disk, SurfacePoint::disk(std::polar(1.0, 0.7)));
  CHECK(std::abs(q.z - std::polar(1.0, 0.7)) < 1e-15);
  // 0 <-> infinity
  CHECK(mirror(disk, SurfacePoint::disk({0.0, 0.0})).at_infinity);
}

TEST_CASE("mirror stays on the curve (family 2)") {
  const BuiltFamily& f = riemann_sym();
  const Complex z(0.5, 0.25);
  const Complex w = sheet_values(f.data.domain(), z)[0];
  REQUIRE(on_curve(f.data.domain(), z, w));
  const SurfacePoint m = mirror(f.data.domain(), SurfacePoint::curve(z, w));
  CHECK(on_curve(f.data.domain(), m.z, *m.w, 1e-9));
  const SurfacePoint back = mirror(f.data.domain(), m);
  CHECK(std::abs(back.z - z) < 1e-12);
  CHECK(std::abs(*back.w - w) < 1e-12);
}

TEST_CASE("g o J = 1/conj(g) at random samples") {
  const BuiltFamily& f = riemann_sym();
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> rad(0.2, 0.9);
  std::uniform_real_distribution<double> ang(0.0, 2 * M_PI);
  for (int i = 0; i < 200; ++i) {
    const Complex z = std::polar(rad(rng), ang(rng));
    const Complex w = sheet_values(f.data.domain(), z)[i % 2];
    const SurfacePoint m = mirror(f.data.domain(), SurfacePoint::curve(z, w));
    const Complex gz = f.data.g().eval(z);
    const Complex gm = f.data.g().eval(m.z);
    CHECK(std::abs(gm - 1.0 / std::conj(gz)) < 1e-10 * std::abs(gm));
  }
}

TEST_CASE("|g| < 1 inside, |g| = 1 on the boundary circles") {
  for (const BuiltFamily* f : {&scherk_half(), &riemann_sym(), &doubly_std()}) {
    for (int i = 0; i < 64; ++i) {
      const Complex z = std::polar(0.05 + 0.90 * (i / 64.0), 0.1 + i);
      CHECK(std::abs(f->data.g().eval(z)) < 1.0);
      const Complex zc = std::polar(1.0, 2.0 * M_PI * i / 64.0);
      CHECK(std::abs(std::abs(f->data.g().eval(zc)) - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("continue_sheet basics") {
  const DomainSpec& dom = riemann_sym().data.domain();
  const Complex z0(0.0, 0.5);
  const Complex w0 = dom.base_w;
  // constant path
  const Complex wc = continue_sheet(dom, [&](double) { return z0; }, w0);
  CHECK(std::abs(wc - w0) < 1e-14);
  // small loop through z0 around no branch point: back to the same sheet
  const Complex wn = continue_sheet(
      dom, [&](double s) { return z0 + 0.1 * (std::polar(1.0, 2 * M_PI * s) - 1.0); }, w0);
  CHECK(std::abs(wn - w0) < 1e-10);
  // loop around exactly one branch point (z = a = 1/2): sheet flips
  auto one_branch = [&](double s) { return Complex(0.5, 0.0) + 0.15 * std::polar(1.0, 2 * M_PI * s); };
  const Complex ws = continue_sheet(dom, one_branch, [&] {
    // start value on the loop, continued from base first
    const Complex zs = one_branch(0.0);
    return continue_sheet(dom, [&](double s) { return z0 + s * (zs - z0); }, w0);
  }());
  const Complex w_start = continue_sheet(
      dom, [&](double s) { return z0 + s * (one_branch(0.0) - z0); }, w0);
  CHECK(std::abs(ws + w_start) < 1e-8 * std::abs(w_start));
  // brute-force fixed-step oracle agrees
  const Complex wb = oracles::brute_force_sheet(dom.curve_rhs, one_branch, w_start);
  CHECK(std::abs(ws - wb) < 1e-8);
}

TEST_CASE("continue_sheet error paths") {
  const DomainSpec& dom = riemann_sym().data.domain();
  // path through a branch point
  CHECK_THROWS_WITH_AS(
      (void)continue_sheet(dom, [](double s) { return Complex(0.4 + 0.2 * s, 0.0); },
                           sheet_values(dom, {0.4, 0.0})[0]),
      doctest::Contains("BranchTooClose"), Error);
  // off-curve start
  CHECK_THROWS_WITH_AS(
      (void)continue_sheet(dom, [](double) { return Complex(0.0, 0.5); }, {100.0, 0.0}),
      doctest::Contains("OffCurve"), Error);
}

TEST_CASE("sheet monodromy is a sign") {
  const DomainSpec& dom = doubly_std().data.domain();
  // loop around both a1 and a2: trivial monodromy
  auto loop = [&](double s) { return Complex(5.0 / 12.0, 0.0) + 0.2 * std::polar(1.0, 2 * M_PI * s); };
  const Complex w0 = continue_sheet(
      dom, [&](double s) { return dom.base_z + s * (loop(0.0) - dom.base_z); }, dom.base_w);
  const Complex w1 = continue_sheet(dom, loop, w0);
  const double plus = std::abs(w1 / w0 - 1.0);
  const double minus = std::abs(w1 / w0 + 1.0);
  CHECK(std::min(plus, minus) < 1e-8);
  CHECK(plus < 1e-8);  // two enclosed branch points
}

TEST_CASE("phi orders at ends and infinity (family structure)") {
  // family 1: simple poles at +-b
  const BuiltFamily& f1 = scherk_half();
  CHECK(f1.data.phi_orders_at({0.5, 0.0}).min() == -1);
  CHECK(f1.data.phi_orders_at({-0.5, 0.0}).min() == -1);
  // z = 0 is regular for Phi even though g vanishes there
  CHECK(f1.data.phi_orders_at({0.0, 0.0}).min() == 0);
  // family 2 ends over z = 0: simple poles, omega has a simple pole too
  const BuiltFamily& f2 = riemann_sym();
  CHECK(f2.data.phi_orders_at({0.0, 0.0}).min() == -1);
  CHECK(f2.data.omega_order_at({0.0, 0.0}) == -1);
  // family 3: holomorphic at branch points, z=0, and infinity
  const BuiltFamily& f3 = doubly_std();
  CHECK(f3.data.phi_orders_at({0.5, 0.0}).min() >= 0);
  CHECK(f3.data.phi_orders_at({0.0, 0.0}).min() >= 0);
  CHECK(f3.data.phi_orders_at_infinity().min() >= 0);
}

TEST_CASE("J-pullback identity by central finite differences") {
  // J*(phi_k) = -conj(phi_k): f(J(z)) dJ(h) = -conj(f(z) h) for tangents h
  for (const BuiltFamily* fam : {&scherk_half(), &riemann_sym()}) {
    const WeierstrassData& data = fam->data;
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> rad(0.90, 0.96);
    std::uniform_real_distribution<double> ang(0.0, 2 * M_PI);
    const double eps = 1e-6;
    for (int i = 0; i < 25; ++i) {
      const Complex z = std::polar(rad(rng), ang(rng));
      SurfacePoint p = SurfacePoint::disk(z);
      if (data.domain().hyperelliptic())
        p = SurfacePoint::curve(z, sheet_values(data.domain(), z)[i % 2]);
      const SurfacePoint jp = mirror(data.domain(), p);
      const auto phi_p = data.eval_phi(p);
      const auto phi_jp = data.eval_phi(jp);
      const Complex h = std::polar(eps, ang(rng));
      // central difference of J's z-action along h
      const Complex dJ = (1.0 / std::conj(z + h) - 1.0 / std::conj(z - h)) / 2.0;
      for (int k = 0; k < 3; ++k) {
        const Complex lhs = phi_jp[static_cast<size_t>(k)] * dJ;
        const Complex rhs = -std::conj(phi_p[static_cast<size_t>(k)] * h);
        CHECK(std::abs(lhs - rhs) <= 1e-8 * (1.0 + std::abs(rhs) / eps) * eps);
      }
    }
  }
}

TEST_CASE("family parameter validation") {
  FamilySpec bad;
  bad.family = FamilyKind::ScherkType;
  bad.b = 1.5;
  CHECK_THROWS_WITH_AS((void)build_family(bad), doctest::Contains("ParamOutOfRange"), Error);
  FamilySpec bad2;
  bad2.family = FamilyKind::DoublyPeriodic;
  bad2.a1 = 0.5;
  bad2.a2 = -0.5;  // |a1| == |a2| degenerates the curve
  CHECK_THROWS_AS((void)build_family(bad2), Error);
}

TEST_SUITE_END();
