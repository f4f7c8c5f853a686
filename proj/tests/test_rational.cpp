#include <cmath>

#include "doctest.h"
#include "maxsurf/rational.hpp"

using namespace maxsurf;

TEST_SUITE_BEGIN("rational");

TEST_CASE("polynomial basics") {
  const Polynomial p({Complex(1.0), Complex(0.0), Complex(-2.0), Complex(1.0)});  // 1 - 2z^2 + z^3
  CHECK(p.degree() == 3);
  CHECK(p.eval({2.0, 0.0}) == Complex(1.0 - 8.0 + 8.0));
  CHECK(p.derivative().eval({1.0, 0.0}) == Complex(-4.0 + 3.0));
  const Polynomial s = p.taylor_shift({1.0, 0.0});
  // p(t+1) = (t+1)^3 - 2(t+1)^2 + 1 = t^3 + t^2 - t
  CHECK(std::abs(s.coeffs()[0]) < 1e-14);
  CHECK(std::abs(s.coeffs()[1] - Complex(-1.0)) < 1e-14);
  CHECK(std::abs(s.coeffs()[2] - Complex(1.0)) < 1e-14);
  CHECK(std::abs(s.coeffs()[3] - Complex(1.0)) < 1e-14);
  CHECK(p.root_order({0.0, 0.0}) == 0);
  CHECK(Polynomial({Complex(0.0), Complex(0.0), Complex(3.0)}).root_order({0.0, 0.0}) == 2);
}

TEST_CASE("roots via companion matrix") {
  // (z-1)(z+2)(z-3i)
  const Polynomial p = Polynomial::from_roots({{1, 0}, {-2, 0}, {0, 3}});
  const auto roots = p.roots();
  REQUIRE(roots.size() == 3);
  double best = 1e9;
  for (const auto& r : roots) best = std::min(best, std::abs(r - Complex(0, 3)));
  CHECK(best < 1e-12);
}

TEST_CASE("deflation and reduction") {
  const Polynomial p = Polynomial::from_roots({{0.5, 0}, {0.5, 0}, {-1, 0}});
  const Polynomial q = p.deflate({0.5, 0.0});
  CHECK(q.degree() == 2);
  CHECK(std::abs(q.eval({0.5, 0.0})) < 1e-13);
  CHECK(std::abs(q.eval({-1.0, 0.0})) < 1e-13);

  // (z (z^2-1)) / (z (z^2-1/4)) reduces, dropping the common z
  const RationalFn f(Polynomial::from_roots({{0, 0}, {1, 0}, {-1, 0}}),
                     Polynomial::from_roots({{0, 0}, {0.5, 0}, {-0.5, 0}}));
  const RationalFn r = f.reduced();
  CHECK(std::isfinite(std::abs(r.eval({0.0, 0.0}))));
  CHECK(std::abs(r.eval({0.0, 0.0}) - Complex(4.0)) < 1e-12);
}

TEST_CASE("zeros_and_poles inside regions (factored family-1 form)") {
  // f = z / ((z^2-b^2)(b^2 z^2-1)), b = 1/2
  const double b = 0.5;
  const Polynomial num({{0, 0}, {1, 0}});
  const Polynomial den =
      Polynomial({{-b * b, 0}, {0, 0}, {1, 0}}) * Polynomial({{-1, 0}, {0, 0}, {b * b, 0}});
  const RationalFn f(num, den);
  const auto zp = f.zeros_and_poles(Region{0.0, 1.0});
  REQUIRE(zp.zeros.size() == 1);
  CHECK(std::abs(zp.zeros[0].location) < 1e-12);
  CHECK(zp.zeros[0].order == 1);
  REQUIRE(zp.poles.size() == 2);
  for (const auto& p : zp.poles) {
    CHECK(std::abs(std::abs(p.location) - b) < 1e-10);
    CHECK(p.order == 1);
  }
}

TEST_CASE("zeros_and_poles of a constant") {
  const RationalFn one = RationalFn::constant(1.0);
  const auto zp = one.zeros_and_poles(Region{0.0, 10.0});
  CHECK(zp.zeros.empty());
  CHECK(zp.poles.empty());
}

TEST_CASE("family-3 phi3 rational factor has no poles in the unit disk") {
  // denominator (a1^2 z^2 - 1)(a2^2 z^2 - 1), a1=1/2, a2=1/3: poles at +-2, +-3
  const double a1 = 0.5, a2 = 1.0 / 3.0;
  const Polynomial den = Polynomial({{-1, 0}, {0, 0}, {a1 * a1, 0}}) *
                         Polynomial({{-1, 0}, {0, 0}, {a2 * a2, 0}});
  const RationalFn f(Polynomial({{0, 0}, {1, 0}}), den);
  CHECK(f.zeros_and_poles(Region{0.0, 1.0}).poles.empty());
  const auto all = f.zeros_and_poles_all();
  REQUIRE(all.poles.size() == 4);
  for (const auto& p : all.poles) CHECK(std::abs(p.location) > 1.9);
}

TEST_CASE("orders at points and infinity") {
  const RationalFn f(Polynomial({{0, 0}, {0, 0}, {1, 0}}), Polynomial({{-1, 0}, {1, 0}}));
  // z^2/(z-1)
  CHECK(f.order_at({0, 0}) == 2);
  CHECK(f.order_at({1, 0}) == -1);
  CHECK(f.order_at_infinity() == -1);
  const RationalFn g = f.substitute_reciprocal();
  // f(1/u) = u^-2 / (1/u - 1) = 1/(u (1 - u))
  CHECK(g.order_at({0, 0}) == -1);
  CHECK(std::abs(g.eval({0.5, 0.0}) - f.eval({2.0, 0.0})) < 1e-12);
}

TEST_CASE("residues, simple and multiple") {
  // 1/z at 0
  const RationalFn inv_z(Polynomial::constant(1.0), Polynomial({{0, 0}, {1, 0}}));
  CHECK(std::abs(inv_z.residue_at({0, 0}) - Complex(1.0)) < 1e-14);
  // z/((z^2-b^2)(b^2 z^2 - 1)) at b: 1/(2(b^4-1))
  const double b = 0.5;
  const RationalFn f(Polynomial({{0, 0}, {1, 0}}),
                     Polynomial({{-b * b, 0}, {0, 0}, {1, 0}}) *
                         Polynomial({{-1, 0}, {0, 0}, {b * b, 0}}));
  const double expected = 1.0 / (2.0 * (std::pow(b, 4) - 1.0));
  CHECK(std::abs(f.residue_at({b, 0}) - Complex(expected)) < 1e-13);
  CHECK(std::abs(f.residue_at({-b, 0}) - Complex(expected)) < 1e-13);
  // double pole: (z+1)/z^2 has residue 1 at 0
  const RationalFn g(Polynomial({{1, 0}, {1, 0}}), Polynomial({{0, 0}, {0, 0}, {1, 0}}));
  CHECK(std::abs(g.residue_at({0, 0}) - Complex(1.0)) < 1e-13);
  // no pole: residue 0
  CHECK(std::abs(g.residue_at({5, 0})) == 0.0);
}

TEST_SUITE_END();
