#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "curvelab/curve.hpp"

using namespace curvelab;

namespace {

FPoly xyz(const FiniteField& K, const std::string& s) { return FPoly::parse(K, s, std::vector<std::string>{"x", "y", "z"}); }

std::string pw(std::uint32_t e) { return std::to_string(e); }

}  // namespace

TEST_CASE("presets record q, g and r") {
  auto c = c_q2(2);
  CHECK(c.q == 4);
  CHECK(c.g.to_string("u") == "u^3");
  CHECK(c.r == 2);
  auto c1 = c_q2(1);
  CHECK(c1.q == 2);
  CHECK(c1.g.to_string("u") == "u^2");
  CHECK(c1.r == 2);
  auto c8 = c_q(3);
  CHECK(c8.q == 8);
  CHECK(c8.g.to_string("u") == "u^3");
  CHECK(c8.r == -2);
  CHECK_THROWS_AS(c_q(1), curve_error);
  CHECK_THROWS_AS(make_param_curve(2, 1, FUPoly(FiniteField(2))), curve_error);
  CHECK_THROWS_AS(make_param_curve(4, 1, FUPoly::x(FiniteField(2))), curve_error);
}

TEST_CASE("implicitization of the C_{2^n,2} and C_{2^n} families") {
  FiniteField F2(2);
  for (std::uint32_t n = 1; n <= 4; ++n) {
    const std::uint32_t q = 1u << n;
    auto C = implicitize(c_q2(n));
    CHECK(C.degree == q + 2);
    CHECK(C.F == xyz(F2, "y^" + pw(q) + "*z^2+x^" + pw(q + 2) + "+x*z^" + pw(q + 1)));
    CHECK(C.resultant_exponent == 1);
  }
  for (std::uint32_t n = 2; n <= 4; ++n) {
    const std::uint32_t q = 1u << n;
    auto C = implicitize(c_q(n));
    CHECK(C.degree == q);
    // Chart x = 1 reads y^q = z^2 + z^(q-1).
    CHECK(C.F.dehomogenize("x") ==
          FPoly::parse(F2, "y^" + pw(q) + "+z^2+z^" + pw(q - 1), std::vector<std::string>{"y", "z"}));
  }
  auto C6 = implicitize(c_q2(2));
  CHECK(C6.F.to_string() == "x^6+x*z^5+y^4*z^2");
}

TEST_CASE("implicit equation vanishes on the parametrization") {
  std::mt19937 rng(23);
  for (auto [p, n, g] : std::vector<std::tuple<std::uint32_t, std::uint32_t, std::vector<std::uint32_t>>>{
           {2, 2, {0, 0, 0, 1}}, {2, 3, {1, 1, 0, 1}}, {3, 1, {0, 2, 1}}, {3, 2, {1, 0, 0, 0, 1}}}) {
    FiniteField Fp(p);
    auto c = make_param_curve(p, n, FUPoly(Fp, g));
    auto C = implicitize(c);
    FiniteField big(p, 6);
    auto map = Fp.embedding_into(big);
    auto Fb = C.F.map_coefficients(big, [&](std::uint32_t v) { return map[v]; });
    std::uniform_int_distribution<std::uint32_t> pick(0, big.order() - 1);
    for (int i = 0; i < 50; ++i) {
      auto [x, y] = param_point(c, big, pick(rng));
      CHECK(big.is_zero(Fb.eval({x, y, 1})));
    }
  }
}

TEST_CASE("unique singular point of C_{2^n,2} and C_{2^n}") {
  for (std::uint32_t n = 1; n <= 3; ++n) {
    auto C = implicitize(c_q2(n));
    auto rep = singular_points(C);
    REQUIRE(rep.points.size() == 1);
    CHECK(rep.points[0].to_string() == "(0:1:0)");
    CHECK(rep.points[0].multiplicity == 2);
    CHECK(rep.certificate.valid);
  }
  auto C8 = implicitize(c_q(3));
  auto rep = singular_points(C8);
  REQUIRE(rep.points.size() == 1);
  CHECK(rep.points[0].to_string() == "(1:0:0)");
  CHECK(rep.points[0].multiplicity == 2);
  CHECK(rep.certificate.valid);
}

TEST_CASE("smooth curves and certificates") {
  FiniteField F3(3), F2(2);
  auto conic = make_proj_curve(xyz(F3, "x^2+y*z"));
  auto rep = singular_points(conic);
  CHECK(rep.points.empty());
  CHECK(rep.certificate.valid);

  auto cubic = make_proj_curve(xyz(F2, "x^3+y^3+z^3"));
  CHECK(singular_points(cubic).points.empty());
  CHECK(genus_check(3, {}).geometric_genus == 1);

  // A node at a point defined over F_4 only: the orbit has two conjugates.
  auto C = make_proj_curve(xyz(F2, "x^2+x*y+y^2"));  // two lines through (0:0:1) over F_4
  auto r2 = singular_points(C);
  REQUIRE(r2.points.size() == 1);
  CHECK(r2.points[0].to_string() == "(0:0:1)");
  CHECK(r2.points[0].multiplicity == 2);

  auto D = make_proj_curve(xyz(F2, "x^3+y^2*z+x*z^2+z^3"));
  auto r3 = singular_points(D);
  for (const auto& P : r3.points) {
    CHECK(P.orbit.size() * P.field.degree() % F2.degree() == 0);
  }
}

TEST_CASE("points in an extension field carry their orbit") {
  FiniteField F2(2);
  // x (y^2 + yz + z^2): the line x = 0 meets the conjugate lines y = w z, y = w^2 z
  // in a conjugate pair over F_4; those two lines meet at (1:0:0).
  auto C = make_proj_curve(xyz(F2, "x*y^2+x*y*z+x*z^2"));
  auto rep = singular_points(C);
  REQUIRE(rep.points.size() == 3);
  int extension_points = 0;
  for (const auto& P : rep.points) {
    CHECK(P.multiplicity == 2);
    if (P.field.degree() == 2) {
      ++extension_points;
      CHECK(P.orbit.size() == 2);
      CHECK(P.coords[0] == 0);
    } else {
      CHECK(P.to_string() == "(1:0:0)");
      CHECK(P.orbit.size() == 1);
    }
    for (const auto& Q : P.orbit) {
      bool listed = false;
      for (const auto& R : rep.points) listed = listed || R.coords == Q;
      CHECK(listed);
    }
  }
  CHECK(extension_points == 2);
  CHECK(rep.certificate.search_degree == 2);
}

TEST_CASE("multiplicity at the point at infinity equals r") {
  FiniteField F2(2);
  auto c = make_param_curve(2, 1, FUPoly::monomial(F2, 1, 3));  // q = 2, g = u^3, r = 4
  CHECK(c.r == 4);
  auto C = implicitize(c);
  CHECK(multiplicity_at(C, rational_point(C, {0, 1, 0})) == 4);
  CHECK(multiplicity_at(implicitize(c_q2(3)), rational_point(implicitize(c_q2(3)), {0, 1, 0})) == 2);
  CHECK_THROWS_AS(rational_point(C, {1, 1, 1}), curve_error);
}

TEST_CASE("grid of parametrized curves with r > 0") {
  for (std::uint32_t p : {2u, 3u}) {
    FiniteField Fp(p);
    for (std::uint32_t n = 1; n <= 2; ++n) {
      const std::uint32_t q = n == 1 ? p : p * p;
      if (p == 3 && n == 2) continue;  // degree 9+ curves are slow to certify; covered by n = 1
      for (std::uint32_t dg = 1; dg <= 4; ++dg) {
        const long r = static_cast<long>(p * dg) - static_cast<long>(q);
        if (r <= 0) continue;
        auto c = make_param_curve(p, n, FUPoly::monomial(Fp, 1, dg) + FUPoly::constant(Fp, 1));
        auto C = implicitize(c);
        CAPTURE(p);
        CAPTURE(q);
        CAPTURE(dg);
        CHECK(C.degree == std::max<long>(q, p * dg));
        // The affine chart is smooth; the only point at infinity is (0:1:0).
        auto inf = C.F.specialize(2, 0);
        CHECK(inf == FPoly::monomial(Fp, {"x", "y", "z"}, {p * dg, 0, 0}, inf.leading_term().second));
        CHECK(multiplicity_at(C, rational_point(C, {0, 1, 0})) == r);
        if (C.degree <= 10) {
          auto rep = singular_points(C);
          CHECK(rep.certificate.charts[0].smooth_by_unit);
          if (r >= 2) {
            REQUIRE(rep.points.size() == 1);
            CHECK(rep.points[0].to_string() == "(0:1:0)");
          } else {
            CHECK(rep.points.empty());
          }
        }
      }
    }
  }
}

TEST_CASE("singular points are invariant under scaling the form") {
  FiniteField F4(2, 2);
  auto f = xyz(F4, "x^2*z+y^3+(a)*x*y*z");
  auto base = singular_points(make_proj_curve(f));
  for (std::uint32_t s = 1; s < 4; ++s) {
    auto scaled = singular_points(make_proj_curve(f.scaled(s)));
    REQUIRE(scaled.points.size() == base.points.size());
    for (std::size_t i = 0; i < base.points.size(); ++i) {
      CHECK(scaled.points[i].to_string() == base.points[i].to_string());
      CHECK(scaled.points[i].multiplicity == base.points[i].multiplicity);
    }
  }
}

TEST_CASE("embedding check") {
  for (std::uint32_t n = 1; n <= 4; ++n) {
    auto e = embedding_check(c_q2(n));
    CHECK(e.immersion);
    CHECK(e.injective);
  }
  FiniteField F5(5), F3(3);
  auto cusp = embedding_check(FUPoly::monomial(F5, 1, 2), FUPoly::monomial(F5, 1, 3));
  CHECK_FALSE(cusp.immersion);
  CHECK(cusp.injective);
  auto folded = embedding_check(FUPoly::monomial(F3, 1, 2), FUPoly::monomial(F3, 1, 4));
  CHECK_FALSE(folded.immersion);
  CHECK_FALSE(folded.injective);
  // A node: t -> (t^2 - 1, t^3 - t) sends +1 and -1 to the origin.
  auto node = embedding_check(FUPoly(F5, {4, 0, 1}), FUPoly(F5, {0, 4, 0, 1}));
  CHECK(node.immersion);
  CHECK(node.birational);
  CHECK_FALSE(node.injective);
}

TEST_CASE("genus bookkeeping") {
  CHECK(genus_check(6, {{10, 1}}).geometric_genus == 0);
  auto g8 = genus_check(8, {{21, 1}});
  CHECK(g8.arithmetic_genus == 21);
  CHECK(g8.geometric_genus == 0);
}

TEST_CASE("branch at infinity matches the local equation") {
  FiniteField F2(2);
  for (std::uint32_t n = 1; n <= 3; ++n) {
    for (bool twisted : {false, true}) {
      if (twisted && n == 1) continue;
      auto c = twisted ? c_q(n) : c_q2(n);
      auto C = implicitize(c);
      auto b = branch_at_infinity(c, 40);
      auto P = rational_point(C, b.point);
      auto germ = localize(C, P);
      CHECK(germ.chart == b.chart);
      // f(X(u), Z(u)) vanishes to the working precision.
      FSeries acc(F2, 40);
      for (const auto& [e, coef] : germ.f.terms()) {
        FSeries term = FSeries::monomial(F2, coef, 0, 40);
        for (std::uint32_t i = 0; i < e[0]; ++i) term = (term * b.first).truncated(40);
        for (std::uint32_t i = 0; i < e[1]; ++i) term = (term * b.second).truncated(40);
        acc = acc + term;
      }
      CHECK(acc.is_zero_to_precision());
    }
  }
  // C_{2,2}: X = u^2 (1+u^3)^-1, Z = u^4 (1+u^3)^-1 and X^2 + Z has valuation 7.
  auto b = branch_at_infinity(c_q2(1), 12);
  CHECK(b.first.valuation() == 2);
  CHECK(b.second.valuation() == 4);
  CHECK(((b.first * b.first).truncated(12) + b.second).valuation() == 7);
}
