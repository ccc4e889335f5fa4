#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "curvelab/mpoly.hpp"
#include "curvelab/upoly.hpp"

using namespace curvelab;

namespace {

// Determinant by Gaussian elimination over a field.
template <Field F>
typename F::value_type determinant(const F& K, std::vector<std::vector<typename F::value_type>> m) {
  const std::size_t n = m.size();
  auto det = K.one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && K.is_zero(m[piv][col])) ++piv;
    if (piv == n) return K.zero();
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = K.neg(det);
    }
    det = K.mul(det, m[col][col]);
    const auto inv = K.inv(m[col][col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const auto factor = K.mul(m[r][col], inv);
      for (std::size_t c = col; c < n; ++c) m[r][c] = K.sub(m[r][c], K.mul(factor, m[col][c]));
    }
  }
  return det;
}

// Sylvester matrix of two univariate polynomials given low-first.
template <Field F>
typename F::value_type sylvester_resultant(const F& K, const std::vector<typename F::value_type>& a,
                                           const std::vector<typename F::value_type>& b) {
  const std::size_t m = a.size() - 1, n = b.size() - 1;
  std::vector<std::vector<typename F::value_type>> S(m + n, std::vector<typename F::value_type>(m + n, K.zero()));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i <= m; ++i) S[r][r + i] = a[m - i];
  }
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t i = 0; i <= n; ++i) S[n + r][r + i] = b[n - i];
  }
  return determinant(K, S);
}

template <Field F>
MPoly<F> random_poly(const F& K, std::mt19937& rng, const std::vector<std::string>& vars, int max_deg, int terms,
                     std::function<typename F::value_type()> coeff) {
  MPoly<F> p(K, vars);
  std::uniform_int_distribution<int> d(0, max_deg);
  for (int t = 0; t < terms; ++t) {
    Exponents e(vars.size());
    for (auto& v : e) v = static_cast<std::uint32_t>(d(rng));
    p.add_term(e, coeff());
  }
  return p;
}

// Res_z(f, g) at x = x0, via the Sylvester determinant of the specialized pair.
template <Field F>
std::optional<typename F::value_type> specialized_oracle(const MPoly<F>& f, const MPoly<F>& g,
                                                         const typename F::value_type& x0) {
  const auto& K = f.field();
  auto uf = f.specialize(0, x0).to_univariate(1);
  auto ug = g.specialize(0, x0).to_univariate(1);
  // Degree drop under specialization changes the resultant; skip those points.
  if (uf.degree() != f.degree_in(1) || ug.degree() != g.degree_in(1)) return std::nullopt;
  return sylvester_resultant(K, uf.coeffs(), ug.coeffs());
}

}  // namespace

TEST_CASE("parse and print round trip") {
  FiniteField F2(2);
  auto f = MPoly<FiniteField>::parse(F2, "x*z^5 + y^4*z^2 + x^6");
  CHECK(f.vars() == std::vector<std::string>{"x", "y", "z"});
  CHECK(f.to_string() == "x^6+x*z^5+y^4*z^2");
  CHECK(MPoly<FiniteField>::parse(F2, f.to_string()) == f);

  RationalField Q;
  auto g = MPoly<RationalField>::parse(Q, "1/2*x^2 - 3*x*y + 4 - 2/4*x^2 + y", std::vector<std::string>{"x", "y"});
  CHECK(g.to_string() == "-3*x*y+y+4");

  FiniteField F4(2, 2);
  auto h = MPoly<FiniteField>::parse(F4, "(a+1)*x^2 + a*y");
  CHECK(h.to_string() == "(a+1)*x^2+a*y");
  CHECK(MPoly<FiniteField>::parse(F4, h.to_string()) == h);

  CHECK_THROWS_AS(MPoly<FiniteField>::parse(F2, "x**2"), poly_error);
  CHECK_THROWS_AS(MPoly<FiniteField>::parse(F2, "x+w", std::vector<std::string>{"x"}), poly_error);
  CHECK_THROWS_AS(MPoly<FiniteField>::parse(F2, ""), poly_error);
}

TEST_CASE("arithmetic and substitution") {
  RationalField Q;
  auto p = [&](const char* s) { return MPoly<RationalField>::parse(Q, s, std::vector<std::string>{"x", "y"}); };
  CHECK((p("x+y") * p("x-y")) == p("x^2-y^2"));
  CHECK(p("x+y").pow(3) == p("x^3+3*x^2*y+3*x*y^2+y^3"));
  CHECK(p("x^3+3*x^2*y+3*x*y^2+y^3").divide_exact(p("x+y")) == p("x^2+2*x*y+y^2"));
  CHECK_THROWS_AS(p("x^2+1").divide_exact(p("x+y")), poly_error);
  CHECK(p("x^2*y").derivative("x") == p("2*x*y"));
  CHECK(p("x^2+y").translate({Rational(1), Rational(0)}) == p("x^2+2*x+1+y"));
  CHECK(p("x^2+y").order() == 1);
  CHECK(p("x^2+y").total_degree() == 2);

  auto hom = p("x^2+y+1").homogenize("w", 2);
  CHECK(hom.vars() == std::vector<std::string>{"x", "y", "w"});
  CHECK(hom.is_homogeneous());
  CHECK(hom.dehomogenize("w") == p("x^2+y+1"));
}

TEST_CASE("univariate gcd, radical and roots") {
  FiniteField F2(2);
  using P = UPoly<FiniteField>;
  P x = P::x(F2), one = P::constant(F2, 1);
  P f = upow(x + one, 4) * x;  // x (x+1)^4
  CHECK(radical(f) == x * (x + one));
  CHECK(gcd(f, f.derivative()) == upow(x + one, 4));
  auto roots = roots_with_multiplicity(f);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == std::pair<std::uint32_t, int>{0, 1});
  CHECK(roots[1] == std::pair<std::uint32_t, int>{1, 4});

  // x^2 + x + 1 splits over F_4 but not F_2.
  P q = x * x + x + one;
  CHECK(roots_with_multiplicity(q).empty());
  CHECK(splitting_degree(q, 8) == 2u);
  CHECK(splitting_degree(upow(q, 2) * (x * x * x + x + one), 12) == 6u);

  // x^(2^k) - x over F_2 has splitting degree k.
  for (std::uint32_t k = 1; k <= 6; ++k) {
    CHECK(splitting_degree(P::monomial(F2, 1, 1u << k) + x, 12) == k);
  }

  RationalField Q;
  using R = UPoly<RationalField>;
  R rx = R::x(Q);
  R rf = (rx - R::constant(Q, Rational(1, 2))) * upow(rx + R::constant(Q, 3), 2) * (rx * rx + R::constant(Q, 1));
  auto rr = roots_with_multiplicity(rf);
  REQUIRE(rr.size() == 2);
  CHECK(rr[0].first == Rational(-3));
  CHECK(rr[0].second == 2);
  CHECK(rr[1].first == Rational(1, 2));
  CHECK(radical(rf).degree() == 4);
}

TEST_CASE("radical in characteristic p matches brute-force factor multiplicities") {
  // Over F_3 the radical must vanish exactly where f does, on F_9 as well.
  FiniteField F3(3), F9(3, 2);
  auto map = F3.embedding_into(F9);
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::uint32_t> c(0, 2);
  using P = UPoly<FiniteField>;
  for (int trial = 0; trial < 200; ++trial) {
    P f(F3, {1});
    for (int k = 0; k < 4; ++k) {
      P lin(F3, {c(rng), 1});
      f = f * upow(lin, 1 + c(rng) * 3 % 7);
    }
    P r = radical(f);
    CHECK(gcd(r, r.derivative()).degree() == 0);
    auto fb = base_change(f, F9, map), rb = base_change(r, F9, map);
    for (auto a : F9.elements()) CHECK(F9.is_zero(fb.eval(a)) == F9.is_zero(rb.eval(a)));
  }
}

TEST_CASE("resultant agrees with specialized Sylvester determinants") {
  std::mt19937 rng(5);
  const std::vector<std::string> vars{"x", "z"};

  SUBCASE("over Q") {
    RationalField Q;
    std::uniform_int_distribution<int> coef(-4, 4);
    auto cg = [&]() { return Rational(coef(rng)); };
    for (int trial = 0; trial < 40; ++trial) {
      auto f = random_poly<RationalField>(Q, rng, vars, 3, 4, cg);
      auto g = random_poly<RationalField>(Q, rng, vars, 3, 4, cg);
      if (!f.involves(1) || !g.involves(1)) continue;
      auto res = resultant(f, g, "z");
      CHECK_FALSE(res.involves(1));
      for (int x0 = -3; x0 <= 3; ++x0) {
        auto oracle = specialized_oracle(f, g, Rational(x0));
        if (oracle) CHECK(res.eval({Rational(x0), Rational(0)}) == *oracle);
      }
    }
  }

  SUBCASE("over F_4") {
    FiniteField F4(2, 2), F16(2, 4);
    std::uniform_int_distribution<std::uint32_t> coef(0, 3);
    auto cg = [&]() { return coef(rng); };
    auto map = F4.embedding_into(F16);
    for (int trial = 0; trial < 60; ++trial) {
      auto f = random_poly<FiniteField>(F4, rng, vars, 4, 4, cg);
      auto g = random_poly<FiniteField>(F4, rng, vars, 4, 4, cg);
      if (!f.involves(1) || !g.involves(1)) continue;
      auto res = resultant(f, g, "z");
      // Evaluate at all points of F_16 so the check sees more than deg-many points.
      auto fb = f.map_coefficients(F16, [&](std::uint32_t v) { return map[v]; });
      auto gb = g.map_coefficients(F16, [&](std::uint32_t v) { return map[v]; });
      auto rb = res.map_coefficients(F16, [&](std::uint32_t v) { return map[v]; });
      for (auto x0 : F16.elements()) {
        auto oracle = specialized_oracle(fb, gb, x0);
        if (oracle) CHECK(rb.eval({x0, 0}) == *oracle);
      }
    }
  }
}

TEST_CASE("resultant edge cases") {
  RationalField Q;
  auto p = [&](const char* s) { return MPoly<RationalField>::parse(Q, s, std::vector<std::string>{"x", "z"}); };
  CHECK(resultant(p("z^2-x"), p("z-1"), "z") == p("1-x"));
  CHECK(resultant(p("z^2-x"), p("x+1"), "z") == p("x^2+2*x+1"));
  CHECK(resultant(p("z^2+z-x*z-x"), p("z-x"), "z").is_zero());
  // Res(f, g) = (-1)^(deg f deg g) Res(g, f)
  CHECK(resultant(p("z^3+x"), p("z^3-2"), "z") == -resultant(p("z^3-2"), p("z^3+x"), "z"));
}

TEST_CASE("resultants of small parametrizations") {
  RationalField Q;
  const std::vector<std::string> v{"x", "y", "t"};
  auto p = [&](const char* s) { return MPoly<RationalField>::parse(Q, s, v); };
  const auto cusp = resultant(p("t^2-x"), p("t^3-y"), "t");
  CHECK((cusp == p("y^2-x^3") || cusp == p("x^3-y^2")));
  const std::vector<std::string> w{"a", "b", "t"};
  auto q = [&](const char* s) { return MPoly<RationalField>::parse(Q, s, w); };
  CHECK(resultant(q("t-a"), q("t-b"), "t") == q("a-b"));
}

TEST_CASE("implicitization resultant vanishes exactly on y^4 = x^6 + x over F_16") {
  FiniteField F2(2), F16(2, 4);
  const std::vector<std::string> v{"x", "y", "t"};
  // x = t^4, y = g(t^2) + t with g(u) = u^3.
  const auto res = resultant(MPoly<FiniteField>::parse(F2, "t^4+x", v), MPoly<FiniteField>::parse(F2, "t^6+t+y", v), "t");
  const auto curve = MPoly<FiniteField>::parse(F2, "y^4+x^6+x", v);
  const auto map = F2.embedding_into(F16);
  const auto R = res.map_coefficients(F16, [&](std::uint32_t c) { return map[c]; });
  const auto C = curve.map_coefficients(F16, [&](std::uint32_t c) { return map[c]; });
  for (std::uint32_t x = 0; x < 16; ++x) {
    for (std::uint32_t y = 0; y < 16; ++y) {
      CHECK(F16.is_zero(R.eval({x, y, 0})) == F16.is_zero(C.eval({x, y, 0})));
    }
  }
  // The resultant is a power of the reduced equation.
  auto power = curve;
  while (power.total_degree() < res.total_degree()) power = power * curve;
  CHECK(power == res);
}

TEST_CASE("homogenize and dehomogenize the C_{4,2} equation") {
  FiniteField F2(2);
  const auto f = MPoly<FiniteField>::parse(F2, "y^4+x^6+x", std::vector<std::string>{"x", "y"});
  const auto F = f.homogenize("z", 6);
  CHECK(F == MPoly<FiniteField>::parse(F2, "z^2*y^4+x^6+x*z^5", std::vector<std::string>{"x", "y", "z"}));
  CHECK(F.dehomogenize("z") == f);
  CHECK(F.dehomogenize("y") == MPoly<FiniteField>::parse(F2, "z^2+x^6+x*z^5", std::vector<std::string>{"x", "z"}));
  const auto one = MPoly<FiniteField>::constant(F2, {"x"}, 1).homogenize("z", 0);
  CHECK(one == MPoly<FiniteField>::constant(F2, {"x", "z"}, 1));
  CHECK_THROWS_AS(f.homogenize("z", 5), poly_error);
}

TEST_CASE("derivatives of the double-plane equation") {
  FiniteField F2(2);
  const std::vector<std::string> v{"x", "z", "u"};
  const auto g = MPoly<FiniteField>::parse(F2, "u^2+u*z+u*x^3+x*z^5+z^2+x^6", v);
  CHECK(g.derivative("u") == MPoly<FiniteField>::parse(F2, "z+x^3", v));
  CHECK(g.derivative("z") == MPoly<FiniteField>::parse(F2, "u+x*z^4", v));
  CHECK(g.derivative("x") == MPoly<FiniteField>::parse(F2, "x^2*u+z^5", v));
  // Along z = x^3, u = x z^4 = x^13 the equation restricts to t^16 (t^10 + 1).
  const std::vector<std::string> tv{"t"};
  const auto t = MPoly<FiniteField>::variable(F2, tv, 0);
  CHECK(g.compose({t, t.pow(3), t.pow(13)}) == MPoly<FiniteField>::parse(F2, "t^26+t^16", tv));
}

TEST_CASE("property: product rule for derivatives") {
  std::mt19937 rng(17);
  FiniteField F9(3, 2);
  std::uniform_int_distribution<std::uint32_t> coef(0, 8);
  const std::vector<std::string> v{"x", "y", "z"};
  for (int trial = 0; trial < 100; ++trial) {
    auto f = random_poly<FiniteField>(F9, rng, v, 5, 6, [&] { return coef(rng); });
    auto h = random_poly<FiniteField>(F9, rng, v, 5, 6, [&] { return coef(rng); });
    for (std::size_t i = 0; i < v.size(); ++i) CHECK((f * h).derivative(i) == f * h.derivative(i) + f.derivative(i) * h);
  }
}
