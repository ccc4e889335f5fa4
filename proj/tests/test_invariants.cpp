#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "curvelab/curve.hpp"
#include "curvelab/invariants.hpp"

using namespace curvelab;

namespace {

using QPoly = MPoly<RationalField>;

QPoly qxz(const std::string& s) { return QPoly::parse(RationalField{}, s, std::vector<std::string>{"x", "z"}); }

FPoly germ_at_singularity(const ParamCurve& c) {
  const auto C = implicitize(c);
  const auto rep = singular_points(C);
  REQUIRE(rep.points.size() == 1);
  return localize(C, rep.points[0]).f;
}

FPoly d_form(const FiniteField& K, std::uint32_t d) {
  const auto x = FPoly::variable(K, {"x", "z"}, 0), z = FPoly::variable(K, {"x", "z"}, 1);
  const auto w = z - x.pow(d);
  return w * w - z.pow(2 * d);
}

mpq_class q(long a, long b) {
  mpq_class r(a, b);
  r.canonicalize();
  return r;
}

mpq_class am_lct(long m) { return q(1, 2) + q(1, m + 1); }

template <class G>
LctResult lct_of(const G& germ) {
  return lct_plane_germ(resolution_tree(germ, ResolutionMode::embedded));
}

}  // namespace

TEST_CASE("lct of small plane germs") {
  auto node = lct_of(qxz("z^2-x^2"));
  CHECK(node.value == 1);
  CHECK_FALSE(node.smooth);
  auto cusp = lct_of(qxz("z^2-x^3"));
  CHECK(cusp.value == q(5, 6));
  CHECK(cusp.argmin == 2);
  auto smooth = lct_of(qxz("z-x^2"));
  CHECK(smooth.smooth);
  CHECK(smooth.value == 1);
  CHECK_THROWS_AS(lct_plane_germ(resolution_tree(qxz("z^2-x^3"), ResolutionMode::normalization)), invariant_error);
}

TEST_CASE("lct of the C_{2^n,2} germs") {
  for (std::uint32_t n = 1; n <= 4; ++n) {
    CAPTURE(n);
    const long m = (1L << n) * ((1L << n) + 1);
    CHECK(lct_of(germ_at_singularity(c_q2(n))).value == am_lct(m));
  }
  CHECK(lct_of(germ_at_singularity(c_q2(2))).value == q(23, 42));
  CHECK(rational_string(q(23, 42)) == "23/42");
  CHECK(rational_string(mpq_class(1)) == "1");
}

TEST_CASE("property: lct of synthetic A_m is 1/2 + 1/(m+1) and decreasing") {
  mpq_class prev = 2;
  for (long m = 1; m <= 200; ++m) {
    CAPTURE(m);
    const auto r = lct_of(qxz("z^2-x^" + std::to_string(m + 1)));
    CHECK(r.value == am_lct(m));
    CHECK(r.value < prev);
    CHECK(r.value > 0);
    CHECK(r.value <= 1);
    CHECK(r.value.get_den() > 0);
    mpq_class copy = r.value;
    copy.canonicalize();
    CHECK(copy.get_num() == r.value.get_num());
    prev = r.value;
  }
  FiniteField F2(2);
  for (long m : {2L, 6L, 12L, 20L, 40L}) {
    CHECK(lct_of(FPoly::parse(F2, "z^2+x^" + std::to_string(m + 1), std::vector<std::string>{"x", "z"})).value == am_lct(m));
  }
  // z^2 + x^42 = (z + x^21)^2 in characteristic 2.
  CHECK_THROWS_AS(lct_of(FPoly::parse(F2, "z^2+x^42", std::vector<std::string>{"x", "z"})), resolve_error);
}

TEST_CASE("X_g ledger") {
  for (std::uint32_t n = 2; n <= 4; ++n) {
    CAPTURE(n);
    const long d = (1L << n) + 2;
    const auto tree = resolution_tree(germ_at_singularity(c_q2(n)), ResolutionMode::normalization);
    const auto L = xg_ledger(d, tree);
    REQUIRE(L.entries.size() == tree.nodes.size() + 1);
    CHECK(L.entries[0].a == d);
    CHECK(L.entries[0].k == 2);
    CHECK(L.entries[0].lct_candidate() == q(3, d));
    CHECK(L.odd_exponent == 2 * d + 1);
    const auto r = lct_xg(L);
    CHECK(r.value == q(3, d));
    CHECK(r.argmin == 0);
    for (std::size_t i = 1; i < L.entries.size(); ++i) CHECK(L.entries[i].ambient_dim == 3);
  }
  const auto t2 = resolution_tree(germ_at_singularity(c_q2(2)), ResolutionMode::normalization);
  const auto L2 = xg_ledger(6, t2);
  CHECK(L2.entries[1].a == 8);
  CHECK(L2.entries[1].k == 4);
  CHECK(L2.entries[2].a == 16);
  CHECK(L2.entries[2].k == 8);
  CHECK(lct_xg(L2).value == q(1, 2));
  CHECK(lct_xg(xg_ledger(10, resolution_tree(germ_at_singularity(c_q2(3)), ResolutionMode::normalization))).value == q(3, 10));
  // A different singular point with the same multiplicity d gives the same threshold.
  const auto node_tree = resolution_tree(qxz("z^2-x^2"), ResolutionMode::normalization);
  CHECK(lct_xg(xg_ledger(6, node_tree)).value == q(1, 2));
  CHECK(lct_xg(xg_ledger(7, BlowupTree{})).value == q(3, 7));
  CHECK_THROWS_AS(xg_ledger(2, node_tree), invariant_error);
  CHECK_THROWS_AS(xg_ledger(6, node_tree, 12), invariant_error);
  CHECK_THROWS_AS(xg_ledger(6, node_tree, 11), invariant_error);
  CHECK(xg_ledger(6, node_tree, 13).odd_exponent == 13);
}

TEST_CASE("characteristic 0 bound") {
  CHECK(char0_max_Am(8) == 37);
  CHECK(char0_max_Am(10) == 61);
  CHECK(char0_max_Am(2) == 1);
  CHECK(char0_max_Am(6) == 19);
  CHECK_THROWS_AS(char0_max_Am(7), invariant_error);
  CHECK_THROWS_AS(char0_max_Am(0), invariant_error);
}

TEST_CASE("lifting verdicts") {
  auto c8 = lifting_verdict(8, 42, "C_8");
  CHECK(c8.verdict == Verdict::obstructed);
  CHECK(c8.char0_max == 37);
  auto c82 = lifting_verdict(10, 72, "C_{8,2}");
  CHECK(c82.verdict == Verdict::obstructed);
  CHECK(c82.char0_max == 61);
  auto c42 = lifting_verdict(6, 20, "C_{4,2}");
  CHECK(c42.verdict == Verdict::not_obstructed);
  CHECK(c42.char0_max == 19);
  CHECK(to_string(c42.verdict) == "not_obstructed");
  CHECK_THROWS_AS(lifting_verdict(6, 19), invariant_error);
  // The verdict matches min(m-1, m) <= bound.
  for (long deg = 2; deg <= 20; deg += 2) {
    for (long m = 2; m <= 120; m += 2) {
      const auto v = lifting_verdict(deg, m);
      CHECK((v.verdict == Verdict::not_obstructed) == (m <= v.char0_max || m - 1 <= v.char0_max));
    }
  }
}

TEST_CASE("property: D_{2d} has index half the squared degree minus one") {
  FiniteField F13(13);
  for (std::uint32_t d = 2; d <= 6; ++d) {
    CAPTURE(d);
    const long deg = 2 * d;
    const auto s = classify(d_form(F13, d));
    CHECK(s.name() == "A_" + std::to_string(deg * deg / 2 - 1));
    CHECK(s.branches == 2);
  }
}
