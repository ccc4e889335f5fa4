#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <random>

#include "curvelab/surfaces.hpp"

using namespace curvelab;

namespace {

mpq_class q(long a, long b) {
  mpq_class r(a, b);
  r.canonicalize();
  return r;
}

// Inverse Cartan matrix of A_n, 1-based.
mpq_class cartan_inverse(long n, long i, long j) { return q(std::min(i, j) * (n + 1 - std::max(i, j)), n + 1); }

std::vector<int> range(int a, int b) {
  std::vector<int> v(static_cast<std::size_t>(b - a));
  std::iota(v.begin(), v.end(), a);
  return v;
}

}  // namespace

TEST_CASE("double plane data") {
  auto S1 = make_double_plane(1);
  CHECK(S1.q == 2);
  CHECK(S1.r_prime == 1);
  CHECK(S1.g.to_string() == FPoly::parse(FiniteField(2), "u^2+u*z+u*x^3+x*z^5+z^2+x^6", std::vector<std::string>{"x", "z", "u"}).to_string());
  CHECK(S1.weighted.dehomogenize("y").with_vars({"x", "z", "u"}) == S1.g);
  auto S3 = make_double_plane(3);
  CHECK(S3.q == 2);
  CHECK(S3.r_prime == 3);
  auto S4 = make_double_plane(4);
  CHECK(S4.q == 8);
  CHECK(S4.r_prime == 1);
  CHECK_THROWS_AS(make_double_plane(0), surface_error);
}

TEST_CASE("Jacobian census of S_1") {
  auto J = jacobian_census(make_double_plane(1));
  CHECK(J.monomial_curve);
  CHECK(J.g_x_vanishes);
  CHECK(J.factorization);
  CHECK(J.g_u.to_string() == "x^3+z");
  CHECK(J.substitution.to_string("t") == "t^26+t^16");
  REQUIRE(J.entries.size() == 2);
  CHECK(J.entries[0].local_length == 16);
  CHECK(J.entries[0].type_index == 15);
  CHECK(J.entries[1].count == 5);
  CHECK(J.entries[1].type_index == 1);
  CHECK(J.entries[1].field_degree == 4);
  CHECK(J.summary() == "A_15 + 5A_1");
}

TEST_CASE("Jacobian census of S_2") {
  auto J = jacobian_census(make_double_plane(2));
  CHECK(J.substitution == FUPoly::monomial(FiniteField(2), 1, 46) * (FUPoly::monomial(FiniteField(2), 1, 36) + FUPoly::constant(FiniteField(2), 1)));
  CHECK(J.summary() == "A_45 + 9A_3");
  CHECK(J.entries[1].field_degree == 6);
}

TEST_CASE("property: census identities and totals") {
  for (long r : {1L, 2L, 3L, 4L, 8L}) {
    CAPTURE(r);
    const auto S = make_double_plane(r);
    const auto J = jacobian_census(S);
    CHECK(J.frobenius_identity);
    CHECK(J.entries[0].type_index == 8 * r * r + 6 * r + 1);
    CHECK(J.entries[1].type_index == S.q - 1);
    CHECK(J.entries[1].count == (4 * r + 1) * S.r_prime);
    // Roots of unity of order N live in F_{2^k} with k minimal such that N | 2^k - 1.
    const long N = (4 * r + 1) * S.r_prime;
    long k = 1;
    while (((1L << k) - 1) % N != 0) ++k;
    CHECK(J.entries[1].field_degree == k);
    if ((r & (r - 1)) == 0) {
      CHECK(J.total_index() == 16 * r * r + 4 * r);
      const auto c = exceptional_count(S);
      CHECK(c.count == 16 * r * r + 4 * r);
      CHECK(c.picard_lower_bound == c.count + 2);
      CHECK(c.betti2 == c.picard_lower_bound);
    } else {
      CHECK_THROWS_AS(exceptional_count(S), surface_error);
    }
    const auto inf = infinity_check(S);
    CHECK(inf.chart_x_smooth);
    CHECK(inf.chart_z_smooth);
    CHECK(inf.no_point_at_u_vertex);
  }
  CHECK(exceptional_count(make_double_plane(1)).betti2 == 22);
  CHECK(exceptional_count(make_double_plane(2)).picard_lower_bound == 74);
  CHECK(exceptional_count(make_double_plane(4)).count == 272);
}

TEST_CASE("lattice text format") {
  auto L = IntersectionLattice::parse("# two curves\nA -2\nB 7/16\nA B 1\n");
  CHECK(L.size() == 2);
  CHECK(L.dot(0, 1) == 1);
  CHECK(L.dot(1, 1) == q(7, 16));
  CHECK(IntersectionLattice::parse(L.to_text()).to_text() == L.to_text());
  CHECK_THROWS_AS(IntersectionLattice::parse("A -2\nA -2\n"), surface_error);
  CHECK_THROWS_AS(IntersectionLattice::parse("A -2\nA C 1\n"), surface_error);
  CHECK_THROWS_AS(IntersectionLattice::parse("A x\n"), surface_error);
  CHECK_THROWS_AS(IntersectionLattice::parse("A -2 1 1\n"), surface_error);
}

TEST_CASE("Mumford pullback on the A_15 chain") {
  auto L = s1_lattice();
  const auto chain = range(0, 15);
  const auto p = mumford_pullback(L, chain, {L.index("B1"), L.index("B2")});
  CHECK(p.intersections[0][1] == q(9, 16));
  CHECK(p.intersections[0][0] == q(7, 16));
  CHECK(p.intersections[1][1] == q(7, 16));
  CHECK(p.coefficients[0][2] == cartan_inverse(15, 3, 3));
  const auto consistent = consistent_attachments(15, -2, q(9, 16), q(7, 16), q(7, 16));
  CHECK(consistent == std::vector<std::pair<long, long>>{{3, 13}, {13, 3}});
}

TEST_CASE("pullback edge cases") {
  IntersectionLattice L = chain_lattice(1);
  const int b = L.add_vertex("B", -2);
  const int lone = L.add_vertex("D", -1);
  L.add_edge(b, 0, 1);
  const auto p = mumford_pullback(L, {0}, {b, lone});
  CHECK(p.coefficients[0][0] == q(1, 2));
  CHECK(p.intersections[0][0] == q(-3, 2));
  CHECK(p.coefficients[1][0] == 0);
  CHECK(p.intersections[1][1] == -1);
  const auto none = mumford_pullback(L, {}, {b});
  CHECK(none.intersections[0][0] == -2);
  IntersectionLattice bad = chain_lattice(2);
  bad.self[0] = 1;
  const int c = bad.add_vertex("B", 0);
  CHECK_THROWS_AS(mumford_pullback(bad, {0, 1}, {c}), surface_error);
}

TEST_CASE("property: pullback coefficients match the Cartan inverse") {
  for (long n = 1; n <= 20; ++n) {
    for (long pos = 1; pos <= n; ++pos) {
      IntersectionLattice L = chain_lattice(n);
      const int b = L.add_vertex("B", -2);
      L.add_edge(b, static_cast<int>(pos - 1), 1);
      const auto p = mumford_pullback(L, range(0, static_cast<int>(n)), {b});
      bool ok = true;
      for (long j = 1; j <= n; ++j) ok = ok && p.coefficients[0][static_cast<std::size_t>(j - 1)] == cartan_inverse(n, j, pos);
      CHECK(ok);
      CHECK(p.intersections[0][0] == -2 + cartan_inverse(n, pos, pos));
    }
  }
}

TEST_CASE("property: pullback is invariant under relabeling") {
  std::mt19937 rng(11);
  const auto base = s1_lattice();
  const auto ref = mumford_pullback(base, range(0, 15), {base.index("B1"), base.index("B2")}).intersections;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<int> perm = range(0, static_cast<int>(base.size()));
    std::shuffle(perm.begin(), perm.end(), rng);
    IntersectionLattice L;
    for (int i : perm) L.add_vertex(base.names[static_cast<std::size_t>(i)], base.self[static_cast<std::size_t>(i)]);
    for (const auto& [e, m] : base.edges) L.add_edge(L.index(base.names[static_cast<std::size_t>(e.first)]), L.index(base.names[static_cast<std::size_t>(e.second)]), m);
    std::vector<int> chain;
    for (int i = 1; i <= 15; ++i) chain.push_back(L.index("C" + std::to_string(i)));
    std::shuffle(chain.begin(), chain.end(), rng);
    CHECK(mumford_pullback(L, chain, {L.index("B1"), L.index("B2")}).intersections == ref);
  }
}

TEST_CASE("negative definiteness") {
  auto L = s1_lattice();
  const auto rep = check_negative_definite(L, range(0, 15));
  CHECK(rep.negative_definite);
  CHECK(rep.leading_minors.back() == -16);
  // C8 has positive square after contracting the rest, so the full configuration is indefinite.
  CHECK_FALSE(check_negative_definite(L, range(0, static_cast<int>(L.size()))).negative_definite);
  std::vector<int> rest = range(0, static_cast<int>(L.size()));
  rest.erase(rest.begin() + 7);
  CHECK(check_negative_definite(L, rest).negative_definite);
  IntersectionLattice bad = chain_lattice(3);
  bad.self[1] = -1;
  bad.add_edge(0, 2, 1);
  CHECK_FALSE(check_negative_definite(bad, {0, 1, 2}).negative_definite);
}

TEST_CASE("contractions") {
  auto L = s1_lattice();
  const auto c = contraction_check(L, {L.index("C8")});
  CHECK(c.singularities == "2E8+5A1");
  CHECK(c.kept_intersections[0][0] == 2);
  CHECK(c.clusters.size() == 7);

  std::vector<int> all = range(0, static_cast<int>(L.size()));
  const auto id = contraction_check(L, all);
  CHECK(id.clusters.empty());
  CHECK(id.singularities.empty());
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = 0; j < all.size(); ++j) CHECK(id.kept_intersections[i][j] == L.dot(all[i], all[j]));
  }

  auto A3 = chain_lattice(3);
  const auto m = contraction_check(A3, {1});
  CHECK(m.singularities == "2A1");
  CHECK(m.kept_intersections[0][0] == -1);

  // Without B1, B2 the two halves of the chain are A7's, not E8's.
  auto chain = chain_lattice(15);
  CHECK(contraction_check(chain, {7}).singularities == "2A7");

  IntersectionLattice cyc = chain_lattice(3);
  cyc.add_edge(0, 2, 1);
  const int k = cyc.add_vertex("K", -1);
  cyc.add_edge(k, 0, 1);
  CHECK_THROWS_AS(contraction_check(cyc, {k}), surface_error);
}

TEST_CASE("ADE identification") {
  auto L = IntersectionLattice::parse("a -2\nb -2\nc -2\nd -2\na b 1\nb c 1\nb d 1\n");
  CHECK(ade_type(L, {0, 1, 2, 3}) == "D4");
  auto E6 = chain_lattice(5);
  const int e = E6.add_vertex("E", -2);
  E6.add_edge(e, 2, 1);
  CHECK(ade_type(E6, range(0, 6)) == "E6");
  auto T = chain_lattice(5);
  const int t = T.add_vertex("T", -2);
  T.add_edge(t, 1, 1);
  CHECK(ade_type(T, range(0, 6)) == "D6");
  auto W = chain_lattice(3);
  W.self[0] = -3;
  CHECK(ade_type(W, {0, 1, 2}).empty());
}
