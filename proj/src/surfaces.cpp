#include "curvelab/surfaces.hpp"

#include <algorithm>
#include <sstream>

#include "curvelab/resolve.hpp"

namespace curvelab {

namespace {

using Matrix = std::vector<std::vector<mpq_class>>;

const std::vector<std::string> kXZU{"x", "z", "u"};
const std::vector<std::string> kXYZU{"x", "y", "z", "u"};

std::string pw(long e) { return std::to_string(e); }

bool is_two_power(long n) { return n > 0 && (n & (n - 1)) == 0; }

FUPoly t_power(long e) { return FUPoly::monomial(FiniteField(2), 1, static_cast<std::size_t>(e)); }

// Gaussian elimination with row pivoting; returns X with A X = B.
Matrix solve(Matrix A, Matrix B) {
  const std::size_t n = A.size();
  const std::size_t m = n ? B[0].size() : 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && A[p][c] == 0) ++p;
    if (p == n) throw surface_error("singular Gram matrix");
    std::swap(A[p], A[c]);
    std::swap(B[p], B[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || A[r][c] == 0) continue;
      const mpq_class f = A[r][c] / A[c][c];
      for (std::size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
      for (std::size_t k = 0; k < m; ++k) B[r][k] -= f * B[c][k];
    }
  }
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k < m; ++k) B[r][k] /= A[r][r];
  }
  return B;
}

mpq_class determinant(Matrix A) {
  const std::size_t n = A.size();
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && A[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(A[p], A[c]);
      det = -det;
    }
    det *= A[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (A[r][c] == 0) continue;
      const mpq_class f = A[r][c] / A[c][c];
      for (std::size_t k = c; k < n; ++k) A[r][k] -= f * A[c][k];
    }
  }
  return det;
}

Matrix gram(const IntersectionLattice& L, const std::vector<int>& a, const std::vector<int>& b) {
  Matrix G(a.size(), std::vector<mpq_class>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) G[i][j] = L.dot(a[i], b[j]);
  }
  return G;
}

DualGraph reference_graph(char kind, int n) {
  DualGraph g;
  g.self_intersection.assign(static_cast<std::size_t>(n), -2);
  g.attachments.assign(static_cast<std::size_t>(n), 0);
  if (kind == 'A') {
    for (int i = 0; i + 1 < n; ++i) g.edges.push_back({i, i + 1});
  } else if (kind == 'D') {
    // Vertices 0..n-3 form a chain; n-2 and n-1 hang off n-3.
    for (int i = 0; i + 1 < n - 2; ++i) g.edges.push_back({i, i + 1});
    g.edges.push_back({n - 3, n - 2});
    g.edges.push_back({n - 3, n - 1});
  } else {
    // E_n: chain 0..n-2 with vertex n-1 attached to vertex 2.
    for (int i = 0; i + 1 < n - 1; ++i) g.edges.push_back({i, i + 1});
    g.edges.push_back({2, n - 1});
  }
  return g;
}

}  // namespace

DoublePlane make_double_plane(long r) {
  if (r < 1) throw surface_error("double plane needs r >= 1");
  DoublePlane S;
  S.r = r;
  S.q = 1;
  while ((2 * r) % (2 * S.q) == 0) S.q *= 2;
  S.r_prime = 2 * r / S.q;
  const FiniteField F2(2);
  S.g = FPoly::parse(F2, "u^2+u*z+u*x^" + pw(2 * r + 1) + "+x*z^" + pw(4 * r + 1) + "+z^2+x^" + pw(4 * r + 2), kXZU);
  S.weighted = FPoly::parse(F2,
                            "u^2+u*z*y^" + pw(2 * r) + "+u*x^" + pw(2 * r + 1) + "+x*z^" + pw(4 * r + 1) + "+z^2*y^" + pw(4 * r) + "+x^" +
                                pw(4 * r + 2),
                            kXYZU);
  return S;
}

std::string JacobianCensus::summary() const {
  std::string s;
  for (const auto& e : entries) {
    if (!s.empty()) s += " + ";
    if (e.count != 1) s += std::to_string(e.count);
    s += "A_" + std::to_string(e.type_index);
  }
  return s;
}

JacobianCensus jacobian_census(const DoublePlane& S) {
  const FiniteField F2(2);
  const long r = S.r;
  JacobianCensus J;
  J.r = r;
  J.g_x = S.g.derivative("x");
  J.g_z = S.g.derivative("z");
  J.g_u = S.g.derivative("u");
  const auto z = FPoly::variable(F2, kXZU, "z"), u = FPoly::variable(F2, kXZU, "u");

  // g_u = z - h(x) and g_z(x, h(x), u) = u - k(x) parametrize the common zeros by x.
  if (J.g_u.degree_in(1) != 1 || J.g_u.involves(2) || !(J.g_u.coeff_in(1, 1) == FPoly::constant(F2, kXZU, 1))) {
    throw surface_error("g_u is not of the form z - h(x): " + J.g_u.to_string());
  }
  const FPoly h = z - J.g_u;
  const FPoly gz_on = J.g_z.substitute("z", h);
  if (gz_on.degree_in(2) != 1 || !(gz_on.coeff_in(2, 1) == FPoly::constant(F2, kXZU, 1)) || gz_on.involves(1)) {
    throw surface_error("g_z restricted to g_u = 0 is not of the form u - k(x): " + gz_on.to_string());
  }
  const FPoly k = u - gz_on;
  J.z_on_curve = h.to_univariate(0);
  J.u_on_curve = k.to_univariate(0);
  J.monomial_curve = J.z_on_curve == t_power(2 * r + 1) && J.u_on_curve == t_power(8 * r * r + 4 * r + 1);
  if (!J.monomial_curve) {
    throw surface_error("g_u = g_z = 0 is not the monomial curve: z = " + J.z_on_curve.to_string("x") + ", u = " + J.u_on_curve.to_string("x"));
  }

  const std::vector<std::string> tv{"t"};
  const std::vector<FPoly> phi{FPoly::variable(F2, tv, 0), FPoly::from_univariate(J.z_on_curve, tv, 0),
                               FPoly::from_univariate(J.u_on_curve, tv, 0)};
  const FPoly gx_on = J.g_x.compose(phi);
  J.g_x_vanishes = gx_on.is_zero();
  if (!J.g_x_vanishes) throw surface_error("g_x does not vanish on the monomial curve; residual " + gx_on.to_string());

  J.substitution = S.g.compose(phi).to_univariate(0);
  const FUPoly one = FUPoly::constant(F2, 1);
  const FUPoly expected = t_power(8 * r * r + 6 * r + 2) * (t_power(8 * r * r + 2 * r) + one);
  J.factorization = J.substitution == expected;
  if (!J.factorization) {
    throw surface_error("g(phi_r) differs from the expected factorization; residual " + (J.substitution - expected).to_string("t"));
  }
  J.frobenius_identity = t_power(2 * r * (4 * r + 1)) + one == upow(t_power(S.r_prime * (4 * r + 1)) + one, static_cast<std::uint64_t>(S.q));
  if (!J.frobenius_identity) throw surface_error("Frobenius identity fails");

  // Census read off the Jacobian algebra F_2[t]/(substitution).
  const long v = J.substitution.valuation();
  std::vector<std::uint32_t> rest_c(J.substitution.coeffs().begin() + v, J.substitution.coeffs().end());
  const FUPoly rest(F2, rest_c);
  J.entries.push_back({"t=0", v - 1, 1, v, 1});
  if (rest.degree() > 0) {
    const FUPoly rad = radical(rest);
    const long mult = rest.degree() / rad.degree();
    if (!(upow(rad, static_cast<std::uint64_t>(mult)) == rest)) throw surface_error("roots of unity with unequal multiplicities");
    const FUPoly x = FUPoly::x(F2) % rad;
    FUPoly y = x;
    std::uint32_t deg = 0;
    do {
      y = pow_mod(y, 2, rad);
      ++deg;
    } while (!(y == x));
    J.entries.push_back({"t^" + std::to_string(rad.degree()) + "=1", mult - 1, rad.degree(), mult, deg});
  }
  return J;
}

ExceptionalCount exceptional_count(const DoublePlane& S) {
  if (!is_two_power(S.r)) throw surface_error("exceptional count formula needs r a 2-power; got r = " + std::to_string(S.r));
  const auto J = jacobian_census(S);
  ExceptionalCount c;
  c.count = J.total_index();
  if (c.count != 16 * S.r * S.r + 4 * S.r) throw surface_error("exceptional count " + std::to_string(c.count) + " != 16r^2+4r");
  c.picard_lower_bound = c.count + 2;
  // Double cover of P^2 branched along a smooth curve of degree 4r+2.
  const long b = 4 * S.r + 2;
  const long genus = (b - 1) * (b - 2) / 2;
  const long euler = 2 * 3 - (2 - 2 * genus);
  c.betti2 = euler - 2;
  if (c.betti2 != c.picard_lower_bound) throw surface_error("second Betti number differs from the Picard lower bound");
  return c;
}

InfinityCheck infinity_check(const DoublePlane& S) {
  const FiniteField F2(2);
  InfinityCheck out;
  const FPoly& G = S.weighted;
  std::vector<FPoly> eqs{G};
  for (const auto& v : kXYZU) eqs.push_back(G.derivative(v));
  // Chart x = 1 along y = 0.
  for (const auto& e : eqs) {
    const FPoly s = e.specialize(0, 1).specialize(1, 0);
    if (!s.is_zero() && s.total_degree() == 0) out.chart_x_smooth = true;
  }
  // Chart z = 1 along x = y = 0: a univariate system in u.
  std::optional<FUPoly> g;
  for (const auto& e : eqs) {
    const FUPoly s = e.specialize(0, 0).specialize(1, 0).specialize(2, 1).to_univariate(3);
    g = g ? gcd(*g, s) : s;
  }
  out.chart_z_smooth = g && !g->is_zero() && g->degree() == 0;
  out.no_point_at_u_vertex = G.eval({0, 0, 0, 1}) != 0;
  return out;
}

// ---------------------------------------------------------------------------

int IntersectionLattice::add_vertex(const std::string& name, const mpq_class& self_intersection) {
  if (std::find(names.begin(), names.end(), name) != names.end()) throw surface_error("duplicate curve " + name);
  names.push_back(name);
  self.push_back(self_intersection);
  return static_cast<int>(names.size()) - 1;
}

void IntersectionLattice::add_edge(int a, int b, const mpq_class& mult) {
  if (a == b) throw surface_error("edge from a curve to itself; use its self-intersection");
  if (a < 0 || b < 0 || static_cast<std::size_t>(std::max(a, b)) >= names.size()) throw surface_error("edge to an unknown curve");
  edges[{std::min(a, b), std::max(a, b)}] = mult;
}

int IntersectionLattice::index(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw surface_error("unknown curve " + name);
  return static_cast<int>(it - names.begin());
}

mpq_class IntersectionLattice::dot(int i, int j) const {
  if (i == j) return self[static_cast<std::size_t>(i)];
  const auto it = edges.find({std::min(i, j), std::max(i, j)});
  return it == edges.end() ? mpq_class(0) : it->second;
}

IntersectionLattice IntersectionLattice::parse(const std::string& text) {
  IntersectionLattice L;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto rational = [&](const std::string& s) {
    try {
      mpq_class q(s);
      q.canonicalize();
      return q;
    } catch (const std::invalid_argument&) {
      throw surface_error("line " + std::to_string(lineno) + ": not a rational number: " + s);
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() == 2) {
      L.add_vertex(tok[0], rational(tok[1]));
    } else if (tok.size() == 3) {
      L.add_edge(L.index(tok[0]), L.index(tok[1]), rational(tok[2]));
    } else {
      throw surface_error("line " + std::to_string(lineno) + ": expected 'name self-int' or 'name name mult'");
    }
  }
  return L;
}

std::string IntersectionLattice::to_text() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < names.size(); ++i) os << names[i] << " " << self[i].get_str() << "\n";
  for (const auto& [e, m] : edges) os << names[static_cast<std::size_t>(e.first)] << " " << names[static_cast<std::size_t>(e.second)] << " " << m.get_str() << "\n";
  return os.str();
}

IntersectionLattice chain_lattice(long n, const std::string& prefix) {
  if (n < 1) throw surface_error("chain needs at least one curve");
  IntersectionLattice L;
  for (long i = 1; i <= n; ++i) L.add_vertex(prefix + std::to_string(i), -2);
  for (int i = 0; i + 1 < n; ++i) L.add_edge(i, i + 1, 1);
  return L;
}

IntersectionLattice s1_lattice(long b1_at, long b2_at) {
  IntersectionLattice L = chain_lattice(15);
  const int b1 = L.add_vertex("B1", -2), b2 = L.add_vertex("B2", -2);
  L.add_edge(b1, static_cast<int>(b1_at - 1), 1);
  L.add_edge(b2, static_cast<int>(b2_at - 1), 1);
  for (int i = 1; i <= 5; ++i) L.add_vertex("P" + std::to_string(i), -2);
  return L;
}

DefinitenessReport check_negative_definite(const IntersectionLattice& L, const std::vector<int>& subset) {
  DefinitenessReport rep;
  const Matrix G = gram(L, subset, subset);
  rep.negative_definite = true;
  for (std::size_t k = 1; k <= subset.size(); ++k) {
    Matrix lead(k, std::vector<mpq_class>(k));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) lead[i][j] = G[i][j];
    }
    const mpq_class d = determinant(lead);
    rep.leading_minors.push_back(d);
    rep.negative_definite = rep.negative_definite && (k % 2 == 1 ? d < 0 : d > 0);
  }
  return rep;
}

PullbackResult mumford_pullback(const IntersectionLattice& L, const std::vector<int>& exceptional, const std::vector<int>& curves) {
  for (int c : curves) {
    if (std::find(exceptional.begin(), exceptional.end(), c) != exceptional.end()) throw surface_error("curve " + L.names[static_cast<std::size_t>(c)] + " is exceptional");
  }
  if (!exceptional.empty() && !check_negative_definite(L, exceptional).negative_definite) {
    throw surface_error("exceptional Gram matrix is not negative definite");
  }
  PullbackResult res{exceptional, curves, {}, {}};
  Matrix rhs(exceptional.size(), std::vector<mpq_class>(curves.size()));
  for (std::size_t i = 0; i < exceptional.size(); ++i) {
    for (std::size_t j = 0; j < curves.size(); ++j) rhs[i][j] = -L.dot(exceptional[i], curves[j]);
  }
  const Matrix V = exceptional.empty() ? rhs : solve(gram(L, exceptional, exceptional), rhs);
  for (std::size_t j = 0; j < curves.size(); ++j) {
    std::vector<mpq_class> v;
    for (std::size_t i = 0; i < exceptional.size(); ++i) v.push_back(V[i][j]);
    res.coefficients.push_back(std::move(v));
  }
  res.intersections.assign(curves.size(), std::vector<mpq_class>(curves.size()));
  for (std::size_t a = 0; a < curves.size(); ++a) {
    for (std::size_t b = 0; b < curves.size(); ++b) {
      mpq_class s = L.dot(curves[a], curves[b]);
      for (std::size_t i = 0; i < exceptional.size(); ++i) s += res.coefficients[a][i] * L.dot(exceptional[i], curves[b]);
      s.canonicalize();
      res.intersections[a][b] = s;
    }
  }
  return res;
}

std::string ade_type(const IntersectionLattice& L, const std::vector<int>& vertices) {
  const int n = static_cast<int>(vertices.size());
  if (n == 0) return "";
  DualGraph g;
  std::map<int, int> local;
  for (int i = 0; i < n; ++i) {
    if (L.self[static_cast<std::size_t>(vertices[static_cast<std::size_t>(i)])] != -2) return "";
    local[vertices[static_cast<std::size_t>(i)]] = i;
  }
  g.self_intersection.assign(static_cast<std::size_t>(n), -2);
  g.attachments.assign(static_cast<std::size_t>(n), 0);
  for (const auto& [e, m] : L.edges) {
    const bool in_a = local.count(e.first) > 0, in_b = local.count(e.second) > 0;
    if (in_a && in_b) {
      if (m != 1) return "";
      g.edges.push_back({local[e.first], local[e.second]});
    }
  }
  std::string form;
  try {
    form = g.canonical_form();
  } catch (const resolve_error&) {
    return "";
  }
  std::vector<std::pair<char, int>> candidates{{'A', n}};
  if (n >= 4) candidates.push_back({'D', n});
  if (n >= 6 && n <= 8) candidates.push_back({'E', n});
  for (auto [kind, rank] : candidates) {
    if (reference_graph(kind, rank).canonical_form() == form) return std::string(1, kind) + std::to_string(rank);
  }
  return "";
}

ContractionResult contraction_check(const IntersectionLattice& L, const std::vector<int>& keep) {
  const int n = static_cast<int>(L.size());
  std::vector<bool> kept(static_cast<std::size_t>(n), false);
  for (int k : keep) kept.at(static_cast<std::size_t>(k)) = true;
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  ContractionResult res;
  res.kept = keep;
  std::vector<int> contracted;
  for (int s = 0; s < n; ++s) {
    if (kept[static_cast<std::size_t>(s)] || comp[static_cast<std::size_t>(s)] >= 0) continue;
    Cluster c;
    c.vertices.push_back(s);
    comp[static_cast<std::size_t>(s)] = s;
    for (std::size_t i = 0; i < c.vertices.size(); ++i) {
      for (int w = 0; w < n; ++w) {
        if (!kept[static_cast<std::size_t>(w)] && comp[static_cast<std::size_t>(w)] < 0 && w != c.vertices[i] && L.dot(c.vertices[i], w) != 0) {
          comp[static_cast<std::size_t>(w)] = s;
          c.vertices.push_back(w);
        }
      }
    }
    std::sort(c.vertices.begin(), c.vertices.end());
    c.type = ade_type(L, c.vertices);
    if (c.type.empty()) {
      std::string names;
      for (int v : c.vertices) names += " " + L.names[static_cast<std::size_t>(v)];
      throw surface_error("cluster is not an ADE configuration:" + names);
    }
    contracted.insert(contracted.end(), c.vertices.begin(), c.vertices.end());
    res.clusters.push_back(std::move(c));
  }
  // "2E8+5A1": E before D before A, larger rank first.
  std::map<std::pair<int, int>, int> tally;
  for (const auto& c : res.clusters) {
    const int order = c.type[0] == 'E' ? 0 : c.type[0] == 'D' ? 1 : 2;
    tally[{order, -std::stoi(c.type.substr(1))}] += 1;
  }
  for (const auto& [key, count] : tally) {
    if (!res.singularities.empty()) res.singularities += "+";
    if (count > 1) res.singularities += std::to_string(count);
    res.singularities += std::string(1, "EDA"[key.first]) + std::to_string(-key.second);
  }
  res.kept_intersections = mumford_pullback(L, contracted, keep).intersections;
  return res;
}

std::vector<std::pair<long, long>> consistent_attachments(long n, const mpq_class& b_self, const mpq_class& target_b1b2,
                                                          const mpq_class& target_b1sq, const mpq_class& target_b2sq) {
  std::vector<std::pair<long, long>> out;
  for (long i = 1; i <= n; ++i) {
    for (long j = 1; j <= n; ++j) {
      IntersectionLattice L = chain_lattice(n);
      const int b1 = L.add_vertex("B1", b_self), b2 = L.add_vertex("B2", b_self);
      L.add_edge(b1, static_cast<int>(i - 1), 1);
      L.add_edge(b2, static_cast<int>(j - 1), 1);
      std::vector<int> chain(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) chain[static_cast<std::size_t>(k)] = k;
      const auto p = mumford_pullback(L, chain, {b1, b2});
      if (p.intersections[0][1] == target_b1b2 && p.intersections[0][0] == target_b1sq && p.intersections[1][1] == target_b2sq) {
        out.push_back({i, j});
      }
    }
  }
  return out;
}

}  // namespace curvelab
