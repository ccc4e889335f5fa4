#include "curvelab/curve.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace curvelab {

namespace {

const std::vector<std::string> kXYZ{"x", "y", "z"};

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Coefficients of g(t^p) + t as a univariate polynomial in t.
FUPoly param_y(const ParamCurve& c) {
  const auto& F = c.field;
  std::vector<std::uint32_t> coeffs(static_cast<std::size_t>(std::max<long>(c.p * std::max<long>(c.deg_g(), 0), 1)) + 1, 0);
  for (std::size_t i = 0; i < c.g.coeffs().size(); ++i) coeffs[i * c.p] = c.g.coeffs()[i];
  coeffs[1] = F.add(coeffs[1], F.one());
  return FUPoly(F, std::move(coeffs));
}

// F = G^(p^e) with e maximal, for G over a perfect field.
std::pair<FPoly, std::uint32_t> strip_frobenius_powers(FPoly f) {
  const auto& K = f.field();
  const std::uint32_t p = K.characteristic();
  std::uint32_t exponent = 1;
  while (!f.is_constant()) {
    bool all = true;
    for (const auto& [e, c] : f.terms()) {
      for (auto v : e) all = all && (v % p == 0);
    }
    if (!all) break;
    FPoly root(K, f.vars());
    for (const auto& [e, c] : f.terms()) {
      Exponents g = e;
      for (auto& v : g) v /= p;
      root.add_term(g, K.pth_root(c));
    }
    f = std::move(root);
    exponent *= p;
  }
  return {std::move(f), exponent};
}

// Inverse of an injective code map small -> big, as a lookup.
std::unordered_map<std::uint32_t, std::uint32_t> invert(const std::vector<std::uint32_t>& map) {
  std::unordered_map<std::uint32_t, std::uint32_t> inv;
  for (std::uint32_t s = 0; s < map.size(); ++s) inv.emplace(map[s], s);
  return inv;
}

std::uint64_t lcm64(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

struct ChartData {
  ChartData(std::string v, FPoly eq) : var(std::move(v)), f(std::move(eq)) {}

  std::string var;        // dehomogenized variable
  FPoly f;                // chart equation
  std::vector<FPoly> S;   // nonzero members of (f, f_u, f_v)
  std::optional<FUPoly> Gu, Gv;
  ChartCertificate cert;
};

// Univariate polynomial in variable `keep` vanishing at the keep-coordinate of
// every common zero of A and B; nullopt when it is identically zero.
FUPoly project(const FPoly& A, const FPoly& B, std::size_t elim, std::size_t keep) {
  const bool a = A.involves(elim), b = B.involves(elim);
  if (a && b) return resultant(A, B, elim).to_univariate(keep);
  if (!a && !b) return gcd(A.to_univariate(keep), B.to_univariate(keep));
  return (a ? B : A).to_univariate(keep);
}

std::optional<FUPoly> eliminant(const std::vector<FPoly>& S, std::size_t elim, std::size_t keep) {
  std::optional<FUPoly> G;
  auto fold = [&](const FUPoly& h) {
    if (h.is_zero()) return;
    G = G ? gcd(*G, h) : h.monic();
  };
  if (S.size() == 1) {
    // Only f itself survives: f is a p-th power in both variables.
    return std::nullopt;
  }
  for (std::size_t i = 0; i < S.size(); ++i) {
    for (std::size_t j = i + 1; j < S.size(); ++j) fold(project(S[i], S[j], elim, keep));
  }
  return G;
}

std::uint32_t required_degree(const FUPoly& G, std::uint32_t k_max, const std::string& what) {
  if (G.degree() <= 0) return 1;
  if (auto j = splitting_degree(G, k_max)) return *j;
  const auto beyond = splitting_degree(G, 64);
  throw curve_error("singular-point certificate failure: eliminant " + what + " = " + G.to_string() +
                    " does not split over degree <= " + std::to_string(k_max) +
                    (beyond ? "; minimal degree needed is " + std::to_string(*beyond) : "; needs degree > 64"));
}

std::array<std::uint32_t, 3> canonical(const FiniteField& K, std::array<std::uint32_t, 3> v) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (!K.is_zero(v[i])) {
      const auto s = K.inv(v[i]);
      for (auto& c : v) c = K.mul(c, s);
      break;
    }
  }
  return v;
}

std::size_t first_nonzero(const std::array<std::uint32_t, 3>& v) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (v[i] != 0) return i;
  }
  throw curve_error("projective point with all coordinates zero");
}

}  // namespace

ParamCurve make_param_curve(std::uint32_t p, std::uint32_t n, const FUPoly& g, std::string label) {
  if (!is_prime(p)) throw curve_error("make_param_curve: p must be prime");
  if (n < 1) throw curve_error("make_param_curve: q = p^n needs n >= 1");
  if (g.is_zero()) throw curve_error("make_param_curve: g must be nonzero");
  if (g.field().characteristic() != p || g.field().degree() != 1) {
    throw curve_error("make_param_curve: g must have coefficients in F_p");
  }
  const std::uint64_t q = ipow(p, n);
  if (q > (1u << 20)) throw curve_error("make_param_curve: q too large");
  ParamCurve c{g.field(), p, n, static_cast<std::uint32_t>(q), g, 0, std::move(label)};
  c.r = static_cast<long>(p) * g.degree() - static_cast<long>(q);
  return c;
}

ParamCurve c_q2(std::uint32_t n) {
  if (n < 1) throw curve_error("C_{2^n,2} needs n >= 1");
  FiniteField F2(2);
  const std::uint32_t q = 1u << n;
  return make_param_curve(2, n, FUPoly::monomial(F2, 1, (1u << (n - 1)) + 1), "C_{" + std::to_string(q) + ",2}");
}

ParamCurve c_q(std::uint32_t n) {
  if (n < 2) throw curve_error("C_{2^n} preset needs n >= 2 so that deg g >= 1");
  FiniteField F2(2);
  const std::uint32_t q = 1u << n;
  return make_param_curve(2, n, FUPoly::monomial(F2, 1, (1u << (n - 1)) - 1), "C_{" + std::to_string(q) + "}");
}

std::pair<std::uint32_t, std::uint32_t> param_point(const ParamCurve& c, const FiniteField& big, std::uint32_t t) {
  if (big.characteristic() != c.p) throw curve_error("param_point: characteristic mismatch");
  FUPoly y = param_y(c);
  std::uint32_t yv = 0;
  for (std::size_t i = y.coeffs().size(); i-- > 0;) yv = big.add(big.mul(yv, t), big.from_int(y.coeffs()[i]));
  return {big.pow(t, c.q), yv};
}

ProjPlaneCurve make_proj_curve(FPoly F, std::string label) {
  std::vector<std::string> sorted = F.vars();
  std::sort(sorted.begin(), sorted.end());
  if (sorted != kXYZ) throw curve_error("plane curve must be a form in x, y, z");
  F = F.with_vars(kXYZ);
  if (F.is_zero() || F.is_constant()) throw curve_error("plane curve needs a nonconstant form");
  if (!F.is_homogeneous()) throw curve_error("plane curve equation is not homogeneous");
  const long d = F.total_degree();
  const FiniteField K = F.field();
  return ProjPlaneCurve{K, std::move(F), d, std::move(label), 1};
}

ProjPlaneCurve curve_from_equation(const FiniteField& field, const std::string& text, std::string label) {
  FPoly f = FPoly::parse(field, text, kXYZ);
  if (!f.is_homogeneous()) {
    if (f.involves(2)) throw curve_error("equation involves z but is not homogeneous");
    f = f.homogenize("z", static_cast<std::uint64_t>(f.total_degree()));
  }
  return make_proj_curve(std::move(f), label.empty() ? text : std::move(label));
}

ProjPlaneCurve implicitize(const ParamCurve& c) {
  const auto& K = c.field;
  const std::vector<std::string> vars{"x", "y", "t"};
  const FPoly x = FPoly::variable(K, vars, 0), y = FPoly::variable(K, vars, 1);
  const FPoly A = FPoly::from_univariate(FUPoly::monomial(K, K.one(), c.q), vars, 2) - x;
  const FPoly B = FPoly::from_univariate(param_y(c), vars, 2) - y;
  FPoly R = resultant(A, B, 2).with_vars({"x", "y"});
  if (R.is_zero() || R.is_constant()) throw curve_error("implicitize: elimination degenerated");
  auto [G, exponent] = strip_frobenius_powers(R.normalized());
  G = G.normalized();
  FPoly F = G.homogenize("z", static_cast<std::uint64_t>(G.total_degree()));
  ProjPlaneCurve C = make_proj_curve(std::move(F), c.label);
  C.resultant_exponent = exponent;
  return C;
}

std::string CurvePoint::to_string() const {
  return "(" + field.to_string(coords[0]) + ":" + field.to_string(coords[1]) + ":" + field.to_string(coords[2]) + ")";
}

SingularReport singular_points(const ProjPlaneCurve& C, std::uint32_t k_max) {
  const FiniteField& K = C.field;
  std::vector<ChartData> charts;
  // Chart order: affine part first, then the two charts at infinity.
  for (const std::string var : {"z", "y", "x"}) {
    ChartData d(var, C.F.dehomogenize(var));
    d.cert.chart = var + "=1";
    for (FPoly h : {d.f, d.f.derivative(0), d.f.derivative(1)}) {
      if (h.is_zero()) continue;
      if (h.is_constant()) d.cert.smooth_by_unit = true;
      d.S.push_back(std::move(h));
    }
    if (!d.cert.smooth_by_unit) {
      d.Gu = eliminant(d.S, 1, 0);
      d.Gv = eliminant(d.S, 0, 1);
      if (!d.Gu || !d.Gv) {
        throw curve_error("singular_points: curve is not reduced in chart " + d.cert.chart);
      }
      d.cert.elim_degree_u = radical(*d.Gu).degree();
      d.cert.elim_degree_v = radical(*d.Gv).degree();
      d.cert.split_u = required_degree(*d.Gu, k_max, d.f.vars()[0] + "-eliminant in chart " + d.cert.chart);
      d.cert.split_v = required_degree(*d.Gv, k_max, d.f.vars()[1] + "-eliminant in chart " + d.cert.chart);
    }
    charts.push_back(std::move(d));
  }
  std::uint64_t L = 1;
  for (const auto& d : charts) L = lcm64(L, lcm64(d.cert.split_u, d.cert.split_v));
  if (L > k_max) throw curve_error("singular-point certificate failure: joint search degree exceeds k_max");
  const std::uint64_t big_degree = static_cast<std::uint64_t>(K.degree()) * L;
  if (ipow(K.characteristic(), static_cast<std::uint32_t>(big_degree)) > kDefaultFieldBound) {
    throw curve_error("singular-point search field exceeds the field size bound");
  }
  const FiniteField big(K.characteristic(), static_cast<std::uint32_t>(big_degree));
  const auto base_map = K.embedding_into(big);
  auto lift = [&](std::uint32_t v) { return base_map[v]; };

  std::set<std::array<std::uint32_t, 3>> found;
  std::vector<std::set<std::array<std::uint32_t, 3>>> per_chart(charts.size());
  for (std::size_t ci = 0; ci < charts.size(); ++ci) {
    auto& d = charts[ci];
    if (d.cert.smooth_by_unit) continue;
    auto roots = [&](const FUPoly& G) {
      std::vector<std::uint32_t> out;
      if (G.degree() <= 0) return out;
      for (auto [a, m] : roots_with_multiplicity(base_change(G, big, base_map))) out.push_back(a);
      return out;
    };
    const auto ru = roots(*d.Gu), rv = roots(*d.Gv);
    std::vector<FPoly> Sb;
    for (const auto& h : d.S) Sb.push_back(h.map_coefficients(big, lift));
    const std::size_t hidden = static_cast<std::size_t>(std::find(kXYZ.begin(), kXYZ.end(), d.var) - kXYZ.begin());
    for (auto u : ru) {
      for (auto v : rv) {
        ++d.cert.candidates;
        bool all = true;
        for (const auto& h : Sb) all = all && big.is_zero(h.eval({u, v}));
        if (!all) continue;
        ++d.cert.found;
        std::array<std::uint32_t, 3> pt{};
        std::size_t k = 0;
        for (std::size_t i = 0; i < 3; ++i) pt[i] = (i == hidden) ? big.one() : (k++ == 0 ? u : v);
        pt = canonical(big, pt);
        found.insert(pt);
        per_chart[ci].insert(pt);
      }
    }
  }

  SingularReport report;
  report.certificate.search_degree = static_cast<std::uint32_t>(L);
  for (const auto& pt : found) {
    for (std::size_t ci = 0; ci < charts.size(); ++ci) {
      const std::size_t hidden =
          static_cast<std::size_t>(std::find(kXYZ.begin(), kXYZ.end(), charts[ci].var) - kXYZ.begin());
      if (pt[hidden] != 0 && !per_chart[ci].count(pt)) report.certificate.charts_agree = false;
    }
  }
  for (const auto& d : charts) report.certificate.charts.push_back(d.cert);
  report.certificate.valid = report.certificate.charts_agree;

  for (const auto& pt : found) {
    // Minimal field of definition containing the curve's field.
    std::uint64_t deg = K.degree();
    for (auto c : pt) deg = lcm64(deg, big.element_degree(c));
    const FiniteField small(K.characteristic(), static_cast<std::uint32_t>(deg));
    const auto back = invert(small.embedding_into(big));
    CurvePoint P{small, {}, 1, {}, {}};
    for (std::size_t i = 0; i < 3; ++i) P.coords[i] = back.at(pt[i]);
    P.base_map.resize(K.order());
    for (std::uint32_t b = 0; b < K.order(); ++b) P.base_map[b] = back.at(base_map[b]);
    auto conj = P.coords;
    do {
      P.orbit.push_back(conj);
      for (auto& c : conj) c = small.pow(c, K.order());
    } while (conj != P.coords);
    P.multiplicity = multiplicity_at(C, P);
    report.points.push_back(std::move(P));
  }
  return report;
}

LocalGerm localize(const ProjPlaneCurve& C, const CurvePoint& P) {
  const std::size_t i = first_nonzero(P.coords);
  if (!P.field.is_one(P.coords[i])) throw curve_error("localize: point is not canonicalized");
  FPoly F = C.F.map_coefficients(P.field, [&](std::uint32_t v) { return P.base_map.at(v); });
  FPoly f = F.dehomogenize(kXYZ[i]);
  std::vector<std::uint32_t> shift;
  for (std::size_t j = 0; j < 3; ++j) {
    if (j != i) shift.push_back(P.coords[j]);
  }
  f = f.translate(shift);
  if (!f.is_zero() && !P.field.is_zero(f.constant_term())) throw curve_error("point " + P.to_string() + " is not on the curve");
  return LocalGerm{std::move(f), kXYZ[i] + "=1"};
}

int multiplicity_at(const ProjPlaneCurve& C, const CurvePoint& P) {
  const LocalGerm g = localize(C, P);
  if (g.f.is_zero()) throw curve_error("multiplicity_at: zero equation");
  return static_cast<int>(g.f.order());
}

CurvePoint rational_point(const ProjPlaneCurve& C, std::array<std::uint32_t, 3> coords) {
  CurvePoint P{C.field, canonical(C.field, coords), 1, {}, {}};
  P.base_map.resize(C.field.order());
  std::iota(P.base_map.begin(), P.base_map.end(), 0u);
  P.orbit = {P.coords};
  P.multiplicity = multiplicity_at(C, P);
  return P;
}

EmbeddingReport embedding_check(const FUPoly& P, const FUPoly& Q, std::uint32_t k_max) {
  const FiniteField& K = P.field();
  EmbeddingReport rep;
  rep.immersion = gcd(P.derivative(), Q.derivative()).degree() == 0;
  // Difference quotients (P(s) - P(t)) / (s - t) in the universe (s, t).
  const std::vector<std::string> vars{"s", "t"};
  const FPoly s = FPoly::variable(K, vars, 0), t = FPoly::variable(K, vars, 1);
  auto quotient = [&](const FUPoly& h) {
    return (FPoly::from_univariate(h, vars, 0) - FPoly::from_univariate(h, vars, 1)).divide_exact(s - t);
  };
  const FPoly A = quotient(P), B = quotient(Q);
  if ((A.is_constant() && !A.is_zero()) || (B.is_constant() && !B.is_zero())) {
    rep.birational = rep.injective = true;
    return rep;
  }
  if (A.is_zero() || B.is_zero()) return rep;  // constant coordinate
  const FPoly R = resultant(A, B, 0);
  rep.birational = !R.is_zero();
  if (!rep.birational) return rep;
  // Off-diagonal coincidences: for each root t0 of R, common roots s0 must equal t0.
  const FUPoly Rt = R.to_univariate(1);
  rep.injective = true;
  if (Rt.degree() <= 0) return rep;
  const auto j = splitting_degree(Rt, k_max);
  if (!j) throw curve_error("embedding_check: coincidence locus does not split over degree <= k_max");
  const FiniteField big(K.characteristic(), K.degree() * *j);
  const auto map = K.embedding_into(big);
  auto lift = [&](std::uint32_t v) { return map[v]; };
  const FPoly Ab = A.map_coefficients(big, lift), Bb = B.map_coefficients(big, lift);
  for (auto [t0, mult] : roots_with_multiplicity(base_change(Rt, big, map))) {
    const FUPoly a = Ab.specialize(1, t0).to_univariate(0), b = Bb.specialize(1, t0).to_univariate(0);
    const FUPoly common = (a.is_zero() && b.is_zero()) ? FUPoly(big) : gcd(a, b);
    if (a.is_zero() && b.is_zero()) {
      rep.injective = false;
      break;
    }
    if (common.degree() <= 0) continue;
    const FUPoly diag(big, {big.neg(t0), big.one()});
    FUPoly rest = common;
    while (rest.degree() > 0 && (rest % diag).is_zero()) rest = rest / diag;
    if (rest.degree() > 0) {
      rep.injective = false;
      break;
    }
  }
  return rep;
}

EmbeddingReport embedding_check(const ParamCurve& c) {
  return embedding_check(FUPoly::monomial(c.field, c.field.one(), c.q), param_y(c));
}

GenusReport genus_check(long degree, const std::vector<std::pair<long, long>>& deltas) {
  GenusReport g;
  g.arithmetic_genus = (degree - 1) * (degree - 2) / 2;
  for (auto [delta, count] : deltas) g.delta_sum += delta * count;
  g.geometric_genus = g.arithmetic_genus - g.delta_sum;
  return g;
}

BranchSeries branch_at_infinity(const ParamCurve& c, long N) {
  const auto& K = c.field;
  const long D = c.p * std::max<long>(c.deg_g(), 0);
  BranchSeries b{"", {}, FSeries(K, N), FSeries(K, N)};
  if (c.r > 0) {
    // (x : y : z) = (t^q : t^D h(u) : 1), h(u) = sum g_i u^(D - p i) + u^(D-1).
    FSeries h(K, N);
    for (std::size_t i = 0; i < c.g.coeffs().size(); ++i) {
      const long e = D - static_cast<long>(c.p * i);
      if (e <= N) h[e] = K.add(h[e], c.g.coeffs()[i]);
    }
    if (D - 1 <= N) h[D - 1] = K.add(h[D - 1], K.one());
    const FSeries hinv = h.inverse();
    b.chart = "y=1";
    b.point = {0, 1, 0};
    b.first = (FSeries::monomial(K, K.one(), D - c.q, N) * hinv).truncated(N);
    b.second = (FSeries::monomial(K, K.one(), D, N) * hinv).truncated(N);
  } else {
    // (x : y : z) = (1 : sum g_i u^(q - p i) + u^(q-1) : u^q).
    b.chart = "x=1";
    FSeries Y(K, N);
    for (std::size_t i = 0; i < c.g.coeffs().size(); ++i) {
      const long e = static_cast<long>(c.q) - static_cast<long>(c.p * i);
      if (e <= N) Y[e] = K.add(Y[e], c.g.coeffs()[i]);
    }
    if (static_cast<long>(c.q) - 1 <= N) Y[c.q - 1] = K.add(Y[c.q - 1], K.one());
    b.point = {1, Y[0], 0};
    Y[0] = K.zero();
    b.first = Y;
    b.second = FSeries::monomial(K, K.one(), c.q, N);
  }
  return b;
}

}  // namespace curvelab
