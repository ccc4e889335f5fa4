#include "commands.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace curvelab::app {

namespace {

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::vector<std::string> divisor_names(const std::vector<int>& ids) {
  std::vector<std::string> out;
  for (int i : ids) out.push_back("E" + std::to_string(i));
  return out;
}

json tree_json(const BlowupTree& t) {
  json nodes = json::array();
  for (const auto& n : t.nodes) {
    nodes.push_back({{"id", n.id},
                     {"parent", n.parent},
                     {"multiplicity", n.multiplicity},
                     {"through", n.through},
                     {"satellite", n.satellite},
                     {"a", n.a},
                     {"k", n.k},
                     {"self_intersection", n.self_intersection},
                     {"center", n.center}});
  }
  json leaves = json::array();
  for (const auto& l : t.leaves) leaves.push_back({{"parent", l.parent}, {"through", l.through}});
  json edges = json::array();
  for (const auto& [a, b] : t.edges) edges.push_back({a, b});
  std::string why;
  const bool ledger_ok = verify_ledger(t, &why);
  json j{{"mode", to_string(t.mode)},
         {"nodes", nodes},
         {"leaves", leaves},
         {"edges", edges},
         {"delta", t.delta()},
         {"multiplicity_sequence", t.multiplicity_sequence()},
         {"extension_degree", t.extension_degree},
         {"ledger_verified", ledger_ok}};
  if (!ledger_ok) j["ledger_error"] = why;
  return j;
}

std::string tree_text(const BlowupTree& t) {
  std::ostringstream os;
  os << to_string(t.mode) << " tree: " << t.nodes.size() << " blow-ups, " << t.leaves.size() << " leaves, delta " << t.delta();
  if (t.extension_degree > 1) os << ", tangents split after extension of degree " << t.extension_degree;
  os << "\n";
  for (const auto& n : t.nodes) {
    os << "  E" << n.id << " m=" << n.multiplicity << " a=" << n.a << " k=" << n.k << " E^2=" << n.self_intersection;
    if (!n.through.empty()) os << " on " << join(divisor_names(n.through), ",");
    os << (n.satellite ? " satellite" : "") << "\n";
  }
  return os.str();
}

json type_json(const SingularityType& s) {
  json j{{"type", s.name()}, {"kind", s.kind}, {"m", s.m}, {"multiplicity", s.multiplicity}, {"branches", s.branches}, {"delta", s.delta}};
  if (s.char2_r) {
    j["char2"] = {{"ord_a", *s.char2_r},
                  {"ord_b", s.char2_b ? json(*s.char2_b) : json(nullptr)},
                  {"normal_form", s.char2_normal_form},
                  {"precision", s.char2_precision}};
  }
  return j;
}

std::string type_text(const SingularityType& s) {
  std::string t = s.name() + ", multiplicity " + std::to_string(s.multiplicity) + ", delta " + std::to_string(s.delta) + ", branches " +
                  std::to_string(s.branches);
  if (s.char2_r) {
    t += ", char-2 pair (" + std::to_string(*s.char2_r) + ", " + (s.char2_b ? std::to_string(*s.char2_b) : std::string("-")) + ")";
    if (s.char2_normal_form) t += " matches z^2+z x^r+x^(m+1)";
  }
  return t;
}

template <Field F>
MPoly<F> parse_germ(const F& K, const std::string& text) {
  MPoly<F> g = MPoly<F>::parse(K, text);
  std::vector<std::string> vars = g.vars();
  if (vars.size() > 2) throw usage_error("a germ uses at most two variables; got " + join(vars, ","));
  for (const char* fill : {"x", "z", "y"}) {
    if (vars.size() == 2) break;
    if (std::find(vars.begin(), vars.end(), fill) == vars.end()) vars.push_back(fill);
  }
  std::sort(vars.begin(), vars.end());
  return g.with_vars(vars);
}

template <Field F>
Report resolve_over_field(const MPoly<F>& g, const ResolveOptions& opt, std::string* dot) {
  const BlowupTree norm = resolution_tree(g, ResolutionMode::normalization);
  const BlowupTree emb = resolution_tree(g, ResolutionMode::embedded);
  const BlowupTree& chosen = opt.mode == ResolutionMode::embedded ? emb : norm;
  const SingularityType s = classify(g);
  const DualGraph graph = emb.dual_graph();
  Report r;
  r.data = {{"schema_version", kSchemaVersion},
            {"germ", g.to_string()},
            {"field", g.field().spec().name()},
            {"tree", tree_json(chosen)},
            {"classification", type_json(s)},
            {"blowups", {{"normalization", norm.nodes.size()}, {"embedded", emb.nodes.size()}, {"normalization_mult2", norm.count_with_multiplicity(2)}}},
            {"dual_graph", {{"ascii", graph.to_ascii()}, {"canonical", graph.canonical_form()}, {"self_intersection", graph.self_intersection}, {"attachments", graph.attachments}}}};
  std::ostringstream os;
  os << "germ " << g.to_string() << " over " << g.field().spec().name() << "\n";
  os << "type: " << type_text(s) << "\n";
  os << "blow-ups: normalization " << norm.nodes.size() << " (" << norm.count_with_multiplicity(2) << " of multiplicity 2), embedded " << emb.nodes.size() << "\n";
  os << tree_text(chosen);
  os << "embedded dual graph: " << graph.to_ascii();
  r.text = os.str();
  if (dot) *dot = graph.to_dot();
  return r;
}

template <Field F>
Report lct_over_field(const MPoly<F>& g) {
  const LctResult l = lct_plane_germ(resolution_tree(g, ResolutionMode::embedded));
  Report r;
  r.data = {{"schema_version", kSchemaVersion},
            {"germ", g.to_string()},
            {"field", g.field().spec().name()},
            {"lct", rational_json(l.value)},
            {"lct_string", rational_string(l.value)},
            {"argmin", l.argmin},
            {"smooth", l.smooth}};
  r.text = "lct = " + rational_string(l.value) + (l.smooth ? " (smooth germ, value 1 by convention)" : "") + "\n";
  return r;
}

json point_json(const CurvePoint& P) {
  json coords = json::array();
  for (auto c : P.coords) coords.push_back(P.field.to_string(c));
  return {{"coords", coords}, {"text", P.to_string()}, {"field", P.field.spec().name()}, {"field_degree", P.field.degree()}, {"multiplicity", P.multiplicity}, {"orbit_size", P.orbit.size()}};
}

}  // namespace

json rational_json(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  return {{"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}};
}

ParamCurve preset_curve(const std::string& preset, std::uint32_t n) {
  if (n < 1 || n > 8) throw usage_error("--n must be between 1 and 8");
  if (preset == "cq2") return c_q2(n);
  if (preset == "cq") {
    if (n < 2) throw usage_error("preset cq needs n >= 2 (g = u^(2^(n-1)-1) must have positive degree)");
    return c_q(n);
  }
  throw usage_error("unknown preset '" + preset + "' (expected cq2 or cq)");
}

ProjPlaneCurve curve_from_text(const std::string& equation, std::uint32_t p, std::uint32_t k) {
  if (p < 2) throw usage_error("--p must be a prime for curve equations");
  try {
    return curve_from_equation(FiniteField(p, k), equation);
  } catch (const poly_error& e) {
    throw usage_error(std::string("cannot parse equation: ") + e.what());
  } catch (const field_error& e) {
    throw usage_error(e.what());
  }
}

Report curve_analyze(const ProjPlaneCurve& C, const CurveOptions& opt) {
  const SingularReport rep = singular_points(C, opt.kmax);
  json pts = json::array();
  std::vector<std::pair<long, long>> deltas;
  std::ostringstream os;
  os << "curve " << (C.label.empty() ? "(equation)" : C.label) << " over " << C.field.spec().name() << ", degree " << C.degree << "\n";
  os << "equation: " << C.F.to_string() << " = 0\n";
  os << "singular points: " << rep.points.size() << "\n";
  std::set<std::array<std::uint32_t, 3>> seen;
  for (const auto& P : rep.points) {
    json pj = point_json(P);
    const auto germ = localize(C, P).f;
    const SingularityType s = classify(germ);
    pj["classification"] = type_json(s);
    pts.push_back(pj);
    os << "  " << P.to_string() << " over " << P.field.spec().name() << ", " << type_text(s) << "\n";
    // One delta per Frobenius orbit, counted with the orbit size.
    bool fresh = true;
    for (const auto& Q : P.orbit) fresh = fresh && !seen.count(Q);
    if (fresh) {
      for (const auto& Q : P.orbit) seen.insert(Q);
      deltas.push_back({s.delta, static_cast<long>(P.orbit.size())});
    }
  }
  const GenusReport g = genus_check(C.degree, deltas);
  json charts = json::array();
  for (const auto& c : rep.certificate.charts) {
    charts.push_back({{"chart", c.chart}, {"smooth_by_unit", c.smooth_by_unit}, {"elim_degree_u", c.elim_degree_u}, {"elim_degree_v", c.elim_degree_v},
                      {"split_u", c.split_u}, {"split_v", c.split_v}, {"candidates", c.candidates}, {"found", c.found}});
  }
  os << "certificate: " << (rep.certificate.valid ? "valid" : "INVALID") << " (search degree " << rep.certificate.search_degree
     << (rep.certificate.charts_agree ? ", charts agree" : ", charts disagree") << ")\n";
  os << "genus: arithmetic " << g.arithmetic_genus << ", delta " << g.delta_sum << ", geometric " << g.geometric_genus << "\n";
  Report r;
  r.data = {{"schema_version", kSchemaVersion},
            {"curve", C.label},
            {"field", C.field.spec().name()},
            {"degree", C.degree},
            {"equation", C.F.to_string()},
            {"singular_points", pts},
            {"certificate", {{"valid", rep.certificate.valid}, {"search_degree", rep.certificate.search_degree}, {"charts_agree", rep.certificate.charts_agree}, {"charts", charts}}},
            {"genus", {{"arithmetic", g.arithmetic_genus}, {"delta_sum", g.delta_sum}, {"geometric", g.geometric_genus}}}};
  r.text = os.str();
  return r;
}

Report resolve_germ(const GermInput& germ, const ResolveOptions& opt, std::string* dot) {
  try {
    if (germ.p == 0) return resolve_over_field(parse_germ(RationalField{}, germ.text), opt, dot);
    return resolve_over_field(parse_germ(FiniteField(germ.p, germ.k), germ.text), opt, dot);
  } catch (const poly_error& e) {
    throw usage_error(std::string("cannot parse germ: ") + e.what());
  } catch (const field_error& e) {
    throw usage_error(e.what());
  }
}

FPoly preset_germ(const ParamCurve& c, std::uint32_t kmax) {
  const ProjPlaneCurve C = implicitize(c);
  const SingularReport rep = singular_points(C, kmax);
  if (rep.points.size() > 1) throw curve_error(c.label + " has more than one singular point");
  if (rep.points.size() == 1) return localize(C, rep.points[0]).f;
  // Smooth curve: use the point at infinity.
  return localize(C, rational_point(C, branch_at_infinity(c, 8).point)).f;
}

SemigroupResult preset_semigroup(const ParamCurve& c, long start_precision) {
  return delta_via_semigroup<FiniteField>(
      [&c](long N) {
        auto b = branch_at_infinity(c, N);
        return std::pair{b.first, b.second};
      },
      start_precision);
}

Report resolve_preset(const ParamCurve& c, const ResolveOptions& opt, std::uint32_t kmax, std::string* dot) {
  const FPoly g = preset_germ(c, kmax);
  Report r = resolve_over_field(g, opt, dot);
  const SemigroupResult sg = preset_semigroup(c, opt.precision);
  r.data["curve"] = c.label;
  r.data["semigroup"] = {{"generators", sg.generators}, {"conductor", sg.conductor}, {"delta", sg.delta}, {"symmetric", sg.symmetric}, {"precision", sg.precision}};
  std::vector<std::string> gens;
  for (long x : sg.generators) gens.push_back(std::to_string(x));
  r.text = "curve " + c.label + "\n" + r.text + "semigroup <" + join(gens, ",") + ">, conductor " + std::to_string(sg.conductor) + ", delta " +
           std::to_string(sg.delta) + (sg.symmetric ? ", symmetric" : ", NOT symmetric") + "\n";
  return r;
}

Report lct_germ(const GermInput& germ) {
  try {
    if (germ.p == 0) return lct_over_field(parse_germ(RationalField{}, germ.text));
    return lct_over_field(parse_germ(FiniteField(germ.p, germ.k), germ.text));
  } catch (const poly_error& e) {
    throw usage_error(std::string("cannot parse germ: ") + e.what());
  } catch (const field_error& e) {
    throw usage_error(e.what());
  }
}

Report lct_preset(const ParamCurve& c, std::uint32_t kmax) {
  const FPoly g = preset_germ(c, kmax);
  Report r = lct_over_field(g);
  const long degree = implicitize(c).degree;
  const XgLedger L = xg_ledger(degree, resolution_tree(g, ResolutionMode::normalization));
  const LctResult x = lct_xg(L);
  json entries = json::array();
  for (const auto& e : L.entries) {
    entries.push_back({{"id", e.id}, {"a", e.a}, {"k", e.k}, {"through", e.through}, {"candidate", rational_string(e.lct_candidate())}});
  }
  r.data["curve"] = c.label;
  r.data["degree"] = degree;
  r.data["xg"] = {{"lct", rational_json(x.value)}, {"lct_string", rational_string(x.value)}, {"argmin", x.argmin}, {"odd_exponent", L.odd_exponent}, {"entries", entries}};
  r.text = "curve " + c.label + ", degree " + std::to_string(degree) + "\nlct of the curve germ = " + rational_string(lct_plane_germ(resolution_tree(g, ResolutionMode::embedded)).value) +
           "\nlct of X_g = " + rational_string(x.value) + ", attained at ledger entry " + std::to_string(x.argmin) + " of " + std::to_string(L.entries.size()) + "\n";
  return r;
}

Report verdict_preset(const ParamCurve& c, std::uint32_t kmax) {
  const long degree = implicitize(c).degree;
  const SingularityType s = classify(preset_germ(c, kmax));
  if (s.kind != "A") throw invariant_error(c.label + " does not carry an A_m singularity");
  const LiftingVerdict v = lifting_verdict(degree, s.m, c.label);
  Report r;
  r.data = {{"schema_version", kSchemaVersion}, {"curve", c.label}, {"degree", degree}, {"m", s.m}, {"char0_max", v.char0_max}, {"verdict", to_string(v.verdict)}, {"reason", v.reason}};
  r.text = c.label + ": degree " + std::to_string(degree) + ", A_" + std::to_string(s.m) + " -> " + to_string(v.verdict) + " (" + v.reason + ")\n";
  return r;
}

Report surface_census(long r) {
  if (r < 1) throw usage_error("--r must be >= 1");
  const DoublePlane S = make_double_plane(r);
  const JacobianCensus J = jacobian_census(S);
  const InfinityCheck inf = infinity_check(S);
  json entries = json::array();
  for (const auto& e : J.entries) {
    entries.push_back({{"location", e.location}, {"type", "A_" + std::to_string(e.type_index)}, {"type_index", e.type_index}, {"count", e.count}, {"local_length", e.local_length}, {"field_degree", e.field_degree}});
  }
  Report rep;
  rep.data = {{"schema_version", kSchemaVersion},
              {"r", r},
              {"q", S.q},
              {"r_prime", S.r_prime},
              {"g", S.g.to_string()},
              {"g_x", J.g_x.to_string()},
              {"g_z", J.g_z.to_string()},
              {"g_u", J.g_u.to_string()},
              {"monomial_curve", {{"z", J.z_on_curve.to_string("t")}, {"u", J.u_on_curve.to_string("t")}}},
              {"checks", {{"monomial_curve", J.monomial_curve}, {"g_x_vanishes", J.g_x_vanishes}, {"factorization", J.factorization}, {"frobenius_identity", J.frobenius_identity}}},
              {"substitution", J.substitution.to_string("t")},
              {"census", entries},
              {"summary", J.summary()},
              {"total_index", J.total_index()},
              {"infinity", {{"chart_x_smooth", inf.chart_x_smooth}, {"chart_z_smooth", inf.chart_z_smooth}, {"u_vertex_off_surface", inf.no_point_at_u_vertex}}}};
  std::ostringstream os;
  os << "S_" << r << ": q = " << S.q << ", r' = " << S.r_prime << "\n";
  os << "g = " << S.g.to_string() << "\n";
  os << "g(phi_r(t)) = " << J.substitution.to_string("t") << "\n";
  os << "singularities: " << J.summary() << "\n";
  for (const auto& e : J.entries) os << "  " << e.location << ": " << e.count << " x A_" << e.type_index << " (local length " << e.local_length << ", over F_2^" << e.field_degree << ")\n";
  os << "no singular points off the chart y=1: " << ((inf.chart_x_smooth && inf.chart_z_smooth && inf.no_point_at_u_vertex) ? "certified" : "NOT certified") << "\n";
  if ((r & (r - 1)) == 0) {
    const ExceptionalCount c = exceptional_count(S);
    rep.data["exceptional"] = {{"count", c.count}, {"picard_lower_bound", c.picard_lower_bound}, {"betti2", c.betti2}};
    os << "exceptional curves " << c.count << ", Picard number >= " << c.picard_lower_bound << ", b2 = " << c.betti2 << "\n";
  }
  rep.text = os.str();
  return rep;
}

namespace {

std::vector<std::vector<std::string>> matrix_strings(const std::vector<std::vector<mpq_class>>& M) {
  std::vector<std::vector<std::string>> out;
  for (const auto& row : M) {
    std::vector<std::string> r;
    for (const auto& q : row) r.push_back(rational_string(q));
    out.push_back(std::move(r));
  }
  return out;
}

IntersectionLattice parse_lattice(const std::string& text) {
  try {
    return IntersectionLattice::parse(text);
  } catch (const surface_error& e) {
    throw usage_error(std::string("lattice: ") + e.what());
  }
}

std::vector<int> indices(const IntersectionLattice& L, const std::vector<std::string>& names) {
  std::vector<int> out;
  for (const auto& n : names) {
    try {
      out.push_back(L.index(n));
    } catch (const surface_error& e) {
      throw usage_error(e.what());
    }
  }
  return out;
}

}  // namespace

Report lattice_pullback(const LatticeInput& in) {
  IntersectionLattice L;
  std::vector<int> exceptional, curves;
  if (in.chain) {
    const std::string& c = *in.chain;
    if (c.size() < 2 || c[0] != 'A') throw usage_error("--chain expects A<n>, e.g. A15");
    long n = 0;
    try {
      n = std::stol(c.substr(1));
    } catch (const std::exception&) {
      throw usage_error("--chain expects A<n>, e.g. A15");
    }
    if (n < 1 || n > 500) throw usage_error("chain length out of range");
    L = chain_lattice(n);
    for (int i = 0; i < n; ++i) exceptional.push_back(i);
    for (std::size_t i = 0; i < in.attach.size(); ++i) {
      const long pos = in.attach[i];
      if (pos < 1 || pos > n) throw usage_error("attachment position " + std::to_string(pos) + " is off the chain");
      const int b = L.add_vertex("B" + std::to_string(i + 1), -2);
      L.add_edge(b, static_cast<int>(pos - 1), 1);
      curves.push_back(b);
    }
  } else if (in.file_text) {
    L = parse_lattice(*in.file_text);
    exceptional = indices(L, in.exceptional);
    curves = indices(L, in.curves);
  } else {
    throw usage_error("give --chain or --file");
  }
  const PullbackResult p = mumford_pullback(L, exceptional, curves);
  std::vector<std::string> names;
  for (int c : curves) names.push_back(L.names[static_cast<std::size_t>(c)]);
  json coeffs = json::object();
  for (std::size_t i = 0; i < curves.size(); ++i) {
    std::vector<std::string> v;
    for (const auto& q : p.coefficients[i]) v.push_back(rational_string(q));
    coeffs[names[i]] = v;
  }
  Report r;
  r.data = {{"schema_version", kSchemaVersion}, {"curves", names}, {"coefficients", coeffs}, {"intersections", matrix_strings(p.intersections)}};
  std::ostringstream os;
  for (std::size_t i = 0; i < curves.size(); ++i) {
    for (std::size_t j = i; j < curves.size(); ++j) {
      os << "(" << names[i] << "." << names[j] << ") = " << rational_string(p.intersections[i][j]) << "\n";
    }
  }
  r.text = os.str();
  return r;
}

Report lattice_contract(const IntersectionLattice& L, const std::vector<std::string>& keep) {
  const ContractionResult c = contraction_check(L, indices(L, keep));
  json clusters = json::array();
  for (const auto& cl : c.clusters) {
    std::vector<std::string> names;
    for (int v : cl.vertices) names.push_back(L.names[static_cast<std::size_t>(v)]);
    clusters.push_back({{"type", cl.type}, {"curves", names}});
  }
  Report r;
  r.data = {{"schema_version", kSchemaVersion}, {"kept", keep}, {"singularities", c.singularities}, {"clusters", clusters}, {"intersections", matrix_strings(c.kept_intersections)}};
  std::ostringstream os;
  os << "singularities: " << (c.singularities.empty() ? "none" : c.singularities) << "\n";
  for (std::size_t i = 0; i < keep.size(); ++i) os << "(" << keep[i] << "')^2 = " << rational_string(c.kept_intersections[i][i]) << "\n";
  r.text = os.str();
  return r;
}

}  // namespace curvelab::app
