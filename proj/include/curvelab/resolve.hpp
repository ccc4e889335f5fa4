#pragma once

// Resolution of plane curve germs by point blow-ups, delta invariants,
// branch counts, A_m classification and dual graphs.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "curvelab/field.hpp"
#include "curvelab/mpoly.hpp"
#include "curvelab/series.hpp"
#include "curvelab/upoly.hpp"

namespace curvelab {

class resolve_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ResolutionMode { normalization, embedded };

inline std::string to_string(ResolutionMode m) { return m == ResolutionMode::normalization ? "normalization" : "embedded"; }

/// An infinitely near point that was blown up; its exceptional curve is E_id.
struct BlowupNode {
  int id = 0;
  int parent = -1;
  int multiplicity = 0;       // of the strict transform at the point
  std::vector<int> through;   // earlier exceptional curves through the point
  bool satellite = false;     // lies on two exceptional curves
  long a = 0;                 // order of the total transform of the germ along E_id
  long k = 0;                 // discrepancy of E_id
  int self_intersection = -1; // of E_id on the final surface
  std::string center;         // position relative to the parent
};

/// A point where the strict transform is left alone.
struct TreeLeaf {
  int parent = -1;
  std::vector<int> through;
};

struct DualGraph {
  std::vector<int> self_intersection;       // per exceptional curve
  std::vector<std::pair<int, int>> edges;   // i < j
  std::vector<int> attachments;             // strict-transform branches meeting each curve

  std::string to_dot(const std::string& name = "resolution") const;
  std::string to_ascii() const;
  // Canonical string of the labeled tree; equal iff the labeled graphs are isomorphic.
  std::string canonical_form() const;
};

struct BlowupTree {
  ResolutionMode mode = ResolutionMode::normalization;
  std::vector<BlowupNode> nodes;
  std::vector<TreeLeaf> leaves;
  std::set<std::pair<int, int>> edges;
  std::uint32_t extension_degree = 1;  // over the germ's field, for splitting tangent cones

  long delta() const {
    long d = 0;
    for (const auto& n : nodes) d += static_cast<long>(n.multiplicity) * (n.multiplicity - 1) / 2;
    return d;
  }
  std::vector<int> multiplicity_sequence() const {
    std::vector<int> m;
    for (const auto& n : nodes) m.push_back(n.multiplicity);
    return m;
  }
  std::size_t count_with_multiplicity(int m) const {
    return static_cast<std::size_t>(std::count_if(nodes.begin(), nodes.end(), [&](const BlowupNode& n) { return n.multiplicity == m; }));
  }
  DualGraph dual_graph() const;
};

/// Strict transforms in the two standard charts of the blow-up of the origin.
template <Field F>
struct BlowupCharts {
  MPoly<F> x_chart;  // (x, z) = (x, x z1), exceptional curve x = 0
  MPoly<F> z_chart;  // (x, z) = (x1 z, z), exceptional curve z = 0
  long exceptional_multiplicity = 0;
};

template <Field F>
BlowupCharts<F> blowup_once(const MPoly<F>& g) {
  if (g.nvars() != 2) throw resolve_error("germs live in two variables");
  if (g.is_zero()) throw resolve_error("cannot blow up the zero germ");
  if (!g.field().is_zero(g.constant_term())) throw resolve_error("germ is a unit at the origin; nothing to blow up");
  const long m = g.order();
  BlowupCharts<F> out{MPoly<F>(g.field(), g.vars()), MPoly<F>(g.field(), g.vars()), m};
  for (const auto& [e, c] : g.terms()) {
    const auto s = static_cast<std::uint32_t>(e[0] + e[1] - m);
    out.x_chart.add_term({s, e[1]}, c);
    out.z_chart.add_term({e[0], s}, c);
  }
  return out;
}

// Bound on sum m(m-1)/2 for a reduced affine curve of this degree.
inline long default_delta_cap(long degree) { return degree * (degree - 1) / 2; }

namespace detail {

struct needs_extension {
  std::uint32_t degree;
};

enum class Axis { X, Z };

template <Field F>
struct Situation {
  MPoly<F> g;
  std::vector<std::pair<int, Axis>> divisors;
  int parent;
  std::string where;
};

// Roots of the tangent cone restricted to the x-chart, or needs_extension.
template <Field F>
std::vector<typename F::value_type> tangent_roots(const MPoly<F>& cone) {
  const F& K = cone.field();
  const auto one = K.one();
  UPoly<F> t = cone.specialize(0, one).to_univariate(1);
  std::vector<typename F::value_type> out;
  long counted = 0;
  for (const auto& [r, mult] : roots_with_multiplicity(t)) {
    out.push_back(r);
    counted += mult;
  }
  if (counted < t.degree()) {
    if constexpr (is_finite_field_v<F>) {
      auto j = splitting_degree(t, 64);
      if (!j) throw resolve_error("tangent cone does not split over any extension of degree <= 64");
      throw needs_extension{*j};
    } else {
      throw resolve_error("tangent cone " + cone.to_string() + " does not split over Q");
    }
  }
  return out;
}

template <Field F>
BlowupTree resolve_over(const MPoly<F>& germ, ResolutionMode mode, long delta_cap) {
  const F& K = germ.field();
  BlowupTree tree;
  tree.mode = mode;
  std::vector<Situation<F>> stack{{germ, {}, -1, "origin"}};
  long delta = 0;
  while (!stack.empty()) {
    Situation<F> s = std::move(stack.back());
    stack.pop_back();
    if (s.g.is_zero()) throw resolve_error("germ is not reduced: strict transform vanishes identically");
    const long m = s.g.order();
    if (m == 0) throw resolve_error("internal: situation off the strict transform");
    std::vector<int> through;
    for (const auto& d : s.divisors) through.push_back(d.first);
    bool blow = m >= 2;
    if (!blow && mode == ResolutionMode::embedded) {
      if (s.divisors.size() >= 2) {
        blow = true;
      } else if (s.divisors.size() == 1) {
        // Transversal to x = 0 iff the linear part involves z, and vice versa.
        const auto lin = s.g.homogeneous_part(1);
        const bool has_x = !K.is_zero(lin.coeff({1, 0})), has_z = !K.is_zero(lin.coeff({0, 1}));
        blow = s.divisors[0].second == Axis::X ? !has_z : !has_x;
      }
    }
    if (!blow) {
      tree.leaves.push_back({s.parent, through});
      continue;
    }
    delta += m * (m - 1) / 2;
    if (delta > delta_cap) {
      throw resolve_error("resolution exceeded the delta cap " + std::to_string(delta_cap) + " (germ not reduced?)");
    }
    if (tree.nodes.size() > 100000) throw resolve_error("resolution exceeded the node cap");
    BlowupNode node;
    node.id = static_cast<int>(tree.nodes.size());
    node.parent = s.parent;
    node.multiplicity = static_cast<int>(m);
    node.through = through;
    node.satellite = through.size() == 2;
    node.a = m;
    node.k = 1;
    for (int j : through) {
      node.a += tree.nodes[static_cast<std::size_t>(j)].a;
      node.k += tree.nodes[static_cast<std::size_t>(j)].k;
      tree.nodes[static_cast<std::size_t>(j)].self_intersection -= 1;
      tree.edges.insert({j, node.id});
    }
    if (through.size() == 2) tree.edges.erase({std::min(through[0], through[1]), std::max(through[0], through[1])});
    node.center = s.where;
    const int id = node.id;
    tree.nodes.push_back(std::move(node));

    const auto charts = blowup_once(s.g);
    const auto cone = s.g.homogeneous_part(static_cast<std::uint64_t>(m));
    std::vector<Situation<F>> children;
    for (const auto& c : tangent_roots(cone)) {
      Situation<F> child{charts.x_chart.translate({K.zero(), c}), {{id, Axis::X}}, id, "E" + std::to_string(id) + ": z/x=" + K.to_string(c)};
      if (K.is_zero(c)) {
        for (const auto& d : s.divisors) {
          if (d.second == Axis::Z) child.divisors.push_back(d);
        }
      }
      children.push_back(std::move(child));
    }
    if (K.is_zero(cone.coeff({0, static_cast<std::uint32_t>(m)}))) {
      Situation<F> child{charts.z_chart, {{id, Axis::Z}}, id, "E" + std::to_string(id) + ": x/z=0"};
      for (const auto& d : s.divisors) {
        if (d.second == Axis::X) child.divisors.push_back(d);
      }
      children.push_back(std::move(child));
    }
    for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(std::move(*it));
  }
  return tree;
}

}  // namespace detail

/// Resolve the germ at the origin. Over finite fields, tangent cones that do
/// not split trigger a restart over the splitting extension.
template <Field F>
BlowupTree resolution_tree(const MPoly<F>& germ, ResolutionMode mode, std::optional<long> delta_cap = std::nullopt) {
  if (germ.nvars() != 2) throw resolve_error("germs live in two variables");
  if (germ.is_zero()) throw resolve_error("zero germ is not reduced");
  if (!germ.field().is_zero(germ.constant_term())) throw resolve_error("germ does not pass through the origin");
  const long cap = delta_cap.value_or(default_delta_cap(germ.total_degree()));
  if constexpr (is_finite_field_v<F>) {
    const FiniteField& K = germ.field();
    std::uint32_t ext = 1;
    while (true) {
      try {
        if (ext == 1) return detail::resolve_over(germ, mode, cap);
        const FiniteField big(K.characteristic(), K.degree() * ext);
        const auto map = K.embedding_into(big);
        auto g = germ.map_coefficients(big, [&](std::uint32_t v) { return map[v]; });
        BlowupTree t = detail::resolve_over(g, mode, cap);
        t.extension_degree = ext;
        return t;
      } catch (const detail::needs_extension& e) {
        ext *= e.degree;
        if (static_cast<std::uint64_t>(K.degree()) * ext > 20) throw resolve_error("splitting field of tangent cones exceeds the field bound");
      }
    }
  } else {
    return detail::resolve_over(germ, mode, cap);
  }
}

/// Recheck the (a, k) ledger through intersection numbers on the final
/// surface: M a = -c with c_i the strict transform's intersection with E_i,
/// and M k = -2 - diag(M) by adjunction.
bool verify_ledger(const BlowupTree& tree, std::string* why = nullptr);

template <Field F>
long delta_via_tree(const MPoly<F>& germ) {
  return resolution_tree(germ, ResolutionMode::normalization).delta();
}

template <Field F>
long branch_count(const MPoly<F>& germ) {
  return static_cast<long>(resolution_tree(germ, ResolutionMode::normalization).leaves.size());
}

// ---------------------------------------------------------------------------
// Value semigroup of a branch

struct SemigroupResult {
  std::vector<long> elements;    // semigroup elements below the conductor
  std::vector<long> generators;  // minimal generators
  long conductor = 0;
  long delta = 0;
  long precision = 0;            // series precision that certified the conductor
  bool symmetric = false;
};

/// Value semigroup of the branch s -> (X(s), Z(s)). `at_precision(N)`
/// supplies the parametrization modulo s^(N+1); N doubles until the
/// conductor is certified by a run of multiplicity-many consecutive values.
template <Field F>
SemigroupResult delta_via_semigroup(const std::function<std::pair<Series<F>, Series<F>>(long)>& at_precision,
                                    long start_precision = 32, long max_precision = 8192) {
  using V = typename F::value_type;
  for (long N = start_precision; N <= max_precision; N *= 2) {
    auto [X, Z] = at_precision(N);
    const F& K = X.field();
    const auto vx = X.valuation(), vz = Z.valuation();
    if (!vx || !vz || *vx == 0 || *vz == 0) throw resolve_error("branch parametrization must pass through the origin");
    const long e = std::min(*vx, *vz);
    // Echelon basis of the span of X^i Z^j with weighted degree <= N, keyed by leading valuation.
    std::map<long, std::vector<V>> pivots;
    auto reduce_insert = [&](std::vector<V> row) {
      for (long v = 0; v <= N; ++v) {
        if (K.is_zero(row[static_cast<std::size_t>(v)])) continue;
        auto it = pivots.find(v);
        if (it == pivots.end()) {
          const V inv = K.inv(row[static_cast<std::size_t>(v)]);
          for (auto& c : row) c = K.mul(c, inv);
          pivots.emplace(v, std::move(row));
          return;
        }
        const V f = row[static_cast<std::size_t>(v)];
        for (long w = v; w <= N; ++w) {
          row[static_cast<std::size_t>(w)] = K.sub(row[static_cast<std::size_t>(w)], K.mul(f, it->second[static_cast<std::size_t>(w)]));
        }
      }
    };
    Series<F> xpow = Series<F>::monomial(K, K.one(), 0, N);
    for (long i = 0; i * *vx <= N; ++i) {
      Series<F> term = xpow;
      for (long j = 0; i * *vx + j * *vz <= N; ++j) {
        std::vector<V> row(static_cast<std::size_t>(N + 1), K.zero());
        for (long v = 0; v <= N; ++v) row[static_cast<std::size_t>(v)] = term[v];
        reduce_insert(std::move(row));
        term = (term * Z).truncated(N);
      }
      xpow = (xpow * X).truncated(N);
    }
    std::vector<long> S;
    for (const auto& [v, row] : pivots) S.push_back(v);
    // Conductor: start of the first run of e consecutive elements.
    long conductor = -1;
    for (std::size_t i = 0; i + static_cast<std::size_t>(e) <= S.size(); ++i) {
      if (S[i + static_cast<std::size_t>(e) - 1] - S[i] == e - 1) {
        conductor = S[i];
        // Walk back over consecutive predecessors.
        std::size_t j = i;
        while (j > 0 && S[j - 1] == S[j] - 1) --j;
        conductor = S[j];
        break;
      }
    }
    if (conductor < 0) continue;
    SemigroupResult res;
    res.precision = N;
    res.conductor = conductor;
    for (long s : S) {
      if (s < conductor) res.elements.push_back(s);
    }
    res.delta = conductor - static_cast<long>(res.elements.size());
    // Symmetry: s in S iff c - 1 - s not in S, for 0 <= s < c.
    std::set<long> in(res.elements.begin(), res.elements.end());
    res.symmetric = true;
    for (long s = 0; s < conductor; ++s) res.symmetric = res.symmetric && (in.count(s) != in.count(conductor - 1 - s));
    // Minimal generators are at most conductor + e.
    const long bound = conductor + e + 1;
    std::vector<long> upto(res.elements.begin(), res.elements.end());
    for (long s = conductor; s < bound; ++s) upto.push_back(s);
    std::vector<bool> reach(static_cast<std::size_t>(bound), false);
    reach[0] = true;
    for (long s : upto) {
      if (s == 0) continue;
      if (!reach[static_cast<std::size_t>(s)]) {
        res.generators.push_back(s);
        for (long t = s; t < bound; ++t) {
          if (reach[static_cast<std::size_t>(t - s)]) reach[static_cast<std::size_t>(t)] = true;
        }
      }
    }
    return res;
  }
  throw resolve_error("semigroup conductor not certified below the maximal precision");
}

// ---------------------------------------------------------------------------
// Classification

struct SingularityType {
  std::string kind;  // "A", "other"
  long m = 0;
  long multiplicity = 0;
  long branches = 0;
  long delta = 0;
  std::uint32_t extension_degree = 1;
  // Characteristic 2 only: (ord a, ord b) of the Artin-Schreier-reduced form.
  std::optional<long> char2_r;
  std::optional<long> char2_b;
  bool char2_normal_form = false;  // ord b == m + 1
  long char2_precision = 0;

  std::string name() const { return kind == "A" ? "A_" + std::to_string(m) : "other"; }
};

template <Field F>
SingularityType classify(const MPoly<F>& germ) {
  const BlowupTree tree = resolution_tree(germ, ResolutionMode::normalization);
  SingularityType t;
  t.multiplicity = germ.order();
  t.delta = tree.delta();
  t.branches = static_cast<long>(tree.leaves.size());
  t.extension_degree = tree.extension_degree;
  if (t.multiplicity <= 2) {
    t.kind = "A";
    t.m = t.multiplicity == 1 ? 0 : 2 * t.delta - t.branches + 1;
  } else {
    t.kind = "other";
  }
  if constexpr (is_finite_field_v<F>) {
    if (germ.field().characteristic() == 2 && t.multiplicity == 2) {
      const long cutoff = 2 * (t.m + 1);
      for (long N = std::max<long>(2 * cutoff, 16);; N *= 2) {
        const auto w = weierstrass_form(germ, N);
        const auto red = artin_schreier_reduce(w.a, w.b, cutoff);
        t.char2_r = red.ord_a;
        t.char2_b = red.ord_b;
        t.char2_precision = N;
        if (red.ord_b || N > 16 * cutoff) break;
      }
      t.char2_normal_form = t.char2_b && *t.char2_b == t.m + 1;
    }
  }
  return t;
}

}  // namespace curvelab
