#include "curvelab/invariants.hpp"

namespace curvelab {

namespace {

LctResult minimum(const std::vector<DivisorLedgerEntry>& entries) {
  LctResult r;
  if (entries.empty()) {
    r.smooth = true;
    return r;
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].a < 1 || entries[i].k < 1) throw invariant_error("ledger entry with a < 1 or k < 1");
    const mpq_class c = entries[i].lct_candidate();
    if (r.argmin < 0 || c < r.value) {
      r.value = c;
      r.argmin = static_cast<int>(i);
    }
  }
  return r;
}

}  // namespace

std::vector<DivisorLedgerEntry> plane_ledger(const BlowupTree& tree) {
  std::vector<DivisorLedgerEntry> out;
  for (const auto& n : tree.nodes) out.push_back({n.id, n.a, n.k, 2, n.through});
  return out;
}

LctResult lct_plane_germ(const BlowupTree& embedded_tree) {
  if (embedded_tree.mode != ResolutionMode::embedded) throw invariant_error("lct needs an embedded resolution");
  std::string why;
  if (!verify_ledger(embedded_tree, &why)) throw invariant_error("inconsistent ledger: " + why);
  return minimum(plane_ledger(embedded_tree));
}

XgLedger xg_ledger(long degree, const BlowupTree& curve_tree, long odd_exponent) {
  if (degree < 3) throw invariant_error("X_g ledger needs degree >= 3");
  if (curve_tree.mode != ResolutionMode::normalization) throw invariant_error("X_g ledger reads a normalization tree");
  if (odd_exponent == 0) odd_exponent = 2 * degree + 1;
  if (odd_exponent < 2 * degree + 1 || odd_exponent % 2 == 0) throw invariant_error("exponent m must be odd and >= 2d+1");
  XgLedger L;
  L.degree = degree;
  L.odd_exponent = odd_exponent;
  L.entries.push_back({0, degree, 2, 3, {}});
  for (const auto& n : curve_tree.nodes) {
    DivisorLedgerEntry e{n.id + 1, n.multiplicity, 2, 3, {0}};
    for (int j : n.through) {
      if (j >= n.id) throw invariant_error("curve tree refers to a later divisor");
      e.through.push_back(j + 1);
    }
    for (int j : e.through) {
      e.a += L.entries[static_cast<std::size_t>(j)].a;
      e.k += L.entries[static_cast<std::size_t>(j)].k;
    }
    L.entries.push_back(std::move(e));
  }
  return L;
}

LctResult lct_xg(const XgLedger& ledger) { return minimum(ledger.entries); }

long char0_max_Am(long degree) {
  if (degree < 2 || degree % 2 != 0) {
    throw invariant_error("the A_m bound covers even degrees 2d >= 2 only; got degree " + std::to_string(degree));
  }
  const long d = degree / 2;
  return 3 * d * (d - 1) + 1;
}

LiftingVerdict lifting_verdict(long degree, long m, std::string curve) {
  if (m < 2 || m % 2 != 0) throw invariant_error("lifting verdict needs an even index m = 2r >= 2; got " + std::to_string(m));
  LiftingVerdict v;
  v.curve = std::move(curve);
  v.degree = degree;
  v.m = m;
  v.char0_max = char0_max_Am(degree);
  const bool blocked = m - 1 > v.char0_max;
  v.verdict = blocked ? Verdict::obstructed : Verdict::not_obstructed;
  v.reason = "degree " + std::to_string(degree) + " curves in characteristic 0 carry at most A_" + std::to_string(v.char0_max) + "; A_" +
             std::to_string(m - 1) + (blocked ? " exceeds it" : " is within it");
  return v;
}

std::string rational_string(const mpq_class& q) {
  mpq_class c(q);
  c.canonicalize();
  return c.get_str();
}

}  // namespace curvelab
