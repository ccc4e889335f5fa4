#include "verify.hpp"

#include <atomic>
#include <chrono>
#include <random>
#include <thread>

namespace curvelab::app {

std::string to_string(ItemStatus s) {
  switch (s) {
    case ItemStatus::pass: return "PASS";
    case ItemStatus::fail: return "FAIL";
    case ItemStatus::skipped: return "SKIP";
    case ItemStatus::error: return "ERROR";
  }
  return "?";
}

namespace {

std::uint32_t uint_param(const json& item, const char* key) {
  if (!item.contains(key) || !item[key].is_number_integer() || item[key].get<long>() < 0) {
    throw usage_error("item '" + item.value("id", std::string("?")) + "' needs a nonnegative integer '" + key + "'");
  }
  return item[key].get<std::uint32_t>();
}

std::string str_param(const json& item, const char* key) {
  if (!item.contains(key) || !item[key].is_string()) {
    throw usage_error("item '" + item.value("id", std::string("?")) + "' needs a string '" + key + "'");
  }
  return item[key].get<std::string>();
}

ParamCurve item_curve(const json& item) { return preset_curve(str_param(item, "preset"), uint_param(item, "n")); }

GermInput item_germ(const json& item) {
  GermInput g;
  g.text = str_param(item, "germ");
  g.p = item.contains("p") ? uint_param(item, "p") : 0;
  g.k = item.contains("k") ? uint_param(item, "k") : 1;
  return g;
}

std::string singular_summary(const ProjPlaneCurve& C) {
  const SingularReport rep = singular_points(C);
  std::string out;
  for (const auto& P : rep.points) out += (out.empty() ? "" : ", ") + P.to_string() + " m=" + std::to_string(P.multiplicity);
  if (out.empty()) out = "none";
  return out + (rep.certificate.valid ? " certified" : " uncertified");
}

std::string delta_agreement(const ParamCurve& c) {
  const FPoly g = preset_germ(c);
  const long tree = delta_via_tree(g);
  const long sg = preset_semigroup(c).delta;
  if (tree == sg) return std::to_string(tree);
  return "tree=" + std::to_string(tree) + " semigroup=" + std::to_string(sg);
}

std::string implicitization_soundness(const ParamCurve& c, std::uint64_t seed) {
  const ProjPlaneCurve C = implicitize(c);
  const FiniteField big(c.p, 6 * c.field.degree());
  const auto map = c.field.embedding_into(big);
  const FPoly Fb = C.F.map_coefficients(big, [&](std::uint32_t v) { return map[v]; });
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, big.order() - 1);
  for (int i = 0; i < 64; ++i) {
    const std::uint32_t t = pick(rng);
    const auto [x, y] = param_point(c, big, t);
    if (!big.is_zero(Fb.eval({x, y, 1}))) return "unsound at t=" + big.to_string(t);
  }
  return "sound";
}

std::string pullback_string() {
  const IntersectionLattice L = s1_lattice();
  std::vector<int> chain;
  for (int i = 0; i < 15; ++i) chain.push_back(i);
  const auto p = mumford_pullback(L, chain, {L.index("B1"), L.index("B2")});
  return rational_string(p.intersections[0][1]) + "," + rational_string(p.intersections[0][0]) + "," + rational_string(p.intersections[1][1]);
}

std::string contraction_string() {
  const IntersectionLattice L = s1_lattice();
  const auto c = contraction_check(L, {L.index("C8")});
  return c.singularities + ";" + rational_string(c.kept_intersections[0][0]);
}

}  // namespace

std::string compute_item(const json& item, std::uint64_t seed) {
  const std::string kind = str_param(item, "kind");
  if (kind == "curve.degree") return std::to_string(implicitize(item_curve(item)).degree);
  if (kind == "curve.equation") return implicitize(item_curve(item)).F.to_string();
  if (kind == "curve.singular") return singular_summary(implicitize(item_curve(item)));
  if (kind == "curve.type") return classify(preset_germ(item_curve(item))).name();
  if (kind == "curve.delta") return delta_agreement(item_curve(item));
  if (kind == "curve.char2_r") {
    const auto s = classify(preset_germ(item_curve(item)));
    return s.char2_r ? std::to_string(*s.char2_r) : "none";
  }
  if (kind == "curve.genus") {
    const ParamCurve c = item_curve(item);
    const auto s = classify(preset_germ(c));
    return std::to_string(genus_check(implicitize(c).degree, {{s.delta, 1}}).geometric_genus);
  }
  if (kind == "curve.mult2_blowups") {
    return std::to_string(resolution_tree(preset_germ(item_curve(item)), ResolutionMode::normalization).count_with_multiplicity(2));
  }
  if (kind == "lct.curve") return lct_preset(item_curve(item), kDefaultKmax).data["lct_string"].get<std::string>();
  if (kind == "lct.xg") {
    const json x = lct_preset(item_curve(item), kDefaultKmax).data["xg"];
    return x["lct_string"].get<std::string>() + "@" + std::to_string(x["argmin"].get<long>());
  }
  if (kind == "verdict") return verdict_preset(item_curve(item), kDefaultKmax).data["verdict"].get<std::string>();
  if (kind == "bound") return std::to_string(char0_max_Am(uint_param(item, "degree")));
  if (kind == "dform") {
    const std::uint32_t d = uint_param(item, "d");
    const FiniteField K(uint_param(item, "p"));
    const auto x = FPoly::variable(K, {"x", "z"}, 0), z = FPoly::variable(K, {"x", "z"}, 1);
    const auto w = z - x.pow(d);
    return classify(w * w - z.pow(2 * d)).name();
  }
  if (kind == "germ.mult2_blowups") {
    const json r = resolve_germ(item_germ(item), {}).data;
    return std::to_string(r["blowups"]["normalization_mult2"].get<long>());
  }
  if (kind == "germ.lct") return lct_germ(item_germ(item)).data["lct_string"].get<std::string>();
  if (kind.rfind("surface.", 0) == 0) {
    const long r = uint_param(item, "r");
    const DoublePlane S = make_double_plane(r);
    if (kind == "surface.substitution") {
      const auto J = jacobian_census(S);
      const long v = J.substitution.valuation();
      FUPoly rest = J.substitution;
      std::vector<FiniteField::value_type> c;
      for (long i = v; i <= rest.degree(); ++i) c.push_back(rest.coeff(i));
      return "t^" + std::to_string(v) + "*(" + FUPoly(S.g.field(), c).to_string("t") + ")";
    }
    if (kind == "surface.census") return jacobian_census(S).summary();
    if (kind == "surface.exceptional") return std::to_string(exceptional_count(S).count);
    if (kind == "surface.picard") return std::to_string(exceptional_count(S).picard_lower_bound);
  }
  if (kind == "lattice.pullback") return pullback_string();
  if (kind == "lattice.contract") return contraction_string();
  if (kind == "implicitization.sound") return implicitization_soundness(item_curve(item), seed);
  throw usage_error("unknown item kind '" + kind + "'");
}

VerifySummary run_manifest(const std::string& manifest_text, const VerifyOptions& opt) {
  json manifest;
  try {
    manifest = json::parse(manifest_text);
  } catch (const json::parse_error& e) {
    throw usage_error(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!manifest.is_object() || !manifest.contains("items") || !manifest["items"].is_array()) {
    throw usage_error("manifest needs an 'items' array");
  }
  const json& items = manifest["items"];
  VerifySummary s;
  s.items.resize(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    const json& it = items[i];
    if (!it.is_object()) throw usage_error("manifest item " + std::to_string(i) + " is not an object");
    ItemResult& r = s.items[i];
    r.id = str_param(it, "id");
    r.kind = str_param(it, "kind");
    r.expected = str_param(it, "expected");
    r.location = it.value("location", std::string());
    r.provenance = it.value("provenance", std::string());
  }

  auto in_range = [&](const json& it) {
    if (it.contains("n") && it["n"].is_number_integer() && it["n"].get<long>() > opt.n_max) return false;
    if (it.contains("r") && it["r"].is_number_integer() && it["r"].get<long>() > opt.r_max) return false;
    return true;
  };

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      ItemResult& r = s.items[i];
      if (!in_range(items[i])) {
        r.status = ItemStatus::skipped;
        continue;
      }
      const auto t0 = std::chrono::steady_clock::now();
      try {
        r.computed = compute_item(items[i], opt.seed);
        r.status = r.computed == r.expected ? ItemStatus::pass : ItemStatus::fail;
      } catch (const std::exception& e) {
        r.computed = std::string("error: ") + e.what();
        r.status = ItemStatus::error;
      }
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  unsigned n = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  n = std::min<unsigned>(n, static_cast<unsigned>(std::max<std::size_t>(1, items.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  for (const auto& r : s.items) {
    switch (r.status) {
      case ItemStatus::pass: ++s.passed; break;
      case ItemStatus::fail: ++s.failed; break;
      case ItemStatus::skipped: ++s.skipped; break;
      case ItemStatus::error: ++s.errors; break;
    }
  }
  return s;
}

Report verify_report(const VerifySummary& s) {
  Report rep;
  json items = json::array();
  std::string text;
  for (const auto& r : s.items) {
    items.push_back({{"id", r.id},
                     {"kind", r.kind},
                     {"location", r.location},
                     {"provenance", r.provenance},
                     {"expected", r.expected},
                     {"computed", r.computed},
                     {"status", to_string(r.status)}});
    text += to_string(r.status) + " " + r.id;
    if (r.status != ItemStatus::skipped) {
      char buf[32];
      std::snprintf(buf, sizeof buf, " (%.3fs)", r.seconds);
      text += buf;
    }
    if (r.status == ItemStatus::fail || r.status == ItemStatus::error) text += "\n    expected: " + r.expected + "\n    computed: " + r.computed;
    text += "\n";
  }
  rep.data = {{"schema_version", kSchemaVersion},
              {"items", items},
              {"summary", {{"passed", s.passed}, {"failed", s.failed}, {"skipped", s.skipped}, {"errors", s.errors}, {"ok", s.ok()}}}};
  text += std::to_string(s.passed) + " passed, " + std::to_string(s.failed) + " failed, " + std::to_string(s.errors) + " errors, " +
          std::to_string(s.skipped) + " skipped\n";
  rep.text = text;
  return rep;
}

}  // namespace curvelab::app
