#pragma once

// Report builders shared by the curvelab executable, its tests and the
// acceptance runner. Every report is a JSON object with sorted keys plus a
// plain-text rendering.

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "curvelab/curve.hpp"
#include "curvelab/invariants.hpp"
#include "curvelab/resolve.hpp"
#include "curvelab/surfaces.hpp"

namespace curvelab::app {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Malformed user input; the executable maps it to exit code 2.
class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Report {
  json data;
  std::string text;
};

json rational_json(const mpq_class& q);

/// "cq2" -> C_{2^n,2}, "cq" -> C_{2^n}.
ParamCurve preset_curve(const std::string& preset, std::uint32_t n);

struct CurveOptions {
  std::uint32_t kmax = kDefaultKmax;
};

Report curve_analyze(const ProjPlaneCurve& C, const CurveOptions& opt);
ProjPlaneCurve curve_from_text(const std::string& equation, std::uint32_t p, std::uint32_t k);

/// A germ given as text over F_{p^k} (p > 0) or over Q (p = 0).
struct GermInput {
  std::string text;
  std::uint32_t p = 0;
  std::uint32_t k = 1;
};

struct ResolveOptions {
  ResolutionMode mode = ResolutionMode::normalization;
  long precision = 32;
};

Report resolve_germ(const GermInput& germ, const ResolveOptions& opt, std::string* dot = nullptr);
/// Every singular point of the preset curve, localized and resolved.
Report resolve_preset(const ParamCurve& c, const ResolveOptions& opt, std::uint32_t kmax, std::string* dot = nullptr);

Report lct_germ(const GermInput& germ);
Report lct_preset(const ParamCurve& c, std::uint32_t kmax);
Report verdict_preset(const ParamCurve& c, std::uint32_t kmax);

Report surface_census(long r);

struct LatticeInput {
  std::optional<std::string> chain;  // "A15"
  std::optional<std::string> file_text;
  std::vector<long> attach;          // chain positions for B1, B2, ...
  std::vector<std::string> exceptional;
  std::vector<std::string> curves;
};
Report lattice_pullback(const LatticeInput& in);
Report lattice_contract(const IntersectionLattice& L, const std::vector<std::string>& keep);

/// Unique singular germ of a preset curve, over the point's field.
FPoly preset_germ(const ParamCurve& c, std::uint32_t kmax = kDefaultKmax);

/// Branch parametrization of the preset's germ at infinity, as needed by delta_via_semigroup.
SemigroupResult preset_semigroup(const ParamCurve& c, long start_precision = 32);

}  // namespace curvelab::app
