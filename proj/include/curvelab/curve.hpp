#pragma once

// Parametrized curves t -> (t^q, g(t^p) + t), projective plane curves over
// finite fields, and their singular points.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "curvelab/field.hpp"
#include "curvelab/mpoly.hpp"
#include "curvelab/series.hpp"
#include "curvelab/upoly.hpp"

namespace curvelab {

using FPoly = MPoly<FiniteField>;
using FUPoly = UPoly<FiniteField>;
using FSeries = Series<FiniteField>;

class curve_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// t -> (t^q, g(t^p) + t) over F_p with q = p^n.
struct ParamCurve {
  FiniteField field;
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::uint32_t q = 0;
  FUPoly g;
  long r = 0;  // p * deg g - q
  std::string label;

  long deg_g() const { return g.degree(); }
};

ParamCurve make_param_curve(std::uint32_t p, std::uint32_t n, const FUPoly& g, std::string label = "");
/// C_{2^n,2}: p = 2, g(u) = u^(2^(n-1)+1).
ParamCurve c_q2(std::uint32_t n);
/// C_{2^n}: p = 2, g(u) = u^(2^(n-1)-1); n >= 2.
ParamCurve c_q(std::uint32_t n);
/// Affine point phi(t) = (t^q, g(t^p) + t) over an extension `big` of F_p.
std::pair<std::uint32_t, std::uint32_t> param_point(const ParamCurve& c, const FiniteField& big, std::uint32_t t);

/// Homogeneous form F(x, y, z) of degree d.
struct ProjPlaneCurve {
  FiniteField field;
  FPoly F;
  long degree = 0;
  std::string label;
  // F is the implicitization resultant's p^e-th root (1 when not a power).
  std::uint32_t resultant_exponent = 1;
};

ProjPlaneCurve make_proj_curve(FPoly F, std::string label = "");
/// Parse a form in x, y, z; an affine equation in x, y is homogenized with z.
ProjPlaneCurve curve_from_equation(const FiniteField& field, const std::string& text, std::string label = "");
ProjPlaneCurve implicitize(const ParamCurve& c);

struct CurvePoint {
  FiniteField field;  // minimal extension of the curve's field containing the coordinates
  std::array<std::uint32_t, 3> coords{};  // first nonzero coordinate is 1
  int multiplicity = 1;
  std::vector<std::uint32_t> base_map;  // embedding of the curve's field into `field`
  std::vector<std::array<std::uint32_t, 3>> orbit;  // conjugates over the curve's field

  std::string to_string() const;
};

struct ChartCertificate {
  std::string chart;  // "z=1", "y=1" or "x=1"
  bool smooth_by_unit = false;  // a nonzero constant lies in (f, f_u, f_v)
  long elim_degree_u = -1;      // degree of the radical of the eliminant in each variable
  long elim_degree_v = -1;
  std::uint32_t split_u = 1;
  std::uint32_t split_v = 1;
  std::size_t candidates = 0;
  std::size_t found = 0;
};

/// Every root of each chart eliminant lies in F_{p^{search_degree}}, all
/// root pairs there were tested, and the three charts agree on overlaps.
struct SingularCertificate {
  std::vector<ChartCertificate> charts;
  std::uint32_t search_degree = 1;  // over the curve's field
  bool charts_agree = true;
  bool valid = false;
};

struct SingularReport {
  std::vector<CurvePoint> points;
  SingularCertificate certificate;
};

inline constexpr std::uint32_t kDefaultKmax = 8;

SingularReport singular_points(const ProjPlaneCurve& C, std::uint32_t k_max = kDefaultKmax);

/// Dehomogenize at the first nonzero coordinate of P and move P to the origin.
struct LocalGerm {
  FPoly f;            // over P.field, in the two remaining variables
  std::string chart;  // e.g. "y=1"
};
LocalGerm localize(const ProjPlaneCurve& C, const CurvePoint& P);
int multiplicity_at(const ProjPlaneCurve& C, const CurvePoint& P);
/// Point on C with coordinates in the curve's own field.
CurvePoint rational_point(const ProjPlaneCurve& C, std::array<std::uint32_t, 3> coords);

struct EmbeddingReport {
  bool immersion = false;
  bool birational = false;  // t lies in F(P(t), Q(t))
  bool injective = false;   // birational and no two parameters share an image point
};
EmbeddingReport embedding_check(const FUPoly& P, const FUPoly& Q, std::uint32_t k_max = kDefaultKmax);
EmbeddingReport embedding_check(const ParamCurve& c);

struct GenusReport {
  long arithmetic_genus = 0;
  long delta_sum = 0;
  long geometric_genus = 0;
};
/// deltas: (delta, number of conjugate points) per singular orbit.
GenusReport genus_check(long degree, const std::vector<std::pair<long, long>>& deltas);

/// Local parametrization of the branch of C_{q,g} at its point at infinity,
/// in the chart and variable order used by localize(), u = 1/t.
struct BranchSeries {
  std::string chart;
  std::array<std::uint32_t, 3> point{};
  FSeries first;
  FSeries second;
};
BranchSeries branch_at_infinity(const ParamCurve& c, long precision);

}  // namespace curvelab
