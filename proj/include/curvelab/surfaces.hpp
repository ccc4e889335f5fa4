#pragma once

// Double planes S_r : u^2 + u(z y^2r + x^(2r+1)) + x z^(4r+1) + z^2 y^4r + x^(4r+2) = 0
// in P(1,1,1,2r+1) over F_2, and rational intersection lattices.

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "curvelab/curve.hpp"

namespace curvelab {

class surface_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DoublePlane {
  long r = 0;
  long q = 0;        // largest 2-power dividing 2r
  long r_prime = 0;  // 2r = q r', r' odd
  FPoly g{FiniteField(2), {"x", "z", "u"}};              // chart y = 1
  FPoly weighted{FiniteField(2), {"x", "y", "z", "u"}};  // weights 1, 1, 1, 2r+1
};

DoublePlane make_double_plane(long r);

struct CensusEntry {
  std::string location;
  long type_index = 0;  // A_{type_index}
  long count = 0;       // geometric points
  long local_length = 0;
  std::uint32_t field_degree = 1;  // points are defined over F_{2^field_degree}
};

struct JacobianCensus {
  long r = 0;
  FPoly g_x{FiniteField(2), {"x", "z", "u"}};
  FPoly g_z{FiniteField(2), {"x", "z", "u"}};
  FPoly g_u{FiniteField(2), {"x", "z", "u"}};
  FUPoly z_on_curve{FiniteField(2)};    // g_u = 0 gives z = z_on_curve(x)
  FUPoly u_on_curve{FiniteField(2)};    // then g_z = 0 gives u = u_on_curve(x)
  FUPoly substitution{FiniteField(2)};  // g(t, z(t), u(t))
  bool monomial_curve = false;
  bool g_x_vanishes = false;
  bool factorization = false;  // substitution = t^(8r^2+6r+2) (t^(8r^2+2r) + 1)
  bool frobenius_identity = false;  // t^(2r(4r+1)) + 1 = (t^(r'(4r+1)) + 1)^q
  std::vector<CensusEntry> entries;

  long total_index() const {
    long s = 0;
    for (const auto& e : entries) s += e.count * e.type_index;
    return s;
  }
  std::string summary() const;  // e.g. "A_15 + 5A_1"
};

/// Throws surface_error with the residual when an identity fails.
JacobianCensus jacobian_census(const DoublePlane& S);

struct ExceptionalCount {
  long count = 0;
  long picard_lower_bound = 0;
  long betti2 = 0;
};

/// r must be a 2-power.
ExceptionalCount exceptional_count(const DoublePlane& S);

/// Singular points of S_r off the chart y = 1: a nonzero constant among the
/// partials on {y = 0, x = 1}, and gcd(G, partials) = 1 on the line {x = y = 0, z = 1}.
struct InfinityCheck {
  bool chart_x_smooth = false;
  bool chart_z_smooth = false;
  bool no_point_at_u_vertex = false;  // (0:0:0:1) is off the surface
};
InfinityCheck infinity_check(const DoublePlane& S);

// ---------------------------------------------------------------------------
// Intersection lattices

struct IntersectionLattice {
  std::vector<std::string> names;
  std::vector<mpq_class> self;
  std::map<std::pair<int, int>, mpq_class> edges;  // i < j

  int add_vertex(const std::string& name, const mpq_class& self_intersection);
  void add_edge(int a, int b, const mpq_class& mult);
  int index(const std::string& name) const;
  mpq_class dot(int i, int j) const;
  std::size_t size() const { return names.size(); }

  /// Lines "name self-int" and "name name mult"; '#' starts a comment.
  static IntersectionLattice parse(const std::string& text);
  std::string to_text() const;
};

/// C1 - C2 - ... - Cn of (-2)-curves.
IntersectionLattice chain_lattice(long n, const std::string& prefix = "C");
/// Resolution of S_1: the A_15 chain with B1 at C3 and B2 at C13, plus five (-2)-curves P1..P5.
IntersectionLattice s1_lattice(long b1_at = 3, long b2_at = 13);

struct DefinitenessReport {
  bool negative_definite = false;
  std::vector<mpq_class> leading_minors;
};
DefinitenessReport check_negative_definite(const IntersectionLattice& L, const std::vector<int>& subset);

struct PullbackResult {
  std::vector<int> exceptional;
  std::vector<int> curves;
  std::vector<std::vector<mpq_class>> coefficients;   // per curve, over `exceptional`
  std::vector<std::vector<mpq_class>> intersections;  // curves x curves on the contracted surface
};

/// Pullback B + sum v_j C_j orthogonal to every C_j.
PullbackResult mumford_pullback(const IntersectionLattice& L, const std::vector<int>& exceptional, const std::vector<int>& curves);

struct Cluster {
  std::vector<int> vertices;
  std::string type;  // "A15", "E8", ...
};

struct ContractionResult {
  std::vector<Cluster> clusters;
  std::string singularities;  // e.g. "2E8+5A1"; empty when nothing is contracted
  std::vector<int> kept;
  std::vector<std::vector<mpq_class>> kept_intersections;
};

/// Contract everything outside `keep`; each cluster must be an ADE configuration.
ContractionResult contraction_check(const IntersectionLattice& L, const std::vector<int>& keep);

/// ADE name of a graph of (-2)-curves by isomorphism with the reference diagrams, or "".
std::string ade_type(const IntersectionLattice& L, const std::vector<int>& vertices);

/// Positions (i, j) on an A_n chain for B1, B2 (self-intersection b_self) reproducing the targets.
std::vector<std::pair<long, long>> consistent_attachments(long n, const mpq_class& b_self, const mpq_class& target_b1b2,
                                                          const mpq_class& target_b1sq, const mpq_class& target_b2sq);

}  // namespace curvelab
