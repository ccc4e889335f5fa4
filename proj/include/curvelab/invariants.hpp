#pragma once

// Log canonical thresholds from blow-up ledgers, the threefold ledger of
// X_g : g(x, y, z) + x^m + y^m + z^m = 0, and liftability obstructions.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "curvelab/resolve.hpp"

namespace curvelab {

class invariant_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DivisorLedgerEntry {
  int id = 0;
  long a = 0;  // order of the ideal's total transform along the divisor
  long k = 0;  // discrepancy
  int ambient_dim = 2;
  std::vector<int> through;  // earlier divisors containing the blown-up center

  mpq_class lct_candidate() const {
    mpq_class q(k + 1, a);
    q.canonicalize();
    return q;
  }
};

struct LctResult {
  mpq_class value = 1;
  int argmin = -1;     // ledger index attaining the minimum; -1 when smooth
  bool smooth = false; // empty ledger: value is 1 by convention
};

/// Minimum of (k+1)/a over an embedded resolution.
LctResult lct_plane_germ(const BlowupTree& embedded_tree);

std::vector<DivisorLedgerEntry> plane_ledger(const BlowupTree& tree);

struct XgLedger {
  long degree = 0;
  long odd_exponent = 0;  // the m in x^m + y^m + z^m; recorded, never used
  std::vector<DivisorLedgerEntry> entries;
};

/// Blow up the origin of A^3 (entry 0), then the infinitely near singular
/// points of the degree-d tangent-cone curve, read from its normalization tree.
/// Each later center lies on E_0 and on E_{j+1} whenever the curve tree's
/// node passes through the curve divisor e_j.
XgLedger xg_ledger(long degree, const BlowupTree& curve_tree, long odd_exponent = 0);

LctResult lct_xg(const XgLedger& ledger);

/// Largest A_m on a degree-2d plane curve in characteristic 0 allowed by the bound 3d(d-1)+1.
long char0_max_Am(long degree);

enum class Verdict { obstructed, not_obstructed };
inline std::string to_string(Verdict v) { return v == Verdict::obstructed ? "obstructed" : "not_obstructed"; }

struct LiftingVerdict {
  std::string curve;
  long degree = 0;
  long m = 0;
  long char0_max = 0;
  Verdict verdict = Verdict::not_obstructed;
  std::string reason;
};

/// A_{2r} lifts with discrepancies preserved only if some char-0 curve of
/// the same degree carries A_{2r} or A_{2r-1}; obstructed iff 2r-1 exceeds the bound.
LiftingVerdict lifting_verdict(long degree, long m, std::string curve = "");

/// "p/q", or "p" for integers.
std::string rational_string(const mpq_class& q);

}  // namespace curvelab
