#pragma once

// Truncated univariate power series with tracked precision, and the
// Weierstrass preparation of double-point germs.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "curvelab/field.hpp"
#include "curvelab/mpoly.hpp"
#include "curvelab/upoly.hpp"

namespace curvelab {

class series_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A power series known modulo x^(precision+1).
template <Field F>
class Series {
 public:
  using value_type = typename F::value_type;

  Series(F field, long precision)
      : f_(std::move(field)), prec_(precision), c_(static_cast<std::size_t>(precision + 1), f_.zero()) {
    if (precision < 0) throw series_error("negative precision");
  }
  Series(const UPoly<F>& p, long precision) : Series(p.field(), precision) {
    for (std::size_t i = 0; i < c_.size() && i < p.coeffs().size(); ++i) c_[i] = p.coeffs()[i];
  }
  static Series monomial(const F& field, value_type c, long e, long precision) {
    Series s(field, precision);
    if (e <= precision) s.c_[static_cast<std::size_t>(e)] = std::move(c);
    return s;
  }

  const F& field() const { return f_; }
  long precision() const { return prec_; }
  const value_type& operator[](long i) const { return c_.at(static_cast<std::size_t>(i)); }
  value_type& operator[](long i) { return c_.at(static_cast<std::size_t>(i)); }

  // Exact valuation when it is at most the precision.
  std::optional<long> valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (!f_.is_zero(c_[i])) return static_cast<long>(i);
    }
    return std::nullopt;
  }
  // Valuation, or precision + 1 for a series that is zero to precision.
  long valuation_bound() const { return valuation().value_or(prec_ + 1); }
  bool is_zero_to_precision() const { return !valuation().has_value(); }

  Series truncated(long precision) const {
    Series r(f_, std::min(precision, prec_));
    std::copy_n(c_.begin(), r.c_.size(), r.c_.begin());
    return r;
  }

  friend Series operator+(const Series& a, const Series& b) {
    Series r(a.f_, std::min(a.prec_, b.prec_));
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.f_.add(a.c_[i], b.c_[i]);
    return r;
  }
  friend Series operator-(const Series& a, const Series& b) {
    Series r(a.f_, std::min(a.prec_, b.prec_));
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.f_.sub(a.c_[i], b.c_[i]);
    return r;
  }
  friend Series operator*(const Series& a, const Series& b) {
    const long va = a.valuation_bound(), vb = b.valuation_bound();
    const long prec = std::min(a.prec_ + vb, b.prec_ + va);
    Series r(a.f_, prec);
    const long top = std::min<long>(prec, a.prec_ + b.prec_);
    for (long i = va; i <= std::min(a.prec_, top); ++i) {
      if (a.f_.is_zero(a.c_[i])) continue;
      for (long j = vb; j <= std::min(b.prec_, top - i); ++j) {
        r.c_[i + j] = a.f_.add(r.c_[i + j], a.f_.mul(a.c_[i], b.c_[j]));
      }
    }
    return r;
  }
  Series scaled(const value_type& s) const {
    Series r = *this;
    for (auto& v : r.c_) v = f_.mul(v, s);
    return r;
  }
  // Multiply by x^k.
  Series shifted(long k) const {
    Series r(f_, prec_ + k);
    for (long i = 0; i <= prec_; ++i) r.c_[i + k] = c_[i];
    return r;
  }

  Series inverse() const {
    if (c_.empty() || f_.is_zero(c_[0])) throw series_error("inverting a non-unit series");
    Series r(f_, prec_);
    const value_type c0i = f_.inv(c_[0]);
    r.c_[0] = c0i;
    for (long n = 1; n <= prec_; ++n) {
      value_type acc = f_.zero();
      for (long k = 1; k <= n; ++k) {
        if (!f_.is_zero(c_[k])) acc = f_.add(acc, f_.mul(c_[k], r.c_[n - k]));
      }
      r.c_[n] = f_.neg(f_.mul(acc, c0i));
    }
    return r;
  }

  // this(t(x)) for t of positive valuation.
  Series compose(const Series& t) const {
    const auto vt = t.valuation();
    if (!vt) return Series(f_, std::min(prec_, t.prec_)).plus_constant(c_[0]);
    if (*vt == 0) throw series_error("composing with a series of valuation 0");
    const long prec = std::min(prec_, t.prec_);
    Series r(f_, prec);
    Series power = Series::monomial(f_, f_.one(), 0, prec);
    for (long k = 0; k <= prec && k * *vt <= prec; ++k) {
      if (!f_.is_zero(c_[k])) {
        for (long i = 0; i <= prec; ++i) r.c_[i] = f_.add(r.c_[i], f_.mul(c_[k], power.c_[i]));
      }
      power = (power * t).truncated(prec);
    }
    return r;
  }

  bool operator==(const Series& o) const {
    if (prec_ != o.prec_) return false;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (!f_.eq(c_[i], o.c_[i])) return false;
    }
    return true;
  }

  UPoly<F> to_poly() const { return UPoly<F>(f_, c_); }

  std::string to_string(const std::string& var = "x") const {
    return to_poly().to_string(var) + "+O(" + var + "^" + std::to_string(prec_ + 1) + ")";
  }

 private:
  F f_;
  long prec_;
  std::vector<value_type> c_;

  Series plus_constant(const value_type& v) const {
    Series r = *this;
    r.c_[0] = f_.add(r.c_[0], v);
    return r;
  }
};

// ---------------------------------------------------------------------------
// Weierstrass preparation

template <Field F>
struct WeierstrassForm {
  Series<F> a;
  Series<F> b;
  // Linear coordinate change applied before preparation ("" if none).
  std::string coordinate_change;
};

/// Prepare a double-point germ f(x, z) (variables in that order, z
/// distinguished) as unit * (z^2 + a(x) z + b(x)) modulo x^(N+1). In
/// characteristic != 2 the square is completed so that a = 0.
template <Field F>
WeierstrassForm<F> weierstrass_form(const MPoly<F>& germ, long precision) {
  using V = typename F::value_type;
  const F& K = germ.field();
  if (germ.nvars() != 2) throw series_error("weierstrass_form expects a germ in two variables");
  if (germ.order() != 2) throw series_error("weierstrass_form: germ multiplicity is not 2");
  MPoly<F> f = germ;
  std::string change;
  const auto& vars = germ.vars();
  {
    const MPoly<F> q = f.homogeneous_part(2);
    const bool has_zz = !K.is_zero(q.coeff({0, 2}));
    const bool has_xx = !K.is_zero(q.coeff({2, 0}));
    if (!has_zz && has_xx) {
      f = f.compose({MPoly<F>::variable(K, vars, 1), MPoly<F>::variable(K, vars, 0)});
      change = vars[0] + "<->" + vars[1];
    } else if (!has_zz) {
      // Only the mixed term: x -> x + z creates z^2.
      f = f.substitute(0, MPoly<F>::variable(K, vars, 0) + MPoly<F>::variable(K, vars, 1));
      change = vars[0] + "->" + vars[0] + "+" + vars[1];
      if (K.is_zero(f.homogeneous_part(2).coeff({0, 2}))) {
        throw series_error("weierstrass_form: germ is not z-regular of order 2");
      }
    }
  }
  const long N = precision;
  const long D = f.degree_in(1);
  // Dense table fx[j][i]: coefficient of x^j z^i.
  std::vector<std::vector<V>> fx(static_cast<std::size_t>(N + 1), std::vector<V>(static_cast<std::size_t>(D + 1), K.zero()));
  for (const auto& [e, c] : f.terms()) {
    if (e[0] <= static_cast<std::uint32_t>(N)) fx[e[0]][e[1]] = c;
  }
  // f mod x = z^2 * h0 with h0(0) != 0.
  std::vector<V> h0(static_cast<std::size_t>(D - 1), K.zero());
  for (long i = 2; i <= D; ++i) h0[i - 2] = fx[0][i];
  if (K.is_zero(h0[0]) || !K.is_zero(fx[0][0]) || !K.is_zero(fx[0][1])) {
    throw series_error("weierstrass_form: germ is not z-regular of order 2");
  }
  // t = h0^{-1} mod z^2.
  const V t0 = K.inv(h0[0]);
  const V t1 = D >= 3 ? K.neg(K.mul(h0[1], K.mul(t0, t0))) : K.zero();
  std::vector<std::array<V, 2>> W(static_cast<std::size_t>(N + 1), {K.zero(), K.zero()});
  std::vector<std::vector<V>> H(static_cast<std::size_t>(N + 1), std::vector<V>(static_cast<std::size_t>(D - 1), K.zero()));
  H[0] = h0;
  std::vector<V> e(static_cast<std::size_t>(D + 1));
  for (long j = 1; j <= N; ++j) {
    e = fx[j];
    for (long k = 1; k < j; ++k) {
      const auto& w = W[k];
      const auto& h = H[j - k];
      for (int wi = 0; wi < 2; ++wi) {
        if (K.is_zero(w[wi])) continue;
        for (long hi = 0; hi < D - 1; ++hi) {
          if (!K.is_zero(h[hi])) e[wi + hi] = K.sub(e[wi + hi], K.mul(w[wi], h[hi]));
        }
      }
    }
    const V w0 = K.mul(t0, e[0]);
    const V w1 = K.add(K.mul(t0, e[1]), K.mul(t1, e[0]));
    W[j] = {w0, w1};
    // e - W_j h0 is divisible by z^2.
    for (long hi = 0; hi < D - 1; ++hi) {
      e[hi] = K.sub(e[hi], K.mul(w0, h0[hi]));
      e[hi + 1] = K.sub(e[hi + 1], K.mul(w1, h0[hi]));
    }
    if (!K.is_zero(e[0]) || !K.is_zero(e[1])) throw series_error("weierstrass_form: Hensel step failed");
    for (long hi = 0; hi < D - 1; ++hi) H[j][hi] = e[hi + 2];
  }
  Series<F> a(K, N), b(K, N);
  for (long j = 1; j <= N; ++j) {
    a[j] = W[j][1];
    b[j] = W[j][0];
  }
  if (K.characteristic() != 2) {
    // z -> z - a/2 turns z^2 + a z + b into z^2 + (b - a^2/4).
    const V quarter = K.inv(K.from_int(4));
    b = b - (a * a).scaled(quarter).truncated(N);
    a = Series<F>(K, N);
  }
  return {std::move(a), std::move(b), change};
}

template <Field F>
struct ArtinSchreierReduction {
  std::optional<long> ord_a;
  std::optional<long> ord_b;  // lowest irreducible term of b up to the cutoff
  Series<F> b;                // reduced b
  int substitutions = 0;
};

/// Greedy reduction of z^2 + a z + b under z -> z + c (char 2), which changes
/// b by c^2 + a c. Terms of b are killed from the bottom while they lie in the
/// image of c -> c^2 + a c; stops at the first irreducible term or the cutoff.
template <Field F>
ArtinSchreierReduction<F> artin_schreier_reduce(const Series<F>& a, Series<F> b, long cutoff) {
  const F& K = a.field();
  if (K.characteristic() != 2) throw series_error("Artin-Schreier reduction needs characteristic 2");
  if (cutoff > b.precision() || cutoff > a.precision()) {
    throw series_error("Artin-Schreier cutoff exceeds series precision");
  }
  ArtinSchreierReduction<F> out{a.valuation(), std::nullopt, b, 0};
  const long N = std::min(a.precision(), b.precision());
  const std::optional<long> r = out.ord_a;
  long start = 0;
  while (true) {
    long e = -1;
    for (long i = start; i <= cutoff; ++i) {
      if (!K.is_zero(b[i])) {
        e = i;
        break;
      }
    }
    if (e < 0) break;
    start = e;
    const auto beta = b[e];
    std::optional<Series<F>> c;
    if (e % 2 == 0 && (!r || e / 2 < *r)) {
      c = Series<F>::monomial(K, K.pth_root(beta), e / 2, N);
    } else if (r && e > 2 * *r) {
      c = Series<F>::monomial(K, K.div(beta, a[*r]), e - *r, N);
    } else if (r && e == 2 * *r) {
      // Need gamma with gamma^2 + a_r gamma = beta.
      if constexpr (is_finite_field_v<F>) {
        for (auto g : K.elements()) {
          if (K.eq(K.add(K.mul(g, g), K.mul(a[*r], g)), beta)) {
            c = Series<F>::monomial(K, g, *r, N);
            break;
          }
        }
      }
    }
    if (!c) {
      out.ord_b = e;
      break;
    }
    b = (b + (*c * *c).truncated(N) + (a * *c).truncated(N)).truncated(N);
    ++out.substitutions;
    if (!K.is_zero(b[e])) throw series_error("Artin-Schreier step did not cancel the target term");
  }
  out.b = b;
  return out;
}

}  // namespace curvelab
