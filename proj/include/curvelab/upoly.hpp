#pragma once

// Dense univariate polynomials over a Field.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "curvelab/field.hpp"

namespace curvelab {

template <Field F>
class UPoly {
 public:
  using value_type = typename F::value_type;

  explicit UPoly(F field) : f_(std::move(field)) {}
  UPoly(F field, std::vector<value_type> coeffs) : f_(std::move(field)), c_(std::move(coeffs)) { trim(); }

  static UPoly monomial(const F& field, value_type c, std::size_t e) {
    std::vector<value_type> v(e + 1, field.zero());
    v[e] = std::move(c);
    return UPoly(field, std::move(v));
  }
  static UPoly x(const F& field) { return monomial(field, field.one(), 1); }
  static UPoly constant(const F& field, value_type c) { return UPoly(field, {std::move(c)}); }

  const F& field() const { return f_; }
  const std::vector<value_type>& coeffs() const { return c_; }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  value_type coeff(std::size_t i) const { return i < c_.size() ? c_[i] : f_.zero(); }
  const value_type& lc() const { return c_.back(); }

  // Index of the lowest nonzero coefficient; -1 for zero.
  long valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (!f_.is_zero(c_[i])) return static_cast<long>(i);
    }
    return -1;
  }

  value_type eval(const value_type& a) const {
    value_type acc = f_.zero();
    for (std::size_t i = c_.size(); i-- > 0;) acc = f_.add(f_.mul(acc, a), c_[i]);
    return acc;
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<value_type> r(std::max(a.c_.size(), b.c_.size()), a.f_.zero());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.f_.add(a.coeff(i), b.coeff(i));
    return UPoly(a.f_, std::move(r));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<value_type> r(std::max(a.c_.size(), b.c_.size()), a.f_.zero());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.f_.sub(a.coeff(i), b.coeff(i));
    return UPoly(a.f_, std::move(r));
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly(a.f_);
    std::vector<value_type> r(a.c_.size() + b.c_.size() - 1, a.f_.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.f_.is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        r[i + j] = a.f_.add(r[i + j], a.f_.mul(a.c_[i], b.c_[j]));
      }
    }
    return UPoly(a.f_, std::move(r));
  }
  UPoly scaled(const value_type& s) const {
    std::vector<value_type> r = c_;
    for (auto& v : r) v = f_.mul(v, s);
    return UPoly(f_, std::move(r));
  }
  bool operator==(const UPoly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (!f_.eq(c_[i], o.c_[i])) return false;
    }
    return true;
  }

  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<value_type> r = c_;
    const long dd = d.degree();
    if (degree() < dd) return {UPoly(f_), *this};
    std::vector<value_type> q(static_cast<std::size_t>(degree() - dd + 1), f_.zero());
    const value_type li = f_.inv(d.lc());
    for (long i = degree(); i >= dd; --i) {
      const value_type c = f_.mul(r[i], li);
      q[i - dd] = c;
      if (f_.is_zero(c)) continue;
      for (long j = 0; j <= dd; ++j) r[i - dd + j] = f_.sub(r[i - dd + j], f_.mul(c, d.c_[j]));
    }
    r.resize(static_cast<std::size_t>(dd));
    return {UPoly(f_, std::move(q)), UPoly(f_, std::move(r))};
  }
  UPoly operator%(const UPoly& d) const { return divmod(d).second; }
  UPoly operator/(const UPoly& d) const { return divmod(d).first; }

  UPoly monic() const {
    if (is_zero()) return *this;
    return scaled(f_.inv(lc()));
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return UPoly(f_);
    std::vector<value_type> r(c_.size() - 1, f_.zero());
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = f_.mul(f_.from_int(static_cast<long long>(i)), c_[i]);
    return UPoly(f_, std::move(r));
  }

  std::string to_string(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (f_.is_zero(c_[i])) continue;
      std::string c = f_.to_string(c_[i]);
      if (!out.empty()) out += "+";
      const bool wrap = c.find_first_of("+-", 1) != std::string::npos;
      if (i == 0) {
        out += wrap ? "(" + c + ")" : c;
      } else {
        if (!f_.is_one(c_[i])) out += (wrap ? "(" + c + ")" : c) + "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  F f_;
  std::vector<value_type> c_;

  void trim() {
    while (!c_.empty() && f_.is_zero(c_.back())) c_.pop_back();
  }
};

template <Field F>
UPoly<F> gcd(UPoly<F> a, UPoly<F> b) {
  while (!b.is_zero()) {
    UPoly<F> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

template <Field F>
UPoly<F> pow_mod(UPoly<F> base, std::uint64_t e, const UPoly<F>& m) {
  UPoly<F> r = UPoly<F>::constant(base.field(), base.field().one()) % m;
  base = base % m;
  for (; e; e >>= 1) {
    if (e & 1) r = (r * base) % m;
    base = (base * base) % m;
  }
  return r;
}

template <Field F>
UPoly<F> upow(UPoly<F> base, std::uint64_t e) {
  UPoly<F> r = UPoly<F>::constant(base.field(), base.field().one());
  for (; e; e >>= 1) {
    if (e & 1) r = r * base;
    if (e > 1) base = base * base;
  }
  return r;
}

// p-th root of a polynomial whose derivative vanishes (finite fields only).
inline UPoly<FiniteField> pth_root_poly(const UPoly<FiniteField>& f) {
  const auto& F = f.field();
  const std::uint32_t p = F.characteristic();
  std::vector<FiniteField::value_type> r;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) r.push_back(F.pth_root(f.coeffs()[i]));
  return UPoly<FiniteField>(F, std::move(r));
}

/// Squarefree part (product of the distinct monic irreducible factors).
template <Field F>
UPoly<F> radical(const UPoly<F>& f) {
  if (f.degree() <= 0) return UPoly<F>::constant(f.field(), f.field().one());
  UPoly<F> d = f.derivative();
  if constexpr (is_finite_field_v<F>) {
    if (d.is_zero()) return radical(pth_root_poly(f));
    UPoly<F> c = gcd(f, d);
    UPoly<F> w = f / c;  // factors of multiplicity prime to p
    UPoly<F> rest = c;
    for (UPoly<F> g = gcd(rest, w); g.degree() > 0; g = gcd(rest, w)) rest = rest / g;
    if (rest.degree() <= 0) return w.monic();
    UPoly<F> extra = radical(pth_root_poly(rest));
    return (w * (extra / gcd(extra, w))).monic();
  } else {
    return (f / gcd(f, d)).monic();
  }
}

/// Roots of f lying in its own coefficient field, with multiplicities.
template <Field F>
std::vector<std::pair<typename F::value_type, int>> roots_with_multiplicity(const UPoly<F>& f);

template <>
inline std::vector<std::pair<FiniteField::value_type, int>> roots_with_multiplicity(const UPoly<FiniteField>& f) {
  std::vector<std::pair<FiniteField::value_type, int>> out;
  if (f.degree() <= 0) return out;
  const FiniteField& F = f.field();
  // Restrict the search to the split part gcd(f, x^q - x).
  UPoly<FiniteField> xq = pow_mod(UPoly<FiniteField>::x(F), F.order(), f);
  UPoly<FiniteField> g = gcd(f, xq - UPoly<FiniteField>::x(F));
  long remaining = g.degree();
  if (remaining <= 0) return out;
  for (auto a : F.elements()) {
    if (remaining == 0) break;
    if (!F.is_zero(g.eval(a))) continue;
    --remaining;
    int mult = 0;
    UPoly<FiniteField> h = f;
    const UPoly<FiniteField> lin(F, {F.neg(a), F.one()});
    while (true) {
      auto [q, r] = h.divmod(lin);
      if (!r.is_zero()) break;
      ++mult;
      h = std::move(q);
    }
    out.emplace_back(a, mult);
  }
  return out;
}

namespace detail {

inline std::vector<mpz_class> positive_divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<mpz_class> small, large;
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
    if (d > 1000000) throw std::domain_error("coefficient too large for rational root search");
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace detail

template <>
inline std::vector<std::pair<Rational, int>> roots_with_multiplicity(const UPoly<RationalField>& f) {
  std::vector<std::pair<Rational, int>> out;
  if (f.degree() <= 0) return out;
  RationalField Q;
  UPoly<RationalField> h = f;
  // Zero root first, then the rational root theorem on the rest.
  auto strip = [&](const Rational& a) {
    int mult = 0;
    const UPoly<RationalField> lin(Q, {-a, Rational(1)});
    while (true) {
      auto [q, r] = h.divmod(lin);
      if (!r.is_zero()) break;
      ++mult;
      h = std::move(q);
    }
    return mult;
  };
  if (int m = strip(Rational(0)); m > 0) out.emplace_back(Rational(0), m);
  if (h.degree() <= 0) return out;
  mpz_class den = 1;
  for (const auto& c : h.coeffs()) den = lcm(den, c.get_den());
  std::vector<mpz_class> ints;
  for (const auto& c : h.coeffs()) ints.push_back(mpz_class(c * den));
  auto ps = detail::positive_divisors(ints.front());
  auto qs = detail::positive_divisors(ints.back());
  std::vector<Rational> candidates;
  for (const auto& p : ps) {
    for (const auto& q : qs) {
      Rational r(p, q);
      r.canonicalize();
      candidates.push_back(r);
      candidates.push_back(-r);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (const auto& a : candidates) {
    if (h.degree() <= 0) break;
    if (sgn(h.eval(a)) != 0) continue;
    out.emplace_back(a, strip(a));
  }
  return out;
}

/// Smallest j <= j_max such that every root of f lies in the degree-j
/// extension of f's field; nullopt if none.
inline std::optional<std::uint32_t> splitting_degree(const UPoly<FiniteField>& f, std::uint32_t j_max) {
  const FiniteField& F = f.field();
  UPoly<FiniteField> r = radical(f);
  if (r.degree() <= 0) return 1;
  const auto x = UPoly<FiniteField>::x(F);
  UPoly<FiniteField> xp = x % r;
  for (std::uint32_t j = 1; j <= j_max; ++j) {
    xp = pow_mod(xp, F.order(), r);
    if ((xp - x) % r == UPoly<FiniteField>(F)) return j;
  }
  return std::nullopt;
}

template <class G>
UPoly<G> base_change(const UPoly<FiniteField>& f, const G& big, const std::vector<std::uint32_t>& map) {
  std::vector<typename G::value_type> c;
  c.reserve(f.coeffs().size());
  for (auto v : f.coeffs()) c.push_back(map[v]);
  return UPoly<G>(big, std::move(c));
}

}  // namespace curvelab
