#pragma once

// Sparse multivariate polynomials over a Field, stored in graded-lex order.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "curvelab/field.hpp"
#include "curvelab/upoly.hpp"

namespace curvelab {

using Exponents = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

/// Graded lex, x_0 > x_1 > ...; "greater" sorts the leading term first.
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    const auto da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return b < a;
  }
};

class poly_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <Field F>
class MPoly {
 public:
  using value_type = typename F::value_type;
  using TermMap = std::map<Exponents, value_type, GrlexGreater>;

  MPoly(F field, std::vector<std::string> vars) : f_(std::move(field)), vars_(std::move(vars)) {}

  static MPoly constant(const F& field, std::vector<std::string> vars, value_type c) {
    MPoly r(field, std::move(vars));
    r.add_term(Exponents(r.nvars(), 0), std::move(c));
    return r;
  }
  static MPoly variable(const F& field, std::vector<std::string> vars, std::size_t i) {
    MPoly r(field, std::move(vars));
    Exponents e(r.nvars(), 0);
    e.at(i) = 1;
    r.add_term(std::move(e), field.one());
    return r;
  }
  static MPoly variable(const F& field, std::vector<std::string> vars, const std::string& name) {
    MPoly r(field, vars);
    return variable(field, std::move(vars), r.var_index(name));
  }
  static MPoly monomial(const F& field, std::vector<std::string> vars, Exponents e, value_type c) {
    MPoly r(field, std::move(vars));
    r.add_term(std::move(e), std::move(c));
    return r;
  }

  const F& field() const { return f_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  std::size_t var_index(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) throw poly_error("unknown variable '" + name + "'");
    return static_cast<std::size_t>(it - vars_.begin());
  }

  void add_term(Exponents e, const value_type& c) {
    if (e.size() != nvars()) throw poly_error("exponent vector has wrong length");
    if (f_.is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(std::move(e), c);
    if (!inserted) {
      it->second = f_.add(it->second, c);
      if (f_.is_zero(it->second)) terms_.erase(it);
    }
  }

  value_type coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? f_.zero() : it->second;
  }

  bool is_constant() const { return is_zero() || (size() == 1 && curvelab::total_degree(terms_.begin()->first) == 0); }
  value_type constant_term() const { return coeff(Exponents(nvars(), 0)); }

  const std::pair<const Exponents, value_type>& leading_term() const {
    if (is_zero()) throw poly_error("leading term of zero polynomial");
    return *terms_.begin();
  }

  long total_degree() const {
    long d = -1;
    for (const auto& [e, c] : terms_) d = std::max<long>(d, static_cast<long>(curvelab::total_degree(e)));
    return d;
  }
  // Lowest total degree of a term (the multiplicity at the origin); -1 for zero.
  long order() const {
    long d = -1;
    for (const auto& [e, c] : terms_) {
      const long t = static_cast<long>(curvelab::total_degree(e));
      if (d < 0 || t < d) d = t;
    }
    return d;
  }
  long degree_in(std::size_t i) const {
    long d = -1;
    for (const auto& [e, c] : terms_) d = std::max<long>(d, e[i]);
    return d;
  }
  bool involves(std::size_t i) const { return degree_in(i) > 0; }
  bool is_homogeneous() const {
    if (is_zero()) return true;
    const auto d = curvelab::total_degree(terms_.begin()->first);
    return std::all_of(terms_.begin(), terms_.end(),
                       [d](const auto& t) { return curvelab::total_degree(t.first) == d; });
  }

  MPoly homogeneous_part(std::uint64_t d) const {
    MPoly r(f_, vars_);
    for (const auto& [e, c] : terms_) {
      if (curvelab::total_degree(e) == d) r.terms_.emplace(e, c);
    }
    return r;
  }

  // Coefficient of var_i^k as a polynomial in the same universe.
  MPoly coeff_in(std::size_t i, std::uint32_t k) const {
    MPoly r(f_, vars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] != k) continue;
      Exponents g = e;
      g[i] = 0;
      r.terms_.emplace(std::move(g), c);
    }
    return r;
  }

  MPoly& operator+=(const MPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    check_compatible(o);
    for (const auto& [e, c] : o.terms_) add_term(e, f_.neg(c));
    return *this;
  }
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  MPoly operator-() const { return scaled(f_.neg(f_.one())); }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    a.check_compatible(b);
    MPoly r(a.f_, a.vars_);
    Exponents e(a.nvars());
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, a.f_.mul(ca, cb));
      }
    }
    return r;
  }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  MPoly scaled(const value_type& s) const {
    MPoly r(f_, vars_);
    if (f_.is_zero(s)) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, f_.mul(c, s));
    return r;
  }
  // Multiply by a monomial.
  MPoly shifted(const Exponents& m) const {
    MPoly r(f_, vars_);
    for (const auto& [e, c] : terms_) {
      Exponents g = e;
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += m[i];
      r.terms_.emplace(std::move(g), c);
    }
    return r;
  }

  MPoly pow(std::uint64_t n) const {
    MPoly r = constant(f_, vars_, f_.one());
    MPoly b = *this;
    for (; n; n >>= 1) {
      if (n & 1) r *= b;
      if (n > 1) b *= b;
    }
    return r;
  }

  bool operator==(const MPoly& o) const {
    if (vars_ != o.vars_ || terms_.size() != o.terms_.size()) return false;
    auto it = o.terms_.begin();
    for (const auto& [e, c] : terms_) {
      if (e != it->first || !f_.eq(c, it->second)) return false;
      ++it;
    }
    return true;
  }

  // Formal partial derivative; exponents divisible by p vanish in char p.
  MPoly derivative(std::size_t i) const {
    MPoly r(f_, vars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponents g = e;
      g[i] -= 1;
      r.add_term(std::move(g), f_.mul(f_.from_int(e[i]), c));
    }
    return r;
  }
  MPoly derivative(const std::string& name) const { return derivative(var_index(name)); }

  value_type eval(const std::vector<value_type>& point) const {
    if (point.size() != nvars()) throw poly_error("evaluation point has wrong length");
    value_type acc = f_.zero();
    for (const auto& [e, c] : terms_) {
      value_type t = c;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i]) t = f_.mul(t, f_.pow(point[i], e[i]));
      }
      acc = f_.add(acc, t);
    }
    return acc;
  }

  /// Ring map sending variable i to images[i]; images share a target universe.
  MPoly compose(const std::vector<MPoly>& images) const {
    if (images.size() != nvars()) throw poly_error("compose needs one image per variable");
    if (images.empty()) return *this;
    const auto& tv = images.front().vars();
    MPoly r(f_, tv);
    std::vector<std::vector<MPoly>> powers(nvars());
    auto power = [&](std::size_t i, std::uint32_t k) -> const MPoly& {
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(constant(f_, tv, f_.one()));
      while (cache.size() <= k) cache.push_back(cache.back() * images[i]);
      return cache[k];
    };
    for (const auto& [e, c] : terms_) {
      MPoly t = constant(f_, tv, c);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i]) t *= power(i, e[i]);
      }
      r += t;
    }
    return r;
  }

  // Replace variable i by g (same universe).
  MPoly substitute(std::size_t i, const MPoly& g) const {
    std::vector<MPoly> images;
    for (std::size_t j = 0; j < nvars(); ++j) images.push_back(j == i ? g : variable(f_, vars_, j));
    return compose(images);
  }
  MPoly substitute(const std::string& name, const MPoly& g) const { return substitute(var_index(name), g); }

  // Set variable i to a constant, keeping the universe.
  MPoly specialize(std::size_t i, const value_type& v) const {
    MPoly r(f_, vars_);
    for (const auto& [e, c] : terms_) {
      Exponents g = e;
      g[i] = 0;
      r.add_term(std::move(g), f_.mul(c, f_.pow(v, e[i])));
    }
    return r;
  }

  // f(x + shift).
  MPoly translate(const std::vector<value_type>& shift) const {
    std::vector<MPoly> images;
    for (std::size_t j = 0; j < nvars(); ++j) {
      images.push_back(variable(f_, vars_, j) + constant(f_, vars_, shift[j]));
    }
    return compose(images);
  }

  /// Re-express in another universe; every involved variable must exist there.
  MPoly with_vars(const std::vector<std::string>& target) const {
    std::vector<std::size_t> pos(nvars(), static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < nvars(); ++i) {
      auto it = std::find(target.begin(), target.end(), vars_[i]);
      if (it != target.end()) pos[i] = static_cast<std::size_t>(it - target.begin());
      else if (involves(i)) throw poly_error("variable '" + vars_[i] + "' missing from target universe");
    }
    MPoly r(f_, target);
    for (const auto& [e, c] : terms_) {
      Exponents g(target.size(), 0);
      for (std::size_t i = 0; i < nvars(); ++i) {
        if (e[i]) g[pos[i]] = e[i];
      }
      r.add_term(std::move(g), c);
    }
    return r;
  }

  MPoly homogenize(const std::string& new_var, std::uint64_t d) const {
    if (total_degree() > static_cast<long>(d)) throw poly_error("homogenizing degree below total degree");
    std::vector<std::string> nv = vars_;
    if (std::find(nv.begin(), nv.end(), new_var) == nv.end()) nv.push_back(new_var);
    MPoly base = with_vars(nv);
    const std::size_t h = base.var_index(new_var);
    if (base.involves(h)) throw poly_error("homogenizing variable already occurs");
    MPoly r(f_, nv);
    for (const auto& [e, c] : base.terms_) {
      Exponents g = e;
      g[h] = static_cast<std::uint32_t>(d - curvelab::total_degree(e));
      r.terms_.emplace(std::move(g), c);
    }
    return r;
  }

  // Set var = 1 and remove it from the universe.
  MPoly dehomogenize(const std::string& var) const {
    const std::size_t i = var_index(var);
    MPoly s = specialize(i, f_.one());
    std::vector<std::string> nv = vars_;
    nv.erase(nv.begin() + static_cast<long>(i));
    return s.with_vars(nv);
  }

  UPoly<F> to_univariate(std::size_t i) const {
    std::vector<value_type> c(static_cast<std::size_t>(std::max<long>(degree_in(i), 0)) + 1, f_.zero());
    for (const auto& [e, v] : terms_) {
      for (std::size_t j = 0; j < e.size(); ++j) {
        if (j != i && e[j]) throw poly_error("polynomial is not univariate in " + vars_[i]);
      }
      c[e[i]] = v;
    }
    return UPoly<F>(f_, std::move(c));
  }
  static MPoly from_univariate(const UPoly<F>& u, std::vector<std::string> vars, std::size_t i) {
    MPoly r(u.field(), std::move(vars));
    for (std::size_t k = 0; k < u.coeffs().size(); ++k) {
      Exponents e(r.nvars(), 0);
      e[i] = static_cast<std::uint32_t>(k);
      r.add_term(std::move(e), u.coeffs()[k]);
    }
    return r;
  }

  /// Exact quotient; throws if d does not divide *this.
  MPoly divide_exact(const MPoly& d) const {
    check_compatible(d);
    if (d.is_zero()) throw poly_error("division by zero polynomial");
    const auto& [ed, cd] = d.leading_term();
    const value_type cd_inv = f_.inv(cd);
    MPoly q(f_, vars_), r = *this;
    Exponents m(nvars());
    while (!r.is_zero()) {
      const auto& [er, cr] = r.leading_term();
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (er[i] < ed[i]) throw poly_error("inexact polynomial division");
        m[i] = er[i] - ed[i];
      }
      const value_type c = f_.mul(cr, cd_inv);
      q.add_term(m, c);
      r -= d.shifted(m).scaled(c);
    }
    return q;
  }

  // Scale so the graded-lex leading coefficient is 1.
  MPoly normalized() const {
    if (is_zero()) return *this;
    return scaled(f_.inv(leading_term().second));
  }

  template <class G, class Map>
  MPoly<G> map_coefficients(const G& target, Map&& fn) const {
    MPoly<G> r(target, vars_);
    for (const auto& [e, c] : terms_) r.add_term(e, fn(c));
    return r;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
      std::string cs = f_.to_string(c);
      bool negative = false;
      if (!cs.empty() && cs[0] == '-') {
        negative = true;
        cs.erase(0, 1);
      }
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        if (!mono.empty()) mono += "*";
        mono += vars_[i];
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      const bool wrap = cs.find_first_of("+-") != std::string::npos;
      if (wrap) cs = "(" + cs + ")";
      std::string term;
      if (mono.empty()) term = cs;
      else if (cs == "1") term = mono;
      else term = cs + "*" + mono;
      if (out.empty()) out = (negative ? "-" : "") + term;
      else out += (negative ? "-" : "+") + term;
    }
    return out;
  }

  /// Parse the plain-text grammar: terms  c*x^a*y^b  joined by + or -.
  /// Coefficients are integers, p/q rationals, or parenthesized field
  /// elements; `a` denotes the generator of an extension field.
  static MPoly parse(const F& field, std::string_view text, std::optional<std::vector<std::string>> vars = {});

 private:
  F f_;
  std::vector<std::string> vars_;
  TermMap terms_;

  void check_compatible(const MPoly& o) const {
    if (vars_ != o.vars_) throw poly_error("polynomials live in different variable universes");
    if (!(f_ == o.f_)) throw poly_error("polynomials live over different fields");
  }
};

template <Field F>
MPoly<F> MPoly<F>::parse(const F& field, std::string_view text, std::optional<std::vector<std::string>> vars) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw poly_error("empty polynomial text");
  bool extension = false;
  if constexpr (is_finite_field_v<F>) extension = field.degree() > 1;

  struct RawTerm {
    value_type coeff;
    std::map<std::string, std::uint32_t> powers;
  };
  std::vector<RawTerm> raw;
  std::set<std::string> seen;
  std::size_t i = 0;
  auto read_uint = [&]() -> std::uint64_t {
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) {
      throw poly_error("expected integer at position " + std::to_string(i) + " in '" + s + "'");
    }
    std::uint64_t n = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) n = n * 10 + static_cast<std::uint64_t>(s[i++] - '0');
    return n;
  };
  auto read_exponent = [&]() -> std::uint64_t {
    if (i < s.size() && s[i] == '^') {
      ++i;
      return read_uint();
    }
    return 1;
  };
  while (i < s.size()) {
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') {
      negative = s[i] == '-';
      ++i;
    } else if (!raw.empty()) {
      throw poly_error("expected + or - at position " + std::to_string(i) + " in '" + s + "'");
    }
    RawTerm t{field.one(), {}};
    bool first = true;
    while (true) {
      if (!first) {
        if (i < s.size() && s[i] == '*') ++i;
        else break;
      }
      first = false;
      if (i >= s.size()) throw poly_error("unexpected end of polynomial text");
      const char c = s[i];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        const std::size_t start = i;
        while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) ++i;
        value_type v = field.parse(s.substr(start, i - start));
        t.coeff = field.mul(t.coeff, field.pow(v, read_exponent()));
      } else if (c == '(') {
        const std::size_t close = s.find(')', i);
        if (close == std::string::npos) throw poly_error("unbalanced parenthesis");
        value_type v = field.parse(s.substr(i + 1, close - i - 1));
        i = close + 1;
        t.coeff = field.mul(t.coeff, field.pow(v, read_exponent()));
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        const std::size_t start = i;
        while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
        std::string name = s.substr(start, i - start);
        const std::uint64_t e = read_exponent();
        if (extension && name == "a") {
          t.coeff = field.mul(t.coeff, field.pow(field.parse("a"), e));
        } else {
          seen.insert(name);
          t.powers[name] += static_cast<std::uint32_t>(e);
        }
      } else {
        throw poly_error(std::string("unexpected character '") + c + "' in polynomial text");
      }
    }
    if (negative) t.coeff = field.neg(t.coeff);
    raw.push_back(std::move(t));
  }
  std::vector<std::string> universe;
  if (vars) {
    universe = *vars;
    for (const auto& name : seen) {
      if (std::find(universe.begin(), universe.end(), name) == universe.end()) {
        throw poly_error("unknown variable '" + name + "'");
      }
    }
  } else {
    universe.assign(seen.begin(), seen.end());
  }
  MPoly r(field, universe);
  for (auto& t : raw) {
    Exponents e(universe.size(), 0);
    for (const auto& [name, k] : t.powers) e[r.var_index(name)] = k;
    r.add_term(std::move(e), t.coeff);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Resultants

template <Field F>
std::vector<MPoly<F>> coefficients_in(const MPoly<F>& f, std::size_t var) {
  std::vector<MPoly<F>> out;
  const long d = f.degree_in(var);
  for (long k = 0; k <= d; ++k) out.push_back(f.coeff_in(var, static_cast<std::uint32_t>(k)));
  return out;
}

namespace detail {

template <Field F>
MPoly<F> assemble(const std::vector<MPoly<F>>& coeffs, const MPoly<F>& zero, std::size_t var) {
  MPoly<F> r = zero;
  Exponents m(zero.nvars(), 0);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    m[var] = static_cast<std::uint32_t>(k);
    r += coeffs[k].shifted(m);
  }
  return r;
}

// lc(b)^(deg a - deg b + 1) * a  mod  b, in the variable var.
template <Field F>
std::vector<MPoly<F>> pseudo_remainder(std::vector<MPoly<F>> a, const std::vector<MPoly<F>>& b) {
  const long db = static_cast<long>(b.size()) - 1;
  long da = static_cast<long>(a.size()) - 1;
  const MPoly<F>& lb = b.back();
  long steps = da - db + 1;
  while (da >= db && da >= 0) {
    const MPoly<F> la = a.back();
    for (auto& c : a) c *= lb;
    for (long j = 0; j <= db; ++j) a[da - db + j] -= la * b[j];
    a.pop_back();
    --da;
    --steps;
    while (!a.empty() && a.back().is_zero()) {
      a.pop_back();
      --da;
      if (da >= db) {
        // Skipped degree still owes a factor of lc(b).
        for (auto& c : a) c *= lb;
        --steps;
      }
    }
  }
  for (; steps > 0; --steps) {
    for (auto& c : a) c *= lb;
  }
  return a;
}

}  // namespace detail

/// Resultant in variable `var` by the subresultant PRS; the result lies in the
/// same universe and does not involve var.
template <Field F>
MPoly<F> resultant(const MPoly<F>& f, const MPoly<F>& h, std::size_t var) {
  if (f.is_zero() || h.is_zero()) throw poly_error("resultant of zero polynomial");
  const MPoly<F> zero(f.field(), f.vars());
  const MPoly<F> one = MPoly<F>::constant(f.field(), f.vars(), f.field().one());
  auto A = coefficients_in(f, var);
  auto B = coefficients_in(h, var);
  long da = static_cast<long>(A.size()) - 1, db = static_cast<long>(B.size()) - 1;
  if (da == 0 && db == 0) throw poly_error("resultant: neither polynomial involves " + f.vars()[var]);
  if (da == 0) return A[0].pow(static_cast<std::uint64_t>(db));
  if (db == 0) return B[0].pow(static_cast<std::uint64_t>(da));
  MPoly<F> sign = one;
  if (da < db) {
    std::swap(A, B);
    std::swap(da, db);
    if ((da % 2) && (db % 2)) sign = -sign;
  }
  MPoly<F> g = one, hh = one;
  while (true) {
    const long delta = da - db;
    if ((da % 2) && (db % 2)) sign = -sign;
    auto R = detail::pseudo_remainder(A, B);
    if (R.empty()) return zero;
    A = std::move(B);
    da = db;
    const MPoly<F> divisor = g * hh.pow(static_cast<std::uint64_t>(delta));
    for (auto& c : R) c = c.divide_exact(divisor);
    B = std::move(R);
    db = static_cast<long>(B.size()) - 1;
    g = A.back();
    if (delta == 0) {
      // hh unchanged
    } else {
      hh = g.pow(static_cast<std::uint64_t>(delta)).divide_exact(hh.pow(static_cast<std::uint64_t>(delta - 1)));
    }
    if (db == 0) {
      MPoly<F> num = B[0].pow(static_cast<std::uint64_t>(da));
      if (da > 1) num = num.divide_exact(hh.pow(static_cast<std::uint64_t>(da - 1)));
      return sign * num;
    }
  }
}

template <Field F>
MPoly<F> resultant(const MPoly<F>& f, const MPoly<F>& h, const std::string& var) {
  return resultant(f, h, f.var_index(var));
}

}  // namespace curvelab
