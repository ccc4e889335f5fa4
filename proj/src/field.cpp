#include "curvelab/field.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <numeric>
#include <utility>

namespace curvelab {

namespace {

using Digits = std::vector<std::uint32_t>;

// Dense polynomials over F_p, lowest degree first, no trailing zeros.
void trim(Digits& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  // p is prime and small; Fermat.
  std::uint64_t r = 1, b = a % p;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

Digits pmod(Digits a, const Digits& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint32_t lc_inv = inv_mod(m.back(), p);
  while (a.size() > dm) {
    const std::uint64_t c = std::uint64_t{a.back()} * lc_inv % p;
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - c * m[i] % p) % p);
    }
    trim(a);
  }
  return a;
}

Digits pmulmod(const Digits& a, const Digits& b, const Digits& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Digits r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  return pmod(std::move(r), m, p);
}

Digits pgcd(Digits a, Digits b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Digits r = pmod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^e) mod m by e successive p-th powers.
Digits frobenius_power_of_x(const Digits& m, std::uint32_t p, std::uint32_t e) {
  Digits x = pmod(Digits{0, 1}, m, p);
  for (std::uint32_t i = 0; i < e; ++i) {
    Digits r{1};
    Digits b = x;
    for (std::uint32_t n = p; n; n >>= 1) {
      if (n & 1) r = pmulmod(r, b, m, p);
      b = pmulmod(b, b, m, p);
    }
    x = std::move(r);
  }
  return x;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

Digits to_digits(std::uint32_t code, std::uint32_t p, std::uint32_t k) {
  Digits d(k, 0);
  for (std::uint32_t i = 0; i < k; ++i) {
    d[i] = code % p;
    code /= p;
  }
  return d;
}

std::uint32_t from_digits(const Digits& d, std::uint32_t p) {
  std::uint32_t code = 0;
  for (std::size_t i = d.size(); i-- > 0;) code = code * p + d[i];
  return code;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible_mod_p(const std::vector<std::uint32_t>& f_in, std::uint32_t p) {
  Digits f = f_in;
  trim(f);
  if (f.size() < 2) return false;
  const auto k = static_cast<std::uint32_t>(f.size() - 1);
  if (k == 1) return true;
  auto x_minus = [&](Digits xp) {
    xp.resize(std::max<std::size_t>(xp.size(), 2), 0);
    xp[1] = (xp[1] + p - 1) % p;
    trim(xp);
    return xp;
  };
  if (!x_minus(frobenius_power_of_x(f, p, k)).empty()) return false;
  for (std::uint32_t ell : prime_factors(k)) {
    Digits g = pgcd(f, x_minus(frobenius_power_of_x(f, p, k / ell)), p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::vector<std::uint32_t> least_irreducible(std::uint32_t p, std::uint32_t k) {
  if (k == 1) return {0, 1};
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < k; ++i) count *= p;
  for (std::uint64_t code = 0; code < count; ++code) {
    Digits f = to_digits(static_cast<std::uint32_t>(code), p, k);
    f.push_back(1);
    if (f[0] == 0) continue;
    if (is_irreducible_mod_p(f, p)) return f;
  }
  throw field_error("no irreducible polynomial found");
}

std::string FieldSpec::name() const {
  if (kind == Kind::rational) return "Q";
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) q *= p;
  return "F_" + std::to_string(q);
}

FieldSpec field_make(FieldSpec::Kind kind, std::uint32_t p, std::uint32_t k, std::uint64_t bound) {
  if (kind == FieldSpec::Kind::rational) return RationalField{}.spec();
  if (!is_prime(p)) throw field_error("characteristic " + std::to_string(p) + " is not prime");
  if (k < 1) throw field_error("extension degree must be at least 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > bound) throw field_error("field size exceeds bound " + std::to_string(bound));
  }
  return FieldSpec{FieldSpec::Kind::finite, p, k, least_irreducible(p, k)};
}

std::shared_ptr<const FiniteField::Tables> FiniteField::build(std::uint32_t p, std::uint32_t k) {
  auto t = std::make_shared<Tables>();
  t->p = p;
  t->k = k;
  t->spec = field_make(FieldSpec::Kind::finite, p, k, ~std::uint64_t{0});
  std::uint32_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) q *= p;
  t->q = q;
  const Digits& m = t->spec.modulus;

  // Multiply a code by the class of g, in residue representation.
  auto mul_code = [&](std::uint32_t a, const Digits& g) {
    return from_digits(pmulmod(to_digits(a, p, k), g, m, p), p);
  };
  auto try_generator = [&](std::uint32_t gcode) -> bool {
    Digits g = to_digits(gcode, p, k);
    trim(g);
    std::vector<std::uint32_t> exp(q - 1);
    std::uint32_t cur = 1;
    for (std::uint32_t i = 0; i < q - 1; ++i) {
      if (i > 0 && cur == 1) return false;
      exp[i] = cur;
      cur = mul_code(cur, g);
    }
    if (cur != 1) return false;
    t->exp.resize(2 * (q - 1));
    t->log.assign(q, 0);
    for (std::uint32_t i = 0; i < q - 1; ++i) {
      t->exp[i] = t->exp[i + q - 1] = exp[i];
      t->log[exp[i]] = i;
    }
    return true;
  };
  if (q == 2) {
    t->exp = {1, 1};
    t->log = {0, 0};
    return t;
  }
  // v itself first: the least irreducible is usually primitive.
  const std::uint32_t first = (k > 1) ? p : 2;
  if (!try_generator(first)) {
    bool found = false;
    for (std::uint32_t g = 2; g < q && !found; ++g) found = try_generator(g);
    if (!found) throw field_error("no primitive element");
  }
  return t;
}

FiniteField::FiniteField(std::uint32_t p, std::uint32_t k, std::uint64_t bound) {
  if (!is_prime(p)) throw field_error("characteristic " + std::to_string(p) + " is not prime");
  if (k < 1) throw field_error("extension degree must be at least 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > bound) throw field_error("field size exceeds bound " + std::to_string(bound));
  }
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, std::shared_ptr<const Tables>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{p, k}];
  if (!slot) slot = build(p, k);
  t_ = slot;
}

FiniteField::value_type FiniteField::from_int(long long n) const {
  const long long p = t_->p;
  long long r = n % p;
  if (r < 0) r += p;
  return static_cast<value_type>(r);
}

FiniteField::value_type FiniteField::generator_v() const {
  return t_->k == 1 ? 0 : t_->p;
}

FiniteField::value_type FiniteField::add(value_type a, value_type b) const {
  const std::uint32_t p = t_->p;
  if (p == 2) return a ^ b;
  if (t_->k == 1) {
    const std::uint32_t s = a + b;
    return s >= p ? s - p : s;
  }
  std::uint32_t r = 0, scale = 1;
  for (std::uint32_t i = 0; i < t_->k; ++i) {
    r += ((a % p + b % p) % p) * scale;
    a /= p;
    b /= p;
    scale *= p;
  }
  return r;
}

FiniteField::value_type FiniteField::neg(value_type a) const {
  const std::uint32_t p = t_->p;
  if (p == 2) return a;
  if (t_->k == 1) return a == 0 ? 0 : p - a;
  std::uint32_t r = 0, scale = 1;
  for (std::uint32_t i = 0; i < t_->k; ++i) {
    r += ((p - a % p) % p) * scale;
    a /= p;
    scale *= p;
  }
  return r;
}

FiniteField::value_type FiniteField::inv(value_type a) const {
  if (a == 0) throw field_error("inverse of zero");
  const std::uint32_t n = t_->q - 1;
  return t_->exp[(n - t_->log[a]) % n];
}

FiniteField::value_type FiniteField::pow(value_type a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t n = t_->q - 1;
  return t_->exp[(std::uint64_t{t_->log[a]} * (e % n)) % n];
}

FiniteField::value_type FiniteField::pth_root(value_type a) const {
  std::uint64_t e = 1;
  for (std::uint32_t i = 1; i < t_->k; ++i) e *= t_->p;
  return pow(a, e);
}

std::vector<FiniteField::value_type> FiniteField::elements() const {
  std::vector<value_type> out(t_->q);
  std::iota(out.begin(), out.end(), 0u);
  return out;
}

std::uint32_t FiniteField::element_degree(value_type a) const {
  value_type b = frobenius(a);
  std::uint32_t j = 1;
  while (b != a) {
    b = frobenius(b);
    ++j;
  }
  return j;
}

std::string FiniteField::to_string(value_type a) const {
  const std::uint32_t p = t_->p;
  if (t_->k == 1) return std::to_string(a);
  if (a == 0) return "0";
  Digits d = to_digits(a, p, t_->k);
  std::string out;
  for (std::size_t i = d.size(); i-- > 0;) {
    if (d[i] == 0) continue;
    if (!out.empty()) out += "+";
    const bool show_coeff = d[i] != 1 || i == 0;
    if (show_coeff) out += std::to_string(d[i]);
    if (i > 0) {
      if (show_coeff) out += "*";
      out += "a";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

FiniteField::value_type FiniteField::parse(std::string_view text) const {
  // Sums of terms  c, a, a^e, c*a^e  with optional parentheses and signs.
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') s += c;
  }
  if (s.empty()) throw field_error("empty field element");
  value_type acc = 0;
  std::size_t i = 0;
  const value_type alpha = t_->k == 1 ? 0 : generator_v();
  while (i < s.size()) {
    bool negative = false;
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') negative = !negative;
      ++i;
    }
    value_type term = 1;
    bool any = false;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      long long n = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        n = (n * 10 + (s[i] - '0')) % static_cast<long long>(t_->p);
        ++i;
      }
      term = from_int(n);
      any = true;
      if (i < s.size() && s[i] == '*') ++i;
    }
    if (i < s.size() && s[i] == 'a') {
      if (t_->k == 1) throw field_error("'a' used in a prime field");
      ++i;
      std::uint64_t e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        e = 0;
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) {
          throw field_error("bad exponent in field element");
        }
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) e = e * 10 + (s[i++] - '0');
      }
      term = mul(term, pow(alpha, e));
      any = true;
    }
    if (!any) throw field_error("cannot parse field element '" + std::string(text) + "'");
    acc = add(acc, negative ? neg(term) : term);
  }
  return acc;
}

std::vector<FiniteField::value_type> FiniteField::embedding_into(const FiniteField& big) const {
  if (big.characteristic() != characteristic() || big.degree() % degree() != 0) {
    throw field_error("no embedding of " + spec().name() + " into " + big.spec().name());
  }
  const std::uint32_t p = t_->p;
  value_type alpha = 0;
  if (degree() > 1) {
    const Digits& m = t_->spec.modulus;
    bool found = false;
    for (value_type c : big.elements()) {
      value_type acc = 0;
      for (std::size_t i = m.size(); i-- > 0;) acc = big.add(big.mul(acc, c), big.from_int(m[i]));
      if (acc == 0) {
        alpha = c;
        found = true;
        break;
      }
    }
    if (!found) throw field_error("modulus has no root in the larger field");
  }
  std::vector<value_type> map(order());
  for (value_type code = 0; code < order(); ++code) {
    Digits d = to_digits(code, p, degree());
    value_type acc = 0;
    for (std::size_t i = d.size(); i-- > 0;) acc = big.add(big.mul(acc, alpha), big.from_int(d[i]));
    map[code] = acc;
  }
  return map;
}

RationalField::value_type RationalField::pow(const value_type& a, std::uint64_t e) const {
  Rational r(1), b(a);
  for (; e; e >>= 1) {
    if (e & 1) r *= b;
    b *= b;
  }
  return r;
}

RationalField::value_type RationalField::parse(std::string_view text) const {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') s += c;
  }
  try {
    Rational r(s, 10);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw field_error("cannot parse rational '" + std::string(text) + "'");
  }
}

}  // namespace curvelab
