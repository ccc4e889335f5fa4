#pragma once

// Exact coefficient fields: F_{p^k} backed by log/antilog tables, and Q.

#include <compare>
#include <concepts>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace curvelab {

using Rational = mpq_class;

struct FieldSpec {
  enum class Kind { finite, rational };

  Kind kind = Kind::finite;
  std::uint32_t p = 0;
  std::uint32_t k = 0;
  // Monic modulus c0 + c1 v + ... + v^k; [0, 1] for prime fields.
  std::vector<std::uint32_t> modulus;

  bool operator==(const FieldSpec&) const = default;

  std::string name() const;
};

inline constexpr std::uint64_t kDefaultFieldBound = std::uint64_t{1} << 20;

class field_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

bool is_prime(std::uint64_t n);

/// Finite field F_{p^k}. Elements are integer codes sum c_i p^i of the
/// residue polynomial sum c_i v^i. The handle is cheap to copy; tables are
/// shared and cached per (p, k).
class FiniteField {
 public:
  using value_type = std::uint32_t;

  FiniteField(std::uint32_t p, std::uint32_t k = 1,
              std::uint64_t bound = kDefaultFieldBound);

  std::uint32_t characteristic() const { return t_->p; }
  std::uint32_t degree() const { return t_->k; }
  std::uint32_t order() const { return t_->q; }
  const FieldSpec& spec() const { return t_->spec; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long long n) const;
  // The class of v (the adjoined root); equals from_int(0) only when k = 1.
  value_type generator_v() const;

  bool is_zero(value_type a) const { return a == 0; }
  bool is_one(value_type a) const { return a == 1; }
  bool eq(value_type a, value_type b) const { return a == b; }

  value_type add(value_type a, value_type b) const;
  value_type sub(value_type a, value_type b) const { return add(a, neg(b)); }
  value_type neg(value_type a) const;
  value_type mul(value_type a, value_type b) const {
    if (a == 0 || b == 0) return 0;
    return t_->exp[t_->log[a] + t_->log[b]];
  }
  value_type inv(value_type a) const;
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }
  value_type pow(value_type a, std::uint64_t e) const;
  value_type frobenius(value_type a) const { return pow(a, t_->p); }
  // Inverse of the Frobenius automorphism.
  value_type pth_root(value_type a) const;

  // All elements, 0 first, then 1, then increasing codes.
  std::vector<value_type> elements() const;
  // Smallest j with a^{p^j} = a, i.e. the degree of F_p(a) over F_p.
  std::uint32_t element_degree(value_type a) const;

  std::string to_string(value_type a) const;
  value_type parse(std::string_view text) const;

  // Code map of an embedding of this field into `big`; requires same p
  // and degree() | big.degree().
  std::vector<value_type> embedding_into(const FiniteField& big) const;

  bool operator==(const FiniteField& o) const { return t_ == o.t_ || t_->spec == o.t_->spec; }

 private:
  struct Tables {
    std::uint32_t p = 0;
    std::uint32_t k = 0;
    std::uint32_t q = 0;
    FieldSpec spec;
    std::vector<std::uint32_t> log;  // log[0] unused
    std::vector<std::uint32_t> exp;  // length 2(q-1) so sums of logs need no mod
  };
  std::shared_ptr<const Tables> t_;

  static std::shared_ptr<const Tables> build(std::uint32_t p, std::uint32_t k);
};

/// The rationals with GMP arbitrary-precision fractions.
class RationalField {
 public:
  using value_type = Rational;

  std::uint32_t characteristic() const { return 0; }
  FieldSpec spec() const { return FieldSpec{FieldSpec::Kind::rational, 0, 0, {}}; }

  value_type zero() const { return Rational(0); }
  value_type one() const { return Rational(1); }
  value_type from_int(long long n) const { return Rational(static_cast<long>(n)); }

  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool is_one(const value_type& a) const { return a == 1; }
  bool eq(const value_type& a, const value_type& b) const { return a == b; }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const {
    if (sgn(a) == 0) throw field_error("inverse of zero");
    return 1 / a;
  }
  value_type div(const value_type& a, const value_type& b) const { return mul(a, inv(b)); }
  value_type pow(const value_type& a, std::uint64_t e) const;

  std::string to_string(const value_type& a) const { return a.get_str(); }
  value_type parse(std::string_view text) const;

  bool operator==(const RationalField&) const { return true; }
};

template <class F>
concept Field = requires(const F& f, const typename F::value_type& a) {
  { f.zero() } -> std::same_as<typename F::value_type>;
  { f.one() } -> std::same_as<typename F::value_type>;
  { f.add(a, a) } -> std::same_as<typename F::value_type>;
  { f.mul(a, a) } -> std::same_as<typename F::value_type>;
  { f.inv(a) } -> std::same_as<typename F::value_type>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.characteristic() } -> std::convertible_to<std::uint32_t>;
  { f.to_string(a) } -> std::convertible_to<std::string>;
};

template <class F>
inline constexpr bool is_finite_field_v = std::is_same_v<F, FiniteField>;

/// Construct a field from its kind and size; finite fields use the
/// lexicographically least monic irreducible modulus.
FieldSpec field_make(FieldSpec::Kind kind, std::uint32_t p = 0, std::uint32_t k = 1,
                     std::uint64_t bound = kDefaultFieldBound);

// Lexicographically least monic irreducible of degree k over F_p, ordered by
// the integer code of its non-leading coefficients.
std::vector<std::uint32_t> least_irreducible(std::uint32_t p, std::uint32_t k);

// Rabin irreducibility test over F_p.
bool is_irreducible_mod_p(const std::vector<std::uint32_t>& f, std::uint32_t p);

}  // namespace curvelab
