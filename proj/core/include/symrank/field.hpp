#pragma once

// Exact arithmetic in GF(p^k).
//
// Elements are encoded as integers in [0, q): the residue polynomial
// sum c_i t^i maps to sum c_i p^i. Hot loops work on raw codes through the
// Field handle; Element is the checked value type for everything else.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symrank/error.hpp"

namespace symrank {

using Code = std::uint32_t;

inline constexpr std::uint64_t kDefaultFieldCap = std::uint64_t{1} << 20;

/// base^exp, or nullopt once the value passes `limit`.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp,
                                         std::uint64_t limit = UINT64_MAX);

bool is_prime(std::uint64_t n);

namespace detail {

struct FieldCore {
  std::uint32_t p = 0;
  std::uint32_t k = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;  // low degree first, monic, length k + 1
  std::vector<Code> exp;               // 2(q - 1) entries, generator powers
  std::vector<Code> log;               // log[0] unused
  std::vector<Code> neg;
  std::vector<Code> add_table;         // q*q, only for small odd-p extensions
  Code generator = 1;

  Code add(Code a, Code b) const noexcept {
    if (p == 2) return a ^ b;
    if (k == 1) {
      const Code s = a + b;
      return s >= p ? s - p : s;
    }
    if (!add_table.empty()) return add_table[static_cast<std::size_t>(a) * q + b];
    return add_digits(a, b);
  }
  Code mul(Code a, Code b) const noexcept {
    if (a == 0 || b == 0) return 0;
    return exp[log[a] + log[b]];
  }
  Code add_digits(Code a, Code b) const noexcept;
};

struct BaseLink;

}  // namespace detail

class Element;

/// A finite field GF(p^k) with a fixed irreducible modulus.
///
/// Fields with equal (p, k, modulus) share one arithmetic core and compare
/// equal. A field produced by extend() additionally remembers its base field
/// and the embedding of that base, which is what rel_trace() consults.
class Field {
 public:
  /// Builds GF(p^k). Without a modulus, picks the monic irreducible of degree
  /// k with the smallest integer encoding.
  static Field make(std::uint32_t p, std::uint32_t k,
                    std::optional<std::vector<std::uint32_t>> modulus = std::nullopt,
                    std::uint64_t cap = kDefaultFieldCap);

  /// Extension of degree `degree` over this field; the result records this
  /// field as its base.
  Field extend(std::uint32_t degree, std::uint64_t cap = kDefaultFieldCap) const;

  std::uint32_t p() const noexcept { return core_->p; }
  std::uint32_t k() const noexcept { return core_->k; }
  std::uint32_t q() const noexcept { return core_->q; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return core_->modulus; }
  bool char2() const noexcept { return core_->p == 2; }
  std::string name() const;

  // Base chain. base() is null for fields not built through extend().
  const Field* base() const noexcept;
  std::uint32_t degree_over_base() const noexcept;
  Code embed_base(Code base_code) const;
  std::optional<Code> to_base(Code code) const;

  // Raw-code arithmetic. Codes are assumed valid (< q).
  Code add(Code a, Code b) const noexcept { return core_->add(a, b); }
  Code sub(Code a, Code b) const noexcept { return core_->add(a, core_->neg[b]); }
  Code neg(Code a) const noexcept { return core_->neg[a]; }
  Code mul(Code a, Code b) const noexcept { return core_->mul(a, b); }
  Code inv(Code a) const;
  Code div(Code a, Code b) const;
  Code pow(Code a, std::uint64_t e) const noexcept;
  Code sqrt_char2(Code a) const;

  bool valid(Code c) const noexcept { return c < core_->q; }
  void check(Code c) const;

  Element element(Code c) const;
  Element zero() const;
  Element one() const;

  /// Base-p digits of a code, low degree first (length k).
  std::vector<std::uint32_t> decode(Code c) const;
  Code encode(std::span<const std::uint32_t> digits) const;

  const detail::FieldCore& core() const noexcept { return *core_; }

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.core_ == b.core_;
  }

 private:
  Field(std::shared_ptr<const detail::FieldCore> core,
        std::shared_ptr<const detail::BaseLink> link)
      : core_(std::move(core)), link_(std::move(link)) {}

  std::shared_ptr<const detail::FieldCore> core_;
  std::shared_ptr<const detail::BaseLink> link_;
};

/// An element together with its owning field. Mixing fields throws.
class Element {
 public:
  Element(Field field, Code code);

  const Field& field() const noexcept { return field_; }
  Code code() const noexcept { return code_; }
  bool is_zero() const noexcept { return code_ == 0; }

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator*(const Element& o) const;
  Element operator/(const Element& o) const;
  Element operator-() const;
  Element pow(std::uint64_t e) const;
  Element inverse() const;

  friend bool operator==(const Element& a, const Element& b) noexcept {
    return a.field_ == b.field_ && a.code_ == b.code_;
  }

 private:
  void same_field(const Element& o) const;

  Field field_;
  Code code_;
};

Field make_field(std::uint32_t p, std::uint32_t k,
                 std::optional<std::vector<std::uint32_t>> modulus = std::nullopt,
                 std::uint64_t cap = kDefaultFieldCap);

/// The unique square root a^(q/2) in characteristic 2.
Element sqrt_char2(const Element& a);

/// Relative trace Tr_{L/K}(x) = sum_{i<[L:K]} x^(|K|^i), returned in K's
/// encoding. K must be L itself, a field on L's base chain, or the prime
/// field of L.
Element rel_trace(const Field& big, const Field& small, const Element& x);

/// All q elements in increasing code order.
std::vector<Element> enumerate_elements(const Field& f);

/// Monic irreducibility over GF(p) by trial division (desk-scale degrees).
bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> poly);

}  // namespace symrank
