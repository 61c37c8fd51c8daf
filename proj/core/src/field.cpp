#include "symrank/field.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <tuple>

namespace symrank {

namespace detail {

struct BaseLink {
  Field base;
  std::uint32_t degree;
  std::vector<Code> embed;  // base code -> code in this field
  std::vector<Code> back;   // code in this field -> base code, or kNone
  static constexpr Code kNone = std::numeric_limits<Code>::max();
};

Code FieldCore::add_digits(Code a, Code b) const noexcept {
  Code out = 0;
  Code place = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    const Code da = a % p;
    const Code db = b % p;
    a /= p;
    b /= p;
    out += ((da + db) % p) * place;
    place *= p;
  }
  return out;
}

}  // namespace detail

namespace {

using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
  // p is prime; Fermat.
  std::uint64_t result = 1;
  std::uint64_t base = a % p;
  std::uint64_t e = p - 2;
  while (e > 0) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

// Remainder of a modulo b over GF(p); b must be nonzero.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint64_t lead_inv = inv_mod_p(b.back(), p);
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const std::uint64_t factor = a.back() * lead_inv % p;
    for (std::size_t i = 0; i <= db; ++i) {
      const std::uint64_t sub = factor * b[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly digits_of(std::uint64_t code, std::uint32_t p, std::uint32_t len) {
  Poly d(len, 0);
  for (std::uint32_t i = 0; i < len; ++i) {
    d[i] = static_cast<std::uint32_t>(code % p);
    code /= p;
  }
  return d;
}

Code code_of(const Poly& d, std::uint32_t p, std::uint32_t len) {
  Code out = 0;
  Code place = 1;
  for (std::uint32_t i = 0; i < len; ++i) {
    out += (i < d.size() ? d[i] : 0) * place;
    place *= p;
  }
  return out;
}

Code slow_mul(Code a, Code b, const Poly& modulus, std::uint32_t p, std::uint32_t k) {
  const Poly da = digits_of(a, p, k);
  const Poly db = digits_of(b, p, k);
  Poly prod(2 * k, 0);
  for (std::uint32_t i = 0; i < k; ++i) {
    if (da[i] == 0) continue;
    for (std::uint32_t j = 0; j < k; ++j) {
      prod[i + j] = static_cast<std::uint32_t>(
          (prod[i + j] + std::uint64_t{da[i]} * db[j]) % p);
    }
  }
  return code_of(poly_mod(std::move(prod), modulus, p), p, k);
}

Code slow_pow(Code a, std::uint64_t e, const Poly& modulus, std::uint32_t p,
              std::uint32_t k) {
  Code result = 1;
  Code base = a;
  while (e > 0) {
    if (e & 1) result = slow_mul(result, base, modulus, p, k);
    base = slow_mul(base, base, modulus, p, k);
    e >>= 1;
  }
  return result;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::shared_ptr<const detail::FieldCore> build_core(std::uint32_t p, std::uint32_t k,
                                                    Poly modulus) {
  auto core = std::make_shared<detail::FieldCore>();
  core->p = p;
  core->k = k;
  core->q = static_cast<std::uint32_t>(*checked_pow(p, k));
  core->modulus = std::move(modulus);
  const std::uint32_t q = core->q;

  core->neg.resize(q);
  for (Code c = 0; c < q; ++c) {
    Poly d = digits_of(c, p, k);
    for (auto& x : d) x = (p - x) % p;
    core->neg[c] = code_of(d, p, k);
  }

  if (q == 2) {
    core->generator = 1;
  } else {
    const auto factors = prime_factors(q - 1);
    for (Code cand = 2; cand < q; ++cand) {
      bool primitive = true;
      for (auto f : factors) {
        if (slow_pow(cand, (q - 1) / f, core->modulus, p, k) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        core->generator = cand;
        break;
      }
    }
  }

  core->exp.assign(2 * static_cast<std::size_t>(q - 1), 0);
  core->log.assign(q, 0);
  Code x = 1;
  for (std::uint32_t i = 0; i + 1 < q; ++i) {
    core->exp[i] = x;
    core->exp[i + q - 1] = x;
    core->log[x] = i;
    x = slow_mul(x, core->generator, core->modulus, p, k);
  }

  if (p != 2 && k > 1 && q <= 256) {
    core->add_table.resize(static_cast<std::size_t>(q) * q);
    for (Code a = 0; a < q; ++a) {
      for (Code b = 0; b < q; ++b) {
        core->add_table[static_cast<std::size_t>(a) * q + b] = core->add_digits(a, b);
      }
    }
  }
  return core;
}

std::shared_ptr<const detail::FieldCore> cached_core(std::uint32_t p, std::uint32_t k,
                                                     const Poly& modulus) {
  static std::mutex mutex;
  static std::map<std::tuple<std::uint32_t, std::uint32_t, Poly>,
                  std::shared_ptr<const detail::FieldCore>>
      cache;
  std::lock_guard lock(mutex);
  auto key = std::make_tuple(p, k, modulus);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto core = build_core(p, k, modulus);
  cache.emplace(std::move(key), core);
  return core;
}

Poly smallest_irreducible(std::uint32_t p, std::uint32_t k) {
  if (k == 1) return {0, 1};
  const std::uint64_t count = *checked_pow(p, k);
  for (std::uint64_t lower = 0; lower < count; ++lower) {
    Poly cand = digits_of(lower, p, k);
    cand.push_back(1);
    if (is_irreducible(p, cand)) return cand;
  }
  throw InvalidArgument("no irreducible polynomial found");  // unreachable
}

}  // namespace

std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp,
                                         std::uint64_t limit) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && result > limit / base) return std::nullopt;
    result *= base;
    if (result > limit) return std::nullopt;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_irreducible(std::uint32_t p, std::span<const std::uint32_t> poly_in) {
  Poly poly(poly_in.begin(), poly_in.end());
  trim(poly);
  if (poly.size() < 2) return false;
  const std::uint32_t deg = static_cast<std::uint32_t>(poly.size() - 1);
  if (deg == 1) return true;
  for (std::uint32_t m = 1; m <= deg / 2; ++m) {
    const std::uint64_t count = *checked_pow(p, m);
    for (std::uint64_t lower = 0; lower < count; ++lower) {
      Poly divisor = digits_of(lower, p, m);
      divisor.push_back(1);
      if (poly_mod(poly, divisor, p).empty()) return false;
    }
  }
  return true;
}

Field Field::make(std::uint32_t p, std::uint32_t k,
                  std::optional<std::vector<std::uint32_t>> modulus, std::uint64_t cap) {
  if (!is_prime(p)) throw InvalidArgument("characteristic " + std::to_string(p) + " is not prime");
  if (k == 0) throw InvalidArgument("extension degree must be positive");
  const auto q = checked_pow(p, k, std::min<std::uint64_t>(cap, UINT32_MAX));
  if (!q) {
    auto needed = checked_pow(p, k);
    throw CapExceeded("field GF(" + std::to_string(p) + "^" + std::to_string(k) + ")",
                      needed ? *needed : UINT64_MAX, cap);
  }
  Poly mod;
  if (modulus) {
    mod = *modulus;
    for (auto c : mod) {
      if (c >= p) throw InvalidArgument("modulus coefficient out of range [0, p)");
    }
    if (mod.size() != k + 1 || mod.back() != 1) {
      throw InvalidArgument("modulus must be monic of degree " + std::to_string(k));
    }
    if (!is_irreducible(p, mod)) throw InvalidArgument("modulus is reducible");
  } else {
    mod = smallest_irreducible(p, k);
  }
  return Field(cached_core(p, k, mod), nullptr);
}

Field Field::extend(std::uint32_t degree, std::uint64_t cap) const {
  if (degree == 0) throw InvalidArgument("extension degree must be positive");
  Field big = make(p(), k() * degree, std::nullopt, cap);

  // Embed this field by sending t to the smallest root of our modulus.
  const auto& mod = modulus();
  std::optional<Code> root;
  for (Code x = 0; x < big.q() && !root; ++x) {
    Code acc = 0;
    for (auto it = mod.rbegin(); it != mod.rend(); ++it) acc = big.add(big.mul(acc, x), *it);
    if (acc == 0) root = x;
  }
  if (!root) throw InvalidArgument("base modulus has no root in the extension");

  auto link = std::make_shared<detail::BaseLink>(
      detail::BaseLink{*this, degree, std::vector<Code>(q()),
                       std::vector<Code>(big.q(), detail::BaseLink::kNone)});
  for (Code c = 0; c < q(); ++c) {
    const auto digits = decode(c);
    Code acc = 0;
    Code power = 1;
    for (auto d : digits) {
      acc = big.add(acc, big.mul(d, power));
      power = big.mul(power, *root);
    }
    link->embed[c] = acc;
    link->back[acc] = c;
  }
  return Field(big.core_, std::move(link));
}

std::string Field::name() const {
  return "GF(" + std::to_string(q()) + ")";
}

const Field* Field::base() const noexcept { return link_ ? &link_->base : nullptr; }

std::uint32_t Field::degree_over_base() const noexcept { return link_ ? link_->degree : 1; }

Code Field::embed_base(Code base_code) const {
  if (!link_) throw FieldMismatch(name() + " has no recorded base field");
  if (base_code >= link_->embed.size()) throw InvalidArgument("base code out of range");
  return link_->embed[base_code];
}

std::optional<Code> Field::to_base(Code code) const {
  if (!link_) throw FieldMismatch(name() + " has no recorded base field");
  check(code);
  const Code c = link_->back[code];
  if (c == detail::BaseLink::kNone) return std::nullopt;
  return c;
}

Code Field::inv(Code a) const {
  if (a == 0) throw DivisionByZero("inverse of zero");
  const auto& c = *core_;
  return c.exp[(c.q - 1 - c.log[a]) % (c.q - 1)];
}

Code Field::div(Code a, Code b) const { return mul(a, inv(b)); }

Code Field::pow(Code a, std::uint64_t e) const noexcept {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const auto& c = *core_;
  const std::uint64_t order = c.q - 1;
  return c.exp[(std::uint64_t{c.log[a]} * (e % order)) % order];
}

Code Field::sqrt_char2(Code a) const {
  if (!char2()) throw InvalidArgument("square root map requires characteristic 2");
  return pow(a, q() / 2);
}

void Field::check(Code c) const {
  if (!valid(c)) {
    throw InvalidArgument("code " + std::to_string(c) + " out of range for " + name());
  }
}

Element Field::element(Code c) const { return Element(*this, c); }
Element Field::zero() const { return Element(*this, 0); }
Element Field::one() const { return Element(*this, 1); }

std::vector<std::uint32_t> Field::decode(Code c) const {
  check(c);
  return digits_of(c, p(), k());
}

Code Field::encode(std::span<const std::uint32_t> digits) const {
  if (digits.size() != k()) throw InvalidArgument("digit count must equal k");
  for (auto d : digits) {
    if (d >= p()) throw InvalidArgument("digit out of range");
  }
  return code_of(Poly(digits.begin(), digits.end()), p(), k());
}

Element::Element(Field field, Code code) : field_(std::move(field)), code_(code) {
  field_.check(code_);
}

void Element::same_field(const Element& o) const {
  if (!(field_ == o.field_)) {
    throw FieldMismatch("operands over " + field_.name() + " and " + o.field_.name());
  }
}

Element Element::operator+(const Element& o) const {
  same_field(o);
  return Element(field_, field_.add(code_, o.code_));
}
Element Element::operator-(const Element& o) const {
  same_field(o);
  return Element(field_, field_.sub(code_, o.code_));
}
Element Element::operator*(const Element& o) const {
  same_field(o);
  return Element(field_, field_.mul(code_, o.code_));
}
Element Element::operator/(const Element& o) const {
  same_field(o);
  return Element(field_, field_.div(code_, o.code_));
}
Element Element::operator-() const { return Element(field_, field_.neg(code_)); }
Element Element::pow(std::uint64_t e) const { return Element(field_, field_.pow(code_, e)); }
Element Element::inverse() const { return Element(field_, field_.inv(code_)); }

Field make_field(std::uint32_t p, std::uint32_t k,
                 std::optional<std::vector<std::uint32_t>> modulus, std::uint64_t cap) {
  return Field::make(p, k, std::move(modulus), cap);
}

Element sqrt_char2(const Element& a) {
  return Element(a.field(), a.field().sqrt_char2(a.code()));
}

Element rel_trace(const Field& big, const Field& small, const Element& x) {
  if (!(x.field() == big)) throw FieldMismatch("trace argument is not in the extension field");
  if (big == small) return x;

  if (const Field* base = big.base(); base != nullptr) {
    if (*base == small) {
      const std::uint64_t qk = small.q();
      Code acc = 0;
      Code term = x.code();
      for (std::uint32_t i = 0; i < big.degree_over_base(); ++i) {
        acc = big.add(acc, term);
        term = big.pow(term, qk);
      }
      const auto down = big.to_base(acc);
      if (!down) throw FieldMismatch("trace left the base field");  // cannot happen
      return Element(small, *down);
    }
    if (base->base() != nullptr || (small.k() == 1 && small.p() == big.p())) {
      const Element mid = rel_trace(big, *base, x);
      return rel_trace(*base, small, mid);
    }
  }

  if (small.k() == 1 && small.p() == big.p()) {
    // Absolute trace to the prime field; constants share codes.
    Code acc = 0;
    Code term = x.code();
    for (std::uint32_t i = 0; i < big.k(); ++i) {
      acc = big.add(acc, term);
      term = big.pow(term, big.p());
    }
    return Element(small, acc);
  }
  throw FieldMismatch(big.name() + " is not recorded as an extension of " + small.name());
}

std::vector<Element> enumerate_elements(const Field& f) {
  std::vector<Element> out;
  out.reserve(f.q());
  for (Code c = 0; c < f.q(); ++c) out.emplace_back(f, c);
  return out;
}

}  // namespace symrank
