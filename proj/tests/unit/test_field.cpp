#include <set>
#include <vector>

#include "doctest.h"
#include "symrank/error.hpp"
#include "symrank/field.hpp"

using namespace symrank;

namespace {

// Plain polynomial arithmetic over GF(p), low degree first. Independent of the
// log/exp tables under test.
using Poly = std::vector<std::uint32_t>;

Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  return trim(c);
}

Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  a = trim(a);
  const std::uint32_t lead_inv = [&] {
    for (std::uint32_t x = 1; x < p; ++x) {
      if (m.back() * x % p == 1) return x;
    }
    return 1u;
  }();
  while (a.size() >= m.size()) {
    const std::uint32_t c = a.back() * lead_inv % p;
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = (a[shift + i] + p * p - c * m[i] % p) % p;
    a = trim(a);
  }
  return a;
}

Poly digits_of(std::uint32_t code, std::uint32_t p, std::uint32_t k) {
  Poly d(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    d[i] = code % p;
    code /= p;
  }
  return trim(d);
}

std::uint32_t code_of(const Poly& d, std::uint32_t p) {
  std::uint32_t c = 0;
  for (std::size_t i = d.size(); i-- > 0;) c = c * p + d[i];
  return c;
}

// Brute force: a monic polynomial of degree k is reducible iff it is the
// product of two monic polynomials of positive degree.
bool irreducible_oracle(const Poly& f, std::uint32_t p) {
  const std::size_t k = f.size() - 1;
  for (std::size_t da = 1; da < k; ++da) {
    const std::size_t db = k - da;
    std::uint64_t na = 1, nb = 1;
    for (std::size_t i = 0; i < da; ++i) na *= p;
    for (std::size_t i = 0; i < db; ++i) nb *= p;
    for (std::uint64_t ca = 0; ca < na; ++ca) {
      Poly a = digits_of(static_cast<std::uint32_t>(ca), p, static_cast<std::uint32_t>(da));
      a.resize(da, 0);
      a.push_back(1);
      for (std::uint64_t cb = 0; cb < nb; ++cb) {
        Poly b = digits_of(static_cast<std::uint32_t>(cb), p, static_cast<std::uint32_t>(db));
        b.resize(db, 0);
        b.push_back(1);
        if (poly_mul(a, b, p) == f) return false;
      }
    }
  }
  return true;
}

Poly smallest_irreducible(std::uint32_t p, std::uint32_t k) {
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < k; ++i) count *= p;
  for (std::uint64_t c = 0; c < count; ++c) {
    Poly f = digits_of(static_cast<std::uint32_t>(c), p, k);
    f.resize(k, 0);
    f.push_back(1);
    if (irreducible_oracle(f, p)) return f;
  }
  return {};
}

const std::vector<std::pair<std::uint32_t, std::uint32_t>> kSmallFields = {
    {2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {3, 3}, {5, 1}, {5, 2}, {7, 1}, {7, 2}, {11, 1}};

}  // namespace

TEST_CASE("prime fields use the modulus t") {
  const Field f = Field::make(2, 1);
  CHECK(f.q() == 2);
  CHECK(f.modulus() == std::vector<std::uint32_t>{0, 1});
  CHECK(f.add(1, 1) == 0);
}

TEST_CASE("GF(4) defaults to t^2 + t + 1 and rejects t^2 + 1") {
  const Field f = Field::make(2, 2);
  CHECK(f.modulus() == std::vector<std::uint32_t>{1, 1, 1});
  CHECK_THROWS_AS(Field::make(2, 2, std::vector<std::uint32_t>{1, 0, 1}), InvalidArgument);
}

TEST_CASE("default modulus is the smallest-encoded irreducible") {
  for (auto [p, k] : kSmallFields) {
    CAPTURE(p);
    CAPTURE(k);
    const Field f = Field::make(p, k);
    CHECK(f.modulus() == smallest_irreducible(p, k));
  }
}

TEST_CASE("is_irreducible agrees with factor enumeration") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (std::uint32_t k = 1; k <= (p == 2 ? 5u : 3u); ++k) {
      std::uint64_t count = 1;
      for (std::uint32_t i = 0; i < k; ++i) count *= p;
      for (std::uint64_t c = 0; c < count; ++c) {
        Poly f = digits_of(static_cast<std::uint32_t>(c), p, k);
        f.resize(k, 0);
        f.push_back(1);
        CAPTURE(p);
        CAPTURE(c);
        CHECK(is_irreducible(p, f) == irreducible_oracle(f, p));
      }
    }
  }
}

TEST_CASE("bad parameters are rejected") {
  CHECK_THROWS_AS(Field::make(4, 1), InvalidArgument);
  CHECK_THROWS_AS(Field::make(2, 0), InvalidArgument);
  CHECK_THROWS_AS(Field::make(2, 30), CapExceeded);
  CHECK_THROWS_AS(Field::make(2, 2, std::vector<std::uint32_t>{1, 1, 2}), InvalidArgument);
}

TEST_CASE("multiplication matches polynomial multiplication mod the modulus") {
  for (auto [p, k] : kSmallFields) {
    const Field f = Field::make(p, k);
    for (Code a = 0; a < f.q(); ++a) {
      for (Code b = 0; b < f.q(); ++b) {
        const Poly prod = poly_mod(poly_mul(digits_of(a, p, k), digits_of(b, p, k), p), f.modulus(), p);
        REQUIRE(f.mul(a, b) == code_of(prod, p));
        Poly sum(k, 0);
        const Poly da = digits_of(a, p, k), db = digits_of(b, p, k);
        for (std::uint32_t i = 0; i < k; ++i) {
          sum[i] = ((i < da.size() ? da[i] : 0) + (i < db.size() ? db[i] : 0)) % p;
        }
        REQUIRE(f.add(a, b) == code_of(trim(sum), p));
      }
    }
  }
}

TEST_CASE("field axioms hold exhaustively on small fields") {
  for (auto [p, k] : kSmallFields) {
    const Field f = Field::make(p, k);
    for (Code a = 0; a < f.q(); ++a) {
      REQUIRE(f.add(a, f.neg(a)) == 0);
      REQUIRE(f.sub(a, a) == 0);
      if (a != 0) {
        REQUIRE(f.mul(a, f.inv(a)) == 1);
      }
      for (Code b = 0; b < f.q(); ++b) {
        REQUIRE(f.mul(a, b) == f.mul(b, a));
        for (Code c = 0; c < f.q(); c += (f.q() > 16 ? 3 : 1)) {
          REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("small arithmetic examples") {
  const Field gf4 = Field::make(2, 2);
  const Code w = 2;
  CHECK(gf4.mul(w, w) == 3);
  CHECK(gf4.mul(w, 3) == 1);
  const Field gf5 = Field::make(5, 1);
  CHECK(gf5.div(2, 3) == 4);
  CHECK_THROWS_AS(gf5.div(2, 0), DivisionByZero);
  CHECK(gf5.pow(2, 4) == 1);
  CHECK(gf5.pow(0, 0) == 1);
}

TEST_CASE("Element operators check their field") {
  const Field a = Field::make(2, 2);
  const Field b = Field::make(3, 1);
  CHECK_THROWS_AS(a.element(1) + b.element(1), FieldMismatch);
  CHECK_THROWS_AS(a.element(7), InvalidArgument);
  const Element w = a.element(2);
  CHECK((w * w * w) == a.one());
  CHECK((w / w) == a.one());
  CHECK((-w) == w);
  CHECK(w.inverse() == a.element(3));
}

TEST_CASE("fields with equal parameters compare equal") {
  CHECK(Field::make(2, 3) == Field::make(2, 3));
  CHECK_FALSE(Field::make(2, 3) == Field::make(2, 3, std::vector<std::uint32_t>{1, 0, 1, 1}));
}

TEST_CASE("square roots in characteristic 2") {
  const Field gf2 = Field::make(2, 1);
  CHECK(gf2.sqrt_char2(1) == 1);
  const Field gf4 = Field::make(2, 2);
  CHECK(gf4.sqrt_char2(2) == 3);
  for (std::uint32_t k = 1; k <= 6; ++k) {
    const Field f = Field::make(2, k);
    for (Code a = 0; a < f.q(); ++a) CHECK(f.mul(f.sqrt_char2(a), f.sqrt_char2(a)) == a);
  }
  CHECK_THROWS_AS(Field::make(3, 1).sqrt_char2(1), InvalidArgument);
}

TEST_CASE("relative trace equals the sum of Frobenius conjugates") {
  const Field gf4 = Field::make(2, 2);
  const Field gf2 = Field::make(2, 1);
  CHECK(rel_trace(gf4, gf2, gf4.element(2)).code() == 1);
  CHECK(rel_trace(gf4, gf2, gf4.one()).code() == 0);

  const Field gf8 = Field::make(2, 3);
  bool some_one = false;
  for (const auto& x : enumerate_elements(gf8)) some_one |= rel_trace(gf8, gf2, x).code() == 1;
  CHECK(some_one);

  for (auto [p, k, s] : std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>{
           {2, 1, 3}, {2, 2, 3}, {2, 2, 2}, {3, 1, 2}, {3, 2, 2}, {2, 3, 2}}) {
    const Field base = Field::make(p, k);
    const Field big = base.extend(s);
    CAPTURE(big.name());
    REQUIRE(big.base() != nullptr);
    CHECK(*big.base() == base);
    CHECK(big.degree_over_base() == s);
    std::set<Code> image;
    for (const auto& x : enumerate_elements(big)) {
      Code acc = 0;
      Code conj = x.code();
      for (std::uint32_t i = 0; i < s; ++i) {
        acc = big.add(acc, conj);
        conj = big.pow(conj, base.q());
      }
      const Element t = rel_trace(big, base, x);
      CHECK(t.field() == base);
      CHECK(big.embed_base(t.code()) == acc);
      image.insert(t.code());
    }
    CHECK(image.size() == base.q());  // surjective
  }
}

TEST_CASE("the base embedding is a ring homomorphism") {
  const Field base = Field::make(2, 2);
  const Field big = base.extend(3);
  for (Code a = 0; a < base.q(); ++a) {
    CHECK(big.to_base(big.embed_base(a)) == a);
    for (Code b = 0; b < base.q(); ++b) {
      CHECK(big.embed_base(base.mul(a, b)) == big.mul(big.embed_base(a), big.embed_base(b)));
      CHECK(big.embed_base(base.add(a, b)) == big.add(big.embed_base(a), big.embed_base(b)));
    }
  }
}

TEST_CASE("enumerate_elements lists codes in order") {
  CHECK(enumerate_elements(Field::make(2, 1)).size() == 2);
  const auto gf4 = enumerate_elements(Field::make(2, 2));
  REQUIRE(gf4.size() == 4);
  for (Code c = 0; c < 4; ++c) CHECK(gf4[c].code() == c);
  std::set<Code> seen;
  for (const auto& e : enumerate_elements(Field::make(3, 2))) seen.insert(e.code());
  CHECK(seen.size() == 9);
}
