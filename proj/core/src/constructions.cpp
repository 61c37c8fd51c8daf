#include "symrank/constructions.hpp"

#include <string>

namespace symrank {

namespace {

SymForm symmetric_unit(const Field& f, std::size_t n, std::size_t i, std::size_t j) {
  Matrix g(f, n, n);
  g.set(i, j, 1);
  g.set(j, i, 1);
  return SymForm(std::move(g));
}

std::uint32_t degree_between(const Field& big, const Field& small) {
  if (big == small) return 1;
  if (big.base() != nullptr && *big.base() == small) return big.degree_over_base();
  throw FieldMismatch(big.name() + " is not recorded as an extension of " + small.name());
}

// Restriction of scalars of an explicit list of L-forms.
FormSubspace restrict_forms(const std::vector<SymForm>& forms, std::size_t n_l, const Field& big,
                            const Field& small, const std::vector<Element>& l_basis) {
  const std::size_t s = l_basis.size();
  const std::size_t n = n_l * s;
  std::vector<SymForm> out;
  out.reserve(forms.size() * s);
  for (const auto& f : forms) {
    for (std::size_t e = 0; e < s; ++e) {
      Matrix g(small, n, n);
      for (std::size_t i = 0; i < n_l; ++i) {
        for (std::size_t a = 0; a < s; ++a) {
          for (std::size_t m = 0; m < n_l; ++m) {
            for (std::size_t b = 0; b < s; ++b) {
              const Element x = l_basis[e] * l_basis[a] * l_basis[b] * big.element(f(i, m));
              g.set(i * s + a, m * s + b, rel_trace(big, small, x).code());
            }
          }
        }
      }
      out.emplace_back(std::move(g));
    }
  }
  return FormSubspace::span(small, n, out);
}

std::vector<Element> power_basis(const Field& big, std::uint32_t s) {
  std::vector<Element> basis;
  const Code t = big.k() > 1 ? big.p() : 0;  // code p encodes the polynomial t
  Element power = big.one();
  for (std::uint32_t i = 0; i < s; ++i) {
    basis.push_back(power);
    if (t != 0) power = power * big.element(t);
  }
  return basis;
}

void check_l_basis(const Field& big, const Field& small, const std::vector<Element>& basis) {
  // A K-basis of L iff the trace Gram matrix Tr(b_a b_b) is invertible.
  const std::size_t s = basis.size();
  Matrix g(small, s, s);
  for (std::size_t a = 0; a < s; ++a) {
    if (!(basis[a].field() == big)) throw FieldMismatch("basis element outside the extension");
    for (std::size_t b = 0; b < s; ++b) g.set(a, b, rel_trace(big, small, basis[a] * basis[b]).code());
  }
  if (!is_invertible(g)) throw InvalidArgument("supplied elements are not a basis of L over K");
}

std::uint64_t power(std::uint64_t q, std::uint64_t e) {
  auto v = checked_pow(q, e);
  if (!v) throw InvalidArgument("closed-form count overflows 64 bits");
  return *v;
}

}  // namespace

FormSubspace rank2_space(const Field& field, std::size_t n) {
  if (n < 2) throw InvalidArgument("rank-2 space needs n >= 2");
  std::vector<SymForm> forms;
  for (std::size_t j = 1; j < n; ++j) forms.push_back(symmetric_unit(field, n, 0, j));
  return FormSubspace::span(field, n, forms);
}

FormSubspace even_rank_space(const Field& field, std::size_t n, std::size_t r) {
  if (r < 1 || 2 * r > n) throw InvalidArgument("even-rank space needs 2 <= 2r <= n");
  std::vector<SymForm> forms;
  for (std::size_t k = 0; k + 2 * r <= n; ++k) {
    Matrix g(field, n, n);
    for (std::size_t i = 0; i < r; ++i) {
      g.set(i, r + k + i, 1);
      g.set(r + k + i, i, 1);
    }
    forms.emplace_back(std::move(g));
  }
  return FormSubspace::span(field, n, forms);
}

FormSubspace trace_form_space(const Field& base, std::uint32_t degree) {
  if (degree < 2) throw InvalidArgument("trace-form space needs extension degree >= 2");
  const Field big = base.extend(degree);
  const std::vector<SymForm> generators = {
      symmetric_unit(big, 2, 0, 0),
      symmetric_unit(big, 2, 1, 1),
      symmetric_unit(big, 2, 0, 1),
  };
  return restrict_forms(generators, 2, big, base, power_basis(big, degree));
}

FormSubspace alt_full_space(const Field& field, std::size_t n) {
  if (!field.char2()) throw InvalidArgument("alternating space construction requires characteristic 2");
  if (n < 2) throw InvalidArgument("alternating space needs n >= 2");
  std::vector<SymForm> forms;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) forms.push_back(symmetric_unit(field, n, i, j));
  }
  return FormSubspace::span(field, n, forms);
}

FormSubspace restrict_scalars(const FormSubspace& over_l, const Field& base,
                              const std::optional<std::vector<Element>>& l_basis) {
  const Field& big = over_l.field();
  const std::uint32_t s = degree_between(big, base);
  std::vector<Element> basis = l_basis ? *l_basis : power_basis(big, s);
  if (basis.size() != s) throw InvalidArgument("L/K basis must have [L:K] elements");
  check_l_basis(big, base, basis);
  return restrict_forms(over_l.basis(), over_l.n(), big, base, basis);
}

FormSubspace pad_space(const FormSubspace& m, std::size_t n) {
  if (n < m.n()) throw InvalidArgument("cannot pad to a smaller dimension");
  std::vector<SymForm> forms;
  for (const auto& f : m.basis()) {
    Matrix g(m.field(), n, n);
    for (std::size_t i = 0; i < m.n(); ++i) {
      for (std::size_t j = 0; j < m.n(); ++j) g.set(i, j, f(i, j));
    }
    forms.emplace_back(std::move(g));
  }
  return FormSubspace::span(m.field(), n, forms);
}

std::string to_string(Recipe::Kind kind) {
  switch (kind) {
    case Recipe::Kind::rank2:
      return "rank2";
    case Recipe::Kind::even_rank:
      return "even_rank";
    case Recipe::Kind::trace2x2:
      return "trace2x2";
    case Recipe::Kind::alt_full:
      return "alt_full";
    case Recipe::Kind::restrict_scalars:
      return "restrict_scalars";
  }
  return "unknown";
}

Recipe::Kind parse_recipe_kind(const std::string& s) {
  for (auto k : {Recipe::Kind::rank2, Recipe::Kind::even_rank, Recipe::Kind::trace2x2,
                 Recipe::Kind::alt_full, Recipe::Kind::restrict_scalars}) {
    if (to_string(k) == s) return k;
  }
  throw InvalidArgument("unknown recipe kind '" + s + "'");
}

std::string to_string(Recipe::Inner inner) {
  return inner == Recipe::Inner::alt_full ? "alt_full" : "quadratic";
}

Recipe::Inner parse_recipe_inner(const std::string& s) {
  if (s == "alt_full") return Recipe::Inner::alt_full;
  if (s == "quadratic") return Recipe::Inner::quadratic;
  throw InvalidArgument("unknown inner construction '" + s + "'");
}

void validate(const Recipe& rc) {
  switch (rc.kind) {
    case Recipe::Kind::rank2:
      if (rc.n < 2) throw InvalidArgument("rank2 needs n >= 2");
      break;
    case Recipe::Kind::even_rank:
      if (rc.r < 1 || 2 * rc.r > rc.n) throw InvalidArgument("even_rank needs 2 <= 2r <= n");
      break;
    case Recipe::Kind::trace2x2:
      if (rc.r < 2) throw InvalidArgument("trace2x2 needs extension degree r >= 2");
      break;
    case Recipe::Kind::alt_full:
      if (rc.p != 2) throw InvalidArgument("alt_full needs characteristic 2");
      break;
    case Recipe::Kind::restrict_scalars:
      if (rc.r < 1) throw InvalidArgument("restrict_scalars needs extension degree r >= 1");
      if (rc.inner == Recipe::Inner::alt_full && rc.p != 2) {
        throw InvalidArgument("restricted alt_full needs characteristic 2");
      }
      break;
  }
}

FormSubspace build(const Recipe& rc) {
  validate(rc);
  const Field field = Field::make(rc.p, rc.k, rc.modulus);
  switch (rc.kind) {
    case Recipe::Kind::rank2:
      return rank2_space(field, rc.n);
    case Recipe::Kind::even_rank:
      return even_rank_space(field, rc.n, rc.r);
    case Recipe::Kind::trace2x2:
      return trace_form_space(field, static_cast<std::uint32_t>(rc.r));
    case Recipe::Kind::alt_full:
      return alt_full_space(field, 4);
    case Recipe::Kind::restrict_scalars: {
      const auto s = static_cast<std::uint32_t>(rc.r);
      const Field big = field.extend(s);
      const FormSubspace inner = rc.inner == Recipe::Inner::alt_full ? alt_full_space(big, 4)
                                                                     : trace_form_space(big, 2);
      return restrict_scalars(inner, field);
    }
  }
  throw InvalidArgument("unknown recipe");
}

std::optional<ClosedFormCount> expected_rank_count(const Recipe& rc) {
  const std::uint64_t q = power(rc.p, rc.k);
  auto alt = [&](std::uint64_t s) {
    return ClosedFormCount{2 * s, (power(q, 2 * s) + 1) * (power(q, 3 * s) - 1),
                           "(q^(2s)+1)(q^(3s)-1)"};
  };
  auto quad = [&](std::uint64_t s) {
    return ClosedFormCount{2 * s, power(q, 4 * s) - 1, "q^(4s)-1"};
  };
  switch (rc.kind) {
    case Recipe::Kind::alt_full:
      return alt(1);
    case Recipe::Kind::trace2x2:
      if (rc.r == 2 && rc.p == 2) return quad(1);
      return std::nullopt;
    case Recipe::Kind::restrict_scalars:
      if (rc.p != 2) return std::nullopt;
      return rc.inner == Recipe::Inner::alt_full ? alt(rc.r) : quad(rc.r);
    default:
      return std::nullopt;
  }
}

}  // namespace symrank
