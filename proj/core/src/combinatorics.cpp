#include "symrank/combinatorics.hpp"

#include <optional>

#include "symrank/error.hpp"

namespace symrank {

namespace {

BigInt power(std::uint64_t x, std::uint64_t e) {
  return boost::multiprecision::pow(BigInt(x), static_cast<unsigned>(e));
}

void require_pair(std::uint64_t a, std::uint64_t b) {
  if (b < 1 || b > a) throw InvalidArgument("need 1 <= b <= a");
  if (a > 4096) throw InvalidArgument("a is too large");
}

struct Evaluation {
  bool first;
  std::optional<bool> second;
  nlohmann::json detail;
};

Evaluation evaluate(std::uint64_t a, std::uint64_t b, std::uint64_t x) {
  if (x < 2) throw InvalidArgument("x must be at least 2");
  const Rational lhs1(power(x, a) - 1, power(x, b) - 1);
  const Rational rhs1 = Rational(power(x, a - b)) * (1 + Rational(BigInt(1), power(x, b - 1)));
  Evaluation ev{lhs1 < rhs1, std::nullopt, nullptr};
  ev.detail = {{"a", a}, {"b", b}, {"x", x},
               {"ratio", {{"lhs", to_string(lhs1)}, {"rhs", to_string(rhs1)}, {"holds", ev.first}}}};
  if (x >= 4) {
    const BigInt lhs2 = gaussian_binomial(a, b, x);
    const BigInt rhs2 = 4 * power(x, (a - b) * b);
    ev.second = lhs2 < rhs2;
    ev.detail["binomial"] = {{"lhs", lhs2.str()}, {"rhs", rhs2.str()}, {"holds", *ev.second}};
  }
  return ev;
}

}  // namespace

BigInt gaussian_binomial(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  if (b > a) throw InvalidArgument("gaussian_binomial needs b <= a");
  if (q < 2) throw InvalidArgument("gaussian_binomial needs q >= 2");
  BigInt num = 1;
  BigInt den = 1;
  for (std::uint64_t i = 1; i <= b; ++i) {
    num *= power(q, a - i + 1) - 1;
    den *= power(q, i) - 1;
  }
  return num / den;
}

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

VerificationReport check_inequalities(std::uint64_t a, std::uint64_t b,
                                      std::span<const std::uint64_t> xs) {
  require_pair(a, b);
  VerificationReport rep("inequality");
  rep.hypothesis("b_between_1_and_a", true, {{"a", a}, {"b", b}});
  nlohmann::json evals = nlohmann::json::array();
  bool all = true;
  for (const std::uint64_t x : xs) {
    Evaluation ev = evaluate(a, b, x);
    const bool ok = ev.first && ev.second.value_or(true);
    if (!ok && all) rep.witness("evaluation", ev.detail);
    all = all && ok;
    evals.push_back(std::move(ev.detail));
  }
  rep.quantity("a", a);
  rep.quantity("b", b);
  rep.quantity("evaluations", std::move(evals));
  rep.quantity("all_hold", all);
  rep.conclude(all);
  return rep;
}

VerificationReport check_inequality_sweep(std::uint64_t a_max, std::uint64_t b_max,
                                          std::uint64_t x_lo, std::uint64_t x_hi) {
  if (a_max < 1 || b_max < 1) throw InvalidArgument("need a, b >= 1");
  if (x_lo < 2 || x_hi < x_lo) throw InvalidArgument("need 2 <= x_lo <= x_hi");
  require_pair(a_max, 1);
  VerificationReport rep("inequality");
  rep.hypothesis("b_between_1_and_a", true, {{"a_max", a_max}, {"b_max", b_max}});
  std::uint64_t pairs = 0;
  std::uint64_t first_checks = 0;
  std::uint64_t second_checks = 0;
  bool all = true;
  for (std::uint64_t a = 1; a <= a_max; ++a) {
    for (std::uint64_t b = 1; b <= std::min(a, b_max); ++b) {
      ++pairs;
      for (std::uint64_t x = x_lo; x <= x_hi; ++x) {
        const Evaluation ev = evaluate(a, b, x);
        ++first_checks;
        if (ev.second) ++second_checks;
        const bool ok = ev.first && ev.second.value_or(true);
        if (!ok && all) rep.witness("evaluation", ev.detail);
        all = all && ok;
      }
    }
  }
  rep.quantity("a_max", a_max);
  rep.quantity("b_max", b_max);
  rep.quantity("x_range", nlohmann::json::array({x_lo, x_hi}));
  rep.quantity("pairs", pairs);
  rep.quantity("ratio_checks", first_checks);
  rep.quantity("binomial_checks", second_checks);
  rep.quantity("all_hold", all);
  rep.conclude(all);
  return rep;
}

}  // namespace symrank
