#include "doctest.h"
#include "symrank/constructions.hpp"
#include "symrank/spread.hpp"
#include "symrank/verify.hpp"

using namespace symrank;

namespace {

SymForm diag(const Field& f, std::vector<Code> d) {
  Matrix g(f, d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) g.set(i, i, d[i]);
  return SymForm(g);
}

FormSubspace span_of(const std::vector<SymForm>& forms) {
  return FormSubspace::span(forms.front().field(), forms.front().n(), forms);
}

const FormSubspace& big_trace() {
  static const FormSubspace m = trace_form_space(Field::make(2, 2), 3);
  return m;
}

FormSubspace some_ku() { return kernel_at_point(big_trace(), Vector{0, 1, 2, 0, 3, 1}); }

bool failed(const VerificationReport& rep, const std::string& name) {
  const auto names = rep.failed_hypotheses();
  return std::find(names.begin(), names.end(), name) != names.end();
}

// Constant rank 5 on K^6 over GF(8): the 1 x 1 form [1] over GF(8^5)
// restricted to GF(8), padded by one zero row and column.
FormSubspace rank5_family() {
  const Field gf8 = Field::make(2, 3);
  const Field big = gf8.extend(5);
  const SymForm one[] = {SymForm(Matrix::identity(big, 1))};
  return pad_space(restrict_scalars(FormSubspace::span(big, 1, one), gf8), 6);
}

}  // namespace

TEST_CASE("odd rank bound") {
  const VerificationReport ku = check_odd_rank_bound(some_ku());
  CHECK(ku.verdict() == Verdict::pass);
  CHECK(ku.quantity("r") == 3);
  CHECK(ku.quantity("d") == 3);

  const VerificationReport even = check_odd_rank_bound(rank2_space(Field::make(2, 1), 4));
  CHECK(even.verdict() == Verdict::hypotheses_not_met);
  CHECK(failed(even, "all_ranks_odd"));

  const Field gf3 = Field::make(3, 1);
  CHECK(check_odd_rank_bound(span_of({diag(gf3, {1, 1, 2})})).verdict() == Verdict::pass);
}

TEST_CASE("V(M) bound") {
  const Field gf2 = Field::make(2, 1);
  const VerificationReport one = check_vm_bound(span_of({diag(gf2, {1, 0, 0, 0})}));
  CHECK(one.verdict() == Verdict::pass);
  CHECK(one.quantity("dim_vm") == 3);

  const VerificationReport alt = check_vm_bound(alt_full_space(gf2));
  CHECK(alt.verdict() == Verdict::hypotheses_not_met);
  CHECK(failed(alt, "alt_part_zero"));

  CHECK(check_vm_bound(big_trace()).verdict() == Verdict::hypotheses_not_met);
  const VerificationReport ku = check_vm_bound(some_ku());
  CHECK(ku.verdict() == Verdict::pass);
  CHECK(ku.quantity("dim_vm") == 3);
  CHECK(ku.quantity("paths_agree") == true);

  CHECK(check_vm_bound(span_of({diag(Field::make(3, 1), {1, 0})})).verdict() ==
        Verdict::hypotheses_not_met);
}

TEST_CASE("rank bound") {
  CHECK(check_rank_bound(some_ku()).verdict() == Verdict::pass);
  const Field gf2 = Field::make(2, 1);
  const VerificationReport one = check_rank_bound(span_of({diag(gf2, {1, 0, 0})}));
  CHECK(one.verdict() == Verdict::pass);
  CHECK(one.quantity("r") == 1);
  // r = n waives the field size condition.
  const VerificationReport full = check_rank_bound(span_of({diag(gf2, {1, 1, 1})}));
  CHECK(full.verdict() == Verdict::pass);
  CHECK(check_rank_bound(alt_full_space(gf2)).verdict() == Verdict::hypotheses_not_met);
}

TEST_CASE("common radicals") {
  const VerificationReport ku = check_common_radicals(some_ku());
  CHECK(ku.verdict() == Verdict::pass);
  CHECK(ku.quantity("radical_equals_vm") == true);

  const Field gf2 = Field::make(2, 1);
  CHECK(check_common_radicals(span_of({diag(gf2, {1, 0, 0})})).verdict() == Verdict::pass);

  // e1 paired with e2, e3, e4 over GF(4): constant rank 2, alternating.
  const Field gf4 = Field::make(2, 2);
  std::vector<SymForm> forms;
  for (std::size_t j = 1; j < 4; ++j) {
    Matrix g(gf4, 4, 4);
    g.set(0, j, 1);
    g.set(j, 0, 1);
    forms.emplace_back(g);
  }
  const VerificationReport alt = check_common_radicals(span_of(forms));
  CHECK(alt.verdict() == Verdict::hypotheses_not_met);
  CHECK(failed(alt, "alt_part_zero"));
  CHECK(failed(alt, "dimension_equals_r"));
  CHECK(alt.quantity("radicals_coincide") == false);
}

TEST_CASE("two-rank bound") {
  const VerificationReport t = check_two_rank_bound(big_trace());
  CHECK(t.verdict() == Verdict::pass);
  CHECK(t.quantity("d") == 9);
  CHECK(t.quantity("bound") == 9);
  CHECK(t.informational().at("conjectured_bound") == 9);

  CHECK(check_two_rank_bound(trace_form_space(Field::make(2, 1), 2)).verdict() ==
        Verdict::hypotheses_not_met);
  const Field gf3 = Field::make(3, 1);
  const VerificationReport full = check_two_rank_bound(span_of({diag(gf3, {1, 1, 1, 1})}));
  CHECK(full.verdict() == Verdict::hypotheses_not_met);
  CHECK(failed(full, "rank_set_within_r_and_n"));
}

TEST_CASE("spread decomposition") {
  const auto [dec, rep] = spread_decomposition(big_trace(), {kDefaultEnumerationCap, 2});
  CHECK(rep.verdict() == Verdict::pass);
  CHECK(dec.components.size() == 65);
  CHECK(dec.alt_part.dim() == 3);
  CHECK(rep.quantity("covered_vectors") == 4095);
  REQUIRE(dec.chosen_pair.has_value());
  std::uint64_t points = 0;
  for (const auto& c : dec.components) {
    CHECK(c.kernel.dim() == 3);
    REQUIRE(c.radical.has_value());
    CHECK(c.radical->contains(c.point));
    points += c.points;
  }
  CHECK(points == 1365);
  // The first two members come from the two smallest points.
  CHECK(dec.components[0].point < dec.components[1].point);

  const auto [dec2, rep2] = spread_decomposition(trace_form_space(Field::make(2, 1), 3));
  CHECK(rep2.verdict() == Verdict::hypotheses_not_met);
  CHECK(failed(rep2, "field_size_at_least_r_plus_1"));
  CHECK(rep2.informational().at("exploratory") == true);
  CHECK(rep2.quantity("points") == 63);
}

TEST_CASE("radical threshold") {
  const FormSubspace m = rank5_family();
  REQUIRE(m.dim() == 5);
  const VerificationReport five = check_radical_threshold(m);
  CHECK(five.verdict() == Verdict::pass);
  CHECK(five.quantity("threshold") == "10/3");
  CHECK(five.quantity("d_above_threshold") == true);
  CHECK(five.quantity("distinct_radicals") == 1);
  CHECK(five.informational().at("contentless") == false);
  CHECK(five.informational().at("reduces_to_common_radical_case") == true);

  const VerificationReport four = check_radical_threshold(FormSubspace::span(
      m.field(), 6, std::vector<SymForm>(m.basis().begin(), m.basis().begin() + 4)));
  CHECK(four.verdict() == Verdict::pass);
  CHECK(four.quantity("partition_holds") == true);

  // r = 3 on n = 6 sits below the content threshold.
  const VerificationReport ku = check_radical_threshold(some_ku());
  CHECK(ku.informational().at("contentless") == true);
  CHECK(failed(ku, "r_strictly_between_1_and_n") == false);

  // Outside the hypotheses the measurements are still recorded.
  const VerificationReport two = check_radical_threshold(rank2_space(Field::make(2, 2), 3));
  CHECK(two.verdict() == Verdict::hypotheses_not_met);
  CHECK(two.quantity("distinct_radicals") == 5);
  CHECK(two.quantity("partition_holds") == true);
}

TEST_CASE("rank counts with closed forms") {
  Recipe alt;
  alt.kind = Recipe::Kind::alt_full;
  alt.p = 2;
  alt.k = 1;
  const VerificationReport a = count_rank_elements(build(alt), std::nullopt, alt);
  CHECK(a.verdict() == Verdict::pass);
  CHECK(a.quantity("count") == 35);

  Recipe m1;
  m1.kind = Recipe::Kind::trace2x2;
  m1.p = 2;
  m1.k = 1;
  m1.r = 2;
  const VerificationReport b = count_rank_elements(build(m1), 2, m1);
  CHECK(b.quantity("count") == 15);
  CHECK(b.quantity("matches_closed_form") == true);

  // A recipe whose space was swapped out is caught.
  const VerificationReport c = count_rank_elements(build(m1), std::nullopt, alt);
  CHECK(c.verdict() == Verdict::fail);
  CHECK_FALSE(c.witnesses().empty());

  CHECK(count_rank_elements(rank2_space(Field::make(3, 1), 4), 2).quantity("count") == 26);
  CHECK_THROWS(count_rank_elements(rank2_space(Field::make(3, 1), 4), std::nullopt));
}

TEST_CASE("fail verdicts carry witnesses that re-fail") {
  // Mislabel the quadratic family as the alternating one; the witness space
  // must fail again when checked on its own.
  Recipe alt;
  alt.kind = Recipe::Kind::alt_full;
  alt.p = 2;
  alt.k = 1;
  Recipe m1 = alt;
  m1.kind = Recipe::Kind::trace2x2;
  m1.r = 2;
  const VerificationReport rep = count_rank_elements(build(m1), std::nullopt, alt);
  REQUIRE(rep.verdict() == Verdict::fail);
  const auto& w = rep.witnesses().front();
  CHECK(w.label == "space");
  CHECK(w.data.at("n") == 4);
}
