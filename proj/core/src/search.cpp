#include "symrank/search.hpp"

#include <algorithm>

#include "symrank/io.hpp"

namespace symrank {

SplitMix64 SplitMix64::for_trial(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 outer(seed);
  SplitMix64 inner(outer() ^ (index * 0xD1B54A32D192ED03ULL));
  return SplitMix64(inner());
}

std::string to_string(SearchPredicate p) {
  switch (p) {
    case SearchPredicate::odd_rank: return "odd-rank";
    case SearchPredicate::rank_bound: return "rank-bound";
    case SearchPredicate::two_rank: return "two-rank";
    case SearchPredicate::vm_equality: return "vm";
    case SearchPredicate::never: return "never";
  }
  return "never";
}

SearchPredicate parse_search_predicate(const std::string& s) {
  for (auto p : {SearchPredicate::odd_rank, SearchPredicate::rank_bound, SearchPredicate::two_rank,
                 SearchPredicate::vm_equality, SearchPredicate::never}) {
    if (to_string(p) == s) return p;
  }
  throw InvalidArgument("unknown search predicate '" + s + "'");
}

namespace {

Matrix random_symmetric(const Field& f, std::size_t n, std::size_t support, SplitMix64& rng) {
  Matrix g(f, n, n);
  for (std::size_t i = 0; i < support; ++i) {
    for (std::size_t j = i; j < support; ++j) {
      const auto c = static_cast<Code>(rng.below(f.q()));
      g.set(i, j, c);
      g.set(j, i, c);
    }
  }
  return g;
}

struct Outcome {
  bool matched = false;
  bool counterexample = false;
  bool exploratory = false;
  json measured;
};

Outcome odd_rank_outcome(const FormSubspace& m) {
  Outcome out;
  std::size_t top = 0;
  bool all_odd = true;
  for_each_projective(m, {UINT64_MAX, 1}, [&](unsigned, std::uint64_t, FormEvaluator& ev) {
    const std::size_t rk = ev.rank();
    if (rk % 2 == 0) {
      all_odd = false;
      return false;
    }
    top = std::max(top, rk);
    return true;
  });
  if (!all_odd) return out;
  out.matched = true;
  out.counterexample = m.dim() > top || m.dim() > top * (top + 1) / 2;
  out.measured = {{"r", top}, {"d", m.dim()}};
  return out;
}

Outcome rank_bound_outcome(const FormSubspace& m) {
  Outcome out;
  if (alt_subspace(m).dim() != 0) return out;
  out.matched = true;
  // Stops as soon as some rank reaches d; only spaces with max rank < d are
  // enumerated to the end.
  std::size_t top = 0;
  for_each_projective(m, {UINT64_MAX, 1}, [&](unsigned, std::uint64_t, FormEvaluator& ev) {
    top = std::max(top, ev.rank());
    return top < m.dim();
  });
  if (top >= m.dim()) return out;
  const std::uint64_t q = m.field().q();
  out.measured = {{"r", top}, {"d", m.dim()}, {"q", q}};
  if (q >= top + 1 || top == m.n()) {
    out.counterexample = true;
  } else {
    out.exploratory = true;
  }
  return out;
}

Outcome two_rank_outcome(const FormSubspace& m, std::optional<std::size_t> pinned) {
  Outcome out;
  const std::size_t n = m.n();
  std::optional<std::size_t> r = pinned;
  bool ok = true;
  for_each_projective(m, {UINT64_MAX, 1}, [&](unsigned, std::uint64_t, FormEvaluator& ev) {
    const std::size_t rk = ev.rank();
    if (rk == n) return true;
    if (!r) r = rk;
    ok = rk == *r && rk % 2 == 1;
    return ok;
  });
  if (!ok || !r || m.dim() == 0) return out;
  out.matched = true;
  out.counterexample = m.dim() > n + *r;
  out.measured = {{"r", *r}, {"d", m.dim()}, {"bound", n + *r}};
  return out;
}

Outcome vm_outcome(const FormSubspace& m, std::uint64_t cap) {
  Outcome out;
  if (alt_subspace(m).dim() != 0) return out;
  out.matched = true;
  const VectorSubspace closed = v_of_m_closed_form(m);
  bool agree = true;
  if (checked_pow(m.field().q(), m.n(), cap)) agree = v_of_m_exhaustive(m, {cap, 1}) == closed;
  const bool equal = m.dim() <= m.n() && closed.dim() == m.n() - m.dim();
  out.counterexample = !(agree && equal);
  out.measured = {{"dim_vm", closed.dim()}, {"d", m.dim()}, {"paths_agree", agree}};
  return out;
}

struct WorkerState {
  std::uint64_t generated = 0;
  std::uint64_t degenerate = 0;
  std::uint64_t matched = 0;
  std::uint64_t counterexamples = 0;
  std::uint64_t exploratory = 0;
  std::optional<std::pair<std::uint64_t, json>> first_counterexample;
  std::optional<std::pair<std::uint64_t, json>> first_exploratory;
};

}  // namespace

Matrix random_invertible(const Field& f, std::size_t n, SplitMix64& rng) {
  while (true) {
    Matrix x(f, n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) x.set(i, j, static_cast<Code>(rng.below(f.q())));
    }
    if (is_invertible(x)) return x;
  }
}

FormSubspace random_form_subspace(const Field& f, std::size_t n, std::size_t d, GeneratorMode mode,
                                  SplitMix64& rng) {
  std::vector<SymForm> forms;
  forms.reserve(d);
  if (mode == GeneratorMode::uniform) {
    for (std::size_t i = 0; i < d; ++i) forms.emplace_back(random_symmetric(f, n, n, rng));
  } else {
    const std::size_t support = 1 + rng.below(n);
    const Matrix x = random_invertible(f, n, rng);
    for (std::size_t i = 0; i < d; ++i) {
      forms.emplace_back(congruence(x, random_symmetric(f, n, support, rng)));
    }
  }
  return FormSubspace::span(f, n, forms);
}

VerificationReport random_subspace_search(const SearchParams& params,
                                          const EnumerationOptions& opts) {
  const Field& f = params.field;
  const std::size_t n = params.n;
  if (n == 0 || n > kDefaultDimensionCap) throw InvalidArgument("search needs 1 <= n <= 64");
  if (params.d > packed_length(n)) throw InvalidArgument("d exceeds dim Symm(K^n)");
  const bool needs_char2 = params.predicate == SearchPredicate::rank_bound ||
                           params.predicate == SearchPredicate::vm_equality;
  if (needs_char2 && !f.char2()) {
    throw InvalidArgument("predicate " + to_string(params.predicate) + " needs characteristic 2");
  }
  if (params.predicate == SearchPredicate::two_rank) {
    if (n % 2 != 0) throw InvalidArgument("two-rank search needs even n");
    if (params.r && (*params.r % 2 == 0 || *params.r >= n)) {
      throw InvalidArgument("two-rank search needs odd r < n");
    }
  }
  const std::size_t d_max = params.d == 0 ? n : params.d;
  checked_space_size(f.q(), d_max, opts.cap);

  std::vector<WorkerState> states(std::max(1u, opts.jobs));
  detail::run_partitioned(params.trials, opts.jobs,
                          [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
    WorkerState& st = states[w];
    for (std::uint64_t t = begin; t < end; ++t) {
      SplitMix64 rng = SplitMix64::for_trial(params.seed, t);
      const std::size_t d = params.d == 0 ? 1 + rng.below(n) : params.d;
      const GeneratorMode mode = t % 2 == 0 ? GeneratorMode::uniform : GeneratorMode::low_rank;
      const FormSubspace m = random_form_subspace(f, n, d, mode, rng);
      ++st.generated;
      if (m.dim() != d) {
        ++st.degenerate;
        continue;
      }
      Outcome out;
      switch (params.predicate) {
        case SearchPredicate::odd_rank: out = odd_rank_outcome(m); break;
        case SearchPredicate::rank_bound: out = rank_bound_outcome(m); break;
        case SearchPredicate::two_rank: out = two_rank_outcome(m, params.r); break;
        case SearchPredicate::vm_equality: out = vm_outcome(m, opts.cap); break;
        case SearchPredicate::never: break;
      }
      if (!out.matched) continue;
      ++st.matched;
      if (out.counterexample) {
        ++st.counterexamples;
        if (!st.first_counterexample) {
          st.first_counterexample.emplace(
              t, json{{"trial", t}, {"measured", out.measured}, {"space", space_to_json(m)}});
        }
      }
      if (out.exploratory) {
        ++st.exploratory;
        if (!st.first_exploratory) {
          st.first_exploratory.emplace(
              t, json{{"trial", t}, {"measured", out.measured}, {"space", space_to_json(m)}});
        }
      }
    }
  });

  WorkerState total;
  for (auto& st : states) {
    total.generated += st.generated;
    total.degenerate += st.degenerate;
    total.matched += st.matched;
    total.counterexamples += st.counterexamples;
    total.exploratory += st.exploratory;
    for (auto [mine, theirs] : {std::pair{&total.first_counterexample, &st.first_counterexample},
                                std::pair{&total.first_exploratory, &st.first_exploratory}}) {
      if (*theirs && (!*mine || (*theirs)->first < (*mine)->first)) *mine = *theirs;
    }
  }

  VerificationReport rep("search");
  rep.quantity("predicate", to_string(params.predicate));
  rep.quantity("field", to_json(f));
  rep.quantity("q", f.q());
  rep.quantity("n", n);
  rep.quantity("d", params.d == 0 ? json("sampled") : json(params.d));
  if (params.r) rep.quantity("r", *params.r);
  rep.quantity("trials", params.trials);
  rep.quantity("seed", params.seed);
  rep.quantity("generated", total.generated);
  rep.quantity("degenerate", total.degenerate);
  rep.quantity("matched", total.matched);
  rep.quantity("counterexamples", total.counterexamples);
  if (params.predicate == SearchPredicate::rank_bound) {
    // Spaces with d > r found below |K| = r + 1 fall outside the proved range
    // and only bear on the all-fields conjecture.
    rep.note("exploratory_violations", total.exploratory);
    if (total.first_exploratory) rep.note("first_exploratory_violation", total.first_exploratory->second);
  }
  if (total.first_counterexample) rep.witness("counterexample", total.first_counterexample->second);
  rep.conclude(total.counterexamples == 0);
  return rep;
}

}  // namespace symrank
