#include "cli.hpp"

#include <charconv>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "symrank/combinatorics.hpp"
#include "symrank/io.hpp"
#include "symrank/search.hpp"
#include "symrank/spread.hpp"
#include "symrank/verify.hpp"

namespace symrank::cli {

namespace {

struct RunConfig {
  std::uint64_t cap = kDefaultEnumerationCap;
  unsigned jobs = 1;
  std::string format = "json";
  std::uint64_t seed = 0;
  std::string out;

  EnumerationOptions enumeration() const { return {cap, jobs}; }
};

struct FieldArgs {
  std::uint32_t p = 2;
  std::uint32_t k = 1;
  std::vector<std::uint32_t> modulus;

  std::optional<std::vector<std::uint32_t>> modulus_opt() const {
    if (modulus.empty()) return std::nullopt;
    return modulus;
  }
  Field field() const { return Field::make(p, k, modulus_opt()); }
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--cap", cfg.cap, "Enumeration cap on q^d (and q^n for vector sweeps)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", cfg.seed, "Seed, recorded in every report");
  cmd->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}));
}

void add_field(CLI::App* cmd, FieldArgs& fa) {
  cmd->add_option("--p", fa.p, "Characteristic");
  cmd->add_option("--k", fa.k, "Extension degree over GF(p)");
  cmd->add_option("--modulus", fa.modulus, "Modulus coefficients, constant term first")
      ->delimiter(',');
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string cell(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

std::string render_report(const VerificationReport& rep, const std::string& format) {
  if (format == "json") return dump(rep.to_json());
  std::ostringstream os;
  if (format == "csv") {
    os << "section,name,value\n";
    os << "report,theorem," << csv_cell(rep.theorem()) << "\n";
    os << "report,verdict," << to_string(rep.verdict()) << "\n";
    for (const auto& h : rep.hypotheses()) {
      os << "hypothesis," << csv_cell(h.name) << "," << (h.holds ? "true" : "false") << "\n";
    }
    for (const auto& [k, v] : rep.quantities()) os << "quantity," << csv_cell(k) << "," << csv_cell(cell(v)) << "\n";
    for (const auto& [k, v] : rep.informational()) {
      os << "informational," << csv_cell(k) << "," << csv_cell(cell(v)) << "\n";
    }
    for (const auto& w : rep.witnesses()) os << "witness," << csv_cell(w.label) << "," << csv_cell(w.data.dump()) << "\n";
    return os.str();
  }
  os << "theorem: " << rep.theorem() << "\n";
  os << "verdict: " << to_string(rep.verdict()) << "\n";
  for (const auto& h : rep.hypotheses()) {
    os << "  [" << (h.holds ? "ok" : "not met") << "] " << h.name << " (" << cell(h.measured) << ")\n";
  }
  for (const auto& [k, v] : rep.quantities()) {
    const std::string s = cell(v);
    if (s.size() <= 120) os << "  " << k << " = " << s << "\n";
  }
  for (const auto& [k, v] : rep.informational()) os << "  info " << k << " = " << cell(v) << "\n";
  for (const auto& w : rep.witnesses()) os << "  witness: " << w.label << "\n";
  return os.str();
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::pass: return kPass;
    case Verdict::fail: return kFail;
    case Verdict::hypotheses_not_met: return kNotMet;
  }
  return kNotMet;
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
  } else {
    write_text_file(cfg.out, text);
  }
}

int emit_report(VerificationReport rep, const RunConfig& cfg, std::ostream& out) {
  rep.quantity("seed", cfg.seed);
  emit(cfg, render_report(rep, cfg.format), out);
  return exit_code(rep.verdict());
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& s) {
  auto parse = [&](std::string_view part) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size()) {
      throw InvalidArgument("bad range '" + s + "', expected LO..HI");
    }
    return v;
  };
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const auto v = parse(s);
    return {v, v};
  }
  return {parse(std::string_view(s).substr(0, dots)), parse(std::string_view(s).substr(dots + 2))};
}

Recipe construct_recipe(const std::string& name, const FieldArgs& fa, std::size_t n, std::size_t r) {
  Recipe recipe;
  recipe.p = fa.p;
  recipe.k = fa.k;
  recipe.modulus = fa.modulus_opt();
  recipe.n = n;
  recipe.r = r;
  if (name == "rank2") {
    recipe.kind = Recipe::Kind::rank2;
  } else if (name == "even-rank") {
    recipe.kind = Recipe::Kind::even_rank;
  } else if (name == "trace") {
    recipe.kind = Recipe::Kind::trace2x2;
  } else if (name == "alt-full") {
    recipe.kind = Recipe::Kind::alt_full;
  } else if (name == "restrict-alt" || name == "restrict-quad") {
    recipe.kind = Recipe::Kind::restrict_scalars;
    recipe.inner = name == "restrict-alt" ? Recipe::Inner::alt_full : Recipe::Inner::quadratic;
  } else {
    throw InvalidArgument("unknown recipe '" + name + "'");
  }
  if (recipe.kind != Recipe::Kind::rank2 && recipe.kind != Recipe::Kind::even_rank) recipe.n = 0;
  if (recipe.kind == Recipe::Kind::rank2 || recipe.kind == Recipe::Kind::alt_full) recipe.r = 0;
  validate(recipe);
  return recipe;
}

std::string render_spectrum(const FormSubspace& m, const RankSpectrum& s, const RunConfig& cfg) {
  if (cfg.format == "json") {
    return dump({{"field", to_json(m.field())},
                 {"n", m.n()},
                 {"d", m.dim()},
                 {"seed", cfg.seed},
                 {"spectrum", to_json(s)}});
  }
  std::ostringstream os;
  const char* sep = cfg.format == "csv" ? "," : " ";
  os << "rank" << sep << "count\n";
  for (const auto& [rank, count] : s.counts) os << rank << sep << count << "\n";
  return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Subspaces of symmetric bilinear forms over finite fields", "symrank"};
  app.require_subcommand(1);
  RunConfig cfg;
  FieldArgs fa;
  std::size_t n = 0;
  std::size_t r = 0;
  std::size_t dim = 0;

  // construct
  auto* construct = app.add_subcommand("construct", "Build an example space and write it as JSON");
  std::string recipe_name;
  construct->add_option("recipe", recipe_name, "Recipe")
      ->required()
      ->check(CLI::IsMember({"rank2", "even-rank", "trace", "alt-full", "restrict-alt",
                             "restrict-quad"}));
  add_field(construct, fa);
  construct->add_option("--n", n, "Form dimension (rank2, even-rank)");
  construct->add_option("--r", r, "Half rank (even-rank) or extension degree (trace, restrict-*)");
  construct->add_option("-o,--out", cfg.out, "Output file; stdout when omitted");
  add_common(construct, cfg);

  // spectrum
  auto* spectrum = app.add_subcommand("spectrum", "Rank spectrum of a space file");
  std::string space_file;
  spectrum->add_option("file", space_file, "Space JSON")->required();
  spectrum->add_option("-o,--out", cfg.out, "Output file");
  add_common(spectrum, cfg);

  // verify
  auto* verify = app.add_subcommand("verify", "Run one theorem check and emit its report");
  std::string theorem;
  verify->add_option("theorem", theorem, "Theorem id")
      ->required()
      ->check(CLI::IsMember({"odd-rank", "vm", "rank-bound", "radicals", "two-rank", "spread",
                             "threshold", "inequality", "counts", "normal-form"}));
  verify->add_option("file", space_file, "Space JSON");
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::string x_range = "4..16";
  std::optional<std::size_t> count_rank;
  verify->add_option("--a", a, "inequality: largest a");
  verify->add_option("--b", b, "inequality: largest b");
  verify->add_option("--x", x_range, "inequality: x range LO..HI");
  verify->add_option("--rank", count_rank, "counts: rank to count");
  verify->add_option("--r", r, "normal-form: target rank");
  verify->add_option("-o,--out", cfg.out, "Output file");
  add_common(verify, cfg);

  // search
  auto* search = app.add_subcommand("search", "Seeded random counterexample search");
  std::string predicate = "odd-rank";
  std::uint64_t trials = 1000;
  search->add_option("--predicate", predicate, "Predicate")
      ->check(CLI::IsMember({"odd-rank", "rank-bound", "two-rank", "vm", "never"}));
  add_field(search, fa);
  search->add_option("--n", n, "Form dimension")->required();
  search->add_option("--dim", dim, "Subspace dimension; 0 samples from 1..n per trial");
  std::optional<std::size_t> pinned_r;
  search->add_option("--r", pinned_r, "two-rank: the rank below n");
  search->add_option("--trials", trials, "Number of trials");
  search->add_option("-o,--out", cfg.out, "Output file");
  add_common(search, cfg);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << "run with --help for usage\n";
    return kNotMet;
  }

  try {
    const EnumerationOptions opts = cfg.enumeration();
    if (construct->parsed()) {
      const Recipe recipe = construct_recipe(recipe_name, fa, n, r);
      const FormSubspace m = build(recipe);
      const std::string text = dump(space_to_json(m, recipe));
      std::ostringstream summary;
      summary << "d=" << m.dim() << " n=" << m.n() << " q=" << m.field().q() << "\n";
      if (cfg.out.empty()) {
        out << text;
        err << summary.str();
      } else {
        write_text_file(cfg.out, text);
        out << summary.str();
      }
      return kPass;
    }

    auto load = [&]() {
      if (space_file.empty()) throw InvalidArgument("this command needs a space file");
      return space_from_json(read_json_file(space_file));
    };

    if (spectrum->parsed()) {
      const LoadedSpace loaded = load();
      const RankSpectrum s = rank_spectrum(loaded.space, opts);
      emit(cfg, render_spectrum(loaded.space, s, cfg), out);
      return kPass;
    }

    if (verify->parsed()) {
      if (theorem == "inequality") {
        if (a == 0 || b == 0) throw InvalidArgument("inequality needs --a and --b");
        const auto [lo, hi] = parse_range(x_range);
        return emit_report(check_inequality_sweep(a, b, lo, hi), cfg, out);
      }
      const LoadedSpace loaded = load();
      const FormSubspace& m = loaded.space;
      if (theorem == "odd-rank") return emit_report(check_odd_rank_bound(m, opts), cfg, out);
      if (theorem == "vm") return emit_report(check_vm_bound(m, opts), cfg, out);
      if (theorem == "rank-bound") return emit_report(check_rank_bound(m, opts), cfg, out);
      if (theorem == "radicals") return emit_report(check_common_radicals(m, opts), cfg, out);
      if (theorem == "two-rank") return emit_report(check_two_rank_bound(m, opts), cfg, out);
      if (theorem == "threshold") return emit_report(check_radical_threshold(m, opts), cfg, out);
      if (theorem == "spread") return emit_report(spread_decomposition(m, opts).second, cfg, out);
      if (theorem == "counts") {
        return emit_report(count_rank_elements(m, count_rank, loaded.recipe, opts), cfg, out);
      }
      if (theorem == "normal-form") {
        if (r == 0) throw InvalidArgument("normal-form needs --r");
        return emit_report(normal_form_basis(m, r, opts).report, cfg, out);
      }
    }

    if (search->parsed()) {
      SearchParams params{fa.field(), n, dim, parse_search_predicate(predicate), trials, cfg.seed,
                          pinned_r};
      return emit_report(random_subspace_search(params, opts), cfg, out);
    }
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kCap;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNotMet;
  }
  return kNotMet;
}

}  // namespace symrank::cli
