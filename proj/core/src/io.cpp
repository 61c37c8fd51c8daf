#include "symrank/io.hpp"

#include <fstream>
#include <sstream>

namespace symrank {

json to_json(const Field& f) {
  return {{"p", f.p()}, {"k", f.k()}, {"modulus", f.modulus()}};
}

Field field_from_json(const json& j) {
  try {
    return Field::make(j.at("p").get<std::uint32_t>(), j.at("k").get<std::uint32_t>(),
                       j.at("modulus").get<std::vector<std::uint32_t>>());
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed field: ") + e.what());
  }
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    rows.push_back(std::vector<Code>(row.begin(), row.end()));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

Matrix matrix_from_json(const Field& f, const json& j) {
  try {
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const auto& entries = j.at("entries");
    if (entries.size() != rows) throw InvalidArgument("row count does not match 'rows'");
    std::vector<Vector> data;
    for (const auto& row : entries) data.push_back(row.get<Vector>());
    if (rows == 0) return Matrix(f, 0, cols);
    return Matrix::from_rows(f, data, cols);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed matrix: ") + e.what());
  }
}

json to_json(const SymForm& f) {
  json j = to_json(f.gram());
  j["n"] = f.n();
  return j;
}

SymForm symform_from_json(const Field& f, const json& j) {
  Matrix g = matrix_from_json(f, j);
  if (j.contains("n") && j.at("n").get<std::size_t>() != g.rows()) {
    throw InvalidArgument("form 'n' does not match its Gram matrix");
  }
  return SymForm(std::move(g));
}

json to_json(const VectorSubspace& v) {
  json basis = json::array();
  for (std::size_t i = 0; i < v.dim(); ++i) basis.push_back(vector_to_json(v.basis().row(i)));
  return {{"ambient", v.ambient_dim()}, {"dim", v.dim()}, {"basis", std::move(basis)}};
}

json vector_to_json(std::span<const Code> v) { return std::vector<Code>(v.begin(), v.end()); }

json to_json(const RankSpectrum& s) {
  json counts = json::object();
  for (const auto& [rank, count] : s.counts) counts[std::to_string(rank)] = count;
  return {{"counts", std::move(counts)}, {"total", s.total}};
}

json to_json(const Recipe& r) {
  json params = {{"p", r.p}, {"k", r.k}};
  if (r.modulus) params["modulus"] = *r.modulus;
  switch (r.kind) {
    case Recipe::Kind::rank2:
      params["n"] = r.n;
      break;
    case Recipe::Kind::even_rank:
      params["n"] = r.n;
      params["r"] = r.r;
      break;
    case Recipe::Kind::trace2x2:
      params["r"] = r.r;
      break;
    case Recipe::Kind::alt_full:
      break;
    case Recipe::Kind::restrict_scalars:
      params["r"] = r.r;
      params["inner"] = to_string(r.inner);
      break;
  }
  return {{"kind", to_string(r.kind)}, {"params", std::move(params)}};
}

Recipe recipe_from_json(const json& j) {
  try {
    Recipe r;
    r.kind = parse_recipe_kind(j.at("kind").get<std::string>());
    const auto& p = j.at("params");
    r.p = p.at("p").get<std::uint32_t>();
    r.k = p.at("k").get<std::uint32_t>();
    if (p.contains("modulus")) r.modulus = p.at("modulus").get<std::vector<std::uint32_t>>();
    r.n = p.value("n", std::size_t{0});
    r.r = p.value("r", std::size_t{0});
    if (p.contains("inner")) r.inner = parse_recipe_inner(p.at("inner").get<std::string>());
    validate(r);
    return r;
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed recipe: ") + e.what());
  }
}

json space_to_json(const FormSubspace& m, const std::optional<Recipe>& recipe) {
  json basis = json::array();
  for (const auto& f : m.basis()) basis.push_back(to_json(f));
  json j = {{"field", to_json(m.field())}, {"n", m.n()}, {"basis", std::move(basis)}};
  if (recipe) j["recipe"] = to_json(*recipe);
  return j;
}

LoadedSpace space_from_json(const json& j) {
  try {
    const Field f = field_from_json(j.at("field"));
    const auto n = j.at("n").get<std::size_t>();
    std::vector<SymForm> forms;
    for (const auto& entry : j.at("basis")) {
      forms.push_back(symform_from_json(f, entry));
      if (forms.back().n() != n) throw InvalidArgument("basis form dimension differs from 'n'");
    }
    FormSubspace space = FormSubspace::span(f, n, forms);
    const bool canonical = space.basis() == forms;
    std::optional<Recipe> recipe;
    if (j.contains("recipe")) recipe = recipe_from_json(j.at("recipe"));
    return LoadedSpace{std::move(space), canonical, std::move(recipe)};
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("malformed space file: ") + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("cannot parse " + path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << text;
}

}  // namespace symrank
