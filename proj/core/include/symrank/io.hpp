#pragma once

// JSON wire formats. Field elements travel as their integer codes; matrices
// as {"rows", "cols", "entries"} with row-major code lists.

#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "symrank/constructions.hpp"
#include "symrank/report.hpp"
#include "symrank/spaces.hpp"

namespace symrank {

using json = nlohmann::json;

json to_json(const Field& f);
Field field_from_json(const json& j);

json to_json(const Matrix& m);
Matrix matrix_from_json(const Field& f, const json& j);

json to_json(const SymForm& f);
/// Rejects asymmetric Gram matrices.
SymForm symform_from_json(const Field& f, const json& j);

json to_json(const VectorSubspace& v);
json vector_to_json(std::span<const Code> v);

json to_json(const RankSpectrum& s);

json to_json(const Recipe& r);
Recipe recipe_from_json(const json& j);

json space_to_json(const FormSubspace& m, const std::optional<Recipe>& recipe = std::nullopt);

struct LoadedSpace {
  FormSubspace space;
  bool was_canonical;
  std::optional<Recipe> recipe;
};

/// Parses a space file and re-canonicalizes its basis.
LoadedSpace space_from_json(const json& j);

/// Two-space indented dump with a trailing newline; object keys are sorted,
/// so equal values always give identical bytes.
std::string dump(const json& j);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace symrank
