#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "stpjsr/automaton.hpp"
#include "stpjsr/radius.hpp"
#include "stpjsr/systems.hpp"

namespace stpjsr::io {

/// Contents of a system file: matrices, a DFA and Ω, each optional, but
/// at least one of matrices and DFA present.
struct SystemFile {
  std::optional<ArbitrarySystem> system;
  std::optional<Dfa> dfa;
  std::optional<Matrix> omega;

  /// Throw if the corresponding part is missing.
  [[nodiscard]] const ArbitrarySystem& matrices() const;
  [[nodiscard]] ConstrainedSystem constrained() const;
};

/// Parses {"n", "m", "matrices", "dfa"?, "omega"?}, or a bare {"dfa"}.
/// Errors name the line (syntax) or the JSON field path (schema).
SystemFile parse_system(const std::string& text);
SystemFile load_system(const std::filesystem::path& path);

/// {"states", "labels", "edges": [[from, to, label], ...]}.
Dfa parse_dfa(const nlohmann::json& j, const std::string& where = "dfa");

nlohmann::json to_json(const Matrix& m);
nlohmann::json to_json(const Dfa& d);
nlohmann::json to_json(const ArbitrarySystem& s);
nlohmann::json to_json(const ConstrainedSystem& c);
nlohmann::json to_json(const BoundsResult& r);

}  // namespace stpjsr::io
