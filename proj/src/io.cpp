#include "stpjsr/io.hpp"

#include <fstream>
#include <sstream>

#include "stpjsr/error.hpp"

namespace stpjsr::io {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kParse, "field '" + where + "': " + what);
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) field_error(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) field_error(where.empty() ? key : where + "." + key, "missing");
  return *it;
}

std::size_t positive_int(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 1) field_error(where, "expected a positive integer");
  return j.get<std::size_t>();
}

Matrix parse_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) field_error(where, "expected a nonempty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  std::vector<double> entries;
  for (std::size_t i = 0; i < rows; ++i) {
    const auto rw = where + "[" + std::to_string(i) + "]";
    const auto& row = j[i];
    if (!row.is_array() || row.empty()) field_error(rw, "expected a nonempty array of numbers");
    if (i == 0) cols = row.size();
    if (row.size() != cols) field_error(rw, "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c) {
      if (!row[c].is_number()) field_error(rw + "[" + std::to_string(c) + "]", "expected a number");
      entries.push_back(row[c].get<double>());
    }
  }
  try {
    return Matrix(rows, cols, std::move(entries));
  } catch (const Error& e) {
    field_error(where, e.what());
  }
}

}  // namespace

const ArbitrarySystem& SystemFile::matrices() const {
  if (!system) throw Error(ErrorCode::kInvalidArgument, "the system file has no 'matrices'");
  return *system;
}

ConstrainedSystem SystemFile::constrained() const {
  if (!dfa) throw Error(ErrorCode::kInvalidArgument, "the system file has no 'dfa'");
  return {matrices(), *dfa};
}

Dfa parse_dfa(const json& j, const std::string& where) {
  const auto states = positive_int(require(j, "states", where), where + ".states");
  const auto labels = positive_int(require(j, "labels", where), where + ".labels");
  const auto& edges_json = require(j, "edges", where);
  if (!edges_json.is_array()) field_error(where + ".edges", "expected an array");
  std::vector<Edge> edges;
  for (std::size_t e = 0; e < edges_json.size(); ++e) {
    const auto ew = where + ".edges[" + std::to_string(e) + "]";
    const auto& triple = edges_json[e];
    if (!triple.is_array() || triple.size() != 3) field_error(ew, "expected [from, to, label]");
    const auto from = positive_int(triple[0], ew + "[0]");
    const auto to = positive_int(triple[1], ew + "[1]");
    const auto label = positive_int(triple[2], ew + "[2]");
    if (from > states) field_error(ew + "[0]", "from-state " + std::to_string(from) + " outside [1," + std::to_string(states) + "]");
    if (to > states) field_error(ew + "[1]", "to-state " + std::to_string(to) + " outside [1," + std::to_string(states) + "]");
    if (label > labels) field_error(ew + "[2]", "label " + std::to_string(label) + " outside [1," + std::to_string(labels) + "]");
    edges.push_back({static_cast<std::uint32_t>(from), static_cast<std::uint32_t>(to), static_cast<std::uint32_t>(label)});
  }
  try {
    return {states, labels, edges};
  } catch (const Error& e) {
    throw Error(e.code(), "field '" + where + "': " + e.what());
  }
}

SystemFile parse_system(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto upto = text.substr(0, std::min<std::size_t>(e.byte, text.size()));
    const auto line = 1 + std::count(upto.begin(), upto.end(), '\n');
    throw Error(ErrorCode::kParse, "JSON syntax error at line " + std::to_string(line) + ": " + e.what());
  }
  if (!root.is_object()) field_error("", "expected an object");
  SystemFile out;
  if (root.contains("matrices") || !root.contains("dfa")) {
    const auto n = positive_int(require(root, "n", ""), "n");
    const auto m = positive_int(require(root, "m", ""), "m");
    const auto& mats = require(root, "matrices", "");
    if (!mats.is_array() || mats.size() != m) {
      field_error("matrices", "expected an array of " + std::to_string(m) + " matrices");
    }
    std::vector<Matrix> matrices;
    for (std::size_t i = 0; i < m; ++i) {
      const auto where = "matrices[" + std::to_string(i) + "]";
      auto a = parse_matrix(mats[i], where);
      if (a.rows() != n || a.cols() != n) {
        field_error(where, "is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + ", expected " +
                               std::to_string(n) + "x" + std::to_string(n));
      }
      matrices.push_back(std::move(a));
    }
    out.system.emplace(std::move(matrices));
  }
  if (auto it = root.find("dfa"); it != root.end() && !it->is_null()) {
    out.dfa = parse_dfa(*it, "dfa");
    if (out.system && out.dfa->num_labels() != out.system->arity()) {
      field_error("dfa.labels", std::to_string(out.dfa->num_labels()) + " labels but m = " +
                                    std::to_string(out.system->arity()));
    }
  }
  if (auto it = root.find("omega"); it != root.end() && !it->is_null()) {
    auto omega = parse_matrix(*it, "omega");
    try {
      validate_omega(omega);
    } catch (const Error& e) {
      field_error("omega", e.what());
    }
    if (!out.system) field_error("omega", "requires 'matrices'");
    const auto m = out.system->arity();
    if (omega.rows() != m) field_error("omega", "expected " + std::to_string(m) + "x" + std::to_string(m));
    out.omega = std::move(omega);
  }
  return out;
}

SystemFile load_system(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kParse, "cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_system(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Dfa& d) {
  json edges = json::array();
  for (const auto& e : d.edges()) edges.push_back({e.from, e.to, e.label});
  return {{"states", d.num_states()}, {"labels", d.num_labels()}, {"edges", std::move(edges)}};
}

json to_json(const ArbitrarySystem& s) {
  json mats = json::array();
  for (const auto& a : s.matrices()) mats.push_back(to_json(a));
  return {{"n", s.dim()}, {"m", s.arity()}, {"matrices", std::move(mats)}};
}

json to_json(const ConstrainedSystem& c) {
  json j = to_json(c.system);
  j["dfa"] = to_json(c.dfa);
  return j;
}

json to_json(const BoundsResult& r) {
  json j = {
      {"lower", r.lower},
      {"upper", r.upper},
      {"lower_witness", to_string(r.lower_witness)},
      {"upper_length", r.upper_length},
      {"horizon", r.horizon},
      {"products_evaluated", r.products_evaluated},
      {"truncated", r.truncated},
      {"norm", r.norm},
      {"verdict", to_string(verdict(r))},
  };
  if (r.requested_horizon != 0) j["requested_horizon"] = r.requested_horizon;
  if (r.delta != 0.0) j["delta"] = r.delta;
  if (!r.levels.empty()) {
    json levels = json::array();
    for (const auto& l : r.levels) {
      json lj = {{"length", l.length},
                 {"words", l.words},
                 {"max_norm", l.max_norm},
                 {"norm_witness", to_string(l.norm_witness)}};
      if (l.max_rho) {
        lj["max_rho"] = *l.max_rho;
        lj["rho_witness"] = to_string(l.rho_witness);
      } else {
        lj["max_rho"] = nullptr;
      }
      levels.push_back(std::move(lj));
    }
    j["levels"] = std::move(levels);
  }
  return j;
}

}  // namespace stpjsr::io
