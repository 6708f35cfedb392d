#include "agv/codefile.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "agv/errors.hpp"

namespace agv {

namespace {

using nlohmann::json;

unsigned get_uint(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer() || doc[key].get<long long>() < 0)
    throw FormatError(std::string("code file: \"") + key + "\" must be a non-negative integer");
  return doc[key].get<unsigned>();
}

Subspace read_rows(const json& doc, const char* key, Field f, std::size_t len) {
  if (!doc.contains(key) || !doc[key].is_array())
    throw FormatError(std::string("code file: \"") + key + "\" must be an array of rows");
  std::vector<Residue> flat;
  for (const auto& row : doc[key]) {
    if (!row.is_array() || row.size() != len)
      throw FormatError(std::string("code file: every row of \"") + key + "\" must have " + std::to_string(len) +
                        " entries");
    for (const auto& e : row) {
      if (!e.is_number_integer()) throw FormatError("code file: entries must be integers");
      const long long v = e.get<long long>();
      if (v < 0 || v >= (long long)f.order())
        throw FormatError("code file: entry " + std::to_string(v) + " is not in [0, " + std::to_string(f.order()) + ")");
      flat.push_back(Residue(v));
    }
  }
  return row_space(f, len, std::move(flat));
}

json rows_json(const Subspace& s) {
  json rows = json::array();
  for (std::size_t i = 0; i < s.dim(); ++i) {
    json r = json::array();
    for (auto e : s.row(i)) r.push_back(unsigned(e));
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace

Code parse_code_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("code file: invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string())
    throw FormatError("code file: missing \"type\"");
  const std::string type = doc["type"].get<std::string>();
  const unsigned q = get_uint(doc, "q");
  const unsigned n = get_uint(doc, "n");
  if (n < 1) throw FormatError("code file: n must be >= 1");
  if (q > 251 || !is_prime(q)) throw UnsupportedFieldError("code file: q must be a prime <= 251");
  const Field f(q);
  try {
    if (type == "css") return NestedPair(read_rows(doc, "c1", f, n), read_rows(doc, "c2", f, n));
    if (type == "stab") return IsotropicCode(read_rows(doc, "generators", f, 2 * n));
  } catch (const ShapeError& e) {
    throw FormatError(std::string("code file: ") + e.what());
  }
  throw FormatError("code file: unknown type \"" + type + "\"");
}

Code load_code_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_code_file(buf.str());
}

std::string dump_code_file(const Code& code) {
  json doc;
  if (const auto* pair = std::get_if<NestedPair>(&code)) {
    doc["type"] = "css";
    doc["q"] = pair->c1().field().order();
    doc["n"] = pair->n();
    doc["c1"] = rows_json(pair->c1());
    doc["c2"] = rows_json(pair->c2());
  } else {
    const auto& stab = std::get<IsotropicCode>(code);
    doc["type"] = "stab";
    doc["q"] = stab.stabilizer().field().order();
    doc["n"] = stab.n();
    doc["generators"] = rows_json(stab.stabilizer());
  }
  return doc.dump();
}

void save_code_file(const std::filesystem::path& path, const Code& code) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << dump_code_file(code) << '\n';
}

}  // namespace agv
