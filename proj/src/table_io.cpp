#include "shiftmeasure/table_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace shiftmeasure {

using nlohmann::json;

namespace {

template <class Scalar, class Convert>
std::string dump(const BasicCylinderTable<Scalar>& table, Convert convert) {
  json levels = json::array();
  for (int n = 0; n <= table.depth(); ++n) {
    json probs = json::array();
    for (const auto& p : table.level(n)) probs.push_back(convert(p));
    levels.push_back(json{{"n", n}, {"probs", std::move(probs)}});
  }
  json doc{{"depth", table.depth()}, {"mode", to_string(table.mode)}, {"levels", std::move(levels)}};
  return doc.dump(1) + "\n";
}

template <class Scalar, class Parse>
BasicCylinderTable<Scalar> load(const json& doc, int depth, Parse parse) {
  const json& levels = doc.at("levels");
  if (!levels.is_array()) throw StructuralError("'levels' must be an array");
  std::vector<std::vector<Scalar>> values(static_cast<std::size_t>(depth) + 1);
  std::vector<bool> seen(values.size(), false);
  for (const json& entry : levels) {
    const int n = entry.at("n").get<int>();
    if (n < 0 || n > depth) throw StructuralError("level n=" + std::to_string(n) + " outside 0..depth");
    if (seen[static_cast<std::size_t>(n)]) throw StructuralError("level n=" + std::to_string(n) + " repeated");
    seen[static_cast<std::size_t>(n)] = true;
    for (const json& p : entry.at("probs")) values[static_cast<std::size_t>(n)].push_back(parse(p));
  }
  for (std::size_t n = 0; n < seen.size(); ++n)
    if (!seen[n]) throw StructuralError("level n=" + std::to_string(n) + " missing");
  return BasicCylinderTable<Scalar>::from_levels(std::move(values));
}

}  // namespace

std::string table_to_json(const ExactTable& table) {
  return dump(table, [](const Rational& p) { return format_rational(p); });
}

std::string table_to_json(const FloatTable& table) {
  return dump(table, [](double p) { return p; });
}

std::string table_to_json(const CylinderTable& table) {
  return std::visit([](const auto& t) { return table_to_json(t); }, table);
}

CylinderTable table_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("table JSON: ") + e.what());
  }
  try {
    const int depth = doc.at("depth").get<int>();
    if (depth < 0 || depth > ExactTable::max_depth) throw StructuralError("table depth out of range");
    const std::string mode = doc.at("mode").get<std::string>();
    if (mode == "exact") {
      return load<Rational>(doc, depth, [](const json& p) {
        if (p.is_string()) return parse_rational(p.get<std::string>());
        if (p.is_number_integer()) return Rational(p.get<long>());
        throw std::invalid_argument("exact table entries must be \"num/den\" strings, got " + p.dump());
      });
    }
    if (mode == "float") {
      return load<double>(doc, depth, [](const json& p) {
        if (!p.is_number()) throw std::invalid_argument("float table entries must be numbers, got " + p.dump());
        return p.get<double>();
      });
    }
    throw std::invalid_argument("unknown table mode '" + mode + "'");
  } catch (const json::exception& e) {
    throw StructuralError(std::string("table JSON: ") + e.what());
  }
}

CylinderTable read_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open table file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return table_from_json(buffer.str());
}

void write_table_file(const std::string& path, const CylinderTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << table_to_json(table);
}

}  // namespace shiftmeasure
