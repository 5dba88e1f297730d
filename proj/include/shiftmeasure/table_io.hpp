#pragma once

#include <iosfwd>
#include <string>

#include "shiftmeasure/cylinder_table.hpp"

namespace shiftmeasure {

// Table file format:
//   { "depth": N, "mode": "exact"|"float",
//     "levels": [ { "n": n, "probs": [ ...lexicographic word order... ] } ] }
// Exact probabilities are "num/den" strings, float probabilities JSON numbers.

std::string table_to_json(const ExactTable& table);
std::string table_to_json(const FloatTable& table);
std::string table_to_json(const CylinderTable& table);

/// Throws StructuralError for missing levels/words, std::invalid_argument for
/// malformed numbers or JSON.
CylinderTable table_from_json(const std::string& text);

CylinderTable read_table_file(const std::string& path);
void write_table_file(const std::string& path, const CylinderTable& table);

}  // namespace shiftmeasure
