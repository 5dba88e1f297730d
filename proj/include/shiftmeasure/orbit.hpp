#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace shiftmeasure {

/// A finite stretch x_1..x_L of an orbit, with where it came from.
struct OrbitSample {
  std::vector<std::uint8_t> bits;  // each entry 0 or 1
  std::uint64_t seed = 0;
  std::string source;

  std::size_t length() const { return bits.size(); }
  std::string str() const;

  /// Parses one line of '0'/'1' characters; throws std::invalid_argument otherwise.
  static OrbitSample parse(const std::string& line, std::string source = "file");
};

/// Raw sample files: one sample per line, '0'/'1' characters, LF endings.
std::vector<OrbitSample> read_samples(const std::string& path);
void write_samples(std::ostream& out, const std::vector<OrbitSample>& samples);

}  // namespace shiftmeasure
