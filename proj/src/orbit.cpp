#include "shiftmeasure/orbit.hpp"

#include <fstream>
#include <ostream>
#include <stdexcept>

namespace shiftmeasure {

std::string OrbitSample::str() const {
  std::string out(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i) out[i] = static_cast<char>('0' + bits[i]);
  return out;
}

OrbitSample OrbitSample::parse(const std::string& line, std::string source) {
  OrbitSample sample;
  sample.source = std::move(source);
  sample.bits.reserve(line.size());
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c == '\r' && i + 1 == line.size()) break;
    if (c != '0' && c != '1')
      throw std::invalid_argument("sample contains '" + std::string(1, c) + "' at position " + std::to_string(i));
    sample.bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return sample;
}

std::vector<OrbitSample> read_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open sample file '" + path + "'");
  std::vector<OrbitSample> samples;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    samples.push_back(OrbitSample::parse(line, path));
  }
  if (samples.empty()) throw std::invalid_argument("sample file '" + path + "' holds no samples");
  return samples;
}

void write_samples(std::ostream& out, const std::vector<OrbitSample>& samples) {
  for (const auto& s : samples) out << s.str() << '\n';
}

}  // namespace shiftmeasure
