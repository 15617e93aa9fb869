#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "lacelab/measure.hpp"

namespace lacelab {

using Json = nlohmann::ordered_json;

// "lacelab <semver>+<git rev>", embedded into every output header block.
std::string version_string();

// {"dim": d, "entries": [[x1,...,xd, w], ...]} with entries sorted
// lexicographically. Float weights are numbers; exact weights are decimal
// strings (or "p/q" when the denominator is not of the form 2^a 5^b).
Json measure_to_json(const SignedMeasure<double>& m);
Json measure_to_json(const SignedMeasure<Rational>& m);
SignedMeasure<double> measure_from_json_double(const Json& j);
SignedMeasure<Rational> measure_from_json_exact(const Json& j);

// Envelope shared by all outputs: version + config echo + payload.
Json output_envelope(const Json& config, Json payload);

// CSV with a "# key=value" header block; column order is part of the
// output contract.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> columns);
  void set_header(const std::string& key, const std::string& value);
  void add_row(const std::vector<std::string>& cells);
  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> header_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

std::string format_double(double v);  // shortest round-trip formatting

void write_text_file(const std::string& path, const std::string& content);

}  // namespace lacelab
