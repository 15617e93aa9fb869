#include "lacelab/io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

#ifndef LACELAB_GIT_REV
#define LACELAB_GIT_REV "unknown"
#endif

namespace lacelab {

std::string version_string() { return std::string("lacelab 0.1.0+") + LACELAB_GIT_REV; }

namespace {

template <class T, class WeightFn>
Json measure_to_json_impl(const SignedMeasure<T>& m, WeightFn&& weight) {
  Json j;
  j["dim"] = m.dim();
  Json entries = Json::array();
  for (const Point& p : m.sorted_points()) {
    Json row = Json::array();
    for (int i = 0; i < p.dim; ++i) row.push_back(p[i]);
    row.push_back(weight(m.at(p)));
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  return j;
}

}  // namespace

Json measure_to_json(const SignedMeasure<double>& m) {
  return measure_to_json_impl(m, [](double w) { return Json(w); });
}

Json measure_to_json(const SignedMeasure<Rational>& m) {
  return measure_to_json_impl(m, [](const Rational& w) { return Json(w.to_decimal_string()); });
}

namespace {

template <class T, class ParseFn>
SignedMeasure<T> measure_from_json_impl(const Json& j, ParseFn&& parse) {
  const int dim = j.at("dim").get<int>();
  SignedMeasure<T> m(dim);
  for (const auto& row : j.at("entries")) {
    if (static_cast<int>(row.size()) != dim + 1)
      throw std::invalid_argument("measure JSON: bad entry arity");
    Point p(dim);
    for (int i = 0; i < dim; ++i) p[i] = row.at(static_cast<std::size_t>(i)).get<int>();
    m.add(p, parse(row.at(static_cast<std::size_t>(dim))));
  }
  return m;
}

}  // namespace

SignedMeasure<double> measure_from_json_double(const Json& j) {
  return measure_from_json_impl<double>(j, [](const Json& w) {
    return w.is_string() ? Rational::parse(w.get<std::string>()).value().to_double()
                         : w.get<double>();
  });
}

SignedMeasure<Rational> measure_from_json_exact(const Json& j) {
  return measure_from_json_impl<Rational>(j, [](const Json& w) {
    auto r = w.is_string() ? Rational::parse(w.get<std::string>())
                           : Rational::parse(w.dump());
    if (!r) throw std::invalid_argument("measure JSON: unparsable exact weight");
    return *r;
  });
}

Json output_envelope(const Json& config, Json payload) {
  Json j;
  j["version"] = version_string();
  j["config"] = config;
  j["result"] = std::move(payload);
  return j;
}

CsvWriter::CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {
  set_header("version", version_string());
}

void CsvWriter::set_header(const std::string& key, const std::string& value) {
  header_.emplace_back(key, value);
}

void CsvWriter::add_row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_.size())
    throw std::invalid_argument("CsvWriter: row arity does not match columns");
  rows_.push_back(cells);
}

std::string CsvWriter::str() const {
  std::string out;
  for (const auto& [k, v] : header_) out += "# " + k + "=" + v + "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i)
    out += (i ? "," : "") + columns_[i];
  out += "\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + row[i];
    out += "\n";
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f.good()) throw std::runtime_error("write failed: " + path);
}

}  // namespace lacelab
