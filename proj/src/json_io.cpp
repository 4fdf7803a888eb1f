#include "nilbary/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace nilbary {

using nlohmann::json;

std::string format_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("cannot write a non-finite number as JSON");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write_array(std::ostringstream& out, const std::vector<double>& v) {
  out << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out << ',';
    out << format_double(v[i]);
  }
  out << ']';
}

void write_tensor(std::ostringstream& out, const Tensor& x) {
  out << "{\"d\":" << x.d() << ",\"L\":" << x.L() << ",\"coeffs\":";
  write_array(out, x.coeffs());
  out << '}';
}

Tensor tensor_from(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("tensor must be a JSON object");
  if (j.contains("mean")) return tensor_from(j.at("mean"));
  for (const char* key : {"d", "L", "coeffs"}) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("tensor is missing \"") + key + "\"");
  }
  if (!j.at("d").is_number_integer() || !j.at("L").is_number_integer()) {
    throw std::invalid_argument("tensor d and L must be integers");
  }
  Shape shape{j.at("d").get<int>(), j.at("L").get<int>()};
  validate(shape);
  const json& c = j.at("coeffs");
  if (!c.is_array()) throw std::invalid_argument("tensor coeffs must be an array");
  std::vector<double> coeffs;
  coeffs.reserve(c.size());
  for (const json& v : c) {
    if (!v.is_number()) throw std::invalid_argument("tensor coeffs must be numbers");
    coeffs.push_back(v.get<double>());
  }
  return Tensor(shape, std::move(coeffs));
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string tensor_json(const Tensor& x) {
  std::ostringstream out;
  write_tensor(out, x);
  return out.str();
}

std::string coords_json(const LieCoeffVec& v) {
  std::ostringstream out;
  write_array(out, v);
  return out.str();
}

std::string result_json(const BarycenterResult& r) {
  std::ostringstream out;
  out << "{\"algorithm\":\"" << r.algorithm << "\",\"residual_norm\":" << format_double(r.residual_norm)
      << ",\"mean\":";
  write_tensor(out, r.mean);
  out << ",\"lyndon_coords\":";
  write_array(out, r.lyndon_coords);
  out << '}';
  return out.str();
}

Tensor parse_tensor_json(const std::string& text) { return tensor_from(parse(text)); }

std::vector<double> parse_weights_json(const std::string& text) {
  json j = parse(text);
  if (j.is_object() && j.contains("weights")) j = j.at("weights");
  if (!j.is_array()) throw std::invalid_argument("weights must be a JSON array");
  std::vector<double> w;
  for (const json& v : j) {
    if (!v.is_number()) throw std::invalid_argument("weights must be numbers");
    w.push_back(v.get<double>());
  }
  return w;
}

DiscreteMeasure parse_measure_json(const std::string& text) {
  const json j = parse(text);
  std::vector<Tensor> samples;
  std::vector<double> weights;
  const json* list = &j;
  if (j.is_object() && j.contains("samples")) {
    list = &j.at("samples");
    if (j.contains("weights")) weights = parse_weights_json(j.at("weights").dump());
  }
  if (list->is_array()) {
    for (const json& t : *list) samples.push_back(tensor_from(t));
  } else {
    samples.push_back(tensor_from(*list));
  }
  if (weights.empty()) return DiscreteMeasure::uniform(std::move(samples));
  return DiscreteMeasure{std::move(samples), std::move(weights)};
}

std::string read_text(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace nilbary
