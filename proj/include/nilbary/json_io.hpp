#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nilbary/barycenter.hpp"
#include "nilbary/lyndon.hpp"
#include "nilbary/poly.hpp"
#include "nilbary/tensor.hpp"

namespace nilbary {

/// Shortest decimal form is not used; every float is printed with 17
/// significant digits so parse-and-reprint is byte-identical.
std::string format_double(double x);

/// {"d":..,"L":..,"coeffs":[...]}
std::string tensor_json(const Tensor& x);
std::string coords_json(const LieCoeffVec& v);
std::string result_json(const BarycenterResult& r);

/// Accepts a tensor object, or an object whose "mean" field is one (a
/// barycenter result). Throws std::invalid_argument on malformed input.
Tensor parse_tensor_json(const std::string& text);

/// A tensor, an array of tensors, or {"samples": [...], "weights": [...]}.
/// Weights default to uniform.
DiscreteMeasure parse_measure_json(const std::string& text);

std::vector<double> parse_weights_json(const std::string& text);

/// Reads a whole file, or stdin for "-".
std::string read_text(const std::string& path);

}  // namespace nilbary
