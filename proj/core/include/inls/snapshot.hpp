#pragma once

#include <string>

#include "inls/field.hpp"

namespace inls {

// INLS-FIELD v1: one ASCII header line
//   INLS-FIELD v1; N=<dims>; n=<points>; L=<half_width>; t=<time>; offset=<0|1>
// followed by little-endian float64 interleaved (re, im) pairs in row-major
// order.
void write_snapshot(const std::string& path, const FieldState& u);
FieldState read_snapshot(const std::string& path);

}  // namespace inls
