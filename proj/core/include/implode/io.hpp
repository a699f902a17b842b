#ifndef IMPLODE_IO_HPP
#define IMPLODE_IO_HPP

#include <string>

#include "implode/quiver.hpp"
#include "implode/verify.hpp"

namespace implode {

// JSON document format, schema_version "1":
//   { "schema_version": "1", "group": "su"|"so"|"sp", "n": int,
//     "dims": [..], "alpha": [matrix..], "beta": [matrix..]?,
//     "metadata": {..}? }
// where a matrix is nested row-major arrays of [re, im] pairs. NaN and Inf
// are rejected. Parsing errors carry a JSON-pointer path.
Quiver parse_quiver(const std::string& text);

// Inverse of parse_quiver; round-trips bit exactly for finite values.
std::string serialize_quiver(const Quiver& q, const std::string& metadata_json = "");

std::string report_to_json(const VerificationReport& report);

}  // namespace implode

#endif
