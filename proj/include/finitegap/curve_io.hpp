#pragma once

#include <iosfwd>
#include <string>

#include "finitegap/spectral_curve.hpp"

namespace finitegap {

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Curve-spec JSON: {"u": [re, im], "glue": [[[re, im], [re, im]], ...]}.
/// A glue entry may carry an integer multiplicity as a third element;
/// it defaults to 1.
CurveSpec parse_curve_spec(const std::string& text);
CurveSpec read_curve_spec(std::istream& in);
CurveSpec load_curve_spec(const std::string& path);

std::string curve_spec_to_json(const CurveSpec& curve);

}  // namespace finitegap
