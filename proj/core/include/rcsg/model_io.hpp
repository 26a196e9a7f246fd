#pragma once

#include <stdexcept>
#include <string>

#include "rcsg/model.hpp"

namespace rcsg {

/// Parse failure with source position. Unknown vertex/box/component
/// references are parse errors too; everything else the format can express
/// is left to validate().
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + message),
        line(line),
        column(column) {}
  int line;
  int column;
};

/// Reads a model from the text format (see docs/MODEL_FORMAT.md).
/// Rationals round-trip exactly; legal move sets of play vertices are derived
/// from their transitions in first-use order.
Rcsg parse_model(const std::string& text);

/// Inverse of parse_model: parse_model(serialize_model(m)) == m for every
/// well-formed m whose move lists are in transition first-use order.
std::string serialize_model(const Rcsg& model);

Rcsg load_model_file(const std::string& path);
void save_model_file(const Rcsg& model, const std::string& path);

}  // namespace rcsg
