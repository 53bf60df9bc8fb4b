#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "satset/verify.hpp"

namespace satset::io {

/// Parse failure at a 1-based line and column.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line(line),
        column(column) {}
  int line;
  int column;
};

/// Text form:
///   # optional comment lines
///   q n r
///   c_0 c_1 ... c_e      (modulus, low to high) or "-" for a prime field
///   r lines of n element indices
std::string write_pchk(const verify::ParityCheckMatrix& H, const std::vector<std::string>& comments = {});

/// Throws ParseError; also rejects a modulus other than the one the field
/// tables use and entries outside [0, q).
verify::ParityCheckMatrix parse_pchk(const std::string& text);

verify::ParityCheckMatrix read_pchk_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace satset::io
