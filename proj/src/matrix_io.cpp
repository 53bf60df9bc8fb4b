#include "satset/matrix_io.hpp"

#include <fstream>
#include <memory>
#include <sstream>

namespace satset::io {

namespace {

struct Token {
  std::string text;
  int column;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t k = 0;
  while (k < line.size()) {
    while (k < line.size() && (line[k] == ' ' || line[k] == '\t' || line[k] == '\r')) ++k;
    if (k == line.size()) break;
    const std::size_t start = k;
    while (k < line.size() && line[k] != ' ' && line[k] != '\t' && line[k] != '\r') ++k;
    out.push_back({line.substr(start, k - start), static_cast<int>(start) + 1});
  }
  return out;
}

long long to_int(const Token& t, int line) {
  if (t.text.empty() || t.text.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(line, t.column, "expected a nonnegative integer, got '" + t.text + "'");
  try {
    return std::stoll(t.text);
  } catch (const std::out_of_range&) {
    throw ParseError(line, t.column, "integer out of range: " + t.text);
  }
}

}  // namespace

std::string write_pchk(const verify::ParityCheckMatrix& H, const std::vector<std::string>& comments) {
  std::ostringstream out;
  for (const auto& c : comments) out << "# " << c << '\n';
  out << H.q << ' ' << H.n << ' ' << H.r << '\n';
  const Field f(H.q);
  if (f.modulus().empty()) {
    out << "-\n";
  } else {
    for (std::size_t k = 0; k < f.modulus().size(); ++k) out << (k ? " " : "") << f.modulus()[k];
    out << '\n';
  }
  for (int i = 0; i < H.r; ++i) {
    for (int j = 0; j < H.n; ++j) out << (j ? " " : "") << static_cast<int>(H.at(i, j));
    out << '\n';
  }
  return out.str();
}

verify::ParityCheckMatrix parse_pchk(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto next_line = [&](bool allow_comment) -> std::vector<Token> {
    while (std::getline(in, line)) {
      ++lineno;
      auto toks = tokenize(line);
      if (toks.empty()) continue;
      if (toks.front().text[0] == '#') {
        if (allow_comment) continue;
        throw ParseError(lineno, toks.front().column, "comments are only allowed before the header");
      }
      return toks;
    }
    throw ParseError(lineno + 1, 1, "unexpected end of input");
  };

  auto header = next_line(true);
  if (header.size() != 3) throw ParseError(lineno, 1, "header must be 'q n r'");
  const int header_line = lineno;
  const long long q = to_int(header[0], lineno), n = to_int(header[1], lineno), r = to_int(header[2], lineno);
  std::unique_ptr<Field> field;
  try {
    field = std::make_unique<Field>(static_cast<int>(q));
  } catch (const FieldError& e) {
    throw ParseError(header_line, header[0].column, e.what());
  }
  if (n < 1 || r < 1 || n * r > (1LL << 28)) throw ParseError(header_line, header[1].column, "bad matrix shape");

  auto mod = next_line(false);
  if (field->modulus().empty()) {
    if (mod.size() != 1 || mod[0].text != "-")
      throw ParseError(lineno, mod[0].column, "prime field: modulus line must be '-'");
  } else {
    if (mod.size() != field->modulus().size())
      throw ParseError(lineno, mod[0].column, "modulus needs " + std::to_string(field->modulus().size()) + " coefficients");
    for (std::size_t k = 0; k < mod.size(); ++k) {
      if (to_int(mod[k], lineno) != field->modulus()[k])
        throw ParseError(lineno, mod[k].column, "modulus differs from the field's standard modulus");
    }
  }

  verify::ParityCheckMatrix H;
  H.q = static_cast<int>(q);
  H.n = static_cast<int>(n);
  H.r = static_cast<int>(r);
  H.entries.reserve(static_cast<std::size_t>(n * r));
  for (long long i = 0; i < r; ++i) {
    auto row = next_line(false);
    if (static_cast<long long>(row.size()) != n)
      throw ParseError(lineno, 1, "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(n));
    for (const auto& t : row) {
      const long long v = to_int(t, lineno);
      if (v >= q) throw ParseError(lineno, t.column, "entry " + t.text + " is not below q = " + std::to_string(q));
      H.entries.push_back(static_cast<Element>(v));
    }
  }
  while (std::getline(in, line)) {
    ++lineno;
    auto extra = tokenize(line);
    if (!extra.empty()) throw ParseError(lineno, extra.front().column, "trailing content after the matrix");
  }
  return H;
}

verify::ParityCheckMatrix read_pchk_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_pchk(buf.str());
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace satset::io
