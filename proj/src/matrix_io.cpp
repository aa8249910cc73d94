#include "superpose/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace superpose {

namespace {

std::string at_line(std::size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

// Splits on spaces and tabs.
std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view tok, T& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

Matrix parse_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::size_t rows = 0, cols = 0;
  bool have_header = false;
  std::vector<double> entries;
  std::size_t rows_read = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tok = tokens(line);
    if (tok.empty()) continue;
    if (!have_header) {
      if (tok.size() != 2 || !parse_number(tok[0], rows) || !parse_number(tok[1], cols))
        fail(ErrorKind::Parse, at_line(line_no, "header must be \"rows cols\""));
      if (rows == 0 || cols == 0) fail(ErrorKind::Parse, at_line(line_no, "matrix dimensions must be positive"));
      have_header = true;
      entries.reserve(rows * cols);
      continue;
    }
    if (rows_read == rows) fail(ErrorKind::Parse, at_line(line_no, "more rows than the header declares"));
    if (tok.size() != cols)
      fail(ErrorKind::Parse, at_line(line_no, "expected " + std::to_string(cols) + " values, found " +
                                                  std::to_string(tok.size())));
    for (const auto t : tok) {
      double v = 0.0;
      if (!parse_number(t, v) || !std::isfinite(v))
        fail(ErrorKind::Parse, at_line(line_no, "invalid number '" + std::string(t) + "'"));
      entries.push_back(v);
    }
    ++rows_read;
  }
  if (!have_header) fail(ErrorKind::Parse, "empty matrix file");
  if (rows_read != rows)
    fail(ErrorKind::Parse, at_line(line_no + 1, "expected " + std::to_string(rows) + " rows, found " +
                                                    std::to_string(rows_read)));
  return Matrix(rows, cols, std::move(entries));
}

Matrix parse_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::Parse, std::string("invalid JSON matrix: ") + e.what());
  }
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
    fail(ErrorKind::Parse, "JSON matrix needs \"rows\", \"cols\" and \"entries\"");
  if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned() || !j["entries"].is_array())
    fail(ErrorKind::Parse, "JSON matrix fields have the wrong types");
  const auto rows = j["rows"].get<std::size_t>();
  const auto cols = j["cols"].get<std::size_t>();
  if (rows == 0 || cols == 0) fail(ErrorKind::Parse, "matrix dimensions must be positive");
  const auto& e = j["entries"];
  if (e.size() != rows * cols)
    fail(ErrorKind::Parse, "JSON matrix " + std::to_string(rows) + "x" + std::to_string(cols) + " has " +
                               std::to_string(e.size()) + " entries");
  std::vector<double> entries;
  entries.reserve(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!e[i].is_number()) fail(ErrorKind::Parse, "entry " + std::to_string(i) + " is not a number");
    entries.push_back(e[i].get<double>());
  }
  return Matrix(rows, cols, std::move(entries));
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  std::string s(buf, ptr);
  // Trim trailing zeros of the mantissa so 1.0 prints as "1".
  const auto exp = s.find('e');
  std::string mantissa = s.substr(0, exp);
  const std::string tail = exp == std::string::npos ? "" : s.substr(exp);
  if (mantissa.find('.') != std::string::npos) {
    while (!mantissa.empty() && mantissa.back() == '0') mantissa.pop_back();
    if (!mantissa.empty() && mantissa.back() == '.') mantissa.pop_back();
  }
  return mantissa + tail;
}

std::string format_matrix_text(const Matrix& m) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += ' ';
      out += format_double(m(r, c));
    }
    out += '\n';
  }
  return out;
}

std::string format_matrix_json(const Matrix& m) {
  std::string out = "{\"rows\":" + std::to_string(m.rows()) + ",\"cols\":" + std::to_string(m.cols()) + ",\"entries\":[";
  for (std::size_t i = 0; i < m.entries().size(); ++i) {
    if (i) out += ',';
    out += format_double(m.entries()[i]);
  }
  return out + "]}\n";
}

Matrix parse_matrix(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_json(text);
  return parse_text(text);
}

Matrix load_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_matrix(buf.str());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) fail(ErrorKind::Parse, path + ": " + e.what());
    throw;
  }
}

void save_matrix(const Matrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::Io, "cannot write " + path);
  out << (ends_with(path, ".json") ? format_matrix_json(m) : format_matrix_text(m));
  if (!out) fail(ErrorKind::Io, "write failed for " + path);
}

}  // namespace superpose
