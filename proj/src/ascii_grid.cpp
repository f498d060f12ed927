#include "floodfill/ascii_grid.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "floodfill/error.hpp"

namespace floodfill {

namespace {

class Tokenizer {
 public:
  explicit Tokenizer(std::string_view text) : text_(text) {}

  std::optional<std::string_view> next() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
    if (pos_ >= text_.size()) return std::nullopt;
    const auto start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  std::optional<std::string_view> peek() {
    const auto saved_pos = pos_;
    const auto saved_line = line_;
    auto tok = next();
    pos_ = saved_pos;
    line_ = saved_line;
    return tok;
  }

  std::size_t line() const { return line_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

double parse_double(std::string_view tok, std::size_t line) {
  // from_chars rejects a leading '+', which some writers emit.
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0.0;
  const auto* first = tok.data();
  const auto* last = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("line " + std::to_string(line) + ": bad number '" + std::string(tok) + "'");
  }
  return v;
}

std::int32_t parse_dim(std::string_view tok, std::size_t line) {
  std::int32_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || v <= 0) {
    throw ParseError("line " + std::to_string(line) + ": bad dimension '" + std::string(tok) + "'");
  }
  return v;
}

bool is_integer_literal(std::string_view tok) {
  if (!tok.empty() && (tok.front() == '-' || tok.front() == '+')) tok.remove_prefix(1);
  return !tok.empty() &&
         std::all_of(tok.begin(), tok.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return std::move(ss).str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write failed: " + path.string());
}

std::string format_fixed_integer(double value) {
  std::array<char, 400> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, 0);
  return std::string(buf.data(), res.ptr);
}

void append_header(std::string& out, const GridHeader& h, std::string_view nodata) {
  out += "ncols ";
  out += std::to_string(h.ncols);
  out += "\nnrows ";
  out += std::to_string(h.nrows);
  out += "\nxllcorner ";
  out += format_real(h.xllcorner);
  out += "\nyllcorner ";
  out += format_real(h.yllcorner);
  out += "\ncellsize ";
  out += format_real(h.cellsize);
  out += "\nNODATA_value ";
  out += nodata;
  out += '\n';
}

}  // namespace

std::string format_real(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

Raster parse_ascii_grid(std::string_view text) {
  Tokenizer tok(text);
  GridHeader h;
  bool seen_ncols = false, seen_nrows = false, seen_x = false, seen_y = false, seen_cs = false;

  while (true) {
    const auto key_tok = tok.peek();
    if (!key_tok || !std::isalpha(static_cast<unsigned char>(key_tok->front()))) break;
    const auto key = lower(*key_tok);
    if (key == "nan" || key == "inf" || key == "infinity") break;
    tok.next();
    const auto line = tok.line();
    const auto value = tok.next();
    if (!value) throw ParseError("line " + std::to_string(line) + ": missing value for " + key);
    if (key == "ncols") {
      h.ncols = parse_dim(*value, line);
      seen_ncols = true;
    } else if (key == "nrows") {
      h.nrows = parse_dim(*value, line);
      seen_nrows = true;
    } else if (key == "xllcorner") {
      h.xllcorner = parse_double(*value, line);
      seen_x = true;
    } else if (key == "yllcorner") {
      h.yllcorner = parse_double(*value, line);
      seen_y = true;
    } else if (key == "cellsize") {
      h.cellsize = parse_double(*value, line);
      seen_cs = true;
    } else if (key == "nodata_value") {
      h.nodata_value = parse_double(*value, line);
    } else {
      throw ParseError("line " + std::to_string(line) + ": unknown header key '" + std::string(*key_tok) + "'");
    }
  }
  if (!(seen_ncols && seen_nrows && seen_x && seen_y && seen_cs)) {
    throw ParseError("incomplete header: ncols, nrows, xllcorner, yllcorner and cellsize are required");
  }
  if (!(h.cellsize > 0.0)) throw ParseError("cellsize must be positive");

  const auto n = static_cast<std::size_t>(h.ncols) * static_cast<std::size_t>(h.nrows);
  std::vector<double> values;
  values.reserve(n);
  bool all_integer = true;
  bool any_data = false;
  while (values.size() < n) {
    const auto t = tok.next();
    if (!t) {
      throw ParseError("expected " + std::to_string(n) + " data values, found " +
                       std::to_string(values.size()));
    }
    const double v = parse_double(*t, tok.line());
    if (std::isnan(v)) {
      throw InvariantError("line " + std::to_string(tok.line()) + ": NaN is not a valid cell value");
    }
    if (v != h.nodata_value) {
      any_data = true;
      all_integer = all_integer && is_integer_literal(*t);
    }
    values.push_back(v);
  }
  if (tok.next()) throw ParseError("trailing data after " + std::to_string(n) + " values");

  const auto type = any_data && all_integer ? ValueType::Integer : ValueType::Real;
  return Raster(h, std::move(values), type);
}

Raster load_ascii_grid(const std::filesystem::path& path) { return parse_ascii_grid(read_file(path)); }

std::string format_ascii_grid(const Raster& raster) {
  const auto& h = raster.header();
  std::string out;
  out.reserve(raster.size() * 8 + 128);
  const auto nodata = format_real(h.nodata_value);
  append_header(out, h, nodata);
  const bool integer = raster.value_type() == ValueType::Integer;
  const auto ncols = static_cast<std::size_t>(h.ncols);
  for (std::size_t i = 0; i < raster.size(); ++i) {
    if (raster.is_nodata(i)) {
      out += nodata;
    } else if (integer) {
      out += format_fixed_integer(raster[i]);
    } else {
      auto s = format_real(raster[i]);
      if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
      out += s;
    }
    out += (i + 1) % ncols == 0 ? '\n' : ' ';
  }
  return out;
}

void save_ascii_grid(const Raster& raster, const std::filesystem::path& path) {
  write_file(path, format_ascii_grid(raster));
}

std::string format_int_grid(const GridHeader& header, std::span<const std::int32_t> values,
                            std::int32_t nodata) {
  std::string out;
  out.reserve(values.size() * 3 + 128);
  append_header(out, header, std::to_string(nodata));
  const auto ncols = static_cast<std::size_t>(header.ncols);
  for (std::size_t i = 0; i < values.size(); ++i) {
    out += std::to_string(values[i]);
    out += (i + 1) % ncols == 0 ? '\n' : ' ';
  }
  return out;
}

void save_int_grid(const GridHeader& header, std::span<const std::int32_t> values,
                   std::int32_t nodata, const std::filesystem::path& path) {
  write_file(path, format_int_grid(header, values, nodata));
}

}  // namespace floodfill
