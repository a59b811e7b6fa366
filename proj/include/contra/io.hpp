#pragma once

#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "contra/context.hpp"

namespace contra {

enum class Format { cxt, csv };

class ParseError : public ContextError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : ContextError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

inline std::optional<Format> parse_format(std::string_view name) {
  if (name == "cxt" || name == "burmeister") return Format::cxt;
  if (name == "csv") return Format::csv;
  return std::nullopt;
}

/// Guesses the format from a file extension; defaults to cxt.
inline Format format_for_path(std::string_view path) {
  return path.ends_with(".csv") ? Format::csv : Format::cxt;
}

namespace detail {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& out) {
    if (!std::getline(in_, out)) return false;
    ++line_;
    if (!out.empty() && out.back() == '\r') out.pop_back();
    return true;
  }

  std::string expect(const char* what) {
    std::string s;
    if (!next(s)) throw ParseError(line_ + 1, std::string("unexpected end of input, expected ") + what);
    return s;
  }

  std::size_t line() const { return line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

inline std::size_t parse_count(const std::string& s, std::size_t line, const char* what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, std::string("expected ") + what + ", got '" + s + "'");
  }
  if (pos != s.size() || s.empty() || s.front() == '-')
    throw ParseError(line, std::string("expected ") + what + ", got '" + s + "'");
  return static_cast<std::size_t>(v);
}

// RFC 4180 field splitting; quoted fields may contain separators and "".
inline std::vector<std::string> split_csv(const std::string& line, std::size_t lineno) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false, was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"' && cur.empty() && !was_quoted) {
      quoted = was_quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
      was_quoted = false;
    } else {
      cur += c;
    }
  }
  if (quoted) throw ParseError(lineno, "unterminated quoted field");
  out.push_back(std::move(cur));
  return out;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

inline FormalContext read_cxt(std::istream& in) {
  LineReader r(in);
  if (r.expect("'B' header") != "B") throw ParseError(r.line(), "missing 'B' header");
  std::string s = r.expect("blank line");
  if (!s.empty()) throw ParseError(r.line(), "expected blank line after header");
  s = r.expect("object count");
  const std::size_t n = parse_count(s, r.line(), "object count");
  s = r.expect("attribute count");
  const std::size_t m = parse_count(s, r.line(), "attribute count");
  s = r.expect("blank line");
  if (!s.empty()) throw ParseError(r.line(), "expected blank line after counts");
  std::vector<std::string> objs, attrs;
  auto read_labels = [&](std::vector<std::string>& into, std::size_t count, const char* what) {
    std::unordered_set<std::string> seen;
    for (std::size_t i = 0; i < count; ++i) {
      into.push_back(r.expect(what));
      if (!seen.insert(into.back()).second)
        throw ParseError(r.line(), std::string("duplicate ") + what + " '" + into.back() + "'");
    }
  };
  read_labels(objs, n, "object name");
  read_labels(attrs, m, "attribute name");
  std::vector<Bits> rows;
  for (std::size_t g = 0; g < n; ++g) {
    s = r.expect("incidence row");
    if (s.size() != m)
      throw ParseError(r.line(), "row has " + std::to_string(s.size()) + " cells, expected " + std::to_string(m));
    Bits row(m);
    for (std::size_t j = 0; j < m; ++j) {
      if (s[j] == 'X' || s[j] == 'x') row.set(j);
      else if (s[j] != '.') throw ParseError(r.line(), std::string("invalid cell '") + s[j] + "'");
    }
    rows.push_back(std::move(row));
  }
  while (r.next(s))
    if (!s.empty()) throw ParseError(r.line(), "trailing content after incidence rows");
  return FormalContext(std::move(objs), std::move(attrs), std::move(rows));
}

inline FormalContext read_csv(std::istream& in) {
  LineReader r(in);
  std::string s;
  if (!r.next(s)) throw ParseError(1, "empty input, expected header row");
  auto header = split_csv(s, r.line());
  std::vector<std::string> attrs(header.begin() + 1, header.end());
  {
    std::unordered_set<std::string> seen;
    for (const auto& a : attrs)
      if (!seen.insert(a).second) throw ParseError(1, "duplicate attribute name '" + a + "'");
  }
  const std::size_t m = attrs.size();
  std::vector<std::string> objs;
  std::unordered_set<std::string> seen_objects;
  std::vector<Bits> rows;
  while (r.next(s)) {
    if (s.empty()) continue;
    auto cells = split_csv(s, r.line());
    if (cells.size() != m + 1)
      throw ParseError(r.line(), "row has " + std::to_string(cells.size()) + " fields, header has " +
                                     std::to_string(m + 1));
    Bits row(m);
    for (std::size_t j = 0; j < m; ++j) {
      const auto& c = cells[j + 1];
      if (c == "1" || c == "x" || c == "X") row.set(j);
      else if (!(c == "0" || c.empty())) throw ParseError(r.line(), "invalid cell '" + c + "'");
    }
    if (!seen_objects.insert(cells[0]).second)
      throw ParseError(r.line(), "duplicate object name '" + cells[0] + "'");
    objs.push_back(cells[0]);
    rows.push_back(std::move(row));
  }
  return FormalContext(std::move(objs), std::move(attrs), std::move(rows));
}

}  // namespace detail

inline FormalContext load_context(std::istream& in, Format fmt) {
  return fmt == Format::cxt ? detail::read_cxt(in) : detail::read_csv(in);
}

inline FormalContext load_context_file(const std::string& path, std::optional<Format> fmt = std::nullopt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ContextError("cannot open '" + path + "'");
  return load_context(in, fmt.value_or(format_for_path(path)));
}

inline FormalContext parse_context(const std::string& text, Format fmt) {
  std::istringstream in(text);
  return load_context(in, fmt);
}

inline void save_context(std::ostream& out, const FormalContext& ctx, Format fmt) {
  if (fmt == Format::cxt) {
    out << "B\n\n" << ctx.num_objects() << '\n' << ctx.num_attributes() << "\n\n";
    for (const auto& g : ctx.objects()) out << g << '\n';
    for (const auto& m : ctx.attributes()) out << m << '\n';
    for (std::size_t g = 0; g < ctx.num_objects(); ++g) {
      for (std::size_t m = 0; m < ctx.num_attributes(); ++m) out << (ctx.incident(g, m) ? 'X' : '.');
      out << '\n';
    }
    return;
  }
  for (const auto& m : ctx.attributes()) out << ',' << detail::csv_field(m);
  out << '\n';
  for (std::size_t g = 0; g < ctx.num_objects(); ++g) {
    out << detail::csv_field(ctx.object(g));
    for (std::size_t m = 0; m < ctx.num_attributes(); ++m) out << ',' << (ctx.incident(g, m) ? '1' : '0');
    out << '\n';
  }
}

inline std::string format_context(const FormalContext& ctx, Format fmt) {
  std::ostringstream out;
  save_context(out, ctx, fmt);
  return out.str();
}

}  // namespace contra
