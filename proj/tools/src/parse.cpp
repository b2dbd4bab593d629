#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "kohn/cli.hpp"
#include "kohn/error.hpp"

namespace kohn::cli {

namespace {

struct Located {
  Exponent point;
  std::string where;
};

std::string line_col(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

[[noreturn]] void parse_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ParseError, where + ": " + what);
}

std::int64_t to_exponent(std::int64_t v, const std::string& where) {
  if (v < 0) {
    throw Error(ErrorCode::NegativeExponent,
                where + ": negative exponent " + std::to_string(v));
  }
  return v;
}

std::vector<Located> parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    parse_error(line_col(text, byte), "invalid JSON");
  }
  if (!doc.is_array()) parse_error("line 1, column 1", "expected an array of [a,b] pairs");
  std::vector<Located> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& item = doc[i];
    const std::string where = "element " + std::to_string(i);
    if (!item.is_array() || item.size() != 2) parse_error(where, "expected a pair [a,b]");
    std::int64_t v[2];
    for (int k = 0; k < 2; ++k) {
      if (item[k].is_number_unsigned()) {
        const auto u = item[k].get<std::uint64_t>();
        if (u > std::uint64_t(1) << 31) parse_error(where, "exponent too large");
        v[k] = std::int64_t(u);
      } else if (item[k].is_number_integer()) {
        v[k] = to_exponent(item[k].get<std::int64_t>(), where);
      } else {
        parse_error(where, "exponents must be integers");
      }
    }
    out.push_back({{v[0], v[1]}, where});
  }
  return out;
}

std::vector<Located> parse_tokens(std::string_view text) {
  std::vector<Located> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    const std::string_view token = text.substr(i, j - i);
    const std::string where = line_col(text, i);
    const auto comma = token.find(',');
    if (comma == std::string_view::npos || token.find(',', comma + 1) != std::string_view::npos) {
      parse_error(where, "expected a token 'a,b', got '" + std::string(token) + "'");
    }
    std::int64_t v[2];
    const std::string_view parts[2] = {token.substr(0, comma), token.substr(comma + 1)};
    for (int k = 0; k < 2; ++k) {
      const auto* first = parts[k].data();
      const auto* last = first + parts[k].size();
      auto [ptr, ec] = std::from_chars(first, last, v[k]);
      if (parts[k].empty() || ec != std::errc{} || ptr != last) {
        parse_error(where, "'" + std::string(parts[k]) + "' is not an integer");
      }
      if (v[k] > (std::int64_t(1) << 31)) parse_error(where, "exponent too large");
      to_exponent(v[k], where);
    }
    out.push_back({{v[0], v[1]}, where});
    i = j;
  }
  return out;
}

}  // namespace

ExponentSet parse_gamma(std::string_view text) {
  std::size_t start = 0;
  while (start < text.size() && std::isspace(static_cast<unsigned char>(text[start]))) ++start;
  const bool json = start < text.size() && text[start] == '[';
  const auto points = json ? parse_json(text) : parse_tokens(text);
  if (points.empty()) throw Error(ErrorCode::EmptySet, "exponent set is empty");

  std::map<Exponent, std::size_t> seen;
  std::vector<Exponent> plain;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [it, fresh] = seen.emplace(points[i].point, i);
    if (!fresh) {
      throw Error(ErrorCode::DuplicatePoint,
                  "points " + std::to_string(it->second) + " and " + std::to_string(i) +
                      " are both " + to_string(points[i].point));
    }
    plain.push_back(points[i].point);
  }
  return ExponentSet(std::move(plain));
}

ExponentSet read_gamma_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_gamma(buf.str());
}

std::string serialize_gamma(const ExponentSet& gamma) { return gamma_json(gamma).dump(); }

nlohmann::json gamma_json(const ExponentSet& gamma) {
  auto arr = nlohmann::json::array();
  for (const auto& p : gamma) arr.push_back({p.alpha, p.beta});
  return arr;
}

}  // namespace kohn::cli
