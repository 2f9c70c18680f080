#pragma once

#include <cctype>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "sunflower/error.hpp"
#include "sunflower/finite_set.hpp"

namespace sunflower {

// Parses the `{a,b,c}` set notation. Whitespace is tolerated anywhere.
inline FiniteSet parse_set_text(std::string_view text) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto fail = [&](const std::string& message) -> void {
    throw error(errc::syntax_error, message + " at offset " + std::to_string(pos));
  };
  skip_ws();
  if (pos >= text.size() || text[pos] != '{') fail("expected '{'");
  ++pos;
  std::vector<Element> xs;
  skip_ws();
  if (pos < text.size() && text[pos] != '}') {
    while (true) {
      skip_ws();
      if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
        fail("expected a natural number");
      }
      std::uint64_t v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        std::uint64_t digit = static_cast<std::uint64_t>(text[pos] - '0');
        if (v > (UINT64_MAX - digit) / 10) fail("integer literal out of range");
        v = v * 10 + digit;
        ++pos;
      }
      xs.push_back(v);
      skip_ws();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      break;
    }
  }
  if (pos >= text.size() || text[pos] != '}') fail("expected '}'");
  ++pos;
  skip_ws();
  if (pos != text.size()) fail("trailing input after set");
  return FiniteSet(std::move(xs));
}

// Reads the .sets family format: one set per line, '#' starts a comment,
// blank lines are skipped. Duplicate lines collapse to the first occurrence.
inline FiniteFamily read_sets(std::istream& in) {
  FiniteFamily family;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    bool blank = true;
    for (char c : line) {
      if (!std::isspace(static_cast<unsigned char>(c))) {
        blank = false;
        break;
      }
    }
    if (blank) continue;
    family.add(parse_set_text(line));
  }
  return family;
}

inline std::string family_to_sets_text(const FiniteFamily& f) {
  std::string out;
  for (const auto& s : f) {
    out += set_to_string(s);
    out += '\n';
  }
  return out;
}

}  // namespace sunflower
