#pragma once

// Text form of terms and arrays.
//
//   term  := "0" | term "+" term | "p" array
//   array := "(" [entry ("," entry)*] ")"
//   entry := term "@" array
//
// Sugar: decimal numerals abbreviate 1+...+1, and "w" abbreviates p(1@()).
// Whitespace is insignificant. The printer emits the sugared canonical form,
// which the parser maps back to the same value.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ordinalforge/errors.hpp"
#include "ordinalforge/term.hpp"

namespace ordinalforge {

namespace detail {

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term parse_term_all() {
    Term t = parse_term();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

  ArrayTerm parse_array_all() {
    ArrayTerm a = parse_array();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return a;
  }

  Term parse_term() {
    std::vector<Term> parts;
    parts.push_back(parse_atom());
    while (true) {
      skip_ws();
      if (!eat('+')) break;
      parts.push_back(parse_atom());
    }
    return Term::sum(std::move(parts));
  }

  ArrayTerm parse_array() {
    skip_ws();
    expect('(');
    std::vector<ArrayEntry> entries;
    skip_ws();
    if (eat(')')) return ArrayTerm();
    while (true) {
      Term coeff = parse_term();
      skip_ws();
      expect('@');
      ArrayTerm pos = parse_array();
      entries.push_back(ArrayEntry{std::move(coeff), std::move(pos)});
      skip_ws();
      if (eat(',')) continue;
      expect(')');
      break;
    }
    return ArrayTerm::make(std::move(entries));
  }

 private:
  Term parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == 'w') {
      ++pos_;
      return Term::omega();
    }
    if (c == 'p') {
      ++pos_;
      return Term::phi(parse_array());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        n = n * 10 + static_cast<std::size_t>(text_[pos_] - '0');
        if (n > 1000000) fail("numeral too large");
        ++pos_;
      }
      return Term::numeral(n);
    }
    fail("expected term");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_ws();
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Term parse_term(std::string_view text) {
  return detail::TermParser(text).parse_term_all();
}

inline ArrayTerm parse_array(std::string_view text) {
  return detail::TermParser(text).parse_array_all();
}

std::string print(const ArrayTerm& a);

inline std::string print(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Zero:
      return "0";
    case Term::Kind::Phi: {
      if (t == Term::one()) return "1";
      if (t == Term::omega()) return "w";
      return "p" + print(t.array());
    }
    default:
      break;
  }
  std::string out;
  const auto& parts = t.parts();
  std::size_t i = 0;
  while (i < parts.size()) {
    if (!out.empty()) out += "+";
    if (parts[i] == Term::one()) {
      std::size_t run = 0;
      while (i < parts.size() && parts[i] == Term::one()) {
        ++run;
        ++i;
      }
      out += std::to_string(run);
    } else {
      out += print(parts[i]);
      ++i;
    }
  }
  return out;
}

inline std::string print(const ArrayTerm& a) {
  std::string out = "(";
  bool first = true;
  for (const auto& e : a.entries()) {
    if (!first) out += ",";
    first = false;
    out += print(e.coefficient);
    out += "@";
    out += print(e.position);
  }
  out += ")";
  return out;
}

}  // namespace ordinalforge
