#pragma once

// Instantiates the semantic array calculus with ordinal notations as
// coefficients, and converts between syntactic arrays and semantic ones.

#include <utility>
#include <vector>

#include "ordinalforge/array_core.hpp"
#include "ordinalforge/term.hpp"

namespace ordinalforge::arrays {

struct TermTraits {
  using Coeff = Term;
  static Ordering compare(const Term& a, const Term& b) { return ordinalforge::compare(a, b); }
  static bool is_zero(const Term& t) { return t.is_zero(); }
  static CoeffKind kind(const Term& t) {
    switch (term_kind(t).kind) {
      case TermKind::K::Zero: return CoeffKind::Zero;
      case TermKind::K::Successor: return CoeffKind::Successor;
      default: return CoeffKind::Limit;
    }
  }
  static Term pred(const Term& t) { return term_kind(t).predecessor; }
  static Term numeral(unsigned n) { return Term::numeral(n); }
};

using TermArray = ArrayValue<TermTraits>;

inline TermArray to_semantic(const ArrayTerm& a) {
  std::vector<TermArray::Entry> out;
  out.reserve(a.size());
  for (const auto& e : a.entries()) {
    out.push_back(TermArray::Entry{e.coefficient, to_semantic(e.position)});
  }
  return TermArray::make(std::move(out));
}

inline ArrayTerm to_syntactic(const TermArray& v) {
  std::vector<ArrayEntry> out;
  out.reserve(v.size());
  for (const auto& e : v.entries()) {
    out.push_back(ArrayEntry{e.coefficient, to_syntactic(e.position)});
  }
  return ArrayTerm::make(std::move(out));
}

}  // namespace ordinalforge::arrays
