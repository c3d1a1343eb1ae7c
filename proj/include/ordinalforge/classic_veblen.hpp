#pragma once

// The finitary Veblen system over one-row arrays: position-indexed star
// terms, the seven-way class split, and the fundamental-sequence rules,
// together with the Cantor-normal-form fill-in for arbitrary terms.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ordinalforge/errors.hpp"
#include "ordinalforge/term.hpp"
#include "ordinalforge/term_io.hpp"

namespace ordinalforge::veblen {

struct StarEntry {
  Term position;     // a countable ordinal notation
  Term coefficient;  // nonzero
};

// Finite map position -> coefficient, stored with positions descending.
struct StarTerm {
  std::vector<StarEntry> entries;

  bool empty() const { return entries.empty(); }
  const StarEntry& least() const { return entries.back(); }
};

// Builds a star term. Zero coefficients are dropped; entries landing on the
// same position merge by ordinal addition in the order given. The sequence
// rules rely on the merge when a position's own sequence reaches zero.
inline StarTerm make_star(std::vector<StarEntry> entries) {
  std::vector<StarEntry> kept;
  for (auto& e : entries) {
    if (e.coefficient.is_zero()) continue;
    bool merged = false;
    for (auto& k : kept) {
      if (compare(k.position, e.position) == Ordering::Equal) {
        k.coefficient = add_unchecked(k.coefficient, e.coefficient);
        merged = true;
        break;
      }
    }
    if (!merged) kept.push_back(std::move(e));
  }
  std::sort(kept.begin(), kept.end(), [](const StarEntry& a, const StarEntry& b) {
    Ordering o = compare(a.position, b.position);
    if (o != Ordering::Equal) return o == Ordering::Greater;
    return structural_cmp(a.position, b.position) > 0;
  });
  return StarTerm{std::move(kept)};
}

// One-row arrays are those whose positions are epsilon or a single entry at
// epsilon; they correspond to star terms with the inner coefficient as the
// position ordinal.
inline StarTerm to_star(const ArrayTerm& a) {
  std::vector<StarEntry> out;
  for (const auto& e : a.entries()) {
    if (e.position.empty()) {
      out.push_back(StarEntry{Term::zero(), e.coefficient});
    } else if (e.position.size() == 1 && e.position.entry(0).position.empty()) {
      out.push_back(StarEntry{e.position.entry(0).coefficient, e.coefficient});
    } else {
      throw NotOneRowError("array is not one-row: position " + print(e.position));
    }
  }
  return make_star(std::move(out));
}

inline ArrayTerm from_star(const StarTerm& s) {
  std::vector<ArrayEntry> out;
  for (const auto& e : s.entries) {
    if (e.coefficient.is_zero()) continue;
    ArrayTerm pos = e.position.is_zero()
                        ? ArrayTerm()
                        : ArrayTerm::singleton(e.position, ArrayTerm());
    out.push_back(ArrayEntry{e.coefficient, std::move(pos)});
  }
  return ArrayTerm::make(std::move(out));
}

inline Term star_term(const StarTerm& s) { return Term::phi(from_star(s)); }

inline std::string print(const StarTerm& s) {
  std::string out = "phi*(";
  bool first = true;
  for (const auto& e : s.entries) {
    if (!first) out += ",";
    first = false;
    out += ordinalforge::print(e.coefficient);
    out += "@";
    out += ordinalforge::print(e.position);
  }
  out += ")";
  return out;
}

inline StarTerm parse_star(std::string_view text) {
  std::string t(text);
  std::size_t open = t.find('(');
  if (t.rfind("phi*", 0) != 0 || open == std::string::npos || t.back() != ')')
    throw ParseError("expected phi*(...)", 0);
  std::string body = t.substr(open + 1, t.size() - open - 2);
  std::vector<StarEntry> entries;
  std::size_t start = 0;
  int depth = 0;
  auto flush = [&](std::size_t end) {
    std::string item = body.substr(start, end - start);
    if (item.find_first_not_of(" \t") == std::string::npos) return;
    std::size_t at = item.find('@');
    if (at == std::string::npos) throw ParseError("expected coefficient@position", start);
    entries.push_back(StarEntry{parse_term(item.substr(at + 1)), parse_term(item.substr(0, at))});
  };
  for (std::size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      flush(i);
      start = i + 1;
    }
  }
  if (start < body.size()) flush(body.size());
  return make_star(std::move(entries));
}

// ---------------------------------------------------------------------------
// Class split. Classification looks at the least-position entry; the listing
// order resolves overlaps.

enum class VeblenClass { Zero0, A, B, C, D, E, F };

inline const char* to_string(VeblenClass c) {
  switch (c) {
    case VeblenClass::Zero0: return "0";
    case VeblenClass::A: return "A";
    case VeblenClass::B: return "B";
    case VeblenClass::C: return "C";
    case VeblenClass::D: return "D";
    case VeblenClass::E: return "E";
    default: return "F";
  }
}

inline VeblenClass classify_class(const StarTerm& s) {
  if (s.empty()) return VeblenClass::Zero0;
  const StarEntry& le = s.least();
  TermKind ck = term_kind(le.coefficient);
  TermKind pk = term_kind(le.position);
  if (s.entries.size() == 1 && le.coefficient == Term::one()) {
    if (pk.kind == TermKind::K::Successor) return VeblenClass::A;
    if (pk.kind == TermKind::K::Limit) return VeblenClass::B;
  }
  if (le.position.is_zero()) return VeblenClass::C;
  if (ck.kind == TermKind::K::Successor && pk.kind == TermKind::K::Successor)
    return VeblenClass::D;
  if (ck.kind == TermKind::K::Limit) return VeblenClass::E;
  if (ck.kind == TermKind::K::Successor && pk.kind == TermKind::K::Limit)
    return VeblenClass::F;
  throw InvariantError("unclassifiable star term " + print(s));
}

// ---------------------------------------------------------------------------
// Fundamental sequences.

Term fs_term(const Term& t, std::size_t n);

inline StarTerm star_without_least(const StarTerm& s) {
  StarTerm r = s;
  r.entries.pop_back();
  return r;
}

inline StarTerm star_with(const StarTerm& base, std::vector<StarEntry> extra) {
  std::vector<StarEntry> all = base.entries;
  for (auto& e : extra) all.push_back(std::move(e));
  return make_star(std::move(all));
}

// The (1+n)-th fundamental-sequence element of the limit notation phi*(s).
inline Term fs_star(const StarTerm& s, std::size_t n) {
  if (s.empty()) throw NotALimitError("phi*() denotes 1, a successor");

  const StarEntry le = s.least();
  TermKind ck = term_kind(le.coefficient);

  // Single entry at position zero: the plain omega-power rule.
  if (s.entries.size() == 1 && le.position.is_zero()) {
    if (ck.kind == TermKind::K::Successor) {
      Term base = star_term(make_star({StarEntry{Term::zero(), ck.predecessor}}));
      return Term::sum(std::vector<Term>(n, base));
    }
    return star_term(make_star({StarEntry{Term::zero(), fs_term(le.coefficient, n)}}));
  }

  switch (classify_class(s)) {
    case VeblenClass::A: {
      Term pd = term_kind(le.position).predecessor;
      Term cur = star_term(make_star({StarEntry{pd, Term::one()}}));
      for (std::size_t i = 0; i < n; ++i)
        cur = star_term(make_star({StarEntry{pd, cur}}));
      return cur;
    }
    case VeblenClass::B:
      return star_term(make_star({StarEntry{fs_term(le.position, n), Term::one()}}));
    case VeblenClass::C: {
      if (ck.kind == TermKind::K::Limit) {
        return star_term(star_with(star_without_least(s),
                                   {StarEntry{Term::zero(), fs_term(le.coefficient, n)}}));
      }
      StarTerm rest = star_without_least(s);  // the head zeroed out
      Term rho = star_term(star_with(rest, {StarEntry{Term::zero(), ck.predecessor}}));
      Term rho1 = add_unchecked(rho, Term::one());
      const StarEntry rl = rest.least();
      TermKind rck = term_kind(rl.coefficient);
      switch (classify_class(rest)) {
        case VeblenClass::A: {
          Term pd = term_kind(rl.position).predecessor;
          Term cur = rho1;
          for (std::size_t i = 0; i < n; ++i)
            cur = star_term(make_star({StarEntry{pd, cur}}));
          return cur;
        }
        case VeblenClass::B:
          return star_term(star_with(star_without_least(rest),
                                     {StarEntry{Term::zero(), rho1},
                                      StarEntry{fs_term(rl.position, n), Term::one()}}));
        case VeblenClass::D: {
          StarTerm deeper = star_without_least(rest);
          Term pd = term_kind(rl.position).predecessor;
          Term cur = rho1;
          for (std::size_t i = 0; i < n; ++i)
            cur = star_term(star_with(deeper, {StarEntry{rl.position, rck.predecessor},
                                               StarEntry{pd, cur}}));
          return cur;
        }
        case VeblenClass::E:
          return star_term(star_with(star_without_least(rest),
                                     {StarEntry{Term::zero(), rho1},
                                      StarEntry{rl.position, fs_term(rl.coefficient, n)}}));
        case VeblenClass::F:
          return star_term(star_with(star_without_least(rest),
                                     {StarEntry{Term::zero(), rho1},
                                      StarEntry{fs_term(rl.position, n), Term::one()},
                                      StarEntry{rl.position, rck.predecessor}}));
        default:
          throw InvariantError("class C residue cannot be empty here");
      }
    }
    case VeblenClass::D: {
      StarTerm rest = star_without_least(s);
      Term pd = term_kind(le.position).predecessor;
      Term cur = Term::zero();
      for (std::size_t i = 0; i < n; ++i)
        cur = star_term(star_with(rest, {StarEntry{le.position, ck.predecessor},
                                         StarEntry{pd, cur}}));
      return cur;
    }
    case VeblenClass::E:
      return star_term(star_with(star_without_least(s),
                                 {StarEntry{le.position, fs_term(le.coefficient, n)}}));
    case VeblenClass::F:
      return star_term(star_with(star_without_least(s),
                                 {StarEntry{fs_term(le.position, n), Term::one()},
                                  StarEntry{le.position, ck.predecessor}}));
    default:
      throw InvariantError("fs_star fell through the class split");
  }
}

// Fundamental sequences for arbitrary standard terms: 0[n] = 1[n] = 0, the
// sequence of a successor is its predecessor, sums recurse into the last
// summand, and one-row principals use the star rules. Principals outside the
// one-row fragment have no class-based sequence.
inline Term fs_term(const Term& t, std::size_t n) {
  TermKind k = term_kind(t);
  if (k.kind == TermKind::K::Zero) return Term::zero();
  if (k.kind == TermKind::K::Successor) return k.predecessor;
  if (t.is_sum()) {
    std::vector<Term> parts = t.parts();
    Term last = parts.back();
    parts.pop_back();
    Term fl = fs_term(last, n);
    for (const Term& q : summands(fl)) parts.push_back(q);
    return Term::sum(std::move(parts));
  }
  StarTerm s;
  try {
    s = to_star(t.array());
  } catch (const NotOneRowError&) {
    throw FsUnavailableError("no class-based fundamental sequence for " + ordinalforge::print(t));
  }
  return fs_star(s, n);
}

}  // namespace ordinalforge::veblen
