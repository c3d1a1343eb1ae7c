#pragma once

// Formal ordinal notations: zero, normal-form sums, and phi applied to a
// nested array of (coefficient @ position) entries. Terms are immutable and
// structurally shared; all operations are pure.

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ordinalforge/errors.hpp"
#include "ordinalforge/ordering.hpp"

namespace ordinalforge {

class ArrayTerm;
struct ArrayEntry;

class Term {
 public:
  enum class Kind { Zero, Sum, Phi };

  Term() = default;  // zero

  Kind kind() const;
  bool is_zero() const { return node_ == nullptr; }
  bool is_sum() const { return kind() == Kind::Sum; }
  bool is_phi() const { return kind() == Kind::Phi; }

  // Sum only: flattened parts, length >= 2, right-associated on printing.
  const std::vector<Term>& parts() const;
  // Phi only.
  const ArrayTerm& array() const;

  static Term zero() { return Term(); }
  static Term one();                      // phi()
  static Term omega();                    // phi(1@())
  static Term numeral(std::size_t n);     // n-fold sum of one()
  static Term sum(std::vector<Term> parts);
  static Term phi(ArrayTerm array);

  bool operator==(const Term& o) const;
  bool operator!=(const Term& o) const { return !(*this == o); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;

  friend int structural_cmp(const Term& a, const Term& b);
};

struct ArrayEntry;

// Syntactic array: finite sequence of (coefficient @ position) entries with
// pairwise distinct positions, stored sorted by position, largest first.
class ArrayTerm {
 public:
  ArrayTerm() = default;  // epsilon

  // Canonicalizes: sorts entries by descending position and rejects
  // structurally duplicate positions. Entries whose positions are
  // semantically tied but structurally distinct are kept and the array is
  // flagged ambiguous; order-sensitive operations on it raise
  // AmbiguityError.
  static ArrayTerm make(std::vector<ArrayEntry> entries);
  static ArrayTerm singleton(Term coefficient, ArrayTerm position);

  bool empty() const { return entries_ == nullptr || entries_->empty(); }
  std::size_t size() const { return entries_ ? entries_->size() : 0; }
  const ArrayEntry& entry(std::size_t i) const { return (*entries_)[i]; }
  const std::vector<ArrayEntry>& entries() const;
  bool ambiguous() const { return ambiguous_; }

  bool has_eps_entry() const;       // is some entry at position epsilon?
  ArrayTerm without_eps_entry() const;
  ArrayTerm without_entry(std::size_t i) const;

  bool operator==(const ArrayTerm& o) const;
  bool operator!=(const ArrayTerm& o) const { return !(*this == o); }

 private:
  // Entries already canonical; trusted by internal callers.
  struct sorted_tag {};
  ArrayTerm(std::vector<ArrayEntry> entries, sorted_tag);

  std::shared_ptr<const std::vector<ArrayEntry>> entries_;
  bool ambiguous_ = false;

  friend int structural_cmp(const ArrayTerm& a, const ArrayTerm& b);
};

struct ArrayEntry {
  Term coefficient;
  ArrayTerm position;
};

struct Term::Node {
  Kind kind = Kind::Zero;
  std::vector<Term> sum_parts;
  ArrayTerm phi_array;
};

// ---------------------------------------------------------------------------
// Term basics

inline Term::Kind Term::kind() const {
  return node_ ? node_->kind : Kind::Zero;
}

inline const std::vector<Term>& Term::parts() const {
  return node_->sum_parts;
}

inline const ArrayTerm& Term::array() const {
  return node_->phi_array;
}

inline Term Term::phi(ArrayTerm array) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Phi;
  n->phi_array = std::move(array);
  return Term(std::move(n));
}

inline Term Term::one() {
  static const Term t = phi(ArrayTerm());
  return t;
}

inline Term Term::sum(std::vector<Term> parts) {
  std::vector<Term> flat;
  flat.reserve(parts.size());
  for (auto& p : parts) {
    if (p.is_sum()) {
      for (const auto& q : p.parts()) flat.push_back(q);
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (flat.empty()) return zero();
  if (flat.size() == 1) return flat.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->sum_parts = std::move(flat);
  return Term(std::move(n));
}

inline Term Term::numeral(std::size_t n) {
  if (n == 0) return zero();
  return sum(std::vector<Term>(n, one()));
}

// ---------------------------------------------------------------------------
// Structural (syntactic) comparison: a total order on strings, used for
// canonical storage and set semantics. Distinct from the semantic order.

int structural_cmp(const ArrayTerm& a, const ArrayTerm& b);

inline int structural_cmp(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return 0;
  auto ka = static_cast<int>(a.kind()), kb = static_cast<int>(b.kind());
  if (ka != kb) return ka < kb ? -1 : 1;
  switch (a.kind()) {
    case Term::Kind::Zero:
      return 0;
    case Term::Kind::Sum: {
      const auto& pa = a.parts();
      const auto& pb = b.parts();
      if (pa.size() != pb.size()) return pa.size() < pb.size() ? -1 : 1;
      for (std::size_t i = 0; i < pa.size(); ++i) {
        if (int c = structural_cmp(pa[i], pb[i])) return c;
      }
      return 0;
    }
    default: {
      return structural_cmp(a.array(), b.array());
    }
  }
}

inline int structural_cmp(const ArrayTerm& a, const ArrayTerm& b) {
  if (a.entries_ == b.entries_) return 0;
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (int c = structural_cmp(a.entry(i).position, b.entry(i).position)) return c;
    if (int c = structural_cmp(a.entry(i).coefficient, b.entry(i).coefficient)) return c;
  }
  return 0;
}

inline bool Term::operator==(const Term& o) const {
  return structural_cmp(*this, o) == 0;
}

inline bool ArrayTerm::operator==(const ArrayTerm& o) const {
  return structural_cmp(*this, o) == 0;
}

// ---------------------------------------------------------------------------
// Semantic order on terms and arrays.

bool term_lt(const Term& a, const Term& b);
Ordering compare(const Term& a, const Term& b);

// Non-throwing variant of the array order used for canonical sorting:
// semantically tied positions fall back to the structural order.
inline Ordering array_order(const ArrayTerm& a, const ArrayTerm& b) {
  for (std::size_t i = 0;; ++i) {
    bool ae = i >= a.size(), be = i >= b.size();
    if (ae && be) return Ordering::Equal;
    if (ae) return Ordering::Less;
    if (be) return Ordering::Greater;
    Ordering p = array_order(a.entry(i).position, b.entry(i).position);
    if (p != Ordering::Equal) return p;
    Ordering c = compare(a.entry(i).coefficient, b.entry(i).coefficient);
    if (c != Ordering::Equal) return c;
  }
}

// The array order: compares the largest-position entries first (position,
// then coefficient), then recurses with those entries removed.
inline Ordering array_compare(const ArrayTerm& a, const ArrayTerm& b) {
  if (a.ambiguous() || b.ambiguous())
    throw AmbiguityError("array order undefined: maximal position is not unique");
  for (std::size_t i = 0;; ++i) {
    bool ae = i >= a.size(), be = i >= b.size();
    if (ae && be) return Ordering::Equal;
    if (ae) return Ordering::Less;
    if (be) return Ordering::Greater;
    Ordering p = array_compare(a.entry(i).position, b.entry(i).position);
    if (p != Ordering::Equal) return p;
    Ordering c = compare(a.entry(i).coefficient, b.entry(i).coefficient);
    if (c != Ordering::Equal) return c;
  }
}

inline ArrayTerm::ArrayTerm(std::vector<ArrayEntry> entries, sorted_tag) {
  if (!entries.empty())
    entries_ = std::make_shared<const std::vector<ArrayEntry>>(std::move(entries));
}

inline ArrayTerm ArrayTerm::make(std::vector<ArrayEntry> entries) {
  if (entries.empty()) return ArrayTerm();
  std::stable_sort(entries.begin(), entries.end(),
                   [](const ArrayEntry& x, const ArrayEntry& y) {
                     Ordering o = array_order(x.position, y.position);
                     if (o != Ordering::Equal) return o == Ordering::Greater;
                     return structural_cmp(x.position, y.position) > 0;
                   });
  bool ambiguous = false;
  for (std::size_t i = 0; i + 1 < entries.size(); ++i) {
    const auto& p = entries[i].position;
    const auto& q = entries[i + 1].position;
    if (structural_cmp(p, q) == 0)
      throw WellFormednessError("duplicate position in array");
    if (array_order(p, q) == Ordering::Equal) ambiguous = true;
  }
  ArrayTerm a(std::move(entries), sorted_tag{});
  a.ambiguous_ = ambiguous;
  return a;
}

inline ArrayTerm ArrayTerm::singleton(Term coefficient, ArrayTerm position) {
  std::vector<ArrayEntry> e;
  e.push_back(ArrayEntry{std::move(coefficient), std::move(position)});
  return ArrayTerm(std::move(e), sorted_tag{});
}

inline const std::vector<ArrayEntry>& ArrayTerm::entries() const {
  static const std::vector<ArrayEntry> kEmpty;
  return entries_ ? *entries_ : kEmpty;
}

inline bool ArrayTerm::has_eps_entry() const {
  return !empty() && entries_->back().position.empty();
}

inline ArrayTerm ArrayTerm::without_entry(std::size_t i) const {
  std::vector<ArrayEntry> e = entries();
  e.erase(e.begin() + static_cast<std::ptrdiff_t>(i));
  ArrayTerm a(std::move(e), sorted_tag{});
  a.ambiguous_ = ambiguous_;
  return a;
}

inline ArrayTerm ArrayTerm::without_eps_entry() const {
  if (!has_eps_entry()) return *this;
  return without_entry(size() - 1);
}

inline Term Term::omega() {
  static const Term t = phi(ArrayTerm::singleton(one(), ArrayTerm()));
  return t;
}

// ---------------------------------------------------------------------------
// Subterms: a term yields itself; an array yields its coefficients together
// with the subterms of its positions.

inline void collect_subterms(const ArrayTerm& a, std::vector<Term>& out) {
  for (const auto& e : a.entries()) {
    out.push_back(e.coefficient);
    collect_subterms(e.position, out);
  }
}

inline std::vector<Term> subterms(const ArrayTerm& a) {
  std::vector<Term> out;
  collect_subterms(a, out);
  std::sort(out.begin(), out.end(),
            [](const Term& x, const Term& y) { return structural_cmp(x, y) < 0; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<Term> subterms(const Term& t) { return {t}; }

// ---------------------------------------------------------------------------
// Sum decomposition helpers.

inline std::vector<Term> summands(const Term& t) {
  if (t.is_zero()) return {};
  if (t.is_sum()) return t.parts();
  return {t};
}

inline Term sum_of(std::vector<Term> parts) { return Term::sum(std::move(parts)); }

inline Term sum_head(const Term& t) { return t.is_sum() ? t.parts().front() : t; }

inline Term sum_tail(const Term& t) {
  const auto& p = t.parts();
  return Term::sum(std::vector<Term>(p.begin() + 1, p.end()));
}

inline bool is_principal(const Term& t) { return t.is_phi(); }

// ---------------------------------------------------------------------------
// The comparison algorithm on terms.

inline bool term_lt(const Term& a, const Term& b) {
  if (a == b) return false;
  if (a.is_zero()) return true;      // a != b here
  if (b.is_zero()) return false;
  if (a.is_sum()) {
    Term ah = sum_head(a);
    if (b.is_sum()) {
      Term bh = sum_head(b);
      if (ah != bh) return term_lt(ah, bh);
      return term_lt(sum_tail(a), sum_tail(b));
    }
    // b principal
    if (ah == b) return false;
    return term_lt(ah, b);
  }
  // a principal
  if (b.is_sum()) {
    Term bh = sum_head(b);
    if (a == bh) return true;
    return term_lt(a, bh);
  }
  // both principal: a < b iff a is bounded by a subterm of B, or A lies
  // below B and every subterm of A is below b.
  const ArrayTerm& A = a.array();
  const ArrayTerm& B = b.array();
  for (const Term& k : subterms(B)) {
    if (!term_lt(k, a)) return true;  // a <= k
  }
  if (array_compare(A, B) != Ordering::Less) return false;
  for (const Term& k : subterms(A)) {
    if (!term_lt(k, b)) return false;
  }
  return true;
}

inline Ordering compare(const Term& a, const Term& b) {
  if (a == b) return Ordering::Equal;
  if (term_lt(a, b)) return Ordering::Less;
  if (term_lt(b, a)) return Ordering::Greater;
  return Ordering::Equal;  // semantically equal, distinct strings
}

inline bool term_leq(const Term& a, const Term& b) { return !term_lt(b, a); }

// ---------------------------------------------------------------------------
// Entry selectors. Entries are stored with positions descending, so the
// largest-position entry is first and the smallest-position entry is last.

struct SelectedEntry {
  std::size_t index = 0;
  Term coefficient;
  ArrayTerm position;
};

inline SelectedEntry max_entry(const ArrayTerm& a) {
  if (a.empty()) throw EmptyArrayError("max_entry of empty array");
  if (a.ambiguous() && a.size() >= 2 &&
      array_order(a.entry(0).position, a.entry(1).position) == Ordering::Equal)
    throw AmbiguityError("maximal position is not unique");
  return {0, a.entry(0).coefficient, a.entry(0).position};
}

inline SelectedEntry min_entry(const ArrayTerm& a) {
  if (a.empty()) throw EmptyArrayError("min_entry of empty array");
  std::size_t last = a.size() - 1;
  if (a.ambiguous() && a.size() >= 2 &&
      array_order(a.entry(last - 1).position, a.entry(last).position) == Ordering::Equal)
    throw AmbiguityError("minimal position is not unique");
  return {last, a.entry(last).coefficient, a.entry(last).position};
}

// m(X): the coefficient at the smallest position; zero for the empty array.
inline Term least_coefficient(const ArrayTerm& a) {
  if (a.empty()) return Term::zero();
  return min_entry(a).coefficient;
}

// q(X, pos): the entries of X whose positions lie strictly above pos.
inline ArrayTerm tail_above(const ArrayTerm& a, const ArrayTerm& pos) {
  std::vector<ArrayEntry> out;
  for (const auto& e : a.entries()) {
    if (array_compare(e.position, pos) == Ordering::Greater) out.push_back(e);
  }
  return ArrayTerm::make(std::move(out));
}

// ---------------------------------------------------------------------------
// Kind classification: a term is a successor exactly when its rightmost
// summand is phi().

struct TermKind {
  enum class K { Zero, Successor, Limit };
  K kind = K::Zero;
  Term predecessor;  // meaningful only for successors
};

inline TermKind term_kind(const Term& t) {
  if (t.is_zero()) return {TermKind::K::Zero, Term::zero()};
  if (t == Term::one()) return {TermKind::K::Successor, Term::zero()};
  if (t.is_sum() && t.parts().back() == Term::one()) {
    std::vector<Term> rest(t.parts().begin(), t.parts().end() - 1);
    return {TermKind::K::Successor, Term::sum(std::move(rest))};
  }
  return {TermKind::K::Limit, Term::zero()};
}

inline bool is_successor(const Term& t) {
  return term_kind(t).kind == TermKind::K::Successor;
}

inline bool is_limit(const Term& t) {
  return term_kind(t).kind == TermKind::K::Limit;
}

// ---------------------------------------------------------------------------
// Standardness.

struct StandardnessReport {
  bool ok = true;
  std::string clause;        // first failing clause when !ok
  std::optional<Term> offender;
};

StandardnessReport check_standard(const Term& t);

inline bool is_standard(const Term& t) { return check_standard(t).ok; }

inline StandardnessReport check_standard(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Zero:
      return {};
    case Term::Kind::Sum: {
      const auto& parts = t.parts();
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].is_zero()) return {false, "2b", parts[i]};
        if (!parts[i].is_phi()) return {false, i == 0 ? "2a" : "2b", parts[i]};
        if (auto r = check_standard(parts[i]); !r.ok) return r;
        if (i > 0 && compare(parts[i], parts[i - 1]) == Ordering::Greater)
          return {false, "2c", parts[i]};
      }
      return {};
    }
    default:
      break;
  }
  const ArrayTerm& X = t.array();
  // Hereditary requirements on the array: every subterm standard and no zero
  // coefficient anywhere (a zero entry would denote a redundant string).
  for (const Term& s : subterms(X)) {
    if (s.is_zero()) return {false, "3z", t};
    if (auto r = check_standard(s); !r.ok) return r;
  }
  if (X.empty()) return {};                                   // 3a
  Term m = least_coefficient(X);
  if (!is_principal(m)) return {};                            // 3b
  ArrayTerm q = tail_above(X, min_entry(X).position);
  for (const Term& a : subterms(q)) {
    if (term_leq(m, a)) return {};                            // 3c
  }
  // 3d: m = phi(X') must not absorb the whole term. The enclosing phi is a
  // fixed point at m exactly when X' stripped of its epsilon entry reaches X
  // or beyond in the array order.
  const ArrayTerm& Xp = m.array();
  if (array_compare(Xp.without_eps_entry(), X) == Ordering::Less) return {};  // 3d
  return {false, "3d", m};
}

// ---------------------------------------------------------------------------
// Normal-form arithmetic.

// The absorption splice behind ordinal addition: summands of a strictly
// below the head of b are dropped. Total on all strings; the sequence rules
// apply it to intermediates that are not normal forms.
inline Term add_unchecked(const Term& a, const Term& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  std::vector<Term> sa = summands(a);
  Term bh = sum_head(b);
  std::vector<Term> out;
  for (const Term& p : sa) {
    if (compare(p, bh) == Ordering::Less) break;
    out.push_back(p);
  }
  for (const Term& q : summands(b)) out.push_back(q);
  return Term::sum(std::move(out));
}

// Ordinal sum of standard terms in normal form.
inline Term add_norm(const Term& a, const Term& b) {
  if (!is_standard(a) || !is_standard(b))
    throw NonStandardError("add_norm requires standard inputs");
  return add_unchecked(a, b);
}

inline Term succ(const Term& t) { return add_norm(t, Term::one()); }

}  // namespace ordinalforge
