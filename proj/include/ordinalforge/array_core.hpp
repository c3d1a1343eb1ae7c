#pragma once

// Semantic array calculus: nested arrays of (coefficient, position) pairs
// with the order, the fundamental-sequence machinery, and the phi-semantics
// descriptor. Parameterized over the coefficient so the same engine runs on
// plain naturals (exhaustive tests) and on ordinal notations (production).
//
// Traits contract:
//   using Coeff = ...;
//   static Ordering  compare(const Coeff&, const Coeff&);   // strict total order
//   static bool      is_zero(const Coeff&);
//   static CoeffKind kind(const Coeff&);                    // zero/successor/limit
//   static Coeff     pred(const Coeff&);                    // successors only
//   static Coeff     numeral(unsigned n);                   // 0, 1, 2

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ordinalforge/errors.hpp"
#include "ordinalforge/ordering.hpp"

namespace ordinalforge::arrays {

enum class CoeffKind { Zero, Successor, Limit };

enum class Mode { A, B };  // A forbids zero coefficients, B permits them

template <class Traits>
class ArrayValue {
 public:
  using Coeff = typename Traits::Coeff;
  struct Entry {
    Coeff coefficient;
    ArrayValue position;
  };

  ArrayValue() = default;  // the base array

  // Set semantics: identical entries collapse; equal positions with distinct
  // coefficients violate injectivity and raise CollisionError.
  static ArrayValue make(std::vector<Entry> entries);
  static ArrayValue singleton(Coeff c, ArrayValue pos) {
    return make({Entry{std::move(c), std::move(pos)}});
  }

  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  const Entry& entry(std::size_t i) const { return entries_[i]; }
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;  // sorted by position, largest first
};

template <class Traits>
Ordering compare(const ArrayValue<Traits>& x, const ArrayValue<Traits>& y);

template <class Traits>
ArrayValue<Traits> ArrayValue<Traits>::make(std::vector<Entry> entries) {
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return compare<Traits>(a.position, b.position) == Ordering::Greater;
  });
  for (std::size_t i = 0; i + 1 < entries.size();) {
    if (compare<Traits>(entries[i].position, entries[i + 1].position) == Ordering::Equal) {
      if (Traits::compare(entries[i].coefficient, entries[i + 1].coefficient) != Ordering::Equal)
        throw CollisionError("two entries share a position with distinct coefficients");
      entries.erase(entries.begin() + static_cast<std::ptrdiff_t>(i + 1));
    } else {
      ++i;
    }
  }
  ArrayValue out;
  out.entries_ = std::move(entries);
  return out;
}

// The order: first difference of the largest entries decides, comparing
// positions before coefficients.
template <class Traits>
Ordering compare(const ArrayValue<Traits>& x, const ArrayValue<Traits>& y) {
  for (std::size_t i = 0;; ++i) {
    bool xe = i >= x.size(), ye = i >= y.size();
    if (xe && ye) return Ordering::Equal;
    if (xe) return Ordering::Less;
    if (ye) return Ordering::Greater;
    Ordering p = compare<Traits>(x.entry(i).position, y.entry(i).position);
    if (p != Ordering::Equal) return p;
    Ordering c = Traits::compare(x.entry(i).coefficient, y.entry(i).coefficient);
    if (c != Ordering::Equal) return c;
  }
}

template <class Traits>
bool equal(const ArrayValue<Traits>& x, const ArrayValue<Traits>& y) {
  return compare<Traits>(x, y) == Ordering::Equal;
}

// ---------------------------------------------------------------------------
// Validation.

struct ValidationReport {
  bool ok = true;
  std::string violation;  // names the first violated clause
};

template <class Traits>
ValidationReport validate(const ArrayValue<Traits>& x, Mode mode) {
  for (const auto& e : x.entries()) {
    if (mode == Mode::A && Traits::is_zero(e.coefficient))
      return {false, "zero coefficient in A-mode entry"};
    if (auto r = validate<Traits>(e.position, mode); !r.ok) return r;
  }
  return {};
}

// Validation of a raw entry list, reporting injectivity violations as a
// diagnostic instead of an exception.
template <class Traits>
ValidationReport validate_entries(const std::vector<typename ArrayValue<Traits>::Entry>& entries,
                                  Mode mode) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i + 1; j < entries.size(); ++j) {
      if (compare<Traits>(entries[i].position, entries[j].position) == Ordering::Equal &&
          Traits::compare(entries[i].coefficient, entries[j].coefficient) != Ordering::Equal)
        return {false, "two entries share a position"};
    }
  }
  for (const auto& e : entries) {
    if (mode == Mode::A && Traits::is_zero(e.coefficient))
      return {false, "zero coefficient in A-mode entry"};
    if (auto r = validate<Traits>(e.position, mode); !r.ok) return r;
  }
  return {};
}

// ---------------------------------------------------------------------------
// Rank and accessors.

template <class Traits>
std::size_t rank(const ArrayValue<Traits>& x) {
  std::size_t r = 0;
  for (const auto& e : x.entries()) r = std::max(r, rank<Traits>(e.position) + 1);
  return r;
}

template <class Traits>
std::vector<ArrayValue<Traits>> range_of(const ArrayValue<Traits>& x) {
  std::vector<ArrayValue<Traits>> out;
  out.reserve(x.size());
  for (const auto& e : x.entries()) out.push_back(e.position);
  return out;
}

// The coefficient at position y, or zero when y is not a position of x.
template <class Traits>
typename Traits::Coeff preimage(const ArrayValue<Traits>& x, const ArrayValue<Traits>& y) {
  for (const auto& e : x.entries()) {
    if (compare<Traits>(e.position, y) == Ordering::Equal) return e.coefficient;
  }
  return Traits::numeral(0);
}

template <class Traits>
ArrayValue<Traits> max_sub(const ArrayValue<Traits>& x) {
  if (x.empty()) throw EmptyArrayError("max_sub of the empty array");
  return x.entry(0).position;
}

template <class Traits>
ArrayValue<Traits> min_sub(const ArrayValue<Traits>& x) {
  if (x.empty()) throw EmptyArrayError("min_sub of the empty array");
  return x.entry(x.size() - 1).position;
}

// ---------------------------------------------------------------------------
// The auxiliary functions d, e, f, g, h.

// d: drop zero-coefficient entries, recursing into positions. Erasure can
// merge distinct positions; that breaks injectivity and is a hard error.
template <class Traits>
ArrayValue<Traits> erase_zeros(const ArrayValue<Traits>& x) {
  std::vector<typename ArrayValue<Traits>::Entry> out;
  for (const auto& e : x.entries()) {
    if (Traits::is_zero(e.coefficient)) continue;
    out.push_back({e.coefficient, erase_zeros<Traits>(e.position)});
  }
  return ArrayValue<Traits>::make(std::move(out));
}

namespace detail {

template <class Traits>
ArrayValue<Traits> replace_entry(const ArrayValue<Traits>& x, std::size_t index,
                                 std::vector<typename ArrayValue<Traits>::Entry> replacement) {
  std::vector<typename ArrayValue<Traits>::Entry> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i != index) out.push_back(x.entry(i));
  }
  for (auto& e : replacement) out.push_back(std::move(e));
  return ArrayValue<Traits>::make(std::move(out));
}

}  // namespace detail

// e: subtract one from the coefficient at the base position, cleaning with d;
// identity when that coefficient is zero or a limit.
template <class Traits>
ArrayValue<Traits> dec_first(const ArrayValue<Traits>& x) {
  if (x.empty()) return x;
  std::size_t last = x.size() - 1;
  if (!x.entry(last).position.empty()) return x;  // no base entry
  const auto& c = x.entry(last).coefficient;
  if (Traits::kind(c) != CoeffKind::Successor) return x;
  auto r = detail::replace_entry<Traits>(
      x, last, {typename ArrayValue<Traits>::Entry{Traits::pred(c), ArrayValue<Traits>()}});
  return erase_zeros<Traits>(r);
}

template <class Traits>
bool dec_first_changes(const ArrayValue<Traits>& x) {
  if (x.empty()) return false;
  const auto& e = x.entry(x.size() - 1);
  return e.position.empty() && Traits::kind(e.coefficient) == CoeffKind::Successor;
}

// h: remove the entry at the base position, if present.
template <class Traits>
ArrayValue<Traits> drop_first(const ArrayValue<Traits>& x) {
  if (x.empty()) return x;
  std::size_t last = x.size() - 1;
  if (!x.entry(last).position.empty()) return x;
  std::vector<typename ArrayValue<Traits>::Entry> out(x.entries().begin(),
                                                      x.entries().end() - 1);
  return ArrayValue<Traits>::make(std::move(out));
}

// f: the case classification driving phi.
template <class Traits>
typename Traits::Coeff classify(const ArrayValue<Traits>& x) {
  if (x.empty()) return Traits::numeral(0);
  if (dec_first_changes<Traits>(x)) return Traits::numeral(1);
  ArrayValue<Traits> bbar = min_sub<Traits>(x);
  const auto& c = x.entry(x.size() - 1).coefficient;
  if (Traits::kind(c) == CoeffKind::Successor) {
    if (dec_first_changes<Traits>(bbar)) return Traits::numeral(2);
    return classify<Traits>(bbar);
  }
  return c;
}

// g: fundamental sequences for arrays.
template <class Traits>
ArrayValue<Traits> fund(const ArrayValue<Traits>& x, const typename Traits::Coeff& alpha) {
  using AV = ArrayValue<Traits>;
  using Entry = typename AV::Entry;
  if (x.empty()) return x;
  if (dec_first_changes<Traits>(x)) return dec_first<Traits>(x);
  std::size_t last = x.size() - 1;
  AV bbar = x.entry(last).position;
  const auto& c = x.entry(last).coefficient;
  if (Traits::kind(c) == CoeffKind::Successor) {
    auto eta = Traits::pred(c);
    if (dec_first_changes<Traits>(bbar)) {
      auto r = detail::replace_entry<Traits>(
          x, last, {Entry{eta, bbar}, Entry{alpha, dec_first<Traits>(bbar)}});
      return erase_zeros<Traits>(r);
    }
    auto r = detail::replace_entry<Traits>(
        x, last, {Entry{eta, bbar}, Entry{Traits::numeral(1), fund<Traits>(bbar, alpha)}});
    return erase_zeros<Traits>(r);
  }
  auto r = detail::replace_entry<Traits>(x, last, {Entry{alpha, bbar}});
  return erase_zeros<Traits>(r);
}

// ---------------------------------------------------------------------------
// phi semantics.

template <class Traits>
struct SemanticsDescriptor {
  enum class Kind { Unit, OmegaPower, FixPoint, LimitFamily };
  Kind kind = Kind::Unit;
  typename Traits::Coeff index = Traits::numeral(0);   // enum index c_X(base)
  ArrayValue<Traits> body;                             // h(X)
  typename Traits::Coeff length = Traits::numeral(0);  // LimitFamily only
};

// Terminal semantic object for phi X: the unit, an omega power, the
// enumeration of a fixed-point class, or of a simultaneous limit family.
template <class Traits>
SemanticsDescriptor<Traits> phi_semantics(const ArrayValue<Traits>& x) {
  using SD = SemanticsDescriptor<Traits>;
  if (x.empty()) return SD{SD::Kind::Unit, Traits::numeral(0), {}, Traits::numeral(0)};
  auto index = preimage<Traits>(x, ArrayValue<Traits>());
  if (x.size() == 1 && x.entry(0).position.empty())
    return SD{SD::Kind::OmegaPower, index, {}, Traits::numeral(0)};
  ArrayValue<Traits> body = drop_first<Traits>(x);
  auto f = classify<Traits>(body);
  Ordering vs2 = Traits::compare(f, Traits::numeral(2));
  if (vs2 == Ordering::Equal) return SD{SD::Kind::FixPoint, index, std::move(body), Traits::numeral(0)};
  if (vs2 == Ordering::Greater) return SD{SD::Kind::LimitFamily, index, std::move(body), f};
  throw InvariantError("phi_semantics: classification of h(X) fell below 2");
}

// ---------------------------------------------------------------------------
// Toy coefficients: plain naturals. Every nonzero value is a successor, so
// the limit cases are exercised through the notation-valued instantiation.

struct NatTraits {
  using Coeff = unsigned;
  static Ordering compare(Coeff a, Coeff b) {
    return a < b ? Ordering::Less : a > b ? Ordering::Greater : Ordering::Equal;
  }
  static bool is_zero(Coeff c) { return c == 0; }
  static CoeffKind kind(Coeff c) { return c == 0 ? CoeffKind::Zero : CoeffKind::Successor; }
  static Coeff pred(Coeff c) { return c - 1; }
  static Coeff numeral(unsigned n) { return n; }
};

using NatArray = ArrayValue<NatTraits>;

}  // namespace ordinalforge::arrays
