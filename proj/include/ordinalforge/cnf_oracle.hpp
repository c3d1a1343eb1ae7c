#pragma once

// Independent ground truth for the main notation: exact hereditary base-omega
// Cantor normal forms below epsilon_0, and the classical 3-case comparison of
// binary Veblen expressions below Gamma_0. Deliberately separate from the
// general algorithms it checks.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ordinalforge/errors.hpp"
#include "ordinalforge/ordering.hpp"
#include "ordinalforge/term.hpp"

namespace ordinalforge::cnf {

struct CnfEntry;

// Hereditary CNF: sum of omega^exponent * multiplicity with strictly
// decreasing exponents and positive multiplicities; empty list is zero.
class CnfOrdinal {
 public:
  CnfOrdinal() = default;  // zero

  static CnfOrdinal from_nat(std::uint64_t n);

  bool is_zero() const { return entries_.empty(); }
  const std::vector<CnfEntry>& entries() const { return entries_; }
  std::vector<CnfEntry>& mutable_entries() { return entries_; }

 private:
  std::vector<CnfEntry> entries_;
};

struct CnfEntry {
  CnfOrdinal exponent;
  std::uint64_t multiplicity = 0;
};

inline CnfOrdinal CnfOrdinal::from_nat(std::uint64_t n) {
  CnfOrdinal c;
  if (n > 0) c.entries_.push_back(CnfEntry{CnfOrdinal(), n});
  return c;
}

inline Ordering cnf_compare(const CnfOrdinal& a, const CnfOrdinal& b) {
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  for (std::size_t i = 0;; ++i) {
    bool ae = i >= ea.size(), be = i >= eb.size();
    if (ae && be) return Ordering::Equal;
    if (ae) return Ordering::Less;
    if (be) return Ordering::Greater;
    Ordering e = cnf_compare(ea[i].exponent, eb[i].exponent);
    if (e != Ordering::Equal) return e;
    if (ea[i].multiplicity != eb[i].multiplicity)
      return ea[i].multiplicity < eb[i].multiplicity ? Ordering::Less : Ordering::Greater;
  }
}

inline bool cnf_eq(const CnfOrdinal& a, const CnfOrdinal& b) {
  return cnf_compare(a, b) == Ordering::Equal;
}

// Ordinal addition: leading parts of a with exponent below b's degree are
// absorbed by b.
inline CnfOrdinal cnf_add(const CnfOrdinal& a, const CnfOrdinal& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  const CnfOrdinal& lead = b.entries().front().exponent;
  CnfOrdinal out;
  for (const auto& e : a.entries()) {
    Ordering o = cnf_compare(e.exponent, lead);
    if (o == Ordering::Less) break;
    if (o == Ordering::Equal) {
      out.mutable_entries().push_back(
          CnfEntry{e.exponent, e.multiplicity + b.entries().front().multiplicity});
      for (std::size_t i = 1; i < b.entries().size(); ++i)
        out.mutable_entries().push_back(b.entries()[i]);
      return out;
    }
    out.mutable_entries().push_back(e);
  }
  for (const auto& e : b.entries()) out.mutable_entries().push_back(e);
  return out;
}

inline CnfOrdinal cnf_omega_pow(const CnfOrdinal& a) {
  CnfOrdinal out;
  out.mutable_entries().push_back(CnfEntry{a, 1});
  return out;
}

inline std::string cnf_to_string(const CnfOrdinal& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& e : a.entries()) {
    if (!out.empty()) out += "+";
    if (e.exponent.is_zero()) {
      out += std::to_string(e.multiplicity);
      continue;
    }
    out += "w^(" + cnf_to_string(e.exponent) + ")";
    if (e.multiplicity != 1) out += "*" + std::to_string(e.multiplicity);
  }
  return out;
}

// Evaluates standard terms whose phi-arrays are hereditarily single entries
// at position epsilon (pure omega powers) and sums of those; anything else is
// not below epsilon_0 and yields nullopt.
inline std::optional<CnfOrdinal> term_to_cnf(const Term& t) {
  if (!is_standard(t)) throw NonStandardError("term_to_cnf requires a standard term");
  struct Impl {
    static std::optional<CnfOrdinal> go(const Term& t) {
      if (t.is_zero()) return CnfOrdinal();
      if (t.is_phi()) {
        const ArrayTerm& x = t.array();
        if (x.empty()) return CnfOrdinal::from_nat(1);
        if (x.size() != 1 || !x.entry(0).position.empty()) return std::nullopt;
        auto e = go(x.entry(0).coefficient);
        if (!e) return std::nullopt;
        return cnf_omega_pow(*e);
      }
      CnfOrdinal acc;
      for (const Term& p : t.parts()) {
        auto c = go(p);
        if (!c) return std::nullopt;
        acc = cnf_add(acc, *c);
      }
      return acc;
    }
  };
  return Impl::go(t);
}

// ---------------------------------------------------------------------------
// Binary Veblen oracle. Terms are either CNF leaves or phi(a, b); equality is
// decided semantically, so fixed-point representations like phi(0, phi(1,0))
// compare equal to phi(1,0).

struct BVNode;

class BVTerm {
 public:
  static BVTerm leaf(CnfOrdinal v);
  static BVTerm leaf_nat(std::uint64_t n) { return leaf(CnfOrdinal::from_nat(n)); }
  static BVTerm phi(BVTerm a, BVTerm b);

  bool is_leaf() const;
  const CnfOrdinal& value() const;
  const BVTerm& first() const;
  const BVTerm& second() const;

 private:
  std::shared_ptr<const BVNode> node_;
};

struct BVNode {
  bool leaf = true;
  CnfOrdinal value;
  BVTerm a, b;
};

inline BVTerm BVTerm::leaf(CnfOrdinal v) {
  BVTerm t;
  auto n = std::make_shared<BVNode>();
  n->leaf = true;
  n->value = std::move(v);
  t.node_ = std::move(n);
  return t;
}

inline BVTerm BVTerm::phi(BVTerm a, BVTerm b) {
  BVTerm t;
  auto n = std::make_shared<BVNode>();
  n->leaf = false;
  n->a = std::move(a);
  n->b = std::move(b);
  t.node_ = std::move(n);
  return t;
}

inline bool BVTerm::is_leaf() const { return node_->leaf; }
inline const CnfOrdinal& BVTerm::value() const { return node_->value; }
inline const BVTerm& BVTerm::first() const { return node_->a; }
inline const BVTerm& BVTerm::second() const { return node_->b; }

inline Ordering binary_veblen_compare(const BVTerm& x, const BVTerm& y);

namespace detail {

// Compare phi(a1, b1) against phi(a2, b2) by the classical rule: equal first
// arguments compare by the second; otherwise the side with the smaller first
// argument is compared, via its second argument, against the whole other term.
inline Ordering bv_phi_phi(const BVTerm& x, const BVTerm& y) {
  Ordering c = binary_veblen_compare(x.first(), y.first());
  if (c == Ordering::Equal) return binary_veblen_compare(x.second(), y.second());
  if (c == Ordering::Less) return binary_veblen_compare(x.second(), y);
  return flip(binary_veblen_compare(y.second(), x));
}

// Compare a phi node against a CNF value.
inline Ordering bv_phi_leaf(const BVTerm& x, const CnfOrdinal& v) {
  if (v.is_zero()) return Ordering::Greater;  // phi values are >= 1
  const auto& lead = v.entries().front();
  BVTerm lead_pow = BVTerm::phi(BVTerm::leaf(CnfOrdinal()), BVTerm::leaf(lead.exponent));
  Ordering c = bv_phi_phi(x, lead_pow);
  if (c != Ordering::Equal) return c;
  // x equals the leading omega power; any further multiplicity or summand of
  // v pushes v strictly above.
  bool more = lead.multiplicity > 1 || v.entries().size() > 1;
  return more ? Ordering::Less : Ordering::Equal;
}

}  // namespace detail

inline Ordering binary_veblen_compare(const BVTerm& x, const BVTerm& y) {
  if (x.is_leaf() && y.is_leaf()) return cnf_compare(x.value(), y.value());
  if (!x.is_leaf() && !y.is_leaf()) return detail::bv_phi_phi(x, y);
  if (x.is_leaf()) return flip(detail::bv_phi_leaf(y, x.value()));
  return detail::bv_phi_leaf(x, y.value());
}

}  // namespace ordinalforge::cnf
