#pragma once

// Base-Omega normal forms and the conversion pipeline into the main notation:
// the exponent/coefficient set s, the trichotomic classifier k, the collapse
// preprocessor t, the array builder V, and the composite psi0.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ordinalforge/errors.hpp"
#include "ordinalforge/term.hpp"
#include "ordinalforge/term_io.hpp"

namespace ordinalforge::buchholz {

struct OmegaEntry;

// Sum of W^exponent * coefficient with strictly decreasing OmegaTerm
// exponents and nonzero standard countable coefficients; the empty sum is 0.
// A pure countable value is the single entry with exponent 0.
class OmegaTerm {
 public:
  OmegaTerm() = default;  // zero

  static OmegaTerm countable(Term t);
  static OmegaTerm omega_w();  // W itself

  bool is_zero() const { return entries_.empty(); }
  const std::vector<OmegaEntry>& entries() const { return entries_; }
  std::vector<OmegaEntry>& mutable_entries() { return entries_; }

  bool is_countable() const;
  // The coefficient at exponent zero (zero term when absent).
  Term countable_part() const;

 private:
  std::vector<OmegaEntry> entries_;
};

struct OmegaEntry {
  OmegaTerm exponent;
  Term coefficient;
};

inline Ordering omega_compare(const OmegaTerm& a, const OmegaTerm& b) {
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  for (std::size_t i = 0;; ++i) {
    bool ae = i >= ea.size(), be = i >= eb.size();
    if (ae && be) return Ordering::Equal;
    if (ae) return Ordering::Less;
    if (be) return Ordering::Greater;
    Ordering e = omega_compare(ea[i].exponent, eb[i].exponent);
    if (e != Ordering::Equal) return e;
    Ordering c = compare(ea[i].coefficient, eb[i].coefficient);
    if (c != Ordering::Equal) return c;
  }
}

inline bool omega_eq(const OmegaTerm& a, const OmegaTerm& b) {
  return omega_compare(a, b) == Ordering::Equal;
}

inline OmegaTerm OmegaTerm::countable(Term t) {
  OmegaTerm o;
  if (!t.is_zero()) o.entries_.push_back(OmegaEntry{OmegaTerm(), std::move(t)});
  return o;
}

inline OmegaTerm OmegaTerm::omega_w() {
  OmegaTerm o;
  o.entries_.push_back(OmegaEntry{OmegaTerm::countable(Term::one()), Term::one()});
  return o;
}

inline bool OmegaTerm::is_countable() const {
  return entries_.empty() || (entries_.size() == 1 && entries_[0].exponent.is_zero());
}

inline Term OmegaTerm::countable_part() const {
  if (entries_.empty() || !entries_.back().exponent.is_zero()) return Term::zero();
  return entries_.back().coefficient;
}

// Ordinal addition with absorption; equal leading exponents merge by adding
// coefficients in normal form.
inline OmegaTerm omega_add(const OmegaTerm& a, const OmegaTerm& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  const OmegaTerm& lead = b.entries().front().exponent;
  OmegaTerm out;
  for (const auto& e : a.entries()) {
    Ordering o = omega_compare(e.exponent, lead);
    if (o == Ordering::Less) break;
    if (o == Ordering::Equal) {
      out.mutable_entries().push_back(
          OmegaEntry{e.exponent, add_norm(e.coefficient, b.entries().front().coefficient)});
      for (std::size_t i = 1; i < b.entries().size(); ++i)
        out.mutable_entries().push_back(b.entries()[i]);
      return out;
    }
    out.mutable_entries().push_back(e);
  }
  for (const auto& e : b.entries()) out.mutable_entries().push_back(e);
  return out;
}

// Left subtraction on countable terms: the unique c with b + c = a.
inline Term term_sub_left(const Term& a, const Term& b) {
  std::vector<Term> sa = summands(a);
  std::vector<Term> sb = summands(b);
  std::size_t i = 0;
  while (i < sa.size() && i < sb.size()) {
    Ordering o = compare(sa[i], sb[i]);
    if (o == Ordering::Equal) {
      ++i;
      continue;
    }
    if (o == Ordering::Less) throw UnderflowError("left subtraction underflow");
    return Term::sum(std::vector<Term>(sa.begin() + static_cast<std::ptrdiff_t>(i), sa.end()));
  }
  if (i < sb.size()) throw UnderflowError("left subtraction underflow");
  return Term::sum(std::vector<Term>(sa.begin() + static_cast<std::ptrdiff_t>(i), sa.end()));
}

// t -- 1 on countable terms.
inline Term sub_one(const Term& t) { return term_sub_left(t, Term::one()); }

// Left subtraction: the unique c with b + c = a. Requires a >= b. At the
// first difference the remainder of a is the answer: addition absorbs the
// rest of b under the remainder's leading exponent.
inline OmegaTerm omega_sub_left(const OmegaTerm& a, const OmegaTerm& b) {
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  std::size_t i = 0;
  while (i < ea.size() && i < eb.size()) {
    Ordering e = omega_compare(ea[i].exponent, eb[i].exponent);
    if (e == Ordering::Less) throw UnderflowError("left subtraction underflow");
    if (e == Ordering::Greater) {
      // a's entry dominates everything b has left
      OmegaTerm out;
      for (std::size_t j = i; j < ea.size(); ++j) out.mutable_entries().push_back(ea[j]);
      return out;
    }
    Ordering c = compare(ea[i].coefficient, eb[i].coefficient);
    if (c == Ordering::Less) throw UnderflowError("left subtraction underflow");
    if (c == Ordering::Greater) {
      OmegaTerm out;
      out.mutable_entries().push_back(
          OmegaEntry{ea[i].exponent, term_sub_left(ea[i].coefficient, eb[i].coefficient)});
      for (std::size_t j = i + 1; j < ea.size(); ++j) out.mutable_entries().push_back(ea[j]);
      return out;
    }
    ++i;
  }
  if (i < eb.size()) throw UnderflowError("left subtraction underflow");
  OmegaTerm out;
  for (std::size_t j = i; j < ea.size(); ++j) out.mutable_entries().push_back(ea[j]);
  return out;
}

// W * b: shifts every exponent up by one on the left.
inline OmegaTerm omega_shift(const OmegaTerm& b) {
  OmegaTerm one = OmegaTerm::countable(Term::one());
  OmegaTerm out;
  for (const auto& e : b.entries()) {
    out.mutable_entries().push_back(OmegaEntry{omega_add(one, e.exponent), e.coefficient});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Decomposition at the least exponent: alpha = xi + W^beta * gamma.

struct LeastSplit {
  OmegaTerm xi;
  OmegaTerm beta;    // least exponent
  Term gamma;        // its countable coefficient
};

inline LeastSplit least_split(const OmegaTerm& a) {
  if (a.is_zero()) throw InvariantError("least_split of zero");
  LeastSplit s;
  const auto& e = a.entries();
  for (std::size_t i = 0; i + 1 < e.size(); ++i) s.xi.mutable_entries().push_back(e[i]);
  s.beta = e.back().exponent;
  s.gamma = e.back().coefficient;
  return s;
}

// ---------------------------------------------------------------------------
// s: the set of exponents and coefficients of the base-W normal form.
// Not hereditary.

inline std::vector<OmegaTerm> s_set(const OmegaTerm& a) {
  std::vector<OmegaTerm> out;
  OmegaTerm rest = a;
  while (!rest.is_zero()) {
    LeastSplit sp = least_split(rest);
    out.push_back(sp.beta);
    out.push_back(OmegaTerm::countable(sp.gamma));
    rest = sp.xi;
  }
  // dedup under the order
  std::vector<OmegaTerm> uniq;
  for (auto& x : out) {
    bool seen = false;
    for (const auto& y : uniq)
      if (omega_eq(x, y)) seen = true;
    if (!seen) uniq.push_back(std::move(x));
  }
  return uniq;
}

// ---------------------------------------------------------------------------
// k: trichotomic case classification against a countable bound.

enum class KResult { Below = -1, Exact = 0, Above = 1 };

inline KResult k_classify(const OmegaTerm& a, const Term& beta) {
  if (a.is_countable()) {
    Ordering o = compare(a.countable_part(), beta);
    return o == Ordering::Less ? KResult::Below
                               : o == Ordering::Equal ? KResult::Exact : KResult::Above;
  }
  bool all_below = true;
  for (const auto& rho : s_set(a)) {
    if (k_classify(rho, beta) != KResult::Below) all_below = false;
  }
  if (all_below) return KResult::Below;
  LeastSplit sp = least_split(a);
  bool xi_below = true;
  for (const auto& rho : s_set(sp.xi)) {
    if (k_classify(rho, beta) != KResult::Below) xi_below = false;
  }
  if (xi_below) {
    bool case_i = sp.beta.is_countable() &&
                  compare(sp.beta.countable_part(), beta) == Ordering::Equal &&
                  compare(sp.gamma, Term::one()) == Ordering::Equal;
    bool case_ii = k_classify(sp.beta, beta) == KResult::Below &&
                   compare(sp.gamma, beta) == Ordering::Equal;
    if (case_i || case_ii) return KResult::Exact;
  }
  return KResult::Above;
}

// ---------------------------------------------------------------------------
// t, V, psi0: mutually recursive conversion into the dimensional notation.

Term psi0_convert(const OmegaTerm& a);
Term psi0_convert_unchecked(const OmegaTerm& a);

inline OmegaTerm t_map(const OmegaTerm& a) {
  if (a.is_zero()) return OmegaTerm();
  LeastSplit sp = least_split(a);
  Term lambda = sub_one(psi0_convert_unchecked(sp.xi));
  KResult u = k_classify(sp.beta, lambda);
  Term rho = u == KResult::Below ? lambda
             : u == KResult::Exact ? Term::one()
                                   : Term::zero();
  Term tail = sub_one(add_norm(rho, sp.gamma));
  return omega_add(omega_shift(sp.beta), OmegaTerm::countable(tail));
}

inline ArrayTerm v_map(const OmegaTerm& a) {
  std::vector<ArrayEntry> entries;
  for (const auto& e : a.entries()) {
    entries.push_back(ArrayEntry{e.coefficient, v_map(e.exponent)});
  }
  return ArrayTerm::make(std::move(entries));
}

// psi0 without the domain check; used inside the recursion of t.
inline Term psi0_convert_unchecked(const OmegaTerm& a) {
  return Term::phi(v_map(t_map(a)));
}

inline void collect_countables(const OmegaTerm& a, std::vector<Term>& out) {
  for (const auto& e : a.entries()) {
    out.push_back(e.coefficient);
    collect_countables(e.exponent, out);
  }
}

// The full conversion. The domain precondition has no structural decision
// procedure; as a stand-in, the computed value must be a standard string and
// every countable coefficient occurring in the input must fall strictly
// below it. This flags self-referential inputs.
inline Term psi0_convert(const OmegaTerm& a) {
  Term result = psi0_convert_unchecked(a);
  if (!is_standard(result))
    throw DomainError("input lies outside the conversion domain: the image " + print(result) +
                      " is a fixed-point representation");
  std::vector<Term> cs;
  collect_countables(a, cs);
  for (const Term& c : cs) {
    if (compare(c, result) != Ordering::Less)
      throw DomainError("input lies outside the conversion domain: coefficient " + print(c) +
                        " reaches the value " + print(result));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Text form:  oterm := "0" | oatom ("+" oatom)*
//             oatom := "W" ["^" oexp] ["*" cfactor] | cfactor
//             oexp  := "(" oterm ")" | "W" ["^" oexp] | cfactor
//             cfactor := "(" term ")" | numeral | "w" | "p" array
// Countable parts use the term grammar.

namespace detail {

class OmegaParser {
 public:
  explicit OmegaParser(std::string_view text) : text_(text) {}

  OmegaTerm parse_all() {
    OmegaTerm t = parse_oterm();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

 private:
  OmegaTerm parse_oterm() {
    OmegaTerm acc = parse_oatom();
    while (true) {
      skip_ws();
      if (!eat('+')) break;
      acc = omega_add(acc, parse_oatom());
    }
    return acc;
  }

  OmegaTerm parse_oatom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == 'W') {
      ++pos_;
      OmegaTerm exponent = OmegaTerm::countable(Term::one());
      skip_ws();
      if (eat('^')) exponent = parse_oexp();
      Term coeff = Term::one();
      skip_ws();
      if (eat('*')) coeff = parse_cfactor();
      if (coeff.is_zero()) fail("zero coefficient");
      OmegaTerm out;
      out.mutable_entries().push_back(OmegaEntry{std::move(exponent), std::move(coeff)});
      return out;
    }
    return OmegaTerm::countable(parse_cfactor());
  }

  OmegaTerm parse_oexp() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (eat('(')) {
      OmegaTerm t = parse_oterm();
      expect(')');
      return t;
    }
    if (text_[pos_] == 'W') {
      ++pos_;
      OmegaTerm exponent = OmegaTerm::countable(Term::one());
      skip_ws();
      if (eat('^')) exponent = parse_oexp();
      OmegaTerm out;
      out.mutable_entries().push_back(OmegaEntry{std::move(exponent), Term::one()});
      return out;
    }
    return OmegaTerm::countable(parse_cfactor());
  }

  Term parse_cfactor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (eat('(')) {
      std::size_t depth = 1;
      std::size_t start = pos_;
      while (pos_ < text_.size() && depth > 0) {
        if (text_[pos_] == '(') ++depth;
        if (text_[pos_] == ')') --depth;
        ++pos_;
      }
      if (depth > 0) fail("unbalanced parentheses");
      return ordinalforge::parse_term(text_.substr(start, pos_ - 1 - start));
    }
    // numeral, w, or p-array: scan the maximal term token
    std::size_t start = pos_;
    if (text_[pos_] == 'w') {
      ++pos_;
    } else if (text_[pos_] == 'p') {
      ++pos_;
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != '(') fail("expected array");
      std::size_t depth = 0;
      do {
        if (text_[pos_] == '(') ++depth;
        if (text_[pos_] == ')') --depth;
        ++pos_;
      } while (pos_ < text_.size() && depth > 0);
      if (depth > 0) fail("unbalanced parentheses");
    } else if (std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    } else {
      fail("expected countable factor");
    }
    return ordinalforge::parse_term(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline bool is_atomic_term_text(const std::string& s) {
  if (s == "w") return true;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return !s.empty();
}

}  // namespace detail

inline OmegaTerm parse_omega(std::string_view text) {
  return detail::OmegaParser(text).parse_all();
}

inline std::string print(const OmegaTerm& a) {
  if (a.is_zero()) return "0";
  std::string out;
  OmegaTerm one_exp = OmegaTerm::countable(Term::one());
  for (const auto& e : a.entries()) {
    if (!out.empty()) out += "+";
    if (e.exponent.is_zero()) {
      std::string c = ordinalforge::print(e.coefficient);
      out += detail::is_atomic_term_text(c) || c.rfind("p(", 0) == 0 ? c : "(" + c + ")";
      continue;
    }
    out += "W";
    if (!omega_eq(e.exponent, one_exp)) {
      std::string x = print(e.exponent);
      bool atomic = x == "W" || detail::is_atomic_term_text(x);
      out += "^" + (atomic ? x : "(" + x + ")");
    }
    if (e.coefficient != Term::one()) {
      std::string c = ordinalforge::print(e.coefficient);
      out += "*" + (detail::is_atomic_term_text(c) || c.rfind("p(", 0) == 0 ? c : "(" + c + ")");
    }
  }
  return out;
}

}  // namespace ordinalforge::buchholz
