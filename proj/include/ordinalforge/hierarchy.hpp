#pragma once

// Rank and norm on standard terms, exact norm-bounded enumeration, the
// norm-induced fundamental sequences, and the Hardy / fast-growing
// evaluators driven by either sequence system.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ordinalforge/classic_veblen.hpp"
#include "ordinalforge/errors.hpp"
#include "ordinalforge/term.hpp"

namespace ordinalforge::hierarchy {

// ---------------------------------------------------------------------------
// Rank. Zero has rank 0, a sum totals the ranks of its summands, and a phi
// term adds one on top of its array's rank; an array totals, over its
// entries, the coefficient rank plus a position weight (zero for the base
// position, one more than the position's own array rank otherwise).
//
// Fully additive grading is what makes the rank a norm: it grades nesting
// depth, array width, and sum length at once, so each level is finite and
// small enough to enumerate outright. Blinder gradings either admit
// infinitely many terms of rank two (position towers) or let counts explode
// combinatorially within a handful of levels.

std::size_t rank_rho(const Term& t);

inline std::size_t array_rank(const ArrayTerm& a) {
  std::size_t total = 0;
  for (const auto& e : a.entries()) {
    std::size_t w = e.position.empty() ? 0 : array_rank(e.position) + 1;
    total += rank_rho(e.coefficient) + w;
  }
  return total;
}

inline std::size_t rank_rho(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Zero:
      return 0;
    case Term::Kind::Phi:
      return array_rank(t.array()) + 1;
    default:
      break;
  }
  std::size_t r = 0;
  for (const Term& p : t.parts()) r += rank_rho(p);
  return r;
}

// The norm acts on ordinals through their standard representatives.
inline std::size_t norm_L(const Term& t) {
  if (!is_standard(t)) throw NonStandardError("norm_L requires a standard term");
  return rank_rho(t);
}

// ---------------------------------------------------------------------------
// Exact enumeration of standard terms by norm.

struct NormBudget {
  std::size_t max_norm = 0;
  std::size_t max_count = 200000;
};

class StandardEnumerator {
 public:
  // Grows internal strata up to max_norm; throws CapExceededError when the
  // running total exceeds the cap.
  const std::vector<Term>& terms_of_rank(std::size_t r, const NormBudget& budget) {
    grow(r, budget);
    return terms_[r];
  }

  std::vector<Term> up_to(const NormBudget& budget) {
    grow(budget.max_norm, budget);
    std::vector<Term> out;
    for (std::size_t r = 0; r <= budget.max_norm; ++r)
      out.insert(out.end(), terms_[r].begin(), terms_[r].end());
    std::sort(out.begin(), out.end(),
              [](const Term& a, const Term& b) { return compare(a, b) == Ordering::Less; });
    return out;
  }

 private:
  void grow(std::size_t upto, const NormBudget& budget) {
    while (built_ <= upto) {
      build_rank(built_, budget);
      ++built_;
    }
  }

  void build_rank(std::size_t r, const NormBudget& budget) {
    terms_.resize(std::max(terms_.size(), r + 1));
    principals_.resize(std::max(principals_.size(), r + 1));
    if (r == 0) {
      terms_[0] = {Term::zero()};
      arrays_.push_back({ArrayTerm()});  // array rank 0: just epsilon
      count_ += 1;
      return;
    }

    std::vector<Term> fresh;

    // principal terms: phi over arrays of array-rank r-1
    for (const ArrayTerm& x : arrays_[r - 1]) {
      Term t = Term::phi(x);
      if (is_standard(t)) {
        fresh.push_back(t);
        principals_[r].push_back(t);
      }
    }

    // sums: non-increasing sequences of principals with fold rank exactly r
    std::vector<Term> pool;
    for (std::size_t k = 1; k < r; ++k)
      pool.insert(pool.end(), principals_[k].begin(), principals_[k].end());
    std::sort(pool.begin(), pool.end(),
              [](const Term& a, const Term& b) { return compare(a, b) == Ordering::Less; });
    std::vector<Term> seq;
    gen_sums(pool, r, fresh, seq, 0, 0);

    check_cap(fresh.size(), budget);
    terms_[r] = std::move(fresh);

    // arrays of array-rank r over the strata built so far
    build_arrays(r, budget);
  }

  // Extends a descending suffix of summands; emits sums whose ranks total
  // exactly target once at least two parts are present.
  void gen_sums(const std::vector<Term>& pool, std::size_t target, std::vector<Term>& out,
                std::vector<Term>& seq, std::size_t min_index, std::size_t suffix_rank) {
    if (seq.size() >= 2 && suffix_rank == target) {
      std::vector<Term> parts(seq.rbegin(), seq.rend());
      out.push_back(Term::sum(std::move(parts)));
    }
    if (suffix_rank >= target) return;
    for (std::size_t i = min_index; i < pool.size(); ++i) {
      std::size_t next = suffix_rank + rank_rho(pool[i]);
      if (next > target) continue;
      seq.push_back(pool[i]);
      gen_sums(pool, target, out, seq, i, next);
      seq.pop_back();
    }
  }

  // Arrays of array-rank exactly d whose subterms are standard and nonzero.
  void build_arrays(std::size_t d, const NormBudget& budget) {
    // positions: epsilon (weight 0) and arrays of rank < d (weight ar + 1),
    // ordered descending so entry lists come out canonical
    struct Pos {
      ArrayTerm array;
      std::size_t weight;
    };
    std::vector<Pos> positions;
    positions.push_back({ArrayTerm(), 0});  // the base position weighs nothing
    for (std::size_t ar = 1; ar < d; ++ar)
      for (const ArrayTerm& p : arrays_[ar]) positions.push_back({p, ar + 1});
    std::sort(positions.begin(), positions.end(), [](const Pos& a, const Pos& b) {
      Ordering o = array_order(a.array, b.array);
      if (o != Ordering::Equal) return o == Ordering::Greater;
      return structural_cmp(a.array, b.array) > 0;
    });

    // nonzero standard coefficients by rank
    std::vector<std::vector<Term>> coeffs(d + 1);
    for (std::size_t k = 1; k <= d; ++k) {
      for (const Term& t : terms_[k]) coeffs[k].push_back(t);
    }

    std::vector<ArrayTerm> result;
    std::vector<ArrayEntry> acc;
    gen_arrays(positions, coeffs, d, 0, acc, result);
    check_cap(result.size(), budget);
    arrays_.push_back(std::move(result));
  }

  template <class Positions>
  void gen_arrays(const Positions& positions, const std::vector<std::vector<Term>>& coeffs,
                  std::size_t remaining, std::size_t pos_index, std::vector<ArrayEntry>& acc,
                  std::vector<ArrayTerm>& out) {
    if (remaining == 0) {
      if (!acc.empty()) out.push_back(ArrayTerm::make(acc));
      return;
    }
    for (std::size_t i = pos_index; i < positions.size(); ++i) {
      const auto& pos = positions[i];
      // a nonzero coefficient costs at least one
      if (pos.weight >= remaining) continue;
      std::size_t budget_for_coeff = remaining - pos.weight;
      for (std::size_t k = 1; k <= budget_for_coeff; ++k) {
        for (const Term& c : coeffs[k]) {
          acc.push_back(ArrayEntry{c, pos.array});
          gen_arrays(positions, coeffs, remaining - pos.weight - k, i + 1, acc, out);
          acc.pop_back();
        }
      }
    }
  }

  void check_cap(std::size_t added, const NormBudget& budget) {
    count_ += added;
    if (count_ > budget.max_count)
      throw CapExceededError("enumeration exceeded the safety cap of " +
                             std::to_string(budget.max_count));
  }

  std::size_t built_ = 0;
  std::size_t count_ = 0;
  std::vector<std::vector<Term>> terms_;
  std::vector<std::vector<Term>> principals_;
  std::vector<std::vector<ArrayTerm>> arrays_;  // by array rank
};

inline std::vector<Term> enumerate_standard(const NormBudget& budget) {
  StandardEnumerator e;
  return e.up_to(budget);
}

// ---------------------------------------------------------------------------
// Norm-induced fundamental sequences: the largest standard term strictly
// below t whose norm stays within L(t) + n.

inline Term fs_norm_with(StandardEnumerator& en, const Term& t, std::size_t n,
                         const NormBudget& caps) {
  if (t.is_zero()) throw NotALimitError("fs_norm of zero");
  std::size_t target = norm_L(t) + n;
  if (target > caps.max_norm)
    throw CapExceededError("norm budget " + std::to_string(target) + " beyond the safety cap");
  Term best = Term::zero();
  bool found = false;
  NormBudget b{target, caps.max_count};
  for (std::size_t r = 0; r <= target; ++r) {
    for (const Term& c : en.terms_of_rank(r, b)) {
      if (compare(c, t) != Ordering::Less) continue;
      if (!found || compare(best, c) == Ordering::Less) {
        best = c;
        found = true;
      }
    }
  }
  return best;  // zero is always available below a nonzero term
}

inline Term fs_norm(const Term& t, std::size_t n,
                    const NormBudget& caps = NormBudget{18, 200000}) {
  StandardEnumerator en;
  return fs_norm_with(en, t, n, caps);
}

// ---------------------------------------------------------------------------
// Hardy and fast-growing evaluators.

enum class FsSystem { ClassBased, NormBased };

struct Fuel {
  std::uint64_t remaining = 1000000;
};

struct HierarchyResult {
  enum class Status { Value, FuelExhausted, FsUnavailable };
  Status status = Status::Value;
  std::uint64_t value = 0;
  std::uint64_t steps = 0;
  std::string note;
};

namespace detail {

struct FsOracle {
  FsSystem system;
  StandardEnumerator enumerator;
  NormBudget caps{18, 200000};

  explicit FsOracle(FsSystem s) : system(s) {}

  Term step(const Term& t, std::uint64_t n) {
    if (system == FsSystem::ClassBased) return veblen::fs_term(t, static_cast<std::size_t>(n));
    return fs_norm_with(enumerator, t, static_cast<std::size_t>(n), caps);
  }
};

}  // namespace detail

inline HierarchyResult hardy(const Term& t, std::uint64_t n, FsSystem system, Fuel fuel) {
  if (!is_standard(t)) throw NonStandardError("hardy requires a standard term");
  detail::FsOracle fs(system);
  HierarchyResult r;
  // Work on the summand list so successor steps pop in place. In class mode
  // a limit expands through its smallest summand; the norm sequence is
  // defined on whole terms only.
  std::vector<Term> parts = summands(t);
  while (!parts.empty()) {
    if (r.steps >= fuel.remaining) {
      r.status = HierarchyResult::Status::FuelExhausted;
      return r;
    }
    ++r.steps;
    if (parts.back() == Term::one()) {
      parts.pop_back();
      ++n;
      continue;
    }
    try {
      if (system == FsSystem::ClassBased) {
        Term expanded = fs.step(parts.back(), n);
        parts.pop_back();
        for (Term& q : summands(expanded)) parts.push_back(std::move(q));
      } else {
        Term expanded = fs.step(Term::sum(std::move(parts)), n);
        parts = summands(expanded);
      }
    } catch (const FsUnavailableError& e) {
      r.status = HierarchyResult::Status::FsUnavailable;
      r.note = e.what();
      return r;
    }
  }
  r.value = n;
  return r;
}

inline HierarchyResult fgh(const Term& t, std::uint64_t n, FsSystem system, Fuel fuel) {
  if (!is_standard(t)) throw NonStandardError("fgh requires a standard term");
  detail::FsOracle fs(system);
  HierarchyResult r;
  // stack of (term, pending applications), topmost applied first
  std::vector<std::pair<Term, std::uint64_t>> stack;
  stack.emplace_back(t, 1);
  while (!stack.empty()) {
    auto& [cur, count] = stack.back();
    if (count == 0) {
      stack.pop_back();
      continue;
    }
    if (r.steps >= fuel.remaining) {
      r.status = HierarchyResult::Status::FuelExhausted;
      return r;
    }
    ++r.steps;
    --count;
    TermKind k = term_kind(cur);
    if (k.kind == TermKind::K::Zero) {
      ++n;
      continue;
    }
    if (k.kind == TermKind::K::Successor) {
      stack.emplace_back(k.predecessor, n);
      continue;
    }
    Term expanded;
    try {
      expanded = fs.step(cur, n);
    } catch (const FsUnavailableError& e) {
      r.status = HierarchyResult::Status::FsUnavailable;
      r.note = e.what();
      return r;
    }
    stack.emplace_back(std::move(expanded), 1);
  }
  r.value = n;
  return r;
}

}  // namespace ordinalforge::hierarchy
