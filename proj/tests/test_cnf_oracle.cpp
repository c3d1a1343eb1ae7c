#include <catch2/catch.hpp>

#include <random>
#include <vector>

#include "ordinalforge/cnf_oracle.hpp"
#include "ordinalforge/term_io.hpp"

using namespace ordinalforge;
using namespace ordinalforge::cnf;

namespace {

// All hereditary CNF values of size <= bound, where size counts one for each
// entry plus the size of its exponent, with multiplicities capped at 3.
std::vector<CnfOrdinal> enumerate_cnf(unsigned bound) {
  std::vector<std::vector<CnfOrdinal>> by_size(bound + 1);
  by_size[0] = {CnfOrdinal()};
  for (unsigned s = 1; s <= bound; ++s) {
    std::vector<CnfOrdinal> fresh;
    for (unsigned es = 0; es + 1 <= s; ++es) {
      for (const auto& ex : by_size[es]) {
        for (std::uint64_t mult = 1; mult <= 3; ++mult) {
          unsigned rest = s - es - 1;
          const auto& tails =
              rest == 0 ? std::vector<CnfOrdinal>{CnfOrdinal()} : by_size[rest];
          for (const auto& tail : tails) {
            bool ok = true;
            for (const auto& e : tail.entries())
              if (cnf_compare(e.exponent, ex) != Ordering::Less) ok = false;
            if (!ok) continue;
            CnfOrdinal c;
            c.mutable_entries().push_back(CnfEntry{ex, mult});
            for (const auto& e : tail.entries()) c.mutable_entries().push_back(e);
            fresh.push_back(c);
          }
        }
      }
    }
    by_size[s] = std::move(fresh);
  }
  std::vector<CnfOrdinal> out;
  for (auto& bucket : by_size)
    for (auto& c : bucket) out.push_back(std::move(c));
  return out;
}

}  // namespace

TEST_CASE("cnf basics") {
  CnfOrdinal two = CnfOrdinal::from_nat(2);
  CnfOrdinal om = cnf_omega_pow(CnfOrdinal::from_nat(1));
  CHECK(cnf_eq(cnf_add(two, om), om));                                  // 2 + w = w
  CHECK(cnf_eq(cnf_omega_pow(CnfOrdinal()), CnfOrdinal::from_nat(1)));  // w^0 = 1
  CnfOrdinal om5 = cnf_add(cnf_add(om, om), cnf_add(om, cnf_add(om, om)));
  CnfOrdinal omom = cnf_omega_pow(om);
  CHECK(cnf_compare(omom, om5) == Ordering::Greater);                   // w^w > w*5
  CHECK(cnf_to_string(cnf_add(omom, two)) == "w^(w^(1))+2");
}

TEST_CASE("cnf laws on the small enumeration") {
  auto all = enumerate_cnf(5);
  INFO("values: " << all.size());
  REQUIRE(all.size() > 100);

  for (const auto& a : all)
    for (const auto& b : all) {
      Ordering ab = cnf_compare(a, b);
      CHECK(ab == flip(cnf_compare(b, a)));
    }

  std::mt19937 rng(11);
  for (int i = 0; i < 60000; ++i) {
    const auto& a = all[rng() % all.size()];
    const auto& b = all[rng() % all.size()];
    const auto& c = all[rng() % all.size()];
    CHECK(cnf_eq(cnf_add(cnf_add(a, b), c), cnf_add(a, cnf_add(b, c))));
    if (cnf_compare(b, c) == Ordering::Less)
      CHECK(cnf_compare(cnf_add(a, b), cnf_add(a, c)) == Ordering::Less);
  }
}

TEST_CASE("term_to_cnf") {
  CHECK(cnf_eq(*term_to_cnf(Term::zero()), CnfOrdinal()));
  CHECK(cnf_eq(*term_to_cnf(parse_term("w")), cnf_omega_pow(CnfOrdinal::from_nat(1))));
  CHECK(cnf_eq(*term_to_cnf(parse_term("5")), CnfOrdinal::from_nat(5)));
  CHECK(!term_to_cnf(parse_term("p(1@(1@()))")));  // eps_0 itself is excluded
  CHECK(!term_to_cnf(parse_term("p(1@(1@()),1@())")));
  CHECK_THROWS_AS(term_to_cnf(parse_term("1+w")), NonStandardError);
  CHECK(cnf_eq(*term_to_cnf(parse_term("p(p(w@())@())+w+3")),
               cnf_add(cnf_omega_pow(cnf_omega_pow(cnf_omega_pow(CnfOrdinal::from_nat(1)))),
                       cnf_add(cnf_omega_pow(CnfOrdinal::from_nat(1)), CnfOrdinal::from_nat(3)))));
}

TEST_CASE("binary veblen oracle") {
  BVTerm z = BVTerm::leaf_nat(0);
  BVTerm one = BVTerm::leaf_nat(1);
  BVTerm e0 = BVTerm::phi(one, z);  // the first epsilon number
  CHECK(binary_veblen_compare(e0, BVTerm::phi(z, e0)) == Ordering::Equal);
  CHECK(binary_veblen_compare(BVTerm::phi(z, one), e0) == Ordering::Less);
  CHECK(binary_veblen_compare(BVTerm::phi(one, one), BVTerm::phi(BVTerm::leaf_nat(2), z)) ==
        Ordering::Less);

  BVTerm z0 = BVTerm::phi(BVTerm::leaf_nat(2), z);
  CHECK(binary_veblen_compare(BVTerm::phi(one, z0), z0) == Ordering::Equal);
  CHECK(binary_veblen_compare(BVTerm::phi(one, BVTerm::phi(one, z)), z0) == Ordering::Less);

  BVTerm om = BVTerm::phi(z, one);
  CHECK(binary_veblen_compare(BVTerm::leaf(cnf_omega_pow(CnfOrdinal::from_nat(1))), om) ==
        Ordering::Equal);
  CnfOrdinal w2 =
      cnf_add(cnf_omega_pow(CnfOrdinal::from_nat(1)), cnf_omega_pow(CnfOrdinal::from_nat(1)));
  CHECK(binary_veblen_compare(BVTerm::leaf(w2), om) == Ordering::Greater);
  CHECK(binary_veblen_compare(BVTerm::leaf_nat(7), e0) == Ordering::Less);
  CHECK(binary_veblen_compare(e0, BVTerm::leaf_nat(0)) == Ordering::Greater);
}

TEST_CASE("binary veblen oracle is a total preorder on samples") {
  std::vector<BVTerm> pool;
  for (std::uint64_t n : {0, 1, 2}) pool.push_back(BVTerm::leaf_nat(n));
  std::size_t base = pool.size();
  for (std::size_t i = 0; i < base; ++i)
    for (std::size_t j = 0; j < base; ++j) pool.push_back(BVTerm::phi(pool[i], pool[j]));
  std::size_t mid = pool.size();
  std::mt19937 rng(3);
  for (int k = 0; k < 40; ++k) {
    const BVTerm& a = pool[rng() % mid];
    const BVTerm& b = pool[rng() % mid];
    pool.push_back(BVTerm::phi(a, b));
  }
  for (const auto& a : pool)
    for (const auto& b : pool)
      CHECK(binary_veblen_compare(a, b) == flip(binary_veblen_compare(b, a)));
  for (const auto& a : pool) CHECK(binary_veblen_compare(a, a) == Ordering::Equal);
  std::mt19937 rng2(4);
  for (int k = 0; k < 50000; ++k) {
    const BVTerm& a = pool[rng2() % pool.size()];
    const BVTerm& b = pool[rng2() % pool.size()];
    const BVTerm& c = pool[rng2() % pool.size()];
    if (binary_veblen_compare(a, b) != Ordering::Greater &&
        binary_veblen_compare(b, c) != Ordering::Greater)
      CHECK(binary_veblen_compare(a, c) != Ordering::Greater);
  }
}
