#include <random>

#include "doctest.h"
#include "finclone/finset.hpp"

using namespace finclone;

namespace {

OpTable random_table(std::mt19937& rng, std::uint32_t s, std::uint32_t n) {
  std::vector<Elem> t(ipow(s, n));
  for (Elem& e : t) e = Elem(rng() % s);
  return OpTable(s, n, std::move(t));
}

const OpTable kAnd(2, 2, {0, 0, 0, 1});
const OpTable kOr(2, 2, {0, 1, 1, 1});
const OpTable kNot(2, 1, {1, 0});

}  // namespace

TEST_CASE("tuple encoding is big-endian") {
  CHECK(encode_tuple(2, std::vector<Elem>{0, 0}) == 0);
  CHECK(encode_tuple(2, std::vector<Elem>{1, 0}) == 2);
  CHECK(encode_tuple(3, std::vector<Elem>{1, 2}) == 5);
  CHECK_THROWS_AS(encode_tuple(2, std::vector<Elem>{2}), input_error);
}

TEST_CASE("decode is a two-sided inverse of encode") {
  for (std::uint32_t s = 1; s <= 6; ++s)
    for (std::uint32_t n = 0; n <= 4; ++n) {
      std::uint64_t cells = ipow(s, n);
      for (std::uint64_t i = 0; i < cells; ++i) {
        std::vector<Elem> t = decode_tuple(s, n, i);
        CHECK(encode_tuple(s, t) == i);
      }
    }
}

TEST_CASE("projection tables") {
  CHECK(projection(2, 1, 1).table == std::vector<Elem>{0, 1});
  CHECK(projection(2, 2, 1).table == std::vector<Elem>{0, 0, 1, 1});
  CHECK(projection(2, 2, 2).table == std::vector<Elem>{0, 1, 0, 1});
  CHECK_THROWS_AS(projection(2, 2, 0), input_error);
  CHECK_THROWS_AS(projection(2, 2, 3), input_error);
}

TEST_CASE("superposition laws") {
  std::mt19937 rng(42);
  OpTable id = projection(2, 1, 1);
  for (int i = 0; i < 50; ++i) {
    std::uint32_t s = 2 + rng() % 2;
    std::uint32_t n = 1 + rng() % 3;
    OpTable w = random_table(rng, s, n);
    OpTable sid = projection(s, 1, 1);
    // identity law
    CHECK(superpose(sid, std::vector<OpTable>{w}) == w);
    // projection law
    CHECK(superpose(w, all_projections(s, n)) == w);
  }
  // AND is symmetric under swapping its arguments
  std::vector<OpTable> swapped{projection(2, 2, 2), projection(2, 2, 1)};
  CHECK(superpose(kAnd, swapped) == kAnd);
  // a nullary outer lifts to a constant of the requested arity
  OpTable c = constant_table(2, 0, 1);
  CHECK(superpose(c, {}, 3) == constant_table(2, 3, 1));
  CHECK_THROWS_AS(superpose(kAnd, std::vector<OpTable>{kNot}), input_error);
}

TEST_CASE("superposition is associative in the clone sense") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::uint32_t s = 2 + rng() % 2;
    std::uint32_t k = 1 + rng() % 2;  // outer arity
    std::uint32_t m = 1 + rng() % 2;  // middle arity
    std::uint32_t n = 1 + rng() % 2;  // inner arity
    OpTable w = random_table(rng, s, k);
    std::vector<OpTable> psi, chi;
    for (std::uint32_t i = 0; i < k; ++i) psi.push_back(random_table(rng, s, m));
    for (std::uint32_t i = 0; i < m; ++i) chi.push_back(random_table(rng, s, n));
    OpTable lhs = superpose(superpose(w, psi), chi);
    std::vector<OpTable> folded;
    for (std::uint32_t i = 0; i < k; ++i)
      folded.push_back(superpose(psi[i], chi));
    OpTable rhs = superpose(w, folded);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("constrained enumeration: tables commuting with NOT") {
  std::vector<OpTable> gens{kNot};
  std::vector<OpTable> got = enumerate_constrained(2, 1, gens);
  REQUIRE(got.size() == 2);
  CHECK(got[0].table == std::vector<Elem>{0, 1});
  CHECK(got[1].table == std::vector<Elem>{1, 0});
}

TEST_CASE("constrained enumeration: no constraints yields all tables") {
  std::vector<OpTable> got = enumerate_constrained(2, 2, {});
  CHECK(got.size() == 16);
  CHECK(std::is_sorted(got.begin(), got.end()));
}

TEST_CASE("constrained enumeration: AND and the top constant") {
  std::vector<OpTable> gens{kAnd, constant_table(2, 0, 1)};
  std::vector<OpTable> got = enumerate_constrained(2, 2, gens);
  REQUIRE(got.size() == 4);
  CHECK(got[0] == kAnd);
  CHECK(got[1] == projection(2, 2, 1));
  CHECK(got[2] == projection(2, 2, 2));
  CHECK(got[3] == constant_table(2, 2, 1));
}

TEST_CASE("constrained enumeration is deterministic and canonical") {
  std::vector<OpTable> gens{kOr};
  std::vector<OpTable> a = enumerate_constrained(2, 2, gens);
  std::vector<OpTable> b = enumerate_constrained(2, 2, gens);
  CHECK(a == b);
  CHECK(std::is_sorted(a.begin(), a.end()));
}

TEST_CASE("constrained enumeration respects resource guards") {
  EnumLimits tiny;
  tiny.max_cells = 2;
  CHECK_THROWS_AS(enumerate_constrained(2, 2, {}, tiny), resource_error);
}

TEST_CASE("streaming stops early when asked") {
  int seen = 0;
  enumerate_constrained_stream(2, 2, {}, [&](const OpTable&) {
    return ++seen < 3;
  });
  CHECK(seen == 3);
}

TEST_CASE("homomorphism constraint instances cover repeated arguments") {
  // over carrier 3, tables commuting with the successor permutation form
  // the centralizer of a 3-cycle: x+c and the constants are excluded,
  // leaving exactly the three translations at arity 1
  OpTable succ(3, 1, {1, 2, 0});
  std::vector<OpTable> gens{succ};
  std::vector<OpTable> got = enumerate_constrained(3, 1, gens);
  CHECK(got.size() == 3);
  for (const OpTable& t : got) {
    // each solution is x |-> x + c mod 3
    Elem c = t.table[0];
    CHECK(t.table[1] == Elem((1 + c) % 3));
    CHECK(t.table[2] == Elem((2 + c) % 3));
  }
}
