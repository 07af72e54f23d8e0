#include <random>

#include "doctest.h"
#include "finclone/theory.hpp"

using namespace finclone;

namespace {
const OpTable kAnd(2, 2, {0, 0, 0, 1});
const OpTable kNot(2, 1, {1, 0});
}  // namespace

TEST_CASE("full theory slice counts") {
  CHECK(full_theory_slice(2, 1).ops.size() == 4);
  CHECK(full_theory_slice(2, 2).ops.size() == 16);
  CHECK(full_theory_slice(3, 1).ops.size() == 27);
  CHECK_THROWS_AS(full_theory_slice(3, 3), resource_error);
  ConcreteTheory full = ConcreteTheory::full(2, 2);
  CHECK_THROWS_AS(full.slice(5), resource_error);
}

TEST_CASE("initial theory slices are the projections") {
  CHECK(initial_theory_slice(2, 3).ops.size() == 3);
  CHECK(initial_theory_slice(2, 0).ops.empty());
  TheorySlice one = initial_theory_slice(3, 1);
  REQUIRE(one.ops.size() == 1);
  CHECK(one.ops[0] == projection(3, 1, 1));
}

TEST_CASE("matrix theory slices") {
  MatSliceResult b2 = mat_slice(builtin_rig("bool2"), 2);
  REQUIRE(b2.slice.ops.size() == 4);
  CHECK(b2.slice.ops[0] == kAnd);
  CHECK(b2.slice.ops[1] == projection(2, 2, 1));
  CHECK(b2.slice.ops[2] == projection(2, 2, 2));
  CHECK(b2.slice.ops[3] == constant_table(2, 2, 1));
  CHECK(b2.faithful());

  MatSliceResult z3 = mat_slice(builtin_rig("z3"), 1);
  REQUIRE(z3.slice.ops.size() == 3);
  CHECK(z3.slice.ops[0] == constant_table(3, 1, 0));
  CHECK(z3.slice.ops[1] == OpTable(3, 1, {0, 1, 2}));
  CHECK(z3.slice.ops[2] == OpTable(3, 1, {0, 2, 1}));

  for (const FiniteRig& R : builtin_rigs()) {
    MatSliceResult zero = mat_slice(R, 0);
    REQUIRE(zero.slice.ops.size() == 1);
    CHECK(zero.slice.ops[0] == constant_table(R.size, 0, R.zero));
  }
  CHECK_THROWS_AS(mat_slice(rig_zmod(1), 1), input_error);
}

TEST_CASE("matrix presentations are faithful on every registry rig") {
  for (const FiniteRig& R : builtin_rigs()) {
    std::uint32_t K = default_max_arity(R.size);
    for (std::uint32_t n = 0; n <= K; ++n) {
      MatSliceResult r = mat_slice(R, n);
      CAPTURE(R.name);
      CHECK(r.slice.ops.size() == ipow(R.size, n));
      CHECK(r.merged == 0);
    }
  }
}

TEST_CASE("affine core slices") {
  ConcreteTheory mat_b2 = ConcreteTheory::mat(builtin_rig("bool2"));
  TheorySlice aff2 = affine_core_slice(mat_b2, 2);
  REQUIRE(aff2.ops.size() == 3);
  CHECK(aff2.ops[0] == kAnd);
  CHECK(aff2.ops[1] == projection(2, 2, 1));
  CHECK(aff2.ops[2] == projection(2, 2, 2));

  ConcreteTheory mat_z2 = ConcreteTheory::mat(builtin_rig("z2"));
  CHECK(affine_core_slice(mat_z2, 3).ops.size() == 4);

  // over the full theory only the identity fixes the diagonal at arity 1
  ConcreteTheory full = ConcreteTheory::full(2, 2);
  TheorySlice aff1 = affine_core_slice(full, 1);
  REQUIRE(aff1.ops.size() == 1);
  CHECK(aff1.ops[0] == projection(2, 1, 1));

  // the diagonal and row-sum characterizations are cross-checked for every
  // registry rig (an exception here would mean they disagree)
  for (const FiniteRig& R : builtin_rigs()) {
    ConcreteTheory T = ConcreteTheory::mat(R);
    for (std::uint32_t n = 0; n <= 3; ++n)
      CHECK_NOTHROW(affine_core_slice(T, n));
  }
}

TEST_CASE("pointed module slices") {
  MatSliceResult z2 = pointed_module_slice(builtin_rig("z2"), 1);
  CHECK(z2.slice.ops.size() == 4);  // 0, 1, x, x+1
  MatSliceResult b2 = pointed_module_slice(builtin_rig("bool2"), 0);
  CHECK(b2.slice.ops.size() == 2);
  MatSliceResult z3 = pointed_module_slice(builtin_rig("z3"), 1);
  CHECK(z3.slice.ops.size() == 9);
  CHECK(z3.merged == 0);
}

TEST_CASE("pointed module slices contain the module reduct") {
  for (const FiniteRig& R : builtin_rigs()) {
    for (std::uint32_t n = 0; n <= 3; ++n) {
      TheorySlice mat = mat_slice(R, n).slice;
      TheorySlice pointed = pointed_module_slice(R, n).slice;
      for (const OpTable& op : mat.ops) CHECK(pointed.contains(op));
    }
  }
}

TEST_CASE("clone closure reaches the expected fixpoints") {
  // meet and the top constant generate the matrix theory of the meet rig
  const FiniteRig& b2 = builtin_rig("bool2");
  ConcreteTheory cl =
      ConcreteTheory::closure_of(2, {b2.add, constant_table(2, 0, b2.zero)}, 2);
  ConcreteTheory mt = ConcreteTheory::mat(b2);
  for (std::uint32_t n = 0; n <= 2; ++n) CHECK(cl.slice(n) == mt.slice(n));

  // meet and complement are functionally complete at arity 2
  ConcreteTheory boolean = ConcreteTheory::closure_of(2, {kAnd, kNot}, 2);
  CHECK(boolean.slice(2).ops.size() == 16);
  CHECK(boolean.slice(1).ops.size() == 4);

  // no generators: the projection clone
  ConcreteTheory proj = ConcreteTheory::closure_of(3, {}, 3);
  for (std::uint32_t n = 0; n <= 3; ++n)
    CHECK(proj.slice(n) == initial_theory_slice(3, n));
}

TEST_CASE("module generators regenerate the matrix slices") {
  for (const FiniteRig& R : builtin_rigs()) {
    std::uint32_t K = R.size == 4 ? 2 : std::min(default_max_arity(R.size), 3u);
    ConcreteTheory T = ConcreteTheory::mat(R, K);
    ConcreteTheory cl = ConcreteTheory::closure_of(R.size, T.generators(), K);
    CAPTURE(R.name);
    for (std::uint32_t n = 0; n <= K; ++n) CHECK(cl.slice(n) == T.slice(n));
  }
}

TEST_CASE("slice comparison") {
  TheorySlice initial = initial_theory_slice(2, 2);
  TheorySlice full = full_theory_slice(2, 2);
  SliceComparison c = slice_compare(initial, full);
  CHECK(c.relation == SliceRelation::LeftSubset);
  CHECK(std::find(c.right_only.begin(), c.right_only.end(), kAnd) !=
        c.right_only.end());

  ConcreteTheory mt = ConcreteTheory::mat(builtin_rig("bool2"));
  TheorySlice aff = affine_core_slice(mt, 2);
  CHECK(slice_compare(aff, mt.slice(2)).relation == SliceRelation::LeftSubset);
  CHECK(slice_compare(mt.slice(2), mt.slice(2)).relation ==
        SliceRelation::Equal);
  CHECK(slice_compare(full, initial).relation == SliceRelation::RightSubset);
  CHECK_THROWS_AS(slice_compare(initial, full_theory_slice(2, 1)), input_error);
}

TEST_CASE("free algebra sizes") {
  ConcreteTheory mt = ConcreteTheory::mat(builtin_rig("bool2"));
  CHECK(free_algebra_size(mt, 3) == 8);
  ConcreteTheory aff = ConcreteTheory::mat_aff(builtin_rig("bool2"));
  CHECK(free_algebra_size(aff, 3) == 7);
  ConcreteTheory ini = ConcreteTheory::initial(2);
  CHECK(free_algebra_size(ini, 5) == 5);
}

TEST_CASE("produced slices contain projections and are superposition closed") {
  std::mt19937 rng(99);
  int checks = 0;
  std::vector<ConcreteTheory> theories;
  theories.push_back(ConcreteTheory::mat(builtin_rig("bool2")));
  theories.push_back(ConcreteTheory::mat(builtin_rig("z3")));
  theories.push_back(ConcreteTheory::mat_aff(builtin_rig("z2")));
  theories.push_back(ConcreteTheory::pointed_mat_op(builtin_rig("bool2")));
  while (checks < 1000) {
    for (ConcreteTheory& T : theories) {
      std::uint32_t n = 1 + rng() % 2;
      const TheorySlice& sl = T.slice(n);
      for (std::uint32_t i = 1; i <= n; ++i)
        CHECK(sl.contains(projection(T.carrier(), n, i)));
      const OpTable& outer = sl.ops[rng() % sl.ops.size()];
      // compose with inners from the same slice
      std::vector<OpTable> inners;
      for (std::uint32_t i = 0; i < outer.arity; ++i)
        inners.push_back(sl.ops[rng() % sl.ops.size()]);
      OpTable composite = superpose(outer, inners, n);
      CHECK(T.slice(composite.arity).contains(composite));
      ++checks;
    }
  }
}

TEST_CASE("affine theories carry verified generator sets where possible") {
  CHECK(ConcreteTheory::mat_aff(builtin_rig("bool2")).generators_exact());
  CHECK(ConcreteTheory::mat_aff(builtin_rig("z2")).generators_exact());
  CHECK(ConcreteTheory::mat_aff(builtin_rig("z3")).generators_exact());
  CHECK(ConcreteTheory::mat_aff(builtin_rig("z4"), 2).generators_exact());
  CHECK_FALSE(ConcreteTheory::mat_aff(builtin_rig("sat2"), 2).generators_exact());
  // the claimed generator sets really do regenerate the affine slices
  for (const char* nm : {"bool2", "z2", "z3"}) {
    ConcreteTheory aff = ConcreteTheory::mat_aff(builtin_rig(nm));
    ConcreteTheory cl =
        ConcreteTheory::closure_of(aff.carrier(), aff.generators(),
                                   aff.max_arity());
    CAPTURE(nm);
    for (std::uint32_t n = 0; n <= aff.max_arity(); ++n)
      CHECK(cl.slice(n) == aff.slice(n));
  }
}

TEST_CASE("idempotent rigs beyond two elements do not claim exact affine "
          "generators") {
  // the chain 0 < 1 < 2 with min as addition and max as multiplication;
  // its affine slice at arity 2 contains min(x, max(y,1)), which the
  // binary addition alone cannot generate
  FiniteRig chain3 = make_rig("chain3", 3,
                              {0, 0, 0, 0, 1, 1, 0, 1, 2},   // min
                              {0, 1, 2, 1, 1, 2, 2, 2, 2},   // max
                              /*zero=*/2, /*one=*/0);
  REQUIRE(validate_rig(chain3).pass);
  ConcreteTheory aff = ConcreteTheory::mat_aff(chain3, 2);
  CHECK_FALSE(aff.generators_exact());
  CHECK(aff.slice(2).ops.size() == 5);
  ConcreteTheory cl = ConcreteTheory::closure_of(3, {chain3.add}, 2);
  CHECK(cl.slice(2).ops.size() == 3);  // strictly smaller than the slice
}

TEST_CASE("slice builders refuse oversized materializations") {
  CHECK_THROWS_AS(mat_slice(builtin_rig("bool2"), 20), resource_error);
  CHECK_THROWS_AS(pointed_module_slice(builtin_rig("z3"), 14), resource_error);
}

TEST_CASE("algebra interpretations are validated against theory relations") {
  ConcreteTheory T = ConcreteTheory::mat(builtin_rig("bool2"));
  // the theory acting on its own carrier
  CHECK(validate_algebra(T, tautological_algebra(T)).pass);

  // the componentwise square: a four-element meet semilattice
  auto square = [](const OpTable& g) {
    std::uint64_t cells = ipow(4, g.arity);
    std::vector<Elem> t(cells);
    for (std::uint64_t c = 0; c < cells; ++c) {
      std::vector<Elem> args = decode_tuple(4, g.arity, c);
      std::vector<Elem> lo(g.arity), hi(g.arity);
      for (std::uint32_t i = 0; i < g.arity; ++i) {
        lo[i] = args[i] & 1;
        hi[i] = (args[i] >> 1) & 1;
      }
      Elem vl = g.table[encode_tuple(2, lo)];
      Elem vh = g.table[encode_tuple(2, hi)];
      t[c] = Elem(vl | (vh << 1));
    }
    return OpTable(4, g.arity, std::move(t));
  };
  AlgebraStructure prod;
  prod.theory_label = T.label();
  prod.carrier_size = 4;
  for (const OpTable& g : T.generators())
    prod.interpretation.emplace_back(g, square(g));
  CHECK(validate_algebra(T, prod).pass);

  // swapping meet for join breaks the absorption relation with the top
  AlgebraStructure broken = tautological_algebra(T);
  for (auto& [g, b] : broken.interpretation)
    if (g.arity == 2) b = OpTable(2, 2, {0, 1, 1, 1});
  AlgebraReport rep = validate_algebra(T, broken);
  CHECK_FALSE(rep.pass);
  CHECK(rep.detail.find("relation violated") != std::string::npos);

  // arity mismatches are refused outright
  AlgebraStructure shape = tautological_algebra(T);
  shape.interpretation[0].second = OpTable(2, 1, {0, 1});
  CHECK_FALSE(validate_algebra(T, shape).pass);
}
