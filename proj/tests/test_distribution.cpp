#include "doctest.h"
#include "finclone/checks.hpp"

using namespace finclone;

namespace {

Context filter_ctx() { return scalar_linear_context(builtin_rig("bool2")); }
Context proper_ctx() { return scalar_affine_context(builtin_rig("bool2")); }

}  // namespace

TEST_CASE("the three shipped contexts are admitted with exact generators") {
  Context f = filter_ctx();
  CHECK(f.commutative.pass);
  CHECK(f.saturated.pass);
  CHECK(f.tperp_exact);
  CHECK(f.exactness == "exact-via-known-generators");

  Context p = proper_ctx();
  CHECK(p.saturated.pass);
  CHECK(p.tperp_exact);
  CHECK(p.tperp_gens.size() == 3);  // meet plus both constants

  Context u = initial_context(2);
  CHECK(u.saturated.pass);
  CHECK(u.tperp_exact);
}

TEST_CASE("non-commutative or non-saturated data is rejected") {
  CHECK_THROWS_AS(scalar_linear_context(builtin_rig("nc4")), context_error);
  try {
    build_context(ConcreteTheory::full(2, 2), 2);
    FAIL("expected rejection");
  } catch (const context_error& e) {
    CHECK(e.verdict.kind == "commutative");
    bool witnessed = false;
    for (const ArityCheck& ac : e.verdict.per_arity)
      if (!ac.witnesses.empty()) witnessed = true;
    CHECK(witnessed);
  }
}

TEST_CASE("a truncated context is admitted with the annotation") {
  Context z3aff = scalar_affine_context(builtin_rig("z3"));
  CHECK_FALSE(z3aff.tperp_exact);
  CHECK(z3aff.exactness == "truncated-at-3, superset-certified");
  // the restriction identity still holds on the computed slices
  for (std::uint32_t n = 0; n <= 2; ++n)
    CHECK(restriction_check(z3aff, n).pass);
}

TEST_CASE("cotensor structure lifts generators pointwise") {
  Context f = filter_ctx();
  std::vector<LiftedOp> l1 = cotensor_structure(f, 1);
  for (const LiftedOp& L : l1) {
    REQUIRE(L.space == 2);
    for (std::size_t i = 0; i < L.table.size(); ++i)
      CHECK(L.table[i] == L.base.table[i]);
  }
  std::vector<LiftedOp> l2 = cotensor_structure(f, 2);
  const LiftedOp* meet = nullptr;
  for (const LiftedOp& L : l2)
    if (L.base.arity == 2) meet = &L;
  REQUIRE(meet);
  // pointwise meet of the functions 11 and 01 is 01
  CHECK(meet->table[3 * 4 + 1] == 1);
  // pointwise meet of 10 and 01 is 00
  CHECK(meet->table[2 * 4 + 1] == 0);
  std::vector<LiftedOp> l0 = cotensor_structure(f, 0);
  for (const LiftedOp& L : l0)
    for (std::uint32_t v : L.table) CHECK(v == 0);
}

TEST_CASE("distribution object counts") {
  Context f = filter_ctx();
  Context p = proper_ctx();
  Context u = initial_context(2);
  for (std::uint32_t v = 0; v <= 4; ++v)
    CHECK(distribution_object(f, v).elements.size() == (std::uint64_t(1) << v));
  for (std::uint32_t v = 0; v <= 3; ++v)
    CHECK(distribution_object(p, v).elements.size() ==
          (std::uint64_t(1) << v) - 1);
  for (std::uint32_t v = 0; v <= 4; ++v)
    CHECK(distribution_object(u, v).elements.size() == v);
}

TEST_CASE("evaluation elements are projections and classify as principal") {
  Context f = filter_ctx();
  for (std::uint32_t v = 1; v <= 3; ++v)
    for (std::uint32_t p = 0; p < v; ++p)
      CHECK(dirac(f, v, p) == projection(2, v, p + 1));
  CHECK_THROWS_AS(dirac(f, 2, 2), input_error);

  Classification c = classify(f, 2, dirac(f, 2, 0));
  CHECK(c.label == "ultrafilter");
  REQUIRE(c.principal);
  CHECK(*c.principal == 1);  // the subset {0}
  CHECK(c.family == std::vector<std::uint32_t>{1, 3});

  // the constant-top element is the improper filter
  Classification imp = classify(f, 2, constant_table(2, 2, 1));
  CHECK(imp.label == "improper filter");
  CHECK(imp.family.size() == 4);
  REQUIRE(imp.principal);
  CHECK(*imp.principal == 0);
}

TEST_CASE("classification enumerates exactly the filters (oracle)") {
  Context f = filter_ctx();
  Context p = proper_ctx();
  for (std::uint32_t v = 0; v <= 3; ++v) {
    DistObject d = distribution_object(f, v);
    std::vector<std::vector<std::uint32_t>> families;
    for (const OpTable& mu : d.elements)
      families.push_back(classify(f, v, mu).family);
    std::sort(families.begin(), families.end());
    CHECK(families == brute_force_filters(v, false));

    DistObject dp = distribution_object(p, v);
    families.clear();
    for (const OpTable& mu : dp.elements)
      families.push_back(classify(p, v, mu).family);
    std::sort(families.begin(), families.end());
    CHECK(families == brute_force_filters(v, true));
  }
}

TEST_CASE("functorial action: identity, composition, naturality") {
  Context f = filter_ctx();
  DistObject d2 = distribution_object(f, 2);
  std::vector<std::uint32_t> idmap{0, 1};
  for (const OpTable& mu : d2.elements)
    CHECK(dmap(f, idmap, 2, mu) == mu);

  // collapsing the base maps the improper filter to the improper filter
  std::vector<std::uint32_t> collapse{0, 0};
  OpTable improper2 = constant_table(2, 2, 1);
  OpTable image = dmap(f, collapse, 1, improper2);
  CHECK(classify(f, 1, image).label == "improper filter");

  // naturality of the unit along every map between small bases
  for (std::uint32_t v : {1u, 2u, 3u})
    for (std::uint32_t w : {1u, 2u, 3u}) {
      std::uint64_t nmaps = ipow(w, v);
      for (std::uint64_t code = 0; code < nmaps; ++code) {
        std::vector<std::uint32_t> g(v);
        std::uint64_t c = code;
        for (std::uint32_t i = 0; i < v; ++i) {
          g[i] = std::uint32_t(c % w);
          c /= w;
        }
        for (std::uint32_t pt = 0; pt < v; ++pt)
          CHECK(dmap(f, g, w, dirac(f, v, pt)) == dirac(f, w, g[pt]));
      }
    }

  // composition law on a sample
  std::vector<std::uint32_t> g1{1, 0};  // 2 -> 2
  std::vector<std::uint32_t> g2{0, 0};  // 2 -> 1... values into base of size 2
  for (const OpTable& mu : d2.elements) {
    OpTable lhs = dmap(f, g2, 2, dmap(f, g1, 2, mu));
    std::vector<std::uint32_t> comp{g2[g1[0]], g2[g1[1]]};
    CHECK(dmap(f, comp, 2, mu) == lhs);
  }
}

TEST_CASE("multiplication satisfies the unit laws element by element") {
  Context f = filter_ctx();
  DistObject DV = distribution_object(f, 2);
  std::uint32_t dv = std::uint32_t(DV.elements.size());
  for (std::size_t i = 0; i < DV.elements.size(); ++i) {
    OpTable delta = dirac(f, dv, std::uint32_t(i));
    CHECK(mult(f, DV, delta) == DV.elements[i]);
  }
  CHECK_THROWS_AS(mult(f, DV, constant_table(2, 2, 1)), input_error);
}

TEST_CASE("monad laws hold at unit-test sizes") {
  Context f = filter_ctx();
  CHECK(monad_laws_check(f, 2, 1).pass);
  Context p = proper_ctx();
  CHECK(monad_laws_check(p, 2, 2).pass);
  Context u = initial_context(2);
  CHECK(monad_laws_check(u, 3, 3).pass);
}

TEST_CASE("restriction and double-commutant identities at small sizes") {
  Context f = filter_ctx();
  Context p = proper_ctx();
  Context u = initial_context(2);
  for (std::uint32_t n = 0; n <= 2; ++n) {
    CHECK(restriction_check(f, n).pass);
    CHECK(restriction_check(p, n).pass);
    CHECK(restriction_check(u, n).pass);
    CHECK(double_commutant_check(f, n).pass);
    CHECK(double_commutant_check(p, n).pass);
    CHECK(double_commutant_check(u, n).pass);
  }
}

TEST_CASE("membership: units, functorial images and collapses stay inside") {
  Context f = filter_ctx();
  Context p = proper_ctx();
  Context u = initial_context(2);
  for (Context* ctx : {&f, &p, &u}) {
    std::uint32_t vmax = ctx == &u ? 4 : 3;
    for (std::uint32_t v = 1; v <= vmax; ++v) {
      DistObject d = distribution_object(*ctx, v);
      for (std::uint32_t pt = 0; pt < v; ++pt)
        CHECK(d.index_of(dirac(*ctx, v, pt)).has_value());
    }
    // all maps 2 -> 3 and 3 -> 2
    DistObject d2 = distribution_object(*ctx, 2);
    DistObject d3 = distribution_object(*ctx, 3);
    for (std::uint32_t a = 0; a < 3; ++a)
      for (std::uint32_t b = 0; b < 3; ++b) {
        std::vector<std::uint32_t> g{a, b};
        for (const OpTable& mu : d2.elements)
          CHECK(d3.index_of(dmap(*ctx, g, 3, mu)).has_value());
      }
    for (std::uint32_t a = 0; a < 2; ++a)
      for (std::uint32_t b = 0; b < 2; ++b)
        for (std::uint32_t c = 0; c < 2; ++c) {
          std::vector<std::uint32_t> g{a, b, c};
          for (const OpTable& mu : d3.elements)
            CHECK(d2.index_of(dmap(*ctx, g, 2, mu)).has_value());
        }
    // every second-level element collapses into the first level
    for (std::uint32_t v = 1; v <= 2; ++v) {
      DistObject DV = distribution_object(*ctx, v);
      DistObject DDV =
          distribution_object(*ctx, std::uint32_t(DV.elements.size()));
      for (const OpTable& Xi : DDV.elements)
        CHECK(DV.index_of(mult(*ctx, DV, Xi)).has_value());
    }
  }
}

TEST_CASE("the structured meet search agrees with the dense search") {
  Context f = filter_ctx();
  Context p = proper_ctx();
  DistLimits tight;
  tight.dense_cells = 4;  // force the structured path
  for (std::uint32_t base : {5u, 8u}) {
    DistObject a = distribution_object(f, base, tight);
    DistObject b = distribution_object(f, base);
    CHECK(a.elements == b.elements);
  }
  DistObject a = distribution_object(p, 7, tight);
  DistObject b = distribution_object(p, 7);
  CHECK(a.elements == b.elements);
}

TEST_CASE("oversized distribution objects are refused with an advisory") {
  Context z3lin = scalar_linear_context(builtin_rig("z3"));
  DistLimits tight;
  tight.dense_cells = 8;
  // 3^3 = 27 points exceeds the dense bound and the carrier is not
  // two-valued, so no structured search applies
  CHECK_THROWS_AS(distribution_object(z3lin, 3, tight), resource_error);
}

TEST_CASE("classification requires a two-valued dualizer") {
  Context z3lin = scalar_linear_context(builtin_rig("z3"));
  OpTable mu = distribution_object(z3lin, 1).elements.front();
  CHECK_THROWS_AS(classify(z3lin, 1, mu), input_error);
}

TEST_CASE("the affine-pointed converse is only asserted where it holds") {
  // the forward identity holds for every rig; the converse needs a ring
  // (or the two-element meet rig) and is skipped otherwise
  CHECK(affine_commutant_check(builtin_rig("z4"), 2).pass);
  CheckResult sat = affine_commutant_check(builtin_rig("sat2"), 2);
  CHECK(sat.pass);
  CHECK(sat.detail.find("converse not asserted") != std::string::npos);
  CHECK(affine_commutant_check(builtin_rig("nc4"), 2).pass);
}
