#include <filesystem>
#include <random>

#include "doctest.h"
#include "finclone/rig.hpp"

using namespace finclone;

TEST_CASE("registry rigs validate with the expected verdicts") {
  struct Expected {
    const char* name;
    bool is_ring;
  };
  const Expected table[] = {{"bool2", false}, {"z2", true},  {"z3", true},
                            {"z4", true},     {"sat2", false},
                            {"nc4", false}};
  for (const Expected& e : table) {
    const FiniteRig& R = builtin_rig(e.name);
    RigReport rep = validate_rig(R);
    CAPTURE(e.name);
    CHECK(rep.pass);
    CHECK(rep.is_ring == e.is_ring);
    CHECK_FALSE(rep.degenerate);
  }
  CHECK(builtin_rig("bool2").commutative());
  CHECK_FALSE(builtin_rig("nc4").commutative());
}

TEST_CASE("the one-element rig is accepted but flagged degenerate") {
  FiniteRig z1 = rig_zmod(1);
  RigReport rep = validate_rig(z1);
  CHECK(rep.pass);
  CHECK(rep.degenerate);
}

TEST_CASE("a non-commutative addition is reported with its witness") {
  FiniteRig bad = make_rig("bad", 2, {0, 1, 0, 0}, {0, 0, 0, 1}, 0, 1);
  RigReport rep = validate_rig(bad);
  CHECK_FALSE(rep.pass);
  bool found = false;
  for (const AxiomViolation& v : rep.violations)
    if (v.axiom == "add-commutative" && v.witness == std::vector<Elem>{0, 1})
      found = true;
  CHECK(found);
}

TEST_CASE("opposite transposes multiplication and is involutive") {
  CHECK(opposite(builtin_rig("z3")).mul == builtin_rig("z3").mul);
  CHECK(opposite(builtin_rig("bool2")).mul == builtin_rig("bool2").mul);
  const FiniteRig& nc = builtin_rig("nc4");
  FiniteRig op = opposite(nc);
  CHECK(op.mul.table != nc.mul.table);
  for (std::uint32_t a = 0; a < 4; ++a)
    for (std::uint32_t b = 0; b < 4; ++b)
      CHECK(op.times(Elem(a), Elem(b)) == nc.times(Elem(b), Elem(a)));
  FiniteRig back = opposite(op);
  CHECK(back.mul == nc.mul);
  CHECK(back.name == nc.name);
  CHECK(validate_rig(op).pass);
}

TEST_CASE("matrix multiplication") {
  const FiniteRig& z3 = builtin_rig("z3");
  const FiniteRig& z2 = builtin_rig("z2");
  const FiniteRig& b2 = builtin_rig("bool2");
  std::mt19937 rng(11);
  for (int i = 0; i < 20; ++i) {
    std::vector<Elem> e(6);
    for (Elem& x : e) x = Elem(rng() % 3);
    MatrixValue a(z3, 2, 3, e);
    CHECK(matrix_multiply(identity_matrix(z3, 2), a) == a);
  }
  // 1+1 = 0 in z2
  MatrixValue row(z2, 1, 2, {1, 1});
  MatrixValue col(z2, 2, 1, {1, 1});
  CHECK(matrix_multiply(row, col).entries == std::vector<Elem>{0});
  // (bot or top) meet (top or bot) = top; top is index 1, bot is index 0
  MatrixValue brow(b2, 1, 2, {0, 1});
  MatrixValue bcol(b2, 2, 1, {1, 0});
  CHECK(matrix_multiply(brow, bcol).entries == std::vector<Elem>{1});
  CHECK_THROWS_AS(matrix_multiply(row, MatrixValue(z2, 3, 1, {0, 0, 0})),
                  input_error);
}

TEST_CASE("matrix multiplication is associative and unital on small shapes") {
  std::mt19937 rng(23);
  int triples = 0;
  while (triples < 1200) {
    for (const FiniteRig& R : builtin_rigs()) {
      std::uint32_t l = 1 + rng() % 3, m = 1 + rng() % 3, n = 1 + rng() % 3,
                    p = 1 + rng() % 3;
      auto rand_mat = [&](std::uint32_t r, std::uint32_t c) {
        std::vector<Elem> e(std::uint64_t(r) * c);
        for (Elem& x : e) x = Elem(rng() % R.size);
        return MatrixValue(R, r, c, std::move(e));
      };
      MatrixValue a = rand_mat(l, m), b = rand_mat(m, n), c = rand_mat(n, p);
      CHECK(matrix_multiply(matrix_multiply(a, b), c) ==
            matrix_multiply(a, matrix_multiply(b, c)));
      CHECK(matrix_multiply(identity_matrix(R, l), a) == a);
      CHECK(matrix_multiply(a, identity_matrix(R, m)) == a);
      ++triples;
    }
  }
}

TEST_CASE("sub-rig validation") {
  SubRigReport whole = validate_sub_rig(builtin_rig("z2"), {0, 1});
  CHECK(whole.pass);
  REQUIRE(whole.sub);
  CHECK(whole.sub->add == builtin_rig("z2").add);

  SubRigReport esc = validate_sub_rig(builtin_rig("z3"), {0, 1});
  CHECK_FALSE(esc.pass);
  bool closure_fail = false;
  for (const AxiomViolation& v : esc.violations)
    if (v.axiom == "sub-rig-closed-add") closure_fail = true;
  CHECK(closure_fail);

  CHECK(validate_sub_rig(builtin_rig("bool2"), {0, 1}).pass);
  // {0,1} inside nc4 happens to be closed under both operations
  SubRigReport nc = validate_sub_rig(builtin_rig("nc4"), {0, 1});
  CHECK(nc.pass);
  REQUIRE(nc.sub);
  CHECK(validate_rig(*nc.sub).pass);

  CHECK_THROWS_AS(validate_sub_rig(builtin_rig("z2"), {0, 7}), input_error);
}

TEST_CASE("positive subsets are validated") {
  FiniteRig r = rig_zmod(3);
  r.positive = std::vector<Elem>{0, 1};
  RigReport rep = validate_rig(r);
  CHECK_FALSE(rep.pass);
  bool found = false;
  for (const AxiomViolation& v : rep.violations)
    if (v.axiom == "positive-closed-add") found = true;
  CHECK(found);
  CHECK(validate_rig(builtin_rig("z2")).pass);  // ships positive = {0,1}
}

TEST_CASE("rig JSON round-trips and the loader pinpoints errors") {
  for (const FiniteRig& R : builtin_rigs()) {
    FiniteRig back = rig_from_json(rig_to_json(R));
    CHECK(back == R);
  }
  nlohmann::json j = rig_to_json(builtin_rig("z2"));
  j["add"][0][1] = 9;
  try {
    rig_from_json(j, "z2");
    FAIL("expected input_error");
  } catch (const input_error& e) {
    CHECK(std::string(e.what()).find("add[0][1]") != std::string::npos);
  }
  j = rig_to_json(builtin_rig("z2"));
  j.erase("mul");
  CHECK_THROWS_AS(rig_from_json(j), input_error);
  j = rig_to_json(builtin_rig("z2"));
  j["add"][1] = nlohmann::json::array({0});
  CHECK_THROWS_AS(rig_from_json(j), input_error);
  j = rig_to_json(builtin_rig("z2"));
  j["zero"] = 5;
  CHECK_THROWS_AS(rig_from_json(j), input_error);
  j = rig_to_json(builtin_rig("z2"));
  j["positive"] = nlohmann::json::array({0, 4});
  CHECK_THROWS_AS(rig_from_json(j), input_error);
}

TEST_CASE("shipped rig files match the registry") {
  namespace fs = std::filesystem;
  fs::path dir = fs::path(FINCLONE_DATA_DIR) / "rigs";
  for (const FiniteRig& R : builtin_rigs()) {
    fs::path f = dir / (R.name + ".json");
    REQUIRE(fs::exists(f));
    CHECK(load_rig(f) == R);
  }
}
