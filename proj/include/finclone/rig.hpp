#pragma once

// Finite rigs (semirings) with exhaustive axiom validation, opposites,
// positive sub-rigs, matrices, a registry of built-in examples and the
// JSON exchange format used by the CLI.

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "finclone/finset.hpp"
#include "json.hpp"

namespace finclone {

struct FiniteRig {
  std::string name;
  std::uint32_t size = 1;
  OpTable add;  // arity 2
  OpTable mul;  // arity 2
  Elem zero = 0;
  Elem one = 0;
  std::optional<std::vector<Elem>> positive;

  Elem plus(Elem a, Elem b) const { return add.table[std::uint64_t(a) * size + b]; }
  Elem times(Elem a, Elem b) const { return mul.table[std::uint64_t(a) * size + b]; }
  bool degenerate() const { return zero == one; }
  bool commutative() const {
    for (std::uint32_t a = 0; a < size; ++a)
      for (std::uint32_t b = 0; b < size; ++b)
        if (times(Elem(a), Elem(b)) != times(Elem(b), Elem(a))) return false;
    return true;
  }

  friend bool operator==(const FiniteRig&, const FiniteRig&) = default;
};

inline FiniteRig make_rig(std::string name, std::uint32_t size,
                          std::vector<Elem> add, std::vector<Elem> mul,
                          Elem zero, Elem one,
                          std::optional<std::vector<Elem>> positive = {}) {
  FiniteRig r;
  r.name = std::move(name);
  r.size = size;
  r.add = OpTable(size, 2, std::move(add));
  r.mul = OpTable(size, 2, std::move(mul));
  if (zero >= size || one >= size)
    throw input_error("zero/one out of carrier range");
  r.zero = zero;
  r.one = one;
  if (positive) {
    for (Elem e : *positive)
      if (e >= size) throw input_error("positive subset entry out of range");
    std::sort(positive->begin(), positive->end());
    positive->erase(std::unique(positive->begin(), positive->end()),
                    positive->end());
    r.positive = std::move(positive);
  }
  return r;
}

struct AxiomViolation {
  std::string axiom;
  std::vector<Elem> witness;
};

struct RigReport {
  bool pass = false;
  bool is_ring = false;
  bool degenerate = false;
  std::vector<AxiomViolation> violations;
};

// Exhaustive check of every rig axiom; each violated instance is listed
// with the axiom name and the witnessing tuple.  Also detects whether
// additive inverses exist (ring) and flags the one-element rig.
inline RigReport validate_rig(const FiniteRig& R) {
  RigReport rep;
  std::uint32_t s = R.size;
  if (R.add.carrier != s || R.add.arity != 2 || R.mul.carrier != s ||
      R.mul.arity != 2)
    throw input_error("rig tables not sized for the stated carrier");
  auto bad = [&](std::string axiom, std::initializer_list<std::uint32_t> w) {
    AxiomViolation v;
    v.axiom = std::move(axiom);
    for (auto x : w) v.witness.push_back(Elem(x));
    rep.violations.push_back(std::move(v));
  };
  for (std::uint32_t a = 0; a < s; ++a) {
    if (R.plus(Elem(a), R.zero) != a || R.plus(R.zero, Elem(a)) != a)
      bad("add-zero-identity", {a});
    if (R.times(Elem(a), R.one) != a || R.times(R.one, Elem(a)) != a)
      bad("mul-one-identity", {a});
    if (R.times(Elem(a), R.zero) != R.zero || R.times(R.zero, Elem(a)) != R.zero)
      bad("zero-annihilates", {a});
  }
  for (std::uint32_t a = 0; a < s; ++a)
    for (std::uint32_t b = 0; b < s; ++b) {
      if (R.plus(Elem(a), Elem(b)) != R.plus(Elem(b), Elem(a)))
        bad("add-commutative", {a, b});
      for (std::uint32_t c = 0; c < s; ++c) {
        if (R.plus(R.plus(Elem(a), Elem(b)), Elem(c)) !=
            R.plus(Elem(a), R.plus(Elem(b), Elem(c))))
          bad("add-associative", {a, b, c});
        if (R.times(R.times(Elem(a), Elem(b)), Elem(c)) !=
            R.times(Elem(a), R.times(Elem(b), Elem(c))))
          bad("mul-associative", {a, b, c});
        if (R.times(Elem(a), R.plus(Elem(b), Elem(c))) !=
            R.plus(R.times(Elem(a), Elem(b)), R.times(Elem(a), Elem(c))))
          bad("mul-distributes-left", {a, b, c});
        if (R.times(R.plus(Elem(a), Elem(b)), Elem(c)) !=
            R.plus(R.times(Elem(a), Elem(c)), R.times(Elem(b), Elem(c))))
          bad("mul-distributes-right", {a, b, c});
      }
    }
  if (R.positive) {
    const auto& P = *R.positive;
    auto in = [&](Elem e) {
      return std::binary_search(P.begin(), P.end(), e);
    };
    if (!in(R.zero)) bad("positive-contains-zero", {R.zero});
    if (!in(R.one)) bad("positive-contains-one", {R.one});
    for (Elem a : P)
      for (Elem b : P) {
        if (!in(R.plus(a, b))) bad("positive-closed-add", {a, b});
        if (!in(R.times(a, b))) bad("positive-closed-mul", {a, b});
      }
  }
  rep.degenerate = R.degenerate();
  rep.pass = rep.violations.empty();
  if (rep.pass) {
    rep.is_ring = true;
    for (std::uint32_t a = 0; a < s && rep.is_ring; ++a) {
      bool inv = false;
      for (std::uint32_t b = 0; b < s; ++b)
        if (R.plus(Elem(a), Elem(b)) == R.zero) inv = true;
      rep.is_ring = inv;
    }
  }
  return rep;
}

// Same carrier, transposed multiplication.  Involutive.
inline FiniteRig opposite(const FiniteRig& R) {
  FiniteRig op = R;
  op.name = (R.name.size() >= 3 && R.name.substr(R.name.size() - 3) == "^op")
                ? R.name.substr(0, R.name.size() - 3)
                : R.name + "^op";
  for (std::uint32_t a = 0; a < R.size; ++a)
    for (std::uint32_t b = 0; b < R.size; ++b)
      op.mul.table[std::uint64_t(a) * R.size + b] = R.times(Elem(b), Elem(a));
  return op;
}

struct MatrixValue {
  FiniteRig rig;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<Elem> entries;  // row-major

  MatrixValue(FiniteRig r, std::uint32_t m, std::uint32_t n,
              std::vector<Elem> e)
      : rig(std::move(r)), rows(m), cols(n), entries(std::move(e)) {
    if (entries.size() != std::uint64_t(rows) * cols)
      throw input_error("matrix entry count mismatch");
    for (Elem x : entries)
      if (x >= rig.size) throw input_error("matrix entry out of carrier");
  }
  Elem at(std::uint32_t i, std::uint32_t j) const {
    return entries[std::uint64_t(i) * cols + j];
  }
  friend bool operator==(const MatrixValue&, const MatrixValue&) = default;
};

inline MatrixValue identity_matrix(const FiniteRig& R, std::uint32_t n) {
  std::vector<Elem> e(std::uint64_t(n) * n, R.zero);
  for (std::uint32_t i = 0; i < n; ++i) e[std::uint64_t(i) * n + i] = R.one;
  return MatrixValue(R, n, n, std::move(e));
}

// (ba)_{ki} = sum_j b_{kj} a_{ji}, sums and products in the rig.
inline MatrixValue matrix_multiply(const MatrixValue& b,
                                   const MatrixValue& a) {
  if (!(b.rig == a.rig)) throw input_error("matrix rigs differ");
  if (b.cols != a.rows) throw input_error("matrix inner dimensions differ");
  const FiniteRig& R = b.rig;
  std::vector<Elem> e(std::uint64_t(b.rows) * a.cols, R.zero);
  for (std::uint32_t k = 0; k < b.rows; ++k)
    for (std::uint32_t i = 0; i < a.cols; ++i) {
      Elem acc = R.zero;
      for (std::uint32_t j = 0; j < b.cols; ++j)
        acc = R.plus(acc, R.times(b.at(k, j), a.at(j, i)));
      e[std::uint64_t(k) * a.cols + i] = acc;
    }
  return MatrixValue(R, b.rows, a.cols, std::move(e));
}

struct SubRigReport {
  bool pass = false;
  std::vector<AxiomViolation> violations;
  std::optional<FiniteRig> sub;  // materialized, carrier re-indexed
};

inline SubRigReport validate_sub_rig(const FiniteRig& R,
                                     std::vector<Elem> subset) {
  for (Elem e : subset)
    if (e >= R.size) throw input_error("subset entry out of carrier range");
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  SubRigReport rep;
  auto pos_of = [&](Elem e) -> std::optional<std::uint32_t> {
    auto it = std::lower_bound(subset.begin(), subset.end(), e);
    if (it == subset.end() || *it != e) return std::nullopt;
    return std::uint32_t(it - subset.begin());
  };
  auto bad = [&](std::string axiom, std::initializer_list<Elem> w) {
    rep.violations.push_back({std::move(axiom), std::vector<Elem>(w)});
  };
  if (!pos_of(R.zero)) bad("sub-rig-contains-zero", {R.zero});
  if (!pos_of(R.one)) bad("sub-rig-contains-one", {R.one});
  for (Elem a : subset)
    for (Elem b : subset) {
      if (!pos_of(R.plus(a, b))) bad("sub-rig-closed-add", {a, b});
      if (!pos_of(R.times(a, b))) bad("sub-rig-closed-mul", {a, b});
    }
  rep.pass = rep.violations.empty();
  if (rep.pass) {
    std::uint32_t m = std::uint32_t(subset.size());
    std::vector<Elem> add(std::uint64_t(m) * m), mul(std::uint64_t(m) * m);
    for (std::uint32_t i = 0; i < m; ++i)
      for (std::uint32_t j = 0; j < m; ++j) {
        add[std::uint64_t(i) * m + j] = Elem(*pos_of(R.plus(subset[i], subset[j])));
        mul[std::uint64_t(i) * m + j] = Elem(*pos_of(R.times(subset[i], subset[j])));
      }
    rep.sub = make_rig(R.name + "|sub", m, std::move(add), std::move(mul),
                       Elem(*pos_of(R.zero)), Elem(*pos_of(R.one)));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Built-in registry.

// Two-element rig with meet as addition and join as multiplication, so the
// additive zero is the top element (index 1) and the multiplicative one is
// the bottom element (index 0).
inline FiniteRig rig_bool2() {
  return make_rig("bool2", 2, {0, 0, 0, 1}, {0, 1, 1, 1}, /*zero=*/1,
                  /*one=*/0);
}

inline FiniteRig rig_zmod(std::uint32_t k, std::string name = {}) {
  if (k < 1) throw input_error("modulus must be positive");
  std::vector<Elem> add(std::uint64_t(k) * k), mul(std::uint64_t(k) * k);
  for (std::uint32_t a = 0; a < k; ++a)
    for (std::uint32_t b = 0; b < k; ++b) {
      add[std::uint64_t(a) * k + b] = Elem((a + b) % k);
      mul[std::uint64_t(a) * k + b] = Elem((a * b) % k);
    }
  if (name.empty()) name = "z" + std::to_string(k);
  return make_rig(std::move(name), k, std::move(add), std::move(mul), 0,
                  k > 1 ? 1 : 0);
}

// {0,...,k} with saturating sum and product; a non-ring stand-in for the
// natural numbers.
inline FiniteRig rig_saturating(std::uint32_t k) {
  std::uint32_t s = k + 1;
  std::vector<Elem> add(std::uint64_t(s) * s), mul(std::uint64_t(s) * s);
  for (std::uint32_t a = 0; a < s; ++a)
    for (std::uint32_t b = 0; b < s; ++b) {
      add[std::uint64_t(a) * s + b] = Elem(std::min(a + b, k));
      mul[std::uint64_t(a) * s + b] = Elem(std::min(a * b, k));
    }
  return make_rig("sat" + std::to_string(k), s, std::move(add), std::move(mul),
                  0, 1);
}

// Join-preserving endomaps of the chain 0 < m < t that fix the bottom,
// restricted to {zero map, identity, g, h} with g = (m|->0, t|->t) and
// h = (m|->t, t|->t).  Addition is pointwise join, multiplication is
// composition; g.h = h while h.g = g, so the rig is non-commutative.
inline FiniteRig rig_noncommutative4() {
  // elements: 0 = zero map, 1 = identity, 2 = g, 3 = h
  std::vector<Elem> add = {0, 1, 2, 3, 1, 1, 1, 3, 2, 1, 2, 3, 3, 3, 3, 3};
  std::vector<Elem> mul = {0, 0, 0, 0, 0, 1, 2, 3, 0, 2, 2, 3, 0, 3, 2, 3};
  return make_rig("nc4", 4, std::move(add), std::move(mul), 0, 1);
}

inline FiniteRig rig_z2_with_positive() {
  FiniteRig r = rig_zmod(2);
  r.positive = std::vector<Elem>{0, 1};
  return r;
}

inline const std::vector<FiniteRig>& builtin_rigs() {
  static const std::vector<FiniteRig> regs = {
      rig_bool2(),      rig_z2_with_positive(), rig_zmod(3),
      rig_zmod(4),      rig_saturating(2),      rig_noncommutative4()};
  return regs;
}

inline const FiniteRig& builtin_rig(const std::string& name) {
  for (const FiniteRig& r : builtin_rigs())
    if (r.name == name) return r;
  throw input_error("unknown built-in rig: " + name);
}

// ---------------------------------------------------------------------------
// JSON exchange format:
//   { "name": str, "size": int, "zero": int, "one": int,
//     "add": [[int;size];size], "mul": [[int;size];size],
//     "positive": [int] (optional) }
// add[i][j] is row-major.  Loader errors carry the offending position.

inline nlohmann::json rig_to_json(const FiniteRig& R) {
  nlohmann::json j;
  j["name"] = R.name;
  j["size"] = R.size;
  j["zero"] = R.zero;
  j["one"] = R.one;
  auto table2d = [&](const OpTable& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::uint32_t i = 0; i < R.size; ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (std::uint32_t jx = 0; jx < R.size; ++jx)
        row.push_back(t.table[std::uint64_t(i) * R.size + jx]);
      rows.push_back(std::move(row));
    }
    return rows;
  };
  j["add"] = table2d(R.add);
  j["mul"] = table2d(R.mul);
  if (R.positive) j["positive"] = *R.positive;
  return j;
}

inline FiniteRig rig_from_json(const nlohmann::json& j,
                               const std::string& where = "rig") {
  auto fail = [&](const std::string& msg) -> void {
    throw input_error(where + ": " + msg);
  };
  if (!j.is_object()) fail("top-level value must be an object");
  for (const char* key : {"name", "size", "zero", "one", "add", "mul"})
    if (!j.contains(key)) fail(std::string("missing key \"") + key + "\"");
  if (!j["size"].is_number_unsigned() || j["size"].get<std::uint64_t>() == 0 ||
      j["size"].get<std::uint64_t>() > 255)
    fail("\"size\" must be an integer in 1..255");
  std::uint32_t size = j["size"].get<std::uint32_t>();
  auto elem_field = [&](const char* key) {
    if (!j[key].is_number_unsigned() || j[key].get<std::uint64_t>() >= size)
      fail(std::string("\"") + key + "\" out of range 0.." +
           std::to_string(size - 1));
    return Elem(j[key].get<std::uint32_t>());
  };
  auto table2d = [&](const char* key) {
    const nlohmann::json& rows = j[key];
    if (!rows.is_array() || rows.size() != size)
      fail(std::string("\"") + key + "\" must be a " + std::to_string(size) +
           "-row array");
    std::vector<Elem> flat;
    flat.reserve(std::uint64_t(size) * size);
    for (std::uint32_t i = 0; i < size; ++i) {
      const nlohmann::json& row = rows[i];
      if (!row.is_array() || row.size() != size)
        fail(std::string(key) + "[" + std::to_string(i) + "] must have " +
             std::to_string(size) + " entries");
      for (std::uint32_t jx = 0; jx < size; ++jx) {
        const nlohmann::json& v = row[jx];
        if (!v.is_number_unsigned() || v.get<std::uint64_t>() >= size)
          fail(std::string(key) + "[" + std::to_string(i) + "][" +
               std::to_string(jx) + "] out of range 0.." +
               std::to_string(size - 1));
        flat.push_back(Elem(v.get<std::uint32_t>()));
      }
    }
    return flat;
  };
  std::optional<std::vector<Elem>> positive;
  if (j.contains("positive")) {
    const nlohmann::json& p = j["positive"];
    if (!p.is_array()) fail("\"positive\" must be an array");
    std::vector<Elem> ps;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!p[i].is_number_unsigned() || p[i].get<std::uint64_t>() >= size)
        fail("positive[" + std::to_string(i) + "] out of range 0.." +
             std::to_string(size - 1));
      ps.push_back(Elem(p[i].get<std::uint32_t>()));
    }
    positive = std::move(ps);
  }
  if (!j["name"].is_string()) fail("\"name\" must be a string");
  return make_rig(j["name"].get<std::string>(), size, table2d("add"),
                  table2d("mul"), elem_field("zero"), elem_field("one"),
                  std::move(positive));
}

inline FiniteRig load_rig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open rig file: " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw input_error(path.string() + ": JSON parse error: " + e.what());
  }
  return rig_from_json(j, path.filename().string());
}

inline void save_rig(const FiniteRig& R, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot write rig file: " + path.string());
  out << rig_to_json(R).dump(2) << "\n";
}

}  // namespace finclone
