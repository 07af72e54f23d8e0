#pragma once

// Operation tables on a finite carrier {0,...,s-1} and a backtracking
// enumerator for tables required to commute with a set of generator
// operations.
//
// The tuple encoding is fixed for the whole library and is big-endian:
// the tuple (x1,...,xn) over carrier size s lives at index
//
//     sum_i  xi * s^(n-i)        (x1 most significant).
//
// Every table, slice and serialized artifact uses this convention, so
// flat tables are comparable across modules and golden files stay stable.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace finclone {

class input_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class resource_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// An internal structural guarantee failed.  Never swallowed.
class internal_error : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

using Elem = std::uint8_t;

// base^exp with an overflow guard; table lengths must stay below 2^62.
inline std::uint64_t ipow(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    if (base != 0 && r > (std::uint64_t{1} << 62) / base)
      throw resource_error("table size overflow: " + std::to_string(base) +
                           "^" + std::to_string(exp));
    r *= base;
  }
  return r;
}

// A total function A^n -> A on A = {0,...,carrier-1}, stored flat.
struct OpTable {
  std::uint32_t carrier = 1;
  std::uint32_t arity = 0;
  std::vector<Elem> table;

  OpTable() : table(1, 0) {}
  OpTable(std::uint32_t carrier_size, std::uint32_t n, std::vector<Elem> t)
      : carrier(carrier_size), arity(n), table(std::move(t)) {
    check();
  }

  void check() const {
    if (carrier == 0) throw input_error("carrier size must be positive");
    if (carrier > 255) throw input_error("carrier size above 255 unsupported");
    if (table.size() != ipow(carrier, arity))
      throw input_error("table length " + std::to_string(table.size()) +
                        " does not equal " + std::to_string(carrier) + "^" +
                        std::to_string(arity));
    for (Elem e : table)
      if (e >= carrier)
        throw input_error("table entry " + std::to_string(int(e)) +
                          " out of range for carrier " +
                          std::to_string(carrier));
  }

  std::uint64_t cells() const { return table.size(); }
  Elem operator[](std::uint64_t i) const { return table[i]; }

  friend bool operator==(const OpTable&, const OpTable&) = default;
  friend auto operator<=>(const OpTable&, const OpTable&) = default;
};

// Encoded index of a tuple; entries must be below carrier.
inline std::uint64_t encode_tuple(std::uint32_t carrier,
                                  std::span<const Elem> tuple) {
  std::uint64_t idx = 0;
  for (Elem x : tuple) {
    if (x >= carrier)
      throw input_error("tuple entry " + std::to_string(int(x)) +
                        " out of range for carrier " + std::to_string(carrier));
    idx = idx * carrier + x;
  }
  return idx;
}

inline std::vector<Elem> decode_tuple(std::uint32_t carrier,
                                      std::uint32_t arity,
                                      std::uint64_t index) {
  if (index >= ipow(carrier, arity))
    throw input_error("tuple index out of range");
  std::vector<Elem> t(arity);
  for (std::uint32_t i = arity; i-- > 0;) {
    t[i] = Elem(index % carrier);
    index /= carrier;
  }
  return t;
}

// The i-th projection A^n -> A, 1-based: (x1,...,xn) |-> xi.
inline OpTable projection(std::uint32_t carrier, std::uint32_t n,
                          std::uint32_t i) {
  if (i < 1 || i > n)
    throw input_error("projection index " + std::to_string(i) +
                      " out of range 1.." + std::to_string(n));
  std::uint64_t cells = ipow(carrier, n);
  std::uint64_t stride = ipow(carrier, n - i);
  std::vector<Elem> t(cells);
  for (std::uint64_t x = 0; x < cells; ++x)
    t[x] = Elem((x / stride) % carrier);
  return OpTable(carrier, n, std::move(t));
}

inline std::vector<OpTable> all_projections(std::uint32_t carrier,
                                            std::uint32_t n) {
  std::vector<OpTable> ps;
  ps.reserve(n);
  for (std::uint32_t i = 1; i <= n; ++i) ps.push_back(projection(carrier, n, i));
  return ps;
}

inline OpTable constant_table(std::uint32_t carrier, std::uint32_t arity,
                              Elem value) {
  if (value >= carrier) throw input_error("constant out of range");
  return OpTable(carrier, arity,
                 std::vector<Elem>(ipow(carrier, arity), value));
}

// Superposition (clone composition): x |-> outer(inner1(x),...,innerk(x)).
// A nullary outer takes no inners and yields a constant table; its arity
// is then taken from arity_if_no_inners.
inline OpTable superpose(const OpTable& outer,
                         std::span<const OpTable> inners,
                         std::uint32_t arity_if_no_inners = 0) {
  if (inners.size() != outer.arity)
    throw input_error("superpose: inner count " +
                      std::to_string(inners.size()) + " != outer arity " +
                      std::to_string(outer.arity));
  if (inners.empty())
    return constant_table(outer.carrier, arity_if_no_inners, outer.table[0]);
  std::uint32_t s = outer.carrier;
  std::uint32_t n = inners[0].arity;
  for (const OpTable& g : inners) {
    if (g.carrier != s) throw input_error("superpose: carrier mismatch");
    if (g.arity != n) throw input_error("superpose: inner arity mismatch");
  }
  std::uint64_t cells = ipow(s, n);
  std::vector<Elem> t(cells);
  for (std::uint64_t x = 0; x < cells; ++x) {
    std::uint64_t idx = 0;
    for (const OpTable& g : inners) idx = idx * s + g.table[x];
    t[x] = outer.table[idx];
  }
  return OpTable(s, n, std::move(t));
}

// A map A^n -> A^m via the power decomposition: m component tables.
struct MultiOpTable {
  std::uint32_t carrier = 1;
  std::uint32_t arity = 0;
  std::uint32_t coarity = 0;
  std::vector<OpTable> components;

  MultiOpTable() = default;
  explicit MultiOpTable(const OpTable& single)
      : carrier(single.carrier), arity(single.arity), coarity(1),
        components{single} {}
  MultiOpTable(std::uint32_t s, std::uint32_t n, std::vector<OpTable> comps)
      : carrier(s), arity(n), coarity(std::uint32_t(comps.size())),
        components(std::move(comps)) {
    for (const OpTable& c : components)
      if (c.carrier != carrier || c.arity != arity)
        throw input_error("MultiOpTable: component shape mismatch");
  }
};

struct EnumLimits {
  std::uint64_t max_cells = 1u << 14;      // candidate table length
  std::uint64_t max_instances = 1u << 22;  // bucketed constraint instances
  double naive_guard_log2 = 32.0;          // s^(s^n) bound without a seed
};

namespace detail {

// One constraint instance: the candidate h must satisfy
//   h(result_cell) == gen.table[ encode(h(arg_1),...,h(arg_k)) ].
// Instances are bucketed by the largest referenced cell so the search can
// check each one exactly once, as soon as it becomes fully assigned.
struct InstanceBuckets {
  // flat layout per cell: [gen_index, result_cell, arg cells...]*
  std::vector<std::vector<std::uint32_t>> by_cell;
  std::uint64_t total = 0;
};

inline InstanceBuckets
build_instance_buckets(std::uint32_t s, std::uint64_t cells,
                       std::span<const OpTable> gens,
                       const std::vector<Elem>& digits, std::uint32_t n,
                       const EnumLimits& limits) {
  InstanceBuckets b;
  b.by_cell.resize(cells);
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    const OpTable& g = gens[gi];
    std::uint32_t k = g.arity;
    std::vector<std::uint32_t> t(k, 0);
    while (true) {
      // componentwise application of g to the argument tuples
      std::uint64_t m = 0;
      for (std::uint32_t j = 0; j < n; ++j) {
        std::uint64_t idx = 0;
        for (std::uint32_t i = 0; i < k; ++i)
          idx = idx * s + digits[std::uint64_t(t[i]) * n + j];
        m = m * s + g.table[idx];
      }
      std::uint64_t cc = m;
      for (std::uint32_t i = 0; i < k; ++i) cc = std::max<std::uint64_t>(cc, t[i]);
      auto& bucket = b.by_cell[cc];
      bucket.push_back(std::uint32_t(gi));
      bucket.push_back(std::uint32_t(m));
      for (std::uint32_t i = 0; i < k; ++i) bucket.push_back(t[i]);
      if (++b.total > limits.max_instances)
        throw resource_error("constraint instance count exceeds limit");
      // odometer over k-tuples of cells
      std::uint32_t pos = k;
      while (pos > 0) {
        if (++t[pos - 1] < cells) break;
        t[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) break;
    }
  }
  return b;
}

}  // namespace detail

// Enumerates, in canonical (lexicographic) order, every table h: A^n -> A
// satisfying h(w(x1,...,xk) componentwise) = w(h(x1),...,h(xk)) for every
// generator w and every tuple of arguments.  Cells are filled in increasing
// index order; each constraint instance is checked once its last cell is
// assigned, pruning the branch on failure.  The callback returns false to
// stop early.
inline void enumerate_constrained_stream(
    std::uint32_t s, std::uint32_t n, std::span<const OpTable> gens,
    const std::function<bool(const OpTable&)>& emit,
    const EnumLimits& limits = {}) {
  if (s == 0) throw input_error("carrier size must be positive");
  for (const OpTable& g : gens)
    if (g.carrier != s)
      throw input_error("constraint generator carrier mismatch");
  std::uint64_t cells = ipow(s, n);
  if (cells > limits.max_cells)
    throw resource_error("candidate table length " + std::to_string(cells) +
                         " exceeds limit " + std::to_string(limits.max_cells));
  double cand_log2 = double(cells) * std::log2(double(s));
  if (cand_log2 > limits.naive_guard_log2) {
    bool seeded = false;
    for (const OpTable& g : gens)
      if (g.arity == 1 || g.arity == 2) seeded = true;
    if (!seeded)
      throw resource_error(
          "candidate space ~2^" + std::to_string(std::uint64_t(cand_log2)) +
          " with no unary or binary constraint to seed propagation");
  }

  // digit matrix: digits[c*n + j] = j-th coordinate of cell c
  std::vector<Elem> digits(cells * n);
  {
    std::vector<Elem> t(n, 0);
    for (std::uint64_t c = 0; c < cells; ++c) {
      for (std::uint32_t j = 0; j < n; ++j) digits[c * n + j] = t[j];
      for (std::uint32_t pos = n; pos-- > 0;) {
        if (++t[pos] < s) break;
        t[pos] = 0;
      }
    }
  }
  detail::InstanceBuckets buckets =
      detail::build_instance_buckets(s, cells, gens, digits, n, limits);

  std::vector<Elem> val(cells, 0);
  std::vector<Elem> next(cells, 0);
  auto consistent = [&](std::uint64_t c) -> bool {
    const auto& bucket = buckets.by_cell[c];
    std::size_t i = 0;
    while (i < bucket.size()) {
      const OpTable& g = gens[bucket[i]];
      std::uint64_t m = bucket[i + 1];
      std::uint64_t idx = 0;
      for (std::uint32_t a = 0; a < g.arity; ++a)
        idx = idx * s + val[bucket[i + 2 + a]];
      if (val[m] != g.table[idx]) return false;
      i += 2 + g.arity;
    }
    return true;
  };

  std::int64_t c = 0;
  OpTable out;
  out.carrier = s;
  out.arity = n;
  while (c >= 0) {
    if (c == std::int64_t(cells)) {
      out.table = val;
      if (!emit(out)) return;
      --c;
      continue;
    }
    bool advanced = false;
    while (next[c] < s) {
      val[c] = next[c]++;
      if (consistent(std::uint64_t(c))) {
        advanced = true;
        break;
      }
    }
    if (advanced) {
      ++c;
      if (c < std::int64_t(cells)) next[c] = 0;
    } else {
      next[c] = 0;
      --c;
    }
  }
}

inline std::vector<OpTable>
enumerate_constrained(std::uint32_t s, std::uint32_t n,
                      std::span<const OpTable> gens,
                      const EnumLimits& limits = {}) {
  std::vector<OpTable> out;
  enumerate_constrained_stream(
      s, n, gens,
      [&](const OpTable& t) {
        out.push_back(t);
        return true;
      },
      limits);
  return out;
}

}  // namespace finclone
