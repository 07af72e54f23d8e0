#pragma once

// Functional-analytic contexts and the distribution object D(V): for an
// admitted context (a commutative theory T on a carrier S, saturated with
// respect to S), D(V) is the set of maps S^V -> S preserving every
// commutant generator under the pointwise structure on S^V.  Such a map is
// stored as an OpTable of arity |V| over carrier S, via the fixed tuple
// encoding.  The module also provides the unit (evaluation), functorial
// action and multiplication tables, and the filter-style classification of
// elements for two-valued contexts.

#include <array>

#include "finclone/commutant.hpp"

namespace finclone {

enum class ContextKind { ScalarLinear, ScalarAffine, Initial, Custom };

inline const char* context_kind_name(ContextKind k) {
  switch (k) {
    case ContextKind::ScalarLinear: return "scalar-linear";
    case ContextKind::ScalarAffine: return "scalar-affine";
    case ContextKind::Initial: return "initial";
    case ContextKind::Custom: return "custom";
  }
  return "?";
}

class context_error : public std::runtime_error {
public:
  context_error(const std::string& msg, Verdict v)
      : std::runtime_error(msg), verdict(std::move(v)) {}
  Verdict verdict;
};

struct Context {
  ContextKind kind = ContextKind::Custom;
  std::string name;
  std::uint32_t s = 2;          // carrier of the dualizing algebra
  ConcreteTheory theory;        // T, materialized on S
  std::vector<OpTable> tperp_gens;
  bool tperp_exact = false;
  Verdict commutative;
  Verdict saturated;
  std::uint32_t max_arity = 3;
  std::string exactness;
};

// Admission gate: commutativity and saturation verdicts must pass at the
// configured arity bound.  When a known commutant generator set is given,
// its clone closure is cross-checked against the computed commutant slices
// before use, and the context is marked exact.
inline Context build_context(ConcreteTheory T, std::uint32_t max_arity,
                             std::vector<OpTable> known_tperp_gens = {},
                             ContextKind kind = ContextKind::Custom,
                             std::string name = {},
                             const EnumLimits& limits = {}) {
  std::string ctx_name =
      name.empty() ? std::string(context_kind_name(kind)) + "/" + T.label()
                   : std::move(name);
  if (!T.faithful_up_to(max_arity)) {
    Verdict v;
    v.kind = "faithful";
    v.pass = false;
    v.note = "coefficient vectors merged; presentation does not embed";
    throw context_error("context rejected: presentation of " + T.label() +
                            " is not faithful on its carrier",
                        v);
  }
  Verdict comm = is_commutative(T, max_arity, limits);
  if (!comm.pass)
    throw context_error("context rejected: " + T.label() +
                            " is not commutative",
                        comm);
  ConcreteTheory tperp =
      commutant_theory(T, max_arity, known_tperp_gens, limits);
  Verdict sat;
  sat.kind = "saturated";
  sat.max_arity = max_arity;
  sat.certified = tperp.generators_exact();
  sat.pass = true;
  for (std::uint32_t n = 0; n <= max_arity; ++n) {
    TheorySlice dc = commutant_slice(tperp, n, limits);
    SliceComparison cmp = slice_compare(T.slice(n), dc);
    if (!cmp.left_only.empty())
      throw internal_error("double commutant lost operations of " + T.label());
    ArityCheck ac;
    ac.arity = n;
    ac.ok = cmp.relation == SliceRelation::Equal;
    ac.witnesses = cmp.right_only;
    sat.pass = sat.pass && ac.ok;
    sat.per_arity.push_back(std::move(ac));
  }
  if (!sat.pass) {
    sat.note = sat.certified ? "refuted" : "not certified at the bound";
    throw context_error("context rejected: " + T.label() +
                            " is not saturated with respect to its carrier",
                        sat);
  }
  bool exact = tperp.generators_exact();
  std::string exactness =
      exact ? "exact-via-known-generators"
            : "truncated-at-" + std::to_string(max_arity) +
                  ", superset-certified";
  return Context{kind,
                 std::move(ctx_name),
                 T.carrier(),
                 std::move(T),
                 tperp.generators(),
                 exact,
                 std::move(comm),
                 std::move(sat),
                 max_arity,
                 std::move(exactness)};
}

inline Context scalar_linear_context(const FiniteRig& R,
                                     std::uint32_t max_arity = 0,
                                     const EnumLimits& limits = {}) {
  if (max_arity == 0) max_arity = default_max_arity(R.size);
  ConcreteTheory T = ConcreteTheory::mat(R, max_arity);
  // the commutant of a commutative matrix theory is the theory itself, so
  // its generators serve as the commutant generators (cross-checked)
  std::vector<OpTable> known = T.generators();
  return build_context(std::move(T), max_arity, std::move(known),
                       ContextKind::ScalarLinear, "scalar-linear(" + R.name + ")",
                       limits);
}

inline Context scalar_affine_context(const FiniteRig& R,
                                     std::uint32_t max_arity = 0,
                                     const EnumLimits& limits = {}) {
  if (max_arity == 0) max_arity = default_max_arity(R.size);
  ConcreteTheory T = ConcreteTheory::mat_aff(R, max_arity);
  std::vector<OpTable> known;
  bool idempotent_add = true;
  for (std::uint32_t a = 0; a < R.size; ++a)
    if (R.plus(Elem(a), Elem(a)) != a) idempotent_add = false;
  if (R.size == 2 && idempotent_add && R.plus(R.one, R.one) == R.one) {
    // meet semilattices with both lattice constants
    known.push_back(R.add);
    known.push_back(constant_table(2, 0, R.zero));
    known.push_back(constant_table(2, 0, R.one));
  }
  return build_context(std::move(T), max_arity, std::move(known),
                       ContextKind::ScalarAffine,
                       "scalar-affine(" + R.name + ")", limits);
}

inline Context initial_context(std::uint32_t carrier = 2,
                               std::uint32_t max_arity = 0,
                               const EnumLimits& limits = {}) {
  if (max_arity == 0) max_arity = default_max_arity(carrier);
  ConcreteTheory T = ConcreteTheory::initial(carrier);
  std::vector<OpTable> known;
  if (carrier == 2) {
    known.emplace_back(2, 2, std::vector<Elem>{0, 0, 0, 1});  // meet
    known.emplace_back(2, 1, std::vector<Elem>{1, 0});        // complement
    known.push_back(constant_table(2, 0, 1));
  } else {
    // binary operations generate the full clone on any finite carrier
    for (std::uint32_t k = 0; k <= 2; ++k)
      for (const OpTable& t : full_theory_slice(carrier, k).ops)
        known.push_back(t);
  }
  return build_context(std::move(T), max_arity, std::move(known),
                       ContextKind::Initial,
                       "initial(" + std::to_string(carrier) + ")", limits);
}

// ---------------------------------------------------------------------------
// Cotensor structure: generators lifted to pointwise operations on S^V.

// A generator of arity k lifted to (S^V)^k -> S^V; points of S^V are the
// encoded indices 0..s^V-1.
struct LiftedOp {
  std::uint64_t space = 1;  // |S^V|
  OpTable base;
  std::vector<std::uint32_t> table;  // length space^arity
};

struct DistLimits {
  std::uint64_t dense_cells = 1u << 12;    // largest |S^V| handled densely
  std::uint64_t lifted_entries = 1u << 24; // lifted table entries guard
};

inline std::vector<LiftedOp> cotensor_structure(const Context& ctx,
                                                std::uint32_t v_size,
                                                const DistLimits& limits = {}) {
  std::uint32_t s = ctx.s;
  std::uint64_t space = ipow(s, v_size);
  std::vector<LiftedOp> lifted;
  // point digit matrix
  std::vector<Elem> digits(space * v_size);
  {
    std::vector<Elem> t(v_size, 0);
    for (std::uint64_t p = 0; p < space; ++p) {
      for (std::uint32_t j = 0; j < v_size; ++j) digits[p * v_size + j] = t[j];
      for (std::uint32_t pos = v_size; pos-- > 0;) {
        if (++t[pos] < s) break;
        t[pos] = 0;
      }
    }
  }
  for (const OpTable& g : ctx.tperp_gens) {
    std::uint32_t k = g.arity;
    std::uint64_t entries = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
      if (entries > limits.lifted_entries / std::max<std::uint64_t>(space, 1))
        throw resource_error("lifted operation table too large");
      entries *= space;
    }
    if (entries > limits.lifted_entries)
      throw resource_error("lifted operation table too large");
    LiftedOp L;
    L.space = space;
    L.base = g;
    L.table.resize(entries);
    std::vector<std::uint64_t> t(k, 0);
    for (std::uint64_t e = 0; e < entries; ++e) {
      std::uint64_t q = 0;
      for (std::uint32_t j = 0; j < v_size; ++j) {
        std::uint64_t idx = 0;
        for (std::uint32_t i = 0; i < k; ++i)
          idx = idx * s + digits[t[i] * v_size + j];
        q = q * s + g.table[idx];
      }
      L.table[e] = std::uint32_t(q);
      for (std::uint32_t pos = k; pos-- > 0;) {
        if (++t[pos] < space) break;
        t[pos] = 0;
      }
    }
    lifted.push_back(std::move(L));
  }
  return lifted;
}

namespace detail {

// Dense search for all tables h over the point space preserving every
// lifted generator.  Mirrors the componentwise enumerator but drives the
// constraints from the materialized cotensor tables, giving an
// independent computation path.
inline void dist_search_dense(const Context& ctx, std::uint32_t v_size,
                              const std::function<bool(const OpTable&)>& emit,
                              const DistLimits& limits) {
  std::uint32_t s = ctx.s;
  std::uint64_t space = ipow(s, v_size);
  std::vector<LiftedOp> lifted = cotensor_structure(ctx, v_size, limits);
  // bucket instances by their largest referenced point
  std::vector<std::vector<std::uint32_t>> by_cell(space);
  for (std::size_t gi = 0; gi < lifted.size(); ++gi) {
    const LiftedOp& L = lifted[gi];
    std::uint32_t k = L.base.arity;
    std::vector<std::uint64_t> t(k, 0);
    std::uint64_t entries = L.table.size();
    for (std::uint64_t e = 0; e < entries; ++e) {
      std::uint64_t m = L.table[e];
      std::uint64_t cc = m;
      for (std::uint32_t i = 0; i < k; ++i) cc = std::max(cc, t[i]);
      auto& b = by_cell[cc];
      b.push_back(std::uint32_t(gi));
      b.push_back(std::uint32_t(m));
      for (std::uint32_t i = 0; i < k; ++i) b.push_back(std::uint32_t(t[i]));
      std::uint32_t pos = k;
      while (pos > 0) {
        if (++t[pos - 1] < space) break;
        t[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) break;
    }
  }
  std::vector<Elem> val(space, 0), next(space, 0);
  auto consistent = [&](std::uint64_t c) {
    const auto& b = by_cell[c];
    std::size_t i = 0;
    while (i < b.size()) {
      const LiftedOp& L = lifted[b[i]];
      std::uint64_t m = b[i + 1];
      std::uint64_t idx = 0;
      for (std::uint32_t a = 0; a < L.base.arity; ++a)
        idx = idx * s + val[b[i + 2 + a]];
      if (val[m] != L.base.table[idx]) return false;
      i += 2 + L.base.arity;
    }
    return true;
  };
  OpTable out;
  out.carrier = s;
  out.arity = v_size;
  std::int64_t c = 0;
  while (c >= 0) {
    if (c == std::int64_t(space)) {
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
      if (c < std::int64_t(space)) next[c] = 0;
    } else {
      next[c] = 0;
      --c;
    }
  }
}

// For two-valued contexts whose commutant generators live in the clone of
// the binary meet and the constants, the solutions are exactly the
// indicator tables of principal up-sets: a subset of a finite meet
// semilattice that is up-closed and meet-closed is an up-set of its own
// meet.  Candidates are generated in canonical table order (descending
// generator mask) and every candidate is verified against the meet and
// constant constraints before emission.
struct MeetContextShape {
  bool applicable = false;
  bool needs_meet = false;               // some generator is a genuine meet
  std::vector<Elem> point_constants;     // h(c...c) = c requirements
};

inline MeetContextShape meet_context_shape(const Context& ctx) {
  MeetContextShape shape;
  if (ctx.s != 2) return shape;
  ConcreteTheory cl = ConcreteTheory::closure_of(
      2,
      {OpTable(2, 2, {0, 0, 0, 1}), constant_table(2, 0, 0),
       constant_table(2, 0, 1)},
      3);
  for (const OpTable& g : ctx.tperp_gens) {
    if (g.arity > 3) return shape;
    if (!cl.slice(g.arity).contains(g)) return shape;
    bool is_const = std::adjacent_find(g.table.begin(), g.table.end(),
                                       std::not_equal_to<>()) == g.table.end();
    bool is_proj = false;
    for (std::uint32_t i = 1; i <= g.arity && !is_proj; ++i)
      if (g == projection(2, g.arity, i)) is_proj = true;
    if (is_const)
      shape.point_constants.push_back(g.table[0]);
    else if (!is_proj)
      shape.needs_meet = true;  // a genuine meet of >= 2 variables
  }
  shape.applicable = shape.needs_meet;
  return shape;
}

inline void dist_search_meet(std::uint32_t v_size,
                             const MeetContextShape& shape,
                             const std::function<bool(const OpTable&)>& emit) {
  std::uint32_t w = v_size;
  if (w > 20) throw resource_error("meet-context base set too large");
  std::uint64_t cells = std::uint64_t(1) << w;
  std::uint64_t words = (cells + 63) / 64;
  std::uint64_t tail_mask =
      (cells % 64) ? ((std::uint64_t(1) << (cells % 64)) - 1) : ~std::uint64_t(0);
  // low-bit superset patterns: bit j of pattern[p] is set iff (j & p) == p
  std::array<std::uint64_t, 64> pattern{};
  for (std::uint32_t p = 0; p < 64; ++p) {
    std::uint64_t m = 0;
    for (std::uint32_t j = 0; j < 64; ++j)
      if ((j & p) == p) m |= std::uint64_t(1) << j;
    pattern[p] = m;
  }
  std::vector<std::uint64_t> U(words);
  OpTable out;
  out.carrier = 2;
  out.arity = w;
  out.table.assign(cells, 0);
  for (std::uint64_t gen_mask = cells; gen_mask-- > 0;) {
    // indicator of all supersets of gen_mask
    std::uint64_t high = gen_mask & ~std::uint64_t(63);
    std::uint64_t low = gen_mask & 63;
    for (std::uint64_t wd = 0; wd < words; ++wd) {
      std::uint64_t base = wd << 6;
      U[wd] = ((base & high) == high) ? pattern[low] : 0;
    }
    U[words - 1] &= tail_mask;
    // verification: up-closure plus membership of the fold proves the set
    // is the principal up-set of its meet, hence meet-preserving
    bool ok = true;
    for (std::uint32_t b = 0; b < w && ok; ++b) {
      std::uint64_t delta = std::uint64_t(1) << b;
      if (delta >= 64) {
        std::uint64_t dw = delta >> 6;
        for (std::uint64_t wd = 0; wd < words; ++wd) {
          if ((wd << 6) & delta) continue;
          if (U[wd] & ~U[wd + dw]) { ok = false; break; }
        }
      } else {
        std::uint64_t mask = 0;
        for (std::uint32_t j = 0; j < 64; ++j)
          if (!(j & delta)) mask |= std::uint64_t(1) << j;
        for (std::uint64_t wd = 0; wd < words; ++wd) {
          if ((U[wd] & mask) & ~(U[wd] >> delta)) { ok = false; break; }
        }
      }
    }
    if (ok) {
      std::uint64_t fold = cells - 1;
      bool any = false;
      for (std::uint64_t wd = 0; wd < words && ok; ++wd) {
        std::uint64_t word = U[wd];
        while (word) {
          std::uint64_t j = std::uint64_t(__builtin_ctzll(word));
          word &= word - 1;
          fold &= (wd << 6) | j;
          any = true;
        }
      }
      ok = any && ((U[fold >> 6] >> (fold & 63)) & 1);
    }
    if (ok)
      for (Elem c : shape.point_constants) {
        std::uint64_t pt = c ? cells - 1 : 0;  // constant function c...c
        Elem got = Elem((U[pt >> 6] >> (pt & 63)) & 1);
        if (got != c) { ok = false; break; }
      }
    if (!ok) continue;
    for (std::uint64_t i = 0; i < cells; ++i)
      out.table[i] = Elem((U[i >> 6] >> (i & 63)) & 1);
    if (!emit(out)) return;
  }
}

}  // namespace detail

// Streams the elements of D(V) in canonical order.
inline void stream_distribution(const Context& ctx, std::uint32_t v_size,
                                const std::function<bool(const OpTable&)>& emit,
                                const DistLimits& limits = {}) {
  std::uint64_t space = ipow(ctx.s, v_size);
  bool dense_fits = space <= limits.dense_cells;
  if (dense_fits) {
    // the dense search also needs the lifted instance tables to fit
    std::uint64_t est = 0;
    for (const OpTable& g : ctx.tperp_gens) {
      std::uint64_t e = 1;
      for (std::uint32_t i = 0; i < g.arity && dense_fits; ++i) {
        if (e > limits.lifted_entries / std::max<std::uint64_t>(space, 1))
          dense_fits = false;
        e *= space;
      }
      est += e;
      if (est > limits.lifted_entries) dense_fits = false;
    }
  }
  if (dense_fits) {
    detail::dist_search_dense(ctx, v_size, emit, limits);
    return;
  }
  detail::MeetContextShape shape = detail::meet_context_shape(ctx);
  if (shape.applicable) {
    detail::dist_search_meet(v_size, shape, emit);
    return;
  }
  throw resource_error(
      "distribution object over " + std::to_string(space) +
      " points exceeds the dense bound " + std::to_string(limits.dense_cells) +
      " and no structured search applies");
}

struct DistObject {
  std::string context_name;
  std::uint32_t s = 2;
  std::uint32_t v_size = 0;
  std::string exactness;
  std::vector<OpTable> elements;  // canonical order

  std::optional<std::size_t> index_of(const OpTable& t) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), t);
    if (it == elements.end() || !(*it == t)) return std::nullopt;
    return std::size_t(it - elements.begin());
  }
};

inline DistObject distribution_object(const Context& ctx, std::uint32_t v_size,
                                      const DistLimits& limits = {}) {
  DistObject d;
  d.context_name = ctx.name;
  d.s = ctx.s;
  d.v_size = v_size;
  d.exactness = ctx.exactness;
  stream_distribution(
      ctx, v_size,
      [&](const OpTable& t) {
        d.elements.push_back(t);
        return true;
      },
      limits);
  if (!std::is_sorted(d.elements.begin(), d.elements.end()))
    throw internal_error("distribution elements not in canonical order");
  return d;
}

// Membership test independent of the enumeration: h is an element of D(V)
// iff it preserves every commutant generator componentwise.
inline bool is_distribution_element(const Context& ctx, const OpTable& h) {
  if (h.carrier != ctx.s) throw input_error("carrier mismatch");
  return is_homomorphism(ctx.tperp_gens, MultiOpTable(h));
}

// Unit: evaluation at v, i.e. the (v+1)-st projection table.
inline OpTable dirac(const Context& ctx, std::uint32_t v_size,
                     std::uint32_t v) {
  if (v >= v_size) throw input_error("point index out of range");
  OpTable t = projection(ctx.s, v_size, v + 1);
  if (!is_distribution_element(ctx, t))
    throw internal_error("evaluation table is not a distribution element");
  return t;
}

// Functorial action along g: V -> W, mu |-> (h |-> mu(h o g)).
inline OpTable dmap(const Context& ctx, std::span<const std::uint32_t> g,
                    std::uint32_t w_size, const OpTable& mu) {
  std::uint32_t s = ctx.s;
  std::uint32_t v_size = std::uint32_t(g.size());
  if (mu.arity != v_size) throw input_error("dmap: element arity mismatch");
  for (std::uint32_t x : g)
    if (x >= w_size) throw input_error("dmap: function value out of range");
  std::uint64_t wcells = ipow(s, w_size);
  std::vector<Elem> t(wcells);
  std::vector<Elem> hdig(w_size, 0);
  for (std::uint64_t h = 0; h < wcells; ++h) {
    std::uint64_t idx = 0;
    for (std::uint32_t v = 0; v < v_size; ++v) idx = idx * s + hdig[g[v]];
    t[h] = mu.table[idx];
    for (std::uint32_t pos = w_size; pos-- > 0;) {
      if (++hdig[pos] < s) break;
      hdig[pos] = 0;
    }
  }
  OpTable out(s, w_size, std::move(t));
  if (!is_distribution_element(ctx, out))
    throw internal_error("dmap image escaped the distribution object");
  return out;
}

// Multiplication: collapses Xi in D(D(V)) to an element of D(V) by
// Xi |-> (f |-> Xi(mu |-> mu(f))).  DV supplies the canonical indexing of
// D(V) that Xi's table is read against.
inline OpTable mult(const Context& ctx, const DistObject& DV,
                    const OpTable& Xi) {
  std::uint32_t s = ctx.s;
  if (Xi.arity != DV.elements.size())
    throw input_error("mult: argument arity must equal |D(V)|");
  std::uint64_t vcells = ipow(s, DV.v_size);
  std::vector<Elem> t(vcells);
  for (std::uint64_t f = 0; f < vcells; ++f) {
    std::uint64_t idx = 0;
    for (const OpTable& mu : DV.elements) idx = idx * s + mu.table[f];
    t[f] = Xi.table[idx];
  }
  OpTable out(s, DV.v_size, std::move(t));
  if (!is_distribution_element(ctx, out))
    throw internal_error("mult image escaped the distribution object");
  return out;
}

// ---------------------------------------------------------------------------
// Classification for two-valued contexts.

struct Classification {
  std::vector<std::uint32_t> family;  // subsets of V, bit v = point v
  bool upward_closed = false;
  bool meet_closed = false;
  bool contains_top = false;
  bool excludes_bottom = false;
  bool prime = false;
  std::string label;
  std::optional<std::uint32_t> principal;  // generating subset
};

inline Classification classify(const Context& ctx, std::uint32_t v_size,
                               const OpTable& mu) {
  if (ctx.s != 2)
    throw input_error("classification requires a two-element dualizer");
  if (mu.arity != v_size) throw input_error("element arity mismatch");
  if (v_size > 20) throw input_error("base set too large to classify");
  Classification c;
  std::uint32_t nsub = std::uint32_t(1) << v_size;
  auto chi_index = [&](std::uint32_t A) {
    std::uint64_t idx = 0;
    for (std::uint32_t v = 0; v < v_size; ++v)
      idx = idx * 2 + ((A >> v) & 1);
    return idx;
  };
  std::vector<bool> in(nsub, false);
  for (std::uint32_t A = 0; A < nsub; ++A)
    if (mu.table[chi_index(A)] == 1) {
      in[A] = true;
      c.family.push_back(A);
    }
  std::uint32_t full = nsub - 1;
  c.contains_top = in[full];
  c.excludes_bottom = !in[0];
  c.upward_closed = true;
  c.meet_closed = true;
  c.prime = true;
  for (std::uint32_t A = 0; A < nsub; ++A) {
    if (in[A]) {
      for (std::uint32_t v = 0; v < v_size; ++v)
        if (!in[A | (std::uint32_t(1) << v)]) c.upward_closed = false;
    }
    for (std::uint32_t B = 0; B < nsub; ++B) {
      if (in[A] && in[B] && !in[A & B]) c.meet_closed = false;
      if (in[A | B] && !in[A] && !in[B]) c.prime = false;
    }
  }
  bool filter = c.upward_closed && c.meet_closed && c.contains_top;
  if (!filter) {
    c.label = "not-a-filter";
    return c;
  }
  std::uint32_t gen = full;
  for (std::uint32_t A : c.family) gen &= A;
  c.principal = gen;
  if (!in[gen])
    throw internal_error("filter family is not principal");
  if (!c.excludes_bottom)
    c.label = "improper filter";
  else if (c.prime)
    c.label = "ultrafilter";
  else
    c.label = "proper filter";
  return c;
}

}  // namespace finclone
