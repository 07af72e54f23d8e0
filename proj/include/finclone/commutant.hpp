#pragma once

// Homomorphism checking, commutant slices, commutation/commutativity
// tests, and the saturation/balance verdicts.
//
// The commutant of a materialized theory T at arity n consists of all
// tables h: A^n -> A preserved by every enforced generator of T, where the
// generators act componentwise on A^n.  Enforcement uses T's generator set
// when it is known to generate the whole theory, and the union of the
// cached slices otherwise; in the truncated case a commutant computed here
// is a superset of the true one, so verdicts based on it certify equality
// but never refute it.

#include <random>

#include "finclone/theory.hpp"

namespace finclone {

struct HomFailure {
  std::size_t generator;            // index into the generator list
  std::vector<std::uint64_t> args;  // encoded points of A^n, one per slot
  std::uint32_t component;
};

// First instance at which some component of h fails to preserve some
// generator, scanning generators in order and argument tuples in encoded
// order; nullopt when h is a homomorphism.
inline std::optional<HomFailure>
hom_failure(std::span<const OpTable> gens, const MultiOpTable& h) {
  std::uint32_t s = h.carrier;
  std::uint32_t n = h.arity;
  std::uint64_t cells = ipow(s, n);
  // digit matrix of the argument points
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
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    const OpTable& g = gens[gi];
    if (g.carrier != s) throw input_error("generator carrier mismatch");
    std::uint32_t k = g.arity;
    std::vector<std::uint64_t> t(k, 0);
    while (true) {
      // componentwise application of g to the k argument points
      std::uint64_t m = 0;
      for (std::uint32_t j = 0; j < n; ++j) {
        std::uint64_t idx = 0;
        for (std::uint32_t i = 0; i < k; ++i)
          idx = idx * s + digits[t[i] * n + j];
        m = m * s + g.table[idx];
      }
      for (std::uint32_t comp = 0; comp < h.coarity; ++comp) {
        const OpTable& hc = h.components[comp];
        std::uint64_t idx = 0;
        for (std::uint32_t i = 0; i < k; ++i) idx = idx * s + hc.table[t[i]];
        if (hc.table[m] != g.table[idx])
          return HomFailure{gi, t, comp};
      }
      std::uint32_t pos = k;
      while (pos > 0) {
        if (++t[pos - 1] < cells) break;
        t[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) break;
    }
  }
  return std::nullopt;
}

inline bool is_homomorphism(std::span<const OpTable> gens,
                            const MultiOpTable& h) {
  return !hom_failure(gens, h).has_value();
}

namespace detail {

// Sanity assertions on a computed commutant slice: it must contain every
// projection and be closed under superposition (spot-checked).
inline void assert_subtheory(const TheorySlice& sl) {
  for (std::uint32_t i = 1; i <= sl.arity; ++i)
    if (!sl.contains(projection(sl.carrier, sl.arity, i)))
      throw internal_error("commutant slice is missing a projection");
  if (sl.arity == 0 || sl.ops.empty()) return;
  std::uint64_t combos = 1;
  bool small = true;
  for (std::uint32_t i = 0; i <= sl.arity && small; ++i) {
    combos *= sl.ops.size();
    if (combos > 512) small = false;
  }
  std::mt19937 rng(0x5eedu ^ std::uint32_t(sl.ops.size() * 131 + sl.arity));
  std::uniform_int_distribution<std::size_t> pick(0, sl.ops.size() - 1);
  std::size_t trials = small ? 0 : 512;
  if (small) {
    std::vector<std::size_t> idx(sl.arity + 1, 0);
    while (true) {
      std::vector<OpTable> inners;
      for (std::uint32_t i = 0; i < sl.arity; ++i)
        inners.push_back(sl.ops[idx[i + 1]]);
      if (!sl.contains(superpose(sl.ops[idx[0]], inners)))
        throw internal_error("commutant slice not closed under superposition");
      std::size_t pos = idx.size();
      while (pos > 0) {
        if (++idx[pos - 1] < sl.ops.size()) break;
        idx[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) break;
    }
  }
  for (std::size_t i = 0; i < trials; ++i) {
    const OpTable& outer = sl.ops[pick(rng)];
    std::vector<OpTable> inners;
    for (std::uint32_t j = 0; j < sl.arity; ++j)
      inners.push_back(sl.ops[pick(rng)]);
    if (!sl.contains(superpose(outer, inners)))
      throw internal_error("commutant slice not closed under superposition");
  }
}

}  // namespace detail

struct CommutantRequest {
  std::uint32_t arity = 1;
  // generators to enforce; empty means "use the base theory's enforcement
  // set" (its generators when exact, else the union of its cached slices)
  std::vector<OpTable> enforce;
  EnumLimits limits{};
};

// Enforcement set used for commutant computations against T.
inline std::vector<OpTable> enforcement_set(ConcreteTheory& T) {
  if (T.generators_exact()) return T.generators();
  std::vector<OpTable> ops;
  for (std::uint32_t n = 0; n <= T.max_arity(); ++n)
    for (const OpTable& op : T.slice(n).ops) ops.push_back(op);
  if (ops.empty()) return T.generators();
  return ops;
}

inline TheorySlice commutant_slice_of_gens(std::uint32_t carrier,
                                           std::uint32_t n,
                                           std::span<const OpTable> gens,
                                           const EnumLimits& limits = {}) {
  TheorySlice sl;
  sl.carrier = carrier;
  sl.arity = n;
  sl.ops = enumerate_constrained(carrier, n, gens, limits);
  detail::assert_subtheory(sl);
  return sl;
}

inline TheorySlice commutant_slice(ConcreteTheory& T, std::uint32_t n,
                                   const EnumLimits& limits = {}) {
  std::vector<OpTable> gens = enforcement_set(T);
  return commutant_slice_of_gens(T.carrier(), n, gens, limits);
}

inline TheorySlice commutant_slice(ConcreteTheory& T,
                                   const CommutantRequest& req) {
  if (!req.enforce.empty()) {
    for (const OpTable& g : req.enforce) {
      ConcreteTheory& base = T;
      if (g.arity <= base.max_arity() && !base.slice(g.arity).contains(g))
        throw input_error("enforced generator is not an operation of the base theory");
    }
    return commutant_slice_of_gens(T.carrier(), req.arity, req.enforce,
                                   req.limits);
  }
  return commutant_slice(T, req.arity, req.limits);
}

struct ArityCheck {
  std::uint32_t arity = 0;
  bool ok = false;
  std::vector<OpTable> witnesses;
};

struct Verdict {
  std::string kind;
  bool pass = false;
  // true when the enforcement sets in play are known-exact, so a passing
  // verdict is a theorem about the theory and a failing one is a refutation;
  // otherwise a failing verdict only means "not certified at this bound"
  bool certified = false;
  std::uint32_t max_arity = 0;
  std::string note;
  std::vector<ArityCheck> per_arity;
};

// T1 commutes with T2 iff every generator of T2 is preserved by T1's
// operations; the relation is symmetric and both directions are computed
// and asserted to agree.
inline Verdict commutes(ConcreteTheory& T1, ConcreteTheory& T2,
                        std::uint32_t max_arity,
                        const EnumLimits& limits = {}) {
  if (T1.carrier() != T2.carrier())
    throw input_error("commutation requires a shared carrier");
  Verdict v;
  v.kind = "commutes-with";
  v.max_arity = max_arity;
  v.certified = T1.generators_exact() && T2.generators_exact();
  auto direction = [&](ConcreteTheory& A, ConcreteTheory& B,
                       std::vector<ArityCheck>* record) {
    // every generator of B lies in the commutant of A at its arity
    std::map<std::uint32_t, TheorySlice> comm;
    bool ok = true;
    std::vector<OpTable> bgens =
        B.generators().empty() ? enforcement_set(B) : B.generators();
    for (const OpTable& g : bgens) {
      auto it = comm.find(g.arity);
      if (it == comm.end())
        it = comm.emplace(g.arity, commutant_slice(A, g.arity, limits)).first;
      bool here = it->second.contains(g);
      ok = ok && here;
      if (record) {
        ArityCheck ac;
        ac.arity = g.arity;
        ac.ok = here;
        if (!here) ac.witnesses.push_back(g);
        record->push_back(std::move(ac));
      }
    }
    return ok;
  };
  bool d1 = direction(T1, T2, &v.per_arity);
  bool d2 = direction(T2, T1, nullptr);
  if (d1 != d2)
    throw internal_error("commutation is not symmetric between " + T1.label() +
                         " and " + T2.label() +
                         " (truncated enforcement too coarse)");
  v.pass = d1;
  if (!v.pass) v.note = "witness operations fail to commute";
  return v;
}

inline Verdict is_commutative(ConcreteTheory& T, std::uint32_t max_arity,
                              const EnumLimits& limits = {}) {
  Verdict v;
  v.kind = "commutative";
  v.max_arity = max_arity;
  v.certified = T.generators_exact();
  v.pass = true;
  for (std::uint32_t n = 0; n <= max_arity; ++n) {
    TheorySlice comm = commutant_slice(T, n, limits);
    SliceComparison cmp = slice_compare(T.slice(n), comm);
    ArityCheck ac;
    ac.arity = n;
    ac.ok = cmp.relation == SliceRelation::Equal ||
            cmp.relation == SliceRelation::LeftSubset;
    ac.witnesses = cmp.left_only;  // operations of T outside its commutant
    v.pass = v.pass && ac.ok;
    v.per_arity.push_back(std::move(ac));
  }
  if (!v.pass)
    v.note = v.certified ? "refuted: witness operations do not self-commute"
                         : "not certified at the checked bound";
  return v;
}

inline Verdict is_balanced(ConcreteTheory& T, std::uint32_t max_arity,
                           const EnumLimits& limits = {}) {
  Verdict v;
  v.kind = "balanced";
  v.max_arity = max_arity;
  v.certified = T.generators_exact();
  v.pass = true;
  for (std::uint32_t n = 0; n <= max_arity; ++n) {
    TheorySlice comm = commutant_slice(T, n, limits);
    SliceComparison cmp = slice_compare(T.slice(n), comm);
    ArityCheck ac;
    ac.arity = n;
    ac.ok = cmp.relation == SliceRelation::Equal;
    for (const OpTable& w : cmp.left_only) ac.witnesses.push_back(w);
    for (const OpTable& w : cmp.right_only) ac.witnesses.push_back(w);
    v.pass = v.pass && ac.ok;
    v.per_arity.push_back(std::move(ac));
  }
  if (!v.pass)
    v.note = v.certified ? "refuted with witnesses"
                         : "not certified at the checked bound";
  return v;
}

// Commutant slices of T at every arity <= max_arity, wrapped as a theory.
// When a verified generator set for the commutant is supplied, its clone
// closure is cross-checked against the computed slices before use; any
// disagreement aborts.
inline ConcreteTheory
commutant_theory(ConcreteTheory& T, std::uint32_t max_arity,
                 std::span<const OpTable> known_gens = {},
                 const EnumLimits& limits = {}) {
  std::map<std::uint32_t, TheorySlice> slices;
  for (std::uint32_t n = 0; n <= max_arity; ++n)
    slices.emplace(n, commutant_slice(T, n, limits));
  std::vector<OpTable> gens;
  bool exact = false;
  if (!known_gens.empty()) {
    ConcreteTheory cl = ConcreteTheory::closure_of(
        T.carrier(), {known_gens.begin(), known_gens.end()}, max_arity);
    for (std::uint32_t n = 0; n <= max_arity; ++n)
      if (!(cl.slice(n) == slices.at(n)))
        throw input_error(
            "known generator set does not reproduce the computed commutant "
            "of " + T.label() + " at arity " + std::to_string(n));
    gens.assign(known_gens.begin(), known_gens.end());
    exact = true;
  } else {
    for (auto& [n, sl] : slices)
      for (const OpTable& op : sl.ops) gens.push_back(op);
  }
  return ConcreteTheory::from_slices("commutant-of(" + T.label() + ")",
                                     Provenance::Commutant, T.carrier(),
                                     std::move(slices), std::move(gens), exact);
}

// Saturation: T equals its double commutant at every checked arity.  The
// double commutant enforces the computed commutant slices up to max_arity
// (or a verified known generator set), so it contains the true double
// commutant; equality with T certifies saturation, and T not being
// contained in it is impossible and treated as an internal error.
inline Verdict is_saturated(ConcreteTheory& T, std::uint32_t max_arity,
                            std::span<const OpTable> known_tperp_gens = {},
                            const EnumLimits& limits = {}) {
  Verdict v;
  v.kind = "saturated";
  v.max_arity = max_arity;
  ConcreteTheory tperp = commutant_theory(T, max_arity, known_tperp_gens,
                                          limits);
  v.certified = tperp.generators_exact();
  v.pass = true;
  for (std::uint32_t n = 0; n <= max_arity; ++n) {
    TheorySlice dc = commutant_slice(tperp, n, limits);
    SliceComparison cmp = slice_compare(T.slice(n), dc);
    if (!cmp.left_only.empty())
      throw internal_error(
          "theory operation missing from its double commutant (exact "
          "containment violated) for " + T.label());
    ArityCheck ac;
    ac.arity = n;
    ac.ok = cmp.relation == SliceRelation::Equal;
    ac.witnesses = cmp.right_only;
    v.pass = v.pass && ac.ok;
    v.per_arity.push_back(std::move(ac));
  }
  if (!v.pass)
    v.note = v.certified ? "refuted: double commutant strictly larger"
                         : "not certified at the checked bound";
  return v;
}

}  // namespace finclone
