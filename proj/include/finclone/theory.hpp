#pragma once

// Concrete Lawvere theories as clones on a finite carrier: per-arity
// slices of named presentations (full, initial, matrix, affine core,
// pointed modules), generic clone closure from generators, and slice
// comparison.  A theory is always materialized inside the full theory of
// its carrier; slices are canonical (sorted, duplicate-free) vectors of
// flat tables.

#include <map>

#include "finclone/finset.hpp"
#include "finclone/rig.hpp"

namespace finclone {

struct TheorySlice {
  std::uint32_t carrier = 1;
  std::uint32_t arity = 0;
  std::vector<OpTable> ops;  // canonical order: lexicographic on tables

  bool contains(const OpTable& t) const {
    return std::binary_search(ops.begin(), ops.end(), t);
  }
  std::size_t size() const { return ops.size(); }
  void canonicalize() {
    std::sort(ops.begin(), ops.end());
    ops.erase(std::unique(ops.begin(), ops.end()), ops.end());
  }
  friend bool operator==(const TheorySlice&, const TheorySlice&) = default;
};

enum class Provenance {
  Full,
  Initial,
  Mat,
  MatAff,
  PointedMatOp,
  Closure,
  Commutant,
};

inline const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Full: return "full";
    case Provenance::Initial: return "initial";
    case Provenance::Mat: return "mat";
    case Provenance::MatAff: return "mat-aff";
    case Provenance::PointedMatOp: return "pointed-mat-op";
    case Provenance::Closure: return "closure";
    case Provenance::Commutant: return "commutant";
  }
  return "?";
}

struct MatSliceResult {
  TheorySlice slice;
  // encoded coefficient vector -> position in the canonical slice
  std::vector<std::uint32_t> vector_to_op;
  std::uint64_t merged = 0;  // duplicate tables silently merged, counted
  bool faithful() const { return merged == 0; }
};

namespace detail {

// Shared builder for coefficient-parameterized slices.  Each encoded
// parameter vector (length n or 1+n over the rig carrier) yields one table;
// duplicates are merged and counted.
inline MatSliceResult
tables_from_vectors(const FiniteRig& R, std::uint32_t n, bool pointed,
                    std::uint64_t max_slice) {
  std::uint32_t s = R.size;
  std::uint32_t vec_len = pointed ? n + 1 : n;
  std::uint64_t nvec = ipow(s, vec_len);
  std::uint64_t cells = ipow(s, n);
  if (nvec > max_slice || nvec > (std::uint64_t(1) << 28) / std::max<std::uint64_t>(cells, 1))
    throw resource_error("slice of " + std::to_string(nvec) + " tables with " +
                         std::to_string(cells) + " cells exceeds the guard");
  std::vector<OpTable> raw;
  raw.reserve(nvec);
  std::vector<Elem> coeff(vec_len, 0);
  for (std::uint64_t v = 0; v < nvec; ++v) {
    std::vector<Elem> t(cells);
    std::vector<Elem> x(n, 0);
    for (std::uint64_t c = 0; c < cells; ++c) {
      Elem acc = pointed ? coeff[0] : R.zero;
      for (std::uint32_t i = 0; i < n; ++i)
        acc = R.plus(acc, R.times(x[i], coeff[pointed ? i + 1 : i]));
      t[c] = acc;
      for (std::uint32_t pos = n; pos-- > 0;) {
        if (++x[pos] < s) break;
        x[pos] = 0;
      }
    }
    raw.emplace_back(s, n, std::move(t));
    for (std::uint32_t pos = vec_len; pos-- > 0;) {
      if (++coeff[pos] < s) break;
      coeff[pos] = 0;
    }
  }
  MatSliceResult res;
  res.slice.carrier = s;
  res.slice.arity = n;
  res.slice.ops = raw;
  res.slice.canonicalize();
  res.merged = nvec - res.slice.ops.size();
  res.vector_to_op.resize(nvec);
  for (std::uint64_t v = 0; v < nvec; ++v) {
    auto it = std::lower_bound(res.slice.ops.begin(), res.slice.ops.end(),
                               raw[v]);
    res.vector_to_op[v] = std::uint32_t(it - res.slice.ops.begin());
  }
  return res;
}

}  // namespace detail

// All tables of arity n: the full theory of the carrier.
inline TheorySlice full_theory_slice(std::uint32_t carrier, std::uint32_t n,
                                     std::uint64_t max_slice = 1u << 20) {
  std::uint64_t cells = ipow(carrier, n);
  double count_log2 = double(cells) * std::log2(double(carrier));
  if (count_log2 > 62 || ipow(carrier, std::uint32_t(cells)) > max_slice)
    throw resource_error("full theory slice too large at arity " +
                         std::to_string(n));
  std::uint64_t count = ipow(carrier, std::uint32_t(cells));
  TheorySlice sl;
  sl.carrier = carrier;
  sl.arity = n;
  sl.ops.reserve(count);
  std::vector<Elem> t(cells, 0);
  for (std::uint64_t i = 0; i < count; ++i) {
    sl.ops.emplace_back(carrier, n, t);
    for (std::uint64_t pos = cells; pos-- > 0;) {
      if (++t[pos] < carrier) break;
      t[pos] = 0;
    }
  }
  return sl;  // generated in ascending order already
}

// Exactly the n projections; empty at arity 0.
inline TheorySlice initial_theory_slice(std::uint32_t carrier,
                                        std::uint32_t n) {
  TheorySlice sl;
  sl.carrier = carrier;
  sl.arity = n;
  sl.ops = all_projections(carrier, n);
  sl.canonicalize();
  return sl;
}

// { x |-> sum_i xi*ri : r in R^n }, duplicates merged.  Realizes the
// matrix theory of R acting on its own carrier.
inline MatSliceResult mat_slice(const FiniteRig& R, std::uint32_t n,
                                std::uint64_t max_slice = 1u << 20) {
  if (R.degenerate())
    throw input_error("degenerate rig refused for matrix theory");
  return detail::tables_from_vectors(R, n, /*pointed=*/false, max_slice);
}

// { x |-> u0 + sum_i xi*ui : u in R^{1+n} }: pointed modules over R acting
// on R, with the point at the rig unit.
inline MatSliceResult pointed_module_slice(const FiniteRig& R, std::uint32_t n,
                                           std::uint64_t max_slice = 1u
                                                                     << 20) {
  if (R.degenerate())
    throw input_error("degenerate rig refused for pointed module theory");
  return detail::tables_from_vectors(R, n, /*pointed=*/true, max_slice);
}

class ConcreteTheory;
TheorySlice affine_core_slice(ConcreteTheory& T, std::uint32_t n);

// Default arity bound for exhaustive theory computations on a carrier.
inline std::uint32_t default_max_arity(std::uint32_t carrier) {
  if (carrier <= 3) return 3;
  return 2;
}

class ConcreteTheory {
public:
  static ConcreteTheory full(std::uint32_t carrier, std::uint32_t max_arity,
                             std::uint64_t max_slice = 1u << 20) {
    ConcreteTheory T(Provenance::Full, carrier,
                     "full(" + std::to_string(carrier) + ")", max_arity,
                     max_slice);
    // every finitary operation on a finite carrier is a composite of
    // operations of arity <= 2, so these generate the full clone
    for (std::uint32_t k = 0; k <= 2; ++k)
      for (const OpTable& t : full_theory_slice(carrier, k, max_slice).ops)
        T.gens_.push_back(t);
    T.gens_exact_ = true;
    return T;
  }

  static ConcreteTheory initial(std::uint32_t carrier) {
    ConcreteTheory T(Provenance::Initial, carrier,
                     "initial(" + std::to_string(carrier) + ")",
                     default_max_arity(carrier), 1u << 20);
    T.gens_exact_ = true;  // the empty set generates the projection clone
    return T;
  }

  static ConcreteTheory mat(const FiniteRig& R,
                            std::uint32_t max_arity_hint = 0) {
    ConcreteTheory T(Provenance::Mat, R.size, "mat(" + R.name + ")",
                     max_arity_hint ? max_arity_hint
                                    : default_max_arity(R.size),
                     1u << 20);
    if (R.degenerate()) throw input_error("degenerate rig refused");
    T.rig_ = R;
    T.gens_.push_back(R.add);
    for (std::uint32_t r = 0; r < R.size; ++r) {
      std::vector<Elem> t(R.size);
      for (std::uint32_t x = 0; x < R.size; ++x)
        t[x] = R.times(Elem(x), Elem(r));
      T.gens_.emplace_back(R.size, 1, std::move(t));
    }
    T.gens_.push_back(constant_table(R.size, 0, R.zero));
    T.gens_exact_ = true;
    return T;
  }

  static ConcreteTheory mat_aff(const FiniteRig& R,
                                std::uint32_t max_arity_hint = 0);

  static ConcreteTheory pointed_mat_op(const FiniteRig& R,
                                       std::uint32_t max_arity_hint = 0) {
    ConcreteTheory T(Provenance::PointedMatOp, R.size,
                     "pointed-mat-op(" + R.name + ")",
                     max_arity_hint ? max_arity_hint
                                    : default_max_arity(R.size),
                     1u << 20);
    if (R.degenerate()) throw input_error("degenerate rig refused");
    T.rig_ = R;
    T.gens_.push_back(R.add);
    for (std::uint32_t r = 0; r < R.size; ++r) {
      std::vector<Elem> t(R.size);
      for (std::uint32_t x = 0; x < R.size; ++x)
        t[x] = R.times(Elem(x), Elem(r));
      T.gens_.emplace_back(R.size, 1, std::move(t));
    }
    for (std::uint32_t c = 0; c < R.size; ++c)
      T.gens_.push_back(constant_table(R.size, 0, Elem(c)));
    T.gens_exact_ = true;
    return T;
  }

  // Least per-arity slices containing projections and the generators,
  // closed under superposition, to fixpoint at every arity <= max_arity.
  // Constants are lifted into every slice.
  static ConcreteTheory closure_of(std::uint32_t carrier,
                                   std::vector<OpTable> gens,
                                   std::uint32_t max_arity,
                                   std::uint64_t max_slice = 1u << 20) {
    for (const OpTable& g : gens)
      if (g.carrier != carrier)
        throw input_error("closure generator carrier mismatch");
    ConcreteTheory T(Provenance::Closure, carrier, "closure", max_arity,
                     max_slice);
    T.gens_ = std::move(gens);
    T.gens_exact_ = true;
    for (std::uint32_t n = 0; n <= max_arity; ++n)
      T.cache_.emplace(n, T.compute_closure_slice(n));
    return T;
  }

  static ConcreteTheory from_slices(std::string label, Provenance prov,
                                    std::uint32_t carrier,
                                    std::map<std::uint32_t, TheorySlice> slices,
                                    std::vector<OpTable> gens,
                                    bool gens_exact) {
    std::uint32_t ma = 0;
    for (auto& [n, sl] : slices) ma = std::max(ma, n);
    ConcreteTheory T(prov, carrier, std::move(label), ma, 1u << 20);
    T.cache_ = std::move(slices);
    T.gens_ = std::move(gens);
    T.gens_exact_ = gens_exact;
    return T;
  }

  const TheorySlice& slice(std::uint32_t n) {
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;
    TheorySlice sl = compute_slice(n);
    return cache_.emplace(n, std::move(sl)).first->second;
  }

  std::uint32_t carrier() const { return carrier_; }
  Provenance provenance() const { return prov_; }
  const std::string& label() const { return label_; }
  std::uint32_t max_arity() const { return max_arity_; }
  const std::vector<OpTable>& generators() const { return gens_; }
  bool generators_exact() const { return gens_exact_; }
  const std::optional<FiniteRig>& rig() const { return rig_; }

  // Duplicate coefficient vectors merged when materializing arity n; a
  // nonzero count means the presentation is not faithful at that arity.
  std::uint64_t merged_at(std::uint32_t n) {
    slice(n);
    auto it = merged_.find(n);
    return it == merged_.end() ? 0 : it->second;
  }
  bool faithful_up_to(std::uint32_t max_n) {
    if (prov_ != Provenance::Mat && prov_ != Provenance::PointedMatOp)
      return true;
    for (std::uint32_t n = 0; n <= max_n; ++n)
      if (merged_at(n) != 0) return false;
    return true;
  }

private:
  friend TheorySlice affine_core_slice(ConcreteTheory&, std::uint32_t);

  ConcreteTheory(Provenance prov, std::uint32_t carrier, std::string label,
                 std::uint32_t max_arity, std::uint64_t max_slice)
      : prov_(prov), carrier_(carrier), label_(std::move(label)),
        max_arity_(max_arity), max_slice_(max_slice) {
    if (carrier == 0) throw input_error("carrier size must be positive");
  }

  TheorySlice compute_slice(std::uint32_t n) {
    switch (prov_) {
      case Provenance::Full:
        if (n > max_arity_)
          throw resource_error("full theory arity " + std::to_string(n) +
                               " above configured bound " +
                               std::to_string(max_arity_));
        return full_theory_slice(carrier_, n, max_slice_);
      case Provenance::Initial:
        return initial_theory_slice(carrier_, n);
      case Provenance::Mat: {
        MatSliceResult r = mat_slice(*rig_, n, max_slice_);
        merged_[n] = r.merged;
        return std::move(r.slice);
      }
      case Provenance::PointedMatOp: {
        MatSliceResult r = pointed_module_slice(*rig_, n, max_slice_);
        merged_[n] = r.merged;
        return std::move(r.slice);
      }
      case Provenance::MatAff: {
        ConcreteTheory base = ConcreteTheory::mat(*rig_, max_arity_);
        return affine_core_slice(base, n);
      }
      case Provenance::Closure:
      case Provenance::Commutant:
        throw input_error("slice arity " + std::to_string(n) +
                          " not materialized for " + label_);
    }
    throw internal_error("unreachable provenance");
  }

  TheorySlice compute_closure_slice(std::uint32_t n) {
    TheorySlice sl;
    sl.carrier = carrier_;
    sl.arity = n;
    if (ipow(carrier_, n) > (std::uint64_t(1) << 20))
      throw resource_error("closure slice cells exceed the guard at arity " +
                           std::to_string(n));
    std::vector<OpTable> items = all_projections(carrier_, n);
    std::sort(items.begin(), items.end());
    auto known = [&](const OpTable& t) {
      return std::binary_search(items.begin(), items.end(), t);
    };
    std::vector<OpTable> fresh;
    auto add_item = [&](OpTable t) {
      if (!known(t)) {
        items.insert(std::lower_bound(items.begin(), items.end(), t), t);
        fresh.push_back(std::move(t));
        if (items.size() > max_slice_)
          throw resource_error("closure slice exceeds guard at arity " +
                               std::to_string(n));
      }
    };
    for (const OpTable& g : gens_)
      if (g.arity == 0) add_item(constant_table(carrier_, n, g.table[0]));
    // rounds: apply every generator to tuples of current items, where at
    // least one argument was added in the previous round
    std::vector<OpTable> prev = items;
    bool first_round = true;
    while (first_round || !fresh.empty()) {
      std::vector<OpTable> last = first_round ? items : fresh;
      std::sort(last.begin(), last.end());
      fresh.clear();
      first_round = false;
      std::vector<OpTable> snapshot = items;
      for (const OpTable& g : gens_) {
        std::uint32_t k = g.arity;
        if (k == 0 || snapshot.empty()) continue;
        std::vector<std::uint32_t> idx(k, 0);
        while (true) {
          bool touches_last = false;
          for (std::uint32_t i = 0; i < k; ++i)
            if (std::binary_search(last.begin(), last.end(), snapshot[idx[i]]))
              touches_last = true;
          if (touches_last) {
            std::vector<OpTable> chosen;
            chosen.reserve(k);
            for (std::uint32_t i = 0; i < k; ++i)
              chosen.push_back(snapshot[idx[i]]);
            add_item(superpose(g, chosen, n));
          }
          std::uint32_t pos = k;
          while (pos > 0) {
            if (++idx[pos - 1] < snapshot.size()) break;
            idx[pos - 1] = 0;
            --pos;
          }
          if (pos == 0) break;
        }
      }
    }
    sl.ops = std::move(items);
    return sl;
  }

  Provenance prov_;
  std::uint32_t carrier_;
  std::string label_;
  std::uint32_t max_arity_;
  std::uint64_t max_slice_;
  std::optional<FiniteRig> rig_;
  std::vector<OpTable> gens_;
  bool gens_exact_ = false;
  std::map<std::uint32_t, TheorySlice> cache_;
  std::map<std::uint32_t, std::uint64_t> merged_;
};

// The subset of slice(n) fixing the diagonal: all w with w(a,...,a) = a.
// For matrix theories the same set is recomputed through the row-sum-one
// coefficient filter and the two characterizations must coincide.
inline TheorySlice affine_core_slice(ConcreteTheory& T, std::uint32_t n) {
  const TheorySlice& base = T.slice(n);
  std::uint32_t s = T.carrier();
  TheorySlice out;
  out.carrier = s;
  out.arity = n;
  // index of the constant tuple (a,...,a)
  auto diag_index = [&](Elem a) {
    std::uint64_t idx = 0;
    for (std::uint32_t i = 0; i < n; ++i) idx = idx * s + a;
    return idx;
  };
  for (const OpTable& op : base.ops) {
    bool diag = true;
    for (std::uint32_t a = 0; a < s && diag; ++a)
      if (n == 0 ? s > 1 : op.table[diag_index(Elem(a))] != a) diag = false;
    if (diag) out.ops.push_back(op);
  }
  out.canonicalize();
  if (T.provenance() == Provenance::Mat) {
    const FiniteRig& R = *T.rig();
    MatSliceResult mr = mat_slice(R, n);
    TheorySlice rowsum;
    rowsum.carrier = s;
    rowsum.arity = n;
    std::vector<Elem> coeff(n, 0);
    std::uint64_t nvec = ipow(s, n);
    for (std::uint64_t v = 0; v < nvec; ++v) {
      Elem acc = R.zero;
      for (std::uint32_t i = 0; i < n; ++i) acc = R.plus(acc, coeff[i]);
      if (acc == R.one)
        rowsum.ops.push_back(mr.slice.ops[mr.vector_to_op[v]]);
      for (std::uint32_t pos = n; pos-- > 0;) {
        if (++coeff[pos] < s) break;
        coeff[pos] = 0;
      }
    }
    rowsum.canonicalize();
    if (!(rowsum == out))
      throw internal_error(
          "affine core characterizations disagree (diagonal vs row-sum) for " +
          T.label() + " at arity " + std::to_string(n));
  }
  return out;
}

inline ConcreteTheory ConcreteTheory::mat_aff(const FiniteRig& R,
                                              std::uint32_t max_arity_hint) {
  ConcreteTheory T(Provenance::MatAff, R.size, "mat-aff(" + R.name + ")",
                   max_arity_hint ? max_arity_hint : default_max_arity(R.size),
                   1u << 20);
  if (R.degenerate()) throw input_error("degenerate rig refused");
  T.rig_ = R;
  RigReport rep = validate_rig(R);
  bool idempotent_add = true;
  for (std::uint32_t a = 0; a < R.size; ++a)
    if (R.plus(Elem(a), Elem(a)) != a) idempotent_add = false;
  bool cyclic_one = false;
  {
    // additive orbit of 1 covers the carrier -> every element is an
    // integer multiple of the unit
    std::vector<bool> seen(R.size, false);
    Elem cur = R.zero;
    for (std::uint32_t i = 0; i <= R.size; ++i) {
      seen[cur] = true;
      cur = R.plus(cur, R.one);
    }
    cyclic_one = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  }
  if (R.size == 2 && idempotent_add) {
    // on a two-element carrier with idempotent addition every scalar fixes
    // or annihilates, so affine operations are exactly the nonempty sums
    // of variables and the binary addition generates the affine clone;
    // larger idempotent carriers have affine operations with interior
    // scalars and fall through to the slice-enforced branch
    T.gens_.push_back(R.add);
    T.gens_exact_ = true;
  } else if (rep.is_ring && cyclic_one) {
    // over such a ring every row-sum-one combination is an integer one and
    // is reachable from the ternary x - y + z; the binary slice is added
    // so constraint propagation has a short seed
    Elem minus_one = R.zero;
    for (std::uint32_t b = 0; b < R.size; ++b)
      if (R.plus(R.one, Elem(b)) == R.zero) minus_one = Elem(b);
    std::uint64_t cells = ipow(R.size, 3);
    std::vector<Elem> t(cells);
    std::vector<Elem> x(3, 0);
    for (std::uint64_t c = 0; c < cells; ++c) {
      t[c] = R.plus(R.plus(x[0], R.times(x[1], minus_one)), x[2]);
      for (std::uint32_t pos = 3; pos-- > 0;) {
        if (++x[pos] < R.size) break;
        x[pos] = 0;
      }
    }
    T.gens_.emplace_back(R.size, 3, std::move(t));
    ConcreteTheory base = ConcreteTheory::mat(R, 2);
    for (const OpTable& op : affine_core_slice(base, 2).ops)
      T.gens_.push_back(op);
    T.gens_exact_ = true;
  } else {
    // no verified finite generating set: enforce the materialized slices
    ConcreteTheory base = ConcreteTheory::mat(R, T.max_arity_);
    for (std::uint32_t n = 0; n <= T.max_arity_; ++n)
      for (const OpTable& op : affine_core_slice(base, n).ops)
        T.gens_.push_back(op);
    T.gens_exact_ = false;
  }
  return T;
}

// An algebra for a theory: an interpretation of its generators on some
// carrier.  The interpretation must preserve arities and respect every
// relation between generator terms that holds in the theory's slices;
// the validator replays the clone closure over (theory term, algebra
// term) pairs and flags any collision on the theory side whose algebra
// sides disagree.
struct AlgebraStructure {
  std::string theory_label;
  std::uint32_t carrier_size = 1;
  // (generator of the theory, its action on the algebra carrier)
  std::vector<std::pair<OpTable, OpTable>> interpretation;
};

inline AlgebraStructure tautological_algebra(const ConcreteTheory& T) {
  AlgebraStructure A;
  A.theory_label = T.label();
  A.carrier_size = T.carrier();
  for (const OpTable& g : T.generators()) A.interpretation.emplace_back(g, g);
  return A;
}

struct AlgebraReport {
  bool pass = false;
  std::string detail;
};

inline AlgebraReport validate_algebra(ConcreteTheory& T,
                                      const AlgebraStructure& A,
                                      std::uint32_t max_arity = 2,
                                      std::uint64_t max_slice = 1u << 16) {
  AlgebraReport rep;
  for (const auto& [g, b] : A.interpretation) {
    if (g.carrier != T.carrier() || b.carrier != A.carrier_size ||
        g.arity != b.arity) {
      rep.detail = "interpretation does not preserve arities and carriers";
      return rep;
    }
    if (g.arity <= T.max_arity() && !T.slice(g.arity).contains(g)) {
      rep.detail = "interpreted table is not an operation of the theory";
      return rep;
    }
  }
  for (std::uint32_t n = 0; n <= max_arity; ++n) {
    // paired closure; env maps a theory term's table to its algebra table
    std::map<OpTable, OpTable> env;
    for (std::uint32_t i = 1; i <= n; ++i)
      env.emplace(projection(T.carrier(), n, i),
                  projection(A.carrier_size, n, i));
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<std::pair<OpTable, OpTable>> snapshot(env.begin(),
                                                        env.end());
      for (const auto& [g, b] : A.interpretation) {
        std::uint32_t k = g.arity;
        if (k > 0 && snapshot.empty()) continue;
        std::vector<std::size_t> idx(k, 0);
        while (true) {
          std::vector<OpTable> tins, bins;
          for (std::uint32_t i = 0; i < k; ++i) {
            tins.push_back(snapshot[idx[i]].first);
            bins.push_back(snapshot[idx[i]].second);
          }
          OpTable tT = superpose(g, tins, n);
          OpTable tB = superpose(b, bins, n);
          auto it = env.find(tT);
          if (it == env.end()) {
            env.emplace(std::move(tT), std::move(tB));
            grew = true;
            if (env.size() > max_slice) {
              rep.detail = "interpretation closure exceeds the guard";
              return rep;
            }
          } else if (!(it->second == tB)) {
            rep.detail = "relation violated at arity " + std::to_string(n) +
                         ": equal theory terms act differently";
            return rep;
          }
          if (k == 0) break;
          std::uint32_t pos = k;
          while (pos > 0) {
            if (++idx[pos - 1] < snapshot.size()) break;
            idx[pos - 1] = 0;
            --pos;
          }
          if (pos == 0) break;
        }
      }
    }
  }
  rep.pass = true;
  rep.detail = "interpretation respects the generator relations up to arity " +
               std::to_string(max_arity);
  return rep;
}

enum class SliceRelation { Equal, LeftSubset, RightSubset, Incomparable };

inline const char* relation_name(SliceRelation r) {
  switch (r) {
    case SliceRelation::Equal: return "equal";
    case SliceRelation::LeftSubset: return "left-subset";
    case SliceRelation::RightSubset: return "right-subset";
    case SliceRelation::Incomparable: return "incomparable";
  }
  return "?";
}

struct SliceComparison {
  SliceRelation relation = SliceRelation::Equal;
  std::vector<OpTable> left_only;
  std::vector<OpTable> right_only;
};

inline SliceComparison slice_compare(const TheorySlice& a,
                                     const TheorySlice& b) {
  if (a.carrier != b.carrier || a.arity != b.arity)
    throw input_error("slice comparison requires equal carrier and arity");
  SliceComparison c;
  std::set_difference(a.ops.begin(), a.ops.end(), b.ops.begin(), b.ops.end(),
                      std::back_inserter(c.left_only));
  std::set_difference(b.ops.begin(), b.ops.end(), a.ops.begin(), a.ops.end(),
                      std::back_inserter(c.right_only));
  if (c.left_only.empty() && c.right_only.empty())
    c.relation = SliceRelation::Equal;
  else if (c.left_only.empty())
    c.relation = SliceRelation::LeftSubset;
  else if (c.right_only.empty())
    c.relation = SliceRelation::RightSubset;
  else
    c.relation = SliceRelation::Incomparable;
  return c;
}

// |T(n,1)|: the carrier size of the free algebra on n generators.
inline std::uint64_t free_algebra_size(ConcreteTheory& T, std::uint32_t n) {
  return T.slice(n).ops.size();
}

}  // namespace finclone
