#pragma once

// Machine checks: the named identities a distribution context must satisfy
// (counts and classifications of D(V), the restriction and
// double-commutant identities, monad laws), the commutant theorems for
// matrix and affine theories, and the independent oracles backing them.
// Shared by the acceptance suite and the CLI report command.

#include <chrono>
#include <sstream>

#include "finclone/distribution.hpp"

namespace finclone {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double elapsed_ms = 0.0;
};

namespace detail {

class Stopwatch {
public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Independent oracles.

// All families of subsets of {0,...,v-1} that are filters: upward closed,
// closed under intersection, containing the whole set.  Brute force over
// P(P(V)); feasible for v <= 3.
inline std::vector<std::vector<std::uint32_t>>
brute_force_filters(std::uint32_t v_size, bool proper_only = false) {
  if (v_size > 3) throw resource_error("brute-force filter oracle limited to |V| <= 3");
  std::uint32_t nsub = std::uint32_t(1) << v_size;
  std::uint64_t nfam = std::uint64_t(1) << nsub;
  std::vector<std::vector<std::uint32_t>> filters;
  for (std::uint64_t fam = 0; fam < nfam; ++fam) {
    auto in = [&](std::uint32_t A) { return (fam >> A) & 1; };
    if (!in(nsub - 1)) continue;
    bool ok = true;
    for (std::uint32_t A = 0; A < nsub && ok; ++A) {
      if (!in(A)) continue;
      for (std::uint32_t B = A; B < nsub && ok; ++B) {
        if (in(B) && !in(A & B)) ok = false;
        if ((B & A) == A && !in(B)) ok = false;  // B superset of A
      }
    }
    if (!ok) continue;
    if (proper_only && in(0)) continue;
    std::vector<std::uint32_t> members;
    for (std::uint32_t A = 0; A < nsub; ++A)
      if (in(A)) members.push_back(A);
    filters.push_back(std::move(members));
  }
  std::sort(filters.begin(), filters.end());
  return filters;
}

// Naive reference for the enumeration kernel: iterate every table and test
// each constraint instance by direct evaluation.
inline std::vector<OpTable>
naive_constrained(std::uint32_t s, std::uint32_t n,
                  std::span<const OpTable> gens,
                  std::uint64_t naive_limit = std::uint64_t(1) << 16) {
  std::uint64_t cells = ipow(s, n);
  double count_log2 = double(cells) * std::log2(double(s));
  if (count_log2 > 62) throw resource_error("naive oracle out of range");
  std::uint64_t count = ipow(s, std::uint32_t(cells));
  if (count > naive_limit)
    throw resource_error("naive oracle limited to " +
                         std::to_string(naive_limit) + " candidates");
  std::vector<OpTable> out;
  std::vector<Elem> t(cells, 0);
  for (std::uint64_t i = 0; i < count; ++i) {
    OpTable h(s, n, t);
    bool ok = true;
    for (const OpTable& g : gens) {
      std::uint32_t k = g.arity;
      std::vector<std::uint64_t> args(k, 0);
      while (ok) {
        std::vector<std::vector<Elem>> dec(k);
        for (std::uint32_t a = 0; a < k; ++a)
          dec[a] = decode_tuple(s, n, args[a]);
        std::uint64_t m = 0;
        for (std::uint32_t j = 0; j < n; ++j) {
          std::uint64_t idx = 0;
          for (std::uint32_t a = 0; a < k; ++a) idx = idx * s + dec[a][j];
          m = m * s + g.table[idx];
        }
        std::uint64_t idx = 0;
        for (std::uint32_t a = 0; a < k; ++a) idx = idx * s + h.table[args[a]];
        if (h.table[m] != g.table[idx]) ok = false;
        std::uint32_t pos = k;
        while (pos > 0) {
          if (++args[pos - 1] < cells) break;
          args[pos - 1] = 0;
          --pos;
        }
        if (pos == 0) break;
      }
      if (!ok) break;
    }
    if (ok) out.push_back(std::move(h));
    for (std::uint64_t pos = cells; pos-- > 0;) {
      if (++t[pos] < s) break;
      t[pos] = 0;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Distribution identities.

// |D(V)| and classification against the brute-force filter oracle.
inline CheckResult filter_identity_check(Context& ctx, std::uint32_t max_v,
                                         std::uint32_t oracle_max_v) {
  detail::Stopwatch sw;
  CheckResult r;
  r.name = "filter-identity";
  r.pass = true;
  std::ostringstream det;
  for (std::uint32_t v = 0; v <= max_v; ++v) {
    DistObject d = distribution_object(ctx, v);
    std::uint64_t expect = std::uint64_t(1) << v;
    bool count_ok = d.elements.size() == expect;
    bool classify_ok = true;
    std::vector<std::vector<std::uint32_t>> families;
    for (const OpTable& mu : d.elements) {
      Classification c = classify(ctx, v, mu);
      if (c.label != "improper filter" && c.label != "proper filter" &&
          c.label != "ultrafilter")
        classify_ok = false;
      families.push_back(c.family);
    }
    std::sort(families.begin(), families.end());
    bool distinct =
        std::adjacent_find(families.begin(), families.end()) == families.end();
    classify_ok = classify_ok && distinct;
    if (v <= oracle_max_v)
      classify_ok = classify_ok && families == brute_force_filters(v, false);
    r.pass = r.pass && count_ok && classify_ok;
    det << "|D(" << v << ")|=" << d.elements.size() << (count_ok ? "" : "!")
        << (classify_ok ? "" : " classify-mismatch") << " ";
  }
  r.detail = det.str();
  r.elapsed_ms = sw.ms();
  return r;
}

inline CheckResult proper_identity_check(Context& ctx, std::uint32_t max_v,
                                         std::uint32_t oracle_max_v) {
  detail::Stopwatch sw;
  CheckResult r;
  r.name = "proper-filter-identity";
  r.pass = true;
  std::ostringstream det;
  for (std::uint32_t v = 0; v <= max_v; ++v) {
    DistObject d = distribution_object(ctx, v);
    std::uint64_t expect = (std::uint64_t(1) << v) - 1;
    bool count_ok = d.elements.size() == expect;
    bool classify_ok = true;
    std::vector<std::vector<std::uint32_t>> families;
    for (const OpTable& mu : d.elements) {
      Classification c = classify(ctx, v, mu);
      if (c.label != "proper filter" && c.label != "ultrafilter")
        classify_ok = false;
      families.push_back(c.family);
    }
    if (v <= oracle_max_v) {
      std::sort(families.begin(), families.end());
      classify_ok =
          classify_ok && families == brute_force_filters(v, true);
    }
    r.pass = r.pass && count_ok && classify_ok;
    det << "|D(" << v << ")|=" << d.elements.size() << (count_ok ? "" : "!")
        << (classify_ok ? "" : " classify-mismatch") << " ";
  }
  r.detail = det.str();
  r.elapsed_ms = sw.ms();
  return r;
}

inline CheckResult ultrafilter_identity_check(Context& ctx,
                                              std::uint32_t max_v) {
  detail::Stopwatch sw;
  CheckResult r;
  r.name = "ultrafilter-identity";
  r.pass = true;
  std::ostringstream det;
  for (std::uint32_t v = 1; v <= max_v; ++v) {
    DistObject d = distribution_object(ctx, v);
    bool count_ok = d.elements.size() == v;
    bool dirac_ok = true;
    std::vector<OpTable> diracs;
    for (std::uint32_t p = 0; p < v; ++p) diracs.push_back(dirac(ctx, v, p));
    std::sort(diracs.begin(), diracs.end());
    dirac_ok = diracs == d.elements;
    bool classify_ok = true;
    for (const OpTable& mu : d.elements) {
      Classification c = classify(ctx, v, mu);
      if (c.label != "ultrafilter" || !c.principal ||
          __builtin_popcount(*c.principal) != 1)
        classify_ok = false;
    }
    r.pass = r.pass && count_ok && dirac_ok && classify_ok;
    det << "|D(" << v << ")|=" << d.elements.size() << (count_ok ? "" : "!")
        << (dirac_ok ? "" : " dirac-mismatch")
        << (classify_ok ? "" : " classify-mismatch") << " ";
  }
  r.detail = det.str();
  r.elapsed_ms = sw.ms();
  return r;
}

// D(n) must equal the theory slice at n, element for element (the explicit
// bijection sends an n-ary operation to evaluation against it, which is
// the identity on tables).
inline CheckResult restriction_check(Context& ctx, std::uint32_t n) {
  detail::Stopwatch sw;
  CheckResult r;
  r.name = "restriction(" + ctx.name + ", n=" + std::to_string(n) + ")";
  DistObject d = distribution_object(ctx, n);
  const TheorySlice& sl = ctx.theory.slice(n);
  bool counts = d.elements.size() == sl.ops.size();
  bool sets = counts && std::equal(d.elements.begin(), d.elements.end(),
                                   sl.ops.begin());
  r.pass = counts && sets;
  r.detail = "|D(" + std::to_string(n) + ")|=" +
             std::to_string(d.elements.size()) +
             " |T(n,1)|=" + std::to_string(sl.ops.size()) +
             (sets ? " bijection=identity-on-tables" : " MISMATCH");
  r.elapsed_ms = sw.ms();
  return r;
}

// D(n) computed through the cotensor structure must coincide with the
// commutant of the commutant generators computed by the constrained
// enumerator.
inline CheckResult double_commutant_check(Context& ctx, std::uint32_t n,
                                          const EnumLimits& limits = {}) {
  detail::Stopwatch sw;
  CheckResult r;
  r.name = "double-commutant(" + ctx.name + ", n=" + std::to_string(n) + ")";
  DistObject d = distribution_object(ctx, n);
  TheorySlice comm =
      commutant_slice_of_gens(ctx.s, n, ctx.tperp_gens, limits);
  r.pass = d.elements.size() == comm.ops.size() &&
           std::equal(d.elements.begin(), d.elements.end(), comm.ops.begin());
  r.detail = "|D|=" + std::to_string(d.elements.size()) +
             " |commutant|=" + std::to_string(comm.ops.size()) +
             (r.pass ? "" : " MISMATCH");
  r.elapsed_ms = sw.ms();
  return r;
}

// Unit laws and associativity, checked literally on the enumerated
// objects: every composite is formed by table plumbing and compared
// element-wise, with membership asserted along the way.
inline CheckResult monad_laws_check(Context& ctx, std::uint32_t unit_max_v,
                                    std::uint32_t assoc_max_v) {
  detail::Stopwatch sw;
  CheckResult r;
  r.name = "monad-laws(" + ctx.name + ")";
  r.pass = true;
  std::ostringstream det;
  for (std::uint32_t v = 0; v <= unit_max_v; ++v) {
    DistObject DV = distribution_object(ctx, v);
    std::uint32_t dv = std::uint32_t(DV.elements.size());
    // delta_V as an index map V -> D(V)
    std::vector<std::uint32_t> delta_v(v);
    bool units_ok = true;
    for (std::uint32_t p = 0; p < v; ++p) {
      auto ix = DV.index_of(dirac(ctx, v, p));
      if (!ix) throw internal_error("dirac image missing from D(V)");
      delta_v[p] = std::uint32_t(*ix);
    }
    for (std::size_t i = 0; i < DV.elements.size(); ++i) {
      const OpTable& mu = DV.elements[i];
      // left unit: mult(dirac_{D(V)}(mu)) == mu
      OpTable left = mult(ctx, DV, dirac(ctx, dv, std::uint32_t(i)));
      // right unit: mult(D(delta_V)(mu)) == mu
      OpTable right = mult(ctx, DV, dmap(ctx, delta_v, dv, mu));
      if (!(left == mu) || !(right == mu)) units_ok = false;
    }
    r.pass = r.pass && units_ok;
    det << "units(v=" << v << (units_ok ? ") ok " : ") FAIL ");
  }
  for (std::uint32_t v = 0; v <= assoc_max_v; ++v) {
    DistObject DV = distribution_object(ctx, v);
    std::uint32_t dv = std::uint32_t(DV.elements.size());
    DistObject DDV = distribution_object(ctx, dv);
    std::uint32_t ddv = std::uint32_t(DDV.elements.size());
    // kappa_V as an index map D(D(V)) -> D(V)
    std::vector<std::uint32_t> kappa_v(ddv);
    for (std::uint32_t i = 0; i < ddv; ++i) {
      auto ix = DV.index_of(mult(ctx, DV, DDV.elements[i]));
      if (!ix) throw internal_error("mult image missing from D(V)");
      kappa_v[i] = std::uint32_t(*ix);
    }
    bool assoc_ok = true;
    std::uint64_t seen = 0;
    stream_distribution(ctx, ddv, [&](const OpTable& Xi) {
      ++seen;
      OpTable a = mult(ctx, DDV, Xi);             // kappa at D(V)
      if (!DDV.index_of(a)) assoc_ok = false;
      OpTable b = dmap(ctx, kappa_v, dv, Xi);     // D(kappa)
      if (!DDV.index_of(b)) assoc_ok = false;
      if (!(mult(ctx, DV, a) == mult(ctx, DV, b))) assoc_ok = false;
      return true;
    });
    r.pass = r.pass && assoc_ok;
    det << "assoc(v=" << v << ",|DDD|=" << seen
        << (assoc_ok ? ") ok " : ") FAIL ");
  }
  r.detail = det.str();
  r.elapsed_ms = sw.ms();
  return r;
}

// ---------------------------------------------------------------------------
// Commutant theorems for matrix and affine theories.

// The matrix theories of R and of R^op are each other's commutants inside
// the full theory of the carrier.
inline CheckResult mutual_commutant_check(const FiniteRig& R, std::uint32_t K,
                                          const EnumLimits& limits = {}) {
  detail::Stopwatch sw;
  CheckResult r;
  r.name = "mutual-commutant(" + R.name + ")";
  FiniteRig Rop = opposite(R);
  ConcreteTheory TR = ConcreteTheory::mat(R, K);
  ConcreteTheory TRop = ConcreteTheory::mat(Rop, K);
  if (!TR.faithful_up_to(K) || !TRop.faithful_up_to(K)) {
    r.pass = false;
    r.detail = "aborted: matrix presentation not faithful";
    r.elapsed_ms = sw.ms();
    return r;
  }
  r.pass = true;
  std::ostringstream det;
  for (std::uint32_t n = 0; n <= K; ++n) {
    bool fwd = slice_compare(commutant_slice(TR, n, limits), TRop.slice(n))
                   .relation == SliceRelation::Equal;
    bool bwd = slice_compare(commutant_slice(TRop, n, limits), TR.slice(n))
                   .relation == SliceRelation::Equal;
    r.pass = r.pass && fwd && bwd;
    det << "n=" << n << (fwd && bwd ? " ok" : " FAIL") << " ";
  }
  r.detail = det.str();
  r.elapsed_ms = sw.ms();
  return r;
}

// Balance of the matrix theory: expected to hold exactly when the rig is
// commutative; a non-commutative rig must fail with witnesses.
inline CheckResult balance_check(const FiniteRig& R, std::uint32_t K,
                                 const EnumLimits& limits = {}) {
  detail::Stopwatch sw;
  CheckResult r;
  r.name = "balance(" + R.name + ")";
  ConcreteTheory T = ConcreteTheory::mat(R, K);
  Verdict v = is_balanced(T, K, limits);
  bool expect = R.commutative();
  bool witnesses = false;
  for (const ArityCheck& ac : v.per_arity)
    if (!ac.witnesses.empty()) witnesses = true;
  r.pass = (v.pass == expect) && (expect || witnesses);
  r.detail = std::string("balanced=") + (v.pass ? "yes" : "no") +
             " expected=" + (expect ? "yes" : "no") +
             (expect ? "" : witnesses ? " witness-found" : " witness-MISSING");
  r.elapsed_ms = sw.ms();
  return r;
}

// Affine cores against pointed modules: the commutant of the pointed
// module theory of R is the affine core of the matrix theory of R^op.
// The converse identity (the commutant of that affine core is the pointed
// module theory) holds for rings and for the two-element meet rig, and is
// only asserted there.
inline CheckResult affine_commutant_check(const FiniteRig& R, std::uint32_t K,
                                          bool check_converse = true,
                                          const EnumLimits& limits = {}) {
  detail::Stopwatch sw;
  CheckResult r;
  r.name = "affine-commutant(" + R.name + ")";
  FiniteRig Rop = opposite(R);
  ConcreteTheory pointed = ConcreteTheory::pointed_mat_op(R, K);
  ConcreteTheory aff = ConcreteTheory::mat_aff(Rop, K);
  bool meet2 = R.size == 2 && R.plus(R.one, R.one) == R.one &&
               R.plus(R.zero, R.zero) == R.zero;
  bool converse = check_converse && (validate_rig(R).is_ring || meet2);
  r.pass = true;
  std::ostringstream det;
  for (std::uint32_t n = 0; n <= K; ++n) {
    bool fwd = slice_compare(commutant_slice(pointed, n, limits), aff.slice(n))
                   .relation == SliceRelation::Equal;
    r.pass = r.pass && fwd;
    det << "n=" << n << " pointed^perp=affine" << (fwd ? " ok" : " FAIL");
    if (converse) {
      bool bwd = slice_compare(commutant_slice(aff, n, limits),
                               pointed.slice(n))
                     .relation == SliceRelation::Equal;
      r.pass = r.pass && bwd;
      det << " affine^perp=pointed" << (bwd ? " ok" : " FAIL");
    }
    det << "; ";
  }
  if (check_converse && !converse)
    det << "converse not asserted for a non-ring";
  r.detail = det.str();
  r.elapsed_ms = sw.ms();
  return r;
}

// ---------------------------------------------------------------------------
// Kernel and closure cross-checks.

inline CheckResult oracle_equivalence_check(std::uint32_t trials = 20,
                                            std::uint32_t seed = 0x0eac1eu) {
  detail::Stopwatch sw;
  CheckResult r;
  r.name = "enumerator-oracle-equivalence";
  r.pass = true;
  std::mt19937 rng(seed);
  struct Shape {
    std::uint32_t s, n;
  };
  const Shape shapes[] = {{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {4, 1}};
  std::uint32_t done = 0;
  std::ostringstream det;
  while (done < trials) {
    Shape sh = shapes[rng() % std::size(shapes)];
    std::uniform_int_distribution<std::uint32_t> ngen(1, 3);
    std::uniform_int_distribution<std::uint32_t> garity(0, 2);
    std::vector<OpTable> gens;
    for (std::uint32_t i = 0, m = ngen(rng); i < m; ++i) {
      std::uint32_t k = garity(rng);
      std::vector<Elem> t(ipow(sh.s, k));
      for (Elem& e : t) e = Elem(rng() % sh.s);
      gens.emplace_back(sh.s, k, std::move(t));
    }
    std::vector<OpTable> fast = enumerate_constrained(sh.s, sh.n, gens);
    std::vector<OpTable> slow = naive_constrained(sh.s, sh.n, gens);
    if (fast != slow) {
      r.pass = false;
      det << "mismatch at s=" << sh.s << " n=" << sh.n << "; ";
    }
    ++done;
  }
  det << trials << " randomized constraint sets";
  r.detail = det.str();
  r.elapsed_ms = sw.ms();
  return r;
}

// Clone closure of the module generators reproduces the matrix slices, and
// closure of each context's verified commutant generators reproduces the
// computed commutant slices.
inline CheckResult closure_crosscheck(std::span<const FiniteRig> rigs,
                                      std::vector<Context*> contexts,
                                      const EnumLimits& limits = {}) {
  detail::Stopwatch sw;
  CheckResult r;
  r.name = "clone-closure-crosscheck";
  r.pass = true;
  std::ostringstream det;
  for (const FiniteRig& R : rigs) {
    std::uint32_t K = default_max_arity(R.size);
    ConcreteTheory T = ConcreteTheory::mat(R, K);
    ConcreteTheory cl = ConcreteTheory::closure_of(R.size, T.generators(), K);
    bool ok = true;
    for (std::uint32_t n = 0; n <= K; ++n)
      if (!(cl.slice(n) == T.slice(n))) ok = false;
    r.pass = r.pass && ok;
    det << "mat(" << R.name << ")" << (ok ? " ok" : " FAIL") << "; ";
  }
  for (Context* ctx : contexts) {
    if (!ctx->tperp_exact) continue;
    std::uint32_t K = ctx->max_arity;
    ConcreteTheory cl =
        ConcreteTheory::closure_of(ctx->s, ctx->tperp_gens, K);
    bool ok = true;
    for (std::uint32_t n = 0; n <= K; ++n) {
      TheorySlice comm = commutant_slice(ctx->theory, n, limits);
      if (!(cl.slice(n) == comm)) ok = false;
    }
    r.pass = r.pass && ok;
    det << ctx->name << (ok ? " ok" : " FAIL") << "; ";
  }
  r.detail = det.str();
  r.elapsed_ms = sw.ms();
  return r;
}

// ---------------------------------------------------------------------------
// The acceptance matrix: the full battery of identities the artifact must
// satisfy, grouped into numbered criteria with runtime budgets.

struct CriterionResult {
  int number = 0;
  std::string title;
  bool pass = false;
  double elapsed_ms = 0.0;
  double budget_ms = 0.0;  // 0 = no budget
  std::vector<CheckResult> parts;
};

inline std::vector<CriterionResult>
run_acceptance(std::span<const FiniteRig> rigs) {
  auto find_rig = [&](const std::string& name) -> const FiniteRig* {
    for (const FiniteRig& r : rigs)
      if (r.name == name) return &r;
    return nullptr;
  };
  const FiniteRig* bool2 = find_rig("bool2");
  if (!bool2)
    throw input_error("acceptance matrix requires a rig named \"bool2\"");
  Context filter_ctx = scalar_linear_context(*bool2);
  Context proper_ctx = scalar_affine_context(*bool2);
  Context ultra_ctx = initial_context(2);

  std::vector<CriterionResult> out;
  auto finish = [&](CriterionResult& c) {
    c.pass = true;
    c.elapsed_ms = 0;
    for (const CheckResult& p : c.parts) {
      c.pass = c.pass && p.pass;
      c.elapsed_ms += p.elapsed_ms;
    }
    if (c.budget_ms > 0 && c.elapsed_ms >= c.budget_ms) c.pass = false;
    out.push_back(std::move(c));
  };

  {
    CriterionResult c{1, "filter monad identity: |D(V)|=2^|V| for |V|<=4, "
                         "classification bijective with brute-force filters",
                      false, 0, 60000, {}};
    c.parts.push_back(filter_identity_check(filter_ctx, 4, 3));
    finish(c);
  }
  {
    CriterionResult c{2, "proper-filter monad identity: |D(V)|=2^|V|-1 for "
                         "|V|<=3, all elements proper",
                      false, 0, 60000, {}};
    c.parts.push_back(proper_identity_check(proper_ctx, 3, 3));
    finish(c);
  }
  {
    CriterionResult c{3, "ultrafilter monad identity: |D(V)|=|V| for |V|<=4, "
                         "bijective with evaluation elements",
                      false, 0, 30000, {}};
    c.parts.push_back(ultrafilter_identity_check(ultra_ctx, 4));
    finish(c);
  }
  {
    CriterionResult c{4, "matrix theories of R and R^op are mutual commutants",
                      false, 0, 120000, {}};
    for (const FiniteRig& R : rigs)
      c.parts.push_back(
          mutual_commutant_check(R, R.size <= 2 ? 3 : 2));
    finish(c);
  }
  {
    CriterionResult c{5, "matrix theory balanced exactly for commutative rigs",
                      false, 0, 0, {}};
    for (const FiniteRig& R : rigs)
      c.parts.push_back(balance_check(R, R.size <= 2 ? 3 : 2));
    finish(c);
  }
  {
    CriterionResult c{6, "affine cores and pointed module theories are "
                         "mutual commutants",
                      false, 0, 120000, {}};
    for (const char* nm : {"bool2", "z2", "z3"})
      if (const FiniteRig* R = find_rig(nm))
        c.parts.push_back(affine_commutant_check(*R, 2));
    finish(c);
  }
  {
    CriterionResult c{7, "D(n) equals the commutant of the commutant "
                         "generators",
                      false, 0, 0, {}};
    for (std::uint32_t n = 0; n <= 3; ++n) {
      c.parts.push_back(double_commutant_check(filter_ctx, n));
      c.parts.push_back(double_commutant_check(proper_ctx, n));
    }
    for (std::uint32_t n = 0; n <= 4; ++n)
      c.parts.push_back(double_commutant_check(ultra_ctx, n));
    finish(c);
  }
  {
    CriterionResult c{8, "restriction identity: D(n) equals T(n,1) with the "
                         "identity bijection on tables",
                      false, 0, 0, {}};
    for (std::uint32_t n = 0; n <= 3; ++n) {
      c.parts.push_back(restriction_check(filter_ctx, n));
      c.parts.push_back(restriction_check(proper_ctx, n));
      c.parts.push_back(restriction_check(ultra_ctx, n));
    }
    // pinned counts at n = 3
    CheckResult pinned;
    pinned.name = "pinned-counts(n=3)";
    pinned.pass =
        distribution_object(filter_ctx, 3).elements.size() == 8 &&
        distribution_object(proper_ctx, 3).elements.size() == 7 &&
        distribution_object(ultra_ctx, 3).elements.size() == 3;
    pinned.detail = "filter=8 proper=7 initial=3";
    c.parts.push_back(std::move(pinned));
    finish(c);
  }
  {
    CriterionResult c{9, "monad unit laws and associativity, exhaustive",
                      false, 0, 60000, {}};
    c.parts.push_back(monad_laws_check(filter_ctx, 3, 2));
    c.parts.push_back(monad_laws_check(proper_ctx, 3, 2));
    c.parts.push_back(monad_laws_check(ultra_ctx, 3, 3));
    finish(c);
  }
  {
    CriterionResult c{10, "enumeration kernel matches the naive oracle on "
                          "randomized constraint sets",
                      false, 0, 0, {}};
    c.parts.push_back(oracle_equivalence_check(20));
    finish(c);
  }
  {
    CriterionResult c{11, "clone closures reproduce matrix slices and "
                          "verified commutant generators",
                      false, 0, 0, {}};
    std::vector<Context*> ctxs = {&filter_ctx, &proper_ctx, &ultra_ctx};
    c.parts.push_back(closure_crosscheck(rigs, ctxs));
    finish(c);
  }
  return out;
}

}  // namespace finclone
