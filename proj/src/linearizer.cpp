#include "algebroid/linearizer.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "algebroid/errors.hpp"
#include "algebroid/linalg.hpp"

namespace algebroid {

ControlSystem ControlSystem::make(VarContext ctx, VecField f, VecField g) {
  require_same_context(ctx, f.context(), "control system");
  require_same_context(ctx, g.context(), "control system");
  if (g.is_zero()) throw precondition_error("g must not be identically zero");
  return ControlSystem{std::move(ctx), std::move(f), std::move(g)};
}

namespace {

std::vector<Rat> random_point(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  std::vector<Rat> p;
  p.reserve(n);
  for (int i = 0; i < n; ++i) p.emplace_back(num(rng), den(rng));
  return p;
}

// ad_f^j g for j = 0..count-1.
std::vector<VecField> accessibility_chain(const ControlSystem& sys, int count) {
  std::vector<VecField> chain{sys.g};
  for (int j = 1; j < count; ++j) chain.push_back(lie_bracket(sys.f, chain.back()));
  return chain;
}

RatMatrix columns_matrix(const std::vector<VecField>& cols) {
  const int n = cols.front().dimension();
  RatMatrix m(n, std::vector<RatFn>(cols.size()));
  for (size_t c = 0; c < cols.size(); ++c)
    for (int r = 0; r < n; ++r) m[r][c] = cols[c].component(r);
  return m;
}

}  // namespace

Diagnostics classical_check(const ControlSystem& sys, std::uint64_t seed) {
  auto started = std::chrono::steady_clock::now();
  Diagnostics diag;
  const int n = sys.ctx.size();
  auto chain = accessibility_chain(sys, n);
  RatMatrix m = columns_matrix(chain);

  // Rank at seeded sample points, skipping points that hit a pole.
  std::mt19937_64 rng(seed);
  int best = 0;
  for (int trial = 0; trial < 3; ++trial) {
    auto p = random_point(rng, n);
    std::vector<std::vector<Rat>> numeric(n, std::vector<Rat>(n));
    bool ok = true;
    for (int r = 0; r < n && ok; ++r)
      for (int c = 0; c < n && ok; ++c) {
        try {
          numeric[r][c] = m[r][c].evaluate(p);
        } catch (const precondition_error&) {
          ok = false;
        }
      }
    if (ok) best = std::max(best, rational_rank(numeric));
  }
  if (best == n) {
    // Confirm the full-rank verdict with a symbolic minor (the determinant).
    diag.rank_symbolically_confirmed = generic_rank(m) == n;
    diag.rank = diag.rank_symbolically_confirmed ? n : generic_rank(m);
  } else {
    diag.rank = generic_rank(m);
    diag.rank_symbolically_confirmed = true;
    if (diag.rank > best)
      diag.warnings.push_back(
          "sample-point rank underestimated the generic rank; symbolic rank used");
  }
  diag.accessible = diag.rank == n;

  // Involutivity of span(g, ..., ad_f^{n-2} g).
  diag.involutive = true;
  if (n >= 2) {
    std::vector<VecField> dist(chain.begin(), chain.end() - 1);
    RatMatrix span = columns_matrix(dist);
    for (size_t i = 0; i < dist.size() && diag.involutive; ++i)
      for (size_t j = i + 1; j < dist.size() && diag.involutive; ++j) {
        VecField br = lie_bracket(dist[i], dist[j]);
        RatMatrix aug = span;
        for (int r = 0; r < n; ++r) aug[r].push_back(br.component(r));
        if (generic_rank(aug) > generic_rank(span)) diag.involutive = false;
      }
  }
  diag.elapsed_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - started)
                        .count();
  return diag;
}

namespace {

bool contains(const std::vector<KForm>& xs, const KForm& w) {
  return std::find(xs.begin(), xs.end(), w) != xs.end();
}

// All exponent vectors with 1 <= total degree <= max_degree, graded-lex
// ascending so the ansatz solutions come out canonical.
std::vector<Exponents> ansatz_monomials(int n, int max_degree) {
  std::vector<Exponents> all;
  Exponents cur(n, 0);
  // enumerate all exponent vectors with total degree <= max_degree
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == n) {
      all.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[pos] = e;
      rec(pos + 1, left - e);
    }
    cur[pos] = 0;
  };
  rec(0, max_degree);
  all.erase(std::remove_if(all.begin(), all.end(),
                           [](const Exponents& e) {
                             unsigned t = 0;
                             for (unsigned x : e) t += x;
                             return t == 0;
                           }),
            all.end());
  std::sort(all.begin(), all.end(), [](const Exponents& a, const Exponents& b) {
    return graded_lex_greater(b, a);
  });
  return all;
}

// Rows of the linear system expressing sum_i dP/dx_i g_i over the unknown
// coefficients of P; used for both dP.g = 1 and dP.g = 0.
struct AnsatzSystem {
  std::vector<Exponents> unknowns;
  std::vector<Exponents> row_keys;            // monomials of the image
  std::vector<std::vector<Rat>> matrix;       // row-major
};

AnsatzSystem directional_derivative_system(const VecField& g, int max_degree,
                                           int active_dim) {
  const VarContext& ctx = g.context();
  AnsatzSystem sys;
  // Unknown monomials restricted to the first active_dim variables.
  for (auto& e : ansatz_monomials(active_dim, max_degree)) {
    Exponents full(ctx.size(), 0);
    std::copy(e.begin(), e.end(), full.begin());
    sys.unknowns.push_back(std::move(full));
  }
  std::map<Exponents, std::map<size_t, Rat>> rows;
  for (size_t u = 0; u < sys.unknowns.size(); ++u) {
    Poly m = Poly::monomial(ctx, sys.unknowns[u], Rat(1));
    Poly image(ctx);
    for (int i = 0; i < active_dim; ++i) {
      const RatFn& gi = g.component(i);
      if (!gi.is_polynomial())
        throw precondition_error("ansatz requires polynomial g");
      image += m.partial_derivative(i) * gi.num();
    }
    for (const auto& t : image.terms()) rows[t.exp][u] = t.coeff;
  }
  for (auto& [key, entries] : rows) {
    sys.row_keys.push_back(key);
    std::vector<Rat> row(sys.unknowns.size(), Rat(0));
    for (auto& [u, c] : entries) row[u] = c;
    sys.matrix.push_back(std::move(row));
  }
  return sys;
}

std::optional<Poly> exact_pairing_ansatz(const VecField& g, int max_degree) {
  const VarContext& ctx = g.context();
  for (const auto& c : g.components())
    if (!c.is_polynomial()) return std::nullopt;
  AnsatzSystem sys = directional_derivative_system(g, max_degree, ctx.size());
  Exponents zero(ctx.size(), 0);
  std::vector<Rat> rhs;
  rhs.reserve(sys.row_keys.size());
  for (const auto& key : sys.row_keys) rhs.push_back(key == zero ? Rat(1) : Rat(0));
  bool constant_row_present =
      std::find(sys.row_keys.begin(), sys.row_keys.end(), zero) != sys.row_keys.end();
  if (!constant_row_present) return std::nullopt;
  auto sol = solve_rational_system(sys.matrix, rhs);
  if (!sol) return std::nullopt;
  std::vector<Term> terms;
  for (size_t u = 0; u < sys.unknowns.size(); ++u)
    if ((*sol)[u] != 0) terms.push_back({sys.unknowns[u], (*sol)[u]});
  Poly p = Poly::from_terms(ctx, std::move(terms));
  if (p.is_zero()) return std::nullopt;
  return p;
}

}  // namespace

std::vector<KForm> omega_candidates(const VecField& g,
                                    const std::vector<KForm>& hints,
                                    bool final_iteration, int max_degree) {
  const VarContext& ctx = g.context();
  std::vector<KForm> out;
  for (const auto& h : hints) {
    if (h.degree() != 1 || h.is_zero()) continue;
    if (!is_integrable(h)) continue;
    if (pair_form_field(h, g).is_zero()) continue;
    if (!contains(out, h)) out.push_back(h);
  }
  // Coordinate forms with constant nonzero pairing; unit pairings first.
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < ctx.size(); ++j) {
      const RatFn& gj = g.component(j);
      if (gj.is_zero() || !gj.is_constant()) continue;
      Rat c = gj.num().constant_term();
      bool unit = c == 1 || c == -1;
      if ((pass == 0) != unit) continue;
      KForm w = KForm::coordinate(ctx, j);
      if (!contains(out, w)) out.push_back(w);
    }
  }
  if (auto p = exact_pairing_ansatz(g, max_degree)) {
    KForm w = differential(*p);
    if (!pair_form_field(w, g).is_zero() && !contains(out, w)) out.push_back(w);
  }
  if (final_iteration) {
    for (int j = 0; j < ctx.size(); ++j) {
      if (g.component(j).is_zero()) continue;
      KForm w = KForm::coordinate(ctx, j);
      if (!contains(out, w)) out.push_back(w);
    }
  }
  return out;
}

KForm choose_omega(const VecField& g, const std::vector<KForm>& hints,
                   int iteration, bool final_iteration, int max_degree) {
  if (g.is_zero()) throw precondition_error("cannot choose omega for zero g");
  auto cands = omega_candidates(g, hints, final_iteration, max_degree);
  if (cands.empty())
    throw heuristic_exhausted_error("no admissible 1-form found", iteration);
  return cands.front();
}

namespace {

// Symbolic independence of the differentials of the selected functions,
// preceded by a cheap check at a sample point.
bool differentials_independent(const std::vector<Poly>& fs, int active_dim,
                               std::mt19937_64& rng) {
  const VarContext& ctx = fs.front().context();
  const int k = static_cast<int>(fs.size());
  std::vector<std::vector<Rat>> numeric(k, std::vector<Rat>(active_dim));
  auto p = random_point(rng, ctx.size());
  RatMatrix symbolic(k, std::vector<RatFn>(active_dim));
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < active_dim; ++c) {
      Poly d = fs[r].partial_derivative(c);
      numeric[r][c] = d.evaluate(p);
      symbolic[r][c] = RatFn(d);
    }
  if (rational_rank(numeric) == k) return true;
  return generic_rank(symbolic) == k;
}

}  // namespace

PolyMap build_straightening_map(const VecField& g, const KForm& omega,
                                int active_dim, int max_degree,
                                std::uint64_t seed) {
  const VarContext& ctx = g.context();
  const int n = ctx.size();
  if (active_dim < 1 || active_dim > n)
    throw precondition_error("active dimension out of range");
  for (int i = active_dim; i < n; ++i)
    if (!g.component(i).is_zero())
      throw precondition_error("g has components beyond the active dimension");
  for (int i = 0; i < active_dim; ++i) {
    if (!g.component(i).is_polynomial())
      throw precondition_error("straightening ansatz requires polynomial g");
    for (int j = active_dim; j < n; ++j)
      if (g.component(i).num().degree_in(j) > 0)
        throw precondition_error(
            "g depends on projected-out coordinates; supply a chart");
  }
  for (const auto& [tuple, c] : omega.terms()) {
    if (tuple[0] >= active_dim)
      throw precondition_error("omega lives beyond the active dimension");
    for (int j = active_dim; j < n; ++j)
      if (c.num().degree_in(j) > 0 || c.den().degree_in(j) > 0)
        throw precondition_error("omega depends on projected-out coordinates");
  }
  RatFn wg = pair_form_field(omega, g);
  if (wg.is_zero()) throw precondition_error("omega pairs to zero with g");

  // Potential of omega (closed multiples only; heuristics emit exact forms).
  if (!exterior_derivative(omega).is_zero())
    throw heuristic_exhausted_error(
        "cannot derive a potential for a non-closed omega; supply a chart", 0);
  for (const auto& [tuple, c] : omega.terms()) {
    (void)tuple;
    if (!c.is_polynomial())
      throw precondition_error("omega must have polynomial coefficients");
  }
  Poly psi = integrate_exact(omega);

  // First integrals: null space of the directional-derivative system.
  std::mt19937_64 rng(seed);
  AnsatzSystem sys = directional_derivative_system(g, max_degree, active_dim);
  auto basis = rational_nullspace(sys.matrix, static_cast<int>(sys.unknowns.size()));
  std::vector<Poly> candidates;
  for (const auto& v : basis) {
    std::vector<Term> terms;
    for (size_t u = 0; u < sys.unknowns.size(); ++u)
      if (v[u] != 0) terms.push_back({sys.unknowns[u], v[u]});
    Poly p = Poly::from_terms(ctx, std::move(terms));
    if (!p.is_zero()) candidates.push_back(poly_primitive(p));
  }
  // Low degree first; ties by leading monomial so coordinate functions come
  // out in coordinate order.
  std::sort(candidates.begin(), candidates.end(), [](const Poly& a, const Poly& b) {
    if (a.total_degree() != b.total_degree())
      return a.total_degree() < b.total_degree();
    return graded_lex_greater(a.leading_term().exp, b.leading_term().exp);
  });
  std::vector<Poly> selected;
  for (const auto& c : candidates) {
    if (static_cast<int>(selected.size()) == active_dim - 1) break;
    std::vector<Poly> trial = selected;
    trial.push_back(c);
    if (differentials_independent(trial, active_dim, rng)) selected = std::move(trial);
  }
  if (static_cast<int>(selected.size()) != active_dim - 1)
    throw heuristic_exhausted_error(
        "not enough independent first integrals at this ansatz degree", 0);

  selected.push_back(psi);
  if (!differentials_independent(selected, active_dim, rng))
    throw heuristic_exhausted_error(
        "potential is dependent on the first integrals", 0);

  // Charts live in the active prefix context.
  VarContext sub = ctx.prefix(active_dim);
  std::vector<Poly> comps;
  for (auto& p : selected) {
    std::vector<Term> terms;
    for (const auto& t : p.terms())
      terms.push_back({Exponents(t.exp.begin(), t.exp.begin() + active_dim), t.coeff});
    comps.push_back(Poly::from_terms(sub, std::move(terms)));
  }
  return invert_triangular(PolyMap(sub, std::move(comps)));
}

PolyMap normalize_chart(const PolyMap& chart, const VecField& g) {
  const int d = chart.dimension();
  VecField gd = g;
  if (g.dimension() != d) {
    // g lives in a wider context with zero tail; truncate.
    std::vector<RatFn> comps;
    const VarContext sub = g.context().prefix(d);
    for (int i = 0; i < d; ++i) {
      const RatFn& c = g.component(i);
      if (!c.is_polynomial())
        throw precondition_error("chart normalization requires polynomial g");
      std::vector<Term> terms;
      for (const auto& t : c.num().terms())
        terms.push_back({Exponents(t.exp.begin(), t.exp.begin() + d), t.coeff});
      comps.emplace_back(Poly::from_terms(sub, std::move(terms)));
    }
    gd = VecField(sub, std::move(comps));
  }
  std::vector<int> annihilating, transversal;
  for (int i = 0; i < d; ++i) {
    RatFn pairing = lie_derivative(gd, RatFn(chart.component(i)));
    (pairing.is_zero() ? annihilating : transversal).push_back(i);
  }
  if (transversal.size() != 1)
    throw precondition_error(
        "chart must have exactly one component transversal to g");
  std::vector<int> order = annihilating;
  order.push_back(transversal[0]);
  std::vector<Poly> comps;
  for (int i : order) comps.push_back(chart.component(i));
  return invert_triangular(PolyMap(chart.context(), std::move(comps)));
}

// --- 1-form algorithm ------------------------------------------------------

namespace {

// Runs the descending recursion and integration; throws on failure.
void run_phase2(FormTrace& trace) {
  auto& steps = trace.steps;
  const VarContext ctx = steps.front().g.context();
  KForm nu = steps.back().omega;
  steps.back().nu = nu;
  for (int i = static_cast<int>(steps.size()) - 2; i >= 0; --i) {
    RatFn num = pair_form_field(nu, steps[i].g);
    RatFn den = pair_form_field(steps[i].omega, steps[i].g);
    nu = nu - steps[i].omega.scaled(num / den);
    steps[i].nu = nu;
  }
  RatFn factor = pair_form_field(steps.back().omega, steps.back().g);
  trace.integrating_factor = factor;
  KForm scaled = nu.scaled(RatFn::constant(ctx, Rat(1)) / factor);
  for (const auto& [tuple, c] : scaled.terms()) {
    (void)tuple;
    if (!c.is_polynomial())
      throw not_exact_error("scaled form has non-polynomial coefficients",
                            scaled.to_string());
  }
  KForm d = exterior_derivative(scaled);
  if (!d.is_zero())
    throw not_exact_error("scaled form is not closed", d.to_string());
  Poly y = integrate_exact(scaled);
  if (y.is_constant())
    throw not_exact_error("output degenerated to a constant", y.to_string());
  trace.output_raw = y;
  trace.output = canonical_output(y);
}

struct FormSearch {
  const ControlSystem& sys;
  const OmegaHints& hints;
  const LinearizeOptions& opts;
  int n;

  std::vector<KForm> hints_for(int i) const {
    auto it = hints.find(i);
    return it == hints.end() ? std::vector<KForm>{} : it->second;
  }

  // Accepted outputs must linearize the original system completely.
  void verify_output(FormTrace& trace) const {
    int k = verify_relative_degree(RatFn(*trace.output_raw), sys);
    if (k != n)
      throw not_exact_error(
          "output has relative degree " + std::to_string(k) + ", expected " +
              std::to_string(n),
          trace.output_raw->to_string());
  }

  struct SearchStatus {
    std::string why;
    int degenerate_at = -1;  // deepest iteration whose g vanished
    int depth = -1;
  };

  // Extends the trace from iteration i; backtracks across omega candidates.
  // with_phase2 controls whether phase 2 participates in the search.
  bool search(FormTrace& trace, int i, bool with_phase2, SearchStatus& status) const {
    std::string& why = status.why;
    // Copies: the steps vector reallocates as the search deepens.
    const VecField gi = trace.steps.back().g;
    const VecField fi = trace.steps.back().f;
    if (gi.is_zero()) {
      why = "iteration " + std::to_string(i) + ": g vanished";
      if (i > status.depth) {
        status.depth = i;
        status.degenerate_at = i;
      }
      return false;
    }
    if (i > status.depth) {
      status.depth = i;
      status.degenerate_at = -1;
    }
    auto cands =
        omega_candidates(gi, hints_for(i), i == n - 1, opts.max_ansatz_degree);
    if (cands.empty()) {
      why = "iteration " + std::to_string(i) + ": no admissible 1-form";
      return false;
    }
    const size_t at = trace.steps.size() - 1;
    for (const auto& omega : cands) {
      trace.steps[at].omega = omega;
      if (i == n - 1) {
        if (!with_phase2) return true;
        try {
          run_phase2(trace);
          verify_output(trace);
          return true;
        } catch (const algorithm_error& e) {
          why = e.what();
          continue;
        }
      }
      AlgebroidContext actx = AlgebroidContext::make(gi, omega);
      VecField fn = anchor_form(fi, actx);
      VecField gn = anchor_form(lie_bracket(fi, gi), actx);
      trace.steps.push_back(FormIteration{fn, gn, KForm(sys.ctx, 1), std::nullopt});
      if (search(trace, i + 1, with_phase2, status)) return true;
      trace.steps.pop_back();
    }
    return false;
  }

  FormTrace run(bool with_phase2) const {
    FormTrace trace;
    trace.steps.push_back(FormIteration{sys.f, sys.g, KForm(sys.ctx, 1), std::nullopt});
    SearchStatus status;
    status.why = "no candidates";
    if (!search(trace, 0, with_phase2, status)) {
      if (status.degenerate_at >= 0)
        throw degenerate_iteration_error(
            "the reduced input field vanished: " + status.why,
            status.degenerate_at);
      throw heuristic_exhausted_error("linearization search failed: " + status.why, 0);
    }
    // Invariants of phase 1: omega_j annihilates the later f_i and g_i.
    for (size_t i = 0; i < trace.steps.size(); ++i)
      for (size_t j = 0; j < i; ++j) {
        if (!pair_form_field(trace.steps[j].omega, trace.steps[i].f).is_zero() ||
            !pair_form_field(trace.steps[j].omega, trace.steps[i].g).is_zero())
          trace.warnings.push_back("iteration invariant violated: omega_" +
                                   std::to_string(j) + " does not annihilate step " +
                                   std::to_string(i));
      }
    // A nonconstant pairing is only known to be nonzero as a rational
    // function; its zero locus is not certified empty.
    for (size_t i = 0; i < trace.steps.size(); ++i) {
      RatFn p = pair_form_field(trace.steps[i].omega, trace.steps[i].g);
      if (!p.is_constant())
        trace.warnings.push_back(
            "iteration " + std::to_string(i) +
            ": nonvanishing of the pairing is uncertified on the locus " +
            p.to_string() + " = 0");
    }
    return trace;
  }
};

}  // namespace

FormTrace form_algorithm_phase1(const ControlSystem& sys, const OmegaHints& hints,
                                const LinearizeOptions& opts) {
  FormSearch s{sys, hints, opts, sys.ctx.size()};
  return s.run(false);
}

Poly form_algorithm_phase2(FormTrace& trace) {
  if (trace.steps.empty()) throw precondition_error("empty trace");
  run_phase2(trace);
  return *trace.output;
}

FormTrace linearize_by_forms(const ControlSystem& sys, const OmegaHints& hints,
                             const LinearizeOptions& opts) {
  if (!opts.force) {
    Diagnostics diag = classical_check(sys, opts.seed);
    if (!diag.accessible || !diag.involutive)
      throw precondition_error(
          "classical linearizability conditions fail (use force to override)");
  }
  FormSearch s{sys, hints, opts, sys.ctx.size()};
  return s.run(true);
}

// --- chart algorithm -------------------------------------------------------

namespace {

struct ChartSearch {
  const ControlSystem& sys;
  const ChartHints& charts;
  const OmegaHints& omega_hints;
  const LinearizeOptions& opts;
  int n;

  std::vector<KForm> omega_hints_for(int i) const {
    auto it = omega_hints.find(i);
    return it == omega_hints.end() ? std::vector<KForm>{} : it->second;
  }

  // Candidate charts for iteration i acting on the active prefix.
  std::vector<PolyMap> chart_candidates(const VecField& g_embedded, int active_dim,
                                        int i, std::string& why) const {
    std::vector<PolyMap> out;
    auto it = charts.find(i);
    if (it != charts.end()) {
      if (it->second.dimension() != active_dim)
        throw precondition_error("chart hint " + std::to_string(i) +
                                 " has wrong dimension");
      out.push_back(normalize_chart(it->second, g_embedded));
      return out;
    }
    // Build from omega candidates on the truncated g.
    try {
      VecField gd = truncate(g_embedded, active_dim);
      auto omegas = omega_candidates(gd, omega_hints_for(i), false,
                                     opts.max_ansatz_degree);
      for (const auto& w : omegas) {
        try {
          out.push_back(build_straightening_map(gd, w, active_dim,
                                                opts.max_ansatz_degree, opts.seed));
        } catch (const error& e) {
          why = e.what();
        }
      }
    } catch (const error& e) {
      why = e.what();
    }
    return out;
  }

  static VecField truncate(const VecField& v, int d) {
    const VarContext sub = v.context().prefix(d);
    std::vector<RatFn> comps;
    for (int i = 0; i < d; ++i) {
      const RatFn& c = v.component(i);
      for (int j = d; j < v.context().size(); ++j)
        if (c.num().degree_in(j) > 0 || c.den().degree_in(j) > 0)
          throw precondition_error(
              "field depends on projected-out coordinates; supply a chart");
      std::vector<Term> nt, dt;
      for (const auto& t : c.num().terms())
        nt.push_back({Exponents(t.exp.begin(), t.exp.begin() + d), t.coeff});
      for (const auto& t : c.den().terms())
        dt.push_back({Exponents(t.exp.begin(), t.exp.begin() + d), t.coeff});
      comps.emplace_back(Poly::from_terms(sub, nt), Poly::from_terms(sub, dt));
    }
    return VecField(sub, std::move(comps));
  }

  // Anchor through the extended chart: pushforward, then zero the slot of
  // the transversal coordinate (and everything beyond it).
  VecField project(const PolyMap& chart_ext, const VecField& m, int active_dim) const {
    VecField pushed = pushforward(chart_ext, m);
    std::vector<RatFn> comps = pushed.components();
    for (int i = active_dim - 1; i < static_cast<int>(comps.size()); ++i)
      comps[i] = RatFn::zero(m.context());
    return VecField(m.context(), std::move(comps));
  }

  struct SearchStatus {
    std::string why;
    bool ambiguous = false;
  };

  bool search(ChartTrace& trace, int i, SearchStatus& status) const {
    std::string& why = status.why;
    const int active_dim = n - i;
    const size_t at = trace.steps.size() - 1;
    // Copies: the steps vector reallocates as the search deepens.
    const VecField fi = trace.steps[at].f;
    const VecField gi = trace.steps[at].g;
    if (gi.is_zero()) {
      why = "iteration " + std::to_string(i) + ": g vanished";
      return false;
    }
    if (i == n - 1) {
      if (finish(trace, why)) return true;
      if (why == "no composed coordinate has full relative degree")
        status.ambiguous = true;
      return false;
    }
    auto cands = chart_candidates(gi, active_dim, i, why);
    if (cands.empty()) {
      if (why.empty()) why = "iteration " + std::to_string(i) + ": no chart found";
      return false;
    }
    for (const auto& chart : cands) {
      PolyMap ext = extend_identity(chart, sys.ctx);
      VecField pushed_g = pushforward(ext, gi);
      // an(g) = 0: everything except the transversal slot must vanish.
      bool ok = true;
      for (int k = 0; k < n && ok; ++k)
        if (k != active_dim - 1 && !pushed_g.component(k).is_zero()) ok = false;
      if (!ok || pushed_g.component(active_dim - 1).is_zero()) {
        why = "iteration " + std::to_string(i) + ": chart does not straighten g";
        continue;
      }
      trace.steps[at].chart = chart;
      VecField fn = project(ext, fi, active_dim);
      VecField gn = project(ext, lie_bracket(fi, gi), active_dim);
      trace.steps.push_back(ChartIteration{fn, gn, active_dim - 1, std::nullopt});
      if (search(trace, i + 1, status)) return true;
      trace.steps.pop_back();
      trace.steps[at].chart = std::nullopt;
    }
    return false;
  }

  bool finish(ChartTrace& trace, std::string& why) const {
    PolyMap total = PolyMap::identity(sys.ctx);
    for (const auto& step : trace.steps) {
      if (!step.chart) continue;
      total = compose(extend_identity(*step.chart, sys.ctx), total);
    }
    // Select the composed coordinate with full relative degree.
    ControlSystem original{sys.ctx, sys.f, sys.g};
    for (int c = 0; c < n; ++c) {
      const Poly& candidate = total.component(c);
      if (candidate.is_constant()) continue;
      if (verify_relative_degree(RatFn(candidate), original) == n) {
        trace.total = total;
        trace.output_component = c;
        trace.output_raw = candidate;
        trace.output = canonical_output(candidate);
        return true;
      }
    }
    why = "no composed coordinate has full relative degree";
    return false;
  }

  ChartTrace run() const {
    ChartTrace trace;
    trace.steps.push_back(ChartIteration{sys.f, sys.g, n, std::nullopt});
    SearchStatus status;
    if (!search(trace, 0, status)) {
      if (status.ambiguous)
        throw ambiguous_output_error(
            "no composed coordinate has full relative degree");
      throw heuristic_exhausted_error("chart search failed: " + status.why, 0);
    }
    // A nonconstant transversal component is only known to be nonzero as a
    // rational function; its zero locus is not certified empty.
    for (size_t i = 0; i < trace.steps.size(); ++i) {
      if (!trace.steps[i].chart) continue;
      VecField pushed = pushforward(extend_identity(*trace.steps[i].chart, sys.ctx),
                                    trace.steps[i].g);
      const RatFn& transversal = pushed.component(trace.steps[i].active_dim - 1);
      if (!transversal.is_constant())
        trace.warnings.push_back(
            "iteration " + std::to_string(i) +
            ": nonvanishing of the transversal component is uncertified on "
            "the locus " +
            transversal.to_string() + " = 0");
    }
    return trace;
  }
};

}  // namespace

ChartTrace linearize_by_charts(const ControlSystem& sys, const ChartHints& charts,
                               const OmegaHints& omega_hints,
                               const LinearizeOptions& opts) {
  if (!opts.force) {
    Diagnostics diag = classical_check(sys, opts.seed);
    if (!diag.accessible || !diag.involutive)
      throw precondition_error(
          "classical linearizability conditions fail (use force to override)");
  }
  ChartSearch s{sys, charts, omega_hints, opts, sys.ctx.size()};
  return s.run();
}

int verify_relative_degree(const RatFn& y, const ControlSystem& sys) {
  if (y.is_constant()) throw precondition_error("relative degree of a constant");
  const int n = sys.ctx.size();
  RatFn h = y;
  for (int k = 1; k <= n; ++k) {
    if (!lie_derivative(sys.g, h).is_zero()) return k;
    h = lie_derivative(sys.f, h);
  }
  return 0;
}

Poly canonical_output(const Poly& y) {
  Poly out = y - Poly(y.context(), y.constant_term());
  if (out.is_zero()) return out;
  if (out.leading_term().coeff < 0) out = -out;
  return out;
}

std::optional<PolyMap> lie_derivative_map(const ControlSystem& sys, const RatFn& y) {
  std::vector<Poly> rows;
  RatFn h = y;
  for (int k = 0; k < sys.ctx.size(); ++k) {
    if (!h.is_polynomial()) return std::nullopt;
    rows.push_back(h.num());
    h = lie_derivative(sys.f, h);
  }
  return PolyMap(sys.ctx, std::move(rows));
}

}  // namespace algebroid
