#include "biinterp/interp.hpp"

#include <algorithm>

#include "biinterp/rng.hpp"

namespace biinterp {

namespace {

std::vector<std::string> block_names(const std::string& base, int n) {
    std::vector<std::string> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back(base + std::to_string(i));
    return out;
}

Term lit(int id) { return id == 0 ? t_one() : t_elem(id); }

nlohmann::ordered_json tuple_json(const std::vector<int>& t) { return nlohmann::ordered_json(t); }

Formula exists_block(const std::vector<std::string>& block, Formula body) {
    for (auto it = block.rbegin(); it != block.rend(); ++it) body = f_exists(*it, body);
    return body;
}

Formula forall_block(const std::vector<std::string>& block, Formula body) {
    for (auto it = block.rbegin(); it != block.rend(); ++it) body = f_forall(*it, body);
    return body;
}

}  // namespace

// -- exact definable-set checking ----------------------------------------------------

ExactCheckOutcome check_definable_exact(const GroupTable& M, const Formula& f,
                                        const std::vector<std::string>& vars, const ParamEnv& env,
                                        const std::set<std::vector<int>>& expected,
                                        const std::vector<std::vector<int>>& candidates,
                                        const ExactnessOptions& opt, const std::string& salt) {
    ExactCheckOutcome out;
    const int k = static_cast<int>(vars.size());

    long long raw = 1;
    bool over = false;
    for (int i = 0; i < k && !over; ++i) {
        raw *= M.order();
        if (raw > opt.budget) over = true;
    }

    if (!over) {
        try {
            Budget budget{opt.budget, 0};
            auto got = definable_set(M, f, vars, env, budget);
            out.exhaustive = true;
            out.evaluated = raw;
            if (got != expected) {
                out.pass = false;
                std::vector<std::vector<int>> diff;
                std::set_symmetric_difference(got.begin(), got.end(), expected.begin(),
                                              expected.end(), std::back_inserter(diff));
                out.counterexample["tuple"] = tuple_json(diff.front());
                out.counterexample["expected"] = expected.count(diff.front()) > 0;
            }
            return out;
        } catch (const ComplexityCap&) {
            // raw tuple count fit but inner quantifiers did not; fall through
        }
    }

    // Candidate-driven verification: members must satisfy the formula,
    // candidates and seeded random probes must agree with membership. Each
    // probe is one evaluation call with its own budget.
    out.exhaustive = false;
    auto probe = [&](const std::vector<int>& tuple) {
        if (!out.pass) return;
        Assignment assign;
        for (int i = 0; i < k; ++i) assign[vars[i]] = tuple[i];
        bool want = expected.count(tuple) > 0;
        Budget budget{opt.budget, 0};
        bool got = evaluate(M, f, env, assign, budget);
        ++out.evaluated;
        if (got != want) {
            out.pass = false;
            out.counterexample["tuple"] = tuple_json(tuple);
            out.counterexample["expected"] = want;
        }
    };
    for (const auto& tuple : expected) probe(tuple);
    for (const auto& tuple : candidates) probe(tuple);
    SplitMix64 rng(mix_seed(opt.seed, salt));
    for (int i = 0; i < opt.random_probes && out.pass; ++i) {
        std::vector<int> tuple(k);
        for (int c = 0; c < k; ++c) tuple[c] = rng.below_int(M.order());
        probe(tuple);
    }
    return out;
}

// -- subgroup direction -----------------------------------------------------------------

namespace {
Formula rename_single_free(const Formula& f, const std::string& to, int& fresh) {
    auto fv = free_vars(f);
    if (fv.size() != 1) throw Error("formula must have exactly one free variable");
    return instantiate(f, {{*fv.begin(), t_var(to)}}, fresh);
}
}  // namespace

Interpretation interpret_H_in_G(const GroupPtr& G, const Subgroup& H, const Formula& kappa,
                                const ParamEnv& env, const ExactnessOptions& opt) {
    int fresh = 0;
    Formula kx = rename_single_free(kappa, "x0", fresh);

    std::set<std::vector<int>> expected_domain;
    for (int h : H.members) expected_domain.insert({h});
    Budget budget{opt.budget, 0};
    auto defined = definable_set(*G, kx, {"x0"}, env, budget);
    if (defined != expected_domain) {
        std::vector<std::vector<int>> diff;
        std::set_symmetric_difference(defined.begin(), defined.end(), expected_domain.begin(),
                                      expected_domain.end(), std::back_inserter(diff));
        std::string s;
        for (const auto& d : diff) s += (s.empty() ? "" : ",") + std::to_string(d[0]);
        throw KappaMismatch("{" + s + "}");
    }

    Interpretation interp;
    interp.source = subgroup_table(H);
    interp.target = G;
    interp.dim = 1;
    interp.env = env;
    interp.domain_formula = kx;
    interp.mult_formula =
        f_and(f_and(f_and(kx, rename_single_free(kappa, "y0", fresh)),
                    rename_single_free(kappa, "z0", fresh)),
              f_eq(t_mul(t_var("x0"), t_var("y0")), t_var("z0")));
    interp.coord_map.reserve(H.members.size());
    for (int h : H.members) interp.coord_map.push_back({h});

    interp.domain_check = {true, true, static_cast<long long>(G->order()), nullptr};
    std::set<std::vector<int>> expected_mult;
    std::vector<std::vector<int>> candidates;
    for (int a : H.members)
        for (int b : H.members) expected_mult.insert({a, b, G->mul(a, b)});
    interp.mult_check = check_definable_exact(*G, interp.mult_formula, {"x0", "y0", "z0"}, env,
                                              expected_mult, candidates, opt, "h-in-g-mult");
    if (!interp.mult_check.pass)
        throw FormulaExactnessFailure(interp.mult_check.counterexample.dump());
    return interp;
}

// -- conjugation formulas ------------------------------------------------------------------

Formula sigma_defining_formula(const GroupPtr& H, const std::vector<int>& sigma) {
    const int n = H->order();
    if (static_cast<int>(sigma.size()) != n) throw NotAutomorphism();
    std::vector<char> hit(n, false);
    for (int v : sigma) {
        if (v < 0 || v >= n || hit[v]) throw NotAutomorphism();
        hit[v] = true;
    }
    if (sigma[0] != 0) throw NotAutomorphism();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (sigma[H->mul(a, b)] != H->mul(sigma[a], sigma[b])) throw NotAutomorphism();

    for (int c = 0; c < n; ++c) {
        bool inner = true;
        for (int a = 0; a < n && inner; ++a)
            inner = sigma[a] == H->mul(H->mul(c, a), H->inv(c));
        if (inner)
            return f_eq(t_var("y"), t_mul(t_mul(t_elem(c), t_var("x")), t_inv(t_elem(c))));
    }
    std::vector<Formula> rows;
    rows.reserve(n);
    for (int a = 0; a < n; ++a)
        rows.push_back(f_and(f_eq(t_var("x"), lit(a)), f_eq(t_var("y"), lit(sigma[a]))));
    return f_or_all(rows);
}

// -- tuple direction -------------------------------------------------------------------------

namespace {

/// Codec data re-indexed to the subgroup-view table, plus the formula
/// builders shared by the interpretation, the re-embedding checks and the
/// conjugation recovery.
struct LocalCodec {
    const GammaCodec& codec;
    const ExtensionData& ext;
    GroupPtr hview;
    int width;
    int rows;  // coset rows: m in Standard, 2 in Star
    std::vector<std::vector<int>> c_loc;
    std::vector<std::vector<int>> sigma_loc;
    std::vector<std::vector<int>> coord;  // g -> local tuple

    explicit LocalCodec(const GammaCodec& cdc)
        : codec(cdc), ext(*cdc.ext), hview(subgroup_table(cdc.ext->H)), width(cdc.width) {
        rows = cdc.mode == GammaMode::Star ? 2 : ext.m;
        const Subgroup& H = ext.H;
        c_loc.assign(ext.m, std::vector<int>(ext.m));
        for (int i = 0; i < ext.m; ++i)
            for (int j = 0; j < ext.m; ++j) c_loc[i][j] = H.local(ext.c[i][j]);
        sigma_loc.assign(ext.m, std::vector<int>(H.size()));
        for (int i = 0; i < ext.m; ++i)
            for (int a = 0; a < H.size(); ++a) sigma_loc[i][a] = H.local(ext.conj[i][a]);
        coord.resize(ext.G->order());
        for (int g = 0; g < ext.G->order(); ++g) coord[g] = localize(codec.encode_of[g]);
    }

    std::vector<int> localize(const std::vector<int>& tuple) const {
        std::vector<int> out(tuple.size());
        for (size_t i = 0; i < tuple.size(); ++i) out[i] = ext.H.local(tuple[i]);
        return out;
    }

    /// Slot layout with H-local ids.
    std::vector<std::optional<int>> shape(int coset, bool unit) const {
        auto s = codec.row_shape(coset, unit);
        for (auto& v : s)
            if (v) v = ext.H.local(*v);
        return s;
    }

    /// Membership pattern of one row: fixed slots pinned, payload slot != 1.
    Formula row_pattern(const std::vector<std::string>& block, int coset, bool unit) const {
        auto sh = shape(coset, unit);
        std::vector<Formula> conj;
        for (int s = 0; s < width; ++s) {
            if (sh[s])
                conj.push_back(f_eq(t_var(block[s]), lit(*sh[s])));
            else
                conj.push_back(f_not(f_eq(t_var(block[s]), t_one())));
        }
        return f_and_all(conj);
    }

    /// The z-block equals the row of coset r carrying the product w: the
    /// payload row when w != 1, the unit row when w = 1.
    Formula row_value(const std::vector<std::string>& zblock, int r, const Term& w) const {
        auto pay = shape(r, false);
        auto uni = shape(r, true);
        std::vector<Formula> payload{f_not(f_eq(w, t_one()))};
        for (int s = 0; s < width; ++s)
            payload.push_back(pay[s] ? f_eq(t_var(zblock[s]), lit(*pay[s]))
                                     : f_eq(t_var(zblock[s]), w));
        std::vector<Formula> unit{f_eq(w, t_one())};
        for (int s = 0; s < width; ++s) unit.push_back(f_eq(t_var(zblock[s]), lit(*uni[s])));
        return f_or(f_and_all(payload), f_and_all(unit));
    }

    int payload_slot(int coset) const {
        auto sh = shape(coset, false);
        for (int s = 0; s < width; ++s)
            if (!sh[s]) return s;
        throw Error("row has no payload slot");
    }

    Formula domain_formula(const std::vector<std::string>& block) const {
        std::vector<Formula> rows_f;
        for (int i = 0; i < rows; ++i) {
            rows_f.push_back(row_pattern(block, i, false));
            rows_f.push_back(row_pattern(block, i, true));
        }
        return f_or_all(rows_f);
    }

    Formula mult_formula(const std::vector<std::string>& xb, const std::vector<std::string>& yb,
                         const std::vector<std::string>& zb, int& fresh) const {
        std::vector<Formula> cases;
        for (int i = 0; i < rows; ++i)
            for (bool ua : {false, true})
                for (int j = 0; j < rows; ++j)
                    for (bool ub : {false, true}) {
                        std::vector<Term> factors;
                        if (!ua) factors.push_back(t_var(xb[payload_slot(i)]));
                        if (!ub) factors.push_back(t_var("s"));
                        factors.push_back(lit(c_loc[i][j]));
                        Formula value = row_value(zb, ext.k[i][j], t_mul(factors));
                        if (!ub) {
                            Formula graph = sigma_defining_formula(hview, sigma_loc[i]);
                            graph = instantiate(
                                graph, {{"x", t_var(yb[payload_slot(j)])}, {"y", t_var("s")}},
                                fresh);
                            value = f_exists("s", f_and(graph, value));
                        }
                        cases.push_back(f_and(
                            f_and(row_pattern(xb, i, ua), row_pattern(yb, j, ub)), value));
                    }
        return f_or_all(cases);
    }

    /// The composed self-map of H: h -> encoding of h (coset row 0).
    Formula reembedding_formula(const std::string& xvar,
                                const std::vector<std::string>& block) const {
        auto pay = shape(0, false);
        auto uni = shape(0, true);
        std::vector<Formula> nontriv{f_not(f_eq(t_var(xvar), t_one()))};
        for (int s = 0; s < width; ++s)
            nontriv.push_back(pay[s] ? f_eq(t_var(block[s]), lit(*pay[s]))
                                     : f_eq(t_var(block[s]), t_var(xvar)));
        std::vector<Formula> triv{f_eq(t_var(xvar), t_one())};
        for (int s = 0; s < width; ++s) triv.push_back(f_eq(t_var(block[s]), lit(*uni[s])));
        return f_or(f_and_all(nontriv), f_and_all(triv));
    }

    /// The composed self-map of G, with the coset membership read through
    /// kappa: kappa(x * t_i^-1) and x != t_i select the payload rows.
    Formula group_reembedding_formula(const Formula& kappa_x0, const std::string& xvar,
                                      const std::vector<std::string>& block, int& fresh) const {
        std::vector<Formula> cases;
        for (int i = 0; i < rows; ++i) {
            int t = ext.transversal[i];
            Term xt = t == 0 ? Term(t_var(xvar)) : t_mul(t_var(xvar), t_inv(t_elem(t)));
            auto pay = codec.row_shape(i, false);  // parent-id shapes: formula lives over G
            std::vector<Formula> conj;
            for (int s = 0; s < width; ++s)
                conj.push_back(pay[s] ? f_eq(t_var(block[s]), lit(*pay[s]))
                                      : f_eq(t_var(block[s]), xt));
            conj.push_back(f_not(f_eq(t_var(xvar), lit(t))));
            conj.push_back(instantiate(kappa_x0, {{"x0", xt}}, fresh));
            cases.push_back(f_and_all(conj));

            auto uni = codec.row_shape(i, true);
            std::vector<Formula> conj2{f_eq(t_var(xvar), lit(t))};
            for (int s = 0; s < width; ++s)
                conj2.push_back(f_eq(t_var(block[s]), lit(*uni[s])));
            cases.push_back(f_and_all(conj2));
        }
        return f_or_all(cases);
    }
};

}  // namespace

Interpretation interpret_G_in_H(const ExtensionPtr& ext, const GammaCodec& codec,
                                const ExactnessOptions& opt) {
    if (!codec.bijective())
        throw FormulaExactnessFailure("encoding is not injective; no interpretation exists");
    LocalCodec lc(codec);
    Interpretation interp;
    interp.source = ext->G;
    interp.target = lc.hview;
    interp.dim = codec.width;

    auto xb = block_names("x", interp.dim);
    auto yb = block_names("y", interp.dim);
    auto zb = block_names("z", interp.dim);
    int fresh = 0;
    interp.domain_formula = lc.domain_formula(xb);
    interp.mult_formula = lc.mult_formula(xb, yb, zb, fresh);
    interp.coord_map = lc.coord;

    const GroupTable& G = *ext->G;
    std::set<std::vector<int>> expected_domain(lc.coord.begin(), lc.coord.end());
    interp.domain_check = check_definable_exact(*interp.target, interp.domain_formula, xb, {},
                                                expected_domain, {}, opt, "g-in-h-domain");
    if (!interp.domain_check.pass)
        throw FormulaExactnessFailure("domain: " + interp.domain_check.counterexample.dump());

    std::set<std::vector<int>> expected_mult;
    std::vector<std::vector<int>> candidates;
    candidates.reserve(static_cast<size_t>(G.order()) * G.order() * G.order());
    auto concat3 = [](const std::vector<int>& a, const std::vector<int>& b,
                      const std::vector<int>& c) {
        std::vector<int> t;
        t.reserve(a.size() * 3);
        t.insert(t.end(), a.begin(), a.end());
        t.insert(t.end(), b.begin(), b.end());
        t.insert(t.end(), c.begin(), c.end());
        return t;
    };
    for (int a = 0; a < G.order(); ++a)
        for (int b = 0; b < G.order(); ++b)
            expected_mult.insert(concat3(lc.coord[a], lc.coord[b], lc.coord[G.mul(a, b)]));
    for (int a = 0; a < G.order(); ++a)
        for (int b = 0; b < G.order(); ++b)
            for (int c = 0; c < G.order(); ++c)
                candidates.push_back(concat3(lc.coord[a], lc.coord[b], lc.coord[c]));
    std::vector<std::string> xyz;
    for (const auto& blk : {xb, yb, zb}) xyz.insert(xyz.end(), blk.begin(), blk.end());
    interp.mult_check = check_definable_exact(*interp.target, interp.mult_formula, xyz, {},
                                              expected_mult, candidates, opt, "g-in-h-mult");
    if (!interp.mult_check.pass)
        throw FormulaExactnessFailure("mult: " + interp.mult_check.counterexample.dump());
    return interp;
}

// -- translation --------------------------------------------------------------------------

namespace {

struct Translator {
    const Interpretation& I;
    TranslationResult& out;
    int fresh_v = 0;
    int fresh_q = 0;
    int fresh_u = 0;
    std::vector<std::pair<std::string, std::vector<std::string>>> bound_blocks;

    std::vector<std::string> fresh_block(const std::string& prefix, int& counter) {
        return block_names(prefix + std::to_string(counter++) + "_", I.dim);
    }

    std::vector<Term> literal_block(int source_elem) {
        if (source_elem < 0 || source_elem >= I.source->order())
            throw BadElementLiteral(source_elem);
        std::vector<Term> ts;
        for (int v : I.coord_map[source_elem]) ts.push_back(lit(v));
        return ts;
    }

    std::vector<Term> vars_of(const std::vector<std::string>& names) {
        std::vector<Term> ts;
        ts.reserve(names.size());
        for (const auto& n : names) ts.push_back(t_var(n));
        return ts;
    }

    Formula apply_mult(const std::vector<Term>& a, const std::vector<Term>& b,
                       const std::vector<Term>& c) {
        std::map<std::string, Term> subst;
        for (int i = 0; i < I.dim; ++i) {
            subst["x" + std::to_string(i)] = a[i];
            subst["y" + std::to_string(i)] = b[i];
            subst["z" + std::to_string(i)] = c[i];
        }
        return instantiate(I.mult_formula, subst, fresh_q);
    }

    Formula apply_domain(const std::vector<std::string>& block) {
        std::map<std::string, Term> subst;
        for (int i = 0; i < I.dim; ++i) subst["x" + std::to_string(i)] = t_var(block[i]);
        return instantiate(I.domain_formula, subst, fresh_q);
    }

    // Flattens a source term to a block of target terms, materializing each
    // Mul/Inv as a fresh v-block with its defining constraint.
    std::vector<Term> flatten(const Term& t,
                              std::vector<std::pair<std::vector<std::string>, Formula>>& cs) {
        switch (t->kind) {
            case TermKind::One: return literal_block(0);
            case TermKind::Elem: return literal_block(t->elem);
            case TermKind::Param: {
                auto it = out.param_blocks.find(t->name);
                if (it == out.param_blocks.end()) {
                    out.param_order.push_back(t->name);
                    it = out.param_blocks.emplace(t->name, block_names(t->name + "_", I.dim)).first;
                }
                std::vector<Term> ts;
                for (const auto& n : it->second) ts.push_back(t_param(n));
                return ts;
            }
            case TermKind::Var: {
                for (auto b = bound_blocks.rbegin(); b != bound_blocks.rend(); ++b)
                    if (b->first == t->name) return vars_of(b->second);
                auto it = out.var_blocks.find(t->name);
                if (it == out.var_blocks.end())
                    it = out.var_blocks.emplace(t->name, fresh_block("u", fresh_u)).first;
                return vars_of(it->second);
            }
            case TermKind::Mul: {
                auto a = flatten(t->a, cs);
                auto b = flatten(t->b, cs);
                auto block = fresh_block("v", fresh_v);
                cs.emplace_back(block, apply_mult(a, b, vars_of(block)));
                return vars_of(block);
            }
            case TermKind::Inv: {
                auto a = flatten(t->a, cs);
                auto block = fresh_block("v", fresh_v);
                cs.emplace_back(block, apply_mult(a, vars_of(block), literal_block(0)));
                return vars_of(block);
            }
        }
        throw Error("unreachable");
    }

    Formula walk(const Formula& f) {
        switch (f->kind) {
            case FormulaKind::Eq: {
                std::vector<std::pair<std::vector<std::string>, Formula>> cs;
                auto a = flatten(f->t1, cs);
                auto b = flatten(f->t2, cs);
                std::vector<Formula> eqs;
                for (int i = 0; i < I.dim; ++i) eqs.push_back(f_eq(a[i], b[i]));
                Formula body = f_and_all(eqs);
                for (auto it = cs.rbegin(); it != cs.rend(); ++it)
                    body = exists_block(it->first, f_and(it->second, body));
                return body;
            }
            case FormulaKind::Not: return f_not(walk(f->a));
            case FormulaKind::And: return f_and(walk(f->a), walk(f->b));
            case FormulaKind::Or: return f_or(walk(f->a), walk(f->b));
            case FormulaKind::Implies: return f_implies(walk(f->a), walk(f->b));
            case FormulaKind::Forall:
            case FormulaKind::Exists: {
                auto block = fresh_block("u", fresh_u);
                bound_blocks.emplace_back(f->var, block);
                Formula body = walk(f->a);
                bound_blocks.pop_back();
                Formula dom = apply_domain(block);
                if (f->kind == FormulaKind::Forall)
                    return forall_block(block, f_implies(dom, body));
                return exists_block(block, f_and(dom, body));
            }
        }
        throw Error("unreachable");
    }
};

}  // namespace

TranslationResult translate(const Formula& phi, const Interpretation& interp) {
    TranslationResult out;
    out.dim = interp.dim;
    Translator tr{interp, out, 0, 0, 0, {}};
    out.psi = tr.walk(phi);
    out.r = static_cast<int>(out.param_order.size());
    out.s = out.dim * out.r;
    return out;
}

ParamEnv beta_env(const TranslationResult& tr, const Interpretation& interp,
                  const ParamEnv& source_env) {
    ParamEnv env = interp.env;
    for (const auto& p : tr.param_order) {
        auto it = source_env.find(p);
        if (it == source_env.end()) throw UnboundParameter(p);
        if (it->second < 0 || it->second >= interp.source->order())
            throw BadElementLiteral(it->second);
        const auto& block = tr.param_blocks.at(p);
        for (int i = 0; i < interp.dim; ++i) env[block[i]] = interp.coord_map[it->second][i];
    }
    return env;
}

Assignment block_assignment(const TranslationResult& tr, const Interpretation& interp,
                            const std::map<std::string, int>& source_values) {
    Assignment assign;
    for (const auto& [var, val] : source_values) {
        const auto& block = tr.var_blocks.at(var);
        for (int i = 0; i < interp.dim; ++i) assign[block[i]] = interp.coord_map[val][i];
    }
    return assign;
}

// -- conjugation recovery -----------------------------------------------------------------

ConditionAResult condition_a_from_b(const Interpretation& g_in_h, int t, const ExtensionData& ext,
                                    const ExactnessOptions& opt) {
    const GroupTable& G = *ext.G;
    if (t < 0 || t >= G.order()) throw BadElementLiteral(t);

    Formula phi = f_eq(t_mul(t_var("a"), t_elem(t)), t_mul(t_elem(t), t_var("b")));
    TranslationResult tr = translate(phi, g_in_h);

    const Subgroup& H = ext.H;
    const auto& ablock = tr.var_blocks.at("a");
    const auto& bblock = tr.var_blocks.at("b");

    // Build mu(x, block) from the coset-0 coordinates of H-elements.
    auto mu = [&](const std::string& xvar, const std::vector<std::string>& block) {
        // encode(h) for h in H: payload row at coset 0 or its unit row.
        std::vector<int> pay = g_in_h.coord_map[H.members[1]];
        std::vector<int> uni = g_in_h.coord_map[0];
        int payload_slot = -1;
        for (size_t s = 0; s < pay.size(); ++s)
            if (uni[s] == 0 && pay[s] != 0) payload_slot = static_cast<int>(s);
        std::vector<Formula> nontriv{f_not(f_eq(t_var(xvar), t_one()))};
        std::vector<Formula> triv{f_eq(t_var(xvar), t_one())};
        for (size_t s = 0; s < pay.size(); ++s) {
            if (static_cast<int>(s) == payload_slot)
                nontriv.push_back(f_eq(t_var(block[s]), t_var(xvar)));
            else
                nontriv.push_back(f_eq(t_var(block[s]), lit(pay[s])));
            triv.push_back(f_eq(t_var(block[s]), lit(uni[s])));
        }
        return f_or(f_and_all(nontriv), f_and_all(triv));
    };

    Formula chi = tr.psi;
    chi = exists_block(bblock, f_and(mu("y", bblock), chi));
    chi = exists_block(ablock, f_and(mu("x", ablock), chi));

    std::set<std::vector<int>> expected;
    for (int a = 0; a < H.size(); ++a) {
        int h = H.members[a];
        int image = G.mul(G.mul(G.inv(t), h), t);
        expected.insert({a, H.local(image)});
    }
    ConditionAResult res;
    res.chi = chi;
    res.check = check_definable_exact(*g_in_h.target, chi, {"x", "y"}, g_in_h.env, expected, {},
                                      opt, "condition-a-t" + std::to_string(t));
    if (!res.check.pass) throw GraphMismatch(res.check.counterexample.dump());
    return res;
}

// -- the end-to-end pipeline -------------------------------------------------------------------

VerificationReport verify_biinterpretation(const GroupPtr& G, const Subgroup& H,
                                           const Formula& kappa, const ParamEnv& env,
                                           const PipelineOptions& opts) {
    VerificationReport rep;
    rep.instance = opts.label;
    rep.pass_label = "bi-interpretable";
    rep.fail_label = "not-bi-interpretable";
    ExactnessOptions eopt{opts.budget, mix_seed(opts.seed, opts.label), opts.random_probes};

    ExtensionPtr ext;
    GammaCodec codec;
    std::optional<Interpretation> h_in_g, g_in_h;
    int fresh = 0;
    bool alive = true;

    {
        auto& step = rep.add("extension_identities");
        try {
            ext = extension_data(G, H);
            if (opts.inject_cocycle_fault) {
                auto broken = std::make_shared<ExtensionData>(*ext);
                // Replace c[2][2] (1-based) by a different member of H.
                int idx = H.local(broken->c[1][1]);
                broken->c[1][1] = H.members[(idx + 1) % H.size()];
                ext = broken;
            }
            VerificationReport idrep = verify_extension_identities(*ext);
            step.pass = idrep.all_pass();
            auto detail = nlohmann::ordered_json::array();
            for (const auto& s : idrep.steps) {
                nlohmann::ordered_json e;
                e["identity"] = s.name;
                e["pass"] = s.pass;
                if (!s.pass) e["counterexample"] = s.counterexample;
                detail.push_back(std::move(e));
            }
            step.detail["identities"] = std::move(detail);
            step.detail["extension"] = extension_to_json(*ext);
            if (!step.pass) {
                for (const auto& s : idrep.steps)
                    if (!s.pass) {
                        step.counterexample = s.counterexample;
                        step.counterexample["identity"] = s.name;
                        break;
                    }
            }
        } catch (const Error& e) {
            step.pass = false;
            step.counterexample["error"] = e.what();
        }
        alive = step.pass;
    }

    {
        auto& step = rep.add("tuple_encoding_isomorphism");
        if (!alive) {
            step.skipped = true;
        } else {
            try {
                codec = build_codec(ext, opts.mode);
                step.detail["mode"] = codec.mode == GammaMode::Star ? "star" : "standard";
                step.detail["xi"] = codec.xi;
                step.detail["width"] = codec.width;
                step.pass = true;
                if (!codec.bijective()) {
                    step.pass = false;
                    auto arr = nlohmann::ordered_json::array();
                    for (const auto& [g1, g2] : codec.collisions) {
                        nlohmann::ordered_json e;
                        e["g1"] = g1;
                        e["g2"] = g2;
                        e["tuple"] = codec.encode_of[g1];
                        arr.push_back(std::move(e));
                    }
                    step.counterexample["collisions"] = std::move(arr);
                } else if (static_cast<int>(codec.tuples.size()) != G->order()) {
                    step.pass = false;
                    step.counterexample["error"] = "image size differs from group order";
                } else {
                    for (int a = 0; a < G->order() && step.pass; ++a) {
                        if (decode(codec, codec.encode_of[a]) != a) {
                            step.pass = false;
                            step.counterexample["decode_failure"] = a;
                            break;
                        }
                        for (int b = 0; b < G->order() && step.pass; ++b) {
                            auto want = codec.encode_of[G->mul(a, b)];
                            auto by_cases = gamma_op(codec, codec.encode_of[a], codec.encode_of[b]);
                            auto generic =
                                gamma_op_generic(codec, codec.encode_of[a], codec.encode_of[b]);
                            if (by_cases != want || generic != want) {
                                step.pass = false;
                                step.counterexample["g1"] = a;
                                step.counterexample["g2"] = b;
                                step.counterexample["case_path"] = by_cases;
                                step.counterexample["generic_path"] = generic;
                                step.counterexample["expected"] = want;
                            }
                        }
                    }
                }
            } catch (const Error& e) {
                step.pass = false;
                step.counterexample["error"] = e.what();
            }
            alive = step.pass;
        }
    }

    {
        auto& step = rep.add("interpretation_exactness");
        if (!alive) {
            step.skipped = true;
        } else {
            try {
                h_in_g = interpret_H_in_G(G, H, kappa, env, eopt);
                g_in_h = interpret_G_in_H(ext, codec, eopt);
                step.pass = true;
                auto side = [](const Interpretation& in) {
                    nlohmann::ordered_json j;
                    j["dim"] = in.dim;
                    j["domain_formula"] = pretty(in.domain_formula);
                    j["mult_formula_nodes"] = node_count(in.mult_formula);
                    j["domain_exhaustive"] = in.domain_check.exhaustive;
                    j["mult_exhaustive"] = in.mult_check.exhaustive;
                    j["mult_evaluated"] = in.mult_check.evaluated;
                    return j;
                };
                step.detail["subgroup_in_group"] = side(*h_in_g);
                step.detail["group_in_subgroup"] = side(*g_in_h);
                step.witness_formula = pretty(g_in_h->mult_formula);
            } catch (const Error& e) {
                step.pass = false;
                step.counterexample["error"] = e.what();
            }
            alive = step.pass;
        }
    }

    {
        auto& step = rep.add("subgroup_reembedding_definable");
        if (!alive) {
            step.skipped = true;
        } else {
            LocalCodec lc(codec);
            auto block = block_names("b", codec.width);
            Formula mu = lc.reembedding_formula("x", block);
            std::vector<std::string> vars{"x"};
            vars.insert(vars.end(), block.begin(), block.end());
            std::set<std::vector<int>> expected;
            for (int a = 0; a < H.size(); ++a) {
                std::vector<int> row{a};
                const auto& img = lc.coord[H.members[a]];
                row.insert(row.end(), img.begin(), img.end());
                expected.insert(row);
            }
            auto outcome = check_definable_exact(*lc.hview, mu, vars, {}, expected, {}, eopt,
                                                 "subgroup-reembedding");
            step.pass = outcome.pass;
            step.witness_formula = pretty(mu);
            step.detail["exhaustive"] = outcome.exhaustive;
            if (!outcome.pass) step.counterexample = outcome.counterexample;
            alive = step.pass;
        }
    }

    {
        auto& step = rep.add("group_reembedding_definable");
        if (!alive) {
            step.skipped = true;
        } else {
            LocalCodec lc(codec);
            Formula kx = instantiate(kappa, {{*free_vars(kappa).begin(), t_var("x0")}}, fresh);
            auto block = block_names("b", codec.width);
            Formula nu = lc.group_reembedding_formula(kx, "x", block, fresh);
            std::vector<std::string> vars{"x"};
            vars.insert(vars.end(), block.begin(), block.end());
            std::set<std::vector<int>> expected;
            for (int g = 0; g < G->order(); ++g) {
                std::vector<int> row{g};
                row.insert(row.end(), codec.encode_of[g].begin(), codec.encode_of[g].end());
                expected.insert(row);
            }
            std::vector<std::vector<int>> candidates;
            for (int g = 0; g < G->order(); ++g)
                for (int g2 = 0; g2 < G->order(); ++g2) {
                    std::vector<int> row{g};
                    row.insert(row.end(), codec.encode_of[g2].begin(), codec.encode_of[g2].end());
                    candidates.push_back(std::move(row));
                }
            auto outcome = check_definable_exact(*G, nu, vars, env, expected, candidates, eopt,
                                                 "group-reembedding");
            step.pass = outcome.pass;
            step.witness_formula = pretty(nu);
            step.detail["exhaustive"] = outcome.exhaustive;
            if (!outcome.pass) step.counterexample = outcome.counterexample;
            alive = step.pass;
        }
    }

    {
        auto& step = rep.add("conjugation_definable");
        if (!alive) {
            step.skipped = true;
        } else {
            step.pass = true;
            auto arr = nlohmann::ordered_json::array();
            for (int i = 0; i < ext->m && step.pass; ++i) {
                int t = ext->transversal[i];
                try {
                    ConditionAResult res = condition_a_from_b(*g_in_h, t, *ext, eopt);
                    nlohmann::ordered_json e;
                    e["t"] = t;
                    e["pass"] = true;
                    e["formula_nodes"] = node_count(res.chi);
                    arr.push_back(std::move(e));
                } catch (const Error& e) {
                    step.pass = false;
                    step.counterexample["t"] = t;
                    step.counterexample["error"] = e.what();
                }
            }
            step.detail["per_transversal"] = std::move(arr);
        }
    }

    return rep;
}

// -- translation suite ------------------------------------------------------------------------

nlohmann::ordered_json SuiteResult::to_json() const {
    nlohmann::ordered_json j;
    j["total"] = total;
    j["checked"] = checked;
    j["skipped"] = skipped;
    j["failed"] = failed;
    j["failures"] = failures;
    return j;
}

SuiteResult translation_suite(const Interpretation& interp, int n, std::uint64_t seed,
                              long long budget) {
    const GroupTable& G = *interp.source;
    const GroupTable& T = *interp.target;
    std::vector<Formula> sentences{
        parse_formula("forall x. forall y. x*y = y*x"),
        parse_formula("exists x. !(x = 1)"),
        parse_formula("forall x. x*x*x = 1"),
        parse_formula("exists x. x*x = 1 & !(x = 1)"),
    };
    SplitMix64 rng(mix_seed(seed, "translation-suite"));
    for (int i = 0; i < n; ++i) sentences.push_back(random_sentence(rng, G));

    SuiteResult res;
    res.total = static_cast<int>(sentences.size());
    for (const auto& phi : sentences) {
        TranslationResult tr = translate(phi, interp);
        bool source_true, target_true;
        try {
            Budget b{budget, 0};
            source_true = evaluate(G, phi, {}, {}, b);
            Budget b2{budget, 0};
            target_true = evaluate(T, tr.psi, beta_env(tr, interp, {}), {}, b2);
        } catch (const ComplexityCap&) {
            ++res.skipped;
            continue;
        }
        ++res.checked;
        if (source_true != target_true) {
            ++res.failed;
            nlohmann::ordered_json e;
            e["phi"] = pretty(phi);
            e["source_true"] = source_true;
            e["target_true"] = target_true;
            res.failures.push_back(std::move(e));
        }
    }
    return res;
}

}  // namespace biinterp
