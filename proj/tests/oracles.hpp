#pragma once

// Test-side oracles, independent of the library code paths they check.

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "biinterp/folog.hpp"
#include "biinterp/group.hpp"

namespace oracles {

using namespace biinterp;

// Plain recursive FO evaluation: no short-circuiting, no budget, fresh
// assignment maps at each quantifier. Deliberately naive.
inline int ref_eval_term(const GroupTable& M, const Term& t, const ParamEnv& env,
                         const std::map<std::string, int>& asg) {
    switch (t->kind) {
        case TermKind::One: return 0;
        case TermKind::Var: return asg.at(t->name);
        case TermKind::Param: return env.at(t->name);
        case TermKind::Elem: return t->elem;
        case TermKind::Mul:
            return M.mul(ref_eval_term(M, t->a, env, asg), ref_eval_term(M, t->b, env, asg));
        case TermKind::Inv: return M.inv(ref_eval_term(M, t->a, env, asg));
    }
    return 0;
}

inline bool ref_eval(const GroupTable& M, const Formula& f, const ParamEnv& env,
                     const std::map<std::string, int>& asg) {
    switch (f->kind) {
        case FormulaKind::Eq:
            return ref_eval_term(M, f->t1, env, asg) == ref_eval_term(M, f->t2, env, asg);
        case FormulaKind::Not: return !ref_eval(M, f->a, env, asg);
        case FormulaKind::And: {
            bool a = ref_eval(M, f->a, env, asg);
            bool b = ref_eval(M, f->b, env, asg);
            return a && b;
        }
        case FormulaKind::Or: {
            bool a = ref_eval(M, f->a, env, asg);
            bool b = ref_eval(M, f->b, env, asg);
            return a || b;
        }
        case FormulaKind::Implies: {
            bool a = ref_eval(M, f->a, env, asg);
            bool b = ref_eval(M, f->b, env, asg);
            return !a || b;
        }
        case FormulaKind::Forall: {
            bool all = true;
            for (int v = 0; v < M.order(); ++v) {
                auto asg2 = asg;
                asg2[f->var] = v;
                all = ref_eval(M, f->a, env, asg2) && all;
            }
            return all;
        }
        case FormulaKind::Exists: {
            bool any = false;
            for (int v = 0; v < M.order(); ++v) {
                auto asg2 = asg;
                asg2[f->var] = v;
                any = ref_eval(M, f->a, env, asg2) || any;
            }
            return any;
        }
    }
    return false;
}

// Isomorphism A -> B extending tuple -> tuple2, found by propagating the
// homomorphism condition over a partial map until it stabilizes, then
// checking totality, bijectivity and multiplicativity outright. Returns
// nothing when the propagation conflicts or does not close.
inline std::optional<std::vector<int>> tuple_iso(const GroupTable& A, const std::vector<int>& t,
                                                 const GroupTable& B,
                                                 const std::vector<int>& t2) {
    if (t.size() != t2.size() || A.order() != B.order()) return std::nullopt;
    const int n = A.order();
    std::vector<int> map(n, -1);
    map[0] = 0;
    for (size_t i = 0; i < t.size(); ++i) {
        if (map[t[i]] != -1 && map[t[i]] != t2[i]) return std::nullopt;
        map[t[i]] = t2[i];
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (int a = 0; a < n; ++a) {
            if (map[a] == -1) continue;
            for (int b = 0; b < n; ++b) {
                if (map[b] == -1) continue;
                int ab = A.mul(a, b), im = B.mul(map[a], map[b]);
                if (map[ab] == -1) {
                    map[ab] = im;
                    changed = true;
                } else if (map[ab] != im) {
                    return std::nullopt;
                }
            }
        }
    }
    std::vector<char> hit(n, false);
    for (int a = 0; a < n; ++a) {
        if (map[a] == -1 || hit[map[a]]) return std::nullopt;
        hit[map[a]] = true;
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (map[A.mul(a, b)] != B.mul(map[a], map[b])) return std::nullopt;
    return map;
}

// Pairwise-product fixpoint closure of a permutation set.
inline std::set<Perm> perm_closure(int degree, const std::vector<Perm>& gens) {
    auto compose = [](const Perm& p, const Perm& q) {
        Perm r(p.size());
        for (size_t x = 0; x < p.size(); ++x) r[x] = p[q[x]];
        return r;
    };
    std::set<Perm> s;
    Perm id(degree);
    for (int i = 0; i < degree; ++i) id[i] = i;
    s.insert(id);
    for (const auto& g : gens) s.insert(g);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Perm> now(s.begin(), s.end());
        for (const auto& a : now)
            for (const auto& b : now)
                if (s.insert(compose(a, b)).second) changed = true;
    }
    return s;
}

// Element-order census: order -> count.
inline std::map<int, int> order_census(const GroupTable& G) {
    std::map<int, int> census;
    for (int a = 0; a < G.order(); ++a) ++census[G.element_order(a)];
    return census;
}

}  // namespace oracles
