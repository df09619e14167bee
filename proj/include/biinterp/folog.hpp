#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "biinterp/errors.hpp"
#include "biinterp/group.hpp"
#include "biinterp/rng.hpp"

namespace biinterp {

// First-order logic over the one-sorted group signature (*, ^-1, 1, =).
// Terms and formulas are immutable shared trees.

enum class TermKind { One, Var, Param, Elem, Mul, Inv };

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
    TermKind kind;
    std::string name;  // Var, Param
    int elem = 0;      // Elem literal (#id)
    Term a, b;         // Mul: a*b; Inv: a
};

Term t_one();
Term t_var(std::string name);
Term t_param(std::string name);
Term t_elem(int id);
Term t_mul(Term a, Term b);
Term t_mul(std::vector<Term> factors);  // left-associated chain; empty -> 1
Term t_inv(Term a);

enum class FormulaKind { Eq, Not, And, Or, Implies, Forall, Exists };

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
    FormulaKind kind;
    Term t1, t2;      // Eq
    Formula a, b;     // Not: a; binary: a,b
    std::string var;  // quantifiers
};

Formula f_eq(Term a, Term b);
Formula f_not(Formula a);
Formula f_and(Formula a, Formula b);
Formula f_or(Formula a, Formula b);
Formula f_implies(Formula a, Formula b);
Formula f_forall(std::string var, Formula body);
Formula f_exists(std::string var, Formula body);
Formula f_and_all(const std::vector<Formula>& fs);  // left fold; empty -> 1 = 1
Formula f_or_all(const std::vector<Formula>& fs);   // left fold; empty -> !(1 = 1)

bool term_equal(const Term& a, const Term& b);
bool formula_equal(const Formula& a, const Formula& b);

/// Canonical fully parenthesized DSL form; parse_formula(pretty(f)) == f.
std::string pretty(const Term& t);
std::string pretty(const Formula& f);

/// Parses the formula DSL:
///   formula := quant | impl ; quant := ("forall"|"exists") IDENT "." formula ;
///   impl := disj ["->" formula] ; disj := conj {"|" conj} ; conj := neg {"&" neg} ;
///   neg := "!" neg | atom ; atom := term "=" term | "(" formula ")" ;
///   term := factor {"*" factor} ; factor := base ["^-1"] ;
///   base := "1" | IDENT | "@" IDENT | "#" INT | "(" term ")" .
/// Bound variables are renamed so that no name is both free and bound
/// along one root-to-leaf path.
Formula parse_formula(const std::string& text);

std::set<std::string> free_vars(const Formula& f);
std::set<std::string> param_names(const Formula& f);
int quantifier_rank(const Formula& f);
long long node_count(const Formula& f);
long long node_count(const Term& t);

/// Substitutes terms for free variables. Every binder in f is renamed to a
/// fresh "q<counter>" name first, so no capture is possible and the output
/// is deterministic for a given counter state.
Formula instantiate(const Formula& f, const std::map<std::string, Term>& subst, int& fresh_counter);

// -- evaluation ---------------------------------------------------------------

inline constexpr long long kDefaultBudget = 100'000'000;

/// Enumeration budget. Every quantifier iteration and every tuple listed by
/// definable_set counts one step; exceeding the limit raises ComplexityCap
/// instead of running without bound.
struct Budget {
    long long limit = kDefaultBudget;
    long long used = 0;

    void step(long long n = 1) {
        used += n;
        if (used > limit) throw ComplexityCap(used, limit);
    }
};

/// Parameter valuation: names of @params -> element ids of one structure.
using ParamEnv = std::map<std::string, int>;
/// Assignment of the free variables.
using Assignment = std::map<std::string, int>;

bool evaluate(const GroupTable& M, const Formula& f, const ParamEnv& env, const Assignment& assign,
              Budget& budget);
bool evaluate(const GroupTable& M, const Formula& f, const ParamEnv& env = {},
              const Assignment& assign = {});

int eval_term(const GroupTable& M, const Term& t, const ParamEnv& env, const Assignment& assign);

/// { a-tuple : M |= f(a) }, free variables enumerated in the given order,
/// tuples produced in lexicographic order.
std::set<std::vector<int>> definable_set(const GroupTable& M, const Formula& f,
                                         const std::vector<std::string>& free_order,
                                         const ParamEnv& env, Budget& budget);
std::set<std::vector<int>> definable_set(const GroupTable& M, const Formula& f,
                                         const std::vector<std::string>& free_order,
                                         const ParamEnv& env = {});

// -- finite axiomatization -----------------------------------------------------

/// A sentence sigma(y1..ys) holding of (base, tuple) that pins the pair up to
/// isomorphism: any (H2, tuple2) satisfying it is isomorphic to (base, tuple)
/// by the unique map sending tuple to tuple2.
struct AxiomatizationCertificate {
    GroupPtr base;
    std::vector<int> tuple;
    Formula sentence;                    // free variables y1..ys
    std::vector<std::string> var_names;  // y1..ys in order
    std::vector<Term> words;             // words[g] evaluates to the image of g
};

AxiomatizationCertificate axiomatize_with_tuple(const GroupPtr& H, const std::vector<int>& tuple,
                                                int max_order = kDefaultMaxOrder);

struct AxiomCheckResult {
    bool holds = false;
    std::vector<int> iso;  // base id -> H2 id; empty unless holds
};

AxiomCheckResult check_axiomatization(const AxiomatizationCertificate& cert, const GroupTable& H2,
                                      const std::vector<int>& tuple2);

// -- random sentences ------------------------------------------------------------

struct SentenceGenOptions {
    int max_rank = 2;        // quantifier nesting depth
    int max_connectives = 5; // boolean connective budget
    int max_term_depth = 2;  // Mul/Inv nesting in terms
    int literal_percent = 10;  // chance a leaf term is a random #element of M
};

/// Deterministic random sentence (no free variables, no parameters) over the
/// group signature of M.
Formula random_sentence(SplitMix64& rng, const GroupTable& M, const SentenceGenOptions& opt = {});

}  // namespace biinterp
