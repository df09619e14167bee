#include "biinterp/folog.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>

namespace biinterp {

// -- builders -----------------------------------------------------------------

namespace {
Term mk_term(TermNode n) { return std::make_shared<const TermNode>(std::move(n)); }
Formula mk_formula(FormulaNode n) { return std::make_shared<const FormulaNode>(std::move(n)); }
}  // namespace

Term t_one() {
    static const Term one = mk_term({TermKind::One, "", 0, nullptr, nullptr});
    return one;
}
Term t_var(std::string name) { return mk_term({TermKind::Var, std::move(name), 0, nullptr, nullptr}); }
Term t_param(std::string name) {
    return mk_term({TermKind::Param, std::move(name), 0, nullptr, nullptr});
}
Term t_elem(int id) { return mk_term({TermKind::Elem, "", id, nullptr, nullptr}); }
Term t_mul(Term a, Term b) {
    return mk_term({TermKind::Mul, "", 0, std::move(a), std::move(b)});
}
Term t_mul(std::vector<Term> factors) {
    if (factors.empty()) return t_one();
    Term acc = factors[0];
    for (size_t i = 1; i < factors.size(); ++i) acc = t_mul(acc, factors[i]);
    return acc;
}
Term t_inv(Term a) { return mk_term({TermKind::Inv, "", 0, std::move(a), nullptr}); }

Formula f_eq(Term a, Term b) {
    return mk_formula({FormulaKind::Eq, std::move(a), std::move(b), nullptr, nullptr, ""});
}
Formula f_not(Formula a) {
    return mk_formula({FormulaKind::Not, nullptr, nullptr, std::move(a), nullptr, ""});
}
Formula f_and(Formula a, Formula b) {
    return mk_formula({FormulaKind::And, nullptr, nullptr, std::move(a), std::move(b), ""});
}
Formula f_or(Formula a, Formula b) {
    return mk_formula({FormulaKind::Or, nullptr, nullptr, std::move(a), std::move(b), ""});
}
Formula f_implies(Formula a, Formula b) {
    return mk_formula({FormulaKind::Implies, nullptr, nullptr, std::move(a), std::move(b), ""});
}
Formula f_forall(std::string var, Formula body) {
    return mk_formula({FormulaKind::Forall, nullptr, nullptr, std::move(body), nullptr, std::move(var)});
}
Formula f_exists(std::string var, Formula body) {
    return mk_formula({FormulaKind::Exists, nullptr, nullptr, std::move(body), nullptr, std::move(var)});
}
Formula f_and_all(const std::vector<Formula>& fs) {
    if (fs.empty()) return f_eq(t_one(), t_one());
    Formula acc = fs[0];
    for (size_t i = 1; i < fs.size(); ++i) acc = f_and(acc, fs[i]);
    return acc;
}
Formula f_or_all(const std::vector<Formula>& fs) {
    if (fs.empty()) return f_not(f_eq(t_one(), t_one()));
    Formula acc = fs[0];
    for (size_t i = 1; i < fs.size(); ++i) acc = f_or(acc, fs[i]);
    return acc;
}

// -- structural equality ---------------------------------------------------------

bool term_equal(const Term& a, const Term& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case TermKind::One: return true;
        case TermKind::Var:
        case TermKind::Param: return a->name == b->name;
        case TermKind::Elem: return a->elem == b->elem;
        case TermKind::Mul: return term_equal(a->a, b->a) && term_equal(a->b, b->b);
        case TermKind::Inv: return term_equal(a->a, b->a);
    }
    return false;
}

bool formula_equal(const Formula& a, const Formula& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case FormulaKind::Eq: return term_equal(a->t1, b->t1) && term_equal(a->t2, b->t2);
        case FormulaKind::Not: return formula_equal(a->a, b->a);
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies:
            return formula_equal(a->a, b->a) && formula_equal(a->b, b->b);
        case FormulaKind::Forall:
        case FormulaKind::Exists: return a->var == b->var && formula_equal(a->a, b->a);
    }
    return false;
}

// -- pretty printer ----------------------------------------------------------------

std::string pretty(const Term& t) {
    switch (t->kind) {
        case TermKind::One: return "1";
        case TermKind::Var: return t->name;
        case TermKind::Param: return "@" + t->name;
        case TermKind::Elem: return "#" + std::to_string(t->elem);
        case TermKind::Mul: return "(" + pretty(t->a) + " * " + pretty(t->b) + ")";
        case TermKind::Inv:
            // factor := base ["^-1"] allows one inversion per factor, so a
            // doubly inverted term needs explicit parentheses.
            if (t->a->kind == TermKind::Inv) return "(" + pretty(t->a) + ")^-1";
            return pretty(t->a) + "^-1";
    }
    return {};
}

namespace {
bool is_quantifier(const Formula& f) {
    return f->kind == FormulaKind::Forall || f->kind == FormulaKind::Exists;
}
std::string operand(const Formula& f) {
    // Everything except quantifiers prints as a self-delimiting unit.
    return is_quantifier(f) ? "(" + pretty(f) + ")" : pretty(f);
}
}  // namespace

std::string pretty(const Formula& f) {
    switch (f->kind) {
        case FormulaKind::Eq: return "(" + pretty(f->t1) + " = " + pretty(f->t2) + ")";
        case FormulaKind::Not: return "!" + operand(f->a);
        case FormulaKind::And: return "(" + operand(f->a) + " & " + operand(f->b) + ")";
        case FormulaKind::Or: return "(" + operand(f->a) + " | " + operand(f->b) + ")";
        case FormulaKind::Implies: return "(" + operand(f->a) + " -> " + operand(f->b) + ")";
        case FormulaKind::Forall: return "forall " + f->var + ". " + pretty(f->a);
        case FormulaKind::Exists: return "exists " + f->var + ". " + pretty(f->a);
    }
    return {};
}

// -- parser ------------------------------------------------------------------------

namespace {

struct Parser {
    const std::string& src;
    size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    size_t cur() {
        skip_ws();
        return pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool eat_str(const char* s) {
        skip_ws();
        size_t n = std::strlen(s);
        if (src.compare(pos, n, s) == 0) {
            pos += n;
            return true;
        }
        return false;
    }
    void expect(char c, const char* what) {
        if (!eat(c)) throw SyntaxError(cur(), what);
    }

    static bool ident_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    std::string ident() {
        skip_ws();
        if (pos >= src.size() || !ident_start(src[pos])) return {};
        size_t start = pos;
        while (pos < src.size() && ident_char(src[pos])) ++pos;
        return src.substr(start, pos - start);
    }

    bool keyword(const char* kw) {
        skip_ws();
        size_t save = pos;
        std::string id = ident();
        if (id == kw) return true;
        pos = save;
        return false;
    }

    Formula formula() {
        for (const char* kw : {"forall", "exists"}) {
            if (keyword(kw)) {
                std::string v = ident();
                if (v.empty()) throw SyntaxError(cur(), "expected variable name");
                if (v == "forall" || v == "exists") throw SyntaxError(cur(), "keyword used as variable");
                expect('.', "expected '.' after quantified variable");
                Formula body = formula();
                return kw[0] == 'f' ? f_forall(v, body) : f_exists(v, body);
            }
        }
        Formula a = disj();
        if (eat_str("->")) return f_implies(a, formula());
        return a;
    }

    Formula disj() {
        Formula a = conj();
        while (true) {
            skip_ws();
            if (pos < src.size() && src[pos] == '|') {
                ++pos;
                a = f_or(a, conj());
            } else {
                return a;
            }
        }
    }

    Formula conj() {
        Formula a = neg();
        while (eat('&')) a = f_and(a, neg());
        return a;
    }

    Formula neg() {
        if (eat('!')) return f_not(neg());
        return atom();
    }

    // atom := term "=" term | "(" formula ")". A leading "(" is ambiguous, so
    // try the equation first and fall back to a parenthesized formula,
    // reporting whichever parse got further.
    Formula atom() {
        skip_ws();
        size_t save = pos;
        try {
            Term t1 = term();
            expect('=', "expected '='");
            Term t2 = term();
            return f_eq(t1, t2);
        } catch (const SyntaxError& first) {
            pos = save;
            skip_ws();
            if (pos < src.size() && src[pos] == '(') {
                try {
                    ++pos;
                    Formula f = formula();
                    expect(')', "expected ')'");
                    return f;
                } catch (const SyntaxError& second) {
                    throw second.pos >= first.pos ? second : first;
                }
            }
            throw;
        }
    }

    Term term() {
        Term a = factor();
        while (eat('*')) a = t_mul(a, factor());
        return a;
    }

    Term factor() {
        Term a = base();
        skip_ws();
        if (src.compare(pos, 3, "^-1") == 0) {
            pos += 3;
            return t_inv(a);
        }
        return a;
    }

    Term base() {
        skip_ws();
        if (pos >= src.size()) throw SyntaxError(pos, "expected term");
        char c = src[pos];
        if (c == '1') {
            ++pos;
            return t_one();
        }
        if (c == '@') {
            ++pos;
            std::string name = ident();
            if (name.empty()) throw SyntaxError(pos, "expected parameter name after '@'");
            return t_param(name);
        }
        if (c == '#') {
            ++pos;
            skip_ws();
            size_t start = pos;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
            if (pos == start) throw SyntaxError(pos, "expected element id after '#'");
            return t_elem(std::stoi(src.substr(start, pos - start)));
        }
        if (c == '(') {
            ++pos;
            Term t = term();
            expect(')', "expected ')'");
            return t;
        }
        if (ident_start(c)) {
            size_t at = pos;
            std::string id = ident();
            if (id == "forall" || id == "exists") throw SyntaxError(at, "keyword used as term");
            return t_var(id);
        }
        throw SyntaxError(pos, "expected term");
    }
};

// Renames bound variables so that no name is both free and bound along one
// root-to-leaf path, and no binder shadows an enclosing binder.
struct RenamePass {
    const std::set<std::string>& globals;  // free variables of the whole formula
    std::set<std::string> used;            // every binder name seen or created
    std::vector<std::pair<std::string, std::string>> stack;

    std::string fresh(const std::string& base) {
        for (int k = 2;; ++k) {
            std::string cand = base + "__" + std::to_string(k);
            if (!globals.count(cand) && !used.count(cand)) return cand;
        }
    }

    bool shadows(const std::string& v) const {
        if (globals.count(v)) return true;
        for (const auto& [orig, renamed] : stack)
            if (orig == v || renamed == v) return true;
        return false;
    }

    Term walk(const Term& t) {
        switch (t->kind) {
            case TermKind::Var:
                for (auto it = stack.rbegin(); it != stack.rend(); ++it)
                    if (it->first == t->name)
                        return it->second == t->name ? t : t_var(it->second);
                return t;
            case TermKind::Mul: return t_mul(walk(t->a), walk(t->b));
            case TermKind::Inv: return t_inv(walk(t->a));
            default: return t;
        }
    }

    Formula walk(const Formula& f) {
        switch (f->kind) {
            case FormulaKind::Eq: return f_eq(walk(f->t1), walk(f->t2));
            case FormulaKind::Not: return f_not(walk(f->a));
            case FormulaKind::And: return f_and(walk(f->a), walk(f->b));
            case FormulaKind::Or: return f_or(walk(f->a), walk(f->b));
            case FormulaKind::Implies: return f_implies(walk(f->a), walk(f->b));
            case FormulaKind::Forall:
            case FormulaKind::Exists: {
                std::string chosen = shadows(f->var) ? fresh(f->var) : f->var;
                used.insert(f->var);
                used.insert(chosen);
                stack.emplace_back(f->var, chosen);
                Formula body = walk(f->a);
                stack.pop_back();
                return f->kind == FormulaKind::Forall ? f_forall(chosen, body)
                                                      : f_exists(chosen, body);
            }
        }
        return f;
    }
};

}  // namespace

Formula parse_formula(const std::string& text) {
    Parser p{text};
    Formula f = p.formula();
    p.skip_ws();
    if (p.pos != text.size()) throw SyntaxError(p.pos, "trailing input");
    std::set<std::string> fv = free_vars(f);
    RenamePass pass{fv, {}, {}};
    return pass.walk(f);
}

// -- queries ---------------------------------------------------------------------

namespace {
void collect_term_vars(const Term& t, const std::vector<std::string>& bound,
                       std::set<std::string>& out) {
    switch (t->kind) {
        case TermKind::Var:
            if (std::find(bound.begin(), bound.end(), t->name) == bound.end()) out.insert(t->name);
            break;
        case TermKind::Mul:
            collect_term_vars(t->a, bound, out);
            collect_term_vars(t->b, bound, out);
            break;
        case TermKind::Inv: collect_term_vars(t->a, bound, out); break;
        default: break;
    }
}

void collect_free(const Formula& f, std::vector<std::string>& bound, std::set<std::string>& out) {
    switch (f->kind) {
        case FormulaKind::Eq:
            collect_term_vars(f->t1, bound, out);
            collect_term_vars(f->t2, bound, out);
            break;
        case FormulaKind::Not: collect_free(f->a, bound, out); break;
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies:
            collect_free(f->a, bound, out);
            collect_free(f->b, bound, out);
            break;
        case FormulaKind::Forall:
        case FormulaKind::Exists:
            bound.push_back(f->var);
            collect_free(f->a, bound, out);
            bound.pop_back();
            break;
    }
}

void collect_term_params(const Term& t, std::set<std::string>& out) {
    switch (t->kind) {
        case TermKind::Param: out.insert(t->name); break;
        case TermKind::Mul:
            collect_term_params(t->a, out);
            collect_term_params(t->b, out);
            break;
        case TermKind::Inv: collect_term_params(t->a, out); break;
        default: break;
    }
}

void collect_params(const Formula& f, std::set<std::string>& out) {
    switch (f->kind) {
        case FormulaKind::Eq:
            collect_term_params(f->t1, out);
            collect_term_params(f->t2, out);
            break;
        case FormulaKind::Not: collect_params(f->a, out); break;
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies:
            collect_params(f->a, out);
            collect_params(f->b, out);
            break;
        case FormulaKind::Forall:
        case FormulaKind::Exists: collect_params(f->a, out); break;
    }
}
}  // namespace

std::set<std::string> free_vars(const Formula& f) {
    std::set<std::string> out;
    std::vector<std::string> bound;
    collect_free(f, bound, out);
    return out;
}

std::set<std::string> param_names(const Formula& f) {
    std::set<std::string> out;
    collect_params(f, out);
    return out;
}

int quantifier_rank(const Formula& f) {
    switch (f->kind) {
        case FormulaKind::Eq: return 0;
        case FormulaKind::Not: return quantifier_rank(f->a);
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies:
            return std::max(quantifier_rank(f->a), quantifier_rank(f->b));
        case FormulaKind::Forall:
        case FormulaKind::Exists: return 1 + quantifier_rank(f->a);
    }
    return 0;
}

long long node_count(const Term& t) {
    switch (t->kind) {
        case TermKind::Mul: return 1 + node_count(t->a) + node_count(t->b);
        case TermKind::Inv: return 1 + node_count(t->a);
        default: return 1;
    }
}

long long node_count(const Formula& f) {
    switch (f->kind) {
        case FormulaKind::Eq: return 1 + node_count(f->t1) + node_count(f->t2);
        case FormulaKind::Not: return 1 + node_count(f->a);
        case FormulaKind::And:
        case FormulaKind::Or:
        case FormulaKind::Implies: return 1 + node_count(f->a) + node_count(f->b);
        case FormulaKind::Forall:
        case FormulaKind::Exists: return 1 + node_count(f->a);
    }
    return 1;
}

// -- instantiation ------------------------------------------------------------------

namespace {
struct Instantiator {
    const std::map<std::string, Term>& subst;
    int& fresh;
    std::vector<std::pair<std::string, std::string>> binders;

    Term walk(const Term& t) {
        switch (t->kind) {
            case TermKind::Var: {
                for (auto it = binders.rbegin(); it != binders.rend(); ++it)
                    if (it->first == t->name) return t_var(it->second);
                auto s = subst.find(t->name);
                return s == subst.end() ? t : s->second;
            }
            case TermKind::Mul: return t_mul(walk(t->a), walk(t->b));
            case TermKind::Inv: return t_inv(walk(t->a));
            default: return t;
        }
    }

    Formula walk(const Formula& f) {
        switch (f->kind) {
            case FormulaKind::Eq: return f_eq(walk(f->t1), walk(f->t2));
            case FormulaKind::Not: return f_not(walk(f->a));
            case FormulaKind::And: return f_and(walk(f->a), walk(f->b));
            case FormulaKind::Or: return f_or(walk(f->a), walk(f->b));
            case FormulaKind::Implies: return f_implies(walk(f->a), walk(f->b));
            case FormulaKind::Forall:
            case FormulaKind::Exists: {
                std::string name = "q" + std::to_string(fresh++);
                binders.emplace_back(f->var, name);
                Formula body = walk(f->a);
                binders.pop_back();
                return f->kind == FormulaKind::Forall ? f_forall(name, body) : f_exists(name, body);
            }
        }
        return f;
    }
};
}  // namespace

Formula instantiate(const Formula& f, const std::map<std::string, Term>& subst, int& fresh_counter) {
    Instantiator inst{subst, fresh_counter, {}};
    return inst.walk(f);
}

// -- evaluation ----------------------------------------------------------------------

namespace {

// Formulas are compiled to index-based pools before evaluation: variables
// become value-stack slots and parameters become concrete elements, so the
// hot loop never touches a string. One budget unit is charged per node
// visit, which makes the budget a genuine work bound of order |M|^q * |f|.

struct CompiledTerm {
    TermKind kind;
    int slot = -1;  // Var
    int elem = 0;   // Elem (and resolved Param)
    int a = -1, b = -1;
};

struct CompiledNode {
    FormulaKind kind;
    int t1 = -1, t2 = -1;  // Eq
    int a = -1, b = -1;    // children
    int slot = -1;         // quantifiers
};

struct CompiledFormula {
    std::vector<CompiledTerm> terms;
    std::vector<CompiledNode> nodes;
    int root = -1;
    int stack_size = 0;
};

struct Compiler {
    const GroupTable& M;
    const ParamEnv& env;
    const std::vector<std::string>& free_order;
    CompiledFormula out;
    std::vector<std::string> binders;

    int resolve(const std::string& name) {
        for (int i = static_cast<int>(binders.size()) - 1; i >= 0; --i)
            if (binders[i] == name) return static_cast<int>(free_order.size()) + i;
        for (size_t i = 0; i < free_order.size(); ++i)
            if (free_order[i] == name) return static_cast<int>(i);
        throw UnboundVariable(name);
    }

    int term(const Term& t) {
        CompiledTerm ct;
        ct.kind = t->kind;
        switch (t->kind) {
            case TermKind::One:
                ct.kind = TermKind::Elem;
                ct.elem = 0;
                break;
            case TermKind::Var: ct.slot = resolve(t->name); break;
            case TermKind::Param: {
                auto it = env.find(t->name);
                if (it == env.end()) throw UnboundParameter(t->name);
                if (it->second < 0 || it->second >= M.order()) throw BadElementLiteral(it->second);
                ct.kind = TermKind::Elem;
                ct.elem = it->second;
                break;
            }
            case TermKind::Elem:
                if (t->elem < 0 || t->elem >= M.order()) throw BadElementLiteral(t->elem);
                ct.elem = t->elem;
                break;
            case TermKind::Mul:
                ct.a = term(t->a);
                ct.b = term(t->b);
                break;
            case TermKind::Inv: ct.a = term(t->a); break;
        }
        out.terms.push_back(ct);
        return static_cast<int>(out.terms.size()) - 1;
    }

    int node(const Formula& f) {
        CompiledNode cn;
        cn.kind = f->kind;
        switch (f->kind) {
            case FormulaKind::Eq:
                cn.t1 = term(f->t1);
                cn.t2 = term(f->t2);
                break;
            case FormulaKind::Not: cn.a = node(f->a); break;
            case FormulaKind::And:
            case FormulaKind::Or:
            case FormulaKind::Implies:
                cn.a = node(f->a);
                cn.b = node(f->b);
                break;
            case FormulaKind::Forall:
            case FormulaKind::Exists:
                cn.slot = static_cast<int>(free_order.size() + binders.size());
                binders.push_back(f->var);
                cn.a = node(f->a);
                binders.pop_back();
                break;
        }
        out.nodes.push_back(cn);
        return static_cast<int>(out.nodes.size()) - 1;
    }
};

CompiledFormula compile(const GroupTable& M, const Formula& f, const ParamEnv& env,
                        const std::vector<std::string>& free_order) {
    Compiler c{M, env, free_order, {}, {}};
    c.out.root = c.node(f);
    c.out.stack_size = static_cast<int>(free_order.size()) + quantifier_rank(f);
    return c.out;
}

struct Machine {
    const GroupTable& M;
    const CompiledFormula& cf;
    Budget& budget;
    std::vector<int> values;

    int term(int idx) {
        budget.step();
        const CompiledTerm& t = cf.terms[idx];
        switch (t.kind) {
            case TermKind::Elem: return t.elem;
            case TermKind::Var: return values[t.slot];
            case TermKind::Mul: return M.mul(term(t.a), term(t.b));
            case TermKind::Inv: return M.inv(term(t.a));
            default: return 0;
        }
    }

    bool eval(int idx) {
        budget.step();
        const CompiledNode& n = cf.nodes[idx];
        switch (n.kind) {
            case FormulaKind::Eq: return term(n.t1) == term(n.t2);
            case FormulaKind::Not: return !eval(n.a);
            case FormulaKind::And: return eval(n.a) && eval(n.b);
            case FormulaKind::Or: return eval(n.a) || eval(n.b);
            case FormulaKind::Implies: return !eval(n.a) || eval(n.b);
            case FormulaKind::Forall:
                for (int v = 0; v < M.order(); ++v) {
                    values[n.slot] = v;
                    if (!eval(n.a)) return false;
                }
                return true;
            case FormulaKind::Exists:
                for (int v = 0; v < M.order(); ++v) {
                    values[n.slot] = v;
                    if (eval(n.a)) return true;
                }
                return false;
        }
        return false;
    }
};

}  // namespace

bool evaluate(const GroupTable& M, const Formula& f, const ParamEnv& env, const Assignment& assign,
              Budget& budget) {
    std::vector<std::string> free_order;
    free_order.reserve(assign.size());
    for (const auto& [k, v] : assign) free_order.push_back(k);
    CompiledFormula cf = compile(M, f, env, free_order);
    Machine m{M, cf, budget, std::vector<int>(static_cast<size_t>(cf.stack_size), 0)};
    int i = 0;
    for (const auto& [k, v] : assign) m.values[i++] = v;
    return m.eval(cf.root);
}

bool evaluate(const GroupTable& M, const Formula& f, const ParamEnv& env, const Assignment& assign) {
    Budget b;
    return evaluate(M, f, env, assign, b);
}

int eval_term(const GroupTable& M, const Term& t, const ParamEnv& env, const Assignment& assign) {
    switch (t->kind) {
        case TermKind::One: return 0;
        case TermKind::Var: {
            auto it = assign.find(t->name);
            if (it == assign.end()) throw UnboundVariable(t->name);
            return it->second;
        }
        case TermKind::Param: {
            auto it = env.find(t->name);
            if (it == env.end()) throw UnboundParameter(t->name);
            return it->second;
        }
        case TermKind::Elem:
            if (t->elem < 0 || t->elem >= M.order()) throw BadElementLiteral(t->elem);
            return t->elem;
        case TermKind::Mul:
            return M.mul(eval_term(M, t->a, env, assign), eval_term(M, t->b, env, assign));
        case TermKind::Inv: return M.inv(eval_term(M, t->a, env, assign));
    }
    return 0;
}

std::set<std::vector<int>> definable_set(const GroupTable& M, const Formula& f,
                                         const std::vector<std::string>& free_order,
                                         const ParamEnv& env, Budget& budget) {
    std::set<std::string> fv = free_vars(f);
    if (fv.size() != free_order.size() ||
        !std::all_of(free_order.begin(), free_order.end(),
                     [&](const std::string& v) { return fv.count(v) > 0; }))
        throw Error("free variables of the formula do not match the requested order");

    const int k = static_cast<int>(free_order.size());
    CompiledFormula cf = compile(M, f, env, free_order);
    Machine m{M, cf, budget, std::vector<int>(static_cast<size_t>(cf.stack_size), 0)};

    std::set<std::vector<int>> out;
    std::vector<int> vals(k, 0);
    for (;;) {
        budget.step();
        for (int i = 0; i < k; ++i) m.values[i] = vals[i];
        if (m.eval(cf.root)) out.insert(vals);
        int i = k - 1;
        while (i >= 0 && vals[i] == M.order() - 1) vals[i--] = 0;
        if (i < 0) break;
        ++vals[i];
    }
    return out;
}

std::set<std::vector<int>> definable_set(const GroupTable& M, const Formula& f,
                                         const std::vector<std::string>& free_order,
                                         const ParamEnv& env) {
    Budget b;
    return definable_set(M, f, free_order, env, b);
}

// -- finite axiomatization -------------------------------------------------------------

AxiomatizationCertificate axiomatize_with_tuple(const GroupPtr& H, const std::vector<int>& tuple,
                                                int max_order) {
    const int n = H->order();
    if (n > max_order) throw GroupTooLarge(max_order);
    for (int g : tuple)
        if (g < 0 || g >= n) throw Error("tuple entry out of range");
    if (subgroup_closure(H, tuple).size() != n) throw NotGenerating();

    const int s = static_cast<int>(tuple.size());
    AxiomatizationCertificate cert;
    cert.base = H;
    cert.tuple = tuple;
    cert.var_names.reserve(s);
    for (int i = 0; i < s; ++i) cert.var_names.push_back("y" + std::to_string(i + 1));

    // Shortest words by breadth-first search from the identity, right
    // multiplication by tuple entries, ties by generator index.
    cert.words.assign(n, nullptr);
    cert.words[0] = t_one();
    std::vector<int> level{0};
    while (!level.empty()) {
        std::vector<int> next;
        for (int u : level) {
            for (int i = 0; i < s; ++i) {
                int v = H->mul(u, tuple[i]);
                if (cert.words[v]) continue;
                cert.words[v] =
                    u == 0 ? t_var(cert.var_names[i]) : t_mul(cert.words[u], t_var(cert.var_names[i]));
                next.push_back(v);
            }
        }
        level = std::move(next);
    }

    std::vector<Formula> parts;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            parts.push_back(f_eq(t_mul(cert.words[a], cert.words[b]), cert.words[H->mul(a, b)]));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) parts.push_back(f_not(f_eq(cert.words[a], cert.words[b])));
    std::vector<Formula> covers;
    for (int g = 0; g < n; ++g) covers.push_back(f_eq(t_var("x"), cert.words[g]));
    parts.push_back(f_forall("x", f_or_all(covers)));
    // Pin each tuple variable to the word of its element; without this a
    // repeated or identity entry would leave its variable unconstrained.
    for (int i = 0; i < s; ++i) {
        const Term& w = cert.words[tuple[i]];
        if (w->kind == TermKind::Var && w->name == cert.var_names[i]) continue;
        parts.push_back(f_eq(t_var(cert.var_names[i]), w));
    }
    cert.sentence = f_and_all(parts);
    return cert;
}

AxiomCheckResult check_axiomatization(const AxiomatizationCertificate& cert, const GroupTable& H2,
                                      const std::vector<int>& tuple2) {
    if (tuple2.size() != cert.tuple.size())
        throw ArityMismatch(static_cast<int>(cert.tuple.size()), static_cast<int>(tuple2.size()));
    Assignment assign;
    for (size_t i = 0; i < tuple2.size(); ++i) {
        if (tuple2[i] < 0 || tuple2[i] >= H2.order()) throw BadElementLiteral(tuple2[i]);
        assign[cert.var_names[i]] = tuple2[i];
    }
    if (!evaluate(H2, cert.sentence, {}, assign)) return {};

    AxiomCheckResult res;
    res.holds = true;
    const int n = cert.base->order();
    res.iso.resize(n);
    for (int g = 0; g < n; ++g) res.iso[g] = eval_term(H2, cert.words[g], {}, assign);

    // Independent confirmation that word evaluation produced an isomorphism
    // carrying the tuple.
    if (H2.order() != n) throw Error("axiomatization accepted a group of different order");
    std::vector<char> hit(n, false);
    for (int g = 0; g < n; ++g) {
        if (hit[res.iso[g]]) throw Error("axiomatization witness is not injective");
        hit[res.iso[g]] = true;
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (res.iso[cert.base->mul(a, b)] != H2.mul(res.iso[a], res.iso[b]))
                throw Error("axiomatization witness is not multiplicative");
    for (size_t i = 0; i < tuple2.size(); ++i)
        if (res.iso[cert.tuple[i]] != tuple2[i])
            throw Error("axiomatization witness does not carry the tuple");
    return res;
}

// -- random sentences ---------------------------------------------------------------------

namespace {

struct SentenceGen {
    SplitMix64& rng;
    const GroupTable& M;
    const SentenceGenOptions& opt;
    int connectives_left;

    Term term(int depth, const std::vector<std::string>& bound) {
        if (depth > 0 && rng.chance(55, 100)) {
            if (rng.chance(70, 100))
                return t_mul(term(depth - 1, bound), term(depth - 1, bound));
            return t_inv(term(depth - 1, bound));
        }
        if (!bound.empty() && rng.chance(75, 100))
            return t_var(bound[rng.below_int(static_cast<int>(bound.size()))]);
        if (rng.chance(static_cast<std::uint64_t>(opt.literal_percent), 100))
            return t_elem(rng.below_int(M.order()));
        return t_one();
    }

    Formula gen(int rank, std::vector<std::string>& bound) {
        // Quantify eagerly while rank remains so most sentences actually
        // inspect the structure rather than collapse to ground equations.
        bool can_quant = rank > 0;
        bool can_conn = connectives_left > 0;
        int roll = rng.below_int(100);
        if (can_quant && roll < 45) {
            std::string v = "x" + std::to_string(bound.size());
            bool univ = rng.chance(1, 2);
            bound.push_back(v);
            Formula body = gen(rank - 1, bound);
            bound.pop_back();
            return univ ? f_forall(v, body) : f_exists(v, body);
        }
        if (can_conn && roll < 80) {
            --connectives_left;
            switch (rng.below_int(4)) {
                case 0: return f_not(gen(rank, bound));
                case 1: return f_and(gen(rank, bound), gen(rank, bound));
                case 2: return f_or(gen(rank, bound), gen(rank, bound));
                default: return f_implies(gen(rank, bound), gen(rank, bound));
            }
        }
        return f_eq(term(opt.max_term_depth, bound), term(opt.max_term_depth, bound));
    }
};

}  // namespace

Formula random_sentence(SplitMix64& rng, const GroupTable& M, const SentenceGenOptions& opt) {
    SentenceGen gen{rng, M, opt, opt.max_connectives};
    std::vector<std::string> bound;
    return gen.gen(opt.max_rank, bound);
}

}  // namespace biinterp
