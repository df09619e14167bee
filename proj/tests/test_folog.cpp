#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "biinterp/folog.hpp"
#include "oracles.hpp"

using namespace biinterp;

TEST_CASE("parser golden forms and round trips") {
    auto comm = parse_formula("forall x. forall y. x*y = y*x");
    CHECK(pretty(comm) == "forall x. forall y. ((x * y) = (y * x))");
    CHECK(formula_equal(comm, parse_formula(pretty(comm))));

    auto sq = parse_formula("exists y. y*y = x");
    CHECK(free_vars(sq) == std::set<std::string>{"x"});

    for (const char* text : {
             "1 = 1",
             "!(x = 1) & (x*x = 1 | x = y^-1)",
             "exists y. y*y = x",
             "forall x. (exists y. y*y = x) -> x*x*x = 1",
             "(x*y)^-1 = y^-1*x^-1",
             "#3*@p = @p*#3",
             "((x^-1)^-1) = x",
             "x = 1 | x = #2 | x = #4 | x = #6",
         }) {
        auto f = parse_formula(text);
        auto again = parse_formula(pretty(f));
        CHECK_MESSAGE(formula_equal(f, again), text, " -> ", pretty(f));
    }
}

TEST_CASE("parser reports positions") {
    try {
        parse_formula("x*");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.pos == 2);
    }
    CHECK_THROWS_AS(parse_formula(""), SyntaxError);
    CHECK_THROWS_AS(parse_formula("(x = y"), SyntaxError);
    CHECK_THROWS_AS(parse_formula("forall . x = 1"), SyntaxError);
    CHECK_THROWS_AS(parse_formula("x = 1 extra"), SyntaxError);
    CHECK_THROWS_AS(parse_formula("x = #"), SyntaxError);
}

TEST_CASE("parser renames shadowed binders") {
    auto f = parse_formula("forall x. (x = 1 & (exists x. !(x*x = 1)))");
    CHECK(free_vars(f).empty());
    // the inner binder must no longer be named x
    CHECK(f->kind == FormulaKind::Forall);
    const auto& inner = f->a->b;  // right conjunct
    CHECK(inner->kind == FormulaKind::Exists);
    CHECK(inner->var != "x");

    // free-vs-bound: the bound x is renamed away from the free occurrence
    auto g = parse_formula("x = 1 & (forall x. x = x)");
    CHECK(free_vars(g) == std::set<std::string>{"x"});
    auto C2 = cyclic(2);
    CHECK(evaluate(*C2, g, {}, {{"x", 0}}));
    CHECK_FALSE(evaluate(*C2, g, {}, {{"x", 1}}));
}

TEST_CASE("evaluate basic sentences") {
    auto S3 = dihedral(3);
    auto C4 = cyclic(4);
    auto comm = parse_formula("forall x. forall y. x*y = y*x");
    CHECK_FALSE(evaluate(*S3, comm));
    CHECK(evaluate(*C4, comm));
    CHECK(evaluate(*S3, parse_formula("1 = 1")));
    CHECK(evaluate(*S3, parse_formula("forall x. exists y. x*y = 1")));
    CHECK(evaluate(*S3, parse_formula("forall x. x*1 = x & 1*x = x")));
}

TEST_CASE("evaluate error paths") {
    auto C2 = cyclic(2);
    CHECK_THROWS_AS(evaluate(*C2, parse_formula("x = 1")), UnboundVariable);
    CHECK_THROWS_AS(evaluate(*C2, parse_formula("@a = 1")), UnboundParameter);
    CHECK_THROWS_AS(evaluate(*C2, parse_formula("#7 = 1")), BadElementLiteral);
}

TEST_CASE("definable sets") {
    auto S3p = symmetric(3);  // lexicographic ids: A3 = {0,3,4}
    auto squares = parse_formula("exists y. y*y = x");
    std::set<std::vector<int>> expect;
    for (int g = 0; g < S3p->order(); ++g) expect.insert({S3p->mul(g, g)});
    CHECK(definable_set(*S3p, squares, {"x"}, {}) == expect);
    CHECK(definable_set(*S3p, squares, {"x"}, {}) ==
          std::set<std::vector<int>>{{0}, {3}, {4}});

    auto S3 = dihedral(3);  // rotation-first ids: A3 = {0,1,2}
    CHECK(definable_set(*S3, squares, {"x"}, {}) == std::set<std::vector<int>>{{0}, {1}, {2}});

    auto D4 = dihedral(4);
    auto central = parse_formula("x*@r = @r*x");
    CHECK(definable_set(*D4, central, {"x"}, {{"r", 1}}) ==
          std::set<std::vector<int>>{{0}, {1}, {2}, {3}});

    auto all = definable_set(*S3, parse_formula("x = x"), {"x"}, {});
    CHECK(all.size() == 6);
}

TEST_CASE("definable sets respect boolean structure") {
    auto S3 = dihedral(3);
    auto f = parse_formula("exists y. y*y = x");
    auto g = parse_formula("x*x = 1");
    auto both = parse_formula("(exists y. y*y = x) & x*x = 1");
    auto neither = parse_formula("!(exists y. y*y = x)");

    auto sf = definable_set(*S3, f, {"x"}, {});
    auto sg = definable_set(*S3, g, {"x"}, {});
    auto sb = definable_set(*S3, both, {"x"}, {});
    auto sn = definable_set(*S3, neither, {"x"}, {});

    std::set<std::vector<int>> inter;
    std::set_intersection(sf.begin(), sf.end(), sg.begin(), sg.end(),
                          std::inserter(inter, inter.begin()));
    CHECK(sb == inter);
    CHECK(sn.size() == S3->order() - sf.size());
    for (const auto& row : sn) CHECK_FALSE(sf.count(row));
}

TEST_CASE("budget rejects oversized enumeration") {
    auto S4 = symmetric(4);
    auto assoc = parse_formula("forall x. forall y. forall z. (x*y)*z = x*(y*z)");
    Budget b{1000, 0};
    CHECK_THROWS_AS(evaluate(*S4, assoc, {}, {}, b), ComplexityCap);
    try {
        Budget b2{1000, 0};
        evaluate(*S4, assoc, {}, {}, b2);
    } catch (const ComplexityCap& e) {
        CHECK(e.count > e.limit);
        CHECK(e.limit == 1000);
    }
    // same sentence fits a real budget
    Budget big{kDefaultBudget, 0};
    CHECK(evaluate(*S4, assoc, {}, {}, big));
}

TEST_CASE("evaluator agrees with the naive reference on random sentences") {
    for (const auto& M : {cyclic(4), dihedral(3)}) {
        SplitMix64 rng(fnv1a64("folog-reference") ^ M->order());
        for (int i = 0; i < 60; ++i) {
            Formula f = random_sentence(rng, *M);
            CHECK(evaluate(*M, f) == oracles::ref_eval(*M, f, {}, {}));
        }
    }
}

TEST_CASE("axiomatize_with_tuple on C2") {
    auto C2 = cyclic(2);
    auto cert = axiomatize_with_tuple(C2, {1});
    CHECK(evaluate(*C2, cert.sentence, {}, {{"y1", 1}}));
    CHECK_FALSE(evaluate(*C2, cert.sentence, {}, {{"y1", 0}}));

    auto res = check_axiomatization(cert, *C2, {1});
    CHECK(res.holds);
    CHECK(res.iso == std::vector<int>{0, 1});

    // wrong order fails both ways
    auto C3 = cyclic(3);
    for (int g = 0; g < 3; ++g) CHECK_FALSE(check_axiomatization(cert, *C3, {g}).holds);
    auto cert3 = axiomatize_with_tuple(C3, {1});
    for (int g = 0; g < 2; ++g) CHECK_FALSE(check_axiomatization(cert3, *C2, {g}).holds);
}

TEST_CASE("axiomatize_with_tuple on the trivial group") {
    auto C1 = cyclic(1);
    auto cert = axiomatize_with_tuple(C1, {});
    CHECK(check_axiomatization(cert, *C1, {}).holds);
    CHECK_FALSE(check_axiomatization(cert, *cyclic(2), {}).holds);
}

TEST_CASE("axiomatization witnesses a nontrivial automorphism of S3") {
    auto S3 = dihedral(3);  // 1 = r, 3 = s
    auto cert = axiomatize_with_tuple(S3, {1, 3});
    auto res = check_axiomatization(cert, *S3, {2, 4});  // r^2, s*r
    CHECK(res.holds);
    CHECK(res.iso[1] == 2);
    CHECK(res.iso[3] == 4);
    bool nontrivial = false;
    for (int g = 0; g < 6; ++g) nontrivial = nontrivial || res.iso[g] != g;
    CHECK(nontrivial);
    CHECK(oracles::tuple_iso(*S3, {1, 3}, *S3, {2, 4}).has_value());

    // r must map to an element of order 3 and s to an involution
    CHECK_FALSE(check_axiomatization(cert, *S3, {1, 1}).holds);
    CHECK_FALSE(check_axiomatization(cert, *S3, {3, 4}).holds);
    CHECK_FALSE(oracles::tuple_iso(*S3, {1, 3}, *S3, {3, 4}).has_value());
}

TEST_CASE("axiomatization pins duplicate and identity tuple entries") {
    auto C2 = cyclic(2);
    auto dup = axiomatize_with_tuple(C2, {1, 1});
    CHECK(check_axiomatization(dup, *C2, {1, 1}).holds);
    CHECK_FALSE(check_axiomatization(dup, *C2, {1, 0}).holds);
    CHECK(check_axiomatization(dup, *C2, {1, 0}).holds ==
          oracles::tuple_iso(*C2, {1, 1}, *C2, {1, 0}).has_value());

    auto with_id = axiomatize_with_tuple(C2, {1, 0});
    CHECK(check_axiomatization(with_id, *C2, {1, 0}).holds);
    CHECK_FALSE(check_axiomatization(with_id, *C2, {1, 1}).holds);
}

TEST_CASE("axiomatization error paths") {
    auto C4 = cyclic(4);
    CHECK_THROWS_AS(axiomatize_with_tuple(C4, {2}), NotGenerating);
    auto cert = axiomatize_with_tuple(C4, {1});
    CHECK_THROWS_AS(check_axiomatization(cert, *C4, {1, 2}), ArityMismatch);
}

TEST_CASE("certificate agrees with brute-force isomorphism search on small groups") {
    auto D4 = dihedral(4);
    auto Q8 = quaternion8();
    auto cert = axiomatize_with_tuple(D4, {1, 4});  // r, s generate D4
    SplitMix64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<int> t2{rng.below_int(8), rng.below_int(8)};
        for (const auto& B : {D4, Q8}) {
            bool cert_says = check_axiomatization(cert, *B, t2).holds;
            bool oracle_says = oracles::tuple_iso(*D4, {1, 4}, *B, t2).has_value();
            CHECK(cert_says == oracle_says);
        }
    }
}
