#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace biinterp {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// -- group-core ------------------------------------------------------------

struct NotLatinSquare : Error {
    int row, col;
    NotLatinSquare(int r, int c, const std::string& why)
        : Error("not a Latin square at cell (" + std::to_string(r) + "," + std::to_string(c) +
                "): " + why),
          row(r), col(c) {}
};

struct NoIdentityAtZero : Error {
    int row, col;
    NoIdentityAtZero(int r, int c)
        : Error("element 0 is not a two-sided identity: cell (" + std::to_string(r) + "," +
                std::to_string(c) + ")"),
          row(r), col(c) {}
};

struct NotAssociative : Error {
    int i, j, l;
    NotAssociative(int a, int b, int c)
        : Error("associativity fails at (" + std::to_string(a) + "," + std::to_string(b) + "," +
                std::to_string(c) + ")"),
          i(a), j(b), l(c) {}
};

struct NotAPermutation : Error {
    int index;
    explicit NotAPermutation(int gen_index)
        : Error("generator " + std::to_string(gen_index) + " is not a permutation"),
          index(gen_index) {}
};

struct GroupTooLarge : Error {
    int limit;
    explicit GroupTooLarge(int cap)
        : Error("group exceeds the size cap of " + std::to_string(cap)), limit(cap) {}
};

struct NotASubgroup : Error {
    explicit NotASubgroup(const std::string& why) : Error("not a subgroup: " + why) {}
};

// -- extension --------------------------------------------------------------

struct NotNormal : Error {
    NotNormal() : Error("subgroup is not normal") {}
};

struct TrivialH : Error {
    TrivialH() : Error("subgroup is trivial (order 1)") {}
};

struct TrivialIndex : Error {
    TrivialIndex() : Error("index is 1; treat G = H as the identity case, not an extension") {}
};

// -- folog -------------------------------------------------------------------

struct SyntaxError : Error {
    std::size_t pos;
    SyntaxError(std::size_t at, const std::string& why)
        : Error("syntax error at offset " + std::to_string(at) + ": " + why), pos(at) {}
};

struct UnboundVariable : Error {
    std::string name;
    explicit UnboundVariable(std::string n)
        : Error("unbound variable '" + n + "'"), name(std::move(n)) {}
};

struct UnboundParameter : Error {
    std::string name;
    explicit UnboundParameter(std::string n)
        : Error("unbound parameter '@" + n + "'"), name(std::move(n)) {}
};

struct BadElementLiteral : Error {
    int id;
    explicit BadElementLiteral(int v)
        : Error("element literal #" + std::to_string(v) + " out of range"), id(v) {}
};

struct ComplexityCap : Error {
    long long count, limit;
    ComplexityCap(long long n, long long lim)
        : Error("enumeration count " + std::to_string(n) + " exceeds budget " +
                std::to_string(lim)),
          count(n), limit(lim) {}
};

struct NotGenerating : Error {
    NotGenerating() : Error("tuple does not generate the group") {}
};

struct ArityMismatch : Error {
    int expected, got;
    ArityMismatch(int want, int have)
        : Error("tuple arity mismatch: expected " + std::to_string(want) + ", got " +
                std::to_string(have)),
          expected(want), got(have) {}
};

// -- gamma -------------------------------------------------------------------

struct NotInGamma : Error {
    explicit NotInGamma(const std::string& tuple)
        : Error("tuple " + tuple + " matches no encoding pattern") {}
};

struct InvalidMode : Error {
    explicit InvalidMode(const std::string& why) : Error("invalid codec mode: " + why) {}
};

// -- interp ------------------------------------------------------------------

struct NotAutomorphism : Error {
    NotAutomorphism() : Error("map is not an automorphism") {}
};

struct KappaMismatch : Error {
    explicit KappaMismatch(const std::string& diff)
        : Error("formula does not define the expected subgroup; symmetric difference: " + diff) {}
};

struct FormulaExactnessFailure : Error {
    explicit FormulaExactnessFailure(const std::string& where)
        : Error("definable set differs from the expected set: " + where) {}
};

struct GraphMismatch : Error {
    explicit GraphMismatch(const std::string& where)
        : Error("formula does not define the expected graph: " + where) {}
};

}  // namespace biinterp
