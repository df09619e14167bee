#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "biinterp/folog.hpp"
#include "biinterp/gamma.hpp"
#include "biinterp/report.hpp"

namespace biinterp {

struct ExactnessOptions {
    long long budget = kDefaultBudget;
    std::uint64_t seed = 1;
    int random_probes = 10000;
};

/// Result of checking that a formula's definable set equals an expected set.
/// When the raw enumeration |M|^arity fits the budget the comparison is
/// exhaustive; otherwise the formula is evaluated on a caller-supplied
/// candidate list plus seeded random probes.
struct ExactCheckOutcome {
    bool pass = true;
    bool exhaustive = true;
    long long evaluated = 0;
    nlohmann::ordered_json counterexample;  // null when pass
};

ExactCheckOutcome check_definable_exact(const GroupTable& M, const Formula& f,
                                        const std::vector<std::string>& vars, const ParamEnv& env,
                                        const std::set<std::vector<int>>& expected,
                                        const std::vector<std::vector<int>>& candidates,
                                        const ExactnessOptions& opt, const std::string& salt);

/// An interpretation of `source` in `target`: a definable domain of
/// dim-tuples, a definable graph of the induced multiplication, and the
/// explicit coordinate bijection realizing the isomorphism. Both definable
/// sets are verified against the coordinate map at construction.
struct Interpretation {
    GroupPtr source;
    GroupPtr target;
    int dim = 1;
    Formula domain_formula;  // free variables x0..x{dim-1}
    Formula mult_formula;    // free variables x0.., y0.., z0..
    ParamEnv env;            // bindings for @params appearing in the formulas
    std::vector<std::vector<int>> coord_map;  // source id -> target tuple

    ExactCheckOutcome domain_check, mult_check;
};

/// The subgroup direction: dim 1, domain cut out by kappa, multiplication
/// inherited from the ambient group. Throws KappaMismatch when kappa does
/// not define exactly H.
Interpretation interpret_H_in_G(const GroupPtr& G, const Subgroup& H, const Formula& kappa,
                                const ParamEnv& env, const ExactnessOptions& opt = {});

/// A formula chi(x, y) over H whose definable set is exactly the graph of
/// the given automorphism. Prefers an inner witness "y = #c * x * #c^-1";
/// falls back to the full graph disjunction (definability with parameters
/// makes that legitimate).
Formula sigma_defining_formula(const GroupPtr& H, const std::vector<int>& sigma);

/// The quotient-free direction: G interpreted in H on the encoded tuples.
/// domain_formula is the disjunction of the row patterns; mult_formula is
/// the disjunction over all row-pair cases with the conjugation maps
/// expanded through sigma_defining_formula and the cocycle values embedded
/// as literals. Throws FormulaExactnessFailure if either definable set
/// disagrees with the codec.
Interpretation interpret_G_in_H(const ExtensionPtr& ext, const GammaCodec& codec,
                                const ExactnessOptions& opt = {});

struct TranslationResult {
    Formula psi;
    int dim = 1;
    std::vector<std::string> param_order;  // source parameters, first-use order
    std::map<std::string, std::vector<std::string>> param_blocks;
    std::map<std::string, std::vector<std::string>> var_blocks;  // free source variables
    int r = 0;  // source parameter arity
    int s = 0;  // target parameter arity, dim * r
};

/// Compiles a formula about the source into one about the target by
/// structural recursion: variables become dim-wide blocks, each Mul/Inv is
/// materialized as an existential block constrained by mult_formula
/// (innermost-leftmost first, blocks named v0, v1, ...), equality becomes
/// blockwise equality, and quantifiers relativize to domain_formula.
TranslationResult translate(const Formula& phi, const Interpretation& interp);

/// Target-side parameter environment for a source environment: interp.env
/// plus the coordinatewise image of each source parameter.
ParamEnv beta_env(const TranslationResult& tr, const Interpretation& interp,
                  const ParamEnv& source_env);

/// Target-side assignment for the blocks of free source variables.
Assignment block_assignment(const TranslationResult& tr, const Interpretation& interp,
                            const std::map<std::string, int>& source_values);

struct ConditionAResult {
    Formula chi;  // free variables x, y over H
    ExactCheckOutcome check;
};

/// Realizes the reduction direction on one element: translates
/// x * #t = #t * y through the tuple interpretation, specializes both
/// blocks to subgroup elements via the re-embedding formula, and verifies
/// the result defines exactly the graph of a -> t^-1 * a * t on H. Throws
/// GraphMismatch when the graph differs.
ConditionAResult condition_a_from_b(const Interpretation& g_in_h, int t, const ExtensionData& ext,
                                    const ExactnessOptions& opt = {});

struct PipelineOptions {
    ModePolicy mode = ModePolicy::Auto;
    long long budget = kDefaultBudget;
    std::uint64_t seed = 1;
    int random_probes = 10000;
    bool inject_cocycle_fault = false;  // test fixture: corrupts c[2][2] before checking
    std::string label;                  // instance name for the report and seed derivation
};

/// End-to-end verification: (1) extension identities, (2) encode is an
/// isomorphism onto the tuples with both operation paths agreeing, (3) both
/// interpretations exact, (4) the composed self-map of H definable, (5) the
/// composed self-map of G definable via the coset membership tests, (6) the
/// conjugation maps recovered through translation for every transversal
/// element. Failures are report entries; later steps are skipped once a
/// step fails.
VerificationReport verify_biinterpretation(const GroupPtr& G, const Subgroup& H,
                                           const Formula& kappa, const ParamEnv& env,
                                           const PipelineOptions& opts = {});

struct SuiteResult {
    int total = 0;
    int checked = 0;
    int skipped = 0;
    int failed = 0;
    nlohmann::ordered_json failures = nlohmann::ordered_json::array();

    nlohmann::ordered_json to_json() const;
};

/// Seeded equivalence suite: four fixed sentences (commutativity, a
/// nontrivial element, exponent three, an involution) plus n random
/// sentences of quantifier rank <= 2; each must satisfy
/// source |= phi  <=>  target |= psi. Evaluations beyond the budget are
/// counted as skipped.
SuiteResult translation_suite(const Interpretation& interp, int n, std::uint64_t seed,
                              long long budget);

}  // namespace biinterp
