#pragma once

#include <optional>
#include <string>

#include "biinterp/interp.hpp"

namespace biinterp {

/// One verification instance: a group, a formula cutting out the normal
/// subgroup, parameter bindings, and run options.
struct InstanceSpec {
    std::string name;
    std::string group_expr;  // builder expression or path to a group file
    std::string kappa_text;
    std::map<std::string, int> params;
    ModePolicy mode = ModePolicy::Auto;
    long long budget = kDefaultBudget;
    std::uint64_t seed = 1;
    int suite_size = 0;

    nlohmann::ordered_json to_json() const;
};

/// Builder expressions: "cyclic:N", "dihedral:N", "symmetric:N",
/// "quaternion8", "product:<simple>,<simple>[,...]"; anything else is read
/// as a path to a JSON group file.
GroupPtr build_group(const std::string& expr, int max_order = kDefaultMaxOrder);

/// The bundled instances, ordered by name.
std::vector<InstanceSpec> bundled_corpus();

struct LoadedInstance {
    GroupPtr G;
    Subgroup H;
    Formula kappa;
    ParamEnv env;
};

/// Builds the group, parses kappa, and derives H as the set kappa defines.
/// Throws on malformed inputs and when the defined set is not a subgroup.
LoadedInstance load_instance(const InstanceSpec& spec);

struct InstanceRun {
    InstanceSpec spec;
    int order = 0;
    int subgroup_order = 0;
    int index = 0;
    VerificationReport report;
    std::optional<SuiteResult> suite;

    nlohmann::ordered_json to_json(ReportLevel level = ReportLevel::Full) const;
};

/// Runs the full pipeline on one instance. Input errors (bad expression,
/// unparseable formula, unresolved parameter) propagate; everything after
/// that lands in the report.
InstanceRun run_instance(const InstanceSpec& spec, bool inject_fault = false);

}  // namespace biinterp
