#include "biinterp/corpus.hpp"

#include <fstream>

namespace biinterp {

nlohmann::ordered_json InstanceSpec::to_json() const {
    nlohmann::ordered_json j;
    j["name"] = name;
    j["group"] = group_expr;
    j["kappa"] = kappa_text;
    j["params"] = params;
    j["mode"] = mode == ModePolicy::Auto ? "auto"
                : mode == ModePolicy::ForceStar ? "star"
                                                : "standard";
    j["budget"] = budget;
    j["seed"] = seed;
    j["suite_size"] = suite_size;
    return j;
}

namespace {

bool starts_with(const std::string& s, const std::string& prefix) {
    return s.rfind(prefix, 0) == 0;
}

int parse_count(const std::string& s) {
    size_t used = 0;
    int n = std::stoi(s, &used);
    if (used != s.size()) throw Error("bad group size '" + s + "'");
    return n;
}

GroupPtr build_simple(const std::string& expr, int max_order) {
    if (expr == "quaternion8") return quaternion8();
    if (starts_with(expr, "cyclic:")) return cyclic(parse_count(expr.substr(7)), max_order);
    if (starts_with(expr, "dihedral:")) return dihedral(parse_count(expr.substr(9)), max_order);
    if (starts_with(expr, "symmetric:")) return symmetric(parse_count(expr.substr(10)));
    throw Error("unknown group expression '" + expr + "'");
}

}  // namespace

GroupPtr build_group(const std::string& expr, int max_order) {
    if (starts_with(expr, "product:")) {
        std::string rest = expr.substr(8);
        std::vector<std::string> parts;
        size_t pos = 0;
        while (pos <= rest.size()) {
            size_t comma = rest.find(',', pos);
            if (comma == std::string::npos) {
                parts.push_back(rest.substr(pos));
                break;
            }
            parts.push_back(rest.substr(pos, comma - pos));
            pos = comma + 1;
        }
        if (parts.size() < 2) throw Error("product needs at least two factors");
        GroupPtr acc = build_simple(parts[0], max_order);
        for (size_t i = 1; i < parts.size(); ++i)
            acc = direct_product(acc, build_simple(parts[i], max_order), max_order);
        return acc;
    }
    if (expr == "quaternion8" || starts_with(expr, "cyclic:") || starts_with(expr, "dihedral:") ||
        starts_with(expr, "symmetric:"))
        return build_simple(expr, max_order);

    std::ifstream in(expr);
    if (!in) throw Error("cannot open group file '" + expr + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw Error("bad group file '" + expr + "': " + e.what());
    }
    return group_from_json(j, max_order);
}

std::vector<InstanceSpec> bundled_corpus() {
    auto mk = [](std::string name, std::string group, std::string kappa,
                 std::map<std::string, int> params = {}) {
        InstanceSpec s;
        s.name = std::move(name);
        s.group_expr = std::move(group);
        s.kappa_text = std::move(kappa);
        s.params = std::move(params);
        return s;
    };
    return {
        mk("C4_C2", "cyclic:4", "exists y. y*y = x"),
        mk("C6_C3", "cyclic:6", "exists y. y*y = x"),
        mk("D4_C4", "dihedral:4", "x*@r = @r*x", {{"r", 1}}),
        mk("E8_V4", "product:cyclic:2,cyclic:2,cyclic:2", "x = 1 | x = #2 | x = #4 | x = #6"),
        mk("Q8_center", "quaternion8", "forall y. x*y = y*x"),
        mk("S3_A3", "symmetric:3", "exists y. y*y = x"),
        mk("S4_A4", "symmetric:4", "exists y. y*y = x"),
        mk("S4_V4", "symmetric:4", "x*x = 1 & (forall y. (y*x*y^-1)*x = x*(y*x*y^-1))"),
    };
}

LoadedInstance load_instance(const InstanceSpec& spec) {
    LoadedInstance li;
    li.G = build_group(spec.group_expr);
    li.kappa = parse_formula(spec.kappa_text);
    li.env = ParamEnv(spec.params.begin(), spec.params.end());
    auto fv = free_vars(li.kappa);
    if (fv.size() != 1)
        throw Error("kappa must have exactly one free variable, found " +
                    std::to_string(fv.size()));
    Budget budget{spec.budget, 0};
    auto members_set = definable_set(*li.G, li.kappa, {*fv.begin()}, li.env, budget);
    std::vector<int> members;
    members.reserve(members_set.size());
    for (const auto& row : members_set) members.push_back(row[0]);
    li.H = make_subgroup(li.G, members);  // NotASubgroup when kappa cuts out something else
    return li;
}

InstanceRun run_instance(const InstanceSpec& spec, bool inject_fault) {
    InstanceRun run;
    run.spec = spec;

    PipelineOptions popts;
    popts.mode = spec.mode;
    popts.budget = spec.budget;
    popts.seed = spec.seed;
    popts.inject_cocycle_fault = inject_fault;
    popts.label = spec.name;

    LoadedInstance li;
    try {
        li = load_instance(spec);
    } catch (const NotASubgroup& e) {
        run.order = 0;
        run.report.instance = spec.name;
        run.report.pass_label = "bi-interpretable";
        run.report.fail_label = "not-bi-interpretable";
        auto& step = run.report.add("extension_identities");
        step.pass = false;
        step.counterexample["error"] = e.what();
        for (const char* name :
             {"tuple_encoding_isomorphism", "interpretation_exactness",
              "subgroup_reembedding_definable", "group_reembedding_definable",
              "conjugation_definable"})
            run.report.add(name).skipped = true;
        return run;
    }

    run.order = li.G->order();
    run.subgroup_order = li.H.size();
    run.index = run.subgroup_order ? run.order / run.subgroup_order : 0;
    run.report = verify_biinterpretation(li.G, li.H, li.kappa, li.env, popts);

    if (spec.suite_size > 0 && run.report.all_pass() && !inject_fault) {
        auto ext = extension_data(li.G, li.H);
        auto codec = build_codec(ext, spec.mode);
        ExactnessOptions eopt{spec.budget, mix_seed(spec.seed, spec.name), 10000};
        auto interp = interpret_G_in_H(ext, codec, eopt);
        run.suite = translation_suite(interp, spec.suite_size, mix_seed(spec.seed, spec.name),
                                      spec.budget);
    }
    return run;
}

nlohmann::ordered_json InstanceRun::to_json(ReportLevel level) const {
    nlohmann::ordered_json j;
    j["spec"] = spec.to_json();
    j["order"] = order;
    j["subgroup_order"] = subgroup_order;
    j["index"] = index;
    j["report"] = report.to_json(level);
    if (suite) j["translation_suite"] = suite->to_json();
    return j;
}

}  // namespace biinterp
