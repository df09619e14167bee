#include "biinterp/cli.hpp"

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "biinterp/corpus.hpp"

namespace biinterp {

namespace {

constexpr int kOk = 0;
constexpr int kVerificationFailed = 1;
constexpr int kInputError = 2;

struct CommonFlags {
    std::string group_expr;
    std::string kappa;
    std::vector<std::string> params;
    std::string mode = "auto";
    long long budget = kDefaultBudget;
    std::uint64_t seed = 1;
    int suite_size = 0;
    std::string out;
};

void add_instance_flags(CLI::App* cmd, CommonFlags& f, bool need_kappa) {
    cmd->add_option("--group", f.group_expr,
                    "group: builder expression (cyclic:N, dihedral:N, symmetric:N, quaternion8, "
                    "product:a,b) or a JSON group file")
        ->required();
    auto* k = cmd->add_option("--kappa", f.kappa, "formula with one free variable defining H");
    if (need_kappa) k->required();
    cmd->add_option("--param", f.params, "parameter binding name=id (repeatable)");
    cmd->add_option("--mode", f.mode, "encoding mode: auto|standard|star")
        ->check(CLI::IsMember({"auto", "standard", "star"}));
    cmd->add_option("--budget", f.budget, "enumeration budget per evaluation call")
        ->envname("BIINTERP_BUDGET");
    cmd->add_option("--seed", f.seed, "seed for sampled checks and random suites");
    cmd->add_option("--suite-size", f.suite_size, "random sentences in the translation suite");
    cmd->add_option("--out", f.out, "write the JSON report to this path");
}

InstanceSpec spec_from_flags(const CommonFlags& f, const std::string& name) {
    InstanceSpec spec;
    spec.name = name;
    spec.group_expr = f.group_expr;
    spec.kappa_text = f.kappa;
    for (const auto& p : f.params) {
        auto eq = p.find('=');
        if (eq == std::string::npos) throw Error("bad --param '" + p + "', expected name=id");
        size_t used = 0;
        std::string value = p.substr(eq + 1);
        int id = std::stoi(value, &used);
        if (used != value.size()) throw Error("bad --param value in '" + p + "'");
        spec.params[p.substr(0, eq)] = id;
    }
    if (f.mode == "standard") spec.mode = ModePolicy::ForceStandard;
    else if (f.mode == "star") spec.mode = ModePolicy::ForceStar;
    else spec.mode = ModePolicy::Auto;
    spec.budget = f.budget;
    spec.seed = f.seed;
    spec.suite_size = f.suite_size;
    return spec;
}

void write_json(const std::string& path, const nlohmann::ordered_json& j) {
    if (path.empty()) return;
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

void write_error_report(const std::string& path, const std::string& message) {
    if (path.empty()) return;
    nlohmann::ordered_json j;
    j["error"] = message;
    j["verdict"] = "input-error";
    try {
        write_json(path, j);
    } catch (const Error&) {
        // best effort
    }
}

int cmd_verify(const CommonFlags& f) {
    InstanceSpec spec;
    InstanceRun run;
    try {
        spec = spec_from_flags(f, f.group_expr);
        run = run_instance(spec);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        write_error_report(f.out, e.what());
        return kInputError;
    }
    for (const auto& step : run.report.steps)
        std::cout << (step.skipped ? "skip" : step.pass ? "pass" : "FAIL") << "  " << step.name
                  << "\n";
    std::cout << "verdict: " << run.report.verdict() << "\n";
    try {
        write_json(f.out, run.to_json());
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return run.report.all_pass() ? kOk : kVerificationFailed;
}

int cmd_translate(const CommonFlags& f, const std::string& phi_text) {
    LoadedInstance li;
    Formula phi;
    InstanceSpec spec;
    try {
        spec = spec_from_flags(f, f.group_expr);
        li = load_instance(spec);
        phi = parse_formula(phi_text);
        if (!free_vars(phi).empty()) throw Error("phi must be a sentence (no free variables)");
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }

    nlohmann::ordered_json j;
    j["phi"] = pretty(phi);
    int code = kOk;
    try {
        auto ext = extension_data(li.G, li.H);
        auto codec = build_codec(ext, spec.mode);
        ExactnessOptions eopt{spec.budget, mix_seed(spec.seed, "translate"), 10000};
        auto interp = interpret_G_in_H(ext, codec, eopt);
        TranslationResult tr = translate(phi, interp);
        j["psi"] = pretty(tr.psi);
        j["r"] = tr.r;
        j["s"] = tr.s;
        std::cout << "psi: " << pretty(tr.psi) << "\n";
        try {
            Budget b1{spec.budget, 0};
            bool source_true = evaluate(*li.G, phi, li.env, {}, b1);
            Budget b2{spec.budget, 0};
            bool target_true = evaluate(*interp.target, tr.psi, beta_env(tr, interp, {}), {}, b2);
            j["source_true"] = source_true;
            j["target_true"] = target_true;
            j["equivalent"] = source_true == target_true;
            std::cout << "source |= phi: " << (source_true ? "true" : "false") << "\n"
                      << "target |= psi: " << (target_true ? "true" : "false") << "\n"
                      << "equivalence: " << (source_true == target_true ? "verified" : "FAILED")
                      << "\n";
            if (source_true != target_true) code = kVerificationFailed;
        } catch (const ComplexityCap& cap) {
            j["complexity_cap"] = {{"count", cap.count}, {"limit", cap.limit}};
            std::cout << "equivalence: skipped, " << cap.what() << "\n";
            code = kVerificationFailed;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        j["error"] = e.what();
        code = kVerificationFailed;
    }
    try {
        write_json(f.out, j);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return code;
}

std::vector<int> parse_tuple(const std::string& text) {
    std::vector<int> tuple;
    if (text.empty()) return tuple;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        std::string part =
            comma == std::string::npos ? text.substr(pos) : text.substr(pos, comma - pos);
        size_t used = 0;
        tuple.push_back(std::stoi(part, &used));
        if (used != part.size()) throw Error("bad tuple entry '" + part + "'");
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return tuple;
}

int cmd_axiomatize(const std::string& group_expr, const std::string& tuple_text,
                   const std::string& out) {
    try {
        GroupPtr H = build_group(group_expr);
        auto tuple = parse_tuple(tuple_text);
        auto cert = axiomatize_with_tuple(H, tuple);
        nlohmann::ordered_json j;
        j["sentence"] = pretty(cert.sentence);
        j["tuple_arity"] = static_cast<int>(cert.tuple.size());
        if (out.empty())
            std::cout << j.dump(2) << "\n";
        else
            write_json(out, j);
        return kOk;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
}

int cmd_check_axiom(const std::string& cert_path, const std::string& group_expr,
                    const std::string& tuple_text) {
    Formula sentence;
    std::vector<int> tuple;
    GroupPtr H2;
    int arity = 0;
    try {
        std::ifstream in(cert_path);
        if (!in) throw Error("cannot open certificate '" + cert_path + "'");
        nlohmann::json j;
        in >> j;
        sentence = parse_formula(j.at("sentence").get<std::string>());
        arity = j.at("tuple_arity").get<int>();
        H2 = build_group(group_expr);
        tuple = parse_tuple(tuple_text);
        if (static_cast<int>(tuple.size()) != arity)
            throw ArityMismatch(arity, static_cast<int>(tuple.size()));
        for (int v : tuple)
            if (v < 0 || v >= H2->order()) throw BadElementLiteral(v);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    Assignment assign;
    auto fv = free_vars(sentence);
    // Certificate variables are y1..ys; bind them by numeric suffix.
    for (int i = 0; i < arity; ++i) {
        std::string name = "y" + std::to_string(i + 1);
        if (!fv.count(name)) {
            std::cerr << "error: certificate lacks variable " << name << "\n";
            return kInputError;
        }
        assign[name] = tuple[i];
    }
    bool holds = evaluate(*H2, sentence, {}, assign);
    std::cout << (holds ? "true" : "false") << "\n";
    return holds ? kOk : kVerificationFailed;
}

int cmd_corpus(const CommonFlags& f, const std::string& instances_csv, bool instances_given,
               const std::string& fault) {
    std::vector<InstanceSpec> specs = bundled_corpus();
    if (instances_given) {
        std::vector<InstanceSpec> filtered;
        if (!instances_csv.empty()) {
            std::set<std::string> wanted;
            size_t pos = 0;
            while (pos <= instances_csv.size()) {
                size_t comma = instances_csv.find(',', pos);
                std::string part = comma == std::string::npos
                                       ? instances_csv.substr(pos)
                                       : instances_csv.substr(pos, comma - pos);
                if (!part.empty()) wanted.insert(part);
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            for (auto& s : specs)
                if (wanted.count(s.name)) filtered.push_back(std::move(s));
        }
        specs = std::move(filtered);
    }
    for (auto& s : specs) {
        s.budget = f.budget;
        s.seed = f.seed;
        s.suite_size = f.suite_size;
    }

    nlohmann::ordered_json out;
    out["seed"] = f.seed;
    if (!fault.empty()) out["fault"] = fault;
    auto arr = nlohmann::ordered_json::array();
    bool all_ok = true;
    for (const auto& spec : specs) {
        InstanceRun run;
        try {
            run = run_instance(spec, spec.name == fault);
        } catch (const Error& e) {
            std::cerr << "error: " << spec.name << ": " << e.what() << "\n";
            write_error_report(f.out, e.what());
            return kInputError;
        }
        bool ok = run.report.all_pass();
        all_ok = all_ok && ok;
        std::cout << spec.name << "  |G|=" << run.order << " |H|=" << run.subgroup_order
                  << " m=" << run.index << "  " << run.report.verdict() << "\n";
        if (!ok) {
            for (const auto& step : run.report.steps)
                if (!step.pass && !step.skipped)
                    std::cout << "  failed step: " << step.name << "\n";
        }
        arr.push_back(run.to_json());
    }
    out["instances"] = std::move(arr);
    std::cout << (all_ok ? "corpus: all instances pass" : "corpus: FAILURES") << " ("
              << specs.size() << " instances)\n";
    try {
        write_json(f.out, out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return all_ok ? kOk : kVerificationFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"verifier for bi-interpretability of a finite group with a definable normal "
                 "subgroup of finite index"};
    app.require_subcommand(1);

    CommonFlags vf;
    auto* verify = app.add_subcommand("verify", "run the full verification pipeline");
    add_instance_flags(verify, vf, true);

    CommonFlags tf;
    std::string phi_text;
    auto* translate = app.add_subcommand("translate", "compile a sentence about G into one about H");
    add_instance_flags(translate, tf, true);
    translate->add_option("--phi", phi_text, "sentence to translate")->required();

    std::string ax_group, ax_tuple, ax_out;
    auto* axiomatize =
        app.add_subcommand("axiomatize", "emit a sentence pinning (group, tuple) up to isomorphism");
    axiomatize->add_option("--group", ax_group, "group expression or file")->required();
    axiomatize->add_option("--tuple", ax_tuple, "comma-separated generating tuple")->required();
    axiomatize->add_option("--out", ax_out, "write the certificate to this path");

    std::string ck_cert, ck_group, ck_tuple;
    auto* check = app.add_subcommand("check-axiom", "evaluate a certificate against a group and tuple");
    check->add_option("--cert", ck_cert, "certificate file")->required();
    check->add_option("--group", ck_group, "group expression or file")->required();
    check->add_option("--tuple", ck_tuple, "comma-separated tuple")->required();

    CommonFlags cf;
    std::string instances_csv, fault;
    auto* corpus = app.add_subcommand("corpus", "verify every bundled instance");
    corpus->add_option("--budget", cf.budget, "enumeration budget per evaluation call")
        ->envname("BIINTERP_BUDGET");
    corpus->add_option("--seed", cf.seed, "seed for sampled checks");
    corpus->add_option("--suite-size", cf.suite_size, "random sentences per instance");
    corpus->add_option("--out", cf.out, "write the combined JSON report to this path");
    auto* inst_opt =
        corpus->add_option("--instances", instances_csv, "run only these instances (comma list)");
    corpus->add_option("--fault", fault, "inject a cocycle fault into the named instance");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }

    try {
        if (verify->parsed()) return cmd_verify(vf);
        if (translate->parsed()) return cmd_translate(tf, phi_text);
        if (axiomatize->parsed()) return cmd_axiomatize(ax_group, ax_tuple, ax_out);
        if (check->parsed()) return cmd_check_axiom(ck_cert, ck_group, ck_tuple);
        if (corpus->parsed())
            return cmd_corpus(cf, instances_csv, inst_opt->count() > 0, fault);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

int run_cli(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args);
}

}  // namespace biinterp
