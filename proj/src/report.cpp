#include "biinterp/report.hpp"

#include <algorithm>

namespace biinterp {

bool VerificationReport::all_pass() const {
    return std::all_of(steps.begin(), steps.end(),
                       [](const ReportStep& s) { return s.pass && !s.skipped; });
}

ReportStep& VerificationReport::add(const std::string& name) {
    steps.emplace_back();
    steps.back().name = name;
    return steps.back();
}

const ReportStep* VerificationReport::find(const std::string& name) const {
    for (const auto& s : steps)
        if (s.name == name) return &s;
    return nullptr;
}

nlohmann::ordered_json VerificationReport::to_json(ReportLevel level) const {
    nlohmann::ordered_json j;
    j["instance"] = instance;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& s : steps) {
        nlohmann::ordered_json e;
        e["name"] = s.name;
        e["pass"] = s.pass;
        e["skipped"] = s.skipped;
        if (level == ReportLevel::Full) {
            e["witness_formula"] =
                s.witness_formula.empty() ? nlohmann::ordered_json() : nlohmann::ordered_json(s.witness_formula);
            e["counterexample"] = s.counterexample;
            e["detail"] = s.detail;
        }
        arr.push_back(std::move(e));
    }
    j["steps"] = std::move(arr);
    j["verdict"] = verdict();
    return j;
}

}  // namespace biinterp
