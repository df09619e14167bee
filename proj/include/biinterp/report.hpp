#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace biinterp {

enum class ReportLevel { Summary, Full };

struct ReportStep {
    std::string name;
    bool pass = false;
    bool skipped = false;
    std::string witness_formula;            // empty when none
    nlohmann::ordered_json counterexample;  // null when none
    nlohmann::ordered_json detail;          // null when none
};

/// Structured pass/fail report. Verification failures are entries, never
/// exceptions, so a report is always produced.
struct VerificationReport {
    std::string instance;
    std::string pass_label = "pass";
    std::string fail_label = "fail";
    std::vector<ReportStep> steps;

    bool all_pass() const;
    const std::string& verdict() const { return all_pass() ? pass_label : fail_label; }
    ReportStep& add(const std::string& name);
    const ReportStep* find(const std::string& name) const;

    nlohmann::ordered_json to_json(ReportLevel level = ReportLevel::Full) const;
};

}  // namespace biinterp
