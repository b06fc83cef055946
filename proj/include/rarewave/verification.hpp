#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rarewave {

/// One certified assertion: a measured value against its threshold, with the
/// witnessing point when the check fails (or when it is informative).
struct CheckResult {
    std::string name;
    bool pass = false;
    bool hard = true;  ///< hard assertions gate the exit code; notes do not
    double value = 0.0;
    double threshold = 0.0;
    std::string witness;
    std::string note;
};

struct VerificationReport {
    std::string title;
    std::vector<CheckResult> checks;

    bool all_pass() const;
    void add(CheckResult c) { checks.push_back(std::move(c)); }

    /// CSV: name,pass,hard,value,threshold,witness,note
    void write_csv(std::ostream& os) const;
    /// pass/fail per assertion with witnesses
    void print_summary(std::ostream& os) const;
};

} // namespace rarewave
