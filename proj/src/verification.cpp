#include "rarewave/verification.hpp"

#include <cstdio>
#include <ostream>

namespace rarewave {

bool VerificationReport::all_pass() const {
    for (const auto& c : checks)
        if (c.hard && !c.pass) return false;
    return true;
}

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += '"';
    return out;
}

} // namespace

void VerificationReport::write_csv(std::ostream& os) const {
    os << "name,pass,hard,value,threshold,witness,note\n";
    for (const auto& c : checks) {
        os << csv_escape(c.name) << ',' << (c.pass ? 1 : 0) << ',' << (c.hard ? 1 : 0)
           << ',' << num(c.value) << ',' << num(c.threshold) << ','
           << csv_escape(c.witness) << ',' << csv_escape(c.note) << '\n';
    }
}

void VerificationReport::print_summary(std::ostream& os) const {
    os << "== " << title << " ==\n";
    for (const auto& c : checks) {
        os << (c.pass ? "[PASS] " : (c.hard ? "[FAIL] " : "[note] ")) << c.name
           << "  (value " << num(c.value) << ", threshold " << num(c.threshold) << ")";
        if (!c.witness.empty()) os << "  witness: " << c.witness;
        if (!c.note.empty()) os << "  -- " << c.note;
        os << '\n';
    }
    os << (all_pass() ? "ALL HARD ASSERTIONS PASS" : "HARD ASSERTION FAILURE") << '\n';
}

} // namespace rarewave
