#pragma once

/**
 * @file report.hpp
 * @brief Uniform pass/fail check lists returned by the verification operations.
 */

#include <string>
#include <vector>

namespace cyclofermat {

struct CheckLine {
    std::string label;
    bool pass = false;
};

struct Report {
    std::string title;
    std::vector<CheckLine> lines;

    bool all_pass() const {
        for (const auto& l : lines)
            if (!l.pass) return false;
        return true;
    }
    std::size_t failure_count() const {
        std::size_t n = 0;
        for (const auto& l : lines)
            if (!l.pass) ++n;
        return n;
    }
    std::string to_string() const {
        std::string out = title + "\n";
        for (const auto& l : lines) out += std::string(l.pass ? "  ok   " : "  FAIL ") + l.label + "\n";
        out += all_pass() ? "all checks passed\n" : std::to_string(failure_count()) + " check(s) failed\n";
        return out;
    }
};

} // namespace cyclofermat
