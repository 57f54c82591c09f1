#pragma once

/**
 * @file criterion.hpp
 * @brief Eligibility of a prime r for the two-case elimination argument: 2 must be
 *        inert in K, the narrow class number h+ of K must be odd, and the case
 *        r | a additionally needs r != 1 (mod 8). Inertness is computed; h+ parity
 *        comes from a user-supplied table and is never guessed: a missing entry
 *        yields an explicit "unknown" verdict.
 */

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "prime_ideals.hpp"
#include "real_cyclotomic.hpp"

namespace cyclofermat {

enum class TriState { no, unknown, yes };

inline std::string to_string(TriState t) {
    switch (t) {
        case TriState::yes: return "yes";
        case TriState::no: return "no";
        default: return "unknown";
    }
}

struct NarrowClassEntry {
    Int h_plus;
    std::string source;
};

class NarrowClassTable {
  public:
    NarrowClassTable() = default;

    void insert(std::uint64_t r, NarrowClassEntry e) { rows_[r] = std::move(e); }
    bool contains(std::uint64_t r) const { return rows_.count(r) != 0; }
    const NarrowClassEntry& at(std::uint64_t r) const {
        auto it = rows_.find(r);
        if (it == rows_.end())
            throw std::invalid_argument("narrow class table has no entry for r = " +
                                        std::to_string(r));
        return it->second;
    }
    std::size_t size() const { return rows_.size(); }
    const std::map<std::uint64_t, NarrowClassEntry>& rows() const { return rows_; }

  private:
    std::map<std::uint64_t, NarrowClassEntry> rows_;
};

/// CSV rows "r,h_plus,source"; '#' starts a comment. Every r must be a prime >= 5
/// and every h_plus positive.
inline NarrowClassTable load_narrow_class_table(std::istream& in) {
    NarrowClassTable table;
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("narrow class table line " + std::to_string(lineno) + ": " +
                                    why);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto notspace = [](unsigned char c) { return !std::isspace(c); };
        line.erase(line.begin(), std::find_if(line.begin(), line.end(), notspace));
        line.erase(std::find_if(line.rbegin(), line.rend(), notspace).base(), line.end());
        if (line.empty()) continue;

        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) fields.push_back(tok);
        if (fields.size() != 3) fail("expected r,h_plus,source");

        std::uint64_t r = 0;
        try {
            std::size_t used = 0;
            r = std::stoull(fields[0], &used);
            if (used != fields[0].size()) throw std::invalid_argument(fields[0]);
        } catch (const std::exception&) {
            fail("'" + fields[0] + "' is not an integer");
        }
        if (r < 5 || !is_prime_u64(r)) fail(std::to_string(r) + " is not a prime >= 5");

        Int h;
        try {
            h = Int(fields[1]);
        } catch (const std::invalid_argument&) {
            fail("'" + fields[1] + "' is not an integer");
        }
        if (h <= 0) fail("h_plus must be positive");

        if (table.contains(r)) fail("duplicate entry for r = " + std::to_string(r));
        table.insert(r, NarrowClassEntry{h, fields[2]});
    }
    return table;
}

inline NarrowClassTable load_narrow_class_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open narrow class table: " + path);
    return load_narrow_class_table(in);
}

struct EligibilityRecord {
    std::uint64_t r;
    bool two_inert;
    TriState h_plus_odd; // unknown when the table has no entry for r
    int r_mod_8;
    TriState case_r_ndiv_a; // two_inert and h_plus_odd
    TriState case_r_div_a;  // additionally r != 1 (mod 8)
    TriState overall;       // both cases
};

namespace detail {

/// The pure verdict combiner, separated so every branch is testable directly.
inline void combine_verdicts(EligibilityRecord& rec) {
    auto both = [](TriState a, TriState b) {
        if (a == TriState::no || b == TriState::no) return TriState::no;
        if (a == TriState::unknown || b == TriState::unknown) return TriState::unknown;
        return TriState::yes;
    };
    TriState inert = rec.two_inert ? TriState::yes : TriState::no;
    rec.case_r_ndiv_a = both(inert, rec.h_plus_odd);
    TriState mod8 = rec.r_mod_8 != 1 ? TriState::yes : TriState::no;
    rec.case_r_div_a = both(rec.case_r_ndiv_a, mod8);
    rec.overall = both(rec.case_r_ndiv_a, rec.case_r_div_a);
}

} // namespace detail

inline EligibilityRecord eligibility(std::uint64_t r, const NarrowClassTable& table) {
    if (!is_prime_u64(r)) throw std::invalid_argument(std::to_string(r) + " is not prime");
    if (r < 5) throw std::invalid_argument(std::to_string(r) + " is not a prime >= 5");

    EligibilityRecord rec{};
    rec.r = r;
    rec.r_mod_8 = static_cast<int>(r % 8);
    rec.two_inert = is_two_inert(build_field(r));
    if (table.contains(r))
        rec.h_plus_odd = table.at(r).h_plus % 2 != 0 ? TriState::yes : TriState::no;
    else
        rec.h_plus_odd = TriState::unknown;
    detail::combine_verdicts(rec);
    return rec;
}

/// Records for every prime 5 <= r <= r_max, ascending. The table must cover the
/// whole range; gaps are an error naming each uncovered prime.
inline std::vector<EligibilityRecord> scan(std::uint64_t r_max, const NarrowClassTable& table) {
    if (r_max < 5) throw std::invalid_argument("scan bound must be at least 5");
    std::vector<std::uint64_t> primes;
    for (std::uint64_t r = 5; r <= r_max; ++r)
        if (is_prime_u64(r)) primes.push_back(r);

    std::string missing;
    for (std::uint64_t r : primes)
        if (!table.contains(r)) missing += (missing.empty() ? "" : ", ") + std::to_string(r);
    if (!missing.empty())
        throw std::invalid_argument("narrow class table has no entry for r = " + missing);

    std::vector<EligibilityRecord> out;
    out.reserve(primes.size());
    for (std::uint64_t r : primes) out.push_back(eligibility(r, table));
    return out;
}

inline std::vector<std::uint64_t> eligible_r(const std::vector<EligibilityRecord>& records) {
    std::vector<std::uint64_t> out;
    for (const auto& rec : records)
        if (rec.overall == TriState::yes) out.push_back(rec.r);
    return out;
}

} // namespace cyclofermat
