#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include <cyclofermat/criterion.hpp>

using namespace cyclofermat;

namespace {

NarrowClassTable table_through(std::uint64_t r_max) {
    NarrowClassTable t;
    for (std::uint64_t r = 5; r <= r_max; ++r)
        if (is_prime_u64(r)) t.insert(r, NarrowClassEntry{Int(r == 29 ? 2 : 1), "test"});
    return t;
}

} // namespace

TEST_CASE("narrow class table parsing", "[criterion]") {
    std::stringstream good("# header comment\n5,1,lmfdb\n7,1,lmfdb # trailing\n29,2,lmfdb\n");
    NarrowClassTable t = load_narrow_class_table(good);
    CHECK(t.size() == 3);
    CHECK(t.contains(5));
    CHECK(t.at(29).h_plus == 2);
    CHECK(t.at(7).source == "lmfdb");
    CHECK_FALSE(t.contains(11));
    CHECK_THROWS_WITH(t.at(11), "narrow class table has no entry for r = 11");

    std::stringstream bad1("5,1,lmfdb\n7,1\n");
    CHECK_THROWS_WITH(load_narrow_class_table(bad1),
                      "narrow class table line 2: expected r,h_plus,source");
    std::stringstream bad2("6,1,x\n");
    CHECK_THROWS_WITH(load_narrow_class_table(bad2),
                      "narrow class table line 1: 6 is not a prime >= 5");
    std::stringstream bad3("3,1,x\n");
    CHECK_THROWS_WITH(load_narrow_class_table(bad3),
                      "narrow class table line 1: 3 is not a prime >= 5");
    std::stringstream bad4("7,0,x\n");
    CHECK_THROWS_WITH(load_narrow_class_table(bad4),
                      "narrow class table line 1: h_plus must be positive");
    std::stringstream bad5("7,-3,x\n");
    CHECK_THROWS_WITH(load_narrow_class_table(bad5),
                      "narrow class table line 1: h_plus must be positive");
    std::stringstream bad6("x,1,x\n");
    CHECK_THROWS_WITH(load_narrow_class_table(bad6),
                      "narrow class table line 1: 'x' is not an integer");
    std::stringstream bad7("5,1,a\n# fine\n5,1,b\n");
    CHECK_THROWS_WITH(load_narrow_class_table(bad7),
                      "narrow class table line 3: duplicate entry for r = 5");

    CHECK_THROWS_WITH(load_narrow_class_table(std::string("no/such/table.csv")),
                      "cannot open narrow class table: no/such/table.csv");
}

TEST_CASE("verdict combiner covers every branch", "[criterion]") {
    EligibilityRecord rec{};

    rec.two_inert = true;
    rec.h_plus_odd = TriState::yes;
    rec.r_mod_8 = 5;
    detail::combine_verdicts(rec);
    CHECK(rec.case_r_ndiv_a == TriState::yes);
    CHECK(rec.case_r_div_a == TriState::yes);
    CHECK(rec.overall == TriState::yes);

    rec.r_mod_8 = 1; // only the r | a case requires r != 1 (mod 8)
    detail::combine_verdicts(rec);
    CHECK(rec.case_r_ndiv_a == TriState::yes);
    CHECK(rec.case_r_div_a == TriState::no);
    CHECK(rec.overall == TriState::no);

    rec.r_mod_8 = 3;
    rec.h_plus_odd = TriState::no;
    detail::combine_verdicts(rec);
    CHECK(rec.case_r_ndiv_a == TriState::no);
    CHECK(rec.case_r_div_a == TriState::no);
    CHECK(rec.overall == TriState::no);

    rec.h_plus_odd = TriState::unknown;
    detail::combine_verdicts(rec);
    CHECK(rec.case_r_ndiv_a == TriState::unknown);
    CHECK(rec.case_r_div_a == TriState::unknown);
    CHECK(rec.overall == TriState::unknown);

    rec.two_inert = false; // inertness failure dominates the unknown parity
    detail::combine_verdicts(rec);
    CHECK(rec.case_r_ndiv_a == TriState::no);
    CHECK(rec.overall == TriState::no);

    CHECK(to_string(TriState::yes) == "yes");
    CHECK(to_string(TriState::no) == "no");
    CHECK(to_string(TriState::unknown) == "unknown");
}

TEST_CASE("eligibility of single primes", "[criterion]") {
    NarrowClassTable t = table_through(100);

    EligibilityRecord e5 = eligibility(5, t);
    CHECK(e5.two_inert);
    CHECK(e5.h_plus_odd == TriState::yes);
    CHECK(e5.r_mod_8 == 5);
    CHECK(e5.overall == TriState::yes);

    EligibilityRecord e17 = eligibility(17, t);
    CHECK_FALSE(e17.two_inert);
    CHECK(e17.overall == TriState::no);

    EligibilityRecord e41 = eligibility(41, t);
    CHECK_FALSE(e41.two_inert);
    CHECK(e41.r_mod_8 == 1);
    CHECK(e41.overall == TriState::no);

    // 29: inert, but the table carries an even h+
    EligibilityRecord e29 = eligibility(29, t);
    CHECK(e29.two_inert);
    CHECK(e29.h_plus_odd == TriState::no);
    CHECK(e29.overall == TriState::no);

    // a prime past the table: parity and verdicts are unknown, never guessed
    EligibilityRecord e101 = eligibility(101, t);
    CHECK(e101.two_inert);
    CHECK(e101.h_plus_odd == TriState::unknown);
    CHECK(e101.case_r_ndiv_a == TriState::unknown);
    CHECK(e101.overall == TriState::unknown);

    CHECK_THROWS_WITH(eligibility(4, t), "4 is not prime");
    CHECK_THROWS_WITH(eligibility(6, t), "6 is not prime");
    CHECK_THROWS_WITH(eligibility(3, t), "3 is not a prime >= 5");
}

TEST_CASE("scans over prime ranges", "[criterion]") {
    NarrowClassTable t = table_through(31);

    std::vector<EligibilityRecord> recs = scan(13, t);
    REQUIRE(recs.size() == 4);
    CHECK(recs[0].r == 5);
    CHECK(recs[1].r == 7);
    CHECK(recs[2].r == 11);
    CHECK(recs[3].r == 13);
    CHECK(eligible_r(recs) == std::vector<std::uint64_t>{5, 7, 11, 13});

    std::vector<EligibilityRecord> recs31 = scan(31, t);
    REQUIRE(recs31.size() == 9); // 5 7 11 13 17 19 23 29 31
    CHECK(eligible_r(recs31) == std::vector<std::uint64_t>{5, 7, 11, 13, 19, 23});

    NarrowClassTable gappy;
    gappy.insert(5, NarrowClassEntry{Int(1), "x"});
    gappy.insert(11, NarrowClassEntry{Int(1), "x"});
    CHECK_THROWS_WITH(scan(13, gappy), "narrow class table has no entry for r = 7, 13");

    CHECK_THROWS_WITH(scan(4, t), "scan bound must be at least 5");
}

TEST_CASE("bundled table reproduces the eligible list through 200", "[criterion]") {
    NarrowClassTable t = load_narrow_class_table(std::string(CYCLOFERMAT_SOURCE_DIR
                                                             "/data/hplus_table.csv"));
    CHECK(t.size() == 44);
    CHECK(t.at(29).h_plus == 2);

    std::vector<EligibilityRecord> recs = scan(200, t);
    REQUIRE(recs.size() == 44);
    std::vector<std::uint64_t> expected = {5,  7,   11,  13,  19,  23,  37,  47,  53,  59,
                                           61, 67,  71,  79,  83,  101, 103, 107, 131, 139,
                                           149, 163, 167, 173, 179, 181, 191, 197, 199};
    CHECK(eligible_r(recs) == expected);

    // the lone two-inert prime excluded by parity
    int inert_count = 0;
    for (const auto& rec : recs) {
        if (rec.two_inert) ++inert_count;
        if (rec.r == 29) {
            CHECK(rec.two_inert);
            CHECK(rec.overall == TriState::no);
        }
        // every eligible r avoids 1 mod 8 as a byproduct of inertness
        if (rec.overall == TriState::yes) CHECK(rec.r_mod_8 != 1);
    }
    CHECK(inert_count == 30);
}
