#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <cyclofermat/frey.hpp>

using namespace cyclofermat;

namespace {

bool two_power_support(const Rat& n) {
    if (n == 0) return false;
    Int num = abs(n.get_num()), den = n.get_den();
    while (num % 2 == 0) num /= 2;
    while (den % 2 == 0) den /= 2;
    return num == 1 && den == 1;
}

FreyCurve curve_for(const RealCyclotomicField& field, long a0, long b0, int j, int k,
                    std::uint64_t p = 5) {
    DescentWitness w = make_witness(field, Int(a0), Int(b0));
    FreyCase kase = w.r_divides_a() ? FreyCase::r_div_a : FreyCase::r_ndiv_a;
    return frey_curve(frey_parameters(field, w, j, k, kase, p));
}

} // namespace

TEST_CASE("Frey parameters: worked example and guards", "[frey]") {
    auto f5 = build_field(5);
    DescentWitness w = make_witness(f5, Int(2), Int(3));

    FreyParameters P = frey_parameters(f5, w, 1, 2, FreyCase::r_ndiv_a, 7);
    CHECK(P.alpha == FieldElement::one(f5));
    CHECK(P.A == w.betas[0]); // alpha = 1 in this case
    CHECK((P.A + P.B + P.C).is_zero());
    CHECK(P.A.is_integral());
    CHECK(P.B.is_integral());
    CHECK(P.C.is_integral());
    CHECK(norm(P.A) == 61);
    CHECK(abs(norm(P.B)) == 61); // unit multiple of the conjugate beta
    CHECK(norm(P.C) == -256);    // 4 * (theta_1 - theta_2)/(theta_2 - 2) * a0^2
    CHECK(P.delta == 0);

    CHECK_THROWS_WITH(frey_parameters(f5, w, 1, 1, FreyCase::r_ndiv_a),
                      "indices j and k must be distinct");
    CHECK_THROWS_WITH(frey_parameters(f5, w, 0, 2, FreyCase::r_ndiv_a),
                      "conjugation index out of range");
    CHECK_THROWS_WITH(frey_parameters(f5, w, 1, 3, FreyCase::r_ndiv_a),
                      "conjugation index out of range");
    CHECK_THROWS_WITH(frey_parameters(f5, w, 1, 2, FreyCase::r_div_a),
                      "requested case is inconsistent with the r-valuation of the witness");
    CHECK_THROWS_WITH(frey_parameters(f5, w, 1, 2, FreyCase::r_ndiv_a, 4),
                      "p must be a prime >= 5");
    CHECK_THROWS_WITH(frey_parameters(f5, w, 1, 2, FreyCase::r_ndiv_a, 3),
                      "p must be a prime >= 5");
    CHECK_THROWS_WITH(frey_parameters(build_field(7), w, 1, 2, FreyCase::r_ndiv_a),
                      "witness belongs to a different field");

    DescentWitness w2 = make_witness(f5, Int(5), Int(2));
    CHECK_THROWS_WITH(frey_parameters(f5, w2, 1, 2, FreyCase::r_ndiv_a),
                      "requested case is inconsistent with the r-valuation of the witness");
    FreyParameters P2 = frey_parameters(f5, w2, 1, 2, FreyCase::r_div_a, 5);
    CHECK((P2.A + P2.B + P2.C).is_zero());
    CHECK(P2.A.is_integral());
    CHECK(P2.B.is_integral());
    CHECK(P2.C.is_integral());
    CHECK(P2.delta == (1 * 5 - 1) * (5 - 1) - 1); // 15

    FreyParameters P3 = frey_parameters(build_field(7), make_witness(build_field(7), Int(7), Int(2)),
                                        2, 3, FreyCase::r_div_a, 7, 0, 2);
    CHECK(P3.delta == (2 * 7 - 1) * (7 - 1) - 1); // 77
    CHECK(to_string(FreyCase::r_div_a) == "r_div_a");
    CHECK(to_string(FreyCase::r_ndiv_a) == "r_ndiv_a");

    // a0 = 0 collapses the curve: two roots coincide and Delta vanishes
    DescentWitness w0 = make_witness(f5, Int(0), Int(1));
    FreyParameters P0 = frey_parameters(f5, w0, 1, 2, FreyCase::r_div_a);
    CHECK_THROWS_WITH(frey_curve(P0), "degenerate witness: discriminant is zero");
}

TEST_CASE("curve invariants agree with the closed displays on a grid", "[frey]") {
    std::mt19937_64 rng(55101);
    std::uniform_int_distribution<long> dist(-20, 20);
    for (std::uint64_t r : {5ull, 7ull, 11ull, 13ull}) {
        auto field = build_field(r);
        int d = field.degree();
        std::vector<std::pair<long, long>> pool;
        // engineered case r | a witnesses plus random admissible ones
        pool.push_back({static_cast<long>(r), 2});
        pool.push_back({2 * static_cast<long>(r), 1});
        while (pool.size() < 8) {
            long a0 = dist(rng), b0 = dist(rng);
            if (a0 == 0 || gcd(Int(a0), Int(b0)) != 1 || (a0 + b0) % 2 == 0) continue;
            pool.push_back({a0, b0});
        }
        for (auto [a0, b0] : pool) {
            DescentWitness w = make_witness(field, Int(a0), Int(b0));
            FreyCase kase = w.r_divides_a() ? FreyCase::r_div_a : FreyCase::r_ndiv_a;
            for (int j = 1; j <= d; ++j)
                for (int k = j + 1; k <= d; ++k) {
                    FreyParameters P = frey_parameters(field, w, j, k, kase, 7);
                    REQUIRE((P.A + P.B + P.C).is_zero());
                    REQUIRE(P.A.is_integral());
                    REQUIRE(P.B.is_integral());
                    REQUIRE(P.C.is_integral());
                    FreyCurve E = frey_curve(P);
                    FieldElement sixteen = FieldElement::from_int(field, Int(16));
                    CHECK(E.c4 == sixteen * (P.A * P.A - P.B * P.C));
                    FieldElement abc = P.A * P.B * P.C;
                    CHECK(E.disc == sixteen * abc * abc);
                    CHECK(E.j_inv * E.disc == pow(E.c4, 3));
                }
        }
    }
}

TEST_CASE("reduction classification at worked primes", "[frey]") {
    auto f5 = build_field(5);
    PrimeIdealFactor rad = unique_prime_above_r(f5);
    PrimeIdealFactor two = split_prime(f5, 2).front(); // 2 is inert in this field

    // (2,3): N(beta_j) = 61, which splits; Delta picks up both primes above 61
    FreyCurve E = curve_for(f5, 2, 3, 1, 2);
    auto above61 = split_prime(f5, 61);
    REQUIRE(above61.size() == 2);
    for (const auto& q : above61) {
        CHECK(valuation(E.disc, q) == 2);
        CHECK(valuation(E.c4, q) == 0);
        CHECK(classify_reduction(E, q) == Reduction::multiplicative);
    }
    PrimeIdealFactor three = split_prime(f5, 3).front();
    CHECK(classify_reduction(E, three) == Reduction::good);
    CHECK(classify_reduction(E, rad) == Reduction::good);
    CHECK(valuation(E.disc, rad) == 0);
    // v_P(j) = 0 at the prime above 2 here, so nothing is certified
    CHECK(valuation(E.j_inv, two) == 0);
    CHECK(classify_reduction(E, two) == Reduction::unknown);
    CHECK(valuation(E.disc, two) == 12);
    CHECK(valuation(E.c4, two) == 4);

    // (5,2), case r | a: multiplicative at the ramified prime, v_r(Delta) = 6
    FreyCurve E2 = curve_for(f5, 5, 2, 1, 2);
    CHECK(valuation(E2.disc, rad) == 6);
    CHECK(valuation(E2.c4, rad) == 0);
    CHECK(classify_reduction(E2, rad) == Reduction::multiplicative);

    // a0 = 2^5, b0 = 1: the j-invariant has negative valuation above 2
    FreyCurve E3 = curve_for(f5, 32, 1, 1, 2);
    CHECK(classify_reduction(E3, two) == Reduction::potentially_multiplicative);
    CHECK(valuation(E3.j_inv, two) == -16);
}

TEST_CASE("good-or-multiplicative dichotomy away from 2", "[frey]") {
    std::mt19937_64 rng(771234);
    std::uniform_int_distribution<long> dist(-15, 15);
    for (std::uint64_t r : {5ull, 7ull}) {
        auto field = build_field(r);
        int done = 0;
        std::vector<std::pair<long, long>> witnesses = {{static_cast<long>(r), 2},
                                                        {static_cast<long>(3 * r), 2}};
        while (done < 10) {
            long a0 = dist(rng), b0 = dist(rng);
            if (a0 == 0 || gcd(Int(a0), Int(b0)) != 1 || (a0 + b0) % 2 == 0) continue;
            ++done;
            witnesses.push_back({a0, b0});
        }
        for (auto [a0, b0] : witnesses) {
            FreyCurve E = curve_for(field, a0, b0, 1, 2);
            // ideal-level statement: (Delta) + (c4) is supported only above 2
            Rat ns = sum(principal_ideal(E.disc), principal_ideal(E.c4)).norm();
            INFO("witness (" << a0 << ", " << b0 << ") at r = " << r);
            CHECK(two_power_support(ns));

            // pointwise: at odd primes the classification is never unknown
            for (std::uint64_t ell : {3ull, 5ull, 7ull, 11ull, 13ull}) {
                for (const auto& q : split_prime(field, ell)) {
                    Reduction red = classify_reduction(E, q);
                    CHECK((red == Reduction::good || red == Reduction::multiplicative));
                }
            }
        }
    }
}

TEST_CASE("conductor and level on worked witnesses", "[frey]") {
    auto f5 = build_field(5);
    PrimeIdealFactor rad = unique_prime_above_r(f5);
    PrimeIdealFactor two = split_prime(f5, 2).front();

    // (1,0): the unit-family witness; conductor is exactly the prime above 2
    FreyCurve E1 = curve_for(f5, 1, 0, 1, 2, 7);
    ConductorLevel cl1 = conductor_and_level(E1);
    REQUIRE(cl1.conductor.size() == 1);
    CHECK(cl1.conductor[0] == two);
    REQUIRE(cl1.level.size() == 1);
    CHECK(cl1.level[0] == two);
    CHECK_FALSE(cl1.power_content_hypothesis);
    CHECK(cl1.unfactored_residue == 1);
    CHECK(valuation(E1.j_inv, two) == 4); // n = 0 boundary: nonnegative, so 2 is kept

    // same witness in the degree-3 field
    auto f7 = build_field(7);
    FreyCurve E7 = frey_curve(frey_parameters(f7, make_witness(f7, Int(1), Int(0)), 1, 3,
                                              FreyCase::r_ndiv_a, 7));
    ConductorLevel cl7 = conductor_and_level(E7);
    REQUIRE(cl7.conductor.size() == 1);
    CHECK(cl7.conductor[0].p == 2);
    CHECK(cl7.conductor[0].f == 3);
    CHECK(cl7.level == cl7.conductor);

    // (5,2), p = 5: conductor = (2) * rad * both primes above 59
    FreyCurve E2 = curve_for(f5, 5, 2, 1, 2, 5);
    ConductorLevel cl2 = conductor_and_level(E2);
    REQUIRE(cl2.conductor.size() == 4);
    CHECK(cl2.conductor[0] == two);
    CHECK(cl2.conductor[1] == rad);
    CHECK(cl2.conductor[2].p == 59);
    CHECK(cl2.conductor[3].p == 59);
    CHECK(cl2.unfactored_residue == 1);
    // without the power-content hypothesis the stray primes stay in the level
    CHECK(cl2.level == cl2.conductor);
    CHECK_FALSE(cl2.power_content_hypothesis);

    // with it, the level collapses to (2) * rad: v_rad(Delta) = 6 is kept since
    // 5 does not divide 6, and v_P(j) = 4 >= 0 keeps the prime above 2
    ConductorLevel cl2h = conductor_and_level(E2, true);
    CHECK(cl2h.power_content_hypothesis);
    REQUIRE(cl2h.level.size() == 2);
    CHECK(cl2h.level[0] == two);
    CHECK(cl2h.level[1] == rad);
    CHECK(cl2h.conductor == cl2.conductor);
}

TEST_CASE("j-valuation law at primes above 2", "[frey]") {
    auto f5 = build_field(5);
    PrimeIdealFactor two5 = split_prime(f5, 2).front();

    Report rep = j_valuation_check(f5, two5, 5, 1);
    INFO(rep.to_string());
    CHECK(rep.all_pass());

    // pinned values: v_P(j) = 4(1 - p n) with v_P(2) = 1
    FreyCurve E = curve_for(f5, 32, 1, 1, 2, 5);
    CHECK(valuation(E.j_inv, two5) == -16);
    FreyCurve E7 = curve_for(f5, 128, 1, 1, 2, 7);
    CHECK(valuation(E7.j_inv, two5) == -24);

    for (std::uint64_t p : {5ull, 7ull, 11ull}) {
        for (int n : {1, 2}) {
            Report r5 = j_valuation_check(f5, two5, p, n);
            INFO(r5.to_string());
            CHECK(r5.all_pass());
        }
    }

    auto f13 = build_field(13);
    PrimeIdealFactor two13 = split_prime(f13, 2).front();
    Report rep13 = j_valuation_check(f13, two13, 5, 1);
    CHECK(rep13.all_pass());

    // n = 0 sits outside the law and is reported as such
    Report rep0 = j_valuation_check(f5, two5, 5, 0);
    CHECK(rep0.all_pass());
    REQUIRE(rep0.lines.size() == 2);
    CHECK(rep0.lines[1].label == "n = 0 lies outside the law: v_P(j) >= 0");

    CHECK_THROWS_WITH(j_valuation_check(f5, two5, 4, 1), "p must be a prime >= 5");
    CHECK_THROWS_WITH(j_valuation_check(f5, split_prime(f5, 3).front(), 5, 1),
                      "P must lie above 2");
}
