#include <doctest.h>

#include <numbers>

#include "segode/error.hpp"
#include "segode/fixtures.hpp"
#include "segode/hypersurface.hpp"
#include "segode/ode.hpp"
#include "support.hpp"

using namespace segode;

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr int kN = 20;

TruncatedSeries poly(std::vector<Complex> c, int order = kN) { return TruncatedSeries::polynomial(std::move(c), order); }

bool equals(const TruncatedSeries& s, std::vector<Complex> c, double tol = 1e-12) {
    return max_abs_diff(s, poly(std::move(c), s.truncation_order())) < tol;
}

NonminimalODE make_ode(int m, std::vector<Complex> a, std::vector<Complex> b, std::vector<Complex> c,
                       std::vector<Complex> d, std::vector<Complex> e, std::vector<Complex> f) {
    return {m, poly(std::move(a)), poly(std::move(b)), poly(std::move(c)), poly(std::move(d)), poly(std::move(e)),
            poly(std::move(f))};
}

// m = 1, sign +, F = w ⇒ A = 3iw, C = w², D = iw with B = −1.
NonminimalODE cubic_example(std::vector<Complex> e = {}) {
    return make_ode(1, {0.0, 3.0 * kI}, {-1.0}, {0.0, 0.0, 1.0}, {0.0, kI}, std::move(e), {0.0, 1.0});
}

} // namespace

TEST_CASE("check_relations") {
    CHECK(check_relations(make_ode(1, {}, {-1.0}, {}, {}, {4.0}, {}), Sign::positive).passed);
    const auto bad = check_relations(make_ode(1, {1.0}, {-1.0}, {}, {}, {}, {}), Sign::positive);
    CHECK_FALSE(bad.reality_passed);
    CHECK_FALSE(bad.passed);
    CHECK(check_relations(cubic_example({2.0, 5.0}), Sign::positive).passed);
    CHECK_FALSE(check_relations(cubic_example(), Sign::negative).reality_passed);
}

TEST_CASE("fuchsian_test") {
    SUBCASE("m = 1 is always Fuchsian") {
        test::Rng rng(3);
        NonminimalODE ode{1,
                          test::random_series(rng, 0, kN),
                          test::random_series(rng, 0, kN),
                          test::random_series(rng, 0, kN),
                          test::random_series(rng, 0, kN),
                          test::random_series(rng, 0, kN),
                          test::random_series(rng, 0, kN)};
        CHECK(fuchsian_test(ode).fuchsian());
    }
    SUBCASE("single-valued non-Fuchsian example") {
        const auto r = fuchsian_test(make_ode(2, {}, {2.0 * kI, -2.0}, {}, {}, {}, {}));
        CHECK_FALSE(r.fuchsian());
        REQUIRE(r.conditions.size() == 4);
        CHECK(r.conditions[0].order == 0);
        CHECK_FALSE(r.conditions[0].passed);
        CHECK(r.conditions[1].passed);
    }
    SUBCASE("B = -2w, m = 2") { CHECK(fuchsian_test(make_ode(2, {}, {0.0, -2.0}, {}, {}, {}, {})).fuchsian()); }
    SUBCASE("half-integer bound on F") {
        // m = 3: 2·ord F ≥ 6 needs ord F ≥ 3.
        auto ode = make_ode(3, {}, {0.0, 0.0, 1.0}, {}, {}, {0.0, 0.0, 0.0, 0.0, 1.0}, {0.0, 0.0, 1.0});
        ode.A = poly({0.0, 0.0, 3.0 * kI});
        CHECK_FALSE(fuchsian_test(ode).fuchsian());
        ode.F = poly({0.0, 0.0, 0.0, 1.0});
        ode.A = poly({0.0, 0.0, 0.0, 3.0 * kI});
        CHECK(fuchsian_test(ode).fuchsian());
    }
    SUBCASE("ord A and ord F disagreeing is flagged") {
        auto ode = make_ode(1, {0.0, 1.0}, {-1.0}, {}, {}, {}, {0.0, 0.0, 1.0});
        CHECK(fuchsian_test(ode).reality_red_flag);
    }
    SUBCASE("short vanishing series lower the confidence") {
        auto ode = make_ode(2, {}, {0.0, -2.0}, {}, {}, {}, {});
        ode.F = TruncatedSeries(0, {0.0, 0.0});
        CHECK(fuchsian_test(ode).low_confidence);
    }
}

TEST_CASE("reduce: linear examples") {
    const auto r68 = reduce(make_ode(2, {}, {0.0, -2.0}, {}, {}, {}, {}));
    CHECK(r68.l == 0);
    CHECK(equals(r68.p[0], {-2.0}));
    CHECK(equals(r68.p[1], {}));
    for (const auto& q : r68.q) {
        CHECK(is_numerically_zero(q));
    }

    const auto rg = reduce(make_ode(1, {}, {-1.0}, {}, {}, {9.0}, {}));
    CHECK(rg.l == 0);
    CHECK(equals(rg.p[0], {-1.0}));
    CHECK(equals(rg.q[1], {9.0}));

    const auto r22 = reduce(make_ode(2, {}, {0.0, 2.0 * kI - 1.0}, {}, {}, {0.0, 0.0, -8.0}, {}));
    CHECK(r22.l == 0);
    CHECK(equals(r22.p[0], {2.0 * kI - 1.0}));
    CHECK(equals(r22.q[1], {-8.0}));
}

TEST_CASE("reduce: nonlinear example with l = 1") {
    // Hand substitution of z = Z/w in the cubic example.
    const auto r = reduce(cubic_example());
    CHECK(r.l == 1);
    CHECK(equals(r.p[1], {3.0 * kI}));
    CHECK(equals(r.p[0], {1.0}));
    CHECK(equals(r.q[3], {1.0}));
    CHECK(equals(r.q[2], {-2.0 * kI}));
    CHECK(equals(r.q[1], {-1.0}));
    CHECK(equals(r.q[0], {0.0, 0.0, 1.0}));
    CHECK(r.source == fingerprint(cubic_example()));
}

TEST_CASE("reduce: preconditions") {
    try {
        (void)reduce(make_ode(2, {}, {2.0 * kI, -2.0}, {}, {}, {}, {}));
        FAIL("expected NotFuchsian");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotFuchsian);
    }
    // Fuchsian orders but D has a lower order than the relations allow.
    auto ode = cubic_example();
    ode.D = poly({1.0});
    try {
        (void)reduce(ode);
        FAIL("expected PoleAfterReduction");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::PoleAfterReduction);
    }
}

TEST_CASE("reduce postcondition on random Fuchsian hypersurfaces") {
    test::Rng rng(77);
    for (int trial = 0; trial < 60; ++trial) {
        const int m = 1 + trial % 4;
        P0Hypersurface h;
        h.m = m;
        h.sign = trial % 2 ? Sign::positive : Sign::negative;
        std::uniform_int_distribution<int> extra(0, 2);
        h.phi22 = test::random_series_exact_order(rng, m - 1 + extra(rng), 28);
        h.phi33 = test::random_series_exact_order(rng, 2 * m - 2 + extra(rng), 28);
        h.phi23 = test::random_series_exact_order(rng, (3 * (m - 1) + 1) / 2 + extra(rng), 28);
        h.phi32 = conjugate_bar(h.phi23);
        const auto ode = associate_ode(h);
        REQUIRE(fuchsian_test(ode).fuchsian());
        const auto r = reduce(ode);
        CHECK(r.l == ord0(ode.F) - m + 1);
        for (const auto& s : r.p) {
            CHECK(s.valuation() >= 0);
        }
        for (const auto& s : r.q) {
            CHECK(s.valuation() >= 0);
        }
        CHECK(std::abs(r.q[3].coeff(0)) > 1e-6);
    }
}

TEST_CASE("solution transport between the original and reduced equations") {
    test::Rng rng(8);
    std::vector<NonminimalODE> odes = {cubic_example({0.5, -0.25})};
    for (int m : {1, 2}) {
        P0Hypersurface h;
        h.m = m;
        h.phi22 = test::random_series_exact_order(rng, m - 1, 24);
        h.phi33 = test::random_series_exact_order(rng, 2 * m - 2, 24);
        h.phi23 = test::random_series_exact_order(rng, m == 1 ? 0 : 2, 24);
        h.phi32 = conjugate_bar(h.phi23);
        odes.push_back(associate_ode(h));
    }
    for (const auto& ode : odes) {
        const auto reduced = reduce(ode);
        const int l = reduced.l;
        const OdeField original(ode);
        const OdeField hatted(reduced);
        for (int k = 0; k < 4; ++k) {
            const Complex w0 = std::polar(0.5, 2.0 * std::numbers::pi * k / 4.0 + 0.3);
            const Complex w1 = w0 * std::polar(1.3, 0.4);
            const State z0{test::random_complex(rng, 0.05), test::random_complex(rng, 0.05)};
            // Z = z w^l, Z′ = z′ w^l + l z w^{l−1}
            const auto lift = [l](Complex w, State s) {
                return State{s.z * std::pow(w, l), s.dz * std::pow(w, l) + double(l) * s.z * std::pow(w, l - 1)};
            };
            PathSpec path{SegmentPath{w0, w1}};
            const State end = integrate_path(original, z0, path).end;
            const State end_hat = integrate_path(hatted, lift(w0, z0), path).end;
            const State want = lift(w1, end);
            CHECK(test::rel_err(end_hat.z, want.z) < 1e-6);
            CHECK(test::rel_err(end_hat.dz, want.dz) < 1e-6);
        }
    }
}

TEST_CASE("ode_from_map") {
    for (double gamma : {1.0, 2.0}) {
        const int g = static_cast<int>(gamma);
        const auto ode = ode_from_map(TruncatedSeries::monomial(1.0, -g, kN), TruncatedSeries::monomial(1.0, g, kN),
                                      TruncatedSeries::zero(kN), TruncatedSeries::zero(kN), TruncatedSeries::zero(kN), 1);
        CHECK(equals(ode.A, {}, 1e-10));
        CHECK(equals(ode.B, {-1.0}, 1e-10));
        CHECK(equals(ode.C, {}, 1e-10));
        CHECK(equals(ode.D, {}, 1e-10));
        CHECK(equals(ode.E, {gamma * gamma}, 1e-10));
        CHECK(equals(ode.F, {}, 1e-10));
        CHECK(check_relations(ode, Sign::positive).passed);
    }
    SUBCASE("projective map gives the flat equation") {
        const auto ode = ode_from_map(TruncatedSeries::constant(1.0, kN), TruncatedSeries::monomial(1.0, 1, kN),
                                      TruncatedSeries::zero(kN), TruncatedSeries::zero(kN), TruncatedSeries::zero(kN), 1);
        for (const auto* s : {&ode.A, &ode.B, &ode.C, &ode.D, &ode.E, &ode.F}) {
            CHECK(is_numerically_zero(*s));
        }
    }
    SUBCASE("degenerate map") {
        const auto alpha = poly({1.0, 2.0});
        try {
            (void)ode_from_map(alpha, 3.0 * alpha, poly({}), poly({}), poly({}), 1);
            FAIL("expected DegenerateMap");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::DegenerateMap);
        }
    }
}

TEST_CASE("random compatible maps satisfy the projective relations") {
    test::Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        const auto f = test::random_map(rng, 28);
        CHECK(max_abs_diff(map_compatibility(f.alpha, f.a, f.beta, f.b), TruncatedSeries::zero(26)) < 1e-12);
        const int m = 1 + trial % 3;
        const auto ode = ode_from_map(f.alpha, f.a, f.beta, f.b, f.delta, m);
        const auto rel = check_relations(ode, Sign::positive, 1e-8);
        CHECK_MESSAGE(rel.projective_passed(), rel.summary());
    }
}

TEST_CASE("is_linear") {
    CHECK(is_linear(make_ode(1, {}, {-1.0}, {}, {}, {4.0}, {})));
    CHECK_FALSE(is_linear(cubic_example()));
}

TEST_CASE("extension_verdict") {
    const auto gamma3 = associate_ode(m_gamma_hypersurface(3.0));
    const auto mono3 = monodromy_linear(gamma3);
    CHECK(extension_verdict(gamma3, mono3).verdict == ExtensionVerdict::Extends);

    const auto half = associate_ode(m_gamma_hypersurface(0.5));
    CHECK(extension_verdict(half, monodromy_linear(half)).verdict == ExtensionVerdict::Branches);

    const auto mm0 = mm0_ode(2);
    const auto probe = monodromy_probe(mm0, {1.0, 1.0});
    REQUIRE(probe.trivial);
    CHECK(extension_verdict(mm0, probe).verdict == ExtensionVerdict::Undetermined);
    const auto growth = growth_exponent(mm0, {1.0, 1.0}, -std::numbers::pi / 2.0);
    CHECK(extension_verdict(mm0, probe, std::nullopt, growth).verdict == ExtensionVerdict::NoExtensionIrregular);

    SUBCASE("reports for a different equation") {
        try {
            (void)extension_verdict(gamma3, probe);
            FAIL("expected InconsistentInputs");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::InconsistentInputs);
        }
    }
    SUBCASE("an obstruction alone certifies branching") {
        FormalSolution obstructed;
        obstructed.status = FormalStatus::Obstructed;
        obstructed.obstructed_at = 1;
        CHECK(extension_verdict(gamma3, mono3, obstructed).verdict == ExtensionVerdict::Branches);
    }
}
