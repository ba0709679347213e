#include <doctest.h>

#include <cmath>

#include "segode/bbsolver.hpp"
#include "segode/error.hpp"
#include "support.hpp"

using namespace segode;

namespace {

constexpr int kN = 24;

TruncatedSeries poly(std::vector<Complex> c) { return TruncatedSeries::polynomial(std::move(c), kN); }

// Z″ = (1/W)(p0 + p1 Z)Z′ + (1/W²)(q0 + q1 Z + q2 Z² + q3 Z³)
ReducedODE system(std::vector<Complex> p0, std::vector<Complex> q0, std::vector<Complex> q1,
                  std::vector<Complex> q2 = {}, std::vector<Complex> q3 = {}, std::vector<Complex> p1 = {}) {
    ReducedODE r;
    r.p = {poly(std::move(p0)), poly(std::move(p1))};
    r.q = {poly(std::move(q0)), poly(std::move(q1)), poly(std::move(q2)), poly(std::move(q3))};
    return r;
}

bool has_eigenvalues(const BBSystem& sys, Complex x, Complex y) {
    const auto& e = sys.eigenvalues;
    const double direct = std::abs(e[0] - x) + std::abs(e[1] - y);
    const double swapped = std::abs(e[0] - y) + std::abs(e[1] - x);
    return std::min(direct, swapped) < 1e-12;
}

} // namespace

TEST_CASE("choose_base_root") {
    const Complex i{0.0, 1.0};
    CHECK(choose_base_root({0.0, -2.0, 1.0}) == Complex(0.0));
    CHECK(std::abs(choose_base_root({1.0, 0.0, 1.0}) - i) < 1e-12); // ±i: smallest argument wins
    CHECK(std::abs(choose_base_root({-6.0, 11.0, -6.0, 1.0}) - 1.0) < 1e-10);
    CHECK(choose_base_root({0.0, 0.0}) == Complex(0.0));
    try {
        (void)choose_base_root({2.0, 1e-14});
        FAIL("expected NoRoot");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoRoot);
    }
}

TEST_CASE("linearize") {
    CHECK(has_eigenvalues(linearize(system({}, {0.0, 1.0}, {1.0}), 0.0), (1.0 + std::sqrt(5.0)) / 2.0,
                          (1.0 - std::sqrt(5.0)) / 2.0));
    CHECK(has_eigenvalues(linearize(system({}, {0.0, 1.0}, {}), 0.0), 0.0, 1.0));
    CHECK(has_eigenvalues(linearize(system({-1.0}, {}, {9.0}), 0.0), 3.0, -3.0));
    try {
        (void)linearize(system({}, {0.0, 1.0}, {1.0}), 5.0);
        FAIL("expected BaseNotRoot");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BaseNotRoot);
    }
    SUBCASE("recentring at a nonzero root") {
        // Q(Z, 0) = Z² − 1, base root chosen as 1 (argument 0 beats π).
        const auto r = system({}, {-1.0}, {}, {1.0});
        const Complex z0 = choose_base_root(r.Q().at_origin());
        CHECK(std::abs(z0 - 1.0) < 1e-12);
        const auto sys = linearize(r, z0);
        CHECK(std::abs(sys.q10 - 2.0) < 1e-12); // ∂Q/∂Z at (1, 0)
    }
}

TEST_CASE("unique solution Z = -W") {
    const auto sys = linearize(system({}, {0.0, 1.0}, {1.0}), 0.0);
    const auto sol = formal_solve(sys, 20);
    CHECK(sol.status == FormalStatus::Unique);
    REQUIRE(sol.coeffs.size() == 20);
    CHECK(std::abs(sol.coeffs[0] + 1.0) < 1e-14);
    for (std::size_t r = 1; r < sol.coeffs.size(); ++r) {
        CHECK(std::abs(sol.coeffs[r]) < 1e-12);
    }
    CHECK(sol.residual_order >= 19);
    for (std::size_t r = 0; r < sol.coeffs.size(); ++r) {
        CHECK(std::abs(sol.u_coeffs[r] - double(r + 1) * sol.coeffs[r]) < 1e-14);
    }

    SUBCASE("a corrupted coefficient is detected at its order") {
        auto bad = sol;
        bad.coeffs[4] += 1.0; // a₅
        CHECK(residual(sys, bad) == 5);
    }
}

TEST_CASE("obstruction at r = 1") {
    const auto sol = formal_solve(linearize(system({}, {0.0, 1.0}, {}), 0.0), 20);
    CHECK(sol.status == FormalStatus::Obstructed);
    CHECK(sol.obstructed_at == 1);
    CHECK(sol.obstruction_size == doctest::Approx(1.0));
    CHECK(sol.coeffs.empty());
}

TEST_CASE("resonant but solvable at r = 3") {
    const auto sys = linearize(system({-1.0}, {}, {9.0}), 0.0);
    const auto sol = formal_solve(sys, 20);
    CHECK(sol.status == FormalStatus::ResonantSolvable);
    CHECK(sol.resonances == std::vector<int>{3});
    for (const auto& c : sol.coeffs) {
        CHECK(c == Complex(0.0));
    }
    CHECK(sol.residual_order >= 19);
}

TEST_CASE("obstruction grid on Z'' = (c/W)Z' + (q10 Z + W)/W^2") {
    // Z = aW solves it exactly when c + q10 ≠ 0 (a = −1/(c + q10)); otherwise
    // 1 is an eigenvalue and the solution needs W log W (W log² W when c = 1).
    struct Case {
        double c, q10;
        bool obstructed;
    };
    const Case grid[] = {{0.0, 0.0, true},  {1.0, -1.0, true}, {-1.0, 1.0, true}, {2.0, -2.0, true},
                         {0.5, -0.5, true}, {0.0, 1.0, false}, {1.0, 1.0, false}, {0.0, 2.0, false},
                         {-1.0, -1.0, false}, {3.0, 0.25, false}};
    for (const auto& c : grid) {
        CAPTURE(c.c);
        CAPTURE(c.q10);
        const auto sys = linearize(system({c.c}, {0.0, 1.0}, {c.q10}), 0.0);
        const auto sol = formal_solve(sys, 16);
        CHECK((sol.status == FormalStatus::Obstructed) == c.obstructed);
        if (c.obstructed) {
            CHECK(sol.obstructed_at == 1);
        } else {
            CHECK(std::abs(sol.coeffs[0] + 1.0 / (c.c + c.q10)) < 1e-13);
            CHECK(sol.residual_order >= 15);
        }
    }
}

TEST_CASE("scale invariance of the linear family") {
    for (double kappa : {0.5, 2.0, -3.0, 1e3}) {
        const auto sol = formal_solve(linearize(system({}, {0.0, kappa}, {1.0}), 0.0), 12);
        CHECK(std::abs(sol.coeffs[0] + kappa) < 1e-12 * (1.0 + std::abs(kappa)));
    }
}

TEST_CASE("random nonresonant nonlinear systems") {
    test::Rng rng(404);
    for (int trial = 0; trial < 30; ++trial) {
        ReducedODE r;
        r.p = {test::random_series(rng, 0, kN), test::random_series(rng, 0, kN)};
        r.q = {test::random_series(rng, 1, kN), test::random_series(rng, 0, kN), test::random_series(rng, 0, kN),
               test::random_series(rng, 0, kN)};
        const auto sys = linearize(r, 0.0);
        const auto a = formal_solve(sys, 20);
        const auto b = formal_solve(sys, 20);
        bool integer_eigenvalue = false;
        for (const auto& e : sys.eigenvalues) {
            integer_eigenvalue |= std::abs(e.imag()) < 1e-6 && std::abs(e.real() - std::round(e.real())) < 1e-6;
        }
        if (integer_eigenvalue) {
            continue; // random complex data: essentially never
        }
        CHECK(a.status == FormalStatus::Unique);
        CHECK(a.coeffs == b.coeffs);
        CHECK(a.residual_order >= 19);
        for (std::size_t k = 0; k < a.coeffs.size(); ++k) {
            CHECK(std::abs(a.u_coeffs[k] - double(k + 1) * a.coeffs[k]) <= 1e-12 * std::abs(a.u_coeffs[k]));
        }
    }
}

TEST_CASE("the requested order is clamped to the data") {
    ReducedODE r = system({}, {0.0, 1.0}, {1.0});
    r.q[0] = r.q[0].truncated(10);
    const auto sol = formal_solve(linearize(r, 0.0), 50);
    CHECK(sol.coeffs.size() == 9);
}
