#include <doctest.h>

#include <cmath>

#include "segode/error.hpp"
#include "segode/series.hpp"
#include "support.hpp"

using namespace segode;

namespace {

TruncatedSeries poly(std::vector<Complex> c, int order = 8) { return TruncatedSeries::polynomial(std::move(c), order); }

} // namespace

TEST_CASE("difference of squares") {
    const auto p = poly({1.0, 1.0}) * poly({1.0, -1.0});
    CHECK(p.truncation_order() == 8);
    CHECK(p.coeff(0) == Complex(1.0));
    CHECK(p.coeff(1) == Complex(0.0));
    CHECK(p.coeff(2) == Complex(-1.0));
    for (int k = 3; k < 8; ++k) {
        CHECK(p.coeff(k) == Complex(0.0));
    }
}

TEST_CASE("monomial quotient keeps the Laurent valuation") {
    const auto q = TruncatedSeries::monomial(1.0, 2, 10) / TruncatedSeries::monomial(1.0, 1, 10);
    CHECK(ord0(q) == 1);
    CHECK(std::abs(q.coeff(1) - 1.0) < 1e-15);
    const auto inv = TruncatedSeries::constant(1.0, 10) / TruncatedSeries::monomial(2.0, 1, 10);
    CHECK(inv.valuation() == -1);
    CHECK(std::abs(inv.coeff(-1) - 0.5) < 1e-15);
}

TEST_CASE("geometric series and multiplying back") {
    const auto one = TruncatedSeries::constant(1.0, 32);
    const auto g = one / poly({1.0, -1.0}, 32);
    REQUIRE(g.truncation_order() == 32);
    for (int k = 0; k < 32; ++k) {
        CHECK(std::abs(g.coeff(k) - 1.0) < 1e-14);
    }
    CHECK(max_abs_diff(g * poly({1.0, -1.0}, 32), one) < 1e-14);
}

TEST_CASE("division by a numerically zero series") {
    const auto z = TruncatedSeries(0, std::vector<Complex>(6, Complex(1e-14, 0.0)));
    CHECK_THROWS_AS(poly({1.0}) / z, Error);
    try {
        (void)(poly({1.0}) / TruncatedSeries::zero(8));
        FAIL("expected DivByZeroSeries");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DivByZeroSeries);
    }
}

TEST_CASE("truncation propagation") {
    const TruncatedSeries a(1, {1.0, 2.0, 3.0});    // T = 4
    const TruncatedSeries b(-1, {1.0, 1.0, 1.0, 1.0}); // T = 3
    CHECK((a + b).truncation_order() == 3);
    CHECK((a - b).truncation_order() == 3);
    CHECK((a * b).truncation_order() == std::min(1 + 3, -1 + 4));
    CHECK_THROWS_AS((void)a.coeff(4), std::out_of_range);
    CHECK(a.coeff(0) == Complex(0.0)); // below the valuation
}

TEST_CASE("differentiate") {
    const auto d = differentiate(TruncatedSeries::monomial(1.0, 2, 8));
    CHECK(d.coeff(1) == Complex(2.0));
    CHECK(d.truncation_order() == 7);
    CHECK(is_numerically_zero(differentiate(TruncatedSeries::constant(Complex(0.0, 3.0), 8))));
    const auto inv = differentiate(TruncatedSeries::monomial(1.0, -1, 8));
    CHECK(inv.valuation() == -2);
    CHECK(inv.coeff(-2) == Complex(-1.0));
    CHECK(inv.truncation_order() == 7);
}

TEST_CASE("ord0") {
    CHECK(ord0(TruncatedSeries(0, {0.0, 0.0, 3.0})) == 2);
    CHECK(ord0(TruncatedSeries(0, {1e-12, -1e-11, 0.0, 0.0, 0.0})) == kInfiniteOrder);
    CHECK(ord0(TruncatedSeries(-2, {5.0})) == -2);
    // Threshold is relative to 1 + max|c|.
    CHECK(ord0(TruncatedSeries(0, {1e-3, 1e7})) == 1);
    CHECK(ord0(TruncatedSeries(0, {1e-1, 1e7})) == 0);
    CHECK(ord0(TruncatedSeries(0, {1e-1, 1e7}), 1e-7) == 1);
    SUBCASE("short vanishing series are low-confidence") {
        CHECK(ord0_low_confidence(TruncatedSeries(0, {0.0, 0.0})));
        CHECK_FALSE(ord0_low_confidence(TruncatedSeries::zero(32)));
        CHECK_FALSE(ord0_low_confidence(TruncatedSeries(0, {1.0})));
    }
}

TEST_CASE("conjugate_bar") {
    const Complex i{0.0, 1.0};
    CHECK(conjugate_bar(TruncatedSeries::monomial(2.0 * i, 1, 4)).coeff(1) == -2.0 * i);
    const auto s = TruncatedSeries(0, {1.0 + i, 3.0 - i});
    const auto c = conjugate_bar(s);
    CHECK(c.coeff(0) == 1.0 - i);
    CHECK(c.coeff(1) == 3.0 + i);
    const auto real = TruncatedSeries(0, {1.0, -2.0, 0.5});
    CHECK(max_abs_diff(conjugate_bar(real), real) == 0.0);
}

TEST_CASE("eval") {
    CHECK(std::abs(eval(poly({1.0, 1.0}), 0.5).value - 1.5) < 1e-15);
    CHECK(std::abs(eval(TruncatedSeries::monomial(1.0, -1, 4), 2.0).value - 0.5) < 1e-15);
    const auto g = TruncatedSeries(0, std::vector<Complex>(32, 1.0));
    CHECK(std::abs(eval(g, 0.5).value - (2.0 - std::ldexp(1.0, -31))) < 1e-9);
    CHECK(eval(g, 0.5).beyond_radius == false);
    CHECK(eval(g, 1.5).beyond_radius == true);
    CHECK_THROWS_AS(eval(TruncatedSeries::monomial(1.0, -1, 4), 0.0), Error);
    CHECK(radius_estimate(poly({1.0, 2.0}, 32)) == std::numeric_limits<double>::infinity());
}

TEST_CASE("ring identities on random series") {
    test::Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto a = test::random_series(rng, 0, 24);
        const auto b = test::random_series(rng, 0, 24);
        const auto c = test::random_series(rng, 0, 24);
        const double scale = a.scale() * b.scale() * c.scale();
        CHECK(max_abs_diff((a * b) * c, a * (b * c)) < 1e-12 * scale);
        CHECK(max_abs_diff(a * (b + c), a * b + a * c) < 1e-12 * scale);
        CHECK(max_abs_diff(differentiate(a * b), differentiate(a) * b + a * differentiate(b)) < 1e-12 * scale);
        CHECK(max_abs_diff(conjugate_bar(conjugate_bar(a)), a) == 0.0);
        CHECK(max_abs_diff(conjugate_bar(a * b), conjugate_bar(a) * conjugate_bar(b)) < 1e-12 * scale);

        const auto bb = test::random_series_exact_order(rng, 0, 24);
        CHECK(max_abs_diff((a * bb) / bb, a) < 1e-10 * a.scale());
    }
}

TEST_CASE("Laurent arithmetic round trip") {
    test::Rng rng(5);
    const auto a = test::random_series(rng, -3, 20);
    const auto b = test::random_series_exact_order(rng, 2, 20);
    const auto q = a / b;
    CHECK(q.valuation() == -5);
    CHECK(max_abs_diff(q * b, a) < 1e-10 * a.scale());
}

TEST_CASE("shifted and dropped_below") {
    const TruncatedSeries s(0, {0.0, 0.0, 4.0, 5.0});
    const auto t = s.shifted(-2);
    CHECK(t.valuation() == -2);
    CHECK(t.coeff(0) == Complex(4.0));
    CHECK(t.truncation_order() == 2);
    const auto d = t.dropped_below(0);
    CHECK(d.valuation() == 0);
    CHECK(d.coeff(1) == Complex(5.0));
}
