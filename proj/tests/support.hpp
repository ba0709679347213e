#pragma once

// Shared generators for the property tests. Every generator takes the engine
// explicitly so each test case owns a reproducible stream.

#include <complex>
#include <random>
#include <vector>

#include "segode/series.hpp"
#include "segode/types.hpp"

namespace segode::test {

using Rng = std::mt19937_64;

inline Complex random_complex(Rng& rng, double scale = 1.0) {
    std::normal_distribution<double> n(0.0, scale);
    return {n(rng), n(rng)};
}

/// Random series with valuation v and coefficients decaying like 2^{-k}
/// (radius of convergence about 2), stored up to `order`.
inline TruncatedSeries random_series(Rng& rng, int valuation, int order, double decay = 0.5) {
    std::vector<Complex> c(static_cast<std::size_t>(order - valuation));
    double s = 1.0;
    for (auto& x : c) {
        x = random_complex(rng, s);
        s *= decay;
    }
    return TruncatedSeries(valuation, std::move(c));
}

/// Random series whose leading coefficient is bounded away from zero, so that
/// ord0 is exactly the valuation.
inline TruncatedSeries random_series_exact_order(Rng& rng, int valuation, int order) {
    auto s = random_series(rng, valuation, order);
    std::vector<Complex> c(s.coeffs().begin(), s.coeffs().end());
    c[0] = std::polar(1.0 + std::abs(c[0]), std::arg(c[0]));
    return TruncatedSeries(valuation, std::move(c));
}

/// Random hypersurface of order m: φ₂₂, φ₃₃, φ₂₃ get random orders in
/// [0, 2m] so that both Fuchsian and non-Fuchsian data occur; φ₃₂ = conj(φ₂₃).
inline P0Hypersurface random_hypersurface(Rng& rng, int m, int order) {
    std::uniform_int_distribution<int> ord(0, 2 * m);
    std::bernoulli_distribution coin(0.5);
    P0Hypersurface h;
    h.m = m;
    h.sign = coin(rng) ? Sign::positive : Sign::negative;
    h.phi22 = random_series_exact_order(rng, ord(rng), order);
    h.phi33 = random_series_exact_order(rng, ord(rng), order);
    h.phi23 = random_series_exact_order(rng, ord(rng), order);
    h.phi32 = conjugate_bar(h.phi23);
    return h;
}

/// ∫₀^w s for a holomorphic series s (no logarithmic term).
inline TruncatedSeries antiderivative(const TruncatedSeries& s) {
    std::vector<Complex> c(static_cast<std::size_t>(s.truncation_order() + 1));
    for (int k = std::max(0, s.valuation()); k < s.truncation_order(); ++k) {
        c[static_cast<std::size_t>(k + 1)] = s.coeff(k) / static_cast<double>(k + 1);
    }
    return TruncatedSeries(0, std::move(c));
}

/// Data of a linear-fractional map f = α/(z+δ) + β, g = a/(z+δ) + b with
/// b′α = β′a, the compatibility that makes it map lines of an ODE of the class.
struct RandomMap {
    TruncatedSeries alpha, a, beta, b, delta;
};

inline RandomMap random_map(Rng& rng, int order) {
    RandomMap f;
    f.alpha = random_series_exact_order(rng, 0, order);
    f.a = random_series(rng, 0, order);
    f.beta = random_series(rng, 0, order);
    f.b = antiderivative(differentiate(f.beta) * f.a / f.alpha).truncated(order);
    f.delta = random_series(rng, 0, order);
    return f;
}

inline double rel_err(Complex got, Complex want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

} // namespace segode::test
