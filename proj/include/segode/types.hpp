#pragma once

#include <array>
#include <string>

#include "segode/series.hpp"
#include "segode/zpoly.hpp"

namespace segode {

/// The ± of the prenormal form. Positive selects the upper sign in every
/// coefficient formula, negative the lower one.
enum class Sign { positive, negative };

inline double sign_factor(Sign s) noexcept { return s == Sign::positive ? 1.0 : -1.0; }

/// Prenormalized defining data of an m-nonminimal hypersurface:
/// w = w̄ exp(i w̄^{m-1} (±|z|² + Σ φ_kl(w̄) z^k z̄^l)). Only the four
/// coefficient functions that enter the associated ODE are kept.
struct P0Hypersurface {
    int m = 1;
    Sign sign = Sign::positive;
    TruncatedSeries phi22;
    TruncatedSeries phi23;
    TruncatedSeries phi32;
    TruncatedSeries phi33;
};

/// z'' = w^{-m} (A z + B) z' + w^{-2m} (C z³ + D z² + E z + F), all six series pole-free.
struct NonminimalODE {
    int m = 1;
    TruncatedSeries A, B, C, D, E, F;
};

/// Z'' = W^{-1} P(Z,W) Z' + W^{-2} Q(Z,W) with P = p[0] + p[1] Z and
/// Q = q[0] + q[1] Z + q[2] Z² + q[3] Z³, obtained by Z = z w^l.
struct ReducedODE {
    std::array<TruncatedSeries, 2> p;
    std::array<TruncatedSeries, 4> q;
    int l = 0;
    /// Fingerprint of the NonminimalODE this was reduced from; empty for standalone input.
    std::string source;

    ZPolynomial P() const { return ZPolynomial({p[0], p[1]}); }
    ZPolynomial Q() const { return ZPolynomial({q[0], q[1], q[2], q[3]}); }
};

/// Stable identifier of an ODE's data, used to check that reports describe the same equation.
std::string fingerprint(const NonminimalODE& ode);
std::string fingerprint(const ReducedODE& ode);

} // namespace segode
