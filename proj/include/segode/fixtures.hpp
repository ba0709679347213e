#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "segode/numint.hpp"
#include "segode/types.hpp"

namespace segode {

/// The rotational family: m = 1, φ₃₃ = γ²/6, associated ODE z″ = −z′/w + γ²z/w².
P0Hypersurface m_gamma_hypersurface(double gamma, int order = kDefaultOrder);
/// The m-nonminimal family with single-valued but non-extending associated map;
/// ODE z″ = (2i/w^m − m/w)z′. Requires m ≥ 2.
P0Hypersurface mm0_hypersurface(int m, int order = kDefaultOrder);
NonminimalODE mm0_ode(int m, int order = kDefaultOrder);
/// v = (u² + v²)|z|², m = 2, ODE z″ = −2z′/w.
P0Hypersurface ex68_hypersurface(int order = kDefaultOrder);

/// A named example with a closed-form solution graph and a normalized fundamental system.
struct Fixture {
    std::string name;
    P0Hypersurface hypersurface;
    /// Exact solution graph z(w) with its first two derivatives.
    std::function<GraphSample(Complex)> graph;
    Complex basepoint{1.0, 0.0};
    State psi1_init{};
    State psi2_init{};
    /// Closed form of ψ₂/ψ₁ when known.
    std::function<Complex(Complex)> ratio;
};

/// Parses "m-gamma:<γ>", "mm0:<m>" or "ex68". Throws Schema on unknown names or
/// malformed parameters, InvalidHypersurface on out-of-range ones.
Fixture make_fixture(std::string_view spec, int order = kDefaultOrder);

/// n samples of the fixture graph on |w| ∈ [0.5, 1.5], arg w ∈ [−1.2, 1.2].
std::vector<GraphSample> sample_graph(const Fixture& f, int n);

} // namespace segode
