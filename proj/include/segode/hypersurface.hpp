#pragma once

#include <string>
#include <vector>

#include "segode/types.hpp"

namespace segode {

inline constexpr double kRelationTolerance = 1e-10;

struct CheckItem {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationReport {
    bool passed = false;
    double reality_residual = 0.0;
    bool low_confidence = false;
    std::vector<CheckItem> checks;
};

/// Checks m >= 1 and the reality condition φ₃₂ = conj(φ₂₃); flags ord0 results
/// that rest on too few stored coefficients.
ValidationReport validate_hypersurface(const P0Hypersurface& h, double tolerance = kRelationTolerance);

/// The associated ODE: F = 2φ₂₃, A = ±6iφ₃₂, B = ±2iφ₂₂ − w^{m−1},
/// E = 6φ₃₃ ± 2i(m−1)φ₂₂w^{m−1} − 8φ₂₂² ∓ 2iφ₂₂′w^m, C = −A²/9,
/// D = w^{2m}(A/w^m)′/3 − AB/3. Throws InvalidHypersurface.
NonminimalODE associate_ode(const P0Hypersurface& h);

/// Algebraic inverse of associate_ode for the given sign. Throws RelationsViolated
/// when the ODE does not satisfy the structural relations.
P0Hypersurface recover_hypersurface(const NonminimalODE& ode, Sign sign,
                                    double tolerance = kRelationTolerance);

} // namespace segode
