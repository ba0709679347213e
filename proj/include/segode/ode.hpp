#pragma once

#include <optional>
#include <string>
#include <vector>

#include "segode/bbsolver.hpp"
#include "segode/hypersurface.hpp"
#include "segode/numint.hpp"
#include "segode/types.hpp"

namespace segode {

/// D as dictated by the structural relation: w^{2m}(A/w^m)′/3 − AB/3.
TruncatedSeries quadratic_coefficient_from_relation(const TruncatedSeries& A, const TruncatedSeries& B, int m);

struct RelationsReport {
    double reality_residual = 0.0;   // A vs ±3i·conj(F)
    double cubic_residual = 0.0;     // C vs −A²/9
    double quadratic_residual = 0.0; // D vs w^{2m}(A/w^m)′/3 − AB/3
    double scale = 1.0;
    double tolerance = kRelationTolerance;
    bool reality_passed = false;
    bool cubic_passed = false;
    bool quadratic_passed = false;
    bool passed = false;

    /// Only the two relations a linear-fractional map imposes (no reality condition).
    bool projective_passed() const noexcept { return cubic_passed && quadratic_passed; }
    std::string summary() const;
};

RelationsReport check_relations(const NonminimalODE& ode, Sign sign, double tolerance = kRelationTolerance);

enum class FuchsianVerdict { Fuchsian, NonFuchsian };

struct OrderCondition {
    std::string name;   // e.g. "ord0 B >= m-1"
    int order = 0;      // kInfiniteOrder when numerically zero
    int bound = 0;
    bool passed = false;
};

struct FuchsianReport {
    FuchsianVerdict verdict = FuchsianVerdict::Fuchsian;
    std::vector<OrderCondition> conditions;
    bool low_confidence = false;
    /// ODE side only: ord0 A and ord0 F disagree, which signals a broken reality condition.
    bool reality_red_flag = false;
    double tolerance = kOrdTolerance;

    bool fuchsian() const noexcept { return verdict == FuchsianVerdict::Fuchsian; }
};

/// ord₀B ≥ m−1, ord₀E ≥ 2m−2, ord₀A = ord₀F with 2·ord₀F ≥ 3(m−1).
FuchsianReport fuchsian_test(const NonminimalODE& ode, double tolerance = kOrdTolerance);
/// The same thresholds applied to φ₂₂, φ₃₃, φ₂₃.
FuchsianReport fuchsian_test(const P0Hypersurface& h, double tolerance = kOrdTolerance);

/// Substitutes z = Z w^{-l}, l = ord₀F − m + 1 (l = 0 when F ≡ 0), and
/// returns the Briot–Bouquet form. Throws NotFuchsian / PoleAfterReduction.
ReducedODE reduce(const NonminimalODE& ode, double tolerance = kOrdTolerance);

/// Builds the ODE satisfied by the graphs mapped to lines by
/// f = α/(z+δ) + β, g = a/(z+δ) + b. Throws DegenerateMap when a′α − α′a vanishes.
NonminimalODE ode_from_map(const TruncatedSeries& alpha, const TruncatedSeries& a, const TruncatedSeries& beta,
                           const TruncatedSeries& b, const TruncatedSeries& delta, int m);

/// β′a − b′α, which must vanish for a map of this shape to be associated with an ODE of the class.
TruncatedSeries map_compatibility(const TruncatedSeries& alpha, const TruncatedSeries& a,
                                  const TruncatedSeries& beta, const TruncatedSeries& b);

bool is_linear(const NonminimalODE& ode, double tolerance = kOrdTolerance);

enum class ExtensionVerdict { Extends, Branches, NoExtensionIrregular, Undetermined };

struct VerdictReport {
    ExtensionVerdict verdict = ExtensionVerdict::Undetermined;
    std::string reason;
};

/// Combines the classification with monodromy, formal-solution and growth
/// evidence. Never claims more than the evidence licenses: a single-valued
/// non-Fuchsian equation without irregular growth is Undetermined.
VerdictReport extension_verdict(const NonminimalODE& ode, const MonodromyReport& monodromy,
                                const std::optional<FormalSolution>& formal = std::nullopt,
                                const std::optional<GrowthReport>& growth = std::nullopt);

std::string to_string(FuchsianVerdict v);
std::string to_string(ExtensionVerdict v);

} // namespace segode
