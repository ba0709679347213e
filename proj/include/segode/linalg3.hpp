#pragma once

#include <Eigen/Dense>

namespace segode {

inline constexpr double kRankTolerance = 1e-9;
inline constexpr double kScalarTolerance = 1e-9;
inline constexpr double kSingularTolerance = 1e-10;

struct CentralizerReport {
    int dim = 0;
    /// A singular value of the commutator operator lies within a factor 10 of the
    /// rank threshold, so the integer answer is sensitive to rounding.
    bool near_boundary = false;
    double smallest_kept = 0.0;    // smallest singular value counted in the rank
    double largest_dropped = 0.0;  // largest singular value treated as zero
};

/// dim{X : Xσ = σX} = 9 − rank(σᵀ⊗I − I⊗σ). Throws Singular when |det σ| < 1e−10‖σ‖³.
CentralizerReport centralizer(const Eigen::Matrix3cd& sigma);
int centralizer_dim(const Eigen::Matrix3cd& sigma);

/// σ is the identity up to scaling: ‖σ − (tr σ/3)I‖ < 1e−9‖σ‖.
bool is_scalar(const Eigen::Matrix3cd& sigma);

struct HolBound {
    int bound = 0;
    bool is_identity = false;
    int dim_gl = 0;
};

/// centralizer_dim − 1, which is 8 for scalar σ (flagged).
HolBound hol_dim_bound(const Eigen::Matrix3cd& sigma);

} // namespace segode
