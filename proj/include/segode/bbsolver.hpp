#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "segode/types.hpp"
#include "segode/zpoly.hpp"

namespace segode {

inline constexpr double kResonanceTolerance = 1e-8;
inline constexpr double kKernelTolerance = 1e-9;
inline constexpr double kResidualTolerance = 1e-9;

/// First-order form u = wz′, wz′ = u, wu′ = (1 + P)u + Q, recentred so that the base
/// root sits at z = 0. L = [[0, 1], [q10, p00]] drives the coefficient recursion.
struct BBSystem {
    ZPolynomial P; // already shifted: P(z + z0, w)
    ZPolynomial Q; // already shifted: Q(z + z0, w)
    Complex z0;
    Eigen::Matrix2cd L;
    Complex p00, q10, q01;
    std::array<Complex, 2> eigenvalues;
    std::string source;
};

/// Root of smallest modulus of Q(z, 0) (ties: smallest argument in [0, 2π)); 0 when Q(·,0) ≡ 0.
/// Throws NoRoot when Q(·,0) is a nonzero constant.
Complex choose_base_root(const std::vector<Complex>& q_at_zero, double tolerance = kOrdTolerance);

/// Throws BaseNotRoot when |Q(z0, 0)| exceeds tolerance.
BBSystem linearize(const ReducedODE& reduced, Complex z0, double tolerance = kKernelTolerance);

enum class FormalStatus { Unique, ResonantSolvable, Obstructed };

struct FormalSolution {
    Complex z0;
    std::vector<Complex> coeffs;   // a_1..a_n of z − z0
    std::vector<Complex> u_coeffs; // b_1..b_n of u = wz′
    FormalStatus status = FormalStatus::Unique;
    std::vector<int> resonances;   // resonant r where the kernel term vanished
    int obstructed_at = 0;         // r with K_r ≠ 0 at a resonance
    double obstruction_size = 0.0; // |K_r| there
    int residual_order = 0;
    double tolerance = kKernelTolerance;
    std::string source;
};

/// Solves (rI − L)h_r = (0, K_r)ᵀ for r = 1..n. At a resonance a vanishing K_r
/// gives h_r = 0; a nonzero K_r stops with Obstructed.
FormalSolution formal_solve(const BBSystem& sys, int n, double tol_res = kKernelTolerance);

/// Lowest exponent at which W²Z″ − W·P·Z′ − Q fails to vanish for the truncated
/// solution; the truncation order of the residual when it vanishes throughout.
int residual(const BBSystem& sys, const FormalSolution& sol, double tolerance = kResidualTolerance);

std::string to_string(FormalStatus s);

} // namespace segode
