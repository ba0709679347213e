#include "segode/bbsolver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "segode/error.hpp"

namespace segode {

namespace {

double principal_arg(Complex z) {
    double a = std::arg(z);
    return a < 0.0 ? a + 2.0 * std::numbers::pi : a;
}

// Partial sum c_1 w + ... + c_{r-1} w^{r-1} as a series known through w^r.
TruncatedSeries partial_sum(const std::vector<Complex>& c, int r) {
    std::vector<Complex> out(static_cast<std::size_t>(r + 1));
    for (int i = 1; i < r; ++i) {
        out[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(i)];
    }
    return TruncatedSeries(0, std::move(out));
}

int available_order(const BBSystem& sys) {
    int t = std::numeric_limits<int>::max();
    for (const auto* poly : {&sys.P, &sys.Q}) {
        for (const auto& c : poly->coeffs()) {
            t = std::min(t, c.truncation_order());
        }
    }
    return t;
}

} // namespace

Complex choose_base_root(const std::vector<Complex>& q_at_zero, double tolerance) {
    double scale = 1.0;
    for (const auto& c : q_at_zero) {
        scale = std::max(scale, 1.0 + std::abs(c));
    }
    int degree = -1;
    for (int k = static_cast<int>(q_at_zero.size()) - 1; k >= 0; --k) {
        if (std::abs(q_at_zero[static_cast<std::size_t>(k)]) > tolerance * scale) {
            degree = k;
            break;
        }
    }
    if (degree < 0) {
        return {};
    }
    if (degree == 0) {
        throw Error(ErrorKind::NoRoot, "Q(z, 0) is a nonzero constant");
    }

    std::vector<Complex> roots;
    if (degree == 1) {
        roots.push_back(-q_at_zero[0] / q_at_zero[1]);
    } else {
        // Companion matrix of the monic polynomial.
        const Complex lead = q_at_zero[static_cast<std::size_t>(degree)];
        Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
        for (int i = 1; i < degree; ++i) {
            companion(i, i - 1) = 1.0;
        }
        for (int i = 0; i < degree; ++i) {
            companion(i, degree - 1) = -q_at_zero[static_cast<std::size_t>(i)] / lead;
        }
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
        for (int i = 0; i < degree; ++i) {
            roots.push_back(solver.eigenvalues()(i));
        }
    }
    // Snap roots that are zero up to rounding so the argument tie-break is stable.
    for (auto& r : roots) {
        if (std::abs(r) < 1e-14) {
            r = {};
        }
    }
    return *std::min_element(roots.begin(), roots.end(), [](Complex x, Complex y) {
        const double dx = std::abs(x);
        const double dy = std::abs(y);
        if (std::abs(dx - dy) > 1e-12 * (1.0 + std::max(dx, dy))) {
            return dx < dy;
        }
        return principal_arg(x) < principal_arg(y);
    });
}

BBSystem linearize(const ReducedODE& reduced, Complex z0, double tolerance) {
    const ZPolynomial q = reduced.Q();
    const auto q_origin = q.at_origin();
    Complex value{};
    double scale = 1.0;
    double power = 1.0;
    for (std::size_t k = q_origin.size(); k-- > 0;) {
        value = value * z0 + q_origin[k];
    }
    for (const auto& c : q_origin) {
        scale += std::abs(c) * power;
        power *= std::abs(z0);
    }
    if (std::abs(value) > tolerance * scale) {
        throw Error(ErrorKind::BaseNotRoot, "|Q(z0, 0)| = " + std::to_string(std::abs(value)));
    }

    BBSystem sys;
    sys.z0 = z0;
    sys.P = reduced.P().shifted(z0);
    sys.Q = q.shifted(z0);
    sys.p00 = 1.0 + sys.P[0].coeff(0);
    sys.q10 = sys.Q[1].coeff(0);
    sys.q01 = sys.Q[0].coeff(1);
    sys.L << 0.0, 1.0, sys.q10, sys.p00;
    // Roots of λ² − p00 λ − q10.
    const Complex disc = std::sqrt(sys.p00 * sys.p00 + 4.0 * sys.q10);
    sys.eigenvalues = {(sys.p00 + disc) / 2.0, (sys.p00 - disc) / 2.0};
    sys.source = reduced.source;
    return sys;
}

FormalSolution formal_solve(const BBSystem& sys, int n, double tol_res) {
    FormalSolution sol;
    sol.z0 = sys.z0;
    sol.tolerance = tol_res;
    sol.source = sys.source;
    n = std::min(n, available_order(sys) - 1);

    std::vector<Complex> a(static_cast<std::size_t>(n + 1));
    std::vector<Complex> b(static_cast<std::size_t>(n + 1));
    double largest = 0.0;
    for (int r = 1; r <= n; ++r) {
        const TruncatedSeries z = partial_sum(a, r);
        const TruncatedSeries u = partial_sum(b, r);
        const TruncatedSeries one = TruncatedSeries::constant(1.0, r + 1);
        const TruncatedSeries rhs = (one + sys.P.compose(z)) * u + sys.Q.compose(z);
        const Complex k = rhs.coeff(r);

        const double rr = static_cast<double>(r);
        const bool resonant = std::any_of(sys.eigenvalues.begin(), sys.eigenvalues.end(),
                                          [&](Complex lambda) { return std::abs(rr - lambda) < kResonanceTolerance; });
        if (resonant) {
            // The first row of rI − L is (r, −1), so the matrix keeps rank one and
            // (0, K)ᵀ lies in its range exactly when K vanishes.
            if (std::abs(k) > tol_res * (1.0 + largest)) {
                sol.status = FormalStatus::Obstructed;
                sol.obstructed_at = r;
                sol.obstruction_size = std::abs(k);
                sol.coeffs.assign(a.begin() + 1, a.begin() + r);
                sol.u_coeffs.assign(b.begin() + 1, b.begin() + r);
                return sol;
            }
            sol.resonances.push_back(r);
            continue; // h_r = 0
        }
        const Complex det = rr * (rr - sys.p00) - sys.q10;
        a[static_cast<std::size_t>(r)] = k / det;
        b[static_cast<std::size_t>(r)] = rr * a[static_cast<std::size_t>(r)];
        largest = std::max({largest, std::abs(a[static_cast<std::size_t>(r)]), std::abs(b[static_cast<std::size_t>(r)])});
    }
    sol.status = sol.resonances.empty() ? FormalStatus::Unique : FormalStatus::ResonantSolvable;
    sol.coeffs.assign(a.begin() + 1, a.end());
    sol.u_coeffs.assign(b.begin() + 1, b.end());
    sol.residual_order = residual(sys, sol);
    return sol;
}

int residual(const BBSystem& sys, const FormalSolution& sol, double tolerance) {
    const int n = static_cast<int>(sol.coeffs.size());
    std::vector<Complex> zc(static_cast<std::size_t>(n + 1));
    std::copy(sol.coeffs.begin(), sol.coeffs.end(), zc.begin() + 1);
    const TruncatedSeries z(0, std::move(zc));
    const TruncatedSeries dz = differentiate(z);
    const TruncatedSeries second = differentiate(dz).shifted(2);
    const TruncatedSeries drift = (sys.P.compose(z) * dz).shifted(1);
    const TruncatedSeries forcing = sys.Q.compose(z);
    const TruncatedSeries res = second - drift - forcing;
    const double scale = std::max({second.scale(), drift.scale(), forcing.scale()});
    const auto c = res.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (std::abs(c[i]) > tolerance * scale) {
            return res.valuation() + static_cast<int>(i);
        }
    }
    return res.truncation_order();
}

std::string to_string(FormalStatus s) {
    switch (s) {
    case FormalStatus::Unique: return "Unique";
    case FormalStatus::ResonantSolvable: return "ResonantSolvable";
    case FormalStatus::Obstructed: return "Obstructed";
    }
    return "Unknown";
}

} // namespace segode
