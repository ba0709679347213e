#include "segode/hypersurface.hpp"

#include <algorithm>
#include <sstream>

#include "segode/error.hpp"
#include "segode/ode.hpp"

namespace segode {

namespace {

constexpr Complex kI{0.0, 1.0};

int common_order(const P0Hypersurface& h) {
    return std::min({h.phi22.truncation_order(), h.phi23.truncation_order(), h.phi32.truncation_order(),
                     h.phi33.truncation_order()});
}

// The φ₂₂-dependent part of E: ±2i(m−1)φ₂₂w^{m−1} − 8φ₂₂² ∓ 2iφ₂₂′w^m.
TruncatedSeries e_correction(const TruncatedSeries& phi22, int m, Sign sign) {
    const double s = sign_factor(sign);
    TruncatedSeries out = s * 2.0 * kI * static_cast<double>(m - 1) * phi22.shifted(m - 1);
    out -= 8.0 * (phi22 * phi22);
    out -= s * 2.0 * kI * differentiate(phi22).shifted(m);
    return out;
}

} // namespace

ValidationReport validate_hypersurface(const P0Hypersurface& h, double tolerance) {
    ValidationReport report;
    report.checks.push_back({"m_positive", h.m >= 1, "m = " + std::to_string(h.m)});

    const TruncatedSeries expected = conjugate_bar(h.phi23);
    report.reality_residual = max_abs_diff(h.phi32, expected);
    const double scale = std::max(h.phi23.scale(), h.phi32.scale());
    const bool reality = report.reality_residual <= tolerance * scale;
    std::ostringstream detail;
    detail << "max |phi32 - conj(phi23)| = " << report.reality_residual;
    report.checks.push_back({"reality", reality, detail.str()});

    for (const auto* s : {&h.phi22, &h.phi23, &h.phi32, &h.phi33}) {
        report.low_confidence = report.low_confidence || ord0_low_confidence(*s);
    }
    report.checks.push_back({"ord0_confidence", !report.low_confidence,
                             report.low_confidence ? "an infinite ord0 rests on a very short series"
                                                   : "ok"});
    report.passed = h.m >= 1 && reality;
    return report;
}

NonminimalODE associate_ode(const P0Hypersurface& h) {
    const auto report = validate_hypersurface(h);
    if (!report.passed) {
        std::string failed;
        for (const auto& c : report.checks) {
            if (!c.passed && c.name != "ord0_confidence") {
                failed += (failed.empty() ? "" : ", ") + c.name + " (" + c.detail + ")";
            }
        }
        throw Error(ErrorKind::InvalidHypersurface, failed);
    }
    const int m = h.m;
    const double s = sign_factor(h.sign);
    const int t = common_order(h);

    NonminimalODE ode;
    ode.m = m;
    ode.F = 2.0 * h.phi23;
    ode.A = s * 6.0 * kI * h.phi32;
    ode.B = s * 2.0 * kI * h.phi22 - TruncatedSeries::monomial(1.0, m - 1, t + m);
    ode.E = 6.0 * h.phi33 + e_correction(h.phi22, m, h.sign);
    ode.C = (-1.0 / 9.0) * (ode.A * ode.A);
    ode.D = quadratic_coefficient_from_relation(ode.A, ode.B, m);
    return ode;
}

P0Hypersurface recover_hypersurface(const NonminimalODE& ode, Sign sign, double tolerance) {
    const auto rel = check_relations(ode, sign, tolerance);
    if (!rel.passed) {
        throw Error(ErrorKind::RelationsViolated, rel.summary());
    }
    const int m = ode.m;
    const double s = sign_factor(sign);
    P0Hypersurface h;
    h.m = m;
    h.sign = sign;
    h.phi23 = 0.5 * ode.F;
    h.phi32 = ode.A / (s * 6.0 * kI);
    h.phi22 = (ode.B + TruncatedSeries::monomial(1.0, m - 1, ode.B.truncation_order() + m)) / (s * 2.0 * kI);
    h.phi33 = (ode.E - e_correction(h.phi22, m, sign)) / Complex(6.0);
    return h;
}

} // namespace segode
