#include "segode/ode.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <sstream>

#include "segode/error.hpp"

namespace segode {

namespace {

constexpr Complex kI{0.0, 1.0};

class Fnv1a {
  public:
    void add(const void* data, std::size_t n) {
        const auto* p = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            hash_ = (hash_ ^ p[i]) * 0x100000001b3ULL;
        }
    }
    void add(int v) { add(&v, sizeof v); }
    void add(const TruncatedSeries& s) {
        add(s.valuation());
        add(s.truncation_order());
        for (const auto& c : s.coeffs()) {
            const double parts[2] = {c.real(), c.imag()};
            add(parts, sizeof parts);
        }
    }
    std::string hex() const {
        std::ostringstream os;
        os << std::hex;
        os.width(16);
        os.fill('0');
        os << hash_;
        return os.str();
    }

  private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

bool order_at_least(int order, int bound) { return order == kInfiniteOrder || order >= bound; }

// 2·order ≥ bound without overflowing the infinity sentinel.
bool twice_order_at_least(int order, int bound) { return order == kInfiniteOrder || 2 * order >= bound; }

// Moves a reduced coefficient to valuation ≥ 0 after checking it has no pole.
TruncatedSeries pole_free(const TruncatedSeries& s, const char* name, double tolerance) {
    const int order = ord0(s, tolerance);
    if (order < 0) {
        throw Error(ErrorKind::PoleAfterReduction,
                    std::string(name) + " has a pole of order " + std::to_string(-order) + " after reduction");
    }
    return s.dropped_below(0);
}

double largest_scale(const NonminimalODE& ode) {
    return std::max({ode.A.scale(), ode.B.scale(), ode.C.scale(), ode.D.scale(), ode.E.scale(), ode.F.scale()});
}

} // namespace

std::string fingerprint(const NonminimalODE& ode) {
    Fnv1a h;
    h.add(ode.m);
    for (const auto* s : {&ode.A, &ode.B, &ode.C, &ode.D, &ode.E, &ode.F}) {
        h.add(*s);
    }
    return h.hex();
}

std::string fingerprint(const ReducedODE& ode) {
    if (!ode.source.empty()) {
        return ode.source;
    }
    Fnv1a h;
    h.add(-ode.l - 1);
    for (const auto& s : ode.p) {
        h.add(s);
    }
    for (const auto& s : ode.q) {
        h.add(s);
    }
    return h.hex();
}

TruncatedSeries quadratic_coefficient_from_relation(const TruncatedSeries& A, const TruncatedSeries& B, int m) {
    const TruncatedSeries lhs = differentiate(A.shifted(-m)).shifted(2 * m);
    return (1.0 / 3.0) * (lhs - A * B);
}

std::string RelationsReport::summary() const {
    std::ostringstream os;
    os << "reality residual " << reality_residual << (reality_passed ? " (ok)" : " (FAIL)") << ", cubic residual "
       << cubic_residual << (cubic_passed ? " (ok)" : " (FAIL)") << ", quadratic residual " << quadratic_residual
       << (quadratic_passed ? " (ok)" : " (FAIL)") << ", threshold " << tolerance * scale;
    return os.str();
}

RelationsReport check_relations(const NonminimalODE& ode, Sign sign, double tolerance) {
    RelationsReport r;
    r.tolerance = tolerance;
    r.scale = largest_scale(ode);
    const double threshold = tolerance * r.scale;
    r.reality_residual = max_abs_diff(ode.A, sign_factor(sign) * 3.0 * kI * conjugate_bar(ode.F));
    r.cubic_residual = max_abs_diff(ode.C, (-1.0 / 9.0) * (ode.A * ode.A));
    r.quadratic_residual = max_abs_diff(ode.D, quadratic_coefficient_from_relation(ode.A, ode.B, ode.m));
    r.reality_passed = r.reality_residual <= threshold;
    r.cubic_passed = r.cubic_residual <= threshold;
    r.quadratic_passed = r.quadratic_residual <= threshold;
    r.passed = r.reality_passed && r.cubic_passed && r.quadratic_passed;
    return r;
}

FuchsianReport fuchsian_test(const NonminimalODE& ode, double tolerance) {
    const int m = ode.m;
    FuchsianReport r;
    r.tolerance = tolerance;
    const int oa = ord0(ode.A, tolerance);
    const int ob = ord0(ode.B, tolerance);
    const int oe = ord0(ode.E, tolerance);
    const int of = ord0(ode.F, tolerance);
    r.conditions.push_back({"ord0 B >= m-1", ob, m - 1, order_at_least(ob, m - 1)});
    r.conditions.push_back({"ord0 E >= 2m-2", oe, 2 * m - 2, order_at_least(oe, 2 * m - 2)});
    r.conditions.push_back({"2 ord0 A >= 3(m-1)", oa, 3 * (m - 1), twice_order_at_least(oa, 3 * (m - 1))});
    r.conditions.push_back({"2 ord0 F >= 3(m-1)", of, 3 * (m - 1), twice_order_at_least(of, 3 * (m - 1))});
    r.reality_red_flag = oa != of;
    r.low_confidence = ord0_low_confidence(ode.A, tolerance) || ord0_low_confidence(ode.B, tolerance) ||
                       ord0_low_confidence(ode.E, tolerance) || ord0_low_confidence(ode.F, tolerance);
    const bool ok = std::all_of(r.conditions.begin(), r.conditions.end(), [](const auto& c) { return c.passed; });
    r.verdict = ok ? FuchsianVerdict::Fuchsian : FuchsianVerdict::NonFuchsian;
    return r;
}

FuchsianReport fuchsian_test(const P0Hypersurface& h, double tolerance) {
    const int m = h.m;
    FuchsianReport r;
    r.tolerance = tolerance;
    const int o22 = ord0(h.phi22, tolerance);
    const int o33 = ord0(h.phi33, tolerance);
    const int o23 = ord0(h.phi23, tolerance);
    r.conditions.push_back({"ord0 phi22 >= m-1", o22, m - 1, order_at_least(o22, m - 1)});
    r.conditions.push_back({"ord0 phi33 >= 2m-2", o33, 2 * m - 2, order_at_least(o33, 2 * m - 2)});
    r.conditions.push_back({"2 ord0 phi23 >= 3(m-1)", o23, 3 * (m - 1), twice_order_at_least(o23, 3 * (m - 1))});
    r.low_confidence = ord0_low_confidence(h.phi22, tolerance) || ord0_low_confidence(h.phi33, tolerance) ||
                       ord0_low_confidence(h.phi23, tolerance);
    const bool ok = std::all_of(r.conditions.begin(), r.conditions.end(), [](const auto& c) { return c.passed; });
    r.verdict = ok ? FuchsianVerdict::Fuchsian : FuchsianVerdict::NonFuchsian;
    return r;
}

ReducedODE reduce(const NonminimalODE& ode, double tolerance) {
    const auto classification = fuchsian_test(ode, tolerance);
    if (!classification.fuchsian()) {
        std::string failed;
        for (const auto& c : classification.conditions) {
            if (!c.passed) {
                failed += (failed.empty() ? "" : ", ") + c.name;
            }
        }
        throw Error(ErrorKind::NotFuchsian, "failed " + failed);
    }
    const int m = ode.m;
    const int of = ord0(ode.F, tolerance);
    const bool linear = of == kInfiniteOrder;
    const int l = linear ? 0 : of - m + 1;
    const double ld = static_cast<double>(l);

    const TruncatedSeries a_scaled = ode.A.shifted(-(m + l - 1));
    const TruncatedSeries b_scaled = ode.B.shifted(-(m - 1));
    const auto constant = [](double c, const TruncatedSeries& like) {
        return TruncatedSeries::constant(c, like.truncation_order());
    };

    ReducedODE r;
    r.l = l;
    r.p[1] = pole_free(a_scaled, "A-hat", tolerance);
    r.p[0] = pole_free(b_scaled + constant(2.0 * ld, b_scaled), "B-hat", tolerance);
    r.q[3] = pole_free(ode.C.shifted(-(2 * m + 2 * l - 2)), "C-hat", tolerance);
    r.q[2] = pole_free(ode.D.shifted(-(2 * m + l - 2)) - ld * a_scaled, "D-hat", tolerance);
    const TruncatedSeries e_scaled = ode.E.shifted(-(2 * m - 2)) - ld * b_scaled;
    r.q[1] = pole_free(e_scaled - constant(ld * (ld + 1.0), e_scaled), "E-hat", tolerance);
    r.q[0] = pole_free(ode.F.shifted(l - 2 * m + 2), "F-hat", tolerance);
    if (!linear && std::abs(r.q[3].coeff(0)) <= tolerance * r.q[3].scale()) {
        throw Error(ErrorKind::PoleAfterReduction, "C-hat(0) vanishes although F is nonzero");
    }
    r.source = fingerprint(ode);
    return r;
}

TruncatedSeries map_compatibility(const TruncatedSeries& alpha, const TruncatedSeries& a, const TruncatedSeries& beta,
                                  const TruncatedSeries& b) {
    return differentiate(beta) * a - differentiate(b) * alpha;
}

NonminimalODE ode_from_map(const TruncatedSeries& alpha, const TruncatedSeries& a, const TruncatedSeries& beta,
                           const TruncatedSeries& b, const TruncatedSeries& delta, int m) {
    const TruncatedSeries da = differentiate(a), dda = differentiate(da);
    const TruncatedSeries dal = differentiate(alpha), ddal = differentiate(dal);
    const TruncatedSeries dbe = differentiate(beta), ddbe = differentiate(dbe);
    const TruncatedSeries db = differentiate(b), ddb = differentiate(db);
    const TruncatedSeries dde = differentiate(delta), ddde = differentiate(dde);

    const TruncatedSeries jac = da * alpha - dal * a;
    if (is_numerically_zero(jac)) {
        throw Error(ErrorKind::DegenerateMap, "a'alpha - alpha'a vanishes; the map is not locally biholomorphic");
    }
    const TruncatedSeries c0 = (a * ddal - alpha * dda) / jac;
    const TruncatedSeries c1 = (db * dal - dbe * da) / jac;

    // Both invariants are polynomials in (z + δ); re-expand them in z.
    const ZPolynomial i2 = ZPolynomial({c0, 3.0 * c1}).shifted(delta);
    const ZPolynomial i3 = ZPolynomial({ddde + dde * c0, (dda * dal - ddal * da) / jac + 3.0 * (dde * c1),
                                        (dbe * dda - db * ddal + dal * ddb - da * ddbe) / jac,
                                        (dbe * ddb - db * ddbe) / jac})
                               .shifted(delta);

    const auto read_off = [](const TruncatedSeries& s, int shift, const char* name) {
        const TruncatedSeries out = -s.shifted(shift);
        if (ord0(out) < 0) {
            throw Error(ErrorKind::DegenerateMap, std::string(name) + " acquires a pole; the map does not fit order m");
        }
        return out.dropped_below(0);
    };
    NonminimalODE ode;
    ode.m = m;
    ode.A = read_off(i2[1], m, "A");
    ode.B = read_off(i2[0], m, "B");
    ode.C = read_off(i3[3], 2 * m, "C");
    ode.D = read_off(i3[2], 2 * m, "D");
    ode.E = read_off(i3[1], 2 * m, "E");
    ode.F = read_off(i3[0], 2 * m, "F");
    return ode;
}

bool is_linear(const NonminimalODE& ode, double tolerance) {
    return is_numerically_zero(ode.A, tolerance) && is_numerically_zero(ode.C, tolerance) &&
           is_numerically_zero(ode.D, tolerance) && is_numerically_zero(ode.F, tolerance);
}

VerdictReport extension_verdict(const NonminimalODE& ode, const MonodromyReport& monodromy,
                                const std::optional<FormalSolution>& formal,
                                const std::optional<GrowthReport>& growth) {
    const std::string id = fingerprint(ode);
    const auto mismatch = [&](const std::string& source) { return !source.empty() && source != id; };
    if (mismatch(monodromy.source) || (formal && mismatch(formal->source)) || (growth && mismatch(growth->source))) {
        throw Error(ErrorKind::InconsistentInputs, "reports were computed for a different equation");
    }

    VerdictReport v;
    if (!monodromy.trivial) {
        v.verdict = ExtensionVerdict::Branches;
        std::ostringstream os;
        os << "nontrivial monodromy (deviation " << monodromy.probe_deviation << ")";
        v.reason = os.str();
        return v;
    }
    if (formal && formal->status == FormalStatus::Obstructed) {
        v.verdict = ExtensionVerdict::Branches;
        v.reason = "resonance obstruction at r = " + std::to_string(formal->obstructed_at) +
                   " forces multiple-valued solutions";
        return v;
    }
    if (fuchsian_test(ode).fuchsian()) {
        v.verdict = ExtensionVerdict::Extends;
        v.reason = "Fuchsian type with trivial monodromy";
        return v;
    }
    if (growth && growth->verdict == GrowthVerdict::irregular) {
        v.verdict = ExtensionVerdict::NoExtensionIrregular;
        v.reason = "non-Fuchsian, single-valued, super-polynomial growth toward 0 (" + growth->note + ")";
        return v;
    }
    v.verdict = ExtensionVerdict::Undetermined;
    v.reason = "non-Fuchsian and single-valued, but no conclusive growth evidence";
    return v;
}

std::string to_string(FuchsianVerdict v) { return v == FuchsianVerdict::Fuchsian ? "Fuchsian" : "NonFuchsian"; }

std::string to_string(ExtensionVerdict v) {
    switch (v) {
    case ExtensionVerdict::Extends: return "Extends";
    case ExtensionVerdict::Branches: return "Branches";
    case ExtensionVerdict::NoExtensionIrregular: return "NoExtensionIrregular";
    case ExtensionVerdict::Undetermined: return "Undetermined";
    }
    return "Unknown";
}

} // namespace segode
