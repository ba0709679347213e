#include "segode/fixtures.hpp"

#include <charconv>
#include <cmath>

#include "segode/error.hpp"
#include "segode/hypersurface.hpp"

namespace segode {

namespace {

constexpr Complex kI{0.0, 1.0};

double parse_double(std::string_view text, std::string_view spec) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
        throw Error(ErrorKind::Schema, "bad example parameter in '" + std::string(spec) + "'");
    }
    return value;
}

int parse_int(std::string_view text, std::string_view spec) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw Error(ErrorKind::Schema, "bad example parameter in '" + std::string(spec) + "'");
    }
    return value;
}

Fixture m_gamma_fixture(double gamma, int order) {
    Fixture f;
    f.hypersurface = m_gamma_hypersurface(gamma, order);
    if (gamma == 0.0) {
        // z = (1/i) log w; fundamental system 1, log w.
        f.graph = [](Complex w) {
            return GraphSample{w, -kI * std::log(w), -kI / w, kI / (w * w)};
        };
        f.psi1_init = {1.0, 0.0};
        f.psi2_init = {0.0, 1.0};
        f.ratio = [](Complex w) { return std::log(w); };
        return f;
    }
    // z = (1/2i)(w^γ − w^{−γ}); fundamental system w^γ, w^{−γ}.
    f.graph = [gamma](Complex w) {
        const Complex up = std::pow(w, gamma);
        const Complex down = std::pow(w, -gamma);
        const Complex k = 1.0 / (2.0 * kI);
        return GraphSample{w, k * (up - down), k * gamma * (up + down) / w,
                           k * gamma * ((gamma - 1.0) * up - (gamma + 1.0) * down) / (w * w)};
    };
    f.psi1_init = {1.0, gamma};
    f.psi2_init = {1.0, -gamma};
    f.ratio = [gamma](Complex w) { return std::pow(w, -2.0 * gamma); };
    return f;
}

Fixture mm0_fixture(int m, int order) {
    Fixture f;
    f.hypersurface = mm0_hypersurface(m, order);
    const double md = m;
    // ψ₂ = (1/2i) exp(2i w^{1−m}/(1−m)), ψ₂′ = w^{−m} exp(…).
    const auto expo = [md](Complex w) { return std::exp(2.0 * kI * std::pow(w, 1.0 - md) / (1.0 - md)); };
    f.graph = [md, expo](Complex w) {
        const Complex e = expo(w);
        const Complex dz = std::pow(w, -md) * e;
        return GraphSample{w, e / (2.0 * kI), dz, (2.0 * kI * std::pow(w, -md) - md / w) * dz};
    };
    f.psi1_init = {1.0, 0.0};
    f.psi2_init = {expo(1.0) / (2.0 * kI), expo(1.0)};
    f.ratio = [expo](Complex w) { return expo(w) / (2.0 * kI); };
    return f;
}

Fixture ex68_fixture(int order) {
    Fixture f;
    f.hypersurface = ex68_hypersurface(order);
    // z = 1 + 1/w; fundamental system 1, 1/w.
    f.graph = [](Complex w) { return GraphSample{w, 1.0 + 1.0 / w, -1.0 / (w * w), 2.0 / (w * w * w)}; };
    f.psi1_init = {1.0, 0.0};
    f.psi2_init = {1.0, -1.0};
    f.ratio = [](Complex w) { return 1.0 / w; };
    return f;
}

} // namespace

P0Hypersurface m_gamma_hypersurface(double gamma, int order) {
    P0Hypersurface h;
    h.m = 1;
    h.sign = Sign::positive;
    h.phi22 = h.phi23 = h.phi32 = TruncatedSeries::zero(order);
    h.phi33 = TruncatedSeries::constant(gamma * gamma / 6.0, order);
    return h;
}

NonminimalODE mm0_ode(int m, int order) {
    if (m < 2) {
        throw Error(ErrorKind::InvalidHypersurface, "mm0 requires m >= 2");
    }
    NonminimalODE ode;
    ode.m = m;
    ode.A = ode.C = ode.D = ode.E = ode.F = TruncatedSeries::zero(order);
    ode.B = TruncatedSeries::constant(2.0 * kI, order) + TruncatedSeries::monomial(-static_cast<double>(m), m - 1, order);
    return ode;
}

P0Hypersurface mm0_hypersurface(int m, int order) {
    return recover_hypersurface(mm0_ode(m, order), Sign::positive);
}

P0Hypersurface ex68_hypersurface(int order) {
    P0Hypersurface h;
    h.m = 2;
    h.sign = Sign::positive;
    h.phi23 = h.phi32 = TruncatedSeries::zero(order);
    h.phi22 = TruncatedSeries::monomial(0.5 * kI, 1, order);
    h.phi33 = TruncatedSeries::monomial(-1.0 / 3.0, 2, order);
    return h;
}

Fixture make_fixture(std::string_view spec, int order) {
    const auto colon = spec.find(':');
    const std::string_view name = spec.substr(0, colon);
    const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
    Fixture f;
    if (name == "m-gamma" && !arg.empty()) {
        f = m_gamma_fixture(parse_double(arg, spec), order);
    } else if (name == "mm0" && !arg.empty()) {
        f = mm0_fixture(parse_int(arg, spec), order);
    } else if (name == "ex68" && colon == std::string_view::npos) {
        f = ex68_fixture(order);
    } else {
        throw Error(ErrorKind::Schema,
                    "unknown example '" + std::string(spec) + "' (expected m-gamma:<g>, mm0:<m> or ex68)");
    }
    f.name = std::string(spec);
    return f;
}

std::vector<GraphSample> sample_graph(const Fixture& f, int n) {
    std::vector<GraphSample> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double t = n > 1 ? static_cast<double>(k) / (n - 1) : 0.5;
        // Radius and angle sweep out of phase so the samples fill the annular sector.
        const double r = 0.5 + t;
        const double theta = -1.2 + 2.4 * std::fmod(t * 7.0, 1.0);
        out.push_back(f.graph(std::polar(r, theta)));
    }
    return out;
}

} // namespace segode
