#include "segode/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "segode/error.hpp"

namespace segode {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::DivByZeroSeries: return "DivByZeroSeries";
    case ErrorKind::EvalAtPole: return "EvalAtPole";
    case ErrorKind::InvalidHypersurface: return "InvalidHypersurface";
    case ErrorKind::RelationsViolated: return "RelationsViolated";
    case ErrorKind::NotFuchsian: return "NotFuchsian";
    case ErrorKind::PoleAfterReduction: return "PoleAfterReduction";
    case ErrorKind::InconsistentInputs: return "InconsistentInputs";
    case ErrorKind::DegenerateMap: return "DegenerateMap";
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::BaseNotRoot: return "BaseNotRoot";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::PathClearance: return "PathClearance";
    case ErrorKind::NotLinear: return "NotLinear";
    case ErrorKind::Psi1Vanishes: return "Psi1Vanishes";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::Schema: return "SchemaError";
    }
    return "Unknown";
}

TruncatedSeries::TruncatedSeries(int valuation, std::vector<Complex> coeffs)
    : valuation_(valuation), coeffs_(std::move(coeffs)) {}

TruncatedSeries TruncatedSeries::zero(int truncation_order) {
    return TruncatedSeries(0, std::vector<Complex>(std::max(truncation_order, 0)))
        .truncated(truncation_order);
}

TruncatedSeries TruncatedSeries::constant(Complex c, int truncation_order) {
    return monomial(c, 0, truncation_order);
}

TruncatedSeries TruncatedSeries::monomial(Complex c, int exponent, int truncation_order) {
    if (truncation_order <= exponent) {
        return TruncatedSeries(truncation_order, {});
    }
    std::vector<Complex> coeffs(static_cast<std::size_t>(truncation_order - exponent));
    coeffs[0] = c;
    return TruncatedSeries(exponent, std::move(coeffs));
}

TruncatedSeries TruncatedSeries::polynomial(std::vector<Complex> coeffs, int truncation_order) {
    coeffs.resize(static_cast<std::size_t>(std::max(truncation_order, 0)));
    return TruncatedSeries(0, std::move(coeffs));
}

Complex TruncatedSeries::coeff(int exponent) const {
    if (exponent < valuation_) {
        return {};
    }
    if (exponent >= truncation_order()) {
        throw std::out_of_range("coefficient w^" + std::to_string(exponent) +
                                " lies past the truncation order " +
                                std::to_string(truncation_order()));
    }
    return coeffs_[static_cast<std::size_t>(exponent - valuation_)];
}

double TruncatedSeries::scale() const noexcept {
    double m = 0.0;
    for (const auto& c : coeffs_) {
        m = std::max(m, std::abs(c));
    }
    return 1.0 + m;
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
    if (order >= truncation_order()) {
        return *this;
    }
    if (order <= valuation_) {
        return TruncatedSeries(order, {});
    }
    return TruncatedSeries(valuation_, {coeffs_.begin(), coeffs_.begin() + (order - valuation_)});
}

TruncatedSeries TruncatedSeries::shifted(int k) const { return TruncatedSeries(valuation_ + k, coeffs_); }

TruncatedSeries TruncatedSeries::dropped_below(int exponent) const {
    if (exponent <= valuation_) {
        return *this;
    }
    const int t = truncation_order();
    if (exponent >= t) {
        return TruncatedSeries(t, {});
    }
    return TruncatedSeries(exponent, {coeffs_.begin() + (exponent - valuation_), coeffs_.end()});
}

TruncatedSeries TruncatedSeries::padded(int order) const {
    if (order <= truncation_order()) {
        return *this;
    }
    auto c = coeffs_;
    c.resize(static_cast<std::size_t>(order - valuation_));
    return TruncatedSeries(valuation_, std::move(c));
}

TruncatedSeries TruncatedSeries::operator-() const {
    auto c = coeffs_;
    for (auto& x : c) {
        x = -x;
    }
    return TruncatedSeries(valuation_, std::move(c));
}

namespace {

TruncatedSeries combine(const TruncatedSeries& a, const TruncatedSeries& b, double sign) {
    const int t = std::min(a.truncation_order(), b.truncation_order());
    const int v = std::min({a.valuation(), b.valuation(), t});
    std::vector<Complex> out(static_cast<std::size_t>(t - v));
    for (int k = v; k < t; ++k) {
        out[static_cast<std::size_t>(k - v)] = a.coeff(k) + sign * b.coeff(k);
    }
    return TruncatedSeries(v, std::move(out));
}

} // namespace

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& rhs) { return *this = combine(*this, rhs, 1.0); }
TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& rhs) { return *this = combine(*this, rhs, -1.0); }
TruncatedSeries& TruncatedSeries::operator*=(const TruncatedSeries& rhs) { return *this = *this * rhs; }

TruncatedSeries& TruncatedSeries::operator*=(Complex rhs) {
    for (auto& x : coeffs_) {
        x *= rhs;
    }
    return *this;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) { return combine(a, b, 1.0); }
TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return combine(a, b, -1.0); }

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int v = a.valuation() + b.valuation();
    const int t = std::min(a.valuation() + b.truncation_order(), b.valuation() + a.truncation_order());
    const auto ca = a.coeffs();
    const auto cb = b.coeffs();
    const std::size_t n = static_cast<std::size_t>(std::max(t - v, 0));
    std::vector<Complex> out(n);
    for (std::size_t i = 0; i < std::min(n, ca.size()); ++i) {
        if (ca[i] == Complex{}) {
            continue;
        }
        for (std::size_t j = 0; i + j < n && j < cb.size(); ++j) {
            out[i + j] += ca[i] * cb[j];
        }
    }
    return TruncatedSeries(v, std::move(out));
}

TruncatedSeries operator*(Complex c, const TruncatedSeries& a) {
    TruncatedSeries r = a;
    r *= c;
    return r;
}

TruncatedSeries operator*(const TruncatedSeries& a, Complex c) { return c * a; }

TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int k = ord0(b);
    if (k == kInfiniteOrder) {
        throw Error(ErrorKind::DivByZeroSeries, "divisor is numerically zero through its truncation order");
    }
    const auto cb = b.coeffs().subspan(static_cast<std::size_t>(k - b.valuation()));
    const auto ca = a.coeffs();
    const std::size_t n = std::min(ca.size(), cb.size());
    std::vector<Complex> q(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex acc = ca[i];
        for (std::size_t j = 1; j <= i; ++j) {
            acc -= cb[j] * q[i - j];
        }
        q[i] = acc / cb[0];
    }
    return TruncatedSeries(a.valuation() - k, std::move(q));
}

TruncatedSeries operator/(const TruncatedSeries& a, Complex c) {
    if (c == Complex{}) {
        throw Error(ErrorKind::DivByZeroSeries, "division by the zero scalar");
    }
    return (1.0 / c) * a;
}

TruncatedSeries arithmetic(const TruncatedSeries& a, const TruncatedSeries& b, SeriesOp op) {
    switch (op) {
    case SeriesOp::add: return a + b;
    case SeriesOp::sub: return a - b;
    case SeriesOp::mul: return a * b;
    case SeriesOp::div: return a / b;
    }
    return {};
}

TruncatedSeries differentiate(const TruncatedSeries& s) {
    const int v = s.valuation();
    const int t = s.truncation_order();
    // d/dw of the constant term vanishes exactly, so a holomorphic series stays holomorphic.
    const int first = (v == 0) ? 1 : v;
    if (first >= t) {
        return TruncatedSeries(std::max(t - 1, 0), {});
    }
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(t - first));
    for (int k = first; k < t; ++k) {
        out.push_back(static_cast<double>(k) * s.coeff(k));
    }
    return TruncatedSeries(first - 1, std::move(out));
}

int ord0(const TruncatedSeries& s, double tolerance) {
    const double threshold = tolerance * s.scale();
    const auto c = s.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (std::abs(c[i]) > threshold) {
            return s.valuation() + static_cast<int>(i);
        }
    }
    return kInfiniteOrder;
}

bool ord0_low_confidence(const TruncatedSeries& s, double tolerance) {
    return ord0(s, tolerance) == kInfiniteOrder && static_cast<int>(s.coeffs().size()) < kShortSeries;
}

bool is_numerically_zero(const TruncatedSeries& s, double tolerance) {
    return ord0(s, tolerance) == kInfiniteOrder;
}

TruncatedSeries conjugate_bar(const TruncatedSeries& s) {
    std::vector<Complex> c(s.coeffs().begin(), s.coeffs().end());
    for (auto& x : c) {
        x = std::conj(x);
    }
    return TruncatedSeries(s.valuation(), std::move(c));
}

double radius_estimate(const TruncatedSeries& s) {
    const auto c = s.coeffs();
    const double threshold = kOrdTolerance * s.scale();
    std::vector<double> ratios;
    for (std::size_t i = c.size() / 2; i + 1 < c.size(); ++i) {
        const double lo = std::abs(c[i]);
        const double hi = std::abs(c[i + 1]);
        if (lo > threshold && hi > threshold) {
            ratios.push_back(lo / hi);
        }
    }
    if (ratios.empty()) {
        return std::numeric_limits<double>::infinity();
    }
    std::nth_element(ratios.begin(), ratios.begin() + ratios.size() / 2, ratios.end());
    return ratios[ratios.size() / 2];
}

SeriesValue eval(const TruncatedSeries& s, Complex w) {
    if (w == Complex{} && s.valuation() < 0) {
        throw Error(ErrorKind::EvalAtPole, "evaluation at w = 0 of a series with a pole");
    }
    const auto c = s.coeffs();
    Complex acc{};
    for (std::size_t i = c.size(); i-- > 0;) {
        acc = acc * w + c[i];
    }
    if (s.valuation() != 0) {
        Complex p = 1.0;
        for (int k = 0; k < std::abs(s.valuation()); ++k) {
            p *= w;
        }
        acc = s.valuation() > 0 ? acc * p : acc / p;
    }
    return {acc, std::abs(w) > radius_estimate(s)};
}

double max_abs_diff(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int t = std::min(a.truncation_order(), b.truncation_order());
    const int v = std::min(a.valuation(), b.valuation());
    double m = 0.0;
    for (int k = v; k < t; ++k) {
        m = std::max(m, std::abs(a.coeff(k) - b.coeff(k)));
    }
    return m;
}

} // namespace segode
