#include "segode/zpoly.hpp"

#include <algorithm>

namespace segode {

TruncatedSeries ZPolynomial::compose(const TruncatedSeries& z) const {
    if (coeffs_.empty()) {
        return TruncatedSeries::zero(z.truncation_order());
    }
    TruncatedSeries acc = coeffs_.back();
    for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
        acc = acc * z + coeffs_[i];
    }
    return acc;
}

Complex ZPolynomial::operator()(Complex z, Complex w) const {
    Complex acc{};
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        acc = acc * z + eval(coeffs_[i], w).value;
    }
    return acc;
}

std::vector<Complex> ZPolynomial::at_origin() const {
    std::vector<Complex> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) {
        out.push_back(c.coeff(0));
    }
    return out;
}

ZPolynomial ZPolynomial::shifted(const TruncatedSeries& shift) const {
    // Horner in the ring of z-polynomials: q <- q*(z + shift) + c_k.
    std::vector<TruncatedSeries> q;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        std::vector<TruncatedSeries> next(q.size() + 1);
        for (std::size_t k = 0; k < q.size(); ++k) {
            next[k + 1] = q[k];
        }
        next[0] = coeffs_[i];
        for (std::size_t k = 0; k < q.size(); ++k) {
            next[k] += q[k] * shift;
        }
        q = std::move(next);
    }
    return ZPolynomial(std::move(q));
}

ZPolynomial ZPolynomial::shifted(Complex shift) const {
    int t = kDefaultOrder;
    for (const auto& c : coeffs_) {
        t = std::max(t, c.truncation_order());
    }
    return shifted(TruncatedSeries::constant(shift, t));
}

ZPolynomial ZPolynomial::derivative_z() const {
    std::vector<TruncatedSeries> out;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        out.push_back(static_cast<double>(k) * coeffs_[k]);
    }
    return ZPolynomial(std::move(out));
}

} // namespace segode
