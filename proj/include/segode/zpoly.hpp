#pragma once

#include <vector>

#include "segode/series.hpp"

namespace segode {

/// Polynomial in z whose coefficients are series in w: sum_k c_k(w) z^k.
class ZPolynomial {
  public:
    ZPolynomial() = default;
    explicit ZPolynomial(std::vector<TruncatedSeries> coeffs) : coeffs_(std::move(coeffs)) {}

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<TruncatedSeries>& coeffs() const noexcept { return coeffs_; }
    const TruncatedSeries& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }

    /// Composition with a series z(w); the result is a series in w.
    TruncatedSeries compose(const TruncatedSeries& z) const;
    /// Pointwise value at (z, w).
    Complex operator()(Complex z, Complex w) const;
    /// Value at w = 0 as a scalar polynomial in z (coefficients c_k(0)).
    std::vector<Complex> at_origin() const;
    /// p(z + shift) re-expanded in powers of z; shift may depend on w.
    ZPolynomial shifted(const TruncatedSeries& shift) const;
    ZPolynomial shifted(Complex shift) const;
    ZPolynomial derivative_z() const;

  private:
    std::vector<TruncatedSeries> coeffs_;
};

} // namespace segode
