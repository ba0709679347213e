#pragma once

#include <complex>
#include <limits>
#include <span>
#include <vector>

namespace segode {

using Complex = std::complex<double>;

inline constexpr int kDefaultOrder = 32;
inline constexpr double kOrdTolerance = 1e-9;
// ord0 result when no stored coefficient clears the threshold.
inline constexpr int kInfiniteOrder = std::numeric_limits<int>::max();
// An infinite ord0 on a series with fewer stored terms than this is low-confidence.
inline constexpr int kShortSeries = 4;

/// Finite Laurent series sum_{k=v}^{T-1} c_k w^k over complex doubles.
///
/// Exponents at or above the truncation order T are unknown, not zero.
/// Arithmetic propagates T pessimistically and never fabricates coefficients
/// past it. Values are immutable; every operation returns a new series.
class TruncatedSeries {
  public:
    /// The empty zero series (valuation 0, truncation 0).
    TruncatedSeries() = default;
    TruncatedSeries(int valuation, std::vector<Complex> coeffs);

    static TruncatedSeries zero(int truncation_order);
    static TruncatedSeries constant(Complex c, int truncation_order);
    static TruncatedSeries monomial(Complex c, int exponent, int truncation_order);
    /// Coefficients c_0, c_1, ... padded with exact zeros up to truncation_order.
    static TruncatedSeries polynomial(std::vector<Complex> coeffs, int truncation_order);

    int valuation() const noexcept { return valuation_; }
    int truncation_order() const noexcept { return valuation_ + static_cast<int>(coeffs_.size()); }
    std::span<const Complex> coeffs() const noexcept { return coeffs_; }
    bool empty() const noexcept { return coeffs_.empty(); }

    /// Coefficient of w^exponent; zero below the valuation. Throws past the truncation order.
    Complex coeff(int exponent) const;

    /// 1 + max stored |c_k|; the reference magnitude for relative thresholds.
    double scale() const noexcept;

    /// Same series with truncation lowered to min(order, current).
    TruncatedSeries truncated(int order) const;
    /// Multiplication by w^k (exact: valuation and truncation both move by k).
    TruncatedSeries shifted(int k) const;
    /// Drops stored exponents below `exponent`. Callers use it after checking
    /// with ord0 that the dropped coefficients are numerically zero.
    TruncatedSeries dropped_below(int exponent) const;
    /// Pads with exact zeros up to `order` (only meaningful for polynomial data).
    TruncatedSeries padded(int order) const;

    TruncatedSeries operator-() const;
    TruncatedSeries& operator+=(const TruncatedSeries& rhs);
    TruncatedSeries& operator-=(const TruncatedSeries& rhs);
    TruncatedSeries& operator*=(const TruncatedSeries& rhs);
    TruncatedSeries& operator*=(Complex rhs);

  private:
    int valuation_ = 0;
    std::vector<Complex> coeffs_;
};

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator*(Complex c, const TruncatedSeries& a);
TruncatedSeries operator*(const TruncatedSeries& a, Complex c);
/// Laurent quotient; throws DivByZeroSeries when b is numerically zero.
TruncatedSeries operator/(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator/(const TruncatedSeries& a, Complex c);

enum class SeriesOp { add, sub, mul, div };
TruncatedSeries arithmetic(const TruncatedSeries& a, const TruncatedSeries& b, SeriesOp op);

TruncatedSeries differentiate(const TruncatedSeries& s);

/// Smallest exponent whose coefficient exceeds tolerance * scale(), or kInfiniteOrder.
int ord0(const TruncatedSeries& s, double tolerance = kOrdTolerance);

/// True when ord0 is infinite and the series stores too few terms to trust that.
bool ord0_low_confidence(const TruncatedSeries& s, double tolerance = kOrdTolerance);

bool is_numerically_zero(const TruncatedSeries& s, double tolerance = kOrdTolerance);

/// Coefficientwise complex conjugation (the bar operation on the coefficients only).
TruncatedSeries conjugate_bar(const TruncatedSeries& s);

struct SeriesValue {
    Complex value;
    bool beyond_radius = false;
};

/// Ratio-test radius estimate from the tail of the stored coefficients;
/// +infinity for polynomial data whose tail vanishes.
double radius_estimate(const TruncatedSeries& s);

/// Partial sum over the stored coefficients. Throws EvalAtPole for w = 0 with a negative valuation.
SeriesValue eval(const TruncatedSeries& s, Complex w);

/// max |a_k - b_k| over exponents known in both series.
double max_abs_diff(const TruncatedSeries& a, const TruncatedSeries& b);

} // namespace segode
