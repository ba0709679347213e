#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "segode/types.hpp"

namespace segode {

/// Solution data (z, z′) at a point w.
struct State {
    Complex z;
    Complex dz;
};

inline constexpr double kTrivialityTolerance = 1e-6;

struct StepControl {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double max_step = 0.0; // arc length; 0 selects min|w| along the piece / 64
    long max_steps = 2'000'000;
};

struct CirclePath {
    double radius = 0.5;
    double basepoint_angle = 0.0;
    double turns = 1.0; // negative turns run clockwise
};

struct SegmentPath {
    Complex start;
    Complex end;
};

struct PolylinePath {
    std::vector<Complex> points;
};

struct PathSpec {
    std::variant<CirclePath, SegmentPath, PolylinePath> kind;
    StepControl control;
    double clearance = 1e-3; // minimum admissible |w| along the path

    Complex start() const;
    Complex end() const;
};

/// Second-order right-hand side z″ = f(w, z, z′) built from either ODE form.
class OdeField {
  public:
    explicit OdeField(const NonminimalODE& ode);
    explicit OdeField(const ReducedODE& ode);

    /// z″ at (w, z, z′); sets `beyond_radius` when a coefficient is evaluated past
    /// its estimated radius of convergence.
    Complex second_derivative(Complex w, Complex z, Complex dz, bool& beyond_radius) const;
    const std::string& source() const noexcept { return source_; }

  private:
    // z″ = w^{-first} (c1 z + c0) z′ + w^{-second} (q3 z³ + q2 z² + q1 z + q0)
    int first_pole_ = 1;
    int second_pole_ = 2;
    std::array<TruncatedSeries, 2> drift_;
    std::array<TruncatedSeries, 4> forcing_;
    double radius_ = 0.0; // smallest radius estimate among the coefficients
    std::string source_;
};

struct IntegrationResult {
    State end;
    double error_estimate = 0.0;
    long steps = 0;
    bool radius_warning = false;
};

/// Adaptive Dormand–Prince 5(4) integration of (z, u = wz′) along the path.
/// Throws StepUnderflow when the step controller collapses or the state
/// overflows, PathClearance when the path comes closer to 0 than allowed.
IntegrationResult integrate_path(const OdeField& field, State init, const PathSpec& path);

struct MonodromyReport {
    std::optional<Eigen::Matrix2cd> matrix; // linear case, basis (1,0),(0,1) of (z, z′)
    std::optional<std::array<Complex, 2>> eigenvalues;
    double probe_deviation = 0.0;
    bool trivial = false;
    double tolerance = kTrivialityTolerance;
    int probes = 0;
    double radius = 0.5;
    double basepoint_angle = 0.0;
    double turns = 1.0;
    bool radius_warning = false;
    std::string source;
};

/// Loop transport of the fundamental system of a linear equation (A = C = D = F ≡ 0).
/// Throws NotLinear.
MonodromyReport monodromy_linear(const NonminimalODE& ode, double radius = 0.5, double basepoint_angle = 0.0,
                                 double turns = 1.0, const StepControl& control = {});

/// Transports one solution around the loop. A nontrivial probe certifies
/// branching; a trivial one is evidence only.
MonodromyReport monodromy_probe(const NonminimalODE& ode, State init, double radius = 0.5,
                                double basepoint_angle = 0.0, double turns = 1.0,
                                const StepControl& control = {});

enum class GrowthVerdict { moderate, irregular };

inline constexpr double kSlopeStability = 0.1;

struct GrowthReport {
    double ray_angle = 0.0;
    double r0 = 0.5;
    double r_min = 0.5 / 64.0;
    double exponent = 0.0;     // b in |y| ≈ C |w|^b
    double fit_residual = 0.0; // spread of per-window slopes over the trailing half of the windows
    double rms = 0.0;          // least-squares residual of the log-log fit
    std::vector<double> window_slopes;
    double threshold = kSlopeStability;
    GrowthVerdict verdict = GrowthVerdict::moderate;
    std::string note;
    std::string source;
};

/// Integrates toward 0 along w = t e^{iθ}, t from r0 to r_min, and fits
/// log‖(z, wz′)‖ against log(1/t) on dyadic windows. Step underflow or overflow
/// is reported as irregular with a note, never thrown.
GrowthReport growth_exponent(const NonminimalODE& ode, State init, double ray_angle, double r0 = 0.5,
                             double r_min = 0.5 / 64.0, const StepControl& control = {});

/// The linear-fractional map (z, w) ↦ (z/ψ₁(w), ψ₂(w)/ψ₁(w)) of a linear equation,
/// where ψ₁, ψ₂ are transported from initial data at the basepoint.
class AssociatedMap {
  public:
    AssociatedMap(const NonminimalODE& ode, Complex basepoint, State psi1_init, State psi2_init,
                  StepControl control = {});

    /// ψ₁(w), ψ₂(w) continued along the arc |w| = |basepoint| then radially.
    std::array<State, 2> fundamental(Complex w) const;
    /// Throws Psi1Vanishes when |ψ₁(w)| is numerically zero.
    std::array<Complex, 2> operator()(Complex z, Complex w) const;

  private:
    OdeField field_;
    Complex basepoint_;
    State psi1_;
    State psi2_;
    StepControl control_;
};

AssociatedMap associated_map_linear(const NonminimalODE& ode, Complex basepoint, State psi1_init,
                                    State psi2_init, const StepControl& control = {});

/// Largest relative deviation of a set of points of ℂ² from a single complex line.
double collinearity_residual(const std::vector<std::array<Complex, 2>>& points);

struct GraphSample {
    Complex w, z, dz, d2z;
};

/// max_j |z″ − w^{-m}(Az+B)z′ − w^{-2m}(Cz³+Dz²+Ez+F)| over the samples.
double segre_residual(const NonminimalODE& ode, const std::vector<GraphSample>& graph);

std::string to_string(GrowthVerdict v);

} // namespace segode
