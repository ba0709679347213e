#include "segode/numint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "segode/error.hpp"
#include "segode/ode.hpp"

namespace segode {

namespace {

constexpr Complex kI{0.0, 1.0};

Complex int_power(Complex w, int k) {
    Complex p = 1.0;
    for (int i = 0; i < std::abs(k); ++i) {
        p *= w;
    }
    return k >= 0 ? p : 1.0 / p;
}

Complex horner(const TruncatedSeries& s, Complex w) {
    const auto c = s.coeffs();
    Complex acc{};
    for (std::size_t i = c.size(); i-- > 0;) {
        acc = acc * w + c[i];
    }
    return s.valuation() == 0 ? acc : acc * int_power(w, s.valuation());
}

// One smooth piece of a path, parametrized by arc length s in [0, length].
struct Piece {
    double length = 0.0;
    double min_abs = 0.0;
    std::function<Complex(double)> pos;
    std::function<Complex(double)> vel;
};

double segment_distance_to_origin(Complex a, Complex b) {
    const Complex d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) {
        return std::abs(a);
    }
    const double t = std::clamp(-(a.real() * d.real() + a.imag() * d.imag()) / len2, 0.0, 1.0);
    return std::abs(a + t * d);
}

Piece segment_piece(Complex a, Complex b) {
    const double len = std::abs(b - a);
    const Complex dir = len > 0.0 ? (b - a) / len : Complex{};
    return {len, segment_distance_to_origin(a, b), [a, dir](double s) { return a + s * dir; },
            [dir](double) { return dir; }};
}

std::vector<Piece> pieces_of(const PathSpec& path) {
    std::vector<Piece> out;
    if (const auto* c = std::get_if<CirclePath>(&path.kind)) {
        const double r = c->radius;
        const double sigma = c->turns >= 0.0 ? 1.0 : -1.0;
        const double theta0 = c->basepoint_angle;
        out.push_back({2.0 * std::numbers::pi * std::abs(c->turns) * r, r,
                       [=](double s) { return std::polar(r, theta0 + sigma * s / r); },
                       [=](double s) { return sigma * kI * std::polar(1.0, theta0 + sigma * s / r); }});
    } else if (const auto* seg = std::get_if<SegmentPath>(&path.kind)) {
        out.push_back(segment_piece(seg->start, seg->end));
    } else {
        const auto& pts = std::get<PolylinePath>(path.kind).points;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            out.push_back(segment_piece(pts[i], pts[i + 1]));
        }
    }
    return out;
}

using Vec = std::array<Complex, 2>;

double smallest_radius(const std::array<TruncatedSeries, 2>& drift, const std::array<TruncatedSeries, 4>& forcing) {
    double r = std::numeric_limits<double>::infinity();
    for (const auto& s : drift) {
        r = std::min(r, radius_estimate(s));
    }
    for (const auto& s : forcing) {
        r = std::min(r, radius_estimate(s));
    }
    return r;
}

// Dormand–Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

Vec axpy(const Vec& y, double h, std::initializer_list<std::pair<double, const Vec*>> terms) {
    Vec out = y;
    for (const auto& [coef, k] : terms) {
        out[0] += h * coef * (*k)[0];
        out[1] += h * coef * (*k)[1];
    }
    return out;
}

} // namespace

Complex PathSpec::start() const {
    if (const auto* c = std::get_if<CirclePath>(&kind)) {
        return std::polar(c->radius, c->basepoint_angle);
    }
    if (const auto* s = std::get_if<SegmentPath>(&kind)) {
        return s->start;
    }
    return std::get<PolylinePath>(kind).points.front();
}

Complex PathSpec::end() const {
    if (const auto* c = std::get_if<CirclePath>(&kind)) {
        return std::polar(c->radius, c->basepoint_angle + 2.0 * std::numbers::pi * c->turns);
    }
    if (const auto* s = std::get_if<SegmentPath>(&kind)) {
        return s->end;
    }
    return std::get<PolylinePath>(kind).points.back();
}

OdeField::OdeField(const NonminimalODE& ode)
    : first_pole_(ode.m), second_pole_(2 * ode.m), drift_{ode.B, ode.A}, forcing_{ode.F, ode.E, ode.D, ode.C},
      source_(fingerprint(ode)) {
    radius_ = smallest_radius(drift_, forcing_);
}

OdeField::OdeField(const ReducedODE& ode)
    : first_pole_(1), second_pole_(2), drift_(ode.p), forcing_(ode.q), source_(fingerprint(ode)) {
    radius_ = smallest_radius(drift_, forcing_);
}

Complex OdeField::second_derivative(Complex w, Complex z, Complex dz, bool& beyond_radius) const {
    if (std::abs(w) > radius_) {
        beyond_radius = true;
    }
    auto value = [w](const TruncatedSeries& s) { return horner(s, w); };
    const Complex drift = value(drift_[1]) * z + value(drift_[0]);
    const Complex forcing = ((value(forcing_[3]) * z + value(forcing_[2])) * z + value(forcing_[1])) * z +
                            value(forcing_[0]);
    return drift * dz / int_power(w, first_pole_) + forcing / int_power(w, second_pole_);
}

IntegrationResult integrate_path(const OdeField& field, State init, const PathSpec& path) {
    const auto pieces = pieces_of(path);
    IntegrationResult result;
    Complex w = path.start();
    Vec y{init.z, w * init.dz};

    for (const auto& piece : pieces) {
        if (piece.min_abs < path.clearance) {
            throw Error(ErrorKind::PathClearance, "path passes within " + std::to_string(piece.min_abs) +
                                                      " of w = 0 (clearance " + std::to_string(path.clearance) + ")");
        }
        if (piece.length == 0.0) {
            continue;
        }
        const double max_step = path.control.max_step > 0.0 ? path.control.max_step : piece.min_abs / 64.0;
        auto rhs = [&](double s, const Vec& v) -> Vec {
            const Complex ws = piece.pos(s);
            const Complex dw = piece.vel(s);
            const Complex dz = v[1] / ws;
            const Complex d2z = field.second_derivative(ws, v[0], dz, result.radius_warning);
            return {dz * dw, (dz + ws * d2z) * dw};
        };

        double s = 0.0;
        double h = std::min(max_step, piece.length);
        Vec k1 = rhs(s, y);
        const double h_floor = 1e-14 * piece.length;
        while (s < piece.length) {
            if (result.steps >= path.control.max_steps) {
                throw Error(ErrorKind::StepUnderflow, "step budget exhausted");
            }
            const bool last = s + h >= piece.length;
            if (last) {
                h = piece.length - s;
            }
            const Vec k2 = rhs(s + c2 * h, axpy(y, h, {{a21, &k1}}));
            const Vec k3 = rhs(s + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
            const Vec k4 = rhs(s + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
            const Vec k5 = rhs(s + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
            const Vec k6 = rhs(s + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
            const Vec y_new = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
            const Vec k7 = rhs(s + h, y_new);

            double err = 0.0;
            double err_abs = 0.0;
            bool finite = true;
            for (int i = 0; i < 2; ++i) {
                const Complex e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
                const double sc = path.control.abs_tol +
                                  path.control.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
                err = std::max(err, std::abs(e) / sc);
                err_abs = std::max(err_abs, std::abs(e));
                finite = finite && std::isfinite(y_new[i].real()) && std::isfinite(y_new[i].imag());
            }
            if (!finite || !std::isfinite(err)) {
                throw Error(ErrorKind::StepUnderflow, "state overflow at s = " + std::to_string(s));
            }
            if (err <= 1.0) {
                s = last ? piece.length : s + h;
                y = y_new;
                k1 = k7;
                result.error_estimate += err_abs;
                ++result.steps;
            }
            const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            h = std::min(h * factor, max_step);
            if (h < h_floor && s < piece.length) {
                throw Error(ErrorKind::StepUnderflow, "step size collapsed at |w| = " + std::to_string(std::abs(piece.pos(s))));
            }
        }
        w = piece.pos(piece.length);
    }
    w = path.end();
    result.end = {y[0], y[1] / w};
    return result;
}

MonodromyReport monodromy_linear(const NonminimalODE& ode, double radius, double basepoint_angle, double turns,
                                 const StepControl& control) {
    if (!is_linear(ode)) {
        throw Error(ErrorKind::NotLinear, "A, C, D, F are not all numerically zero");
    }
    const OdeField field(ode);
    PathSpec path{CirclePath{radius, basepoint_angle, turns}, control, std::min(1e-3, radius / 2)};
    MonodromyReport report;
    Eigen::Matrix2cd m;
    const std::array<State, 2> basis{State{1.0, 0.0}, State{0.0, 1.0}};
    for (int j = 0; j < 2; ++j) {
        const auto r = integrate_path(field, basis[static_cast<std::size_t>(j)], path);
        m(0, j) = r.end.z;
        m(1, j) = r.end.dz;
        report.radius_warning = report.radius_warning || r.radius_warning;
    }
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> solver(m, false);
    report.matrix = m;
    report.eigenvalues = std::array<Complex, 2>{solver.eigenvalues()(0), solver.eigenvalues()(1)};
    report.probe_deviation = (m - Eigen::Matrix2cd::Identity()).norm();
    report.trivial = report.probe_deviation < report.tolerance;
    report.probes = 2;
    report.radius = radius;
    report.basepoint_angle = basepoint_angle;
    report.turns = turns;
    report.source = field.source();
    return report;
}

MonodromyReport monodromy_probe(const NonminimalODE& ode, State init, double radius, double basepoint_angle,
                                double turns, const StepControl& control) {
    const OdeField field(ode);
    PathSpec path{CirclePath{radius, basepoint_angle, turns}, control, std::min(1e-3, radius / 2)};
    const auto r = integrate_path(field, init, path);
    MonodromyReport report;
    report.probe_deviation = std::hypot(std::abs(r.end.z - init.z), std::abs(r.end.dz - init.dz));
    const double norm = std::hypot(std::abs(init.z), std::abs(init.dz));
    report.trivial = report.probe_deviation < report.tolerance * std::max(1.0, norm);
    report.probes = 1;
    report.radius = radius;
    report.basepoint_angle = basepoint_angle;
    report.turns = turns;
    report.radius_warning = r.radius_warning;
    report.source = field.source();
    return report;
}

GrowthReport growth_exponent(const NonminimalODE& ode, State init, double ray_angle, double r0, double r_min,
                             const StepControl& control) {
    GrowthReport report;
    report.ray_angle = ray_angle;
    report.r0 = r0;
    report.r_min = r_min;
    report.source = fingerprint(ode);
    const OdeField field(ode);
    const Complex dir = std::polar(1.0, ray_angle);

    constexpr int kSubsamples = 4;
    std::vector<double> xs;
    std::vector<double> ys;
    auto log_norm = [&](double t, const State& st) {
        const Complex u = t * dir * st.dz;
        return std::log(std::max(std::hypot(std::abs(st.z), std::abs(u)), 1e-300));
    };
    xs.push_back(std::log(1.0 / r0));
    ys.push_back(log_norm(r0, init));

    State state = init;
    double t = r0;
    try {
        while (t > r_min * (1.0 + 1e-12)) {
            const double t_next = std::max(t / 2.0, r_min);
            const double y_start = ys.back();
            const double x_start = xs.back();
            for (int k = 1; k <= kSubsamples; ++k) {
                const double t_a = t * std::pow(t_next / t, static_cast<double>(k - 1) / kSubsamples);
                const double t_b = t * std::pow(t_next / t, static_cast<double>(k) / kSubsamples);
                PathSpec path{SegmentPath{t_a * dir, t_b * dir}, control, t_b * 0.5};
                state = integrate_path(field, state, path).end;
                xs.push_back(std::log(1.0 / t_b));
                ys.push_back(log_norm(t_b, state));
            }
            report.window_slopes.push_back((ys.back() - y_start) / (xs.back() - x_start));
            t = t_next;
        }
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::StepUnderflow) {
            throw;
        }
        report.verdict = GrowthVerdict::irregular;
        report.note = std::string("integration broke down toward 0 (") + e.what() + ")";
    }

    const auto n = static_cast<double>(xs.size());
    if (xs.size() >= 2) {
        double mx = 0.0, my = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            mx += xs[i] / n;
            my += ys[i] / n;
        }
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sxx += (xs[i] - mx) * (xs[i] - mx);
            sxy += (xs[i] - mx) * (ys[i] - my);
        }
        const double slope = sxy / sxx;
        double ss = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const double r = ys[i] - (my + slope * (xs[i] - mx));
            ss += r * r;
        }
        report.exponent = -slope;
        report.rms = std::sqrt(ss / n);
    }
    if (!report.window_slopes.empty()) {
        // Judge stability on the trailing half of the windows: a mixture of power
        // laws settles onto its dominant exponent, super-polynomial growth does not.
        const auto& sl = report.window_slopes;
        const std::size_t keep = std::min(sl.size(), std::max<std::size_t>(3, (sl.size() + 1) / 2));
        const auto [lo, hi] = std::minmax_element(sl.end() - static_cast<std::ptrdiff_t>(keep), sl.end());
        report.fit_residual = *hi - *lo;
    }
    if (report.fit_residual > report.threshold) {
        report.verdict = GrowthVerdict::irregular;
        if (report.note.empty()) {
            report.note = "slope unstable across dyadic windows";
        }
    }
    return report;
}

AssociatedMap::AssociatedMap(const NonminimalODE& ode, Complex basepoint, State psi1_init, State psi2_init,
                             StepControl control)
    : field_(ode), basepoint_(basepoint), psi1_(psi1_init), psi2_(psi2_init), control_(control) {
    if (!is_linear(ode)) {
        throw Error(ErrorKind::NotLinear, "associated map reconstruction needs a linear equation");
    }
}

std::array<State, 2> AssociatedMap::fundamental(Complex w) const {
    const double r = std::abs(basepoint_);
    const double theta0 = std::arg(basepoint_);
    const double delta = std::remainder(std::arg(w) - theta0, 2.0 * std::numbers::pi);
    const double clearance = std::min(r, std::abs(w)) * 0.5;
    std::array<State, 2> out{psi1_, psi2_};
    for (auto& st : out) {
        if (delta != 0.0) {
            PathSpec arc{CirclePath{r, theta0, delta / (2.0 * std::numbers::pi)}, control_, clearance};
            st = integrate_path(field_, st, arc).end;
        }
        const Complex on_arc = std::polar(r, theta0 + delta);
        if (std::abs(on_arc - w) > 0.0) {
            PathSpec radial{SegmentPath{on_arc, w}, control_, clearance};
            st = integrate_path(field_, st, radial).end;
        }
    }
    return out;
}

std::array<Complex, 2> AssociatedMap::operator()(Complex z, Complex w) const {
    const auto psi = fundamental(w);
    const Complex p1 = psi[0].z;
    const Complex p2 = psi[1].z;
    if (std::abs(p1) < 1e-12 * (1.0 + std::abs(p2))) {
        throw Error(ErrorKind::Psi1Vanishes, "psi1 is numerically zero at the evaluation point");
    }
    return {z / p1, p2 / p1};
}

AssociatedMap associated_map_linear(const NonminimalODE& ode, Complex basepoint, State psi1_init, State psi2_init,
                                    const StepControl& control) {
    return AssociatedMap(ode, basepoint, psi1_init, psi2_init, control);
}

double collinearity_residual(const std::vector<std::array<Complex, 2>>& points) {
    if (points.size() < 3) {
        return 0.0;
    }
    auto norm2 = [](const std::array<Complex, 2>& v) { return std::hypot(std::abs(v[0]), std::abs(v[1])); };
    std::array<Complex, 2> ref{};
    double ref_norm = 0.0;
    for (std::size_t j = 1; j < points.size(); ++j) {
        const std::array<Complex, 2> d{points[j][0] - points[0][0], points[j][1] - points[0][1]};
        if (norm2(d) > ref_norm) {
            ref = d;
            ref_norm = norm2(d);
        }
    }
    if (ref_norm == 0.0) {
        return 0.0;
    }
    double worst = 0.0;
    for (std::size_t j = 1; j < points.size(); ++j) {
        const std::array<Complex, 2> d{points[j][0] - points[0][0], points[j][1] - points[0][1]};
        const double dn = norm2(d);
        if (dn <= 1e-12 * ref_norm) {
            continue;
        }
        worst = std::max(worst, std::abs(ref[0] * d[1] - ref[1] * d[0]) / (ref_norm * dn));
    }
    return worst;
}

double segre_residual(const NonminimalODE& ode, const std::vector<GraphSample>& graph) {
    double worst = 0.0;
    for (const auto& g : graph) {
        const Complex wm = int_power(g.w, ode.m);
        const Complex a = horner(ode.A, g.w), b = horner(ode.B, g.w), c = horner(ode.C, g.w);
        const Complex d = horner(ode.D, g.w), e = horner(ode.E, g.w), f = horner(ode.F, g.w);
        const Complex rhs = (a * g.z + b) * g.dz / wm + (((c * g.z + d) * g.z + e) * g.z + f) / (wm * wm);
        worst = std::max(worst, std::abs(g.d2z - rhs));
    }
    return worst;
}

std::string to_string(GrowthVerdict v) { return v == GrowthVerdict::moderate ? "moderate" : "irregular"; }

} // namespace segode
