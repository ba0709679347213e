#include "segode/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "segode/error.hpp"

namespace segode {

namespace {

[[noreturn]] void schema_error(std::string_view where, std::string_view what) {
    throw Error(ErrorKind::Schema, std::string(where) + ": " + std::string(what));
}

std::string format_double(double x) {
    if (!std::isfinite(x)) {
        return "null";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x + 0.0); // + 0.0 folds -0 into 0
    return buf;
}

void write(std::ostringstream& os, const Json& j, int indent, int depth) {
    const auto newline = [&](int d) {
        if (indent > 0) {
            os << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
        }
    };
    const auto is_scalar_array = [](const Json& a) {
        for (const auto& e : a) {
            if (e.is_structured()) {
                return false;
            }
        }
        return true;
    };
    switch (j.type()) {
    case Json::value_t::object: {
        if (j.empty()) {
            os << "{}";
            return;
        }
        os << '{';
        bool first = true;
        for (const auto& [key, value] : j.items()) {
            if (!first) {
                os << ',';
            }
            first = false;
            newline(depth + 1);
            os << Json(key).dump() << (indent > 0 ? ": " : ":");
            write(os, value, indent, depth + 1);
        }
        newline(depth);
        os << '}';
        return;
    }
    case Json::value_t::array: {
        // Short scalar arrays such as [re, im] stay on one line.
        if (j.empty() || is_scalar_array(j)) {
            os << '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                os << (i ? (indent > 0 ? ", " : ",") : "");
                write(os, j[i], indent, depth + 1);
            }
            os << ']';
            return;
        }
        os << '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) {
                os << ',';
            }
            newline(depth + 1);
            write(os, j[i], indent, depth + 1);
        }
        newline(depth);
        os << ']';
        return;
    }
    case Json::value_t::number_float: os << format_double(j.get<double>()); return;
    default: os << j.dump(); return;
    }
}

} // namespace

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::Schema, std::string("malformed JSON: ") + e.what());
    }
}

std::string dump(const Json& j, int indent) {
    std::ostringstream os;
    write(os, j, indent, 0);
    return os.str();
}

Json to_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Json to_json(const TruncatedSeries& s) {
    Json coeffs = Json::array();
    for (const auto& c : s.coeffs()) {
        coeffs.push_back(to_json(c));
    }
    return Json{{"valuation", s.valuation()}, {"truncation", s.truncation_order()}, {"coeffs", std::move(coeffs)}};
}

Json to_json(const P0Hypersurface& h) {
    return Json{{"m", h.m},
                {"sign", h.sign == Sign::positive ? "+" : "-"},
                {"phi", Json{{"22", to_json(h.phi22)},
                             {"23", to_json(h.phi23)},
                             {"32", to_json(h.phi32)},
                             {"33", to_json(h.phi33)}}}};
}

Json to_json(const NonminimalODE& ode) {
    return Json{{"m", ode.m},          {"A", to_json(ode.A)}, {"B", to_json(ode.B)}, {"C", to_json(ode.C)},
                {"D", to_json(ode.D)}, {"E", to_json(ode.E)}, {"F", to_json(ode.F)}};
}

Json to_json(const ReducedODE& r) {
    Json p = Json::array();
    for (const auto& s : r.p) {
        p.push_back(to_json(s));
    }
    Json q = Json::array();
    for (const auto& s : r.q) {
        q.push_back(to_json(s));
    }
    Json out{{"l", r.l}, {"P", std::move(p)}, {"Q", std::move(q)}};
    if (!r.source.empty()) {
        out["source"] = r.source;
    }
    return out;
}

Json to_json(const State& s) { return Json{{"z", to_json(s.z)}, {"dz", to_json(s.dz)}}; }

Json to_json(const Eigen::Matrix2cd& m) {
    Json rows = Json::array();
    for (int i = 0; i < 2; ++i) {
        rows.push_back(Json::array({to_json(m(i, 0)), to_json(m(i, 1))}));
    }
    return rows;
}

Json order_to_json(int order) { return order == kInfiniteOrder ? Json("inf") : Json(order); }

double number_from_json(const Json& j, std::string_view where) {
    if (!j.is_number()) {
        schema_error(where, "expected a number");
    }
    const double x = j.get<double>();
    if (!std::isfinite(x)) {
        schema_error(where, "expected a finite number");
    }
    return x;
}

int int_from_json(const Json& j, std::string_view where) {
    if (!j.is_number_integer()) {
        schema_error(where, "expected an integer");
    }
    const auto v = j.get<long long>();
    if (v < -1'000'000 || v > 1'000'000) {
        schema_error(where, "integer out of range");
    }
    return static_cast<int>(v);
}

void require_known_keys(const Json& j, std::initializer_list<std::string_view> allowed, std::string_view where) {
    if (!j.is_object()) {
        schema_error(where, "expected an object");
    }
    for (const auto& [key, value] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            schema_error(where, "unexpected key '" + key + "'");
        }
    }
}

Complex complex_from_json(const Json& j, std::string_view where) {
    if (j.is_number()) {
        return number_from_json(j, where);
    }
    if (!j.is_array() || j.size() != 2) {
        schema_error(where, "expected [re, im]");
    }
    return {number_from_json(j[0], where), number_from_json(j[1], where)};
}

TruncatedSeries series_from_json(const Json& j, int order, std::string_view where) {
    require_known_keys(j, {"valuation", "coeffs", "truncation"}, where);
    if (!j.contains("coeffs") || !j["coeffs"].is_array()) {
        schema_error(where, "missing coeffs array");
    }
    const int valuation = j.contains("valuation") ? int_from_json(j["valuation"], where) : 0;
    std::vector<Complex> coeffs;
    const std::string at = std::string(where) + ".coeffs";
    for (const auto& c : j["coeffs"]) {
        coeffs.push_back(complex_from_json(c, at));
    }
    const int stored_end = valuation + static_cast<int>(coeffs.size());
    int truncation = std::max(order, stored_end);
    if (j.contains("truncation")) {
        truncation = int_from_json(j["truncation"], where);
        if (truncation < stored_end) {
            schema_error(where, "coefficients stored beyond the declared truncation");
        }
    }
    coeffs.resize(static_cast<std::size_t>(truncation - valuation));
    return TruncatedSeries(valuation, std::move(coeffs));
}

namespace {

int m_from_json(const Json& j) {
    if (!j.contains("m")) {
        schema_error("m", "missing");
    }
    return int_from_json(j["m"], "m");
}

TruncatedSeries optional_series(const Json& parent, const char* key, int order, std::string_view where) {
    if (!parent.contains(key)) {
        return TruncatedSeries::zero(order);
    }
    return series_from_json(parent[key], order, std::string(where) + key);
}

// Coefficients of the ODE must be holomorphic at 0.
TruncatedSeries pole_free_series(const Json& parent, const char* key, int order) {
    const TruncatedSeries s = optional_series(parent, key, order, "");
    if (ord0(s) < 0) {
        schema_error(key, "coefficient has a pole at w = 0");
    }
    return s.dropped_below(0);
}

} // namespace

P0Hypersurface hypersurface_from_json(const Json& j, int order) {
    P0Hypersurface h;
    h.m = m_from_json(j);
    if (j.contains("sign")) {
        const auto& s = j["sign"];
        if (!s.is_string() || (s != "+" && s != "-")) {
            schema_error("sign", "expected \"+\" or \"-\"");
        }
        h.sign = s == "+" ? Sign::positive : Sign::negative;
    }
    if (!j.contains("phi")) {
        schema_error("phi", "missing");
    }
    const Json& phi = j["phi"];
    require_known_keys(phi, {"22", "23", "32", "33"}, "phi");
    h.phi22 = optional_series(phi, "22", order, "phi.");
    h.phi23 = optional_series(phi, "23", order, "phi.");
    h.phi32 = optional_series(phi, "32", order, "phi.");
    h.phi33 = optional_series(phi, "33", order, "phi.");
    return h;
}

NonminimalODE ode_from_json(const Json& j, int order) {
    NonminimalODE ode;
    ode.m = m_from_json(j);
    if (ode.m < 1) {
        schema_error("m", "must be at least 1");
    }
    ode.A = pole_free_series(j, "A", order);
    ode.B = pole_free_series(j, "B", order);
    ode.C = pole_free_series(j, "C", order);
    ode.D = pole_free_series(j, "D", order);
    ode.E = pole_free_series(j, "E", order);
    ode.F = pole_free_series(j, "F", order);
    return ode;
}

ReducedODE reduced_from_json(const Json& j, int order) {
    ReducedODE r;
    if (j.contains("l")) {
        r.l = int_from_json(j["l"], "l");
    }
    const auto read = [&](const char* key, auto& out) {
        if (!j.contains(key) || !j[key].is_array() || j[key].size() != out.size()) {
            schema_error(key, "expected an array of " + std::to_string(out.size()) + " series");
        }
        for (std::size_t i = 0; i < out.size(); ++i) {
            const std::string where = std::string(key) + "[" + std::to_string(i) + "]";
            const TruncatedSeries s = series_from_json(j[key][i], order, where);
            if (ord0(s) < 0) {
                schema_error(where, "coefficient has a pole at W = 0");
            }
            out[i] = s.dropped_below(0);
        }
    };
    read("P", r.p);
    read("Q", r.q);
    if (j.contains("source")) {
        if (!j["source"].is_string()) {
            schema_error("source", "expected a string");
        }
        r.source = j["source"].get<std::string>();
    }
    return r;
}

State state_from_json(const Json& j, std::string_view where) {
    require_known_keys(j, {"z", "dz"}, where);
    if (!j.contains("z") || !j.contains("dz")) {
        schema_error(where, "expected {\"z\": [re, im], \"dz\": [re, im]}");
    }
    return {complex_from_json(j["z"], std::string(where) + ".z"), complex_from_json(j["dz"], std::string(where) + ".dz")};
}

Eigen::Matrix3cd matrix3_from_json(const Json& j) {
    const Json& rows = j.is_object() && j.contains("matrix") ? j["matrix"] : j;
    if (j.is_object()) {
        require_known_keys(j, {"matrix", "schema"}, "input");
    }
    if (!rows.is_array() || rows.size() != 3) {
        schema_error("matrix", "expected 3 rows");
    }
    Eigen::Matrix3cd m;
    for (int i = 0; i < 3; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || row.size() != 3) {
            schema_error("matrix", "expected 3 entries per row");
        }
        for (int k = 0; k < 3; ++k) {
            m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)], "matrix");
        }
    }
    return m;
}

PathSpec path_from_json(const Json& j) {
    require_known_keys(j, {"kind", "radius", "turns", "basepoint_angle", "start", "end", "points", "clearance"},
                       "path");
    if (!j.contains("kind") || !j["kind"].is_string()) {
        schema_error("path.kind", "missing");
    }
    PathSpec path;
    const auto kind = j["kind"].get<std::string>();
    if (kind == "circle") {
        CirclePath c;
        if (j.contains("radius")) {
            c.radius = number_from_json(j["radius"], "path.radius");
        }
        if (j.contains("turns")) {
            c.turns = number_from_json(j["turns"], "path.turns");
        }
        if (j.contains("basepoint_angle")) {
            c.basepoint_angle = number_from_json(j["basepoint_angle"], "path.basepoint_angle");
        }
        if (c.radius <= 0.0) {
            schema_error("path.radius", "must be positive");
        }
        path.kind = c;
    } else if (kind == "segment") {
        if (!j.contains("start") || !j.contains("end")) {
            schema_error("path", "segment needs start and end");
        }
        path.kind = SegmentPath{complex_from_json(j["start"], "path.start"), complex_from_json(j["end"], "path.end")};
    } else if (kind == "polyline") {
        if (!j.contains("points") || !j["points"].is_array() || j["points"].size() < 2) {
            schema_error("path.points", "polyline needs at least two points");
        }
        PolylinePath p;
        for (const auto& pt : j["points"]) {
            p.points.push_back(complex_from_json(pt, "path.points"));
        }
        path.kind = p;
    } else {
        schema_error("path.kind", "expected circle, segment or polyline");
    }
    if (j.contains("clearance")) {
        path.clearance = number_from_json(j["clearance"], "path.clearance");
    }
    return path;
}

} // namespace segode
