#include "segode/cli.hpp"

#include <array>
#include <atomic>
#include <exception>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <thread>

#include "segode/error.hpp"
#include "segode/fixtures.hpp"
#include "segode/hypersurface.hpp"
#include "segode/linalg3.hpp"
#include "segode/ode.hpp"

namespace segode::cli {

namespace {

[[noreturn]] void schema_error(const std::string& what) { throw Error(ErrorKind::Schema, what); }

// What a subcommand operates on: hypersurface data, an ODE, or a reduced ODE,
// plus the optional per-run settings carried alongside it.
struct Subject {
    std::optional<P0Hypersurface> hypersurface;
    std::optional<NonminimalODE> ode;
    std::optional<ReducedODE> reduced;
    Sign sign = Sign::positive;
    Json options = Json::object();
    std::optional<Fixture> fixture;
    std::string kind;
};

constexpr std::array<std::string_view, 11> kOptionKeys = {
    "init", "path", "ray_angle", "r0", "r_min", "basepoint", "psi1", "psi2", "points", "samples", "z0"};

Subject subject_from_json(const Json& input, int order) {
    if (!input.is_object()) {
        schema_error("input: expected a JSON object");
    }
    if (input.contains("schema") && input["schema"] != kSchemaVersion) {
        schema_error("schema: unsupported version");
    }
    Subject s;
    std::vector<std::string_view> data_keys;
    if (input.contains("phi")) {
        s.kind = "hypersurface";
        data_keys = {"m", "sign", "phi"};
        s.hypersurface = hypersurface_from_json(input, order);
        s.sign = s.hypersurface->sign;
    } else if (input.contains("P") || input.contains("Q")) {
        s.kind = "reduced";
        data_keys = {"l", "P", "Q", "source"};
        s.reduced = reduced_from_json(input, order);
    } else {
        s.kind = "ode";
        data_keys = {"m", "sign", "A", "B", "C", "D", "E", "F"};
        s.ode = ode_from_json(input, order);
        if (input.contains("sign")) {
            if (input["sign"] != "+" && input["sign"] != "-") {
                schema_error("sign: expected \"+\" or \"-\"");
            }
            s.sign = input["sign"] == "+" ? Sign::positive : Sign::negative;
        }
    }
    for (const auto& [key, value] : input.items()) {
        const bool known = key == "schema" || std::find(data_keys.begin(), data_keys.end(), key) != data_keys.end();
        if (std::find(kOptionKeys.begin(), kOptionKeys.end(), key) != kOptionKeys.end()) {
            s.options[key] = value;
        } else if (!known) {
            schema_error("input: unexpected key '" + key + "' for " + s.kind + " data");
        }
    }
    return s;
}

Subject subject_from_example(const std::string& name, int order) {
    Subject s;
    s.kind = "hypersurface";
    s.fixture = make_fixture(name, order);
    s.hypersurface = s.fixture->hypersurface;
    s.sign = s.hypersurface->sign;
    return s;
}

const NonminimalODE& need_ode(Subject& s) {
    if (!s.ode) {
        if (!s.hypersurface) {
            schema_error("this subcommand needs hypersurface or ODE data, not a reduced ODE");
        }
        s.ode = associate_ode(*s.hypersurface);
    }
    return *s.ode;
}

const NonminimalODE& need_linear_ode(Subject& s, const RunConfig& cfg) {
    const auto& ode = need_ode(s);
    if (!is_linear(ode, cfg.tol_ord)) {
        throw Error(ErrorKind::NotLinear, "A, C, D, F must vanish");
    }
    return ode;
}

double option_number(const Subject& s, const char* key, double fallback) {
    return s.options.contains(key) ? number_from_json(s.options[key], key) : fallback;
}

State option_state(const Subject& s, const char* key, State fallback) {
    return s.options.contains(key) ? state_from_json(s.options[key], key) : fallback;
}

// ---- per-subcommand results ------------------------------------------------

Json classify_json(const FuchsianReport& r) {
    Json conditions = Json::array();
    for (const auto& c : r.conditions) {
        conditions.push_back(
            Json{{"name", c.name}, {"order", order_to_json(c.order)}, {"bound", c.bound}, {"passed", c.passed}});
    }
    return Json{{"fuchsian", r.fuchsian()},
                {"verdict", to_string(r.verdict)},
                {"conditions", std::move(conditions)},
                {"low_confidence", r.low_confidence},
                {"reality_red_flag", r.reality_red_flag},
                {"tolerance", r.tolerance}};
}

Json do_associate(Subject& s) {
    if (!s.hypersurface) {
        schema_error("associate needs hypersurface data");
    }
    const auto v = validate_hypersurface(*s.hypersurface);
    Json checks = Json::array();
    for (const auto& c : v.checks) {
        checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    Json out{{"validation", Json{{"passed", v.passed},
                                 {"reality_residual", v.reality_residual},
                                 {"low_confidence", v.low_confidence},
                                 {"checks", std::move(checks)}}}};
    out["ode"] = to_json(need_ode(s));
    return out;
}

Json do_relations(Subject& s) {
    const auto r = check_relations(need_ode(s), s.sign);
    return Json{{"sign", s.sign == Sign::positive ? "+" : "-"},
                {"passed", r.passed},
                {"reality_residual", r.reality_residual},
                {"reality_passed", r.reality_passed},
                {"cubic_residual", r.cubic_residual},
                {"cubic_passed", r.cubic_passed},
                {"quadratic_residual", r.quadratic_residual},
                {"quadratic_passed", r.quadratic_passed},
                {"threshold", r.tolerance * r.scale},
                {"tolerance", r.tolerance}};
}

Json do_classify(Subject& s, const RunConfig& cfg) {
    Json out = classify_json(fuchsian_test(need_ode(s), cfg.tol_ord));
    if (s.hypersurface) {
        const auto side = fuchsian_test(*s.hypersurface, cfg.tol_ord);
        out["hypersurface_side"] = classify_json(side);
        out["sides_agree"] = side.fuchsian() == out["fuchsian"].get<bool>();
    }
    return out;
}

const ReducedODE& need_reduced(Subject& s, const RunConfig& cfg) {
    if (!s.reduced) {
        s.reduced = reduce(need_ode(s), cfg.tol_ord);
    }
    return *s.reduced;
}

Json do_reduce(Subject& s, const RunConfig& cfg) { return to_json(need_reduced(s, cfg)); }

struct FormalStage {
    FormalSolution solution;
    Json json;
};

FormalStage solve_formal_stage(Subject& s, const RunConfig& cfg) {
    const ReducedODE& reduced = need_reduced(s, cfg);
    const Complex z0 = s.options.contains("z0") ? complex_from_json(s.options["z0"], "z0")
                                                : choose_base_root(reduced.Q().at_origin(), cfg.tol_ord);
    const BBSystem sys = linearize(reduced, z0);
    FormalStage stage{formal_solve(sys, cfg.order, cfg.tol_res), {}};
    const auto& sol = stage.solution;
    Json coeffs = Json::array();
    for (const auto& c : sol.coeffs) {
        coeffs.push_back(to_json(c));
    }
    Json out{{"status", to_string(sol.status)},
             {"z0", to_json(sol.z0)},
             {"eigenvalues", Json::array({to_json(sys.eigenvalues[0]), to_json(sys.eigenvalues[1])})},
             {"coeffs", std::move(coeffs)},
             {"resonances", sol.resonances}};
    if (sol.status == FormalStatus::Obstructed) {
        out["obstructed_at"] = sol.obstructed_at;
        out["obstruction_size"] = sol.obstruction_size;
    } else {
        out["residual_order"] = sol.residual_order;
    }
    out["tolerance"] = sol.tolerance;
    stage.json = std::move(out);
    return stage;
}

struct MonodromyStage {
    std::optional<MonodromyReport> report; // empty when every probe broke down
    Json json;
};

MonodromyStage monodromy_stage(Subject& s, const RunConfig& cfg) {
    const auto& ode = need_ode(s);
    double radius = cfg.loop_radius;
    double turns = cfg.turns;
    double angle = 0.0;
    if (s.options.contains("path")) {
        const PathSpec path = path_from_json(s.options["path"]);
        const auto* circle = std::get_if<CirclePath>(&path.kind);
        if (circle == nullptr) {
            schema_error("path: monodromy needs a circle");
        }
        radius = circle->radius;
        turns = circle->turns;
        angle = circle->basepoint_angle;
    }
    Json out{{"radius", radius}, {"basepoint_angle", angle}, {"turns", turns}};
    MonodromyStage stage;
    if (is_linear(ode, cfg.tol_ord) && !s.options.contains("init")) {
        const auto r = monodromy_linear(ode, radius, angle, turns);
        out["method"] = "fundamental-system";
        out["matrix"] = to_json(*r.matrix);
        out["eigenvalues"] = Json::array({to_json((*r.eigenvalues)[0]), to_json((*r.eigenvalues)[1])});
        out["deviation"] = r.probe_deviation;
        out["trivial"] = r.trivial;
        out["tolerance"] = r.tolerance;
        out["radius_warning"] = r.radius_warning;
        stage.report = r;
        stage.json = std::move(out);
        return stage;
    }

    // Nonlinear: a few probes. A nontrivial one certifies branching; trivial
    // ones are evidence only, and probes that break down are reported and skipped.
    std::vector<State> inits;
    if (s.options.contains("init")) {
        inits.push_back(state_from_json(s.options["init"], "init"));
    } else {
        inits = {{0.1, 0.1}, {Complex(0.0, 0.1), -0.05}, {-0.05, Complex(0.0, 0.1)}};
    }
    Json probes = Json::array();
    MonodromyReport combined;
    combined.radius = radius;
    combined.basepoint_angle = angle;
    combined.turns = turns;
    combined.source = fingerprint(ode);
    combined.trivial = true;
    for (const auto& init : inits) {
        Json p{{"init", to_json(init)}};
        try {
            const auto r = monodromy_probe(ode, init, radius, angle, turns);
            p["deviation"] = r.probe_deviation;
            p["trivial"] = r.trivial;
            combined.probe_deviation = std::max(combined.probe_deviation, r.probe_deviation);
            combined.trivial = combined.trivial && r.trivial;
            combined.radius_warning = combined.radius_warning || r.radius_warning;
            ++combined.probes;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::StepUnderflow) {
                throw;
            }
            p["error"] = std::string(e.name());
        }
        probes.push_back(std::move(p));
    }
    out["method"] = "probe";
    out["probes"] = std::move(probes);
    out["deviation"] = combined.probe_deviation;
    out["tolerance"] = combined.tolerance;
    out["radius_warning"] = combined.radius_warning;
    if (combined.probes > 0) {
        out["trivial"] = combined.trivial;
        out["summary"] = combined.trivial ? "no branching detected (" + std::to_string(combined.probes) + " probes)"
                                          : std::string("branching detected");
        stage.report = combined;
    } else {
        out["trivial"] = nullptr;
        out["summary"] = "every probe broke down";
    }
    stage.json = std::move(out);
    return stage;
}

struct GrowthStage {
    GrowthReport decisive; // first irregular ray, else the first ray
    Json json;
};

GrowthStage growth_stage(Subject& s, const RunConfig& /*cfg*/) {
    const auto& ode = need_ode(s);
    const State init = option_state(s, "init", {1.0, 1.0});
    const double r0 = option_number(s, "r0", 0.5);
    const double r_min = option_number(s, "r_min", r0 / 64.0);
    if (!(r0 > 0.0 && r_min > 0.0 && r_min < r0)) {
        throw Error(ErrorKind::PathClearance, "growth needs 0 < r_min < r0");
    }
    std::vector<double> angles;
    if (s.options.contains("ray_angle")) {
        angles.push_back(number_from_json(s.options["ray_angle"], "ray_angle"));
    } else {
        for (int k = 0; k < 8; ++k) {
            angles.push_back(k * std::numbers::pi / 4.0 - std::numbers::pi);
        }
    }
    GrowthStage stage;
    Json rays = Json::array();
    bool irregular = false;
    for (std::size_t i = 0; i < angles.size(); ++i) {
        const auto r = growth_exponent(ode, init, angles[i], r0, r_min);
        rays.push_back(Json{{"ray_angle", r.ray_angle},
                            {"exponent", r.exponent},
                            {"fit_residual", r.fit_residual},
                            {"rms", r.rms},
                            {"verdict", to_string(r.verdict)},
                            {"note", r.note}});
        if (i == 0 || (!irregular && r.verdict == GrowthVerdict::irregular)) {
            stage.decisive = r;
        }
        irregular = irregular || r.verdict == GrowthVerdict::irregular;
    }
    stage.json = Json{{"growth", irregular ? "irregular" : "moderate"},
                      {"init", to_json(init)},
                      {"r0", r0},
                      {"r_min", r_min},
                      {"threshold", kSlopeStability},
                      {"rays", std::move(rays)}};
    return stage;
}

Json do_verdict(Subject& s, const RunConfig& cfg) {
    const auto& ode = need_ode(s);
    const auto classification = fuchsian_test(ode, cfg.tol_ord);
    Json stages{{"classify", do_classify(s, cfg)}};
    auto mono = monodromy_stage(s, cfg);
    stages["monodromy"] = mono.json;

    Json out{{"fuchsian", classification.fuchsian()}, {"monodromy_trivial", mono.json["trivial"]}};
    std::optional<FormalSolution> formal;
    std::optional<GrowthReport> growth;
    if (classification.fuchsian()) {
        auto stage = solve_formal_stage(s, cfg);
        formal = stage.solution;
        stages["solve-formal"] = std::move(stage.json);
        out["formal_status"] = to_string(formal->status);
    } else if (mono.report && mono.report->trivial) {
        auto stage = growth_stage(s, cfg);
        growth = stage.decisive;
        out["growth"] = stage.json["growth"];
        stages["growth"] = std::move(stage.json);
    }
    VerdictReport v;
    if (mono.report) {
        v = extension_verdict(ode, *mono.report, formal, growth);
    } else {
        v.reason = "no monodromy probe survived integration";
    }
    out["verdict"] = to_string(v.verdict);
    out["reason"] = v.reason;
    out["stages"] = std::move(stages);
    return out;
}

std::vector<GraphSample> samples_from_json(const Json& j) {
    if (!j.is_array()) {
        schema_error("samples: expected an array");
    }
    std::vector<GraphSample> out;
    for (const auto& e : j) {
        require_known_keys(e, {"w", "z", "dz", "d2z"}, "samples");
        if (!e.contains("w") || !e.contains("z") || !e.contains("dz") || !e.contains("d2z")) {
            schema_error("samples: each sample needs w, z, dz, d2z");
        }
        out.push_back({complex_from_json(e["w"], "samples.w"), complex_from_json(e["z"], "samples.z"),
                       complex_from_json(e["dz"], "samples.dz"), complex_from_json(e["d2z"], "samples.d2z")});
    }
    return out;
}

Json do_segre_check(Subject& s) {
    const auto& ode = need_ode(s);
    std::vector<GraphSample> graph;
    if (s.options.contains("samples")) {
        graph = samples_from_json(s.options["samples"]);
    } else if (s.fixture) {
        graph = sample_graph(*s.fixture, 50);
    } else {
        schema_error("segre-check needs \"samples\" or --example");
    }
    for (const auto& g : graph) {
        if (std::abs(g.w) == 0.0) {
            throw Error(ErrorKind::EvalAtPole, "sample at w = 0");
        }
    }
    return Json{{"samples", graph.size()}, {"max_residual", segre_residual(ode, graph)}};
}

Json do_map_linear(Subject& s, const RunConfig& cfg) {
    const auto& ode = need_linear_ode(s, cfg);
    const Complex basepoint = s.options.contains("basepoint") ? complex_from_json(s.options["basepoint"], "basepoint")
                              : s.fixture                     ? s.fixture->basepoint
                                                              : Complex(1.0, 0.0);
    const State psi1 = option_state(s, "psi1", s.fixture ? s.fixture->psi1_init : State{1.0, 0.0});
    const State psi2 = option_state(s, "psi2", s.fixture ? s.fixture->psi2_init : State{0.0, 1.0});

    std::vector<std::array<Complex, 2>> points; // (z, w)
    if (s.options.contains("points")) {
        const auto& pts = s.options["points"];
        if (!pts.is_array()) {
            schema_error("points: expected an array");
        }
        for (const auto& p : pts) {
            require_known_keys(p, {"z", "w"}, "points");
            if (!p.contains("z") || !p.contains("w")) {
                schema_error("points: each point needs z and w");
            }
            points.push_back({complex_from_json(p["z"], "points.z"), complex_from_json(p["w"], "points.w")});
        }
    } else if (s.fixture) {
        for (const auto& g : sample_graph(*s.fixture, 8)) {
            points.push_back({g.z, g.w});
        }
    } else {
        schema_error("map-linear needs \"points\" or --example");
    }

    const AssociatedMap map = associated_map_linear(ode, basepoint, psi1, psi2);
    Json images = Json::array();
    std::vector<std::array<Complex, 2>> image_points;
    double worst_ratio_error = 0.0;
    for (const auto& [z, w] : points) {
        const auto fs = map.fundamental(w);
        const auto image = map(z, w);
        image_points.push_back(image);
        Json e{{"w", to_json(w)},
               {"z", to_json(z)},
               {"psi1", to_json(fs[0].z)},
               {"psi2", to_json(fs[1].z)},
               {"image", Json::array({to_json(image[0]), to_json(image[1])})}};
        if (s.fixture && s.fixture->ratio) {
            const Complex exact = s.fixture->ratio(w);
            const double err = std::abs(image[1] - exact) / std::abs(exact);
            e["ratio_rel_error"] = err;
            worst_ratio_error = std::max(worst_ratio_error, err);
        }
        images.push_back(std::move(e));
    }
    Json out{{"basepoint", to_json(basepoint)}, {"psi1_init", to_json(psi1)}, {"psi2_init", to_json(psi2)},
             {"images", std::move(images)}};
    if (image_points.size() >= 3) {
        out["collinearity_residual"] = collinearity_residual(image_points);
    }
    if (s.fixture && s.fixture->ratio) {
        out["max_ratio_rel_error"] = worst_ratio_error;
    }
    return out;
}

Json do_centralizer(const Json& input) {
    const auto sigma = matrix3_from_json(input);
    const auto c = centralizer(sigma);
    const auto h = hol_dim_bound(sigma);
    return Json{{"dim_gl", c.dim},
                {"bound", h.bound},
                {"is_identity", h.is_identity},
                {"near_rank_boundary", c.near_boundary},
                {"rank_tolerance", kRankTolerance}};
}

Json header(const RunConfig& cfg) {
    return Json{{"schema", kSchemaVersion},
                {"command", cfg.subcommand},
                {"parameters", Json{{"order", cfg.order},
                                    {"tol_ord", cfg.tol_ord},
                                    {"tol_res", cfg.tol_res},
                                    {"loop_radius", cfg.loop_radius},
                                    {"turns", cfg.turns}}}};
}

Json dispatch(const RunConfig& cfg, Subject& s) {
    const auto& cmd = cfg.subcommand;
    if (cmd == "associate") return do_associate(s);
    if (cmd == "relations") return do_relations(s);
    if (cmd == "classify") return do_classify(s, cfg);
    if (cmd == "reduce") return do_reduce(s, cfg);
    if (cmd == "solve-formal") return solve_formal_stage(s, cfg).json;
    if (cmd == "monodromy") return monodromy_stage(s, cfg).json;
    if (cmd == "growth") return growth_stage(s, cfg).json;
    if (cmd == "verdict") return do_verdict(s, cfg);
    if (cmd == "segre-check") return do_segre_check(s);
    if (cmd == "map-linear") return do_map_linear(s, cfg);
    schema_error("unknown subcommand '" + cmd + "'");
}

Json with_header(const RunConfig& cfg, Json input_desc, const Json& result) {
    Json out = header(cfg);
    out["input"] = std::move(input_desc);
    for (const auto& [key, value] : result.items()) {
        out[key] = value;
    }
    return out;
}

void validate(const RunConfig& cfg) {
    const auto& all = subcommands();
    if (std::find(all.begin(), all.end(), cfg.subcommand) == all.end()) {
        schema_error("unknown subcommand '" + cfg.subcommand + "'");
    }
    if (cfg.order < 4) {
        schema_error("--order must be at least 4");
    }
    if (!(cfg.tol_ord > 0.0) || !(cfg.tol_res > 0.0)) {
        schema_error("tolerances must be positive");
    }
    if (!(cfg.loop_radius > 0.0) || cfg.turns == 0.0) {
        schema_error("--loop-radius must be positive and --turns nonzero");
    }
    if (cfg.format != "json" && cfg.format != "table") {
        schema_error("--format must be json or table");
    }
    if (cfg.jobs < 1) {
        schema_error("--jobs must be at least 1");
    }
    if (cfg.examples.empty() == cfg.input.empty()) {
        schema_error("give exactly one of --input or --example");
    }
}

std::string read_input(const std::string& input) {
    const auto first = input.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (input[first] == '{' || input[first] == '[')) {
        return input;
    }
    std::ostringstream os;
    if (input == "-") {
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream f(input);
    if (!f) {
        schema_error("cannot read input file '" + input + "'");
    }
    os << f.rdbuf();
    return os.str();
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
    const bool complex_pair = j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number();
    if (j.is_object() && !j.empty()) {
        for (const auto& [key, value] : j.items()) {
            flatten(value, prefix.empty() ? key : prefix + "." + key, rows);
        }
    } else if (j.is_array() && !j.empty() && !complex_pair) {
        for (std::size_t i = 0; i < j.size(); ++i) {
            flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
        }
    } else {
        rows.emplace_back(prefix, dump(j, 0));
    }
}

} // namespace

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> names = {"associate", "relations",  "classify",    "reduce",
                                                   "solve-formal", "monodromy", "growth",     "verdict",
                                                   "segre-check",  "centralizer", "map-linear"};
    return names;
}

Json execute(const RunConfig& cfg, const Json& input) {
    if (cfg.subcommand == "centralizer") {
        return with_header(cfg, Json{{"kind", "matrix"}}, do_centralizer(input));
    }
    Subject s = subject_from_json(input, cfg.order);
    return with_header(cfg, Json{{"kind", s.kind}}, dispatch(cfg, s));
}

Json execute_example(const RunConfig& cfg, const std::string& example) {
    if (cfg.subcommand == "centralizer") {
        schema_error("centralizer takes a matrix via --input, not --example");
    }
    Subject s = subject_from_example(example, cfg.order);
    return with_header(cfg, Json{{"kind", s.kind}, {"example", example}}, dispatch(cfg, s));
}

std::string render_table(const Json& report) {
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(report, "", rows);
    std::size_t width = 0;
    for (const auto& r : rows) {
        width = std::max(width, r.first.size());
    }
    std::ostringstream os;
    for (const auto& [key, value] : rows) {
        os << key << std::string(width - key.size() + 2, ' ') << value << '\n';
    }
    return os.str();
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto fail = [&](const Error& e) {
        err << dump(Json{{"error", std::string(e.name())}, {"detail", e.what()}}, 0) << '\n';
        return e.kind() == ErrorKind::Schema ? kExitSchema : kExitPrecondition;
    };
    try {
        validate(cfg);
        Json report;
        if (!cfg.input.empty()) {
            report = execute(cfg, parse_json(read_input(cfg.input)));
        } else {
            // Independent runs of a sweep; results keep the command-line order.
            const std::size_t n = cfg.examples.size();
            std::vector<Json> results(n);
            std::vector<std::exception_ptr> errors(n);
            std::atomic<std::size_t> next{0};
            const auto worker = [&] {
                for (std::size_t i = next++; i < n; i = next++) {
                    try {
                        results[i] = execute_example(cfg, cfg.examples[i]);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            };
            std::vector<std::thread> pool;
            const auto threads = std::min<std::size_t>(static_cast<std::size_t>(cfg.jobs), n);
            for (std::size_t t = 1; t < threads; ++t) {
                pool.emplace_back(worker);
            }
            worker();
            for (auto& t : pool) {
                t.join();
            }
            for (const auto& e : errors) {
                if (e) {
                    std::rethrow_exception(e);
                }
            }
            if (n == 1) {
                report = std::move(results[0]);
            } else {
                report = header(cfg);
                report["runs"] = Json::array();
                for (auto& r : results) {
                    report["runs"].push_back(std::move(r));
                }
            }
        }
        out << (cfg.format == "json" ? dump(report) + "\n" : render_table(report));
        return kExitOk;
    } catch (const Error& e) {
        return fail(e);
    } catch (const Json::exception& e) {
        return fail(Error(ErrorKind::Schema, e.what()));
    } catch (const std::exception& e) {
        err << dump(Json{{"error", "InternalError"}, {"detail", e.what()}}, 0) << '\n';
        return kExitPrecondition;
    }
}

} // namespace segode::cli
