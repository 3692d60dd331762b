#include "ternion/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ternion/calculus.hpp"
#include "ternion/csv.hpp"
#include "ternion/dynamics.hpp"
#include "ternion/errors.hpp"
#include "ternion/field.hpp"
#include "ternion/verify.hpp"

namespace ternion::cli {
namespace {

using json = nlohmann::json;
using std::numbers::pi;
using std::numbers::sqrt3;

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

//! JSON number, or null when not finite.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::ofstream open_output(const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot open output file '" + path + "'");
    return os;
}

void write_manifest(const RunConfig& c, const json& results) {
    json m = json::parse(serialize(c));
    m["results"] = results;
    auto os = open_output(c.manifest);
    os << m.dump(2) << '\n';
}

//! Most specific library error name, used as a row status.
std::string error_name(const std::exception& e) {
    if (dynamic_cast<const NoSecondSolution*>(&e)) return "NoSecondSolution";
    if (dynamic_cast<const JacobianSingular*>(&e)) return "JacobianSingular";
    if (dynamic_cast<const PoleOnRange*>(&e)) return "PoleOnRange";
    if (dynamic_cast<const RootFindingFailure*>(&e)) return "RootFindingFailure";
    if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
    if (dynamic_cast<const QuadratureFailure*>(&e)) return "QuadratureFailure";
    if (dynamic_cast<const StepFailure*>(&e)) return "StepFailure";
    if (dynamic_cast<const NumericalBreakdown*>(&e)) return "NumericalBreakdown";
    return "Error";
}

std::vector<double> linspace(const std::array<double, 2>& range, int n) {
    if (n == 1) return {range[0]};
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = range[0] + (range[1] - range[0]) * i / (n - 1);
    return v;
}

//---------------------------------------------------------------------------//
// simulate
//---------------------------------------------------------------------------//

//! Closed-form r1 at a sample, NaN where the closed form is undefined.
using ClosedForm = std::function<double(const MonopoleState&)>;

struct SimulationSetup {
    MonopoleState initial;
    ClosedForm closed;
};

SimulationSetup simulation_setup(const SimulateParams& s) {
    try {
        if (s.mode == "planar") {
            const PlanarSolution sol(s.g, s.M2, s.z0, s.z1);
            if (!sol.in_range(s.z_start)) throw ConfigError("simulate.z_start lies outside the slope range of the orbit");
            return {sol.state_at(s.z_start), [sol](const MonopoleState& x) {
                        const double z = x.r[0] / x.r[1];
                        return sol.in_range(z) ? sol.r1(z) : nan;
                    }};
        }
        if (s.mode == "general") {
            const GeneralSolution sol(s.g, s.M0, s.M1, s.M2, s.y0, s.y1);
            return {sol.state_at(s.y_start), [sol](const MonopoleState& x) {
                        try {
                            return sol.r1(x.r[2] / x.r[1]);
                        } catch (const Error&) {
                            return nan;
                        }
                    }};
        }
        MonopoleState st;
        st.r = {s.state[0], s.state[1], s.state[2]};
        st.v = {s.state[3], s.state[4], s.state[5]};
        return {st, {}};
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(std::string("invalid initial condition: ") + e.what());
    }
}

}  // namespace

int cmd_simulate(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const SimulateParams& s = c.simulate;
    const SimulationSetup setup = simulation_setup(s);
    IntegrateOptions opt;
    if (s.max_step > 0) opt.max_step = s.max_step;
    opt.max_steps = s.max_steps;

    Trajectory tr;
    bool truncated = false;
    std::string note;
    try {
        tr = integrate(setup.initial, s.g, s.t_end, c.tol, opt);
    } catch (const SingularApproach& e) {
        tr = e.partial();
        truncated = true;
        note = e.what();
    }

    const bool compare = s.compare_closed_form && setup.closed;
    auto os = open_output(c.out);
    csv::Writer w(os);
    if (compare) {
        w.header({"t", "l", "r1", "r2", "v0", "v1", "v2", "M0", "M1", "M2", "E", "r1_closed"});
    } else {
        w.header({"t", "l", "r1", "r2", "v0", "v1", "v2", "M0", "M1", "M2", "E"});
    }
    double max_dev = 0;
    long compared = 0;
    for (std::size_t i = 0; i < tr.samples.size(); ++i) {
        const auto& x = tr.samples[i];
        const auto& M = tr.momentum[i];
        std::vector<std::string> cells;
        for (double v : {x.t, x.r[0], x.r[1], x.r[2], x.v[0], x.v[1], x.v[2], M.M0, M.M1, M.M2, tr.energy[i]})
            cells.push_back(csv::format_double(v));
        if (compare) {
            const double rc = setup.closed(x);
            cells.push_back(csv::format_double(rc));
            if (std::isfinite(rc)) {
                max_dev = std::max(max_dev, std::abs(x.r[1] - rc) / std::abs(rc));
                ++compared;
            }
        }
        w.cells(cells);
    }

    const double drift = tr.relative_momentum_drift();
    out << "samples: " << tr.samples.size() << " (accepted steps " << tr.accepted_steps << ", rejected "
        << tr.rejected_steps << ")\n";
    out << "relative angular-momentum drift: " << csv::format_double(drift) << " (bound "
        << csv::format_double(c.drift_tol) << ", " << (drift <= c.drift_tol ? "within" : "EXCEEDED") << ")\n";
    if (compare) {
        out << "closed-form r1: max relative deviation " << csv::format_double(max_dev) << " over " << compared
            << " samples\n";
    }
    out << "trajectory: " << c.out << "\nmanifest: " << c.manifest << '\n';

    json results{{"samples", tr.samples.size()},
                 {"accepted_steps", tr.accepted_steps},
                 {"rejected_steps", tr.rejected_steps},
                 {"relative_momentum_drift", number(drift)},
                 {"drift_within_bound", drift <= c.drift_tol},
                 {"truncated", truncated}};
    if (truncated) results["truncation_note"] = note;
    if (compare) {
        results["closed_form_max_relative_deviation"] = number(max_dev);
        results["closed_form_samples"] = compared;
    }
    write_manifest(c, results);

    if (truncated) {
        if (s.allow_singular_stop) {
            out << "truncated at the singular set: " << note << '\n';
            return exit_ok;
        }
        err << "error: " << note << " (rerun with --allow-singular-stop to accept the truncated trajectory)\n";
        return exit_failure;
    }
    return exit_ok;
}

//---------------------------------------------------------------------------//
// scatter
//---------------------------------------------------------------------------//

namespace {

struct ScatterRow {
    double M1 = 0, M2 = 0;
    double y_tilde1 = nan, E = nan, J = nan, dsigma = nan;
    double constraint = nan;
    std::string status;
};

ScatterRow scatter_cell(const ScatterParams& p, double M1, double M2) {
    ScatterRow row;
    row.M1 = M1;
    row.M2 = M2;
    try {
        const auto setup = ScatteringSetup::from_incoming(p.g, p.v_in, M1, M2);
        row.constraint = setup.constraint_residual();
        const FinalState f = final_state(setup);
        row.y_tilde1 = f.y_tilde1;
        row.E = f.E_out;
        const ScatteringResult r = scattering_map(setup);
        row.J = r.J;
        row.dsigma = r.dsigma;
        row.status = "ok";
    } catch (const std::exception& e) {
        row.status = error_name(e);
    }
    return row;
}

}  // namespace

int cmd_scatter(const RunConfig& c, std::ostream& out, std::ostream&) {
    const ScatterParams& p = c.scatter;
    std::vector<std::pair<double, double>> grid;
    for (double M1 : p.M1)
        for (double M2 : p.M2) grid.emplace_back(M1, M2);
    std::vector<ScatterRow> rows(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { rows[i] = scatter_cell(p, grid[i].first, grid[i].second); });

    auto os = open_output(c.out);
    csv::Writer w(os);
    w.header({"M1", "M2", "ytilde1", "E", "J", "dsigma", "status"});
    long ok = 0;
    double worst_constraint = 0;
    json statuses = json::object();
    for (const auto& r : rows) {
        w.cells({csv::format_double(r.M1), csv::format_double(r.M2), csv::format_double(r.y_tilde1),
                 csv::format_double(r.E), csv::format_double(r.J), csv::format_double(r.dsigma), r.status});
        if (r.status == "ok") ++ok;
        if (std::isfinite(r.constraint)) worst_constraint = std::max(worst_constraint, std::abs(r.constraint));
        statuses[r.status] = statuses.value(r.status, 0) + 1;
    }
    out << "rows: " << rows.size() << " (ok " << ok << ")\n";
    for (const auto& [name, count] : statuses.items()) out << "  " << name << ": " << count << '\n';
    out << "max |M . v_in|: " << csv::format_double(worst_constraint) << '\n';
    out << "table: " << c.out << "\nmanifest: " << c.manifest << '\n';

    write_manifest(c, {{"rows", rows.size()},
                       {"ok", ok},
                       {"statuses", statuses},
                       {"max_constraint_residual", number(worst_constraint)}});
    return ok == 0 ? exit_all_rows_failed : exit_ok;
}

//---------------------------------------------------------------------------//
// integrate-form
//---------------------------------------------------------------------------//

int cmd_integrate_form(const RunConfig& c, std::ostream& out, std::ostream&) {
    const FormParams& f = c.form;
    Ternary value;
    std::array<double, 3> expected{nan, nan, nan};
    try {
        if (f.preset == "trisectrice-loop") {
            const auto inv = TernaryField::of_z([](const Ternary& z) { return inverse(z); });
            value = line_integral(inv, presets::trisectrice_loop(f.rho, f.phi), c.tol);
            expected = {0, 2 * pi / sqrt3, -2 * pi / sqrt3};
        } else if (f.preset == "cubic-band") {
            value = surface_integral_2form(presets::inverse_tilde_product(), presets::cubic_band(f.rho, f.a1, f.a2),
                                           c.tol);
            expected[0] = 2 * pi / sqrt3 * std::log(f.a2 / f.a1);
        } else if (f.preset == "polar-band") {
            value = surface_integral_2form(presets::inverse_tilde_product(),
                                           presets::polar_band(f.rho, f.phi_lo, f.phi_hi), c.tol);
            expected[0] = 4 * pi / sqrt3 * (f.phi_hi - f.phi_lo);
        } else if (f.preset == "sphere") {
            const Point centre = from_frame(FrameVector::from_array(f.center_frame));
            value = surface_integral_2form(presets::inverse_tilde_product(), presets::sphere(centre, f.radius), c.tol);
            expected[0] = 0;
        } else {
            // divergence theorem for z^2, whose components have divergence 6 x0
            const Box box{{f.box[0], f.box[1]}, {f.box[2], f.box[3]}, {f.box[4], f.box[5]}};
            const auto square = TernaryField::of_z([](const Ternary& z) { return z * z; });
            for (const auto& face : presets::box_faces(box)) value = value + surface_integral_2form(square, face, c.tol);
            TernaryField div;
            div.value = [](const Point& p) { return Ternary(6 * p[0], 0, 0); };
            expected[0] = volume_integral_3form(div, box, c.tol)[0];
        }
    } catch (const DomainError& e) {
        throw ConfigError(std::string("invalid form parameters: ") + e.what());
    }

    double abs_error = 0;
    json exp_json = json::array();
    for (int i = 0; i < 3; ++i) {
        exp_json.push_back(number(expected[i]));
        if (std::isfinite(expected[i])) abs_error = std::max(abs_error, std::abs(value[i] - expected[i]));
    }
    const json result{{"preset", f.preset},
                      {"value", {value[0], value[1], value[2]}},
                      {"expected", exp_json},
                      {"max_abs_error", abs_error}};
    out << result.dump() << '\n';
    if (!c.out.empty()) {
        auto os = open_output(c.out);
        os << result.dump(2) << '\n';
        write_manifest(c, result);
    }
    return exit_ok;
}

//---------------------------------------------------------------------------//
// field-scan
//---------------------------------------------------------------------------//

int cmd_field_scan(const RunConfig& c, std::ostream& out, std::ostream&) {
    const FieldScanParams& p = c.field_scan;
    std::vector<FrameVector> points;
    long skipped = 0;
    for (double l : linspace(p.l, p.n[0]))
        for (double r1 : linspace(p.r1, p.n[1]))
            for (double r2 : linspace(p.r2, p.n[2])) {
                const FrameVector v{l, r1, r2};
                if (is_admissible(v)) {
                    points.push_back(v);
                } else {
                    ++skipped;
                }
            }
    std::vector<FieldSample> samples(points.size());
    parallel_for(points.size(), [&](std::size_t i) { samples[i] = sample_field(points[i]); });
    auto os = open_output(c.out);
    write_field_csv(os, samples);
    out << "rows: " << samples.size() << " (skipped on the singular set: " << skipped << ")\n";
    out << "table: " << c.out << "\nmanifest: " << c.manifest << '\n';
    write_manifest(c, {{"rows", samples.size()}, {"skipped", skipped}});
    return exit_ok;
}

//---------------------------------------------------------------------------//
// verify
//---------------------------------------------------------------------------//

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
    struct FaultGuard {
        explicit FaultGuard(bool on) { fault::set_multisine_offset(on ? 1 : 0); }
        ~FaultGuard() { fault::set_multisine_offset(0); }
    } guard(c.verify.inject_fault == "multisine-offset");

    const auto results = verify::run_suite(c.verify.suite, c.seed);
    std::size_t width = 8;
    for (const auto& r : results) width = std::max(width, r.name.size());
    out << std::left << std::setw(10) << "suite" << std::setw(static_cast<int>(width) + 2) << "property"
        << std::setw(7) << "result" << "detail\n";
    long failed = 0;
    const verify::PropertyResult* first = nullptr;
    json table = json::array();
    for (const auto& r : results) {
        out << std::left << std::setw(10) << r.suite << std::setw(static_cast<int>(width) + 2) << r.name
            << std::setw(7) << (r.passed ? "PASS" : "FAIL") << r.detail << '\n';
        table.push_back({{"suite", r.suite}, {"property", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        if (!r.passed) {
            ++failed;
            if (!first) first = &r;
        }
    }
    out << results.size() - failed << "/" << results.size() << " properties passed (seed " << c.seed << ")\n";
    json summary{{"passed", results.size() - failed}, {"failed", failed}, {"properties", table}};
    if (first) {
        err << "first counterexample: " << first->counterexample << '\n';
        summary["first_counterexample"] = json::parse(first->counterexample);
    }
    if (!c.manifest.empty()) write_manifest(c, summary);
    return failed == 0 ? exit_ok : exit_failure;
}

//---------------------------------------------------------------------------//
// infrastructure
//---------------------------------------------------------------------------//

unsigned thread_count(std::size_t jobs) {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("TERNION_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap >= 1) n = std::min<unsigned long>(n, static_cast<unsigned long>(cap));
    }
    return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, jobs)));
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& job) {
    const unsigned threads = thread_count(n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = next++; i < n; i = next++) job(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

RunConfig resolve_paths(RunConfig c) {
    if (c.out.empty()) {
        if (c.command == "simulate") c.out = "trajectory.csv";
        if (c.command == "scatter") c.out = "scatter.csv";
        if (c.command == "field-scan") c.out = "field.csv";
    }
    if (c.manifest.empty() && !c.out.empty()) c.manifest = c.out + ".manifest.json";
    return c;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ternary complex analysis and monopole dynamics", "ternion"};
    app.fallthrough();
    app.require_subcommand(1);

    std::string config_path, out_path, manifest_path;
    std::uint64_t seed = 0;
    double tol = 0;
    app.add_option("--config", config_path, "JSON configuration or manifest to run");
    auto* seed_opt = app.add_option("--seed", seed, "random seed");
    auto* tol_opt = app.add_option("--tol", tol, "ODE / quadrature tolerance");
    app.add_option("--out", out_path, "output file");
    app.add_option("--manifest", manifest_path, "manifest path (default <out>.manifest.json)");

    auto* verify_cmd = app.add_subcommand("verify", "run randomized property suites");
    std::string suite;
    std::string fault_name;
    verify_cmd->add_option("suite", suite, "algebra | calculus | field | dynamics | all");
    verify_cmd->add_option("--inject-fault", fault_name, "mutation check: multisine-offset");

    auto* simulate_cmd = app.add_subcommand("simulate", "integrate a monopole trajectory");
    bool allow_singular_stop = false, compare_closed_form = false;
    simulate_cmd->add_flag("--allow-singular-stop", allow_singular_stop, "exit 0 when the run reaches the singular set");
    simulate_cmd->add_flag("--compare-closed-form", compare_closed_form, "append the closed-form r1 column");

    app.add_subcommand("scatter", "scattering table over an (M1, M2) grid");
    auto* form_cmd = app.add_subcommand("integrate-form", "integrate a form over a curve or surface preset");
    std::string preset;
    form_cmd->add_option("--preset", preset,
                         "trisectrice-loop | cubic-band | polar-band | sphere | box-divergence");
    app.add_subcommand("field-scan", "sample the field on a frame grid");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return exit_ok;
        }
        err << "error: " << e.what() << "\n\n" << app.help();
        return exit_usage;
    }

    try {
        RunConfig c = config_path.empty() ? RunConfig{} : load_config(config_path);
        c.command = app.get_subcommands().front()->get_name();
        if (seed_opt->count()) c.seed = seed;
        if (tol_opt->count()) c.tol = tol;
        if (!out_path.empty()) c.out = out_path;
        if (!manifest_path.empty()) c.manifest = manifest_path;
        // a new output path from the command line also moves the manifest next to it
        if (!out_path.empty() && manifest_path.empty()) c.manifest.clear();
        if (!suite.empty()) c.verify.suite = suite;
        if (!fault_name.empty()) c.verify.inject_fault = fault_name;
        if (allow_singular_stop) c.simulate.allow_singular_stop = true;
        if (compare_closed_form) c.simulate.compare_closed_form = true;
        if (!preset.empty()) c.form.preset = preset;
        validate(c);
        c = resolve_paths(c);

        if (c.command == "verify") return cmd_verify(c, out, err);
        if (c.command == "simulate") return cmd_simulate(c, out, err);
        if (c.command == "scatter") return cmd_scatter(c, out, err);
        if (c.command == "integrate-form") return cmd_integrate_form(c, out, err);
        return cmd_field_scan(c, out, err);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
}

}  // namespace ternion::cli
