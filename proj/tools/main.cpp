// refrabill: command line front end for the refraction billiard engine.
//
// Subcommands: ccs, realize, simulate, scan, saddle, heteroclinic.
// Exit codes: 0 success, 1 config/usage, 2 inadmissible domain,
//             3 solver failure, 4 dynamics termination.

#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include "CLI11.hpp"
#include "config.hpp"
#include "jsonio.hpp"
#include "pool.hpp"
#include "refrabill/analysis.hpp"
#include "refrabill/errors.hpp"

using namespace refrabill;
using namespace refrabill::tools;

namespace {

constexpr int kOk = 0, kUsage = 1, kInadmissible = 2, kSolver = 3, kDynamics = 4;

struct Workspace {
    RunConfig cfg;
    BoundaryCurve curve;
    BilliardParams params;
    std::vector<CentralConfiguration> ccs;
    IntervalSystem system;
};

Workspace make_workspace(const RunConfig& cfg, bool need_system) {
    Workspace ws{cfg, build_boundary(cfg.curve), cfg.params(), {}, {}};
    check_pairing(ws.params, ws.curve);
    ws.ccs = find_central_configurations(ws.curve);
    if (need_system)
        ws.system = build_interval_system(ws.curve, ws.ccs,
                                          cfg.half_width_rel * ws.curve.total_length());
    return ws;
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
    std::filesystem::create_directories(cfg.outdir);
    return (std::filesystem::path(cfg.outdir) / name).string();
}

std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// ---------------------------------------------------------------- reports --

void append_system(JsonWriter& j, const Workspace& ws) {
    j.key("interval_system").begin_object();
    j.kv("half_width", ws.system.half_width);
    j.key("intervals").begin_array();
    for (int i = 0; i < ws.system.size(); ++i) {
        const Interval& iv = ws.system.intervals[i];
        j.begin_object();
        j.kv("symbol", i + 1);
        j.kv("alpha", iv.alpha);
        j.kv("beta", iv.beta);
        j.kv("xi_bar", iv.xi_bar);
        j.kv("kind", iv.kind == CentralConfiguration::Kind::StrictMax ? "max" : "min");
        j.key("non_antipodal").begin_array();
        for (int s : ws.system.na[i]) j.value(s + 1);
        j.end_array();
        j.end_object();
    }
    j.end_array();
    j.end_object();
}

void append_miranda(JsonWriter& j, const MirandaReport& mr) {
    j.key("miranda").begin_object();
    const char* status = mr.status == MirandaStatus::Pass           ? "pass"
                         : mr.status == MirandaStatus::Fail         ? "fail"
                         : mr.status == MirandaStatus::Inconclusive ? "inconclusive"
                                                                    : "arc-failure";
    j.kv("status", status);
    if (!mr.note.empty()) j.kv("note", mr.note);
    j.key("faces").begin_array();
    for (const auto& f : mr.faces) {
        j.begin_object();
        j.kv("coordinate", f.coordinate);
        j.kv("lo_min", f.lo_min);
        j.kv("lo_max", f.lo_max);
        j.kv("hi_min", f.hi_min);
        j.kv("hi_max", f.hi_max);
        j.kv("samples_per_face", f.samples_per_face);
        j.kv("opposite_uniform", f.opposite_uniform);
        j.end_object();
    }
    j.end_array();
    j.end_object();
}

void append_chain(JsonWriter& j, const Concatenation& c) {
    j.key("word").begin_array();
    for (int s : c.word.symbols) j.value(s + 1);
    j.end_array();
    j.kv("mode", c.mode == ChainMode::Periodic ? "periodic" : "fixed_ends");
    j.key("xi").numbers(c.xi);
    j.key("snell_residuals").begin_array();
    for (double r : c.snell_residuals)
        std::isnan(r) ? (void)j.value("pinned") : (void)j.value(r);
    j.end_array();
    j.kv("max_residual", c.max_residual());
    j.kv("total_jacobi_length", c.total_jacobi_length);
    j.kv("period", c.period);
    j.key("outer_durations").begin_array();
    for (const auto& a : c.outer_arcs) j.value(a.duration);
    j.end_array();
    j.key("inner_durations").begin_array();
    for (const auto& a : c.inner_arcs) j.value(a.duration);
    j.end_array();
    j.key("collision_flags").begin_array();
    for (const auto& a : c.inner_arcs) j.value(a.collision);
    j.end_array();
    j.key("homothetic_outer_flags").begin_array();
    for (const auto& a : c.outer_arcs) j.value(a.homothetic);
    j.end_array();
}

std::string chain_trajectory_csv(const RunConfig& cfg, const Concatenation& c,
                                 int per_arc = 128) {
    std::string csv = "# config: " + describe_config(cfg) + "\n";
    csv += "s,x,y,vx,vy,regime,crossing\n";
    double s_base = 0.0;
    auto row = [&](double s, const Vec2& z, const Vec2& v, char regime, int crossing) {
        csv += csv_num(s) + "," + csv_num(z.x) + "," + csv_num(z.y) + "," + csv_num(v.x) +
               "," + csv_num(v.y) + "," + (regime == 'O' ? "outer" : "inner") + "," +
               (crossing >= 0 ? std::to_string(crossing + 1) : "") + "\n";
    };
    for (int jj = 0; jj < c.n_pairs(); ++jj) {
        const OuterArc& oa = c.outer_arcs[jj];
        const int sym = c.word.symbols[jj % c.word.length()];
        for (int k = 0; k < per_arc; ++k) {
            const double s = oa.duration * k / per_arc;
            row(s_base + s, oa.position(s), oa.velocity(s), 'O', k == 0 ? sym : -1);
        }
        s_base += oa.duration;
        const InnerArc& ia = c.inner_arcs[jj];
        for (int k = 0; k < per_arc; ++k) {
            const double s = ia.duration * k / per_arc;
            row(s_base + s, ia.position(s), ia.velocity(s), 'I', k == 0 ? sym : -1);
        }
        s_base += ia.duration;
    }
    return csv;
}

std::string trace_trajectory_csv(const RunConfig& cfg, const TraceResult& tr) {
    std::string csv = "# config: " + describe_config(cfg) + "\n";
    csv += "s,x,y,vx,vy,regime,crossing\n";
    for (const auto& p : tr.samples) {
        csv += csv_num(p.s) + "," + csv_num(p.z.x) + "," + csv_num(p.z.y) + "," +
               csv_num(p.v.x) + "," + csv_num(p.v.y) + "," +
               (p.regime == 'O' ? "outer" : "inner") + "," +
               (p.crossing_interval >= 0 ? std::to_string(p.crossing_interval + 1) : "") +
               "\n";
    }
    return csv;
}

// ------------------------------------------------------------ subcommands --

int cmd_ccs(const RunConfig& cfg) {
    Workspace ws = make_workspace(cfg, false);
    std::printf("%-12s %-6s %-12s %-5s\n", "xi_bar", "kind", "r''", "lsc");
    for (const auto& cc : ws.ccs) {
        const char* kind = cc.kind == CentralConfiguration::Kind::StrictMax   ? "max"
                           : cc.kind == CentralConfiguration::Kind::StrictMin ? "min"
                                                                              : "degen";
        std::printf("%-12.8f %-6s %-12.6g %-5s\n", cc.xi_bar, kind, cc.second_derivative,
                    cc.lsc_ok ? "yes" : "no");
    }

    JsonWriter j;
    j.begin_object();
    j.kv_raw("config", describe_config(cfg));
    j.key("central_configurations").begin_array();
    for (const auto& cc : ws.ccs) {
        j.begin_object();
        j.kv("xi_bar", cc.xi_bar);
        j.kv("kind", cc.kind == CentralConfiguration::Kind::StrictMax   ? "max"
                     : cc.kind == CentralConfiguration::Kind::StrictMin ? "min"
                                                                        : "degenerate");
        j.kv("second_derivative", cc.second_derivative);
        j.kv("lsc_ok", cc.lsc_ok);
        if (cc.plateau) {
            j.kv("plateau_lo", cc.plateau_lo);
            j.kv("plateau_hi", cc.plateau_hi);
        }
        j.end_object();
    }
    j.end_array();

    int code = kOk;
    try {
        ws.system = build_interval_system(ws.curve, ws.ccs,
                                          cfg.half_width_rel * ws.curve.total_length());
        j.kv("admissible", true);
        append_system(j, ws);
        for (int i = 0; i < ws.system.size(); ++i) {
            std::printf("I%d = [%.6f, %.6f]  NA:", i + 1, ws.system.intervals[i].alpha,
                        ws.system.intervals[i].beta);
            for (int s : ws.system.na[i]) std::printf(" %d", s + 1);
            std::printf("\n");
        }
    } catch (const InadmissibleDomain& e) {
        j.kv("admissible", false);
        j.kv("reason", e.what());
        std::printf("inadmissible domain: %s\n", e.what());
        code = kInadmissible;
    }
    j.end_object();
    write_file(out_path(cfg, "ccs_report.json"), j.str() + "\n");
    return code;
}

int cmd_realize(const RunConfig& cfg, const std::string& word_csv, bool fixed_ends,
                double xi_a, double xi_b) {
    Workspace ws = make_workspace(cfg, true);
    Word word{parse_symbol_list(word_csv),
              fixed_ends ? Word::Kind::Finite : Word::Kind::Periodic};
    for (int s : word.symbols)
        if (s >= ws.system.size())
            throw std::runtime_error("word symbol beyond the alphabet size");
    if (!is_admissible(word, ws.system)) {
        std::fprintf(stderr, "word is not admissible (antipodal consecutive letters)\n");
        return kUsage;
    }

    const RealizeResult rr =
        fixed_ends ? realize_fixed_ends(ws.curve, ws.params, ws.system, word, xi_a, xi_b)
                   : realize_periodic(ws.curve, ws.params, ws.system, word);

    JsonWriter j;
    j.begin_object();
    j.kv_raw("config", describe_config(cfg));
    const char* status = rr.status == RealizeStatus::Converged         ? "converged"
                         : rr.status == RealizeStatus::NoConvergence   ? "no-convergence"
                         : rr.status == RealizeStatus::MirandaNotPassed ? "miranda-not-passed"
                                                                        : "arc-failure";
    j.kv("status", status);
    j.kv("iterations", rr.iterations);
    j.kv("grad_inf", rr.grad_inf);
    j.kv("boundary_critical_point", rr.boundary_critical_point);
    if (!rr.note.empty()) j.kv("note", rr.note);
    append_miranda(j, rr.miranda);
    if (rr.ok()) {
        append_chain(j, rr.chain);
        const SymmetryInfo sym = is_symmetric(word);
        j.kv("word_symmetric", sym.symmetric);
        if (sym.symmetric) j.kv("symmetry", sym.description);
        // launch state of the first outer arc in the (xi, alpha) chart,
        // ready to feed back into `simulate`
        const Vec2 v0 = rr.chain.outer_arcs[0].v0;
        const Frame f0 = ws.curve.frame(rr.chain.xi[0]);
        j.key("initial_state").begin_object();
        j.kv("xi", rr.chain.xi[0]);
        j.kv("alpha", std::atan2(v0.dot(f0.tangent), v0.dot(f0.normal)));
        j.end_object();
    }
    j.end_object();

    if (!rr.ok()) {
        write_file(out_path(cfg, "realize_diagnostics.json"), j.str() + "\n");
        std::fprintf(stderr, "realization failed: %s (%s)\n", status, rr.note.c_str());
        return kSolver;
    }
    write_file(out_path(cfg, "realize_report.json"), j.str() + "\n");
    write_file(out_path(cfg, "trajectory.csv"), chain_trajectory_csv(cfg, rr.chain));
    std::printf("realized word");
    for (int s : word.symbols) std::printf(" %d", s + 1);
    std::printf(": max residual %.3e, length %.12g\n", rr.chain.max_residual(),
                rr.chain.total_jacobi_length);
    return kOk;
}

int cmd_simulate(const RunConfig& cfg, double xi, double alpha, int steps, int backward,
                 bool permissive) {
    Workspace ws = make_workspace(cfg, true);
    const double ve2 = 2.0 * v_outer(ws.params, ws.curve.point(xi));
    const SurfaceState st =
        make_outward_state(ws.curve, ws.params, xi, std::sqrt(ve2) * std::sin(alpha));
    const TraceResult tr =
        trace(ws.curve, ws.params, ws.system, st, steps, backward, permissive);

    JsonWriter j;
    j.begin_object();
    j.kv_raw("config", describe_config(cfg));
    j.kv("xi", xi);
    j.kv("alpha", alpha);
    j.kv("permissive", permissive);
    j.kv("steps_forward", tr.steps_forward);
    j.kv("steps_backward", tr.steps_backward);
    j.kv("forward_stop", to_string(tr.forward_stop));
    j.kv("backward_stop", to_string(tr.backward_stop));
    j.key("word_window").begin_object();
    j.kv("center", tr.window.center);
    j.key("symbols").begin_array();
    for (int s : tr.window.symbols) j.value(s + 1);
    j.end_array();
    j.end_object();
    j.end_object();
    write_file(out_path(cfg, "simulate_report.json"), j.str() + "\n");
    write_file(out_path(cfg, "trajectory.csv"), trace_trajectory_csv(cfg, tr));

    std::printf("trace: %d forward, %d backward; window:", tr.steps_forward,
                tr.steps_backward);
    for (int s : tr.window.symbols) std::printf(" %d", s + 1);
    std::printf("\n");
    if (tr.steps_forward < steps || tr.steps_backward < backward) {
        std::fprintf(stderr, "early termination: forward %s at step %d, backward %s at step %d\n",
                     to_string(tr.forward_stop).c_str(), tr.steps_forward,
                     to_string(tr.backward_stop).c_str(), tr.steps_backward);
        return kDynamics;
    }
    return kOk;
}

int cmd_scan(const RunConfig& cfg, const std::string& words_arg) {
    Workspace ws = make_workspace(cfg, true);
    std::vector<double> grid = cfg.h_grid;
    if (grid.empty())
        for (int k = 0; k < 8; ++k) grid.push_back(std::pow(10.0, 0.5 + 0.5 * k));

    std::vector<Word> words;
    if (words_arg.empty()) {
        words = enumerate_periodic_words(ws.system, 2, /*dedupe=*/true);
    } else {
        std::stringstream ss(words_arg);
        std::string item;
        while (std::getline(ss, item, ';'))
            words.push_back({parse_symbol_list(item), Word::Kind::Periodic});
    }

    std::vector<ThresholdRow> rows(grid.size());
    parallel_for(int(grid.size()), cfg.threads, [&](int i) {
        rows[i] = threshold_row(ws.curve, ws.params.with_h(grid[i]), ws.system, words);
    });
    const ThresholdScan scan = assemble_threshold_scan(ws.curve, ws.system, std::move(rows));

    std::string csv = "# config: " + describe_config(cfg) + "\n";
    csv += "h,criterion,pass\n";
    for (const auto& r : scan.rows) {
        csv += csv_num(r.h) + ",containment," + (r.containment ? "1" : "0") + "\n";
        csv += csv_num(r.h) + ",change_sign," + (r.change_sign ? "1" : "0") + "\n";
        csv += csv_num(r.h) + ",words," + (r.words_pass ? "1" : "0") + "\n";
        csv += csv_num(r.h) + ",saddles," + (r.saddles ? "1" : "0") + "\n";
    }
    write_file(out_path(cfg, "scan.csv"), csv);

    JsonWriter j;
    j.begin_object();
    j.kv_raw("config", describe_config(cfg));
    j.key("h_grid").numbers(grid);
    j.key("words").begin_array();
    for (const auto& w : words) {
        j.begin_array();
        for (int s : w.symbols) j.value(s + 1);
        j.end_array();
    }
    j.end_array();
    j.kv("h0_hat", scan.h0_hat);
    j.kv("h1_hat", scan.h1_hat);
    j.kv("euclidean_change_sign", scan.euclidean_change_sign);
    j.kv("monotone", scan.monotone);
    j.kv("monotone_containment", scan.monotone_containment);
    j.kv("monotone_change_sign", scan.monotone_change_sign);
    j.kv("monotone_words", scan.monotone_words);
    j.kv("monotone_saddles", scan.monotone_saddles);
    j.key("rows").begin_array();
    for (const auto& r : scan.rows) {
        j.begin_object();
        j.kv("h", r.h);
        j.kv("containment", r.containment);
        j.kv("change_sign", r.change_sign);
        j.kv("words", r.words_pass);
        j.kv("saddles", r.saddles);
        j.end_object();
    }
    j.end_array();
    j.end_object();
    write_file(out_path(cfg, "scan_report.json"), j.str() + "\n");

    std::printf("scan: h0=%g h1=%g monotone=%s\n", scan.h0_hat, scan.h1_hat,
                scan.monotone ? "yes" : "no (see report)");
    for (const auto& r : scan.rows)
        std::printf("  h=%-10.4g cont=%d cs=%d words=%d saddles=%d\n", r.h,
                    int(r.containment), int(r.change_sign), int(r.words_pass),
                    int(r.saddles));
    return kOk;
}

int cmd_saddle(const RunConfig& cfg, int cc_1based) {
    Workspace ws = make_workspace(cfg, true);
    if (cc_1based < 1 || cc_1based > ws.system.size()) {
        std::fprintf(stderr, "configuration index out of range 1..%d\n", ws.system.size());
        return kUsage;
    }
    const SaddleReport sr = saddle_spectrum(ws.curve, ws.params, ws.system, cc_1based - 1);

    JsonWriter j;
    j.begin_object();
    j.kv_raw("config", describe_config(cfg));
    j.kv("cc_index", cc_1based);
    j.kv("h", sr.h);
    j.key("jacobian").begin_array();
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) j.value(sr.jacobian[r][c]);
    j.end_array();
    j.key("eigenvalues").begin_array();
    j.begin_array().value(sr.eig1.real()).value(sr.eig1.imag()).end_array();
    j.begin_array().value(sr.eig2.real()).value(sr.eig2.imag()).end_array();
    j.end_array();
    const char* cls = sr.classification == SaddleReport::Type::Saddle     ? "saddle"
                      : sr.classification == SaddleReport::Type::Elliptic ? "elliptic"
                                                                          : "parabolic";
    j.kv("classification", cls);
    j.kv("lambda", sr.lambda());
    j.kv("det", sr.det);
    j.kv("det_ok", sr.det_ok);
    j.kv("fixed_point_drift", sr.fixed_point_drift);
    j.end_object();
    write_file(out_path(cfg, "saddle_report.json"), j.str() + "\n");
    std::printf("cc %d at h=%g: %s, lambda=%.6g, det=%.8f\n", cc_1based, sr.h, cls,
                sr.lambda(), sr.det);
    return kOk;
}

int cmd_heteroclinic(const RunConfig& cfg, int i1, int j1, int pad,
                     const std::string& bridge_csv) {
    Workspace ws = make_workspace(cfg, true);
    std::vector<int> bridge;
    if (!bridge_csv.empty()) bridge = parse_symbol_list(bridge_csv);
    const HeteroclinicReport hr =
        heteroclinic_realize(ws.curve, ws.params, ws.system, i1 - 1, j1 - 1, pad, bridge);

    JsonWriter j;
    j.begin_object();
    j.kv_raw("config", describe_config(cfg));
    j.kv("from", i1);
    j.kv("to", j1);
    j.kv("pad", pad);
    j.key("word").begin_array();
    for (int s : hr.word.symbols) j.value(s + 1);
    j.end_array();
    j.kv("ok", hr.ok());
    if (hr.ok()) {
        j.key("lead_dist").numbers(hr.lead_dist);
        j.key("trail_dist").numbers(hr.trail_dist);
        j.kv("lead_rate", hr.lead_rate);
        j.kv("trail_rate", hr.trail_rate);
        append_chain(j, hr.realization.chain);
    } else {
        j.kv("note", hr.realization.note);
    }
    j.end_object();
    write_file(out_path(cfg, "heteroclinic_report.json"), j.str() + "\n");

    if (!hr.ok()) {
        std::fprintf(stderr, "heteroclinic realization failed: %s\n",
                     hr.realization.note.c_str());
        return kSolver;
    }
    std::string csv = "# config: " + describe_config(cfg) + "\n";
    csv += "k,lead_dist,trail_dist\n";
    for (std::size_t k = 0; k < std::max(hr.lead_dist.size(), hr.trail_dist.size()); ++k) {
        csv += std::to_string(k) + ",";
        csv += (k < hr.lead_dist.size() ? csv_num(hr.lead_dist[k]) : "") + std::string(",");
        csv += (k < hr.trail_dist.size() ? csv_num(hr.trail_dist[k]) : "") + std::string("\n");
    }
    write_file(out_path(cfg, "heteroclinic_convergence.csv"), csv);
    std::printf("heteroclinic %d -> %d (pad %d): trail rate %.4g, lead rate %.4g\n", i1, j1,
                pad, hr.trail_rate, hr.lead_rate);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"refraction billiard engine"};
    app.set_help_flag("--help", "print usage");
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "run configuration file")->check(CLI::ExistingFile);

    // flag overrides shared by all subcommands
    double opt_h = -1.0, opt_half_width = -1.0;
    std::string opt_outdir;
    long opt_seed = -1;
    int opt_threads = -1;
    app.add_option("--h", opt_h, "energy jump override");
    app.add_option("--half-width", opt_half_width, "interval half-width (fraction of L)");
    app.add_option("--outdir", opt_outdir, "output directory");
    app.add_option("--seed", opt_seed, "seed for multi-start");
    app.add_option("--threads", opt_threads, "worker count (REFRABILL_THREADS caps)");

    auto* ccs = app.add_subcommand("ccs", "central configurations and alphabet");
    ccs->fallthrough();

    auto* realize = app.add_subcommand("realize", "realize a word as a trajectory");
    realize->fallthrough();
    std::string word_csv;
    bool periodic = false, fixed_ends = false;
    double xi_a = 0.0, xi_b = 0.0;
    realize->add_option("--word", word_csv, "comma separated 1-based symbols")->required();
    realize->add_flag("--periodic", periodic, "periodic realization");
    realize->add_flag("--fixed-ends", fixed_ends, "fixed-ends realization");
    realize->add_option("--xi-a", xi_a, "fixed start parameter");
    realize->add_option("--xi-b", xi_b, "fixed end parameter");

    auto* simulate = app.add_subcommand("simulate", "iterate the first-return map");
    simulate->fallthrough();
    double sim_xi = 0.0, sim_alpha = 0.0;
    int sim_steps = 5, sim_backward = 0;
    bool sim_permissive = false;
    simulate->add_option("--xi", sim_xi, "initial boundary parameter")->required();
    simulate->add_option("--alpha", sim_alpha, "launch angle from the outward normal");
    simulate->add_option("--steps", sim_steps, "forward steps");
    simulate->add_option("--backward", sim_backward, "backward steps");
    simulate->add_flag("--permissive", sim_permissive,
                       "keep tracing through window violations");

    auto* scan = app.add_subcommand("scan", "threshold scan over the h grid");
    scan->fallthrough();
    std::string scan_words;
    scan->add_option("--words", scan_words,
                     "semicolon separated words, e.g. 1,2;1,1 (default: length <= 2)");

    auto* saddle = app.add_subcommand("saddle", "return-map spectrum at a configuration");
    saddle->fallthrough();
    int saddle_cc = 1;
    saddle->add_option("--cc", saddle_cc, "configuration index (1-based)")->required();

    auto* hetero = app.add_subcommand("heteroclinic", "padded-word connection");
    hetero->fallthrough();
    int het_from = 1, het_to = 2, het_pad = 4;
    std::string het_bridge;
    hetero->add_option("--from", het_from, "source configuration (1-based)");
    hetero->add_option("--to", het_to, "target configuration (1-based)");
    hetero->add_option("--pad", het_pad, "padding length");
    hetero->add_option("--bridge", het_bridge, "bridge word, comma separated");

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg;
        if (!config_path.empty()) cfg = load_config(config_path);
        if (opt_h > 0.0) cfg.h = opt_h;
        if (opt_half_width > 0.0) cfg.half_width_rel = opt_half_width;
        if (!opt_outdir.empty()) cfg.outdir = opt_outdir;
        if (opt_seed >= 0) cfg.seed = static_cast<unsigned long>(opt_seed);
        if (opt_threads >= 0) cfg.threads = opt_threads;

        if (ccs->parsed()) return cmd_ccs(cfg);
        if (realize->parsed()) {
            if (periodic == fixed_ends) {
                std::fprintf(stderr, "choose exactly one of --periodic / --fixed-ends\n");
                return kUsage;
            }
            return cmd_realize(cfg, word_csv, fixed_ends, xi_a, xi_b);
        }
        if (simulate->parsed())
            return cmd_simulate(cfg, sim_xi, sim_alpha, sim_steps, sim_backward,
                                sim_permissive);
        if (scan->parsed()) return cmd_scan(cfg, scan_words);
        if (saddle->parsed()) return cmd_saddle(cfg, saddle_cc);
        if (hetero->parsed()) return cmd_heteroclinic(cfg, het_from, het_to, het_pad,
                                                      het_bridge);
    } catch (const InadmissibleDomain& e) {
        std::fprintf(stderr, "inadmissible domain: %s\n", e.what());
        return kInadmissible;
    } catch (const SpecError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kUsage;
    } catch (const ArcError& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return kSolver;
    } catch (const PreconditionError& e) {
        std::fprintf(stderr, "precondition violated: %s\n", e.what());
        return kUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    }
    return kUsage;
}
