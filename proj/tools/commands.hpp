#pragma once

// The lossycomp command line. Everything lives here so tests can drive `run` in-process;
// lossycomp.cpp only forwards argv.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lossycomp/lossycomp.hpp"

namespace lossycomp::cli {

using nlohmann::json;

inline constexpr const char* kThreadsEnv = "LOSSYCOMP_THREADS";

struct Options {
    std::string spec_path;
    std::string builtin;
    std::optional<double> distortion;
    std::optional<double> lambda;
    std::string lambda_grid;
    int points = 0;
    double tol = SolverConfig{}.tol_objective;
    long max_iters = SolverConfig{}.max_iters;
    int restarts = SolverConfig{}.restarts;
    std::uint64_t seed = kDefaultSeed;
    int threads = 1;
    std::string output;
    std::string format;
    std::optional<double> epsilon;
    bool maximal = false;
    bool check = false;
    bool lift = false;
    std::string point;
    std::uint64_t n = 1000000;
    std::string trace;
    int oracle_restarts = OracleConfig{}.random_restarts;
};

inline std::string fmt(double v, int digits = 17) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

inline std::string rate_str(double r) { return fmt(r, 9); }

/// "MIN:MAX:N" or "MIN:MAX:N:log"
inline std::vector<double> parse_lambda_grid(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3 && parts.size() != 4)
        throw Error(Errc::InvalidConfig, "--lambda-grid expects MIN:MAX:N or MIN:MAX:N:log, got '" + text + "'");
    const bool log = parts.size() == 4;
    if (log && parts[3] != "log") throw Error(Errc::InvalidConfig, "--lambda-grid fourth field must be 'log'");
    double lo, hi;
    long n;
    try {
        std::size_t a = 0, b = 0, c = 0;
        lo = std::stod(parts[0], &a);
        hi = std::stod(parts[1], &b);
        n = std::stol(parts[2], &c);
        if (a != parts[0].size() || b != parts[1].size() || c != parts[2].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw Error(Errc::InvalidConfig, "--lambda-grid fields must be numbers: '" + text + "'");
    }
    if (n < 1) throw Error(Errc::InvalidConfig, "--lambda-grid needs N >= 1");
    if (!(lo >= 0.0) || !(hi >= lo) || !std::isfinite(hi))
        throw Error(Errc::InvalidConfig, "--lambda-grid needs 0 <= MIN <= MAX < inf");
    if (log && !(lo > 0.0)) throw Error(Errc::InvalidConfig, "a log grid needs MIN > 0");
    std::vector<double> out;
    for (long i = 0; i < n; ++i) {
        const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
        out.push_back(log ? lo * std::pow(hi / lo, t) : lo + t * (hi - lo));
    }
    return out;
}

inline int default_threads() {
    if (const char* env = std::getenv(kThreadsEnv)) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<int>(v);
    }
    return 1;
}

class Command {
  public:
    Command(std::string name, const Options& o) : name_(std::move(name)), o_(o), start_(std::chrono::steady_clock::now()) {}

    ProblemSpec load() {
        if (o_.spec_path.empty() == o_.builtin.empty())
            throw Error(Errc::InvalidConfig, "give exactly one of --spec PATH or --builtin NAME");
        return o_.builtin.empty() ? load_spec(o_.spec_path) : builtin_spec(o_.builtin);
    }

    SolverConfig solver_config() const {
        SolverConfig c;
        c.tol_objective = o_.tol;
        c.max_iters = o_.max_iters;
        c.restarts = o_.restarts;
        c.rng_seed = o_.seed;
        c.threads = o_.threads;
        c.validate();
        return c;
    }

    OracleConfig oracle_config() const {
        OracleConfig c;
        c.random_restarts = o_.oracle_restarts;
        c.rng_seed = o_.seed;
        c.threads = o_.threads;
        c.validate();
        return c;
    }

    json manifest() const {
        json source;
        if (name_ == "example-card-game")
            source["builtin"] = "card-game";
        else if (!o_.builtin.empty())
            source["builtin"] = o_.builtin;
        else
            source["spec"] = o_.spec_path;
        json config{{"tol", o_.tol},         {"max_iters", o_.max_iters}, {"restarts", o_.restarts},
                    {"threads", o_.threads}, {"format", format()}};
        if (o_.distortion) config["distortion"] = *o_.distortion;
        if (o_.lambda) config["lambda"] = *o_.lambda;
        if (!o_.lambda_grid.empty()) config["lambda_grid"] = o_.lambda_grid;
        if (o_.points) config["points"] = o_.points;
        if (o_.epsilon) config["epsilon"] = *o_.epsilon;
        if (o_.maximal) config["maximal"] = true;
        if (o_.check) config["check"] = true;
        if (o_.lift) config["lift"] = true;
        if (!o_.point.empty()) config["point"] = o_.point;
        if (name_ == "simulate") config["n"] = o_.n;
        if (name_ == "oracle") config["oracle_restarts"] = o_.oracle_restarts;
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return json{{"command", name_}, {"source", source},   {"config", config},
                    {"version", kVersion}, {"rng_seed", o_.seed}, {"elapsed_seconds", secs}};
    }

    std::string format() const { return o_.format.empty() ? default_format_ : o_.format; }
    void default_format(std::string f) { default_format_ = std::move(f); }
    bool csv() const { return format() == "csv"; }

    std::string structured(json body) const {
        json doc{{"manifest", manifest()}};
        for (auto& [k, v] : body.items()) doc[k] = std::move(v);
        return doc.dump(2) + "\n";
    }

    std::string csv_header() const { return "# manifest: " + manifest().dump() + "\n"; }

    void emit(const std::string& text, std::ostream& out) const {
        if (o_.output.empty()) {
            out << text;
            return;
        }
        std::ofstream f(o_.output);
        if (!f) throw Error(Errc::InvalidConfig, "cannot write '" + o_.output + "'");
        f << text;
    }

    const Options& opts() const { return o_; }

  private:
    std::string name_;
    const Options& o_;
    std::chrono::steady_clock::time_point start_;
    std::string default_format_ = "structured";
};

inline std::string curve_row(double lambda, double distortion, double rate, std::size_t support, bool converged,
                             const std::string& status) {
    std::ostringstream os;
    os << fmt(lambda) << ',' << fmt(distortion) << ',' << rate_str(rate) << ',' << support << ','
       << (converged ? "true" : "false") << ',' << status << '\n';
    return os.str();
}

inline constexpr const char* kCurveColumns = "lambda,distortion,rate_bits,support_size,converged,status\n";

inline RDPoint lifted(const ProblemSpec& spec, const RDPoint& pt) {
    RDPoint out = pt;
    out.channel = lift_to_multihyperedge(spec, pt.channel, pt.decoder);
    out.decoder = DecoderMap::from_recoveries(out.channel);
    out.rate = conditional_mutual_information(spec, out.channel);
    out.distortion = expected_distortion(spec, out.channel, out.decoder);
    return out;
}

inline RDPoint load_point(const ProblemSpec& spec, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::ParseError, "cannot open point file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(Errc::ParseError, e.what());
    }
    // Accept a bare point or a solve document.
    return point_from_json(spec, j.contains("point") ? j["point"] : j);
}

inline int cmd_validate(Command& c, std::ostream& out) {
    const ProblemSpec spec = c.load();
    c.emit(c.structured({{"valid", true},
                         {"sizes", {{"x", spec.nx()}, {"y", spec.ny()}, {"z", spec.nz()}, {"zhat", spec.nzhat()}}},
                         {"zero_rate_distortion", zero_rate_distortion(spec)},
                         {"minimum_distortion", minimum_distortion(spec)},
                         {"zero_distortion_feasible", zero_distortion_feasible(spec)},
                         {"spec", to_json(spec)}}),
           out);
    return 0;
}

inline int cmd_solve(Command& c, std::ostream& out) {
    const auto& o = c.opts();
    if (o.distortion.has_value() == o.lambda.has_value())
        throw Error(Errc::InvalidConfig, "solve needs exactly one of --distortion or --lambda");
    const ProblemSpec spec = c.load();
    SolverConfig cfg = c.solver_config();
    RDPoint pt;
    if (o.distortion) {
        pt = solve_at_distortion(spec, *o.distortion, cfg);
    } else {
        cfg.lambda = *o.lambda;
        cfg.validate();
        pt = solve_lagrangian(spec, cfg, RecoveryAlphabet{});
    }
    if (o.lift) pt = lifted(spec, pt);
    if (c.csv()) {
        c.emit(c.csv_header() + kCurveColumns +
                   curve_row(pt.lambda, pt.distortion, pt.rate, pt.support_size(), pt.converged, "ok"),
               out);
    } else {
        c.emit(c.structured({{"point", to_json(spec, pt)}}), out);
    }
    return 0;
}

inline int cmd_curve(Command& c, std::ostream& out) {
    const auto& o = c.opts();
    c.default_format("csv");
    if (!o.lambda_grid.empty() && o.points > 0)
        throw Error(Errc::InvalidConfig, "give at most one of --lambda-grid or --points");
    if (o.points < 0) throw Error(Errc::InvalidConfig, "--points must be positive");
    const ProblemSpec spec = c.load();
    const SolverConfig cfg = c.solver_config();

    struct Row {
        double lambda = 0.0, distortion = 0.0, rate = 0.0;
        std::size_t support = 0;
        bool converged = false;
        std::string status = "ok";
    };
    std::vector<Row> rows, failed;
    if (!o.lambda_grid.empty()) {
        const RDCurve curve = sweep_curve(spec, parse_lambda_grid(o.lambda_grid), cfg);
        for (const auto& p : curve.points) rows.push_back({p.lambda, p.distortion, p.rate, p.support_size(), p.converged});
        for (const auto& f : curve.failures)
            failed.push_back({f.lambda, std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN(),
                              0, false, std::string(to_string(f.code))});
    } else {
        // Distortion grid from the achievable floor to the zero-rate distortion.
        const int k = o.points > 0 ? o.points : 20;
        const double lo = zero_distortion_feasible(spec) ? 0.0 : minimum_distortion(spec);
        const double hi = zero_rate_distortion(spec);
        for (int i = 0; i < k; ++i) {
            const double D = k == 1 ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(k - 1);
            try {
                const RDPoint p = solve_at_distortion(spec, D, cfg);
                rows.push_back({p.lambda, p.distortion, p.rate, p.support_size(), p.converged});
            } catch (const Error& e) {
                failed.push_back({std::numeric_limits<double>::quiet_NaN(), D, std::numeric_limits<double>::quiet_NaN(),
                                  0, false, std::string(to_string(e.code()))});
            }
        }
        std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
            return a.distortion < b.distortion || (a.distortion == b.distortion && a.rate > b.rate);
        });
    }

    if (c.csv()) {
        std::string text = c.csv_header() + kCurveColumns;
        for (const auto& r : rows) text += curve_row(r.lambda, r.distortion, r.rate, r.support, r.converged, r.status);
        for (const auto& r : failed) text += curve_row(r.lambda, r.distortion, r.rate, r.support, r.converged, r.status);
        c.emit(text, out);
    } else {
        json pts = json::array(), fails = json::array();
        for (const auto& r : rows)
            pts.push_back({{"lambda", lambda_to_json(r.lambda)},
                           {"distortion", r.distortion},
                           {"rate_bits", round_significant(r.rate)},
                           {"support_size", r.support},
                           {"converged", r.converged}});
        for (const auto& r : failed) {
            json f{{"status", r.status}};
            if (!std::isnan(r.lambda)) f["lambda"] = r.lambda;
            if (!std::isnan(r.distortion)) f["distortion"] = r.distortion;
            fails.push_back(f);
        }
        c.emit(c.structured({{"points", pts}, {"failures", fails}}), out);
    }
    if (rows.empty() && !failed.empty()) return 3;
    return 0;
}

inline constexpr const char* kMaximalDisclaimer =
    "maximal members only: whether the zero-distortion program can always be restricted to them is "
    "unproven, so treat results over this family as heuristic";

inline int cmd_gamma(Command& c, std::ostream& out) {
    const auto& o = c.opts();
    const ProblemSpec spec = c.load();
    const ProblemSpec target = o.epsilon ? with_distortion(spec, epsilon_distortion(spec, *o.epsilon)) : spec;
    HyperedgeFamily fam = enumerate_gamma_d(target);
    if (o.maximal) fam = maximal_members(fam);
    if (c.csv()) {
        std::string text = c.csv_header();
        if (o.maximal) text += std::string("# ") + kMaximalDisclaimer + "\n";
        text += "member,zero_distortion_recovery\n";
        for (const auto& w : fam)
            text += "\"" + format_hyperedge(spec.x_alphabet(), w) + "\",\"" +
                    format_recovery(spec.zhat_alphabet(), zero_distortion_recovery(target, w)) + "\"\n";
        c.emit(text, out);
        return 0;
    }
    json members = json::array();
    for (const auto& w : fam)
        members.push_back({{"subset", format_hyperedge(spec.x_alphabet(), w)},
                           {"recovery", format_recovery(spec.zhat_alphabet(), zero_distortion_recovery(target, w))}});
    json body{{"family", o.epsilon ? "gamma_d_eps" : "gamma_d"}, {"count", fam.size()}, {"members", members}};
    if (o.epsilon) body["epsilon"] = *o.epsilon;
    if (o.maximal) body["note"] = kMaximalDisclaimer;
    c.emit(c.structured(body), out);
    return 0;
}

inline RDPoint point_for(Command& c, const ProblemSpec& spec) {
    const auto& o = c.opts();
    if (!o.point.empty() == o.distortion.has_value())
        throw Error(Errc::InvalidConfig, "give exactly one of --point FILE or --distortion D");
    if (!o.point.empty()) return load_point(spec, o.point);
    return solve_at_distortion(spec, *o.distortion, c.solver_config());
}

inline int cmd_oracle(Command& c, std::ostream& out) {
    const ProblemSpec spec = c.load();
    const RDPoint pt = point_for(c, spec);
    const VerificationReport rep = verify_point(spec, pt, c.oracle_config());
    c.emit(c.structured({{"report",
                          {{"pass", rep.pass},
                           {"target_distortion", rep.target_distortion},
                           {"achieved_distortion", rep.achieved_distortion},
                           {"claimed_rate_bits", round_significant(rep.claimed_rate)},
                           {"solver_rate_bits", round_significant(rep.solver_rate)},
                           {"oracle_rate_bits", round_significant(rep.oracle_rate)},
                           {"gap_bits", rep.gap},
                           {"rate_residual", rep.rate_residual},
                           {"distortion_residual", rep.distortion_residual},
                           {"column_residual", rep.column_residual},
                           {"tolerance", rep.tolerance}}}}),
           out);
    return rep.pass ? 0 : exit_code_for(Errc::CheckFailed);
}

inline int cmd_simulate(Command& c, std::ostream& out) {
    const auto& o = c.opts();
    const ProblemSpec spec = c.load();
    RDPoint pt = point_for(c, spec);
    // Inline solves are lifted automatically; a point file must already be annotated unless --lift.
    if (o.point.empty() || o.lift) pt = lifted(spec, pt);
    std::optional<std::ofstream> trace;
    if (!o.trace.empty()) {
        trace.emplace(o.trace);
        if (!*trace) throw Error(Errc::InvalidConfig, "cannot write trace '" + o.trace + "'");
        *trace << "x,y,atom,zhat,d\n";
    }
    const SimulationReport rep =
        simulate_scheme(spec, pt.channel, o.n, o.seed, static_cast<unsigned>(o.threads), trace ? &*trace : nullptr);
    json atoms = json::array();
    for (std::size_t u = 0; u < pt.channel.num_atoms(); ++u)
        atoms.push_back({{"subset", format_hyperedge(spec.x_alphabet(), *pt.channel.label(u).subset)},
                         {"recovery", format_recovery(spec.zhat_alphabet(), *pt.channel.label(u).recovery)},
                         {"count", rep.per_atom_count[u]},
                         {"frequency", rep.per_atom_frequency[u]},
                         {"probability", rep.atom_marginal[u]}});
    bool within = true;
    std::optional<double> z;
    if (rep.std_error && *rep.std_error > 0.0) {
        z = (rep.empirical_distortion - rep.target_distortion) / *rep.std_error;
        within = std::abs(*z) <= 3.0;
    } else if (rep.std_error) {
        within = rep.empirical_distortion == rep.target_distortion;
    }
    json report{{"n", rep.n},
                {"empirical_distortion", rep.empirical_distortion},
                {"target_distortion", rep.target_distortion},
                {"std_error", rep.std_error ? json(*rep.std_error) : json(nullptr)},
                {"z_score", z ? json(*z) : json(nullptr)},
                {"within_3_sigma", within},
                {"rng_seed", rep.rng_seed},
                {"per_atom", atoms},
                {"note", rep.note}};
    c.emit(c.structured({{"report", report}}), out);
    return o.check && !within ? exit_code_for(Errc::CheckFailed) : 0;
}

inline double card_game_closed_form(double D) {
    if (D >= 1.0 / 6.0) return 0.0;
    return 2.0 / 3.0 * (binary_entropy((1.0 + 6.0 * D) / 4.0) - binary_entropy(3.0 * D));
}

/// (1/6)(1 - p1 + p3) read off a lifted card-game channel, when its support is exactly the two
/// atoms ({1,2,3},(1,0,0)) and ({1,2,3},(1,1,0)); p_i is the probability of the first given x = i.
inline std::optional<std::pair<double, double>> card_game_p1_p3(const ProblemSpec& spec, const RDPoint& pt) {
    const AuxChannel ch = lift_to_multihyperedge(spec, pt.channel, pt.decoder);
    const auto pu = ch.atom_marginal(spec);
    const CandidateRecovery w0{{1, 0, 0}}, w1{{1, 1, 0}};
    std::optional<std::size_t> i0;
    std::size_t live = 0;
    for (std::size_t u = 0; u < ch.num_atoms(); ++u) {
        if (pu[u] <= 1e-9) continue;
        ++live;
        const auto& l = ch.label(u);
        if (*l.subset != Hyperedge::all(3)) return std::nullopt;
        if (*l.recovery == w0)
            i0 = u;
        else if (*l.recovery != w1)
            return std::nullopt;
    }
    if (live != 2 || !i0) return std::nullopt;
    return std::pair{ch(*i0, 0), ch(*i0, 2)};
}

inline int cmd_example_card_game(Command& c, std::ostream& out) {
    const auto& o = c.opts();
    if (o.points < 0) throw Error(Errc::InvalidConfig, "--points must be positive");
    const int k = o.points > 0 ? o.points : 9;
    const ProblemSpec spec = card_game_spec();
    const SolverConfig cfg = c.solver_config();
    double max_gap = 0.0;
    json rows = json::array();
    std::string csv = "distortion,closed_form_bits,solver_rate_bits,gap_bits,tightness\n";
    for (int i = 0; i < k; ++i) {
        const double D = k == 1 ? 0.0 : (1.0 / 6.0) * static_cast<double>(i) / static_cast<double>(k - 1);
        const RDPoint pt = solve_at_distortion(spec, D, cfg);
        const double cf = card_game_closed_form(D);
        const double gap = pt.rate - cf;
        max_gap = std::max(max_gap, std::abs(gap));
        json row{{"distortion", D}, {"closed_form_bits", round_significant(cf)},
                 {"solver_rate_bits", round_significant(pt.rate)}, {"gap_bits", gap}};
        std::string tight;
        if (const auto p = card_game_p1_p3(spec, pt)) {
            const double rel = (1.0 - p->first + p->second) / 6.0;
            row["tightness"] = {{"p1", p->first}, {"p3", p->second}, {"value", rel}, {"residual", rel - D}};
            tight = fmt(rel);
        } else {
            row["tightness"] = nullptr;
        }
        csv += fmt(D) + ',' + rate_str(cf) + ',' + rate_str(pt.rate) + ',' + fmt(gap, 3) + ',' + tight + '\n';
        rows.push_back(std::move(row));
    }
    const bool ok = max_gap <= 1e-3;
    if (c.csv())
        c.emit(c.csv_header() + csv + "# max_gap_bits: " + fmt(max_gap, 3) + "\n", out);
    else
        c.emit(c.structured({{"rows", rows}, {"max_gap_bits", max_gap}, {"tolerance_bits", 1e-3}, {"pass", ok}}), out);
    return o.check && !ok ? exit_code_for(Errc::CheckFailed) : 0;
}

inline void print_error(std::ostream& err, const std::string& code, const std::string& message) {
    err << json{{"error", {{"code", code}, {"message", message}}}}.dump() << "\n";
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rate-distortion for lossy computing with decoder side information.", "lossycomp"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    Options o;
    o.threads = default_threads();

    auto source = [&](CLI::App* s) {
        auto* spec = s->add_option("--spec", o.spec_path, "problem spec JSON file");
        s->add_option("--builtin", o.builtin, "builtin spec name")
            ->check(CLI::IsMember(builtin_names()))
            ->excludes(spec);
    };
    auto common = [&](CLI::App* s) {
        s->add_option("--seed", o.seed, "RNG seed")->capture_default_str();
        s->add_option("--threads", o.threads, std::string("worker threads (default from ") + kThreadsEnv + ")")
            ->check(CLI::Range(1, 1024));
        s->add_option("--output", o.output, "write the result here instead of stdout");
        s->add_option("--format", o.format, "csv | structured")->check(CLI::IsMember({"csv", "structured"}));
    };
    auto solver = [&](CLI::App* s) {
        s->add_option("--tol", o.tol, "stop when a step lowers the Lagrangian by less (bits)")->capture_default_str();
        s->add_option("--max-iters", o.max_iters, "iteration cap per start")->capture_default_str();
        s->add_option("--restarts", o.restarts, "random starts per solve")->capture_default_str();
    };

    auto* validate = app.add_subcommand("validate", "check a spec and print its summary");
    source(validate);
    common(validate);

    auto* solve = app.add_subcommand("solve", "one point of R(D)");
    source(solve);
    common(solve);
    solver(solve);
    auto* dopt = solve->add_option("--distortion", o.distortion, "target distortion D");
    solve->add_option("--lambda", o.lambda, "distortion multiplier")->excludes(dopt);
    solve->add_flag("--lift", o.lift, "report the channel over multi-hyperedges");

    auto* curve = app.add_subcommand("curve", "trace R(D)");
    source(curve);
    common(curve);
    solver(curve);
    auto* grid = curve->add_option("--lambda-grid", o.lambda_grid, "MIN:MAX:N or MIN:MAX:N:log");
    curve->add_option("--points", o.points, "number of evenly spaced distortions")->excludes(grid);

    auto* gamma = app.add_subcommand("gamma", "list the zero-distortion family");
    source(gamma);
    common(gamma);
    gamma->add_option("--epsilon", o.epsilon, "threshold d at epsilon first")->check(CLI::NonNegativeNumber);
    gamma->add_flag("--maximal", o.maximal, "keep only maximal members (heuristic)");

    auto* oracle = app.add_subcommand("oracle", "check a point against the brute-force oracle");
    source(oracle);
    common(oracle);
    solver(oracle);
    oracle->add_option("--point", o.point, "point file written by solve");
    oracle->add_option("--distortion", o.distortion, "solve at D first");
    oracle->add_option("--oracle-restarts", o.oracle_restarts, "oracle random starts")->capture_default_str();

    auto* simulate = app.add_subcommand("simulate", "Monte-Carlo distortion of a point's scheme");
    source(simulate);
    common(simulate);
    solver(simulate);
    simulate->add_option("--point", o.point, "point file written by solve");
    simulate->add_option("--distortion", o.distortion, "solve at D first");
    simulate->add_option("--n", o.n, "sample count")->capture_default_str()->check(CLI::PositiveNumber);
    simulate->add_option("--trace", o.trace, "per-sample CSV trace");
    simulate->add_flag("--lift", o.lift, "lift the point file's channel before simulating");
    simulate->add_flag("--check", o.check, "exit nonzero unless within 3 standard errors");

    auto* card = app.add_subcommand("example-card-game", "closed form vs solver on the card game");
    common(card);
    solver(card);
    card->add_option("--points", o.points, "grid size over [0, 1/6]");
    card->add_flag("--check", o.check, "exit nonzero if the gap exceeds 1e-3 bits");

    std::vector<const char*> argv{"lossycomp"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : exit_code_for(Errc::InvalidConfig);
    }

    CLI::App* sub = app.get_subcommands().front();
    Command c(sub->get_name(), o);
    try {
        if (sub == validate) return cmd_validate(c, out);
        if (sub == solve) return cmd_solve(c, out);
        if (sub == curve) return cmd_curve(c, out);
        if (sub == gamma) return cmd_gamma(c, out);
        if (sub == oracle) return cmd_oracle(c, out);
        if (sub == simulate) return cmd_simulate(c, out);
        return cmd_example_card_game(c, out);
    } catch (const Error& e) {
        print_error(err, std::string(to_string(e.code())), e.what());
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        print_error(err, "InternalError", e.what());
        return 3;
    }
}

}  // namespace lossycomp::cli
