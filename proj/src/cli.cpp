#include "zerolab/cli.hpp"

#include "zerolab/analytic_extension.hpp"
#include "zerolab/errors.hpp"
#include "zerolab/gap_coupling.hpp"
#include "zerolab/measure_io.hpp"
#include "zerolab/parallel.hpp"
#include "zerolab/rare_events.hpp"
#include "zerolab/zero_counter.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace zerolab::cli {

namespace {

using nlohmann::json;

std::string num(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json num_json(double v)
{
    if (std::isfinite(v)) return v;
    return num(v);
}

struct Common {
    std::string measure;
    std::uint64_t seed = 0;
    unsigned workers = 0;
    int n_freq = 0;
    std::string out;
    std::string manifest;
};

/// CSV text plus the config echo that goes into the manifest.
struct Output {
    std::string csv;
    json config = json::object();
    std::vector<std::string> extra_files;
};

void add_measure(CLI::App* sub, Common& c)
{
    sub->add_option("--measure", c.measure, "Measure JSON file or inline JSON object")->required();
}

void add_seeded(CLI::App* sub, Common& c)
{
    sub->add_option("--seed", c.seed, "Base seed (mandatory; no wall-clock seeding)")->required();
    sub->add_option("--workers", c.workers, "Worker threads (SGP_ZEROLAB_WORKERS overrides)");
    sub->add_option("--n-freq", c.n_freq, "Frequency nodes of the discretization (default max(64, 8AT/pi))")
        ->check(CLI::PositiveNumber);
}

void add_output(CLI::App* sub, Common& c)
{
    sub->add_option("--out", c.out, "Output file (stdout when omitted)");
    sub->add_option("--manifest", c.manifest, "Run manifest path (default <out>.manifest.json)");
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("output path is not writable: " + path);
    f << text;
    if (!f) throw ValidationError("failed writing " + path);
}

void check_writable(const std::string& path)
{
    if (path.empty()) return;
    std::ofstream f(path, std::ios::binary | std::ios::app);
    if (!f) throw ValidationError("output path is not writable: " + path);
}

int resolve_n_freq(const Common& c, const SpectralMeasure& mu, double T)
{
    return c.n_freq > 0 ? c.n_freq : default_n_freq(mu, T);
}

json common_json(const Common& c, const SpectralMeasure& mu)
{
    return {{"measure", measure_to_json(mu)}, {"measure_arg", c.measure}, {"seed", c.seed},
            {"n_freq", c.n_freq}, {"workers", resolve_workers(c.workers)}};
}

// ---------------------------------------------------------------- spec

struct SpecArgs {
    std::optional<double> T;
};

Output cmd_spec(const Common& c, const SpecArgs& a)
{
    const auto mu = load_measure(c.measure);
    const auto [B, A] = support_bounds(mu);
    const double gamma = std::sqrt(moment(mu, 2));
    json j;
    j["measure"] = measure_to_json(mu);
    j["description"] = describe(mu);
    j["support"] = {{"B", B}, {"A", A}};
    j["moments"] = {{"m0", moment(mu, 0)}, {"m2", moment(mu, 2)}, {"m4", moment(mu, 4)}};
    j["kac_rice_density"] = kac_rice_density(mu);
    j["markers"] = {{"B_over_pi", B / std::numbers::pi},
                    {"gamma_over_pi", gamma / std::numbers::pi},
                    {"A_over_pi", A / std::numbers::pi}};
    if (a.T) j["default_n_freq"] = default_n_freq(mu, *a.T);
    Output o;
    o.csv = j.dump(2) + "\n";
    o.config = {{"measure", measure_to_json(mu)}, {"measure_arg", c.measure}};
    if (a.T) o.config["T"] = *a.T;
    return o;
}

// ---------------------------------------------------------------- sample

struct SampleArgs {
    double T = 0.0;
    int points = 1001;
    std::string path_json;
};

Output cmd_sample(const Common& c, const SampleArgs& a)
{
    if (!(a.T > 0.0)) throw ValidationError("--T must be > 0");
    if (a.points < 2) throw ValidationError("--points must be >= 2");
    const auto mu = load_measure(c.measure);
    const auto frame = discretize(mu, resolve_n_freq(c, mu, a.T));
    Rng rng = make_stream(c.seed, 0);
    const auto path = sample_path(frame, rng);
    std::ostringstream os;
    os << "t,F,dF\n";
    for (int i = 0; i < a.points; ++i) {
        const double t = a.T * i / (a.points - 1);
        const auto [f, d] = evaluate_with_deriv(path, t);
        os << num(t) << ',' << num(f) << ',' << num(d) << '\n';
    }
    Output o;
    o.csv = os.str();
    o.config = common_json(c, mu);
    o.config["T"] = a.T;
    o.config["points"] = a.points;
    o.config["frame_hash"] = frame->hash();
    if (!a.path_json.empty()) {
        write_file(a.path_json, path_to_json(path).dump(2) + "\n");
        o.extra_files.push_back(a.path_json);
        o.config["path_json"] = a.path_json;
    }
    return o;
}

// ---------------------------------------------------------------- zeros

struct ZerosArgs {
    double T = 0.0;
    std::size_t samples = 0;
    std::string summary;
};

Output cmd_zeros(const Common& c, const ZerosArgs& a)
{
    if (!(a.T > 0.0)) throw ValidationError("--T must be > 0");
    const auto mu = load_measure(c.measure);
    check_writable(a.summary);
    DensityOptions opt;
    opt.n_freq = resolve_n_freq(c, mu, a.T);
    opt.workers = c.workers;
    const auto s = empirical_density(mu, a.T, a.samples, c.seed, opt);
    std::ostringstream os;
    os << "seed,T,N,N_over_T\n";
    for (std::size_t i = 0; i < s.counts.size(); ++i) {
        os << s.seeds[i] << ',' << num(a.T) << ',' << s.counts[i] << ','
           << num(static_cast<double>(s.counts[i]) / a.T) << '\n';
    }
    Output o;
    o.csv = os.str();
    o.config = common_json(c, mu);
    o.config["n_freq"] = opt.n_freq;
    o.config["T"] = a.T;
    o.config["samples"] = a.samples;
    if (!a.summary.empty()) {
        std::ostringstream ss;
        ss << "T,n,mean,standard_error,min,max,kac_rice\n"
           << num(a.T) << ',' << a.samples << ',' << num(s.mean) << ',' << num(s.standard_error) << ','
           << num(s.min) << ',' << num(s.max) << ',' << num(kac_rice_density(mu)) << '\n';
        write_file(a.summary, ss.str());
        o.extra_files.push_back(a.summary);
        o.config["summary"] = a.summary;
    }
    return o;
}

// ---------------------------------------------------------------- jensen

struct JensenArgs {
    double T = 0.0;
    double eps = 0.1;
    std::size_t paths = 0;
};

Output cmd_jensen(const Common& c, const JensenArgs& a)
{
    const auto mu = load_measure(c.measure);
    make_jensen_scheme(a.T, a.eps);
    const auto frame = discretize(mu, resolve_n_freq(c, mu, a.T));
    struct Row {
        long exact = 0;
        double bound = 0.0;
        double margin = 0.0;
    };
    const auto rows = parallel_map(a.paths, resolve_workers(c.workers), [&](std::size_t i) {
        Rng rng = make_stream(c.seed, i);
        const auto path = sample_path(frame, rng);
        const auto scheme = jensen_upper_bound(path, a.T, a.eps);
        const auto check = circle_average_bound_check(path, a.T, rng);
        return Row{scheme.exact, scheme.bound, check.worst_margin};
    });
    std::ostringstream os;
    os << "seed,T,eps,exact,bound,slack,worst_margin\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        os << stream_seed(c.seed, i) << ',' << num(a.T) << ',' << num(a.eps) << ',' << rows[i].exact << ','
           << num(rows[i].bound) << ',' << num(rows[i].bound - static_cast<double>(rows[i].exact)) << ','
           << num(rows[i].margin) << '\n';
    }
    Output o;
    o.csv = os.str();
    o.config = common_json(c, mu);
    o.config["n_freq"] = frame->size();
    o.config["T"] = a.T;
    o.config["eps"] = a.eps;
    o.config["paths"] = a.paths;
    return o;
}

// ---------------------------------------------------------------- couple

struct CoupleArgs {
    double T = 0.0;
    std::size_t triples = 0;
};

Output cmd_couple(const Common& c, const CoupleArgs& a)
{
    if (!(a.T > 0.0)) throw ValidationError("--T must be > 0");
    const auto mu = load_measure(c.measure);
    const auto frame = discretize(mu, resolve_n_freq(c, mu, a.T));
    const auto g_frame = coupled_frame(*frame);
    const auto reports = parallel_map(a.triples, resolve_workers(c.workers), [&](std::size_t i) {
        Rng rng = make_stream(c.seed, i);
        return verify_coupling(couple(sample_path(frame, rng), g_frame), a.T);
    });
    std::ostringstream os;
    os << "seed,identity_residual,lattice_residual,N_F,N_G,lattice_count,slack,degenerate\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        os << stream_seed(c.seed, i) << ',' << num(r.identity_residual) << ',' << num(r.lattice_residual) << ','
           << r.zeros_F << ',' << r.zeros_G << ',' << r.lattice_count << ',' << r.slack << ','
           << (r.degenerate ? 1 : 0) << '\n';
    }
    Output o;
    o.csv = os.str();
    o.config = common_json(c, mu);
    o.config["n_freq"] = frame->size();
    o.config["T"] = a.T;
    o.config["triples"] = a.triples;
    return o;
}

// ---------------------------------------------------------------- tails / scan

struct TailsArgs {
    std::vector<double> T;
    std::vector<std::string> eta_text;
    std::vector<double> eta;
    std::string side = "over";
    std::string estimator = "naive";
    std::size_t samples = 0;
    double eps = 0.1;
    std::optional<double> L;
    std::optional<double> theta;
};

const char* kTailsHeader = "T,eta,estimator,n,hits_or_ess,p_hat,ci_lo,ci_hi,log_p,theta,L,kappa\n";

void tail_row(std::ostream& os, const TailEstimate& e)
{
    const bool tilted = e.estimator == EstimatorKind::tilted;
    os << num(e.T) << ',' << num(e.eta) << ',' << to_string(e.estimator) << ',' << e.n_samples << ','
       << (tilted ? num(e.ess) : std::to_string(e.hits)) << ',' << num(e.p_hat) << ',' << num(e.ci_lo) << ','
       << num(e.ci_hi) << ',' << num(e.log_p_hat) << ',';
    if (e.tilt) {
        os << num(e.tilt->theta) << ',' << num(e.tilt->L) << ',' << num(e.tilt->kappa);
    } else {
        os << ",,";
    }
    os << '\n';
}

TailEstimate one_tail(const Common& c, const SpectralMeasure& mu, const TailsArgs& a, double T, double eta,
                      std::uint64_t seed)
{
    const Side side = parse_side(a.side);
    if (a.estimator == "naive") {
        SamplingOptions opt;
        opt.n_freq = c.n_freq;
        opt.workers = c.workers;
        return naive_tail(mu, T, eta, side, a.samples, seed, opt);
    }
    if (a.estimator == "tilted") {
        TiltOptions opt;
        opt.L_override = a.L;
        opt.theta_override = a.theta;
        opt.n_freq = c.n_freq;
        opt.workers = c.workers;
        auto e = tilted_tail(mu, T, std::numbers::pi * eta, a.eps, a.samples, seed, opt);
        e.side = side;
        return e;
    }
    throw ValidationError("estimator must be 'naive' or 'tilted', got '" + a.estimator + "'");
}

json tails_config(const Common& c, const SpectralMeasure& mu, const TailsArgs& a)
{
    json j = common_json(c, mu);
    j["T"] = a.T;
    j["eta"] = a.eta;
    j["side"] = a.side;
    j["estimator"] = a.estimator;
    j["samples"] = a.samples;
    j["eps"] = a.eps;
    j["L"] = a.L ? json(*a.L) : json(nullptr);
    j["theta"] = a.theta ? json(*a.theta) : json(nullptr);
    return j;
}

std::vector<double> parse_list(const std::vector<std::string>& items, const char* what)
{
    std::vector<double> out;
    for (const auto& item : items) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw ValidationError(std::string(what) + ": not a number: '" + item + "'");
        }
    }
    return out;
}

Output cmd_tails(const Common& c, TailsArgs a)
{
    a.eta = parse_list(a.eta_text, "--eta");
    const auto mu = load_measure(c.measure);
    if (a.T.empty()) throw ValidationError("--T needs at least one value");
    if (a.eta.size() != 1) throw ValidationError("--eta takes exactly one value");
    for (double T : a.T) {
        if (!(T > 0.0)) throw ValidationError("--T values must be > 0");
    }
    std::ostringstream os;
    os << kTailsHeader;
    for (std::size_t i = 0; i < a.T.size(); ++i) {
        tail_row(os, one_tail(c, mu, a, a.T[i], a.eta[0], stream_seed(c.seed, i)));
    }
    Output o;
    o.csv = os.str();
    o.config = tails_config(c, mu, a);
    return o;
}

Output cmd_scan(const Common& c, TailsArgs a)
{
    a.eta = parse_list(a.eta_text, "--eta-grid");
    const auto mu = load_measure(c.measure);
    if (a.T.size() != 1) throw ValidationError("scan takes exactly one --T value");
    if (a.eta.empty()) throw ValidationError("the eta grid is empty");
    const auto [B, A] = support_bounds(mu);
    const double top = 2.0 * A / std::numbers::pi;
    for (double eta : a.eta) {
        if (!(eta > 0.0) || eta > top * (1.0 + 1e-12)) {
            throw ValidationError("eta " + num(eta) + " lies outside (0, 2A/pi] = (0, " + num(top) + "]");
        }
    }
    const double T = a.T[0];
    if (!(T > 0.0)) throw ValidationError("--T must be > 0");
    std::ostringstream os;
    os << "# " << kCsvSchema << '\n';
    os << "# B/pi=" << num(B / std::numbers::pi) << '\n';
    os << "# gamma/pi=" << num(kac_rice_density(mu)) << '\n';
    os << "# A/pi=" << num(A / std::numbers::pi) << '\n';
    os << kTailsHeader;
    for (std::size_t i = 0; i < a.eta.size(); ++i) {
        tail_row(os, one_tail(c, mu, a, T, a.eta[i], stream_seed(c.seed, i)));
    }
    Output o;
    o.csv = os.str();
    o.config = tails_config(c, mu, a);
    return o;
}

// ---------------------------------------------------------------- driver

std::string error_kind(const Error& e)
{
    if (dynamic_cast<const InvalidMeasure*>(&e)) return "InvalidMeasure";
    if (dynamic_cast<const EmptyBand*>(&e)) return "EmptyBand";
    if (dynamic_cast<const ResolutionTooCoarse*>(&e)) return "ResolutionTooCoarse";
    if (dynamic_cast<const FrequencyOutOfBand*>(&e)) return "FrequencyOutOfBand";
    if (dynamic_cast<const InsufficientData*>(&e)) return "InsufficientData";
    if (dynamic_cast<const FactorizationFailure*>(&e)) return "FactorizationFailure";
    if (dynamic_cast<const OverflowGuard*>(&e)) return "OverflowGuard";
    if (dynamic_cast<const ZeroOnContour*>(&e)) return "ZeroOnContour";
    if (dynamic_cast<const NonIntegerWinding*>(&e)) return "NonIntegerWinding";
    if (dynamic_cast<const ValidationError*>(&e)) return "ValidationError";
    if (dynamic_cast<const NumericError*>(&e)) return "NumericError";
    return "Error";
}

int report(std::ostream& err, const std::string& kind, const std::string& message, int code)
{
    err << json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << '\n';
    return code;
}

std::string compiler_version()
{
#if defined(__clang__)
    return std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
    return std::string("gcc ") + __VERSION__;
#else
    return "unknown";
#endif
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int replay(const std::string& manifest_path, const std::string& out_override, std::ostream& out, std::ostream& err)
{
    std::ifstream in(manifest_path);
    if (!in) throw ValidationError("cannot open manifest: " + manifest_path);
    json m;
    try {
        m = json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("manifest does not parse: ") + e.what());
    }
    if (m.value("schema", "") != kManifestSchema) throw ValidationError("unsupported manifest schema");
    auto args = m.at("args").get<std::vector<std::string>>();
    if (!out_override.empty()) {
        bool replaced = false;
        for (std::size_t i = 0; i + 1 < args.size(); ++i) {
            if (args[i] == "--out") {
                args[i + 1] = out_override;
                replaced = true;
            } else if (args[i] == "--manifest") {
                args[i + 1] = out_override + ".manifest.json";
            }
        }
        if (!replaced) {
            args.push_back("--out");
            args.push_back(out_override);
        }
    }
    return dispatch(args, out, err);
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Zero statistics of stationary Gaussian processes with compact spectra", "zerolab"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("zerolab ") + kToolVersion);

    Common c;
    SpecArgs spec_args;
    SampleArgs sample_args;
    ZerosArgs zeros_args;
    JensenArgs jensen_args;
    CoupleArgs couple_args;
    TailsArgs tails_args;
    TailsArgs scan_args;
    std::string replay_manifest;
    std::string replay_out;

    auto* spec = app.add_subcommand("spec", "Summarize a spectral measure (support, moments, markers)");
    add_measure(spec, c);
    spec->add_option("--T", spec_args.T, "Horizon for the default discretization size");
    add_output(spec, c);

    auto* sample = app.add_subcommand("sample", "Sample one path and tabulate F and F' on [0, T]");
    add_measure(sample, c);
    add_seeded(sample, c);
    add_output(sample, c);
    sample->add_option("--T", sample_args.T, "Horizon")->required();
    sample->add_option("--points", sample_args.points, "Grid points");
    sample->add_option("--path-json", sample_args.path_json, "Also write the path coefficients as JSON");

    auto* zeros = app.add_subcommand("zeros", "Count real zeros of sampled paths on [0, T]");
    add_measure(zeros, c);
    add_seeded(zeros, c);
    add_output(zeros, c);
    zeros->add_option("--T", zeros_args.T, "Horizon")->required();
    zeros->add_option("--samples", zeros_args.samples, "Number of paths")->required();
    zeros->add_option("--summary", zeros_args.summary, "Density summary CSV");

    auto* jensen = app.add_subcommand("jensen", "Averaged Jensen upper bound versus the exact zero count");
    add_measure(jensen, c);
    add_seeded(jensen, c);
    add_output(jensen, c);
    jensen->add_option("--T", jensen_args.T, "Horizon (>= 10)")->required();
    jensen->add_option("--eps", jensen_args.eps, "Scheme parameter in (0, 1/e]");
    jensen->add_option("--paths,--n-paths", jensen_args.paths, "Number of paths")->required();

    auto* coupling = app.add_subcommand("couple", "Spectral-gap coupling checks on sampled triples");
    add_measure(coupling, c);
    add_seeded(coupling, c);
    add_output(coupling, c);
    coupling->add_option("--T", couple_args.T, "Horizon")->required();
    coupling->add_option("--triples", couple_args.triples, "Number of triples")->required();

    auto add_tail_options = [&](CLI::App* sub, TailsArgs& t, bool eta_list) {
        add_measure(sub, c);
        add_seeded(sub, c);
        add_output(sub, c);
        sub->add_option("--T", t.T, "Horizon(s), comma separated")->required()->delimiter(',');
        auto* eta = sub->add_option(eta_list ? "--eta,--eta-grid" : "--eta", t.eta_text,
                                    eta_list ? "Density grid, comma separated" : "Target density (zeros per unit time)");
        eta->delimiter(',')->required();
        if (eta_list) eta->expected(0, 1 << 20);
        sub->add_option("--side", t.side, "over | under");
        sub->add_option("--estimator", t.estimator, "naive | tilted");
        sub->add_option("--samples", t.samples, "Samples per estimate")->required();
        sub->add_option("--eps", t.eps, "Band window half-width for the tilted estimator");
        sub->add_option("--L", t.L, "Override of L = kappa^(-1/3)");
        sub->add_option("--theta", t.theta, "Override of the tilt size");
    };
    auto* tails = app.add_subcommand("tails", "Tail probabilities of the zero count (naive or tilted)");
    add_tail_options(tails, tails_args, false);
    auto* scan = app.add_subcommand("scan", "Sweep the target density over a grid (phase-transition data)");
    add_tail_options(scan, scan_args, true);

    auto* rep = app.add_subcommand("replay", "Re-run a run manifest");
    rep->add_option("--manifest", replay_manifest, "Manifest written by an earlier run")->required();
    rep->add_option("--out", replay_out, "Write the output here instead of the recorded path");

    std::vector<const char*> argv{"zerolab"};
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            std::ostringstream help;
            app.exit(e, help, help);
            out << help.str();
            return 0;
        }
        return report(err, "UsageError", e.what(), 2);
    }

    if (rep->parsed()) return replay(replay_manifest, replay_out, out, err);

    const auto start = std::chrono::steady_clock::now();
    Output result;
    std::string name;
    if (spec->parsed()) {
        name = "spec";
        check_writable(c.out);
        result = cmd_spec(c, spec_args);
    } else {
        check_writable(c.out);
        check_writable(c.manifest);
        if (sample->parsed()) {
            name = "sample";
            result = cmd_sample(c, sample_args);
        } else if (zeros->parsed()) {
            name = "zeros";
            result = cmd_zeros(c, zeros_args);
        } else if (jensen->parsed()) {
            name = "jensen";
            result = cmd_jensen(c, jensen_args);
        } else if (coupling->parsed()) {
            name = "couple";
            result = cmd_couple(c, couple_args);
        } else if (tails->parsed()) {
            name = "tails";
            result = cmd_tails(c, tails_args);
        } else {
            name = "scan";
            result = cmd_scan(c, scan_args);
        }
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    if (c.out.empty()) {
        out << result.csv;
    } else {
        write_file(c.out, result.csv);
    }
    std::string manifest_path = c.manifest;
    if (manifest_path.empty() && !c.out.empty() && name != "spec") manifest_path = c.out + ".manifest.json";
    if (!manifest_path.empty()) {
        json m;
        m["schema"] = kManifestSchema;
        m["subcommand"] = name;
        m["args"] = args;
        m["config"] = result.config;
        m["seed"] = c.seed;
        m["outputs"] = json::array();
        if (!c.out.empty()) m["outputs"].push_back(c.out);
        for (const auto& f : result.extra_files) m["outputs"].push_back(f);
        m["csv_schema"] = kCsvSchema;
        m["versions"] = {{"zerolab", kToolVersion},
                         {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION)
                                       + "." + std::to_string(EIGEN_MINOR_VERSION)},
                         {"compiler", compiler_version()}};
        m["wall_time_seconds"] = num_json(seconds);
        write_file(manifest_path, m.dump(2) + "\n");
    }
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    try {
        return dispatch(args, out, err);
    } catch (const ValidationError& e) {
        return report(err, error_kind(e), e.what(), 2);
    } catch (const NumericError& e) {
        return report(err, error_kind(e), e.what(), 3);
    } catch (const Error& e) {
        return report(err, error_kind(e), e.what(), 3);
    } catch (const std::exception& e) {
        return report(err, "InternalError", e.what(), 3);
    }
}

int run(int argc, const char* const* argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

} // namespace zerolab::cli
