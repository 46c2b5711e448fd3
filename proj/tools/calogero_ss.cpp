// calogero-ss: batch driver for the scattering library.

#include <calogero/model.hpp>
#include <calogero/polynomials.hpp>
#include <calogero/report.hpp>
#include <calogero/scattering.hpp>
#include <calogero/wavefunction.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace calogero;
using json = nlohmann::ordered_json;

constexpr const char* kVersion = "1.0.0";

enum Exit : int {
    ok = 0,
    usage = 1,
    invalid_couplings = 2,
    numerical_failure = 3,
    io_failure = 4,
    ss_found = 5,
    check_failure = 6,
};

struct ExitError {
    int code;
    std::string message;
};

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::no_real_exponent:
    case ErrorKind::nonsingularity_violation:
        return invalid_couplings;
    case ErrorKind::domain:
    case ErrorKind::singular_configuration:
    case ErrorKind::resource_limit:
        return usage;
    case ErrorKind::accuracy_loss:
    case ErrorKind::range:
    case ErrorKind::numerical_failure:
    case ErrorKind::degenerate_envelope:
    case ErrorKind::internal_consistency:
        return numerical_failure;
    }
    return numerical_failure;
}

// ---------------------------------------------------------------------------
// Couplings

struct Couplings {
    int n = 2;
    std::optional<double> g;
    std::optional<double> nu_prime;
    double delta = 0.0;
    bool phi_use_nu = false;
};

void add_coupling_options(CLI::App* app, Couplings& c) {
    app->add_option("--n", c.n, "particle count N")->check(CLI::Range(2, 64));
    app->add_option("--g", c.g, "coupling g");
    app->add_option("--nu-prime", c.nu_prime, "ground-state exponent nu'");
    app->add_option("--delta", c.delta, "deformation strength delta");
    app->add_flag("--phi-use-nu", c.phi_use_nu, "use the undeformed exponent nu in the outgoing phase");
}

model::CouplingParams resolve(const Couplings& c) {
    if (c.g && c.nu_prime) throw ExitError{usage, "give exactly one of --g and --nu-prime"};
    model::CouplingParams params = c.g ? model::CouplingParams::from_coupling(c.n, *c.g, c.delta)
                                       : model::CouplingParams::from_exponent(c.n, c.nu_prime.value_or(1.0), c.delta);
    if (params.validity == model::Validity::invalid)
        throw ExitError{invalid_couplings, "couplings (g, delta) lie outside both validity ranges"};
    return params;
}

model::PhiConvention phi_convention(const Couplings& c) {
    return c.phi_use_nu ? model::PhiConvention::undeformed_exponent : model::PhiConvention::deformed_exponent;
}

report::Metadata base_metadata(const std::string& command, const model::CouplingParams& params, const Couplings& c) {
    return {
        {"tool", std::string("calogero-ss ") + kVersion},
        {"command", command},
        {"n", std::to_string(params.n_particles)},
        {"g", report::format_number(params.g)},
        {"nu_prime", report::format_number(params.nu_prime)},
        {"delta", report::format_number(params.delta)},
        {"validity", std::string(model::to_string(params.validity))},
        {"phi_convention", c.phi_use_nu ? "phi=-nu*N(N-1)/2" : "phi=-nu_prime*N(N-1)/2"},
        {"outgoing_phase", "exp(i*pi*phi) on the reflected plane wave"},
        {"eigenvalue", "E=p^2/2 with kinetic term -1/2 Laplacian"},
        {"amplitude_matching", "direct 2x2 solve at r_minus; printed closed forms used as cross-check only"},
        {"outgoing_matching", "value continuity at r_plus; derivative defect in deriv_mismatch"},
        {"printed_D_reading", "both (J')^2 and d(J^2)/dx evaluated as cross-checks"},
        {"transfer_matrix", "M=[[D/A,0],[-B/D,A/D]]; 1/M22=D/A stored"},
    };
}

// ---------------------------------------------------------------------------
// I/O

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) throw ExitError{io_failure, "failed writing to standard output"};
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ExitError{io_failure, "cannot open '" + path + "' for writing"};
    out << text;
    out.close();
    if (!out) throw ExitError{io_failure, "failed writing '" + path + "'"};
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ExitError{io_failure, "cannot open '" + path + "'"};
    std::ostringstream s;
    s << in.rdbuf();
    if (in.bad()) throw ExitError{io_failure, "failed reading '" + path + "'"};
    return s.str();
}

/// JSON config keys become "--key value" arguments placed before the real ones.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::string path;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw ExitError{usage, "--config requires a file"};
            path = args[++i];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        } else {
            rest.push_back(args[i]);
        }
    }
    if (path.empty()) return rest;
    json cfg;
    try {
        cfg = json::parse(read_text(path));
    } catch (const json::parse_error& e) {
        throw ExitError{usage, "config '" + path + "' is not valid JSON: " + e.what()};
    }
    if (!cfg.is_object()) throw ExitError{usage, "config must be a JSON object"};
    std::vector<std::string> out;
    if (!rest.empty()) out.push_back(rest.front()); // subcommand
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        const std::string flag = "--" + it.key();
        const json& v = it.value();
        if (v.is_boolean()) {
            if (v.get<bool>()) out.push_back(flag);
        } else if (v.is_string()) {
            out.push_back(flag);
            out.push_back(v.get<std::string>());
        } else if (v.is_number_integer()) {
            out.push_back(flag);
            out.push_back(std::to_string(v.get<long long>()));
        } else if (v.is_number()) {
            out.push_back(flag);
            out.push_back(report::format_number(v.get<double>()));
        } else {
            throw ExitError{usage, "config key '" + it.key() + "' must be a scalar"};
        }
    }
    for (std::size_t i = 1; i < rest.size(); ++i) out.push_back(rest[i]);
    return out;
}

// ---------------------------------------------------------------------------
// nu-prime

struct NuPrimeArgs {
    double g = 0.0;
    double delta = 0.0;
};

int cmd_nu_prime(const NuPrimeArgs& a) {
    const model::Validity validity = model::classify(a.g, a.delta);
    const model::ExponentSolution sol = model::solve_nu_prime(a.g, a.delta);
    json out;
    out["roots"] = {sol.roots[0], sol.roots[1]};
    out["selected"] = sol.selected;
    out["validity"] = std::string(model::to_string(validity));
    std::cout << out.dump() << "\n";
    return validity == model::Validity::invalid ? invalid_couplings : ok;
}

// ---------------------------------------------------------------------------
// scan

struct ScanArgs {
    Couplings c;
    std::size_t samples = 1000;
    double p_min = 0.01;
    double p_max = 10.0;
    std::uint64_t seed = 1;
    double tol = scattering::kSsTolerance;
    std::string out;
};

int cmd_scan(const ScanArgs& a) {
    const model::CouplingParams params = resolve(a.c);
    scattering::MomentumSampler sampler(params.n_particles, a.p_min, a.p_max, a.seed);
    const auto reports = scattering::ss_scan(params, sampler, a.samples, a.tol, phi_convention(a.c));

    report::CsvTable table({"sample", "p", "min_pair_factor", "min_w_magnitude", "m22_status", "ss_verdict"});
    std::size_t verdicts = 0;
    double min_outer = std::numeric_limits<double>::infinity();
    double min_pair = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        verdicts += r.ss_verdict ? 1 : 0;
        min_outer = std::min(min_outer, r.outer_pair_factor());
        min_pair = std::min(min_pair, r.min_pair_factor());
        table.add_row({std::to_string(i), report::format_number(r.pset.p()), report::format_number(r.min_pair_factor()),
                       report::format_number(r.min_w_magnitude()), std::string(scattering::to_string(r.m22_status)),
                       r.ss_verdict ? "true" : "false"});
    }
    report::Metadata meta = base_metadata("scan", params, a.c);
    meta.insert(meta.end(), {{"samples", std::to_string(a.samples)},
                             {"seed", std::to_string(a.seed)},
                             {"p_min", report::format_number(a.p_min)},
                             {"p_max", report::format_number(a.p_max)},
                             {"tolerance", report::format_number(a.tol)},
                             {"w_normalization", "|W_i|/(|psi_+ psi_-| p)"},
                             {"pair_columns", "minimum over directions with i != N+1-i"},
                             {"m22_source", "N-body match with k=0 at p*r_minus=100 along the default generic direction"}});
    write_text(a.out, table.render(meta));
    std::fprintf(stderr, "scan: samples=%zu ss_verdicts=%zu min_|p_1-p_N|=%s min_pair_factor=%s\n", reports.size(),
                 verdicts, report::format_number(min_outer).c_str(), report::format_number(min_pair).c_str());
    return verdicts > 0 ? ss_found : ok;
}

// ---------------------------------------------------------------------------
// coeffs / sweep

struct MatchArgs {
    Couplings c;
    double p = 1.0;
    double r_minus = 50.0;
    double r_plus = 5.0;
    int k = 0;
    std::string out;
    std::string plot;
    std::string column = "T";
};

const std::vector<std::string> kCoeffsHeader = {"p",     "r_minus", "r_plus", "re_A", "im_A", "re_B",
                                                "im_B",  "re_D",    "im_D",   "R",    "T",    "deriv_mismatch"};

scattering::ScatteringMatch run_match(const model::CouplingParams& params, double p, double r_minus, double r_plus, int k) {
    if (params.n_particles == 2) {
        if (k != 0) throw DomainError("two-body states exist only for k = 0");
        return scattering::match_two_body(params, p, r_minus, r_plus);
    }
    const wavefunction::PolynomialTable table(params, k);
    const auto coeffs = wavefunction::SuperpositionCoeffs::single(params, k, 1, 1.0);
    scattering::ScatteringMatch m = scattering::match_n_body(
        params, wavefunction::MomentumSet::equally_spaced(params.n_particles, p), coeffs, table, r_minus);
    m.r_plus = r_plus;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    m.d = {nan, nan};
    return m;
}

std::vector<std::string> coeffs_row(const scattering::ScatteringMatch& m) {
    using report::format_number;
    return {format_number(m.p),         format_number(m.r_minus),      format_number(m.r_plus),
            format_number(m.a.real()),  format_number(m.a.imag()),     format_number(m.b.real()),
            format_number(m.b.imag()),  format_number(m.d.real()),     format_number(m.d.imag()),
            format_number(m.reflection), format_number(m.transmission), format_number(m.derivative_mismatch)};
}

report::Metadata match_metadata(const std::string& command, const model::CouplingParams& params, const MatchArgs& a) {
    report::Metadata meta = base_metadata(command, params, a.c);
    meta.push_back({"k", std::to_string(a.k)});
    if (params.n_particles > 2)
        meta.push_back({"n_body", "match along the default generic direction; D, T and deriv_mismatch undefined"});
    return meta;
}

void maybe_plot(const MatchArgs& a, const report::CsvTable& table, const std::string& x_column, bool log_x,
                const report::Metadata& meta) {
    if (a.plot.empty()) return;
    const auto& header = table.header();
    if (std::find(header.begin(), header.end(), a.column) == header.end())
        throw ExitError{usage, "unknown plot column '" + a.column + "'"};
    report::Series s{a.column, table.column(x_column), table.column(a.column)};
    report::PlotOptions opt{a.column + " vs " + x_column, x_column, a.column, log_x};
    write_text(a.plot, report::render_svg({s}, opt, meta));
}

int cmd_coeffs(const MatchArgs& a) {
    const model::CouplingParams params = resolve(a.c);
    report::CsvTable table(kCoeffsHeader);
    table.add_row(coeffs_row(run_match(params, a.p, a.r_minus, a.r_plus, a.k)));
    const report::Metadata meta = match_metadata("coeffs", params, a);
    write_text(a.out, table.render(meta));
    maybe_plot(a, table, "p", false, meta);
    return ok;
}

struct SweepArgs {
    MatchArgs m;
    std::string param = "r-minus";
    double from = 10.0;
    double to = 1e4;
    int steps = 4;
    bool log = false;
};

std::vector<double> sweep_grid(const SweepArgs& a) {
    if (a.steps < 1) throw ExitError{usage, "--steps must be >= 1"};
    if (a.log && !(a.from > 0.0 && a.to > 0.0)) throw ExitError{usage, "--log needs positive --from and --to"};
    std::vector<double> grid(a.steps);
    for (int i = 0; i < a.steps; ++i) {
        const double t = a.steps == 1 ? 0.0 : static_cast<double>(i) / (a.steps - 1);
        const double lf = std::log10(a.from), lt = std::log10(a.to);
        grid[i] = a.log ? std::pow(10.0, lf + (lt - lf) * t) : a.from + (a.to - a.from) * t;
    }
    if (a.log) grid.front() = a.from, grid.back() = a.to;
    return grid;
}

int cmd_sweep(const SweepArgs& a) {
    static const std::vector<std::string> params_allowed = {"p", "r-minus", "r-plus", "delta", "nu-prime", "g"};
    if (std::find(params_allowed.begin(), params_allowed.end(), a.param) == params_allowed.end())
        throw ExitError{usage, "unknown --param '" + a.param + "'"};
    const std::vector<double> grid = sweep_grid(a);
    const model::CouplingParams base = resolve(a.m.c);

    auto point = [&](std::size_t i) {
        const double v = grid[i];
        Couplings c = a.m.c;
        double p = a.m.p, rm = a.m.r_minus, rp = a.m.r_plus;
        if (a.param == "p") p = v;
        if (a.param == "r-minus") rm = v;
        if (a.param == "r-plus") rp = v;
        if (a.param == "delta") c.delta = v;
        if (a.param == "nu-prime") c.nu_prime = v, c.g.reset();
        if (a.param == "g") c.g = v, c.nu_prime.reset();
        const model::CouplingParams params = resolve(c);
        return run_match(params, p, rm, rp, a.m.k);
    };
    const auto matches = parallel::map_indexed<scattering::ScatteringMatch>(grid.size(), point);

    std::vector<std::string> header = kCoeffsHeader;
    header.insert(header.begin(), "param_value");
    report::CsvTable table(header);
    for (std::size_t i = 0; i < matches.size(); ++i) {
        auto row = coeffs_row(matches[i]);
        row.insert(row.begin(), report::format_number(grid[i]));
        table.add_row(std::move(row));
    }

    report::Metadata meta = match_metadata("sweep", base, a.m);
    meta.insert(meta.end(), {{"param", a.param},
                             {"from", report::format_number(a.from)},
                             {"to", report::format_number(a.to)},
                             {"steps", std::to_string(a.steps)},
                             {"spacing", a.log ? "log" : "linear"}});

    int code = ok;
    json discrepancy;
    if (a.param == "r-minus" && base.n_particles == 2) {
        std::vector<scattering::SweepRow> rows;
        for (std::size_t i = 0; i < matches.size(); ++i) rows.push_back({grid[i], matches[i]});
        const scattering::TrendSummary trend = scattering::transmission_trend(rows);
        meta.insert(meta.end(), {{"trend_claim", "T vanishes as r_minus grows"},
                                 {"trend_rule", "T_last/T_first <= 1e-2 and log-log slope < 0"},
                                 {"trend_ratio", report::format_number(trend.ratio)},
                                 {"trend_slope", report::format_number(trend.slope)},
                                 {"trend_holds", trend.claim_holds ? "true" : "false"}});
        if (!trend.claim_holds) {
            code = check_failure;
            discrepancy = {{"discrepancy", "transmission_trend"},
                           {"claim", "T vanishes as r_minus grows"},
                           {"rule", "T_last/T_first <= 1e-2 and log-log slope < 0"},
                           {"t_first", trend.first_t},
                           {"t_last", trend.last_t},
                           {"ratio", trend.ratio},
                           {"slope", trend.slope},
                           {"p", a.m.p},
                           {"r_plus", a.m.r_plus},
                           {"r_minus", grid}};
        }
    }
    write_text(a.m.out, table.render(meta));
    maybe_plot(a.m, table, "param_value", a.log, meta);
    if (code != ok) std::cerr << discrepancy.dump() << "\n";
    return code;
}

// ---------------------------------------------------------------------------
// residual

struct ResidualArgs {
    Couplings c;
    double p = 1.0;
    int k = 0;
    int q = 1;
    double h = wavefunction::kDefaultRelativeStep;
    std::string configs;
    std::size_t samples = 24;
    std::uint64_t seed = 1;
    double tol = 1e-6;
    bool ground_state = false;
};

std::vector<wavefunction::Configuration> load_samples(const std::string& path, int n) {
    json doc;
    try {
        doc = json::parse(read_text(path));
    } catch (const json::parse_error& e) {
        throw ExitError{usage, "configs file is not valid JSON: " + std::string(e.what())};
    }
    if (!doc.is_object() || !doc.contains("configs") || !doc["configs"].is_array())
        throw ExitError{usage, "configs file must hold {\"configs\": [[x1, ...], ...]}"};
    std::vector<wavefunction::Configuration> out;
    for (const json& row : doc["configs"]) {
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw ExitError{usage, "each configuration needs exactly N coordinates"};
        out.push_back(wavefunction::Configuration::canonical(row.get<std::vector<double>>()));
    }
    return out;
}

int cmd_residual(const ResidualArgs& a) {
    const model::CouplingParams params = resolve(a.c);
    if (!(a.p > 0.0)) throw ExitError{usage, "--p must be positive"};
    if (!(a.h > 0.0)) throw ExitError{usage, "--h must be positive"};
    const auto samples = a.configs.empty() ? wavefunction::sample_configurations(params.n_particles, a.p, a.samples, a.seed)
                                           : load_samples(a.configs, params.n_particles);
    fd::Field psi;
    double eigenvalue = 0.0;
    std::optional<wavefunction::PolynomialTable> table;
    if (a.ground_state) {
        psi = [&](std::span<const double> x) { return std::complex<double>(wavefunction::ground_state(x, params.nu_prime), 0.0); };
    } else {
        table.emplace(params, a.k);
        const polynomials::NumericPolynomial& poly = table->at(a.k, a.q);
        psi = [&params, &poly, p = a.p, k = a.k](std::span<const double> x) {
            return wavefunction::scattering_eigenfunction(x, p, poly, params, k);
        };
        eigenvalue = wavefunction::scattering_energy(a.p);
    }
    const auto conv = wavefunction::convergence_check(psi, eigenvalue, samples, params, a.h);
    const bool pass = conv.at_h.max_residual < a.tol;
    json out;
    out["n"] = params.n_particles;
    out["state"] = a.ground_state ? "ground" : "scattering";
    out["k"] = a.k;
    out["q"] = a.q;
    out["p"] = a.p;
    out["eigenvalue"] = eigenvalue;
    out["h_relative"] = a.h;
    out["samples"] = samples.size();
    out["max_residual"] = conv.at_h.max_residual;
    out["max_residual_half_step"] = conv.at_half_h.max_residual;
    out["convergence_ratio"] = conv.ratio;
    out["tolerance"] = a.tol;
    out["pass"] = pass;
    std::cout << out.dump() << "\n";
    return pass ? ok : check_failure;
}

// ---------------------------------------------------------------------------
// polys

struct PolysArgs {
    int n = 3;
    int k = 0;
    std::string lambda = "7/10";
};

int cmd_polys(const PolysArgs& a) {
    polynomials::Rational lambda;
    try {
        lambda = polynomials::parse_rational(a.lambda);
    } catch (const std::exception& e) {
        throw ExitError{usage, "--lambda: " + std::string(e.what())};
    }
    const polynomials::LaplaceSystem sys = polynomials::solve_generalized_laplace(a.n, a.k, lambda);
    json out;
    out["n"] = a.n;
    out["k"] = a.k;
    out["lambda"] = polynomials::to_string(lambda);
    out["dimension"] = sys.nullspace_dim;
    json basis = json::array();
    for (const polynomials::SymPolynomial& s : sys.solutions) {
        json entry = json::object();
        for (const auto& [part, coeff] : s.coefficients) {
            std::string key;
            for (std::size_t i = 0; i < part.size(); ++i) key += (i ? "," : "") + std::to_string(part[i]);
            entry[key] = polynomials::to_string(coeff);
        }
        basis.push_back(entry);
    }
    out["basis"] = basis;
    std::cout << out.dump() << "\n";
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scattering diagnostics for the deformed Calogero model", "calogero-ss"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.set_version_flag("--version", kVersion);

    NuPrimeArgs nu_args;
    CLI::App* nu = app.add_subcommand("nu-prime", "solve the exponent relation for nu'");
    nu->add_option("--g", nu_args.g, "coupling g")->required();
    nu->add_option("--delta", nu_args.delta, "deformation strength delta")->required();

    ScanArgs scan_args;
    CLI::App* scan = app.add_subcommand("scan", "seeded spectral-singularity scan");
    add_coupling_options(scan, scan_args.c);
    scan->add_option("--samples", scan_args.samples, "number of momentum samples");
    scan->add_option("--p-min", scan_args.p_min, "smallest momentum magnitude");
    scan->add_option("--p-max", scan_args.p_max, "largest momentum magnitude");
    scan->add_option("--seed", scan_args.seed, "sampler seed");
    scan->add_option("--tol", scan_args.tol, "verdict threshold on normalized |W|");
    scan->add_option("--out", scan_args.out, "CSV output path (stdout if absent)");

    MatchArgs coeffs_args;
    CLI::App* coeffs = app.add_subcommand("coeffs", "matching coefficients A, B, D and R, T");
    auto add_match_options = [](CLI::App* cmd, MatchArgs& m) {
        add_coupling_options(cmd, m.c);
        cmd->add_option("--p", m.p, "momentum magnitude");
        cmd->add_option("--r-minus", m.r_minus, "inner matching radius");
        cmd->add_option("--r-plus", m.r_plus, "outer matching radius");
        cmd->add_option("--k", m.k, "polynomial degree (N > 2)");
        cmd->add_option("--out", m.out, "CSV output path (stdout if absent)");
        cmd->add_option("--plot", m.plot, "SVG plot path");
        cmd->add_option("--column", m.column, "column plotted");
    };
    add_match_options(coeffs, coeffs_args);

    SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand("sweep", "coefficients over a parameter grid");
    add_match_options(sweep, sweep_args.m);
    sweep->add_option("--param", sweep_args.param, "p | r-minus | r-plus | delta | nu-prime | g");
    sweep->add_option("--from", sweep_args.from, "first grid value");
    sweep->add_option("--to", sweep_args.to, "last grid value");
    sweep->add_option("--steps", sweep_args.steps, "grid points");
    sweep->add_flag("--log", sweep_args.log, "geometric grid and log x axis");

    ResidualArgs res_args;
    CLI::App* residual = app.add_subcommand("residual", "finite-difference eigenvalue residual");
    residual->set_help_flag("--help", "print this help message and exit");
    add_coupling_options(residual, res_args.c);
    residual->add_option("--p", res_args.p, "momentum magnitude");
    residual->add_option("--k", res_args.k, "polynomial degree");
    residual->add_option("--q", res_args.q, "polynomial index within degree k");
    residual->add_option("--h", res_args.h, "step relative to the smallest gap");
    residual->add_option("--configs", res_args.configs, "JSON file {\"configs\": [[x1, ...], ...]}");
    residual->add_option("--samples", res_args.samples, "random samples when --configs is absent");
    residual->add_option("--seed", res_args.seed, "sample seed");
    residual->add_option("--tol", res_args.tol, "residual tolerance");
    residual->add_flag("--ground-state", res_args.ground_state, "test the zero-energy ground state");

    PolysArgs polys_args;
    CLI::App* polys = app.add_subcommand("polys", "exact polynomial solutions of degree k");
    polys->add_option("--n", polys_args.n, "variable count")->required();
    polys->add_option("--k", polys_args.k, "degree")->required();
    polys->add_option("--lambda", polys_args.lambda, "coefficient as p/q");

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        args = expand_config(args);
        std::reverse(args.begin(), args.end());
        try {
            app.parse(args);
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e);
            return code == 0 ? ok : usage;
        }
        if (nu->parsed()) return cmd_nu_prime(nu_args);
        if (scan->parsed()) return cmd_scan(scan_args);
        if (coeffs->parsed()) return cmd_coeffs(coeffs_args);
        if (sweep->parsed()) return cmd_sweep(sweep_args);
        if (residual->parsed()) return cmd_residual(res_args);
        if (polys->parsed()) return cmd_polys(polys_args);
        return usage;
    } catch (const ExitError& e) {
        std::cerr << "calogero-ss: " << e.message << "\n";
        return e.code;
    } catch (const calogero::Error& e) {
        std::cerr << "calogero-ss: " << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "calogero-ss: " << e.what() << "\n";
        return numerical_failure;
    }
}
