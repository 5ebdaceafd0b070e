#include "cqsc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cqsc/bounds.hpp"
#include "cqsc/io.hpp"
#include "cqsc/verify.hpp"

namespace cqsc {

using nlohmann::json;

namespace {

constexpr double kLn2 = 0.6931471805599453;

struct CommonOpts {
    std::string channel_path;
    std::string out_path;
    std::string format; ///< "csv" | "json"; default depends on the command
    std::uint64_t seed = 1;
    std::string s_grid_spec;
    OptimizerConfig opt;
};

void add_optimizer_flags(CLI::App* cmd, OptimizerConfig& cfg) {
    cmd->add_option("--max-iters", cfg.max_iters, "optimizer iteration cap");
    cmd->add_option("--tol", cfg.tol, "objective-change stopping tolerance");
    cmd->add_option("--kkt-tol", cfg.kkt_tol, "first-order residual for success");
    cmd->add_option("--grid-res", cfg.grid_steps, "grid steps for brute-force oracles");
}

void add_common_flags(CLI::App* cmd, CommonOpts& o, bool needs_channel) {
    auto* ch = cmd->add_option("--channel", o.channel_path, "channel spec file (JSON)");
    if (needs_channel) ch->required();
    cmd->add_option("--out", o.out_path, "output path (default: stdout)");
    cmd->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--seed", o.seed, "seed for randomized suites");
    add_optimizer_flags(cmd, o.opt);
}

std::vector<double> parse_grid(const std::string& spec, const char* what) {
    double lo = 0.0, hi = 0.0, step = 0.0;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || !(in >> std::ws).eof())
        throw ValidationError(std::string(what) + ": expected a:b:step, got '" + spec + "'");
    if (!(step > 0.0)) throw ValidationError(std::string(what) + ": step must be > 0");
    if (hi < lo) throw ValidationError(std::string(what) + ": grid end precedes start");
    std::vector<double> out;
    const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
    out.reserve(count);
    for (int k = 0; k < count; ++k) out.push_back(lo + k * step);
    // land exactly on the endpoint when it is within roundoff of the grid
    if (!out.empty() && std::abs(out.back() - hi) < 1e-12) out.back() = hi;
    return out;
}

std::vector<double> s_grid_from(const CommonOpts& o) {
    if (o.s_grid_spec.empty()) return default_s_grid();
    std::vector<double> grid = parse_grid(o.s_grid_spec, "--s-grid");
    for (double s : grid)
        if (!(s > -1.0) || s > 0.0)
            throw ValidationError("--s-grid: every s must lie in (-1, 0]");
    return grid;
}

void emit(const CommonOpts& o, const std::string& content) {
    if (o.out_path.empty())
        std::cout << content;
    else
        write_file_atomic(o.out_path, content);
}

std::string csv_join(const std::vector<std::string>& cells) {
    std::string row;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) row += ',';
        row += cells[i];
    }
    row += '\n';
    return row;
}

// ---------------------------------------------------------------------------

int cmd_capacity(const CommonOpts& o) {
    const ChannelFile cf = load_channel(o.channel_path);
    const OptimizerResult res = capacity(cf.channel, o.opt);

    const std::string format = o.format.empty() ? "json" : o.format;
    std::string content;
    if (format == "json") {
        json out{{"command", "capacity"},
                 {"capacity_nats", res.value},
                 {"capacity_bits", res.value / kLn2},
                 {"pi_star", res.pi_star.probs()},
                 {"kkt_residual", res.kkt_residual},
                 {"iterations", res.iterations},
                 {"converged", res.converged}};
        content = out.dump(2) + "\n";
    } else {
        std::vector<std::string> header{"capacity_nats", "capacity_bits", "kkt_residual",
                                        "iterations", "converged"};
        std::vector<std::string> row{format_number(res.value), format_number(res.value / kLn2),
                                     format_number(res.kkt_residual),
                                     std::to_string(res.iterations),
                                     res.converged ? "true" : "false"};
        for (int i = 0; i < res.pi_star.size(); ++i) {
            header.push_back("pi_" + std::to_string(i + 1));
            row.push_back(format_number(res.pi_star[i]));
        }
        content = csv_join(header) + csv_join(row);
    }
    emit(o, content);
    return res.converged ? kExitOk : kExitNumeric;
}

int cmd_e0_curve(const CommonOpts& o, const std::string& prior_spec) {
    const ChannelFile cf = load_channel(o.channel_path);
    const std::vector<double> grid = s_grid_from(o);

    bool optimal = prior_spec == "optimal";
    Prior pi = Prior::uniform(cf.channel.alphabet_size());
    if (!optimal) {
        std::vector<double> probs;
        std::istringstream in(prior_spec);
        std::string tok;
        while (std::getline(in, tok, ',')) probs.push_back(std::stod(tok));
        if (static_cast<int>(probs.size()) != cf.channel.alphabet_size())
            throw ValidationError("--prior: length does not match the channel alphabet");
        pi = Prior(std::move(probs));
    }

    bool all_converged = true;
    std::vector<double> values;
    values.reserve(grid.size());
    for (double s : grid) {
        if (optimal) {
            const OptimizerResult res = min_e0_over_prior(cf.channel, s, o.opt);
            all_converged = all_converged && res.converged;
            values.push_back(res.value);
        } else {
            values.push_back(e0(cf.channel, pi, s).value);
        }
    }

    std::vector<double> slopes(grid.size(), 0.0);
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const std::size_t lo = j == 0 ? 0 : j - 1;
        const std::size_t hi = j + 1 == grid.size() ? j : j + 1;
        slopes[j] = lo == hi ? 0.0 : (values[hi] - values[lo]) / (grid[hi] - grid[lo]);
    }

    const std::string format = o.format.empty() ? "csv" : o.format;
    std::string content;
    if (format == "csv") {
        content = csv_join({"s", "e0", "slope_estimate"});
        for (std::size_t j = 0; j < grid.size(); ++j)
            content += csv_join(
                {format_number(grid[j]), format_number(values[j]), format_number(slopes[j])});
    } else {
        json out{{"command", "e0-curve"},
                 {"prior", optimal ? json("optimal") : json(pi.probs())},
                 {"s", grid},
                 {"e0", values},
                 {"slope_estimate", slopes}};
        content = out.dump(2) + "\n";
    }
    emit(o, content);
    return all_converged ? kExitOk : kExitNumeric;
}

int cmd_exponent(const CommonOpts& o, double rate, const std::string& rate_grid_spec, bool bits) {
    const ChannelFile cf = load_channel(o.channel_path);
    const std::vector<double> s_grid = s_grid_from(o);

    std::vector<double> rates;
    if (!rate_grid_spec.empty())
        rates = parse_grid(rate_grid_spec, "--rate-grid");
    else
        rates.push_back(rate);
    if (bits)
        for (double& r : rates) r *= kLn2;
    for (double r : rates)
        if (r < 0.0) throw ValidationError("rates must be >= 0");

    const ExponentSolver solver(cf.channel, o.opt);
    const ExponentCurve curve = solver.curve(rates, s_grid);

    const std::string format = o.format.empty() ? "csv" : o.format;
    std::string content;
    if (format == "csv") {
        content = csv_join({"rate", "exponent", "s_star"});
        for (std::size_t j = 0; j < curve.rates.size(); ++j)
            content += csv_join({format_number(curve.rates[j]), format_number(curve.exponents[j]),
                                 format_number(curve.s_stars[j])});
    } else {
        json out{{"command", "exponent"},
                 {"rate", curve.rates},
                 {"exponent", curve.exponents},
                 {"s_star", curve.s_stars}};
        content = out.dump(2) + "\n";
    }
    emit(o, content);
    return kExitOk;
}

int cmd_bound(const CommonOpts& o, const std::string& codebook_path, double beta,
              const std::string& beta_grid_spec) {
    const ChannelFile cf = load_channel(o.channel_path);
    const Codebook cb = load_codebook(codebook_path);

    std::vector<double> betas;
    if (!beta_grid_spec.empty())
        betas = parse_grid(beta_grid_spec, "--beta-grid");
    else if (beta > 0.0)
        betas.push_back(beta);
    else
        betas = parse_grid("0.05:1.0:0.05", "--beta-grid");
    for (double b : betas)
        if (!(b > 0.0) || b > 1.0) throw ValidationError("beta values must lie in (0, 1]");

    std::vector<BoundValue> bounds;
    bounds.reserve(betas.size());
    for (double b : betas) bounds.push_back(codebook_error_bound(cf.channel, cb, b));

    const std::string format = o.format.empty() ? "csv" : o.format;
    std::string content;
    if (format == "csv") {
        content = csv_join({"beta", "bound", "vacuous"});
        for (std::size_t j = 0; j < betas.size(); ++j)
            content += csv_join({format_number(betas[j]), format_number(bounds[j].value),
                                 bounds[j].vacuous ? "true" : "false"});
    } else {
        json rows = json::array();
        for (std::size_t j = 0; j < betas.size(); ++j)
            rows.push_back(
                {{"beta", betas[j]}, {"bound", bounds[j].value}, {"vacuous", bounds[j].vacuous}});
        json out{{"command", "bound"}, {"rows", std::move(rows)}};
        content = out.dump(2) + "\n";
    }
    emit(o, content);
    return kExitOk;
}

int cmd_verify(const CommonOpts& o, const std::string& suite, int trials) {
    std::vector<VerdictReport> reports;
    if (suite == "all") {
        for (const std::string& name : verify_suite_names())
            reports.push_back(run_verify_suite(name, o.seed, trials));
    } else {
        reports.push_back(run_verify_suite(suite, o.seed, trials));
    }

    const std::string format = o.format.empty() ? "json" : o.format;
    std::string content;
    if (format == "json") {
        if (reports.size() == 1) {
            content = verdict_to_json(reports[0]).dump(2) + "\n";
        } else {
            json arr = json::array();
            for (const VerdictReport& r : reports) arr.push_back(verdict_to_json(r));
            content = arr.dump(2) + "\n";
        }
    } else {
        content = csv_join({"suite", "trials", "worst_violation", "tolerance", "passed",
                            "failing_seeds"});
        for (const VerdictReport& r : reports) {
            std::string seeds;
            for (std::size_t i = 0; i < r.failing_seeds.size(); ++i) {
                if (i) seeds += ';';
                seeds += std::to_string(r.failing_seeds[i]);
            }
            content += csv_join({r.suite, std::to_string(r.trials),
                                 format_number(r.worst_violation), format_number(r.tolerance),
                                 r.passed ? "true" : "false", seeds});
        }
    }
    emit(o, content);
    const bool all_passed =
        std::all_of(reports.begin(), reports.end(), [](const VerdictReport& r) { return r.passed; });
    return all_passed ? kExitOk : kExitVerifyFailed;
}

} // namespace

int run_cli(std::vector<std::string> args) {
    CLI::App app{"strong-converse bounds for classical-quantum channels"};
    app.require_subcommand(1);

    CommonOpts cap_o, e0_o, exp_o, bnd_o, ver_o;

    auto* cap = app.add_subcommand("capacity", "max_pi I(pi) with KKT certificate");
    add_common_flags(cap, cap_o, true);

    auto* e0c = app.add_subcommand("e0-curve", "E0(s, pi) over an s-grid");
    add_common_flags(e0c, e0_o, true);
    std::string prior_spec = "optimal";
    e0c->add_option("--prior", prior_spec, "comma-separated prior or 'optimal' (min over priors)");
    e0c->add_option("--s-grid", e0_o.s_grid_spec, "a:b:step inside (-1, 0]");

    auto* exp = app.add_subcommand("exponent", "converse exponent sup_s(-sR + min_pi E0)");
    add_common_flags(exp, exp_o, true);
    double rate = -1.0;
    std::string rate_grid_spec;
    bool bits = false;
    auto* rate_opt = exp->add_option("--rate", rate, "rate (nats/symbol unless --bits)");
    auto* rate_grid_opt = exp->add_option("--rate-grid", rate_grid_spec, "a:b:step of rates");
    exp->add_flag("--bits", bits, "interpret rates in bits/symbol");
    exp->add_option("--s-grid", exp_o.s_grid_spec, "a:b:step inside (-1, 0]");
    rate_opt->excludes(rate_grid_opt);

    auto* bnd = app.add_subcommand("bound", "per-codebook error lower bound over beta");
    add_common_flags(bnd, bnd_o, true);
    std::string codebook_path;
    double beta = 0.0;
    std::string beta_grid_spec;
    bnd->add_option("--codebook", codebook_path, "codebook file (JSON)")->required();
    auto* beta_opt = bnd->add_option("--beta", beta, "single beta in (0, 1]");
    auto* beta_grid_opt = bnd->add_option("--beta-grid", beta_grid_spec, "a:b:step of betas");
    beta_opt->excludes(beta_grid_opt);

    auto* ver = app.add_subcommand("verify", "randomized operator-inequality suites");
    add_common_flags(ver, ver_o, false);
    std::string suite = "all";
    int trials = 0;
    ver->add_option("--suite", suite, "suite name or 'all'");
    ver->add_option("--trials", trials, "trial count (0 = suite default)");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (cap->parsed()) return cmd_capacity(cap_o);
        if (e0c->parsed()) return cmd_e0_curve(e0_o, prior_spec);
        if (exp->parsed()) {
            if (rate < 0.0 && rate_grid_spec.empty())
                throw ValidationError("exponent: provide --rate or --rate-grid");
            return cmd_exponent(exp_o, rate, rate_grid_spec, bits);
        }
        if (bnd->parsed()) return cmd_bound(bnd_o, codebook_path, beta, beta_grid_spec);
        if (ver->parsed()) {
            if (suite != "all") {
                const auto names = verify_suite_names();
                if (std::find(names.begin(), names.end(), suite) == names.end())
                    throw ValidationError("verify: unknown suite '" + suite + "'");
            }
            return cmd_verify(ver_o, suite, trials);
        }
    } catch (const NumericError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}

} // namespace cqsc
