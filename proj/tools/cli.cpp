#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "jdkelly/admissible.hpp"
#include "jdkelly/game.hpp"
#include "jdkelly/growth.hpp"
#include "jdkelly/market.hpp"
#include "jdkelly/market_io.hpp"
#include "jdkelly/outperformance.hpp"
#include "jdkelly/randomization.hpp"
#include "jdkelly/simulator.hpp"

namespace jdkelly::cli {

using nlohmann::json;

namespace {

// Error carrying the exit status it maps to.
struct Failure : std::runtime_error {
    Failure(int code, std::string kind, const std::string& message)
        : std::runtime_error(message), code(code), kind(std::move(kind))
    {
    }
    int code;
    std::string kind;
};

std::string num(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json to_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

json bound_json(double v)
{
    if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
    return v;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) out.push_back(item);
    return out;
}

double parse_double(const std::string& s, const std::string& what)
{
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw Failure(kBadConfig, "bad_config", "cannot parse " + what + " value '" + s + "'");
    }
}

struct Common {
    std::string market_file;
    bool paper_example = false;
    std::string out_file;
    std::uint64_t seed = kDefaultSeed;
};

struct Context {
    MarketSpec spec;
    std::string market_source;
};

Context load(const Common& common)
{
    Context ctx;
    if (common.paper_example == !common.market_file.empty()) {
        throw Failure(kBadConfig, "bad_config", "give exactly one of --market <file> or --paper-example");
    }
    if (common.paper_example) {
        ctx.spec = example_market();
        ctx.market_source = "built-in example (nu=0.07, sigma=0.15, r=0.03, lambda=1, x in {+100%, -50%})";
    } else {
        try {
            ctx.spec = load_market(common.market_file);
        } catch (const MarketParseError& e) {
            throw Failure(kBadConfig, "market_schema", common.market_file + ": " + e.what());
        } catch (const std::runtime_error& e) {
            throw Failure(kBadConfig, "market_file", e.what());
        }
        ctx.market_source = common.market_file;
    }
    return ctx;
}

void require_valid_market(const MarketSpec& spec)
{
    const auto report = validate(spec);
    if (!report.valid()) throw Failure(kValidationFailed, "validation", report.summary());
}

KellySolution kelly_or_fail(const MarketSpec& spec, const KellyOptions& options)
{
    require_valid_market(spec);
    KellySolution sol;
    try {
        sol = solve_kelly(spec, options);
    } catch (const ArbitrageError& e) {
        throw Failure(kArbitrage, "arbitrage", e.what());
    }
    return sol;
}

void header(std::ostream& os, const std::string& command, const Context& ctx, const Common& common, const json& params)
{
    os << "# jdkelly " << command << "\n";
    os << "# market source: " << ctx.market_source << "\n";
    os << "# market: " << market_to_json(ctx.spec).dump() << "\n";
    os << "# seed: " << common.seed << "\n";
    os << "# parameters: " << params.dump() << "\n";
}

// "name=v1:v2:...", "v1:v2", "kelly" or "name=kelly".
RebalancingRule parse_rule(const std::string& token, const MarketSpec& spec, const KellyOptions& kelly)
{
    RebalancingRule rule;
    std::string body = token;
    if (const auto eq = token.find('='); eq != std::string::npos) {
        rule.name = token.substr(0, eq);
        body = token.substr(eq + 1);
    } else {
        rule.name = token;
    }
    if (body == "kelly") {
        const auto sol = kelly_or_fail(spec, kelly);
        if (!sol.converged) throw Failure(kNoConvergence, "no_convergence", "Kelly solver did not converge");
        rule.weights = sol.b_star;
        return rule;
    }
    const auto parts = split(body, ':');
    rule.weights.resize(static_cast<Eigen::Index>(parts.size()));
    for (std::size_t i = 0; i < parts.size(); ++i) rule.weights[static_cast<Eigen::Index>(i)] = parse_double(parts[i], "rule");
    if (rule.weights.size() != spec.n()) {
        throw Failure(kBadConfig, "bad_config",
                      "rule '" + token + "' has " + std::to_string(rule.weights.size()) + " components, market has " +
                          std::to_string(spec.n()) + " stocks");
    }
    return rule;
}

FairRandomization parse_randomization(const std::string& s)
{
    const auto colon = s.find(':');
    const std::string kind = s.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);
    try {
        if (kind == "degenerate") return FairRandomization::degenerate();
        if (kind == "uniform") return FairRandomization::uniform_0_2();
        if (kind == "lognormal") return FairRandomization::lognormal(parse_double(arg, "lognormal s"));
        if (kind == "discrete") {
            std::vector<FairRandomization::Outcome> outcomes;
            for (const auto& item : split(arg, ',')) {
                const auto parts = split(item, ':');
                if (parts.size() != 2) throw Failure(kBadConfig, "bad_config", "discrete outcome must be value:prob");
                outcomes.push_back({parse_double(parts[0], "value"), parse_double(parts[1], "probability")});
            }
            return FairRandomization::discrete(std::move(outcomes));
        }
    } catch (const std::invalid_argument& e) {
        throw Failure(kBadConfig, "bad_config", e.what());
    }
    throw Failure(kBadConfig, "bad_config", "unknown randomization '" + s + "'");
}

PerformanceMeasure parse_phi(const std::string& s)
{
    const auto colon = s.find(':');
    const std::string kind = s.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);
    try {
        if (kind == "indicator") return PerformanceMeasure::indicator(arg.empty() ? 1.0 : parse_double(arg, "alpha"));
        if (kind == "power") return PerformanceMeasure::power(parse_double(arg, "gamma"));
        if (kind == "ratio-share") return PerformanceMeasure::ratio_share();
    } catch (const std::invalid_argument& e) {
        throw Failure(kBadConfig, "bad_config", e.what());
    }
    throw Failure(kBadConfig, "bad_config", "unknown performance measure '" + s + "'");
}

class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback)
    {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw Failure(kBadConfig, "output", "cannot open output file " + path);
            os_ = &file_;
        }
    }
    std::ostream& stream() { return *os_; }

private:
    std::ofstream file_;
    std::ostream* os_;
};

// Per-subcommand options.
struct KellyFlags {
    double tol = 1e-10;
    int max_iter = 100;
    bool allow_arbitrage = false;

    KellyOptions options() const
    {
        KellyOptions o;
        o.tol = tol;
        o.max_iter = max_iter;
        o.allow_arbitrage = allow_arbitrage;
        return o;
    }
};

int cmd_validate(const Common& common, std::ostream& out)
{
    const auto ctx = load(common);
    const auto report = validate(ctx.spec);
    json doc;
    doc["valid"] = report.valid();
    doc["violations"] = json::array();
    for (const auto& v : report.violations) doc["violations"].push_back({{"field", v.field}, {"message", v.message}});
    doc["market"] = market_to_json(ctx.spec);

    bool arbitrage = false;
    const auto& jumps = ctx.spec.jumps;
    const bool atoms_ok = !jumps.atoms.empty() &&
                          std::all_of(jumps.atoms.begin(), jumps.atoms.end(),
                                      [&](const JumpAtom& a) { return a.x.size() == ctx.spec.n(); });
    if (atoms_ok) {
        const auto arb = check_no_arbitrage(jumps);
        json na{{"status", arb.passed ? "PASS" : "FAIL"}, {"equivalence", arb.equivalence}, {"residual", arb.residual}};
        if (arb.passed) {
            na["weights"] = arb.weights;
        } else {
            na["direction"] = to_json(arb.direction);
            na["worst_case_return"] = arb.worst_case_return;
        }
        arbitrage = !arb.passed && jumps.lambda > 0.0;
        doc["no_arbitrage"] = na;
        if (ctx.spec.n() == 1) {
            const auto b = admissible_interval(jumps);
            doc["admissible_interval"] = {bound_json(b.lower), bound_json(b.upper)};
        }
    } else {
        doc["no_arbitrage"] = {{"status", "PASS"}, {"equivalence", "no jumps: support is empty"}};
    }
    Sink sink(common.out_file, out);
    sink.stream() << doc.dump(2) << "\n";
    if (!report.valid()) throw Failure(kValidationFailed, "validation", report.summary());
    if (arbitrage) throw Failure(kArbitrage, "arbitrage", "jump support admits arbitrage");
    return kOk;
}

int cmd_kelly(const Common& common, const KellyFlags& flags, std::ostream& out)
{
    const auto ctx = load(common);
    const auto sol = kelly_or_fail(ctx.spec, flags.options());
    json doc{{"b_star", to_json(sol.b_star)},
             {"growth_rate", sol.growth_rate},
             {"gradient_norm", sol.gradient_norm},
             {"iterations", sol.iterations},
             {"converged", sol.converged},
             {"parameters", {{"tol", flags.tol}, {"max_iter", flags.max_iter}, {"market", market_to_json(ctx.spec)}}}};
    Sink sink(common.out_file, out);
    sink.stream() << doc.dump(2) << "\n";
    if (!sol.converged) {
        throw Failure(kNoConvergence, "no_convergence",
                      "Kelly solver stopped after " + std::to_string(sol.iterations) +
                          " iterations with |grad| = " + num(sol.gradient_norm));
    }
    return kOk;
}

int cmd_saddle(const Common& common, const KellyFlags& flags, int grid, const std::string& report_file, std::ostream& out)
{
    const auto ctx = load(common);
    require_valid_market(ctx.spec);
    SaddleOptions options;
    options.grid_points = grid;
    options.seed = common.seed;
    options.kelly = flags.options();
    SaddleReport report;
    try {
        report = verify_saddle(ctx.spec, options);
    } catch (const ArbitrageError& e) {
        throw Failure(kArbitrage, "arbitrage", e.what());
    } catch (const ConvergenceError& e) {
        throw Failure(kNoConvergence, "no_convergence", e.what());
    }
    json summary{{"b_star", to_json(report.b_star)},
                 {"max_abs_pi_along_b", report.max_abs_pi_along_b},
                 {"min_pi_along_c", report.min_pi_along_c},
                 {"argmin_c", to_json(report.argmin_c)},
                 {"passed", report.passed()},
                 {"grid", {{"sampled", report.sampled}, {"points", report.points}, {"lower", report.lower},
                           {"upper", report.upper}, {"step", report.step}}}};
    if (!report_file.empty()) {
        Sink sink(report_file, out);
        sink.stream() << summary.dump(2) << "\n";
    }
    if (ctx.spec.n() != 1) {
        if (report_file.empty()) {
            Sink sink(common.out_file, out);
            sink.stream() << summary.dump(2) << "\n";
        }
        return kOk;
    }

    const Vector g = saddle_grid(ctx.spec, grid, options.shrink, report.b_star[0]);
    const Matrix surface = saddle_surface(ctx.spec, g, g);
    Sink sink(common.out_file, out);
    auto& os = sink.stream();
    header(os, "saddle", ctx, common, {{"grid_points", grid}, {"shrink", options.shrink}, {"value", "100*pi(b,c)"}});
    os << "# saddle: " << summary.dump() << "\n";
    os << "b\\c";
    for (Eigen::Index j = 0; j < g.size(); ++j) os << "," << num(g[j]);
    os << "\n";
    for (Eigen::Index i = 0; i < g.size(); ++i) {
        os << num(g[i]);
        for (Eigen::Index j = 0; j < g.size(); ++j) os << "," << num(surface(i, j));
        os << "\n";
    }
    return kOk;
}

struct SimulateFlags {
    double horizon = 300.0;
    double dt = 0.1;
    std::vector<std::string> rules;
    std::size_t paths = 0;
    bool allow_inadmissible = false;
};

std::vector<RebalancingRule> resolve_rules(const std::vector<std::string>& tokens, const MarketSpec& spec,
                                           const KellyOptions& kelly)
{
    std::vector<std::string> list = tokens;
    if (list.empty()) {
        if (spec.n() != 1) throw Failure(kBadConfig, "bad_config", "--rules is required for multi-stock markets");
        list = {"kelly", "1", "1.1"};
    }
    std::vector<RebalancingRule> rules;
    for (const auto& t : list) rules.push_back(parse_rule(t, spec, kelly));
    return rules;
}

int cmd_simulate(const Common& common, const SimulateFlags& flags, std::ostream& out)
{
    const auto ctx = load(common);
    require_valid_market(ctx.spec);
    const auto rules = resolve_rules(flags.rules, ctx.spec, KellyOptions{});
    json params{{"horizon", flags.horizon}, {"dt", flags.dt}, {"paths", flags.paths},
                {"allow_inadmissible", flags.allow_inadmissible}};
    for (const auto& r : rules) params["rules"][r.name] = to_json(r.weights);

    PathConfig config;
    try {
        config = make_path_config(ctx.spec, flags.horizon, flags.dt, common.seed, rules, flags.allow_inadmissible);
    } catch (const std::invalid_argument& e) {
        throw Failure(kBadConfig, "bad_config", e.what());
    }

    Sink sink(common.out_file, out);
    auto& os = sink.stream();
    if (flags.paths > 0) {
        const auto sample = simulate_terminal(ctx.spec, rules, flags.horizon, common.seed, flags.paths,
                                              flags.allow_inadmissible);
        header(os, "simulate (statistics)", ctx, common, params);
        std::vector<double> counts(sample.jump_count.begin(), sample.jump_count.end());
        const auto nt = summarize(counts);
        double var = 0.0;
        for (double c : counts) var += (c - nt.mean) * (c - nt.mean);
        var /= std::max<double>(1.0, static_cast<double>(counts.size()) - 1.0);
        os << "# N_T mean: " << num(nt.mean) << " (std error " << num(nt.std_error) << "), variance: " << num(var)
           << ", lambda*T: " << num(ctx.spec.jumps.lambda * flags.horizon) << "\n";
        os << "rule,mean_growth_rate,std_error,bankrupt_fraction\n";
        for (std::size_t r = 0; r < rules.size(); ++r) {
            std::vector<double> rates;
            std::size_t bankrupt = 0;
            for (Eigen::Index p = 0; p < sample.paths(); ++p) {
                const double lv = sample.log_wealth(p, static_cast<Eigen::Index>(r));
                if (std::isinf(lv) && lv < 0) {
                    ++bankrupt;
                } else {
                    rates.push_back(lv / flags.horizon);
                }
            }
            const auto est = summarize(rates);
            os << rules[r].name << "," << num(rates.empty() ? -INFINITY : est.mean) << "," << num(est.std_error) << ","
               << num(static_cast<double>(bankrupt) / static_cast<double>(flags.paths)) << "\n";
        }
        return kOk;
    }

    const auto paths = simulate(ctx.spec, config);
    header(os, "simulate", ctx, common, params);
    for (std::size_t r = 0; r < rules.size(); ++r) {
        if (paths.bankrupt[r]) os << "# rule " << rules[r].name << " bankrupt at t = " << num(paths.bankrupt_time[r]) << "\n";
    }
    os << "time";
    for (const auto& r : rules) os << "," << r.name;
    os << ",N_t,U_t\n";
    for (Eigen::Index k = 0; k < paths.times.size(); ++k) {
        os << num(paths.times[k]);
        for (std::size_t r = 0; r < rules.size(); ++r) os << "," << num(paths.wealth(r, static_cast<std::size_t>(k)));
        os << "," << paths.jump_count[static_cast<std::size_t>(k)] << "," << paths.up_count[static_cast<std::size_t>(k)]
           << "\n";
    }
    return kOk;
}

struct OutperformFlags {
    double t_max = 300.0;
    double t_step = 1.0;
    std::optional<double> b, c, d;
    double tol = 1e-12;
};

int cmd_outperform(const Common& common, const OutperformFlags& flags, std::ostream& out)
{
    const auto ctx = load(common);
    require_valid_market(ctx.spec);
    BinaryJumpMarket market;
    try {
        market = BinaryJumpMarket::from_market(ctx.spec);
    } catch (const std::invalid_argument& e) {
        throw Failure(kBadConfig, "bad_config", std::string("outperform needs a binary jump market: ") + e.what());
    }
    if (!(flags.t_max >= 0.0) || !(flags.t_step > 0.0)) {
        throw Failure(kBadConfig, "bad_config", "need --t-max >= 0 and --t-step > 0");
    }
    double b = 0.0;
    if (flags.b) {
        b = *flags.b;
    } else {
        const auto sol = kelly_or_fail(ctx.spec, KellyOptions{});
        if (!sol.converged) throw Failure(kNoConvergence, "no_convergence", "Kelly solver did not converge");
        b = sol.b_star[0];
    }
    const double c = flags.c.value_or(1.0);
    const double d = flags.d.value_or(1.1);
    for (double v : {b, c, d}) {
        if (!market.admissible(v)) throw Failure(kBadConfig, "bad_config", "rule " + num(v) + " is not admissible");
    }

    std::vector<double> times;
    const auto steps = static_cast<long>(std::floor(flags.t_max / flags.t_step * (1.0 + 1e-12)));
    for (long k = 0; k <= steps; ++k) times.push_back(static_cast<double>(k) * flags.t_step);

    const auto bc = outperformance_curve(b, c, times, market, flags.tol);
    const auto bd = outperformance_curve(b, d, times, market, flags.tol);
    const auto cd = outperformance_curve(c, d, times, market, flags.tol);

    Sink sink(common.out_file, out);
    auto& os = sink.stream();
    header(os, "outperform", ctx, common,
           {{"b", b}, {"c", c}, {"d", d}, {"t_max", flags.t_max}, {"t_step", flags.t_step}, {"tol", flags.tol}});
    os << "t,P(b beats c),P(b beats d),P(c beats d)\n";
    for (std::size_t i = 0; i < times.size(); ++i) {
        os << num(times[i]) << "," << num(bc[i]) << "," << num(bd[i]) << "," << num(cd[i]) << "\n";
    }
    return kOk;
}

struct PhiFlags {
    std::string w1 = "degenerate";
    std::string w2 = "degenerate";
    std::string phi = "indicator";
    std::string b = "kelly";
    std::string c = "kelly";
    double t = 1.0;
    std::size_t paths = 100000;
    bool primitive = false;
};

int cmd_phi_game(const Common& common, const PhiFlags& flags, std::ostream& out)
{
    const auto w1 = parse_randomization(flags.w1);
    const auto w2 = parse_randomization(flags.w2);
    const auto phi = parse_phi(flags.phi);
    json params{{"w1", w1.describe()}, {"w2", w2.describe()}, {"phi", phi.describe()}, {"n", flags.paths},
                {"seed", common.seed}};
    Estimate est;
    if (flags.primitive) {
        params["game"] = "primitive";
        est = primitive_game_payoff(w1, w2, phi, flags.paths, common.seed);
    } else {
        const auto ctx = load(common);
        require_valid_market(ctx.spec);
        const auto b = parse_rule(flags.b, ctx.spec, KellyOptions{});
        const auto c = parse_rule(flags.c, ctx.spec, KellyOptions{});
        if (!is_admissible(b.weights, ctx.spec) || !is_admissible(c.weights, ctx.spec)) {
            throw Failure(kBadConfig, "bad_config", "rules b and c must be admissible");
        }
        params["game"] = "investment";
        params["b"] = to_json(b.weights);
        params["c"] = to_json(c.weights);
        params["t"] = flags.t;
        params["market"] = market_to_json(ctx.spec);
        est = investment_game_payoff(w1, w2, b.weights, c.weights, phi, flags.t, ctx.spec, flags.paths, common.seed);
    }
    json doc{{"estimate", est.mean}, {"stderr", est.std_error}, {"n", est.n}, {"parameters", params}};
    Sink sink(common.out_file, out);
    sink.stream() << doc.dump(2) << "\n";
    return kOk;
}

void add_common(CLI::App* sub, Common& common)
{
    sub->add_option("--market", common.market_file, "Market JSON file");
    sub->add_flag("--paper-example", common.paper_example,
                  "Use the built-in example market (nu=0.07, sigma=0.15, r=0.03, lambda=1, Shannon's Demon jumps)");
    sub->add_option("--out", common.out_file, "Write the artifact here instead of stdout");
    sub->add_option("--seed", common.seed, "Random seed")->capture_default_str();
}

void add_kelly(CLI::App* sub, KellyFlags& flags)
{
    sub->add_option("--tol", flags.tol, "Gradient sup-norm tolerance")->capture_default_str();
    sub->add_option("--max-iter", flags.max_iter, "Newton iteration cap")->capture_default_str();
    sub->add_flag("--allow-arbitrage", flags.allow_arbitrage, "Run the solver even if the jump support admits arbitrage");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Kelly rule and investment phi-game toolkit for jump-diffusion markets", "jdkelly"};
    app.require_subcommand(1);

    Common common;
    KellyFlags kelly;
    int grid = 201;
    std::string saddle_report;
    SimulateFlags sim;
    OutperformFlags perf;
    PhiFlags phi;

    auto* validate_cmd = app.add_subcommand("validate", "Check market invariants, no-arbitrage and the admissible set");
    add_common(validate_cmd, common);

    auto* kelly_cmd = app.add_subcommand("kelly", "Solve for the Kelly rule; JSON report");
    add_common(kelly_cmd, common);
    add_kelly(kelly_cmd, kelly);

    auto* saddle_cmd = app.add_subcommand("saddle", "Payoff kernel surface 100*pi(b,c) as CSV plus saddle verification");
    add_common(saddle_cmd, common);
    add_kelly(saddle_cmd, kelly);
    saddle_cmd->add_option("--grid", grid, "Grid points across the admissible interval")->capture_default_str();
    saddle_cmd->add_option("--report", saddle_report, "Also write the saddle verification report (JSON) here");

    auto* sim_cmd = app.add_subcommand("simulate", "Simulate wealth paths (CSV) or terminal statistics over --paths");
    add_common(sim_cmd, common);
    sim_cmd->add_option("--horizon", sim.horizon, "Horizon T in years")->capture_default_str();
    sim_cmd->add_option("--dt", sim.dt, "Output sampling step in years")->capture_default_str();
    sim_cmd->add_option("--rules", sim.rules,
                        "Rules as [name=]v1[:v2...] or [name=]kelly, comma separated (default kelly,1,1.1)")
        ->delimiter(',');
    sim_cmd->add_option("--paths", sim.paths, "Statistics mode: number of independent paths");
    sim_cmd->add_flag("--allow-inadmissible", sim.allow_inadmissible, "Allow rules that a jump can bankrupt");

    auto* perf_cmd = app.add_subcommand("outperform", "Outperformance probabilities over t (CSV)");
    add_common(perf_cmd, common);
    perf_cmd->add_option("--t-max", perf.t_max, "Largest game length")->capture_default_str();
    perf_cmd->add_option("--t-step", perf.t_step, "Spacing of the t grid")->capture_default_str();
    perf_cmd->add_option("--b", perf.b, "First rule (default: Kelly rule)");
    perf_cmd->add_option("--c", perf.c, "Second rule (default 1)");
    perf_cmd->add_option("--d", perf.d, "Third rule (default 1.1)");
    perf_cmd->add_option("--tol", perf.tol, "Poisson tail truncation tolerance")->capture_default_str();

    auto* phi_cmd = app.add_subcommand("phi-game", "Monte Carlo payoff of the investment (or primitive) phi-game");
    add_common(phi_cmd, common);
    phi_cmd->add_option("--w1", phi.w1, "degenerate | uniform | lognormal:s | discrete:v:p,v:p,...")->capture_default_str();
    phi_cmd->add_option("--w2", phi.w2, "Randomization of player 2")->capture_default_str();
    phi_cmd->add_option("--phi", phi.phi, "indicator[:alpha] | power:gamma | ratio-share")->capture_default_str();
    phi_cmd->add_option("--b", phi.b, "Rule of player 1: v1[:v2...] or kelly")->capture_default_str();
    phi_cmd->add_option("--c", phi.c, "Rule of player 2")->capture_default_str();
    phi_cmd->add_option("--t", phi.t, "Game length")->capture_default_str();
    phi_cmd->add_option("--paths", phi.paths, "Monte Carlo sample size")->capture_default_str();
    phi_cmd->add_flag("--primitive", phi.primitive, "Evaluate E[phi(W1/W2)] without a market");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << json{{"error", {{"code", kBadConfig}, {"kind", "usage"}, {"message", e.what()}}}}.dump() << "\n";
        return kBadConfig;
    }

    try {
        if (validate_cmd->parsed()) return cmd_validate(common, out);
        if (kelly_cmd->parsed()) return cmd_kelly(common, kelly, out);
        if (saddle_cmd->parsed()) return cmd_saddle(common, kelly, grid, saddle_report, out);
        if (sim_cmd->parsed()) return cmd_simulate(common, sim, out);
        if (perf_cmd->parsed()) return cmd_outperform(common, perf, out);
        if (phi_cmd->parsed()) return cmd_phi_game(common, phi, out);
    } catch (const Failure& f) {
        err << json{{"error", {{"code", f.code}, {"kind", f.kind}, {"message", f.what()}}}}.dump() << "\n";
        return f.code;
    } catch (const std::invalid_argument& e) {
        err << json{{"error", {{"code", kBadConfig}, {"kind", "bad_config"}, {"message", e.what()}}}}.dump() << "\n";
        return kBadConfig;
    } catch (const std::exception& e) {
        err << json{{"error", {{"code", kInternalError}, {"kind", "internal"}, {"message", e.what()}}}}.dump() << "\n";
        return kInternalError;
    }
    return kInternalError;
}

}  // namespace jdkelly::cli
