#include "undom/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <limits>
#include <optional>
#include <ostream>
#include <string>

#include "undom/bounds.hpp"
#include "undom/core.hpp"
#include "undom/errors.hpp"
#include "undom/lottery.hpp"
#include "undom/profiles.hpp"
#include "undom/search.hpp"
#include "undom/verify.hpp"

namespace undom {

namespace {

using json = nlohmann::ordered_json;

// Integers that fit in 64 bits are emitted as numbers, larger ones as decimal strings.
json integer_json(const big_int& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return x.convert_to<std::int64_t>();
    return x.str();
}

json fraction_json(const rational& r) {
    return {{"num", integer_json(numerator(r))}, {"den", integer_json(denominator(r))}, {"value", to_double(r)}};
}

json fraction_json(const rational_threshold& a) { return fraction_json(a.value()); }

json committee_json(const committee& s) { return json(s.members()); }

json certificate_json(const certificate& c) {
    return {{"worst_candidate", c.worst_candidate}, {"count", c.count}, {"fraction", fraction_json(c.fraction)}};
}

json report_json(const verification_report& r) {
    json cases = json::array();
    for (const auto& c : r.cases)
        cases.push_back({{"instance", c.instance},
                         {"quantity", fraction_json(c.quantity)},
                         {"bound", fraction_json(c.bound)},
                         {"margin", fraction_json(c.margin)},
                         {"exact", c.exact},
                         {"ok", c.ok}});
    return {{"suite", r.suite}, {"passed", r.passed}, {"cases", cases}};
}

json rows_json(const std::vector<bound_row>& rows) {
    json a = json::array();
    for (const auto& r : rows)
        a.push_back({{"k", r.k}, {"lower", r.lower}, {"thm1", r.thm1}, {"thm4", r.thm4}, {"thm4_t", r.thm4_t},
                     {"dp", r.dp}});
    return a;
}

void emit(std::ostream& out, const std::string& command, json inputs, json result) {
    json envelope;
    envelope["schema_version"] = "1";
    envelope["command"] = command;
    envelope["inputs"] = std::move(inputs);
    envelope["result"] = std::move(result);
    out << envelope.dump(2) << '\n';
}

struct options {
    unsigned threads = 1;

    // gen
    std::string family;
    int m = 0, s = 0, t = 0, n = 0;
    std::uint64_t seed = 0;
    std::string out_path;

    std::string profile;
    std::string committee_text;
    std::string alpha_text = "1/2";
    std::uint64_t budget = search_limits{}.node_budget;

    // lottery
    int k = 0;
    std::string g_text;
    double tol = solver_options{}.tolerance;
    int iters = solver_options{}.max_iterations;

    // bounds
    int k_max = 0;
    std::string base = "thm1";
    std::string format = "csv";
    bool figure = false;

    // search
    std::string strategy;
    double gamma = recursive_params{}.gamma;
    double beta = recursive_params{}.beta;
    std::string lottery_alpha = "1"; ///< attacker budget for `lottery` and for each recursive level
    int samples = 200;

    // verify
    std::string suite;
    std::string delta;
};

int run_gen(const options& o, std::ostream& out) {
    election e = [&] {
        if (o.family == "cyclic") return gen_cyclic(o.m);
        if (o.family == "cycle-product") return gen_cycle_product(o.s, o.t);
        if (o.family == "minimal-dim3") return gen_minimal_dim3();
        if (o.family == "impartial") return gen_impartial_culture(o.n, o.m, o.seed);
        return gen_full_factorial(o.m);
    }();
    json inputs = {{"family", o.family}};
    if (o.family == "cyclic" || o.family == "factorial") inputs["m"] = o.m;
    if (o.family == "cycle-product") inputs.update({{"s", o.s}, {"t", o.t}});
    if (o.family == "impartial") inputs.update({{"n", o.n}, {"m", o.m}, {"seed", o.seed}});
    if (o.out_path.empty()) {
        out << serialize_election(e);
        return 0;
    }
    write_election_file(o.out_path, e);
    inputs["out"] = o.out_path;
    emit(out, "gen", inputs, {{"file", o.out_path}, {"m", e.num_candidates()}, {"n", e.num_voters()}});
    return 0;
}

int run_check(const options& o, std::ostream& out) {
    const election e = read_election_file(o.profile);
    const committee s = committee::parse(o.committee_text);
    s.check_against(e);
    const auto alpha = rational_threshold::parse(o.alpha_text);
    const bool ok = is_alpha_undominated(e, s, alpha);
    emit(out, "check", {{"profile", o.profile}, {"committee", s.str()}, {"alpha", alpha.str()}},
         {{"committee", committee_json(s)},
          {"undominated", ok},
          {"certificate", certificate_json(certify(e, s))},
          {"alpha", fraction_json(alpha)}});
    return ok ? 0 : 1;
}

int run_dim(const options& o, std::ostream& out) {
    const election e = read_election_file(o.profile);
    const auto r = condorcet_dimension(e, {o.budget, o.threads});
    emit(out, "dim", {{"profile", o.profile}, {"budget", o.budget}},
         {{"dimension", r.dimension},
          {"witness", committee_json(r.witness)},
          {"certificate", certificate_json(certify(e, r.witness))}});
    return 0;
}

solver_options solver(const options& o) {
    solver_options s;
    s.tolerance = o.tol;
    s.max_iterations = o.iters;
    s.seed = o.seed;
    return s;
}

json lottery_json(const election& e, int k, const lottery_result& r) {
    double worst = 0.0;
    for (candidate_id a = 1; a <= e.num_candidates(); ++a) worst = std::max(worst, expected_domination(e, r.y, k, a));
    return {{"y", r.y.weights()},
            {"achieved_value", r.achieved_value},
            {"target_value", r.target_value},
            {"iterations", r.iterations},
            {"converged", r.converged},
            {"max_expected_domination", worst}};
}

int run_lottery(const options& o, std::ostream& out) {
    const election e = read_election_file(o.profile);
    const auto alpha = rational_threshold::parse(o.lottery_alpha);
    const auto g = activation_spec::parse(o.g_text.empty() ? "identity" : o.g_text, o.k);
    const json inputs = {{"profile", o.profile}, {"k", o.k},          {"alpha", alpha.str()}, {"g", g.str()},
                         {"tol", o.tol},         {"iters", o.iters}, {"seed", o.seed}};
    try {
        const auto r = solve_undominated_lottery(e, o.k, alpha, g, solver(o));
        emit(out, "lottery", inputs, lottery_json(e, o.k, r));
        return 0;
    } catch (const convergence_error& err) {
        emit(out, "lottery", inputs, lottery_json(e, o.k, err.best()));
        throw;
    }
}

int run_bounds(const options& o, std::ostream& out) {
    if (o.k_max < 1) throw input_error("--k-max must be positive");
    const dp_base base = o.base == "thm4" ? dp_base::thm4 : dp_base::thm1;
    const auto rows = theorem7_table(o.k_max, base);
    if (o.format == "csv") {
        out << (o.figure ? figure_csv(rows) : bounds_csv(rows));
        return 0;
    }
    json result = {{"rows", rows_json(rows)}, {"first_dp_improvement", nullptr}};
    if (const int k = first_dp_improvement(rows, base); k > 0) result["first_dp_improvement"] = k;
    emit(out, "bounds", {{"k_max", o.k_max}, {"base", o.base}}, result);
    return 0;
}

int run_search(const options& o, std::ostream& out) {
    const election e = read_election_file(o.profile);
    const auto alpha = rational_threshold::parse(o.alpha_text);
    json inputs = {{"profile", o.profile}, {"k", o.k}, {"alpha", alpha.str()}, {"strategy", o.strategy}};
    search_result r;
    if (o.strategy == "brute") {
        r = brute_force_search(e, o.k, alpha, {o.budget, o.threads});
    } else if (o.strategy == "greedy") {
        r = greedy_halving(e);
    } else if (o.strategy == "lottery") {
        const auto g = activation_spec::parse(o.g_text.empty() ? "kth-root" : o.g_text, o.k);
        inputs.update({{"g", g.str()}, {"samples", o.samples}, {"seed", o.seed}});
        r = lottery_search(e, o.k, alpha, g, o.samples, o.seed, solver(o));
    } else {
        recursive_params p;
        p.gamma = o.gamma;
        p.beta = o.beta;
        p.lottery_alpha = rational_threshold::parse(o.lottery_alpha);
        inputs.update({{"gamma", o.gamma}, {"beta", o.beta}, {"lottery_alpha", p.lottery_alpha.str()}, {"seed", o.seed}});
        r = recursive_search(e, o.k, alpha, p, o.seed, solver(o));
    }
    emit(out, "search", inputs,
         {{"found", r.found.has_value()},
          {"committee", r.found ? committee_json(*r.found) : json(nullptr)},
          {"best", r.best ? committee_json(*r.best) : json(nullptr)},
          {"certificate", certificate_json(r.cert)},
          {"strategy", r.strategy},
          {"stats",
           {{"nodes", r.stats.nodes},
            {"samples", r.stats.samples},
            {"iterations", r.stats.iterations},
            {"fallbacks", r.stats.fallbacks}}}});
    return r.found ? 0 : 1;
}

int run_verify(const options& o, std::ostream& out) {
    verification_report r;
    json inputs = {{"suite", o.suite}};
    if (o.suite == "thm6") {
        r = verify_theorem6(o.k, o.t, {o.budget, o.threads});
        inputs.update({{"k", o.k}, {"t", o.t}});
    } else if (o.suite == "cor1") {
        r = verify_cor1_tightness(o.m, o.k);
        inputs.update({{"m", o.m}, {"k", o.k}});
    } else {
        if (o.profile.empty() || o.delta.empty()) throw input_error("claim-high needs --profile and --delta");
        const election e = read_election_file(o.profile);
        const auto d = parse_distribution(o.delta);
        const auto alpha = rational_threshold::parse(o.alpha_text);
        const auto g = activation_spec::parse(o.g_text.empty() ? "identity" : o.g_text, std::max(1, o.k));
        r = verify_claim_high(e, d, alpha, g);
        inputs.update({{"profile", o.profile}, {"delta", o.delta}, {"alpha", alpha.str()}, {"g", g.str()}});
    }
    emit(out, "verify", inputs, report_json(r));
    return r.passed ? 0 : 1;
}

} // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    options o;
    CLI::App app{"Alpha-undominated committees: checks, searches, lotteries and bound tables"};
    app.require_subcommand(1);
    app.add_option("--threads", o.threads, "Worker threads for exhaustive enumeration")->check(CLI::Range(1u, 256u));

    auto* gen = app.add_subcommand("gen", "Generate a profile");
    gen->add_option("--family", o.family)
        ->required()
        ->check(CLI::IsMember({"cyclic", "cycle-product", "minimal-dim3", "impartial", "factorial"}));
    gen->add_option("--m", o.m, "Candidates (cyclic, impartial, factorial)");
    gen->add_option("--s", o.s, "Outer cycle length (cycle-product)");
    gen->add_option("--t", o.t, "Inner cycle length (cycle-product)");
    gen->add_option("--n", o.n, "Voters (impartial)");
    gen->add_option("--seed", o.seed);
    gen->add_option("--out", o.out_path, "Output file; profile text goes to stdout when omitted");

    auto* check = app.add_subcommand("check", "Exact alpha-undomination check");
    check->add_option("--profile", o.profile)->required();
    check->add_option("--committee", o.committee_text)->required();
    check->add_option("--alpha", o.alpha_text, "Threshold P/Q")->required();

    auto* dim = app.add_subcommand("dim", "Condorcet dimension");
    dim->add_option("--profile", o.profile)->required();
    dim->add_option("--budget", o.budget, "Committee evaluation budget");

    auto* lottery = app.add_subcommand("lottery", "Solve the confined-attacker lottery");
    lottery->add_option("--profile", o.profile)->required();
    lottery->add_option("--k", o.k)->required();
    lottery->add_option("--alpha", o.lottery_alpha, "Attacker budget P/Q");
    lottery->add_option("--g", o.g_text, "identity, kth-root or relu:T");
    lottery->add_option("--tol", o.tol);
    lottery->add_option("--iters", o.iters);
    lottery->add_option("--seed", o.seed);

    auto* bounds = app.add_subcommand("bounds", "Alpha-versus-k bound table");
    bounds->add_option("--k-max", o.k_max)->required();
    bounds->add_option("--base", o.base)->check(CLI::IsMember({"thm1", "thm4"}));
    bounds->add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}));
    bounds->add_flag("--figure", o.figure, "CSV columns k,thm4,lower,stable16");

    auto* search = app.add_subcommand("search", "Search for an alpha-undominated committee");
    search->add_option("--profile", o.profile)->required();
    search->add_option("--k", o.k)->required();
    search->add_option("--alpha", o.alpha_text)->required();
    search->add_option("--strategy", o.strategy)
        ->required()
        ->check(CLI::IsMember({"brute", "greedy", "lottery", "recursive"}));
    search->add_option("--seed", o.seed);
    search->add_option("--gamma", o.gamma);
    search->add_option("--beta", o.beta);
    search->add_option("--lottery-alpha", o.lottery_alpha, "Attacker budget of each recursive level's lottery");
    search->add_option("--samples", o.samples, "Committees drawn by the lottery strategy");
    search->add_option("--g", o.g_text, "Activation for the lottery strategy");
    search->add_option("--budget", o.budget);
    search->add_option("--tol", o.tol);
    search->add_option("--iters", o.iters);

    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("--suite", o.suite)->required()->check(CLI::IsMember({"thm6", "cor1", "claim-high"}));
    verify->add_option("--k", o.k);
    verify->add_option("--t", o.t);
    verify->add_option("--m", o.m);
    verify->add_option("--profile", o.profile);
    verify->add_option("--delta", o.delta, "Distribution such as \"1,4=9/20 2,5=7/20 3,6=1/5\"");
    verify->add_option("--alpha", o.alpha_text);
    verify->add_option("--g", o.g_text);
    verify->add_option("--budget", o.budget);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        if (*gen) return run_gen(o, out);
        if (*check) return run_check(o, out);
        if (*dim) return run_dim(o, out);
        if (*lottery) return run_lottery(o, out);
        if (*bounds) return run_bounds(o, out);
        if (*search) return run_search(o, out);
        return run_verify(o, out);
    } catch (const input_error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const budget_error& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    } catch (const convergence_error& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
}

} // namespace undom
