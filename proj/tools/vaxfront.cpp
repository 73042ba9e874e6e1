#include "vaxfront/convexity.hpp"
#include "vaxfront/errors.hpp"
#include "vaxfront/fixtures.hpp"
#include "vaxfront/frontier.hpp"
#include "vaxfront/independent.hpp"
#include "vaxfront/spectral.hpp"
#include "vaxfront/structure.hpp"
#include "vaxfront/verification.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace vaxfront;
using nlohmann::json;

namespace {

constexpr int kInputError = 2;
constexpr int kVerificationFailure = 1;

struct Inputs {
    std::string model;
    std::string grid;
    std::string cost = "uniform";
    std::vector<double> coefficients;
    std::uint64_t seed = 0;
    int resolution = 64;
};

void add_model_options(CLI::App* cmd, Inputs& in)
{
    cmd->add_option("--model,-m", in.model, "model JSON file or bundled name (" +
                                                [] {
                                                    std::string names;
                                                    for (const auto& b : fixtures::bundled()) {
                                                        names += (names.empty() ? "" : ", ") + b.name;
                                                    }
                                                    return names;
                                                }() +
                                                ")");
    cmd->add_option("--grid", in.grid, "grid kernel JSON file, used instead of --model");
}

void add_cost_options(CLI::App* cmd, Inputs& in)
{
    cmd->add_option("--cost", in.cost, "uniform or affine")->check(CLI::IsMember({"uniform", "affine"}));
    cmd->add_option("--coefficients", in.coefficients, "affine cost coefficients, one per group")->delimiter(',');
}

MetapopModel load(const Inputs& in)
{
    if (!in.grid.empty()) {
        return grid_to_model(load_grid(in.grid));
    }
    if (in.model.empty()) {
        throw ValidationError("a model is required (--model or --grid)");
    }
    if (std::filesystem::exists(in.model)) {
        return load_model(in.model);
    }
    for (const auto& b : fixtures::bundled()) {
        if (b.name == in.model) {
            return b.model;
        }
    }
    throw ValidationError("no model file or bundled model named '" + in.model + "'");
}

CostFunction make_cost(const Inputs& in, const MetapopModel& m)
{
    if (in.cost == "uniform") {
        if (!in.coefficients.empty()) {
            throw ValidationError("--coefficients needs --cost affine");
        }
        return CostFunction::uniform();
    }
    if (static_cast<int>(in.coefficients.size()) != m.size()) {
        throw DimensionMismatch("affine cost needs " + std::to_string(m.size()) + " coefficients");
    }
    return CostFunction::affine(Eigen::Map<const Vector>(in.coefficients.data(), m.size()));
}

json to_json(const IndexSet& s) { return json(std::vector<int>(s.begin(), s.end())); }

json to_json(const Vector& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

json to_json(const ConvexityWitness& w)
{
    return {{"eta0", to_json(w.eta0)}, {"eta1", to_json(w.eta1)}, {"t", w.t}, {"gap", w.gap}};
}

void emit(const json& doc, const std::string& out)
{
    const std::string text = doc.dump(2) + "\n";
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (!f) {
        throw ValidationError("cannot write " + out);
    }
    f << text;
}

std::string strategy_field(const Strategy& s)
{
    std::string out;
    char buf[32];
    for (int i = 0; i < s.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.9g", s[i]);
        out += (i ? ";" : "") + std::string(buf);
    }
    return out;
}

json curve_json(const FrontierCurve& c)
{
    json pts = json::array();
    for (const auto& p : c.points) {
        pts.push_back({{"cost", p.cost},
                       {"loss", p.loss},
                       {"strategy", to_json(p.strategy.values())},
                       {"status", to_string(p.status)}});
    }
    return {{"kind", to_string(c.kind)},
            {"resolution", c.grid_resolution},
            {"threshold_cost", c.threshold_cost},
            {"r0", c.r0},
            {"max_cost", c.max_cost},
            {"jumps", c.jumps},
            {"points", pts}};
}

std::vector<double> parse_reals(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw ParseError("not a number: '" + item + "'");
        }
        if (used != item.size() && item.find_first_not_of(" \t", used) != std::string::npos) {
            throw ParseError("not a number: '" + item + "'");
        }
        out.push_back(v);
    }
    return out;
}

Strategy read_strategy(const std::string& inline_values, const std::string& file, int n)
{
    std::vector<double> values;
    if (!file.empty()) {
        std::ifstream f(file);
        if (!f) {
            throw ParseError("cannot open " + file);
        }
        json doc;
        try {
            doc = json::parse(f);
        } catch (const json::parse_error& e) {
            throw ParseError(std::string("malformed JSON: ") + e.what());
        }
        if (doc.is_object() && doc.contains("eta")) {
            doc = doc.at("eta");
        }
        if (!doc.is_array()) {
            throw ValidationError("strategy file must hold an array or {\"eta\": [...]}");
        }
        for (const auto& v : doc) {
            if (!v.is_number()) {
                throw ValidationError("strategy entries must be numbers");
            }
            values.push_back(v.get<double>());
        }
    } else if (!inline_values.empty()) {
        values = parse_reals(inline_values);
    } else {
        throw ValidationError("a strategy is required (--eta or --eta-file)");
    }
    if (static_cast<int>(values.size()) != n) {
        throw DimensionMismatch("strategy has " + std::to_string(values.size()) + " entries, model has " +
                                std::to_string(n) + " groups");
    }
    return Strategy(Eigen::Map<const Vector>(values.data(), n));
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Effective reproduction numbers, convexity and vaccination frontiers for metapopulation models"};
    app.require_subcommand(1);
    Inputs in;
    std::string out;

    auto* compute = app.add_subcommand("compute", "R_e, R_0 and cost of one strategy");
    add_model_options(compute, in);
    add_cost_options(compute, in);
    std::string eta_inline;
    std::string eta_file;
    compute->add_option("--eta", eta_inline, "comma-separated non-vaccinated fractions");
    compute->add_option("--eta-file", eta_file, "JSON array of non-vaccinated fractions");

    double threshold = 0.0;
    auto* decompose = app.add_subcommand("decompose", "Frobenius decomposition into atoms");
    add_model_options(decompose, in);
    decompose->add_option("--threshold", threshold, "entries at or below this count as zero")
        ->check(CLI::NonNegativeNumber);

    auto* classify_cmd = app.add_subcommand("classify", "symmetrizability, inertia and convexity verdict");
    add_model_options(classify_cmd, in);
    classify_cmd->add_option("--threshold", threshold, "support threshold for the structure flags")
        ->check(CLI::NonNegativeNumber);
    int trials = 0;
    classify_cmd->add_option("--trials", trials, "random chords probed when the verdict is Indeterminate")
        ->check(CLI::NonNegativeNumber);
    classify_cmd->add_option("--seed", in.seed, "probe seed");

    bool force = false;
    auto* cstar = app.add_subcommand("cstar", "eradication cost from maximum independent sets");
    add_model_options(cstar, in);
    add_cost_options(cstar, in);
    cstar->add_flag("--force", force, "allow exact search up to 64 groups");

    SolverOptions solver;
    std::string kind = "both";
    bool plot_data = false;
    int samples = 2000;
    auto* frontier = app.add_subcommand("frontier", "Pareto and anti-Pareto frontiers");
    add_model_options(frontier, in);
    add_cost_options(frontier, in);
    frontier->add_option("--resolution", in.resolution, "cost grid intervals")->check(CLI::Range(2, 100000));
    frontier->add_option("--kind", kind, "pareto, anti or both")->check(CLI::IsMember({"pareto", "anti", "both"}));
    frontier->add_option("--out,-o", out, "output file (default: standard output)");
    frontier->add_flag("--plot-data", plot_data, "JSON with both frontiers and a feasible-region scatter");
    frontier->add_option("--samples", samples, "random scatter points for --plot-data")->check(CLI::PositiveNumber);
    frontier->add_option("--seed", in.seed, "solver and sampling seed");
    frontier->add_option("--starts", solver.starts, "multi-start count for non-convex problems")
        ->check(CLI::PositiveNumber);
    frontier->add_option("--threads", solver.threads, "worker threads (0 = VAXFRONT_THREADS or all cores)")
        ->check(CLI::NonNegativeNumber);
    frontier->add_flag("--heuristic", solver.allow_heuristic, "allow ascent without vertex enumeration above 20 groups");
    frontier->add_flag("--cross-validate", solver.cross_validate, "also scan a 1/64 grid for at most 4 groups");

    AcceptanceOptions acceptance;
    auto* verify = app.add_subcommand("verify-paper", "run the bundled acceptance checks");
    verify->add_option("--only", acceptance.only, "criterion tags to run")->delimiter(',');
    verify->add_flag("--inject-fault", acceptance.inject_fault, "perturb the bundled fixtures (harness self-test)");
    verify->add_option("--threads", acceptance.threads, "worker threads for frontier sweeps")
        ->check(CLI::NonNegativeNumber);

    bool no_grid = false;
    auto* sample = app.add_subcommand("sample", "(cost, R_e) pairs over the feasible region");
    add_model_options(sample, in);
    add_cost_options(sample, in);
    sample->add_option("--samples", samples, "random strategies")->check(CLI::PositiveNumber);
    sample->add_option("--seed", in.seed, "sampling seed");
    sample->add_flag("--no-grid", no_grid, "skip the 1/8 grid of strategies with two fractional groups");
    sample->add_option("--out,-o", out, "output file (default: standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    try {
        if (*verify) {
            bool all = true;
            for (const auto& r : run_acceptance(acceptance)) {
                std::cout << format_result(r) << std::endl;
                all = all && r.pass;
            }
            return all ? 0 : kVerificationFailure;
        }

        const MetapopModel model = load(in);

        if (*compute) {
            const CostFunction c = make_cost(in, model);
            const Strategy eta = read_strategy(eta_inline, eta_file, model.size());
            emit({{"re", effective_re(model, eta)},
                  {"r0", basic_reproduction_number(model)},
                  {"cost", cost(c, model, eta)},
                  {"seed", in.seed}},
                 "");
        } else if (*decompose) {
            const FrobeniusDecomposition d = frobenius_decompose(model, threshold);
            json atoms = json::array();
            for (const auto& a : d.atoms) {
                atoms.push_back(to_json(a));
            }
            emit({{"atoms", atoms},
                  {"remainder", to_json(d.remainder)},
                  {"atom_radii", d.atom_radii},
                  {"order", d.order},
                  {"threshold", threshold}},
                 "");
        } else if (*classify_cmd) {
            const SymmetrizabilityResult sym = symmetrize(model);
            ConvexityVerdict v = classify_convexity(model);
            json doc{{"symmetrizable", sym.symmetrizable}};
            if (sym.d) {
                doc["d"] = to_json(*sym.d);
            }
            if (v.inertia) {
                doc["inertia"] = {v.inertia->first, v.inertia->second};
            }
            if (v.verdict == Verdict::Indeterminate && trials > 0) {
                const ConvexityVerdict probe = probe_convexity(model, trials, in.seed);
                v.convexity_violation = probe.convexity_violation;
                v.concavity_violation = probe.concavity_violation;
                doc["probe"] = {{"trials", trials}, {"seed", in.seed}, {"consistent_with", to_string(probe.verdict)}};
            }
            doc["verdict"] = to_string(v.verdict);
            doc["reason"] = to_string(v.reason);
            if (v.convexity_violation || v.concavity_violation) {
                json w = json::object();
                if (v.convexity_violation) {
                    w["convexity_violation"] = to_json(*v.convexity_violation);
                }
                if (v.concavity_violation) {
                    w["concavity_violation"] = to_json(*v.concavity_violation);
                }
                doc["witness"] = w;
            }
            const Classification cl = classify(model, threshold);
            doc["structure"] = {{"irreducible", cl.irreducible},
                                {"quasi_irreducible", cl.quasi_irreducible},
                                {"monatomic", cl.monatomic}};
            if (cl.atom) {
                doc["structure"]["atom"] = to_json(*cl.atom);
                doc["structure"]["infected"] = to_json(*cl.infected);
            }
            emit(doc, "");
        } else if (*cstar) {
            const CostFunction c = make_cost(in, model);
            const EradicationResult e = eradication_cost(model, c, force);
            if (!e.exact) {
                std::cerr << "warning: support is not symmetric; cstar is an upper bound\n";
            }
            emit({{"cstar", e.cstar}, {"set", to_json(e.set)}, {"alpha", e.alpha}, {"exact", e.exact}}, "");
        } else if (*frontier) {
            const CostFunction c = make_cost(in, model);
            solver.seed = in.seed;
            std::vector<FrontierCurve> curves;
            if (kind != "anti" || plot_data) {
                curves.push_back(pareto_frontier(model, c, in.resolution, solver));
            }
            if (kind != "pareto" || plot_data) {
                curves.push_back(anti_pareto_frontier(model, c, in.resolution, solver));
            }
            if (plot_data) {
                json feasible = json::array();
                for (const auto& s : feasible_region_sample(model, c, samples, in.seed)) {
                    feasible.push_back({s.cost, s.loss});
                }
                emit({{"seed", in.seed},
                      {"resolution", in.resolution},
                      {"pareto", curve_json(curves[0])},
                      {"anti", curve_json(curves[1])},
                      {"feasible", feasible}},
                     out);
            } else {
                std::ostringstream csv;
                csv << "# seed=" << in.seed << " resolution=" << in.resolution << "\n";
                csv << "cost,loss,strategy,kind,status\n";
                char buf[64];
                for (const auto& curve : curves) {
                    for (const auto& p : curve.points) {
                        std::snprintf(buf, sizeof buf, "%.17g,%.17g,", p.cost, p.loss);
                        csv << buf << strategy_field(p.strategy) << "," << to_string(curve.kind) << ","
                            << to_string(p.status) << "\n";
                    }
                }
                if (out.empty() || out == "-") {
                    std::cout << csv.str();
                } else {
                    std::ofstream f(out);
                    if (!f) {
                        throw ValidationError("cannot write " + out);
                    }
                    f << csv.str();
                }
            }
        } else if (*sample) {
            const CostFunction c = make_cost(in, model);
            json pts = json::array();
            for (const auto& s : feasible_region_sample(model, c, samples, in.seed, !no_grid)) {
                pts.push_back({s.cost, s.loss});
            }
            emit({{"seed", in.seed}, {"samples", samples}, {"grid", !no_grid}, {"points", pts}}, out);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return 0;
}
