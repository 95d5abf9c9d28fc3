#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "hodge/expr.hpp"
#include "hodge/json_io.hpp"
#include "hodge/verify.hpp"

namespace {

using namespace hodge;

std::vector<Rational> parse_rational_list(const std::string& text, int expected, const char* what) {
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(rat_from_string(item));
    if (expected > 0 && static_cast<int>(out.size()) != expected)
        throw std::invalid_argument(std::string(what) + " needs exactly " + std::to_string(expected) +
                                    " comma-separated rationals");
    return out;
}

void print_human(const std::vector<FunctionalReport>& reports, std::ostream& os) {
    std::size_t matched = 0;
    for (const auto& r : reports) {
        os << (r.match ? "[ ok ] " : "[FAIL] ") << r.name;
        if (r.kind == FunctionalReport::Kind::Density)
            os << "  lhs=" << r.lhs.to_string() << "  rhs=" << r.rhs.to_string();
        if (r.curvature_seed != 0) os << "  seed=" << r.curvature_seed;
        if (!r.inputs.empty()) os << "  " << r.inputs;
        os << "\n";
        if (r.match) ++matched;
    }
    os << matched << "/" << reports.size() << " reports match\n";
}

int emit(const std::string& command, const Json& config, const std::vector<FunctionalReport>& reports,
         const std::string& output) {
    bool ok = all_match(reports);
    if (output == "json") {
        Json j;
        j["command"] = command;
        j["config"] = config;
        Json arr = Json::array();
        for (const auto& r : reports) arr.push_back(report_to_json(r));
        j["reports"] = std::move(arr);
        j["all_match"] = ok;
        std::cout << j.dump(2) << "\n";
    } else {
        print_human(reports, std::cout);
    }
    if (!ok) {
        for (const auto& r : reports)
            if (!r.match) {
                std::cerr << "first mismatch: " << r.name << " lhs=" << r.lhs.to_string()
                          << " rhs=" << r.rhs.to_string() << " inputs=" << r.inputs << "\n";
                break;
            }
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "wres: exact pseudodifferential symbol calculus for the Hodge-Dirac operator.\n"
        "Verifies the metric and Einstein residue functionals, the trace identities,\n"
        "the inverse-power symbols and spectral closedness, all in exact arithmetic.\n"
        "Worker threads are capped by the WRES_JOBS environment variable."};
    app.require_subcommand(1);
    app.fallthrough();

    int dim = 4;
    std::uint64_t seed = 0;
    int trials = 20;
    std::string output = "human";
    std::string curvature_path;
    auto* dim_opt = app.add_option("--dim", dim, "even dimension (4, 6 or 8)")
                        ->check(CLI::IsMember({4, 6, 8}));
    app.add_option("--seed", seed, "base seed for curvature and one-form sampling");
    app.add_option("--trials", trials, "number of random trials")->check(CLI::PositiveNumber);
    app.add_option("--output", output, "human or json")->check(CLI::IsMember({"human", "json"}));
    app.add_option("--curvature", curvature_path, "path to a curvature JSON document");

    std::string u_text, w_text, w_jet_text;
    std::string expr_text, f_expr_text, g_expr_text, variant_name = "gamma";
    int power = -1;
    int sample_terms = 3;
    std::string out_path, which_symbol = "dirac";

    CLI::App* cmd_algebra = app.add_subcommand("check-algebra", "anticommutation and Clifford identities");
    CLI::App* cmd_traces = app.add_subcommand("check-traces", "word-trace recursion and trace identities");
    CLI::App* cmd_symbols = app.add_subcommand("check-symbols", "Dirac-square symbol regression");
    CLI::App* cmd_inverse = app.add_subcommand("check-inverse", "parametrix and inverse-power oracle");
    CLI::App* cmd_metric = app.add_subcommand("metric", "metric functional density");
    CLI::App* cmd_einstein = app.add_subcommand("einstein", "Einstein functional density, both routes");
    CLI::App* cmd_cancel = app.add_subcommand("cancellation", "the two canceling curvature contributions");
    CLI::App* cmd_closed = app.add_subcommand("closedness", "zero-order spectral closedness");
    CLI::App* cmd_functional =
        app.add_subcommand("functional", "expression-language functional against its closed form");
    CLI::App* cmd_all = app.add_subcommand("all", "every suite");
    CLI::App* cmd_sample =
        app.add_subcommand("sample-curvature", "write a random curvature point as JSON");
    CLI::App* cmd_dump = app.add_subcommand("dump-symbol", "debug-dump a symbol as JSON");

    for (CLI::App* c : {cmd_metric, cmd_einstein, cmd_cancel}) {
        c->add_option("--u", u_text, "constant one-form, comma-separated rationals");
        c->add_option("--w", w_text, "one-form values, comma-separated rationals");
    }
    cmd_metric->add_option("--w-jet", w_jet_text, "n*n jet coefficients, row-major");
    cmd_einstein->add_option("--w-jet", w_jet_text, "n*n jet coefficients, row-major");

    cmd_functional->add_option("--expr", expr_text, "endomorphism (or constant-part) expression");
    cmd_functional->add_option("--f-expr", f_expr_text, "xi-quadratic coefficient with free indices a,b");
    cmd_functional->add_option("--g-expr", g_expr_text, "xi-linear coefficient with free index a");
    cmd_functional->add_option("--power", power, "inverse power k: n/2-1 (default) or n/2");
    cmd_functional->add_option("--variant", variant_name, "gamma or lambda")
        ->check(CLI::IsMember({"gamma", "lambda"}));

    cmd_sample->add_option("--terms", sample_terms, "number of Kulkarni-Nomizu terms")
        ->check(CLI::NonNegativeNumber);
    cmd_sample->add_option("--out", out_path, "output path (stdout when omitted)");
    cmd_dump->add_option("--which", which_symbol, "dirac | dirac-squared | inverse-power")
        ->check(CLI::IsMember({"dirac", "dirac-squared", "inverse-power"}));
    cmd_dump->add_option("--power", power, "k for inverse-power");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        SuiteOptions opt;
        opt.dim = dim;
        opt.seed = seed;
        opt.trials = trials;
        if (!curvature_path.empty()) {
            std::ifstream in(curvature_path);
            if (!in) throw std::invalid_argument("cannot open curvature file: " + curvature_path);
            Json doc = Json::parse(in);
            opt.curvature = curvature_from_json(doc);
            if (dim_opt->count() > 0 && opt.curvature->n != dim)
                throw std::invalid_argument("--dim contradicts the curvature file dimension");
            opt.dim = opt.curvature->n;
        }

        Json config{{"dim", opt.dim},
                    {"seed", opt.seed},
                    {"trials", opt.trials},
                    {"curvature", curvature_path.empty() ? Json(nullptr) : Json(curvature_path)},
                    {"output", output}};

        auto forms_given = [&](CLI::App* c) { return c->count("--u") > 0 || c->count("--w") > 0; };
        auto fixed_u = [&]() { return parse_rational_list(u_text, opt.dim, "--u"); };
        auto fixed_w = [&]() {
            OneFormJet w = OneFormJet::constant(parse_rational_list(w_text, opt.dim, "--w"));
            if (!w_jet_text.empty()) w.jet = parse_rational_list(w_jet_text, opt.dim * opt.dim, "--w-jet");
            return w;
        };
        auto fixed_setup = [&]() {
            std::uint64_t seed_t = opt.curvature ? 0 : trial_seed(opt.seed, 0);
            CurvaturePoint curv = opt.curvature ? *opt.curvature : sample_curvature(opt.dim, seed_t, 3);
            return std::make_pair(SpectralSetup(std::move(curv)), seed_t);
        };

        std::string command;
        std::vector<FunctionalReport> reports;
        if (cmd_algebra->parsed()) {
            command = "check-algebra";
            reports = check_algebra(opt.dim);
        } else if (cmd_traces->parsed()) {
            command = "check-traces";
            reports = check_traces(opt);
        } else if (cmd_symbols->parsed()) {
            command = "check-symbols";
            reports = check_symbols(opt);
        } else if (cmd_inverse->parsed()) {
            command = "check-inverse";
            reports = check_inverse(opt);
        } else if (cmd_metric->parsed()) {
            command = "metric";
            if (forms_given(cmd_metric)) {
                auto [setup, seed_t] = fixed_setup();
                FunctionalReport r = metric_functional(OneFormJet::constant(fixed_u()), fixed_w(), setup);
                r.curvature_seed = seed_t;
                reports.push_back(std::move(r));
            } else {
                reports = run_metric(opt);
            }
        } else if (cmd_einstein->parsed()) {
            command = "einstein";
            if (forms_given(cmd_einstein)) {
                auto [setup, seed_t] = fixed_setup();
                reports = einstein_functional(fixed_u(), fixed_w(), setup);
                for (auto& r : reports) r.curvature_seed = seed_t;
            } else {
                reports = run_einstein(opt);
            }
        } else if (cmd_cancel->parsed()) {
            command = "cancellation";
            if (forms_given(cmd_cancel)) {
                auto [setup, seed_t] = fixed_setup();
                reports = cancellation_check(fixed_u(), parse_rational_list(w_text, opt.dim, "--w"), setup);
                for (auto& r : reports) r.curvature_seed = seed_t;
            } else {
                reports = run_cancellation(opt);
            }
        } else if (cmd_closed->parsed()) {
            command = "closedness";
            reports = run_closedness(opt);
        } else if (cmd_functional->parsed()) {
            command = "functional";
            if (power < 0) power = opt.dim / 2 - 1;
            EndoVariant variant =
                variant_name == "lambda" ? EndoVariant::LambdaForm : EndoVariant::GammaForm;
            std::optional<OneFormJet> u, w;
            if (!u_text.empty()) u = OneFormJet::constant(parse_rational_list(u_text, opt.dim, "--u"));
            if (!w_text.empty()) w = OneFormJet::constant(parse_rational_list(w_text, opt.dim, "--w"));
            reports = run_expression_functional(opt, expr_text, f_expr_text, g_expr_text, power,
                                                variant, u, w);
        } else if (cmd_all->parsed()) {
            command = "all";
            reports = run_all(opt);
        } else if (cmd_sample->parsed()) {
            CurvaturePoint curv = sample_curvature(opt.dim, opt.seed, sample_terms);
            std::string text = curvature_to_json(curv).dump(2) + "\n";
            if (out_path.empty()) {
                std::cout << text;
            } else {
                std::ofstream outf(out_path);
                if (!outf) throw std::invalid_argument("cannot write " + out_path);
                outf << text;
            }
            return 0;
        } else if (cmd_dump->parsed()) {
            std::uint64_t seed_t = opt.curvature ? 0 : trial_seed(opt.seed, 0);
            CurvaturePoint curv = opt.curvature ? *opt.curvature : sample_curvature(opt.dim, seed_t, 3);
            SpectralSetup setup(std::move(curv));
            Json j;
            if (which_symbol == "dirac")
                j = symbol_to_json(setup.dirac());
            else if (which_symbol == "dirac-squared")
                j = symbol_to_json(setup.dirac_squared());
            else
                j = symbol_to_json(setup.inverse_power_of_square(power < 0 ? opt.dim / 2 : power));
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        return emit(command, config, reports, output);
    } catch (const ParseError& e) {
        std::cerr << "expression error at " << e.line << ":" << e.column << ": " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
