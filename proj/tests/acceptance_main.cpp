// Acceptance suite: one pass/fail line per criterion, exact (tolerance-zero)
// checks in Q(i) * v_{n-1} arithmetic, with the stated runtime budgets.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hodge/functionals.hpp"
#include "hodge/verify.hpp"

using namespace hodge;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, double budget_seconds,
               const std::function<bool()>& body) {
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note;
    try {
        ok = body();
    } catch (const std::exception& e) {
        ok = false;
        note = std::string(" (exception: ") + e.what() + ")";
    }
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool in_budget = elapsed < budget_seconds;
    if (!in_budget) note += " (over the runtime budget)";
    bool pass = ok && in_budget;
    std::printf("[%s] criterion %2d: %s [%.1fs/%.0fs]%s\n", pass ? "PASS" : "FAIL", number,
                label.c_str(), elapsed, budget_seconds, note.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

bool reports_ok(const std::vector<FunctionalReport>& reports) {
    for (const auto& r : reports)
        if (!r.match) {
            std::printf("    mismatch: %s  lhs=%s rhs=%s  %s\n", r.name.c_str(),
                        r.lhs.to_string().c_str(), r.rhs.to_string().c_str(), r.inputs.c_str());
            return false;
        }
    return !reports.empty();
}

SuiteOptions options(int dim, std::uint64_t seed, int trials) {
    SuiteOptions opt;
    opt.dim = dim;
    opt.seed = seed;
    opt.trials = trials;
    return opt;
}

std::string capture_cli(const std::string& args, const std::string& path) {
    std::string cmd = std::string(WRES_CLI) + " " + args + " > " + path + " 2>/dev/null";
    if (std::system(cmd.c_str()) != 0) return {};
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

int main() {
    criterion(1, "exterior-algebra relations at n = 2, 4, 6, 8", 10.0, [] {
        for (int n : {2, 4, 6, 8})
            if (!reports_ok(check_algebra(n))) return false;
        return true;
    });

    criterion(2, "trace identities: recursion, closed forms, curvature contractions", 60.0, [] {
        return reports_ok(check_traces(options(4, 101, 50))) &&
               reports_ok(check_traces(options(6, 102, 10)));
    });

    criterion(3, "Dirac-square symbols match the closed forms (10 curvatures, n = 4)", 60.0, [] {
        return reports_ok(check_symbols(options(4, 103, 10)));
    });

    criterion(4, "closed-form inverse powers equal k-fold parametrix composition, k = 1..3", 120.0, [] {
        return reports_ok(check_inverse(options(4, 104, 10)));
    });

    criterion(5, "metric functional: 20 random triples at n = 4, 5 at n = 6", 120.0, [] {
        return reports_ok(run_metric(options(4, 105, 20))) &&
               reports_ok(run_metric(options(6, 106, 5)));
    });

    criterion(6, "Einstein functional via both routes, with the exact cancellation", 300.0, [] {
        if (!reports_ok(run_einstein(options(4, 107, 20)))) return false;
        if (!reports_ok(run_einstein(options(6, 108, 5)))) return false;
        if (!reports_ok(run_cancellation(options(4, 109, 20)))) return false;
        if (!reports_ok(run_cancellation(options(6, 110, 5)))) return false;
        // contributions are reported as exact negatives
        auto reports = run_cancellation(options(4, 111, 3));
        for (std::size_t i = 0; i + 2 < reports.size(); i += 3)
            if (!(reports[i].lhs.value == -reports[i + 1].lhs.value)) return false;
        return true;
    });

    criterion(7, "endomorphism and quadratic-symbol closed forms on DSL inputs (10 each)", 300.0, [] {
        return reports_ok(run_dsl_functionals(options(4, 112, 10)));
    });

    criterion(8, "spectral closedness: 50 zero-order operators at n = 4, 10 at n = 6", 300.0, [] {
        auto r4 = run_closedness(options(4, 113, 50));
        auto r6 = run_closedness(options(6, 114, 10));
        if (!reports_ok(r4) || !reports_ok(r6)) return false;
        for (const auto& r : r4)
            if (!r.lhs.value.is_zero()) return false;
        for (const auto& r : r6)
            if (!r.lhs.value.is_zero()) return false;
        return true;
    });

    criterion(9, "determinism: byte-identical JSON for repeated seeded runs", 600.0, [] {
        std::string a = capture_cli("all --dim 4 --seed 7 --trials 20 --output json",
                                    "/tmp/wres_acceptance_a.json");
        std::string b = capture_cli("all --dim 4 --seed 7 --trials 20 --output json",
                                    "/tmp/wres_acceptance_b.json");
        return !a.empty() && a == b;
    });

    criterion(10, "flat curvature degenerates exactly", 120.0, [] {
        const int n = 4;
        SpectralSetup flat(flat_curvature(n));
        std::mt19937_64 rng(2026);
        OneFormJet u = sample_one_form(n, rng, false);
        OneFormJet w = sample_one_form(n, rng, true);

        auto einstein = einstein_functional(u.value, w, flat);
        for (const auto& r : einstein)
            if (!r.match || !r.lhs.value.is_zero()) return false;

        const GeneratorTable& gen = GeneratorTable::get(n);
        ExtEndo e = ExtEndo::scalar(n, GaussianRational(rat(7, 3)));
        e += (gen.clifford(1) * gen.clifford(2)).scaled(GaussianRational(Rational(2)));
        FunctionalReport endo = endo_functional(e, EndoVariant::GammaForm, flat);
        if (!endo.match || !endo.lhs.value.is_zero()) return false;

        FunctionalReport m_flat = metric_functional(OneFormJet::constant(u.value),
                                                    OneFormJet::constant(w.value), flat);
        SpectralSetup curved(sample_curvature(n, 115, 3));
        FunctionalReport m_curved = metric_functional(OneFormJet::constant(u.value),
                                                      OneFormJet::constant(w.value), curved);
        return m_flat.match && m_curved.match && m_flat.lhs.value == m_curved.lhs.value;
    });

    if (failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) FAILED\n", failures);
    return 1;
}
