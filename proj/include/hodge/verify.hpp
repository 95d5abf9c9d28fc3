#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hodge/curvature.hpp"
#include "hodge/functionals.hpp"

namespace hodge {

/// Options shared by the verification suites. When `curvature` is set the
/// trials all run against that point instead of seeded samples.
struct SuiteOptions {
    int dim = 4;
    std::uint64_t seed = 0;
    int trials = 20;
    std::optional<CurvaturePoint> curvature;
};

/// Deterministic per-trial derived seed.
std::uint64_t trial_seed(std::uint64_t seed, int trial);

/// Runs fn(trial) for trial = 0..count-1 on a worker pool (capped by the
/// WRES_JOBS environment variable) and returns the reports in trial order.
std::vector<FunctionalReport> parallel_trials(
    int count, const std::function<std::vector<FunctionalReport>(int)>& fn);

/// Anticommutation and Clifford relations plus transpose/adjoint structure.
std::vector<FunctionalReport> check_algebra(int n);

/// Word-trace recursion vs the dense oracle, the alternating closed forms,
/// the Clifford-pair trace identities, and the nine curvature-contracted
/// trace identities per sampled curvature point.
std::vector<FunctionalReport> check_traces(const SuiteOptions& opt);

/// Dirac-square symbol regression against the transcribed closed forms.
std::vector<FunctionalReport> check_symbols(const SuiteOptions& opt);

/// Parametrix levels, identity composition, and closed-form inverse powers
/// against the k-fold composition oracle for k = 1..3.
std::vector<FunctionalReport> check_inverse(const SuiteOptions& opt);

std::vector<FunctionalReport> run_metric(const SuiteOptions& opt);
std::vector<FunctionalReport> run_einstein(const SuiteOptions& opt);
std::vector<FunctionalReport> run_cancellation(const SuiteOptions& opt);
std::vector<FunctionalReport> run_closedness(const SuiteOptions& opt);

/// Random endomorphism and quadratic-symbol inputs generated through the
/// expression language, each verified against its closed form.
std::vector<FunctionalReport> run_dsl_functionals(const SuiteOptions& opt);

/// Explicit expression evaluation: density of expr * D^{-2k} against the
/// closed form selected by k (k = n/2 - 1 endomorphism form, k = n/2
/// quadratic form with the expression as the constant part).
std::vector<FunctionalReport> run_expression_functional(const SuiteOptions& opt,
                                                        const std::string& expr_text,
                                                        const std::string& f_expr_text,
                                                        const std::string& g_expr_text, int power,
                                                        EndoVariant variant,
                                                        const std::optional<OneFormJet>& u,
                                                        const std::optional<OneFormJet>& w);

/// Every suite above at the given options.
std::vector<FunctionalReport> run_all(const SuiteOptions& opt);

bool all_match(const std::vector<FunctionalReport>& reports);

}  // namespace hodge
