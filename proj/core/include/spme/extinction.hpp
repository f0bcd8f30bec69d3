#pragma once

#include <optional>
#include <vector>

#include "spme/solver.hpp"

namespace spme::extinction {

struct ExtinctionConfig {
    double rho = 1.0;          // sign coefficient entering the bound
    double epsilon = 1e-6;     // relative H^{-1} extinction threshold
    std::vector<double> horizons{0.05, 0.1, 0.2, 0.5};
    int trajectories = 400;
    double x_c = 0.0;          // critical density; 0 for the unshifted model
};

struct Detection {
    std::optional<double> time;   // first crossing, none if censored
    bool persistence_violated = false;
};

/// First recorded time with |X(t)|_{-1} <= epsilon * x0_norm. Post-detection
/// samples must stay below threshold; a later excursion above is flagged.
Detection detect_extinction(const solver::Trajectory& traj, double epsilon,
                            double x0_norm);

/// P(tau <= n) >= 1 - (|x|_{-1} / (rho gamma)) * (int_0^n e^{-C_N s} ds)^{-1},
/// clamped below at 0 (the bound is vacuous when negative).
double extinction_bound(double x_norm, double rho, double gamma, double c_n,
                        double n);

/// Deterministic case: tau <= |x|_{-1} / (rho gamma).
double deterministic_bound(double x_norm, double rho, double gamma);

/// True iff |x|_{-1} * C_N < rho * gamma.
bool admissibility_check(double x_norm, double rho, double gamma, double c_n);

/// Subtract / add the critical density pointwise.
hspace::Field soc_shift(const hspace::Field& x, double x_c);
hspace::Field soc_unshift(const hspace::Field& x, double x_c);

struct BinomialInterval {
    double lo;
    double hi;
};

/// Exact (Clopper-Pearson) two-sided interval at the given confidence level.
BinomialInterval clopper_pearson(int successes, int total, double confidence = 0.99);

struct HorizonResult {
    double horizon;
    double p_hat;
    double ci_lo;
    double ci_hi;
    double bound;
};

struct EnsembleResult {
    std::vector<std::optional<double>> extinction_times;  // nullopt = censored at T
    std::vector<HorizonResult> horizons;
    double x0_norm = 0.0;
    double rho = 0.0;
    double gamma_est = 0.0;
    double c_n = 0.0;
    bool admissible = false;
    int aborted = 0;  // trajectories lost to solver errors (partial results kept)
};

/// Runs M independent trajectories of the shifted state, detects extinction,
/// and compares empirical probabilities against the analytic lower bound with
/// run-consistent constants (grid gamma, exact C_N).
EnsembleResult run_ensemble(const solver::SolverConfig& cfg,
                            const ExtinctionConfig& ext, const hspace::Field& x0,
                            std::uint64_t seed);

}  // namespace spme::extinction
