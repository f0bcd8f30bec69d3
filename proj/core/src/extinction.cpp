#include "spme/extinction.hpp"

#include <boost/math/distributions/beta.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spme::extinction {

Detection detect_extinction(const solver::Trajectory& traj, double epsilon,
                            double x0_norm) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    const double threshold = epsilon * x0_norm;
    Detection det;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        if (!det.time) {
            if (traj.h1_norm[i] <= threshold) det.time = traj.times[i];
        } else if (traj.h1_norm[i] > threshold) {
            det.persistence_violated = true;
        }
    }
    return det;
}

double extinction_bound(double x_norm, double rho, double gamma, double c_n,
                        double n) {
    if (!(rho > 0.0) || !(gamma > 0.0) || !(n > 0.0) || c_n < 0.0) {
        throw std::invalid_argument("extinction_bound needs rho, gamma, n > 0 and C_N >= 0");
    }
    double integral = (c_n == 0.0) ? n : -std::expm1(-c_n * n) / c_n;
    double bound = 1.0 - x_norm / (rho * gamma) / integral;
    return std::max(bound, 0.0);
}

double deterministic_bound(double x_norm, double rho, double gamma) {
    if (!(rho > 0.0) || !(gamma > 0.0)) {
        throw std::invalid_argument("deterministic_bound needs rho, gamma > 0");
    }
    return x_norm / (rho * gamma);
}

bool admissibility_check(double x_norm, double rho, double gamma, double c_n) {
    return x_norm * c_n < rho * gamma;
}

hspace::Field soc_shift(const hspace::Field& x, double x_c) {
    hspace::Field out = x;
    for (double& v : out.values) v -= x_c;
    return out;
}

hspace::Field soc_unshift(const hspace::Field& x, double x_c) {
    hspace::Field out = x;
    for (double& v : out.values) v += x_c;
    return out;
}

BinomialInterval clopper_pearson(int successes, int total, double confidence) {
    if (total < 1 || successes < 0 || successes > total) {
        throw std::invalid_argument("invalid binomial counts");
    }
    const double alpha = 1.0 - confidence;
    BinomialInterval iv{0.0, 1.0};
    if (successes > 0) {
        boost::math::beta_distribution<double> lo(successes, total - successes + 1);
        iv.lo = boost::math::quantile(lo, alpha / 2.0);
    }
    if (successes < total) {
        boost::math::beta_distribution<double> hi(successes + 1, total - successes);
        iv.hi = boost::math::quantile(hi, 1.0 - alpha / 2.0);
    }
    return iv;
}

EnsembleResult run_ensemble(const solver::SolverConfig& cfg,
                            const ExtinctionConfig& ext, const hspace::Field& x0,
                            std::uint64_t seed) {
    if (ext.trajectories < 1) throw std::invalid_argument("need at least one trajectory");

    solver::SolverConfig run_cfg = cfg;
    run_cfg.extinction_threshold = ext.epsilon;
    run_cfg.stop_at_extinction = true;
    run_cfg.record_fields = false;

    EnsembleResult res;
    res.x0_norm = hspace::hminus1_norm(x0);
    res.rho = ext.rho;
    res.gamma_est = hspace::estimate_gamma(cfg.n);
    res.c_n = noise::cn_constant(cfg.noise);
    res.admissible = admissibility_check(res.x0_norm, ext.rho, res.gamma_est, res.c_n);
    res.extinction_times.resize(ext.trajectories);

    for (int id = 0; id < ext.trajectories; ++id) {
        noise::RngStream rng{seed, static_cast<std::uint64_t>(id), 0};
        try {
            auto traj = solver::integrate_trajectory(run_cfg, x0, rng);
            res.extinction_times[id] = traj.extinction_time;
        } catch (const solver::StepError&) {
            ++res.aborted;  // censored; partial results retained
        }
    }

    for (double n : ext.horizons) {
        int hits = 0;
        for (const auto& t : res.extinction_times) {
            if (t && *t <= n) ++hits;  // censored trajectories count as non-extinct
        }
        double p_hat = static_cast<double>(hits) / ext.trajectories;
        auto ci = clopper_pearson(hits, ext.trajectories);
        double bound = extinction_bound(res.x0_norm, ext.rho, res.gamma_est,
                                        res.c_n, n);
        res.horizons.push_back({n, p_hat, ci.lo, ci.hi, bound});
    }
    return res;
}

}  // namespace spme::extinction
