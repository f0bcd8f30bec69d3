#pragma once

#include <cstdint>
#include <vector>

#include "spme/hspace.hpp"

namespace spme::noise {

/// Counter-based Gaussian stream keyed by (seed, trajectory_id, step, mode).
/// Streams with distinct keys are independent; the same key reproduces the
/// same draw, so ensembles are order-independent and resumable.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t trajectory_id = 0;
    std::uint64_t step = 0;

    /// Standard normal draw for (step, mode); does not advance the stream.
    double normal(std::uint64_t at_step, std::uint64_t mode) const;
    /// Uniform in (0, 1].
    double uniform(std::uint64_t at_step, std::uint64_t mode) const;
};

/// Finite-mode spectral Wiener model: W(t) = sum_{k=1..N} mu_k e_k beta_k(t)
/// with e_k(xi) = sqrt(2/pi) sin(k xi) sampled pointwise on the grid.
class NoiseModel {
public:
    NoiseModel(hspace::Grid grid, std::vector<double> mu);

    int mode_count() const { return static_cast<int>(mu_.size()); }
    const std::vector<double>& amplitudes() const { return mu_; }
    const hspace::Grid& grid() const { return grid_; }
    /// e_k sampled at node i (k = 1..N).
    double mode_value(int k, int i) const { return modes_[k - 1][i]; }

private:
    hspace::Grid grid_;
    std::vector<double> mu_;
    std::vector<std::vector<double>> modes_;
};

/// C_N = (pi/4) sum_{k=1..N} (1+k)^2 mu_k^2.
double cn_constant(const NoiseModel& model);

/// Partial sum sum_{k<=K} mu_k^2 k^4 (continuum eigenvalues lambda_k = k^2).
double hs_condition_partial(const std::vector<double>& mu, int K);

/// sigma(X)h = sum_k mu_k X e_k h_k, evaluated pointwise on the grid.
hspace::Field sigma_apply(const NoiseModel& model, const hspace::Field& X,
                          const std::vector<double>& h_coeffs);

/// sum_k mu_k X e_k dbeta_k with dbeta_k ~ N(0, dt); advances rng.step.
hspace::Field sample_increment(const NoiseModel& model, const hspace::Field& X,
                               double dt, RngStream& rng);

}  // namespace spme::noise
