#include "spme/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace spme::noise {

namespace {

std::uint64_t splitmix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t mix_key(std::uint64_t seed, std::uint64_t id, std::uint64_t step,
                      std::uint64_t mode) {
    std::uint64_t k = splitmix(seed);
    k = splitmix(k ^ (id + 0x632be59bd9b4e019ULL));
    k = splitmix(k ^ (step + 0xd1b54a32d192ed03ULL));
    k = splitmix(k ^ (mode + 0x8cb92ba72f3d8dd7ULL));
    return k;
}

double to_unit(std::uint64_t bits) {
    // (0, 1]: top 53 bits plus one ulp
    return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

}  // namespace

double RngStream::uniform(std::uint64_t at_step, std::uint64_t mode) const {
    return to_unit(mix_key(seed, trajectory_id, at_step, mode));
}

double RngStream::normal(std::uint64_t at_step, std::uint64_t mode) const {
    std::uint64_t k = mix_key(seed, trajectory_id, at_step, mode);
    double u1 = to_unit(k);
    double u2 = to_unit(splitmix(k ^ 0xa0761d6478bd642fULL));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * hspace::kPi * u2);
}

NoiseModel::NoiseModel(hspace::Grid grid, std::vector<double> mu)
    : grid_(grid), mu_(std::move(mu)) {
    for (double m : mu_) {
        if (!(m > 0.0) || !std::isfinite(m)) {
            throw std::invalid_argument("noise amplitudes must be positive and finite");
        }
    }
    modes_.reserve(mu_.size());
    for (int k = 1; k <= static_cast<int>(mu_.size()); ++k) {
        modes_.push_back(hspace::sine_mode(grid_, k).values);
    }
}

double cn_constant(const NoiseModel& model) {
    double s = 0.0;
    for (int k = 1; k <= model.mode_count(); ++k) {
        double mu = model.amplitudes()[k - 1];
        s += (1.0 + k) * (1.0 + k) * mu * mu;
    }
    return hspace::kPi / 4.0 * s;
}

double hs_condition_partial(const std::vector<double>& mu, int K) {
    if (K > static_cast<int>(mu.size())) {
        throw std::invalid_argument("K exceeds amplitude list length");
    }
    double s = 0.0;
    for (int k = 1; k <= K; ++k) {
        double lk = static_cast<double>(k) * k;  // lambda_k = k^2 on (0, pi)
        s += mu[k - 1] * mu[k - 1] * lk * lk;
    }
    return s;
}

hspace::Field sigma_apply(const NoiseModel& model, const hspace::Field& X,
                          const std::vector<double>& h_coeffs) {
    if (static_cast<int>(h_coeffs.size()) != model.mode_count()) {
        throw std::invalid_argument("coefficient list length must equal mode count");
    }
    hspace::Field out = hspace::zero_field(X.grid);
    for (int k = 1; k <= model.mode_count(); ++k) {
        double c = model.amplitudes()[k - 1] * h_coeffs[k - 1];
        if (c == 0.0) continue;
        for (int i = 0; i < X.grid.n; ++i) {
            out.values[i] += c * X.values[i] * model.mode_value(k, i);
        }
    }
    return out;
}

hspace::Field sample_increment(const NoiseModel& model, const hspace::Field& X,
                               double dt, RngStream& rng) {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    const std::uint64_t step = rng.step++;
    hspace::Field out = hspace::zero_field(X.grid);
    const double sdt = std::sqrt(dt);
    for (int k = 1; k <= model.mode_count(); ++k) {
        double db = sdt * rng.normal(step, k);
        double c = model.amplitudes()[k - 1] * db;
        for (int i = 0; i < X.grid.n; ++i) {
            out.values[i] += c * X.values[i] * model.mode_value(k, i);
        }
    }
    return out;
}

}  // namespace spme::noise
