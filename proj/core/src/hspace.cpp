#include "spme/hspace.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

namespace spme::hspace {

namespace {

void require_same_grid(const Field& f, const Field& g) {
    if (!(f.grid == g.grid)) throw std::invalid_argument("grid mismatch");
}

// FFTW planning is not thread safe; execution on distinct arrays is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

fftw_plan plan_for(int n) {
    static std::map<int, fftw_plan> plans;
    std::lock_guard<std::mutex> lock(plan_mutex());
    auto it = plans.find(n);
    if (it != plans.end()) return it->second;
    std::vector<double> dummy(n);
    fftw_plan p = fftw_plan_r2r_1d(n, dummy.data(), dummy.data(), FFTW_RODFT00,
                                   FFTW_ESTIMATE);
    plans.emplace(n, p);
    return p;
}

// RODFT00 computes y_k = 2 sum_j x_j sin(pi j k / (n+1)); dividing by
// sqrt(2(n+1)) makes the transform orthonormal and involutive.
std::vector<double> orthonormal_dst(const std::vector<double>& in) {
    int n = static_cast<int>(in.size());
    std::vector<double> out(n);
    std::vector<double> buf = in;
    fftw_execute_r2r(plan_for(n), buf.data(), out.data());
    double scale = 1.0 / std::sqrt(2.0 * (n + 1));
    for (double& v : out) v *= scale;
    return out;
}

}  // namespace

Grid make_grid(int n) {
    if (n < 2) throw std::invalid_argument("grid needs at least 2 interior nodes");
    return Grid{n, kPi / (n + 1)};
}

Field zero_field(const Grid& grid) {
    return Field{grid, std::vector<double>(grid.n, 0.0)};
}

Field sine_mode(const Grid& grid, int k, double amplitude) {
    Field f = zero_field(grid);
    double c = amplitude * std::sqrt(2.0 / kPi);
    for (int i = 0; i < grid.n; ++i) f.values[i] = c * std::sin(k * grid.node(i));
    return f;
}

Field raw_sine_mode(const Grid& grid, int k) {
    Field f = zero_field(grid);
    for (int i = 0; i < grid.n; ++i) f.values[i] = std::sin(k * grid.node(i));
    return f;
}

Field constant_field(const Grid& grid, double value) {
    return Field{grid, std::vector<double>(grid.n, value)};
}

double discrete_eigenvalue(const Grid& grid, int k) {
    double s = std::sin(0.5 * k * grid.h);
    return 4.0 / (grid.h * grid.h) * s * s;
}

Field laplacian_apply(const Field& f) {
    const int n = f.grid.n;
    const double inv_h2 = 1.0 / (f.grid.h * f.grid.h);
    Field out = zero_field(f.grid);
    for (int i = 0; i < n; ++i) {
        double left = (i > 0) ? f.values[i - 1] : 0.0;
        double right = (i < n - 1) ? f.values[i + 1] : 0.0;
        out.values[i] = (2.0 * f.values[i] - left - right) * inv_h2;
    }
    return out;
}

std::vector<double> solve_tridiagonal(const std::vector<double>& lower,
                                      std::vector<double> diag,
                                      const std::vector<double>& upper,
                                      std::vector<double> rhs) {
    const std::size_t m = diag.size();
    if (rhs.size() != m || lower.size() + 1 != m || upper.size() + 1 != m) {
        throw std::invalid_argument("tridiagonal size mismatch");
    }
    for (std::size_t i = 1; i < m; ++i) {
        double w = lower[i - 1] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    rhs[m - 1] /= diag[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) {
        rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
    }
    return rhs;
}

Field laplacian_solve(const Field& f) {
    const int n = f.grid.n;
    const double inv_h2 = 1.0 / (f.grid.h * f.grid.h);
    std::vector<double> lower(n - 1, -inv_h2);
    std::vector<double> upper(n - 1, -inv_h2);
    std::vector<double> diag(n, 2.0 * inv_h2);
    return Field{f.grid, solve_tridiagonal(lower, std::move(diag), upper, f.values)};
}

SpectralCoeffs dst_forward(const Field& f) {
    return SpectralCoeffs{f.grid, orthonormal_dst(f.values)};
}

Field dst_inverse(const SpectralCoeffs& c) {
    return Field{c.grid, orthonormal_dst(c.coeffs)};
}

double inner_l2(const Field& f, const Field& g) {
    require_same_grid(f, g);
    double s = 0.0;
    for (int i = 0; i < f.grid.n; ++i) s += f.values[i] * g.values[i];
    return f.grid.h * s;
}

double hminus1_norm(const Field& f) {
    Field u = laplacian_solve(f);
    double q = inner_l2(u, f);
    return std::sqrt(std::max(q, 0.0));
}

double hminus1_norm_spectral(const Field& f) {
    SpectralCoeffs c = dst_forward(f);
    double s = 0.0;
    for (int k = 1; k <= f.grid.n; ++k) {
        double ck = c.coeffs[k - 1];
        s += ck * ck / discrete_eigenvalue(f.grid, k);
    }
    return std::sqrt(f.grid.h * s);
}

double lp_norm(const Field& f, double p) {
    if (p == std::numeric_limits<double>::infinity()) {
        double m = 0.0;
        for (double v : f.values) m = std::max(m, std::abs(v));
        return m;
    }
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm requires p >= 1");
    double s = 0.0;
    for (double v : f.values) s += std::pow(std::abs(v), p);
    return std::pow(f.grid.h * s, 1.0 / p);
}

double estimate_gamma(int n) {
    Grid grid = make_grid(n);
    const double h = grid.h;

    // Green function diagonal G_h(xi_i, xi_i) = (A_h^{-1} delta_i)_i where
    // delta_i carries unit L1 mass (value 1/h at node i).
    std::vector<double> green_diag(n);
    int best = 0;
    for (int i = 0; i < n; ++i) {
        Field e = zero_field(grid);
        e.values[i] = 1.0 / h;
        green_diag[i] = laplacian_solve(e).values[i];
        if (green_diag[i] > green_diag[best]) best = i;
    }
    double gamma = 1.0 / std::sqrt(green_diag[best]);

    // Two-point signed refinement around the extremal node: candidates
    // a*delta_i + b*delta_j with |a| + |b| = 1 cannot beat the single point
    // mass, but we take the minimum over the whole family anyway.
    Field eb = zero_field(grid);
    eb.values[best] = 1.0 / h;
    Field col_best = laplacian_solve(eb);
    int lo = std::max(0, best - 8), hi = std::min(n - 1, best + 8);
    for (int j = lo; j <= hi; ++j) {
        if (j == best) continue;
        double gij = col_best.values[j];
        for (double w : {0.25, 0.5, 0.75}) {
            for (double s : {1.0, -1.0}) {
                double q = w * w * green_diag[best] +
                           2.0 * s * w * (1.0 - w) * gij +
                           (1.0 - w) * (1.0 - w) * green_diag[j];
                if (q > 0.0) gamma = std::min(gamma, 1.0 / std::sqrt(q));
            }
        }
    }
    return gamma;
}

}  // namespace spme::hspace
