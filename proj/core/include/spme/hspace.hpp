#pragma once

#include <vector>

namespace spme::hspace {

inline constexpr double kPi = 3.14159265358979323846;

/// Uniform grid of n interior nodes on (0, pi) with Dirichlet endpoints excluded.
struct Grid {
    int n;
    double h;

    double node(int i) const { return (i + 1) * h; }  // i = 0..n-1
    bool operator==(const Grid&) const = default;
};

Grid make_grid(int n);

/// Real-valued function on the interior nodes of a grid.
struct Field {
    Grid grid;
    std::vector<double> values;
};

Field zero_field(const Grid& grid);
/// amplitude * sqrt(2/pi) * sin(k xi) sampled on the nodes (L2-normalized mode).
Field sine_mode(const Grid& grid, int k, double amplitude = 1.0);
/// Raw discrete mode sin(k xi) on the nodes.
Field raw_sine_mode(const Grid& grid, int k);
Field constant_field(const Grid& grid, double value);

struct SpectralCoeffs {
    Grid grid;
    std::vector<double> coeffs;  // k = 1..n
};

/// Eigenvalue of the second-difference matrix for mode k: (4/h^2) sin^2(k h / 2).
double discrete_eigenvalue(const Grid& grid, int k);

/// A_h f with zero Dirichlet ghost values; positive operator convention A = -Laplacian.
Field laplacian_apply(const Field& f);
/// Solves A_h u = f (tridiagonal).
Field laplacian_solve(const Field& f);

/// Orthogonal sine transform (involutive up to normalization).
SpectralCoeffs dst_forward(const Field& f);
Field dst_inverse(const SpectralCoeffs& c);

/// Discrete L2 scalar product h * sum f_i g_i.
double inner_l2(const Field& f, const Field& g);

/// |f|_{-1} via the tridiagonal solve.
double hminus1_norm(const Field& f);
/// Same norm through the spectral route; agrees with hminus1_norm to 1e-10.
double hminus1_norm_spectral(const Field& f);

/// (h sum |f_i|^p)^{1/p}; pass infinity for the max norm. Requires p >= 1.
double lp_norm(const Field& f, double p);

/// Discrete embedding constant inf |x|_{L1} / |x|_{-1}: a sweep over grid point
/// masses (Green function diagonal) refined by a two-point signed local search.
double estimate_gamma(int n);

/// General tridiagonal solve (Thomas); diag/rhs length m, lower/upper length m-1.
std::vector<double> solve_tridiagonal(const std::vector<double>& lower,
                                      std::vector<double> diag,
                                      const std::vector<double>& upper,
                                      std::vector<double> rhs);

}  // namespace spme::hspace
