#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spme::graphs {

/// Closed subset of the real line returned by a set-valued graph.
/// Degenerate (lo == hi) away from jump points.
struct Interval {
    double lo;
    double hi;

    bool contains(double v, double tol = 0.0) const {
        return v >= lo - tol && v <= hi + tol;
    }
};

/// Piecewise-linear Lipschitz perturbation with slopes in [delta, L]
/// and value 0 at the origin. A single-slope table is a plain linear map.
class LipschitzSpec {
public:
    static LipschitzSpec linear(double slope);
    static LipschitzSpec piecewise(std::vector<double> breakpoints,
                                   std::vector<double> slopes);

    double operator()(double r) const;
    /// Right-derivative at r.
    double slope(double r) const;

    double lipschitz_constant() const { return lipschitz_; }
    double coercivity_delta() const { return delta_; }

private:
    LipschitzSpec() = default;
    std::vector<double> breakpoints_;  // sorted
    std::vector<double> slopes_;       // size breakpoints_.size() + 1
    double lipschitz_ = 0.0;
    double delta_ = 0.0;
};

enum class GraphKind { Sign, Heaviside, Stefan, PowerSign, CoerciveSign };

/// A maximal monotone graph on the real line with closed-form branches.
///
/// Families:
///   Sign(rho)                  rho * sign(r), [-rho, rho] at 0
///   Heaviside(shift)           H(r) + shift * r, [0, 1] at 0
///   Stefan(a, rho, a1, a2)     a1*(r-a) below a, [0, rho] at a, a2*(r-a)+rho above
///   PowerSign(alpha, c)        c * |r|^alpha * sign(r), 0 < alpha <= 1
///   CoerciveSign(rho, tilde)   rho * sign(r) + tilde(r), tilde Lipschitz with slope >= delta
class GraphSpec {
public:
    static GraphSpec sign(double rho);
    static GraphSpec heaviside(double shift = 0.0);
    static GraphSpec stefan(double a, double rho, double alpha1, double alpha2);
    static GraphSpec power_sign(double alpha, double coefficient = 1.0);
    static GraphSpec coercive_sign(double rho, LipschitzSpec tilde);

    GraphKind kind() const { return kind_; }
    double growth_c() const { return growth_c_; }
    double growth_m() const { return growth_m_; }
    const std::vector<double>& jump_points() const { return jumps_; }
    double rho() const { return rho_; }
    const LipschitzSpec& tilde() const { return tilde_; }

    /// The closed set Psi(r); a singleton off the jump points.
    Interval eval(double r) const;
    /// Element of Psi(r) with least absolute value.
    double minimal_section(double r) const;
    /// The unique y with y + lambda*Psi(y) containing x.
    double resolvent(double lambda, double x) const;
    /// Yosida approximation (x - resolvent(lambda, x)) / lambda.
    double yosida(double lambda, double x) const;

    /// The regularized nonlinearity used by the solver: the pure Yosida
    /// approximation, except for CoerciveSign where it is the modified
    /// rho*(sign)_lambda(r) + tilde(r).
    double regularized(double lambda, double r) const;
    /// Right-derivative of regularized() in r.
    double regularized_slope(double lambda, double r) const;

    std::string name() const;

private:
    GraphSpec() = default;

    GraphKind kind_ = GraphKind::Sign;
    double rho_ = 1.0;
    double shift_ = 0.0;             // Heaviside linear part
    double a_ = 1.0;                 // Stefan jump location
    double alpha1_ = 1.0;
    double alpha2_ = 1.0;
    double alpha_ = 1.0;             // PowerSign exponent
    double coeff_ = 1.0;             // PowerSign coefficient
    LipschitzSpec tilde_ = LipschitzSpec::linear(1.0);

    double growth_c_ = 1.0;
    double growth_m_ = 1.0;
    std::vector<double> jumps_;

    double resolvent_bisect(double lambda, double x) const;
};

/// Yosida approximation of the sign graph:
/// 1 above lambda, r/lambda on [-lambda, lambda], -1 below.
double smoothed_sign(double lambda, double r);

}  // namespace spme::graphs
