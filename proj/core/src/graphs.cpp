#include "spme/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spme::graphs {

namespace {

void require_finite(double r, const char* what) {
    if (!std::isfinite(r)) {
        throw std::invalid_argument(std::string(what) + " must be finite");
    }
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument(std::string(what) + " must be positive");
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// LipschitzSpec

LipschitzSpec LipschitzSpec::linear(double slope) {
    require_positive(slope, "slope");
    LipschitzSpec s;
    s.slopes_ = {slope};
    s.lipschitz_ = slope;
    s.delta_ = slope;
    return s;
}

LipschitzSpec LipschitzSpec::piecewise(std::vector<double> breakpoints,
                                       std::vector<double> slopes) {
    if (slopes.size() != breakpoints.size() + 1) {
        throw std::invalid_argument("piecewise table needs one more slope than breakpoints");
    }
    if (!std::is_sorted(breakpoints.begin(), breakpoints.end())) {
        throw std::invalid_argument("breakpoints must be sorted");
    }
    LipschitzSpec s;
    s.delta_ = std::numeric_limits<double>::infinity();
    for (double sl : slopes) {
        require_positive(sl, "slope");
        s.lipschitz_ = std::max(s.lipschitz_, sl);
        s.delta_ = std::min(s.delta_, sl);
    }
    s.breakpoints_ = std::move(breakpoints);
    s.slopes_ = std::move(slopes);
    return s;
}

double LipschitzSpec::slope(double r) const {
    // right-closed convention: slope on [b_i, b_{i+1})
    std::size_t i = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), r) -
                    breakpoints_.begin();
    return slopes_[i];
}

double LipschitzSpec::operator()(double r) const {
    if (breakpoints_.empty()) return slopes_[0] * r;
    // integrate the slope table from 0 to r, anchored at tilde(0) = 0
    double value = 0.0;
    if (r >= 0.0) {
        double lo = 0.0;
        for (std::size_t i = 0; i <= breakpoints_.size(); ++i) {
            double hi = (i < breakpoints_.size()) ? breakpoints_[i]
                                                  : std::numeric_limits<double>::infinity();
            if (hi <= 0.0) continue;
            double seg_lo = std::max(lo, 0.0);
            double seg_hi = std::min(hi, r);
            if (seg_hi > seg_lo) value += slopes_[i] * (seg_hi - seg_lo);
            lo = hi;
            if (lo >= r) break;
        }
    } else {
        double hi = 0.0;
        for (std::size_t i = breakpoints_.size() + 1; i-- > 0;) {
            double lo = (i > 0) ? breakpoints_[i - 1]
                                : -std::numeric_limits<double>::infinity();
            if (lo >= 0.0) continue;
            double seg_hi = std::min(hi, 0.0);
            double seg_lo = std::max(lo, r);
            if (seg_hi > seg_lo) value -= slopes_[i] * (seg_hi - seg_lo);
            hi = lo;
            if (hi <= r) break;
        }
    }
    return value;
}

// ---------------------------------------------------------------------------
// Constructors

GraphSpec GraphSpec::sign(double rho) {
    require_positive(rho, "rho");
    GraphSpec g;
    g.kind_ = GraphKind::Sign;
    g.rho_ = rho;
    g.growth_c_ = rho;
    g.growth_m_ = 1.0;
    g.jumps_ = {0.0};
    return g;
}

GraphSpec GraphSpec::heaviside(double shift) {
    if (shift < 0.0 || !std::isfinite(shift)) {
        throw std::invalid_argument("heaviside shift must be nonnegative");
    }
    GraphSpec g;
    g.kind_ = GraphKind::Heaviside;
    g.shift_ = shift;
    g.growth_c_ = std::max(1.0, shift);
    g.growth_m_ = 1.0;
    g.jumps_ = {0.0};
    return g;
}

GraphSpec GraphSpec::stefan(double a, double rho, double alpha1, double alpha2) {
    require_positive(a, "a");
    require_positive(rho, "rho");
    require_positive(alpha1, "alpha1");
    require_positive(alpha2, "alpha2");
    GraphSpec g;
    g.kind_ = GraphKind::Stefan;
    g.a_ = a;
    g.rho_ = rho;
    g.alpha1_ = alpha1;
    g.alpha2_ = alpha2;
    g.growth_c_ = std::max(alpha1, alpha2) * (1.0 + a) + rho;
    g.growth_m_ = 1.0;
    g.jumps_ = {a};
    return g;
}

GraphSpec GraphSpec::power_sign(double alpha, double coefficient) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("power_sign exponent must lie in (0, 1]");
    }
    require_positive(coefficient, "coefficient");
    GraphSpec g;
    g.kind_ = GraphKind::PowerSign;
    g.alpha_ = alpha;
    g.coeff_ = coefficient;
    g.growth_c_ = coefficient;
    g.growth_m_ = 1.0;
    return g;
}

GraphSpec GraphSpec::coercive_sign(double rho, LipschitzSpec tilde) {
    if (rho < 0.0 || !std::isfinite(rho)) {
        throw std::invalid_argument("rho must be nonnegative");
    }
    GraphSpec g;
    g.kind_ = GraphKind::CoerciveSign;
    g.rho_ = rho;
    g.tilde_ = std::move(tilde);
    g.growth_c_ = rho + g.tilde_.lipschitz_constant();
    g.growth_m_ = 1.0;
    if (rho > 0.0) g.jumps_ = {0.0};
    return g;
}

std::string GraphSpec::name() const {
    switch (kind_) {
        case GraphKind::Sign: return "sign";
        case GraphKind::Heaviside: return "heaviside";
        case GraphKind::Stefan: return "stefan";
        case GraphKind::PowerSign: return "power_sign";
        case GraphKind::CoerciveSign: return "coercive_sign";
    }
    return "unknown";
}

// ---------------------------------------------------------------------------
// Evaluation

Interval GraphSpec::eval(double r) const {
    require_finite(r, "r");
    switch (kind_) {
        case GraphKind::Sign:
            if (r > 0.0) return {rho_, rho_};
            if (r < 0.0) return {-rho_, -rho_};
            return {-rho_, rho_};
        case GraphKind::Heaviside: {
            double lin = shift_ * r;
            if (r > 0.0) return {1.0 + lin, 1.0 + lin};
            if (r < 0.0) return {lin, lin};
            return {0.0, 1.0};
        }
        case GraphKind::Stefan:
            if (r < a_) {
                double v = alpha1_ * (r - a_);
                return {v, v};
            }
            if (r > a_) {
                double v = alpha2_ * (r - a_) + rho_;
                return {v, v};
            }
            return {0.0, rho_};
        case GraphKind::PowerSign: {
            double v = coeff_ * std::pow(std::abs(r), alpha_) * (r > 0 ? 1.0 : (r < 0 ? -1.0 : 0.0));
            return {v, v};
        }
        case GraphKind::CoerciveSign: {
            double t = tilde_(r);
            if (r > 0.0) return {rho_ + t, rho_ + t};
            if (r < 0.0) return {-rho_ + t, -rho_ + t};
            return {-rho_, rho_};
        }
    }
    throw std::logic_error("unreachable");
}

double GraphSpec::minimal_section(double r) const {
    Interval iv = eval(r);
    if (iv.lo <= 0.0 && iv.hi >= 0.0) return 0.0;
    return (std::abs(iv.lo) <= std::abs(iv.hi)) ? iv.lo : iv.hi;
}

// ---------------------------------------------------------------------------
// Resolvent
//
// Closed forms solve y + lambda*Psi(y) contains x branch by branch:
//   Sign:       soft threshold at lambda*rho.
//   Heaviside:  y(1+lambda*shift) + lambda*H(y); the flat window is [0, lambda].
//   Stefan:     linear branches give y = (x + lambda*alpha*a [- lambda*rho]) / (1+lambda*alpha);
//               the jump freezes y = a for x in [a, a + lambda*rho].
// PowerSign (alpha < 1) and CoerciveSign fall back to monotone bisection.

double GraphSpec::resolvent(double lambda, double x) const {
    require_positive(lambda, "lambda");
    require_finite(x, "x");
    switch (kind_) {
        case GraphKind::Sign: {
            double t = lambda * rho_;
            if (x > t) return x - t;
            if (x < -t) return x + t;
            return 0.0;
        }
        case GraphKind::Heaviside: {
            double d = 1.0 + lambda * shift_;
            if (x < 0.0) return x / d;
            if (x <= lambda) return 0.0;
            return (x - lambda) / d;
        }
        case GraphKind::Stefan: {
            if (x < a_) return (x + lambda * alpha1_ * a_) / (1.0 + lambda * alpha1_);
            if (x <= a_ + lambda * rho_) return a_;
            return (x + lambda * alpha2_ * a_ - lambda * rho_) / (1.0 + lambda * alpha2_);
        }
        case GraphKind::PowerSign:
            if (alpha_ == 1.0) return x / (1.0 + lambda * coeff_);
            return resolvent_bisect(lambda, x);
        case GraphKind::CoerciveSign:
            return resolvent_bisect(lambda, x);
    }
    throw std::logic_error("unreachable");
}

double GraphSpec::resolvent_bisect(double lambda, double x) const {
    // Jump points absorb a whole x-interval; return them exactly so that the
    // Yosida value lands inside the filled jump.
    for (double j : jumps_) {
        Interval iv = eval(j);
        if (x >= j + lambda * iv.lo && x <= j + lambda * iv.hi) return j;
    }
    const double bound = growth_c_ * (1.0 + std::pow(std::abs(x), growth_m_));
    double lo = x - lambda * bound;
    double hi = x + lambda * bound;
    const double tol = 1e-12;
    const int max_iter = 200;
    for (int it = 0; it < max_iter; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) return mid;  // adjacent doubles
        Interval iv = eval(mid);
        if (x < mid + lambda * iv.lo) {
            hi = mid;
        } else if (x > mid + lambda * iv.hi) {
            lo = mid;
        } else {
            return mid;
        }
    }
    if (hi - lo <= tol) return 0.5 * (lo + hi);
    throw std::runtime_error("resolvent bisection did not converge (malformed graph?)");
}

double GraphSpec::yosida(double lambda, double x) const {
    return (x - resolvent(lambda, x)) / lambda;
}

// ---------------------------------------------------------------------------
// Solver-facing regularization

double smoothed_sign(double lambda, double r) {
    require_positive(lambda, "lambda");
    if (r > lambda) return 1.0;
    if (r < -lambda) return -1.0;
    return r / lambda;
}

double GraphSpec::regularized(double lambda, double r) const {
    if (kind_ == GraphKind::CoerciveSign) {
        double s = rho_ > 0.0 ? rho_ * smoothed_sign(lambda, r) : 0.0;
        return s + tilde_(r);
    }
    return yosida(lambda, r);
}

double GraphSpec::regularized_slope(double lambda, double r) const {
    switch (kind_) {
        case GraphKind::Sign: {
            double t = lambda * rho_;
            return (r >= -t && r < t) ? 1.0 / lambda : 0.0;
        }
        case GraphKind::Heaviside: {
            double branch = shift_ / (1.0 + lambda * shift_);
            if (r >= 0.0 && r < lambda) return 1.0 / lambda;
            return branch;
        }
        case GraphKind::Stefan: {
            if (r < a_) return alpha1_ / (1.0 + lambda * alpha1_);
            if (r < a_ + lambda * rho_) return 1.0 / lambda;
            return alpha2_ / (1.0 + lambda * alpha2_);
        }
        case GraphKind::PowerSign: {
            if (alpha_ == 1.0) return coeff_ / (1.0 + lambda * coeff_);
            double y = resolvent(lambda, r);
            if (y == 0.0) return 1.0 / lambda;
            // implicit differentiation of y + lambda*c*|y|^a*sign(y) = x
            double d = coeff_ * alpha_ * std::pow(std::abs(y), alpha_ - 1.0);
            return d / (1.0 + lambda * d);
        }
        case GraphKind::CoerciveSign: {
            double s = (rho_ > 0.0 && r >= -lambda && r < lambda) ? rho_ / lambda : 0.0;
            return s + tilde_.slope(r);
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace spme::graphs
