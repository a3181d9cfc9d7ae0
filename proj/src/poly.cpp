#include "stakesim/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace stakesim {

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// Sum of absolute term magnitudes at x; the natural scale for a relative
// residual test (it bounds the rounding error of Horner at x).
double abs_term_sum(const std::vector<double>& coeffs, double x) {
    double sum = 0.0;
    double xk = 1.0;
    for (double ck : coeffs) {
        sum += std::abs(ck) * xk;
        xk *= std::abs(x);
    }
    return sum;
}

}  // namespace

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    for (double ck : coeffs_) {
        if (!std::isfinite(ck)) {
            throw std::invalid_argument("Polynomial: coefficients must be finite");
        }
    }
    while (!coeffs_.empty() && coeffs_.back() == 0.0) {
        coeffs_.pop_back();
    }
    if (coeffs_.size() > 5) {
        throw std::invalid_argument("Polynomial: degree > 4 not supported");
    }
}

double Polynomial::operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

Polynomial Polynomial::derivative() const {
    std::vector<double> d;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        d.push_back(static_cast<double>(k) * coeffs_[k]);
    }
    return Polynomial(std::move(d));
}

double Polynomial::cauchy_root_bound() const {
    if (is_zero()) {
        throw std::domain_error("cauchy_root_bound: zero polynomial");
    }
    const double lead = coeffs_.back();
    double max_ratio = 0.0;
    for (std::size_t k = 0; k + 1 < coeffs_.size(); ++k) {
        max_ratio = std::max(max_ratio, std::abs(coeffs_[k] / lead));
    }
    return 1.0 + max_ratio;
}

int count_sign_changes(const Polynomial& poly) {
    if (poly.is_zero()) {
        throw std::domain_error("count_sign_changes: zero polynomial is degenerate");
    }
    int changes = 0;
    int prev = 0;
    const auto& c = poly.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        const int s = sign_of(*it);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

RootResult unique_positive_root(const Polynomial& poly, double tol, int max_iter) {
    if (tol <= 0.0) throw std::invalid_argument("unique_positive_root: tol must be > 0");
    if (max_iter < 1) throw std::invalid_argument("unique_positive_root: max_iter must be >= 1");
    const int changes = count_sign_changes(poly);
    if (changes != 1) {
        throw std::domain_error("unique_positive_root: expected exactly one coefficient sign change, got " +
                                std::to_string(changes));
    }

    const auto& c = poly.coeffs();
    // Sign of p just right of 0 is the sign of the lowest nonzero
    // coefficient; used when the evaluation at lo underflows to zero.
    int sign_at_zero_plus = 0;
    for (double ck : c) {
        if (ck != 0.0) {
            sign_at_zero_plus = sign_of(ck);
            break;
        }
    }

    double lo = std::numeric_limits<double>::min();
    double flo = poly(lo);
    int slo = sign_of(flo);
    if (slo == 0) slo = sign_at_zero_plus;

    // Expand hi geometrically until the polynomial changes sign across the
    // bracket. The Cauchy bound caps the expansion: no positive root can
    // lie beyond it, so overshooting it means no crossing exists.
    const double guard = 2.0 * poly.cauchy_root_bound();
    double hi = 1.0;
    double fhi = poly(hi);
    while (sign_of(fhi) == slo) {
        if (hi > guard) {
            throw NoRootError("unique_positive_root: no sign change up to the Cauchy bound");
        }
        hi *= 2.0;
        fhi = poly(hi);
    }
    if (sign_of(fhi) == 0) {
        return RootResult{hi, 0.0, 0, lo, hi};
    }

    const Polynomial dpoly = poly.derivative();
    int iterations = 0;

    // Coarse bisection before Newton: shrink the expanded bracket a few
    // binary digits so the polish starts near the root.
    for (int k = 0; k < 8 && iterations < max_iter; ++k, ++iterations) {
        const double mid = 0.5 * (lo + hi);
        const int smid = sign_of(poly(mid));
        if (smid == 0) {
            return RootResult{mid, 0.0, iterations + 1, lo, hi};
        }
        if (smid == slo) {
            lo = mid;
        } else {
            hi = mid;
        }
    }

    double x = 0.5 * (lo + hi);
    while (iterations < max_iter) {
        ++iterations;
        const double fx = poly(x);
        const int sx = sign_of(fx);
        if (sx == slo) {
            lo = x;
        } else if (sx != 0) {
            hi = x;
        }

        const double scale = std::max(abs_term_sum(c, lo), abs_term_sum(c, hi));
        if (std::abs(fx) <= tol * scale || (hi - lo) <= tol * std::max(1.0, x)) {
            return RootResult{x, fx, iterations, lo, hi};
        }

        const double dx = dpoly(x);
        const double deriv_floor =
            std::numeric_limits<double>::epsilon() * abs_term_sum(dpoly.coeffs(), x);
        double next;
        if (std::abs(dx) > deriv_floor) {
            next = x - fx / dx;
            if (!(next > lo && next < hi)) {
                next = 0.5 * (lo + hi);  // Newton left the bracket
            }
        } else {
            next = 0.5 * (lo + hi);  // derivative too small to trust
        }
        x = next;
    }
    throw ConvergenceError("unique_positive_root: max_iter exhausted", lo, hi, iterations);
}

}  // namespace stakesim
