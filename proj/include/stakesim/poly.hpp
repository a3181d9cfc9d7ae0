#pragma once

#include <stdexcept>
#include <vector>

namespace stakesim {

// Real polynomial of degree <= 4, coefficients stored ascending (index k
// holds the coefficient of x^k). Trailing zero coefficients are trimmed
// exactly; fuzzy trimming is the caller's responsibility so the Descartes
// sign count is never changed silently.
class Polynomial {
public:
    explicit Polynomial(std::vector<double> coeffs);

    // Horner evaluation. Infinities propagate, they are never clamped.
    double operator()(double x) const;

    // Derivative polynomial (zero polynomial for constants).
    Polynomial derivative() const;

    // Degree after trimming; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<double>& coeffs() const { return coeffs_; }

    // Cauchy upper bound on the magnitude of any root:
    // 1 + max_k |c_k / c_lead|. Requires a nonzero polynomial.
    double cauchy_root_bound() const;

private:
    std::vector<double> coeffs_;
};

// Number of sign alternations in the nonzero coefficients read from the
// highest degree down. Throws std::domain_error for the zero polynomial.
int count_sign_changes(const Polynomial& poly);

struct RootResult {
    double root = 0.0;        // > 0
    double residual = 0.0;    // polynomial value at root
    int iterations = 0;
    double bracket_lo = 0.0;  // final enclosing interval
    double bracket_hi = 0.0;
};

// Bracket expansion walked past the Cauchy bound without a sign change.
class NoRootError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Iteration budget exhausted; carries the best enclosing bracket.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double lo, double hi, int iterations)
        : std::runtime_error(what), bracket_lo(lo), bracket_hi(hi), iterations(iterations) {}
    double bracket_lo;
    double bracket_hi;
    int iterations;
};

// Unique positive root of a polynomial with exactly one coefficient sign
// change (re-verified; throws std::domain_error otherwise). Geometric
// bracket expansion, coarse bisection, then Newton polishing that falls
// back to bisection whenever a step leaves the bracket or the derivative
// collapses. Terminates when |p(x)| <= tol * scale with scale the largest
// sum of absolute term magnitudes over the bracket endpoints, or when the
// bracket width drops below tol * max(1, root).
RootResult unique_positive_root(const Polynomial& poly, double tol = 1e-12,
                                int max_iter = 200);

}  // namespace stakesim
