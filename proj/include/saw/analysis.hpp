#ifndef SAW_ANALYSIS_HPP
#define SAW_ANALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "saw/enumerate.hpp"
#include "saw/numeric.hpp"

namespace saw {

// --- the maps behind the connective-constant relations ----------------------

Real g_eval(const Real& x);   // x^2 + x^3
Real g_prime(const Real& x);  // 2x + 3x^2
Real h_eval(const Real& x);   // x^3 + x^4

/// Unique root in [0, 1] of x^2 + x^3 = y, for y in [0, 2]; bisection plus a
/// Newton polish to 1e-30.
Real g_inverse(const Real& y);

struct FixedPointTrace {
    enum class Direction { increasing, decreasing, constant };
    std::vector<Real> iterates;  // mu_k^{-1}
    std::vector<Real> errors;    // |mu_k^{-1} - phi^{-1}|
    std::vector<Real> ratios;    // errors[k+1] / errors[k]
    Direction direction = Direction::constant;
    bool converged = false;
    Real asymptotic_ratio = 0;   // last available ratio
};

const char* direction_name(FixedPointTrace::Direction d);

/// Iterates mu_{k+1}^{-1} = g^{-1}(mu_k^{-1}) from mu0_inv in [1/2, 1] until
/// the error against phi^{-1} drops below tol or k_max steps pass.
FixedPointTrace iterate_mu(const Real& mu0_inv, int k_max, const Real& tol);

/// mu_tilde with mu_tilde^{-1} the unique positive root of x^3 + x^4 = mu^-2,
/// for mu in (1, 2].
Real solve_mu_tilde(const Real& mu);

// --- coefficient-wise identity verification ---------------------------------

struct IdentityReport {
    std::string name;
    int max_degree = 0;
    bool pass = false;
    int fail_degree = -1;
    std::string lhs, rhs;   // mismatching values when failing
    std::string note;
};

/// Eq-style check: substitute x -> x^2(1+x) into the base series and compare
/// coefficients with the end-filtered series on the transformed graph.
IdentityReport verify_fisher_identity(const CountSeries& series0,
                                      const CountSeries& series1_star, int max_degree);

/// Full-Fisher sandwich. The containment check runs on directed counts; the
/// upper bound compares reversal-paired counts, which is the form the
/// extension argument bounds (directed counts overshoot it at small degrees
/// through length-0 cores). Exact integers throughout.
IdentityReport verify_sandwich_full(const DirectedSplitSeries& z1,
                                    const DirectedSplitSeries& z1_star, int domain_size,
                                    int max_degree);

/// Bipartite sandwich c_n <= s_n <= c_n + 4c_{n-1} + 8c_{n-2} + 12c_{n-3} + 18|W|,
/// on directed counts.
IdentityReport verify_sandwich_bipartite(const CountSeries& s_series,
                                         const CountSeries& c_series, int domain_size,
                                         int max_degree);

/// Trivariate identity: Z~(p,q,r) coefficients must match the expansion of
/// Z(q^2(1+p), r) from the bivariate counts, for total degree <= max_degree.
IdentityReport verify_bipartite_substitution(const WeightedCounts& z_bw,
                                             const WeightedCounts& z_pqr, int max_degree);

/// The 2^n correspondence: walks on the transformed graph grouped by the
/// length t of their triangle-contraction image must number sigma_t * 2^t.
IdentityReport verify_two_pow_n(const WeightedCounts& z_pqr_full,
                                const CountSeries& sigma0);

// --- connective-constant estimation and exponent diagnostics ----------------

struct MuEstimate {
    std::vector<Real> root_estimates;    // sigma_n^(1/n), n >= 1
    std::vector<Real> ratio_estimates;   // sigma_{n+1} / sigma_n
    bool roots_are_upper_bounds = false; // vertex-transitive single-vertex series
    bool cubic = false;
    bool cubic_range_ok = true;          // 1 <= root_n <= 2 * (3/2)^(1/n)
    Real final_root = 0;
    Real final_ratio = 0;
};

MuEstimate estimate_mu(const CountSeries& series, bool cubic);

struct RegressionResult {
    Real slope = 0, intercept = 0, residual = 0;
    int window_lo = 0, window_hi = 0;
};

struct DiagnosticsReport {
    RegressionResult gamma_fit;
    Real gamma_estimate = 0;
    bool has_nu = false;
    RegressionResult nu_fit;
    Real nu_estimate = 0;
    std::vector<std::pair<Real, Real>> y_table;  // (y, Y_N(mu^{-1}, y))
    std::vector<std::pair<Real, Real>> v_table;  // (z, V_N(z))
    std::optional<Real> fisher_residual;         // gamma - nu (2 - eta)
};

/// Truncated-series exponent diagnostics; regression windows are the trailing
/// half of the usable lengths, at least 8 points. Heuristic, report-only.
DiagnosticsReport exponent_diagnostics(const CountSeries& series, const DisplacementSeries* disp,
                                       const Real& mu, const std::vector<Real>& y_grid,
                                       const std::vector<Real>& z_grid,
                                       std::optional<Real> eta = std::nullopt);

/// Y_N(x, y) = sum_n sigma_n x^n / n^y with the n = 0 term over denominator 1.
Real y_truncated(const CountSeries& series, const Real& x, const Real& y);

/// V_N(z) = sum_{n>=1} <||pi||^2>_n / n^{2z+1}.
Real v_truncated(const DisplacementSeries& disp, const Real& z);

struct TwoPointRow {
    int target = 0;      // dense vertex index
    int distance = 0;    // d_G(v, w)
    Real z_value = 0;    // truncated Z_{v,w}(x)
    int truncation = 0;
};

std::vector<TwoPointRow> two_point_decay(const BallGraph& ball, int v,
                                         std::span<const int> targets, const Real& x,
                                         int n_max);

} // namespace saw

#endif // SAW_ANALYSIS_HPP
