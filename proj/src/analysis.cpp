#include "saw/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "saw/lattice.hpp"

namespace saw {

Real g_eval(const Real& x) { return x * x + x * x * x; }

Real g_prime(const Real& x) { return 2 * x + 3 * x * x; }

Real h_eval(const Real& x) {
    Real x3 = x * x * x;
    return x3 + x3 * x;
}

Real g_inverse(const Real& y) {
    if (y < 0 || y > 2) fail(ErrorKind::OutOfDomain, "g_inverse needs y in [0, 2]");
    Real lo = 0, hi = 1;
    for (int i = 0; i < 120; ++i) {
        Real mid = (lo + hi) / 2;
        if (g_eval(mid) < y) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Real x = (lo + hi) / 2;
    const Real tol("1e-30");
    for (int i = 0; i < 8; ++i) {
        Real f = g_eval(x) - y;
        if (abs(f) < tol * tol) break;
        Real d = g_prime(x);
        if (d == 0) break;
        x -= f / d;
        if (x < 0) x = 0;
        if (x > 1) x = 1;
    }
    return x;
}

const char* direction_name(FixedPointTrace::Direction d) {
    switch (d) {
        case FixedPointTrace::Direction::increasing: return "increasing";
        case FixedPointTrace::Direction::decreasing: return "decreasing";
        case FixedPointTrace::Direction::constant: return "constant";
    }
    return "constant";
}

FixedPointTrace iterate_mu(const Real& mu0_inv, int k_max, const Real& tol) {
    if (mu0_inv < Real(1) / 2 || mu0_inv > 1)
        fail(ErrorKind::OutOfDomain, "iterate_mu needs mu0^{-1} in [1/2, 1]");
    if (k_max < 0) fail(ErrorKind::OutOfDomain, "k_max must be >= 0");
    const Real target = golden_mean_inverse();
    FixedPointTrace t;
    Real x = mu0_inv;
    for (int k = 0;; ++k) {
        t.iterates.push_back(x);
        t.errors.push_back(abs(x - target));
        if (t.errors.back() < tol) {
            t.converged = true;
            break;
        }
        if (k == k_max) break;
        x = g_inverse(x);
    }
    for (std::size_t k = 0; k + 1 < t.errors.size(); ++k) {
        if (t.errors[k] == 0) break;
        t.ratios.push_back(t.errors[k + 1] / t.errors[k]);
    }
    if (!t.ratios.empty()) t.asymptotic_ratio = t.ratios.back();
    t.direction = FixedPointTrace::Direction::constant;
    for (std::size_t k = 0; k + 1 < t.iterates.size(); ++k) {
        if (t.iterates[k + 1] > t.iterates[k]) {
            t.direction = FixedPointTrace::Direction::increasing;
            break;
        }
        if (t.iterates[k + 1] < t.iterates[k]) {
            t.direction = FixedPointTrace::Direction::decreasing;
            break;
        }
    }
    return t;
}

Real solve_mu_tilde(const Real& mu) {
    if (mu <= 1 || mu > 2) fail(ErrorKind::OutOfDomain, "solve_mu_tilde needs mu in (1, 2]");
    const Real target = 1 / (mu * mu);
    Real lo = 0, hi = 1;
    // h(1) = 2 >= mu^{-2} for mu >= 1, so the root lies in (0, 1).
    for (int i = 0; i < 130; ++i) {
        Real mid = (lo + hi) / 2;
        if (h_eval(mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Real x = (lo + hi) / 2;
    for (int i = 0; i < 8; ++i) {
        Real f = h_eval(x) - target;
        Real d = 3 * x * x + 4 * x * x * x;
        if (d == 0) break;
        x -= f / d;
    }
    return 1 / x;
}

// --- identity verification ---------------------------------------------------

namespace {

IdentityReport make_pass(std::string name, int max_degree, std::string note = "") {
    IdentityReport r;
    r.name = std::move(name);
    r.max_degree = max_degree;
    r.pass = true;
    r.note = std::move(note);
    return r;
}

void record_fail(IdentityReport& r, int degree, const BigInt& lhs, const BigInt& rhs) {
    if (r.pass || degree < r.fail_degree) {
        r.pass = false;
        r.fail_degree = degree;
        r.lhs = lhs.str();
        r.rhs = rhs.str();
    }
}

} // namespace

IdentityReport verify_fisher_identity(const CountSeries& series0,
                                      const CountSeries& series1_star, int max_degree) {
    if (series1_star.end_filter != EndFilter::midedge_of_original ||
        series1_star.start_mode != StartMode::midedge)
        fail(ErrorKind::WrongSeriesKind,
             "the transformed-side series must be mid-edge walks end-filtered to original edges");
    CountSeries substituted = substitute_series(series0, SubstitutionRule::x_to_x2_1px);
    if (substituted.exact_to < max_degree)
        fail(ErrorKind::DegreeUnavailable,
             "base series supports degree " + std::to_string(substituted.exact_to) +
                 " < requested " + std::to_string(max_degree) +
                 " (enumerate the base series further)");
    if (series1_star.exact_to < max_degree || series1_star.n_max() < max_degree)
        fail(ErrorKind::DegreeUnavailable, "transformed series is shorter than requested degree");

    IdentityReport r = make_pass("fisher-identity Z0(x^2(1+x)) = Z1*(x)", max_degree);
    for (int m = 0; m <= max_degree; ++m) {
        const BigInt& lhs = substituted.counts[m];
        const BigInt& rhs = series1_star.counts[m];
        if (lhs != rhs) record_fail(r, m, lhs, rhs);
    }
    return r;
}

IdentityReport verify_sandwich_full(const DirectedSplitSeries& z1,
                                    const DirectedSplitSeries& z1_star, int domain_size,
                                    int max_degree) {
    if (z1.directed.n_max() < max_degree || z1_star.directed.n_max() < max_degree)
        fail(ErrorKind::DegreeUnavailable, "series shorter than requested degree");
    IdentityReport r = make_pass("sandwich Z1* <= Z1 <= (1+2x+2x^2+2x^3)^2 Z1* + 6|W0|(1+x+x^2)",
                                 max_degree, "reversal-paired counts");
    std::vector<BigInt> lower = z1_star.undirected();
    std::vector<BigInt> upper = z1.undirected();

    for (int m = 0; m <= max_degree; ++m) {
        // Containment Sigma1* within Sigma1 holds per orientation class.
        if (lower[m] > upper[m]) record_fail(r, m, lower[m], upper[m]);
    }
    const std::vector<BigInt> ext = {1, 2, 2, 2};
    std::vector<BigInt> ext_sq = poly_mul(ext, ext, max_degree + 1);
    std::vector<BigInt> rhs = poly_mul(ext_sq, lower, max_degree + 1);
    for (int m = 0; m <= std::min(2, max_degree); ++m) rhs[m] += 6 * domain_size;
    for (int m = 0; m <= max_degree; ++m) {
        if (upper[m] > rhs[m]) record_fail(r, m, upper[m], rhs[m]);
    }
    return r;
}

IdentityReport verify_sandwich_bipartite(const CountSeries& s_series,
                                         const CountSeries& c_series, int domain_size,
                                         int max_degree) {
    if (s_series.n_max() < max_degree || c_series.n_max() < max_degree)
        fail(ErrorKind::DegreeUnavailable, "series shorter than requested degree");
    IdentityReport r = make_pass("sandwich c_n <= s_n <= c_n + 4c_{n-1} + 8c_{n-2} + 12c_{n-3} + 18|W|",
                                 max_degree);
    auto c_at = [&](int n) -> BigInt { return n >= 0 ? c_series.counts[n] : BigInt(0); };
    for (int n = 0; n <= max_degree; ++n) {
        const BigInt& s = s_series.counts[n];
        if (c_at(n) > s) record_fail(r, n, c_at(n), s);
        BigInt rhs = c_at(n) + 4 * c_at(n - 1) + 8 * c_at(n - 2) + 12 * c_at(n - 3) +
                     18 * domain_size;
        if (s > rhs) record_fail(r, n, s, rhs);
    }
    return r;
}

IdentityReport verify_bipartite_substitution(const WeightedCounts& z_bw,
                                             const WeightedCounts& z_pqr, int max_degree) {
    if (z_bw.mode != WeightedCounts::Mode::black_white ||
        z_pqr.mode != WeightedCounts::Mode::pqr)
        fail(ErrorKind::WrongSeriesKind, "need a black/white and a pqr weighted count");
    if (z_bw.n_max < max_degree || z_pqr.n_max < max_degree)
        fail(ErrorKind::DegreeUnavailable, "weighted counts shorter than requested degree");

    IdentityReport r = make_pass("bipartite substitution Z~(p,q,r) = Z(q^2(1+p), r)", max_degree);
    auto bw_at = [&](int b, int w) -> BigInt {
        auto it = z_bw.counts.find({b, w, 0});
        return it == z_bw.counts.end() ? BigInt(0) : it->second;
    };
    auto pqr_at = [&](int i, int j, int k) -> BigInt {
        auto it = z_pqr.counts.find({i, j, k});
        return it == z_pqr.counts.end() ? BigInt(0) : it->second;
    };
    // Z(q^2(1+p), r): a (b, w) class contributes C(b, i) to monomial p^i q^{2b} r^w.
    for (int i = 0; i <= max_degree; ++i) {
        for (int j = 0; i + j <= max_degree; ++j) {
            for (int k = 0; i + j + k <= max_degree; ++k) {
                BigInt expected = 0;
                if (j % 2 == 0) {
                    int b = j / 2;
                    if (i <= b) expected = binomial(b, i) * bw_at(b, k);
                }
                BigInt actual = pqr_at(i, j, k);
                if (actual != expected) record_fail(r, i + j + k, actual, expected);
            }
        }
    }
    return r;
}

IdentityReport verify_two_pow_n(const WeightedCounts& z_pqr_full, const CountSeries& sigma0) {
    std::vector<BigInt> by_core = core_length_counts(z_pqr_full);
    const int t_max = std::min(z_pqr_full.n_max / 3, sigma0.n_max());
    IdentityReport r = make_pass("2^n correspondence sum_m c*_m = sum_n sigma_n 2^n", t_max,
                                 "grouped by contraction-image length");
    for (int t = 0; t <= t_max; ++t) {
        BigInt lhs = t < static_cast<int>(by_core.size()) ? by_core[t] : BigInt(0);
        BigInt rhs = sigma0.counts[t] * pow2(t);
        if (lhs != rhs) record_fail(r, t, lhs, rhs);
    }
    return r;
}

// --- estimation ----------------------------------------------------------------

namespace {

Real nth_root(const BigInt& value, int n) {
    return exp(log(Real(value)) / n);
}

RegressionResult least_squares(const std::vector<std::pair<Real, Real>>& pts, int lo, int hi) {
    RegressionResult r;
    r.window_lo = lo;
    r.window_hi = hi;
    Real sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int i = lo; i <= hi; ++i) {
        sx += pts[i].first;
        sy += pts[i].second;
        sxx += pts[i].first * pts[i].first;
        sxy += pts[i].first * pts[i].second;
        ++n;
    }
    Real det = n * sxx - sx * sx;
    if (det == 0) return r;
    r.slope = (n * sxy - sx * sy) / det;
    r.intercept = (sy - r.slope * sx) / n;
    Real ss = 0;
    for (int i = lo; i <= hi; ++i) {
        Real e = pts[i].second - (r.slope * pts[i].first + r.intercept);
        ss += e * e;
    }
    r.residual = sqrt(ss / n);
    return r;
}

} // namespace

MuEstimate estimate_mu(const CountSeries& series, bool cubic) {
    const int n_max = series.n_max();
    for (int n = 1; n <= n_max; ++n) {
        if (series.counts[n] <= 0)
            fail(ErrorKind::EmptySeries, "estimate_mu needs counts[n] > 0 for n >= 1");
    }
    if (n_max < 1) fail(ErrorKind::EmptySeries, "estimate_mu needs at least one positive length");
    MuEstimate m;
    m.roots_are_upper_bounds = series.vertex_transitive_single;
    m.cubic = cubic;
    for (int n = 1; n <= n_max; ++n) m.root_estimates.push_back(nth_root(series.counts[n], n));
    for (int n = 1; n < n_max; ++n)
        m.ratio_estimates.push_back(Real(series.counts[n + 1]) / Real(series.counts[n]));
    m.final_root = m.root_estimates.back();
    m.final_ratio = m.ratio_estimates.empty() ? Real(0) : m.ratio_estimates.back();
    if (cubic) {
        const Real slack("1e-50");
        for (int n = 1; n <= n_max; ++n) {
            Real bound = 2 * exp(log(Real(3) / 2) / n);
            const Real& root = m.root_estimates[n - 1];
            if (root < 1 - slack || root > bound + slack) m.cubic_range_ok = false;
        }
    }
    return m;
}

Real y_truncated(const CountSeries& series, const Real& x, const Real& y) {
    Real sum = Real(series.counts[0]);
    Real xn = 1;
    for (int n = 1; n <= series.n_max(); ++n) {
        xn *= x;
        sum += Real(series.counts[n]) * xn / pow(Real(n), y);
    }
    return sum;
}

Real v_truncated(const DisplacementSeries& disp, const Real& z) {
    Real sum = 0;
    for (int n = 1; n <= disp.n_max(); ++n) {
        if (disp.counts[n] == 0) continue;
        sum += disp.mean_sq(n) / pow(Real(n), 2 * z + 1);
    }
    return sum;
}

DiagnosticsReport exponent_diagnostics(const CountSeries& series, const DisplacementSeries* disp,
                                       const Real& mu, const std::vector<Real>& y_grid,
                                       const std::vector<Real>& z_grid,
                                       std::optional<Real> eta) {
    if (mu < 1) fail(ErrorKind::OutOfDomain, "exponent diagnostics need mu >= 1");
    DiagnosticsReport rep;
    std::vector<std::pair<Real, Real>> pts;
    const Real logmu = log(mu);
    for (int n = 1; n <= series.n_max(); ++n) {
        if (series.counts[n] <= 0) continue;
        pts.push_back({log(Real(n)), log(Real(series.counts[n])) - n * logmu});
    }
    if (static_cast<int>(pts.size()) < 8)
        fail(ErrorKind::InsufficientData, "gamma regression needs at least 8 usable lengths");
    {
        int count = static_cast<int>(pts.size());
        int window = std::max(8, count / 2);
        rep.gamma_fit = least_squares(pts, count - window, count - 1);
        rep.gamma_estimate = rep.gamma_fit.slope + 1;
    }
    if (disp) {
        std::vector<std::pair<Real, Real>> dpts;
        for (int n = 1; n <= disp->n_max(); ++n) {
            if (disp->counts[n] == 0 || disp->sum_sq[n] == 0) continue;
            dpts.push_back({log(Real(n)), log(disp->mean_sq(n))});
        }
        if (static_cast<int>(dpts.size()) < 8)
            fail(ErrorKind::InsufficientData, "nu regression needs at least 8 usable lengths");
        int count = static_cast<int>(dpts.size());
        int window = std::max(8, count / 2);
        rep.nu_fit = least_squares(dpts, count - window, count - 1);
        rep.nu_estimate = rep.nu_fit.slope / 2;
        rep.has_nu = true;
    }
    const Real x = 1 / mu;
    for (const Real& y : y_grid) rep.y_table.push_back({y, y_truncated(series, x, y)});
    if (disp) {
        for (const Real& z : z_grid) rep.v_table.push_back({z, v_truncated(*disp, z)});
    }
    if (eta && rep.has_nu) {
        rep.fisher_residual = rep.gamma_estimate - rep.nu_estimate * (2 - *eta);
    }
    return rep;
}

std::vector<TwoPointRow> two_point_decay(const BallGraph& ball, int v,
                                         std::span<const int> targets, const Real& x,
                                         int n_max) {
    if (x <= 0) fail(ErrorKind::OutOfDomain, "two_point_decay needs x > 0");
    auto table = endpoint_resolved_counts(ball, v, n_max);
    std::vector<int> dist = bfs_distance(ball, v);
    std::vector<TwoPointRow> rows;
    for (int w : targets) {
        if (w < 0 || w >= ball.vertex_count())
            fail(ErrorKind::NotInGraph, "two_point_decay target out of range");
        TwoPointRow row;
        row.target = w;
        row.distance = dist[w];
        row.truncation = n_max;
        Real sum = 0, xn = 1;
        for (int n = 0; n <= n_max; ++n) {
            if (n > 0) xn *= x;
            if (table[n][w] != 0) sum += Real(table[n][w]) * xn;
        }
        row.z_value = sum;
        rows.push_back(row);
    }
    return rows;
}

} // namespace saw
