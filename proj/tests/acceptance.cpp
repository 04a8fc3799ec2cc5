// Acceptance suite: one line per criterion, nonzero exit on any failure.
//
//  1  Fisher partition-function identity, exact coefficients
//  2  sandwich inequalities (full and bipartite variants)
//  3  trivariate bipartite substitution identity
//  4  golden-mean fixed point: monotone convergence and contraction rates
//  5  decorated hexagonal constant
//  6  connective-constant envelopes from exact series
//  7  oracle equivalence and parallel determinism
//  8  the 2^n triangle-circumnavigation correspondence
//  9  exponent diagnostics (property checks only)

#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "saw/analysis.hpp"
#include "saw/enumerate.hpp"
#include "saw/fisher.hpp"
#include "saw/lattice.hpp"
#include "saw/pipelines.hpp"

using namespace saw;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& what, bool ok, const std::string& detail = "") {
    std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion, what.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

std::shared_ptr<LatticeSpec> make(const std::string& name) {
    auto s = std::make_shared<LatticeSpec>(builtin(name));
    s->validate();
    return s;
}

std::string brief(const IdentityReport& r) {
    if (r.pass) return "verified to degree " + std::to_string(r.max_degree);
    return "first mismatch at degree " + std::to_string(r.fail_degree) + " (" + r.lhs +
           " vs " + r.rhs + ")";
}

// 1. Z0(x^2(1+x)) = Z1*(x): hexagonal to degree 24, ladder and square/octagon
//    to degree 20, exact integer coefficients.
void criterion_1(const EnumOptions& opt) {
    bool ok = true;
    std::ostringstream detail;
    for (auto [name, degree] : std::initializer_list<std::pair<const char*, int>>{
             {"hexagonal", 24}, {"ladder", 20}, {"square_octagon", 20}}) {
        FisherVerification v = run_fisher_verification(builtin(name), degree, opt);
        ok = ok && v.identity.pass;
        detail << name << "@" << degree << (v.identity.pass ? " ok" : " FAIL") << "  ";
        if (!v.identity.pass) detail << brief(v.identity) << "  ";
    }
    report(1, "Fisher identity Z0(x^2(1+x)) = Z1*(x)", ok, detail.str());
}

// 2. Sandwich inequalities at degree 20 on both Fisher variants of the
//    hexagonal lattice.
void criterion_2(const EnumOptions& opt) {
    IdentityReport full = run_sandwich_full(builtin("hexagonal"), 20, opt);
    IdentityReport bip = run_sandwich_bipartite(builtin("hexagonal"), 20, opt);
    bool ok = full.pass && bip.pass;
    std::string detail = "full: " + brief(full) + "; bipartite: " + brief(bip);
    report(2, "sandwich inequalities on fisher images of hexagonal", ok, detail);
}

// 3. Z~(p,q,r) = Z(q^2(1+p), r) to total degree 18, hexagonal vs its
//    black-Fisher image.
void criterion_3() {
    IdentityReport r = run_bipartite_substitution(builtin("hexagonal"), 18);
    report(3, "bipartite substitution identity", r.pass, brief(r));
}

// 4. Golden-mean fixed point.
void criterion_4() {
    const Real tol("1e-12");
    const Real ratio_bound = Real(4) / 7 + Real("1e-12");
    const Real ratio_target = 2 / (7 - sqrt(Real(5)));
    const Real phi_inv = golden_mean_inverse();
    bool ok = true;
    std::ostringstream detail;
    std::vector<std::pair<std::string, Real>> starts = {
        {"0.5", Real(1) / 2},  {"0.55", Real("0.55")}, {"phi^-1", phi_inv},
        {"0.7", Real("0.7")},  {"1.0", Real(1)}};
    for (const auto& [label, start] : starts) {
        FixedPointTrace t = iterate_mu(start, 60, tol);
        bool conv = t.converged && static_cast<int>(t.iterates.size()) <= 61;
        bool mono = true;
        for (std::size_t k = 0; k + 2 < t.iterates.size(); ++k) {
            auto d1 = t.iterates[k + 1] - t.iterates[k];
            auto d2 = t.iterates[k + 2] - t.iterates[k + 1];
            if (d1 * d2 < 0) mono = false;
        }
        bool contract = true;
        for (const Real& r : t.ratios)
            if (r > ratio_bound) contract = false;
        bool trailing = true;
        if (start != phi_inv) trailing = abs(t.asymptotic_ratio - ratio_target) < Real("1e-3");
        bool this_ok = conv && mono && contract && trailing;
        ok = ok && this_ok;
        detail << label << (this_ok ? " ok" : " FAIL") << " (" << t.iterates.size() - 1
               << " steps)  ";
    }
    report(4, "golden-mean fixed point, monotone at rate <= 4/7, trailing ~0.419821", ok,
           detail.str());
}

// 5. Decorated hexagonal constant.
void criterion_5() {
    const Real mu = sqrt(2 + sqrt(Real(2)));
    Real mu_tilde = solve_mu_tilde(mu);
    Real residual = abs(h_eval(1 / mu_tilde) - 1 / (mu * mu));
    bool value_ok = abs(mu_tilde - Real("1.75056")) < Real("5e-5");
    bool residual_ok = residual < Real("1e-10");
    std::ostringstream detail;
    detail << "mu~ = " << real_to_string(mu_tilde, 12) << ", residual "
           << real_to_string(residual, 3);
    report(5, "decorated hexagonal constant 1.75056", value_ok && residual_ok, detail.str());
}

// 6. Connective-constant envelopes.
void criterion_6(const EnumOptions& opt) {
    bool ok = true;
    std::ostringstream detail;
    {
        auto ball = BallGraph::build(make("hexagonal"), 31);
        std::vector<int> starts = {ball.seeds().front()};
        CountSeries s = count_from_vertices(ball, starts, 30, opt);
        MuEstimate m = estimate_mu(s, true);
        bool floor_ok = true;
        for (const Real& r : m.root_estimates)
            if (r < Real("1.84775")) floor_ok = false;
        bool top_ok = m.final_root <= Real("2.05");
        ok = ok && floor_ok && top_ok && m.roots_are_upper_bounds && m.cubic_range_ok;
        detail << "hexagonal n=30 root " << real_to_string(m.final_root, 6)
               << (floor_ok && top_ok ? " ok" : " FAIL") << "  ";
    }
    {
        auto ball = BallGraph::build(make("ladder"), 31);
        std::vector<int> starts = {ball.seeds().front()};
        MuEstimate m = estimate_mu(count_from_vertices(ball, starts, 30, opt), true);
        bool lad_ok = abs(m.final_ratio - golden_mean()) < Real("1e-2");
        ok = ok && lad_ok;
        detail << "ladder ratio " << real_to_string(m.final_ratio, 6)
               << (lad_ok ? " ok" : " FAIL") << "  ";
    }
    {
        auto ball = BallGraph::build(make("tree3"), 17);
        std::vector<int> starts = {ball.seeds().front()};
        CountSeries s = count_from_vertices(ball, starts, 16, opt);
        bool tree_ok = true;
        for (int n = 1; n < 16; ++n)
            if (s.counts[n + 1] != 2 * s.counts[n]) tree_ok = false;
        MuEstimate m = estimate_mu(s, true);
        tree_ok = tree_ok && m.final_ratio == 2;
        ok = ok && tree_ok;
        detail << "tree3 ratio exactly 2" << (tree_ok ? " ok" : " FAIL");
    }
    report(6, "connective-constant envelopes (roots are upper bounds)", ok, detail.str());
}

// 7. Oracle equivalence for n <= 8 on every builtin; parallel counts equal
//    single-threaded counts bit-exactly to n = 24 on hexagonal.
void criterion_7() {
    bool ok = true;
    std::ostringstream detail;
    for (const auto& name : builtin_names()) {
        auto ball = BallGraph::build(make(name), 10);
        std::vector<int> starts = {ball.seeds().front()};
        CountSeries s = count_from_vertices(ball, starts, 8);
        bool match = true;
        for (int n = 0; n <= 8; ++n) {
            if (s.counts[n] != saw_oracle::oracle_vertex_count(ball, starts, n)) match = false;
        }
        ok = ok && match;
        detail << name << (match ? " ok" : " FAIL") << "  ";
    }
    {
        auto ball = BallGraph::build(make("hexagonal"), 10);
        auto x0 = incident_edges(ball, domain_vertices(ball));
        CountSeries s = count_from_midedges(ball, x0, 8);
        bool match = true;
        for (int n = 0; n <= 8; ++n) {
            if (s.counts[n] !=
                saw_oracle::oracle_midedge_count(ball, x0, n, EndFilter::any))
                match = false;
        }
        ok = ok && match;
        detail << "hexagonal-midedge" << (match ? " ok" : " FAIL") << "  ";
    }
    {
        auto ball = BallGraph::build(make("hexagonal"), 25);
        std::vector<int> starts = {ball.seeds().front()};
        EnumOptions serial;
        EnumOptions par;
        par.workers = 4;
        CountSeries a = count_from_vertices(ball, starts, 24, serial);
        CountSeries b = count_from_vertices(ball, starts, 24, par);
        bool same = a.counts == b.counts;
        ok = ok && same;
        detail << "parallel-determinism n=24" << (same ? " ok" : " FAIL");
    }
    report(7, "oracle equivalence and parallel determinism", ok, detail.str());
}

// 8. 2^n correspondence on hexagonal and ladder.
void criterion_8(const EnumOptions& opt) {
    bool ok = true;
    std::ostringstream detail;
    for (auto [name, degree] : std::initializer_list<std::pair<const char*, int>>{
             {"hexagonal", 24}, {"ladder", 21}}) {
        FisherVerification v = run_fisher_verification(builtin(name), degree, opt);
        ok = ok && v.two_pow_n.pass;
        detail << name << " cores<=" << v.two_pow_n.max_degree
               << (v.two_pow_n.pass ? " ok" : " FAIL") << "  ";
        if (!v.two_pow_n.pass) detail << brief(v.two_pow_n) << "  ";
    }
    report(8, "2^n circumnavigation correspondence", ok, detail.str());
}

// 9. Exponent diagnostics, property checks only.
void criterion_9() {
    bool ok = true;
    std::ostringstream detail;
    {
        auto ball = BallGraph::build(make("line"), 40);
        auto x = incident_edges(ball, domain_vertices(ball));
        CountSeries s = count_from_midedges(ball, x, 18);
        DisplacementSeries d = displacement_series(ball, x, 18);
        DiagnosticsReport rep = exponent_diagnostics(
            s, &d, Real("1.0000001"), {Real(0), Real(1), Real(2)},
            {Real(0), Real(1) / 2, Real(1)}, std::nullopt);
        bool line_ok = abs(rep.gamma_estimate - 1) < Real("0.05") &&
                       abs(rep.nu_estimate - 1) < Real("0.05");
        ok = ok && line_ok;
        detail << "line gamma " << real_to_string(rep.gamma_estimate, 4) << " nu "
               << real_to_string(rep.nu_estimate, 4) << (line_ok ? " ok" : " FAIL") << "  ";
    }
    {
        auto ball = BallGraph::build(make("hexagonal"), 36);
        auto x = incident_edges(ball, domain_vertices(ball));
        CountSeries s = count_from_midedges(ball, x, 20);
        DisplacementSeries d = displacement_series(ball, x, 16);
        const Real mu = sqrt(2 + sqrt(Real(2)));
        std::vector<Real> ygrid, zgrid;
        for (int i = 0; i <= 8; ++i) ygrid.push_back(Real(i) / 4);
        for (int i = 0; i <= 8; ++i) zgrid.push_back(Real(i) / 4);
        DiagnosticsReport rep = exponent_diagnostics(s, &d, mu, ygrid, zgrid, std::nullopt);
        bool mono_v = true, mono_y = true;
        for (std::size_t i = 0; i + 1 < rep.v_table.size(); ++i)
            if (rep.v_table[i].second < rep.v_table[i + 1].second) mono_v = false;
        for (std::size_t i = 0; i + 1 < rep.y_table.size(); ++i)
            if (rep.y_table[i].second < rep.y_table[i + 1].second) mono_y = false;
        bool finite = isfinite(rep.gamma_estimate) && isfinite(rep.nu_estimate) &&
                      isfinite(rep.gamma_fit.residual) && isfinite(rep.nu_fit.residual);
        ok = ok && mono_v && mono_y && finite;
        detail << "hexagonal gamma " << real_to_string(rep.gamma_estimate, 4) << " (resid "
               << real_to_string(rep.gamma_fit.residual, 3) << ") nu "
               << real_to_string(rep.nu_estimate, 4) << " (resid "
               << real_to_string(rep.nu_fit.residual, 3) << ")"
               << "; V non-increasing " << (mono_v ? "ok" : "FAIL") << ", Y non-increasing "
               << (mono_y ? "ok" : "FAIL");
    }
    report(9, "exponent diagnostics are property-clean", ok, detail.str());
}

} // namespace

int main() {
    EnumOptions opt;
    opt.workers = 4;
    try {
        criterion_1(opt);
        criterion_2(opt);
        criterion_3();
        criterion_4();
        criterion_5();
        criterion_6(opt);
        criterion_7();
        criterion_8(opt);
        criterion_9();
    } catch (const std::exception& e) {
        std::printf("[FAIL] acceptance aborted: %s\n", e.what());
        return 1;
    }
    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
}
