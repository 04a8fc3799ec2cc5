#include "saw/pipelines.hpp"

#include <memory>

namespace saw {

namespace {

std::shared_ptr<const LatticeSpec> shared(const LatticeSpec& spec) {
    return std::make_shared<const LatticeSpec>(spec);
}

} // namespace

FisherVerification run_fisher_verification(const LatticeSpec& base, int degree,
                                           const EnumOptions& opt) {
    base.validate();
    FisherResult fr = fisher_full(base);

    const int n0 = degree / 2;  // 2*n0 + 1 >= degree covers every compared coefficient
    BallGraph ball0 = BallGraph::build(shared(base), n0 + 1);
    std::vector<int> x0 = incident_edges(ball0, domain_vertices(ball0));
    CountSeries sigma0 = count_from_midedges(ball0, x0, n0, EndFilter::any, opt);

    BallGraph ball1 = BallGraph::build(shared(fr.transformed), degree + 1);
    std::vector<int> x0_images =
        incident_edges(ball1, domain_vertices(ball1), EdgeOrigin::original);
    WeightedCounts pqr = weighted_pqr(ball1, x0_images, degree);
    CountSeries sigma1_star =
        series_from_pqr(pqr, EndFilter::midedge_of_original, "images of X0");

    FisherVerification out;
    out.identity = verify_fisher_identity(sigma0, sigma1_star, degree);
    out.two_pow_n = verify_two_pow_n(pqr, sigma0);
    return out;
}

IdentityReport run_sandwich_full(const LatticeSpec& base, int degree, const EnumOptions& opt) {
    base.validate();
    FisherResult fr = fisher_full(base);
    BallGraph ball1 = BallGraph::build(shared(fr.transformed), degree + 1);
    std::vector<int> seeds = domain_vertices(ball1);
    std::vector<int> x1 = incident_edges(ball1, seeds);
    std::vector<int> x0_images = incident_edges(ball1, seeds, EdgeOrigin::original);
    DirectedSplitSeries z1 =
        count_from_midedges_with_reversal_split(ball1, x1, degree, EndFilter::any, opt);
    DirectedSplitSeries z1_star = count_from_midedges_with_reversal_split(
        ball1, x0_images, degree, EndFilter::midedge_of_original, opt);
    return verify_sandwich_full(z1, z1_star, static_cast<int>(base.domain.size()), degree);
}

IdentityReport run_sandwich_bipartite(const LatticeSpec& base, int degree,
                                      const EnumOptions& opt) {
    base.validate();
    FisherResult fr = fisher_black(base);
    BallGraph ball = BallGraph::build(shared(fr.transformed), degree + 1);
    std::vector<int> seeds = domain_vertices(ball);
    std::vector<int> x_images = incident_edges(ball, seeds, EdgeOrigin::original);
    std::vector<int> x_tilde = incident_edges(ball, seeds);
    CountSeries c_series =
        count_from_midedges(ball, x_images, degree, EndFilter::midedge_of_original, opt);
    CountSeries s_series = count_from_midedges(ball, x_tilde, degree, EndFilter::any, opt);
    return verify_sandwich_bipartite(s_series, c_series, static_cast<int>(base.domain.size()),
                                     degree);
}

IdentityReport run_bipartite_substitution(const LatticeSpec& base, int degree) {
    base.validate();
    FisherResult fr = fisher_black(base);

    BallGraph ball = BallGraph::build(shared(base), degree + 1);
    std::vector<int> x = incident_edges(ball, domain_vertices(ball));
    WeightedCounts z_bw = weighted_black_white(ball, x, degree);

    BallGraph tball = BallGraph::build(shared(fr.transformed), degree + 1);
    std::vector<int> x_images =
        incident_edges(tball, domain_vertices(tball), EdgeOrigin::original);
    WeightedCounts z_pqr = weighted_pqr(tball, x_images, degree);

    return verify_bipartite_substitution(z_bw, z_pqr, degree);
}

} // namespace saw
