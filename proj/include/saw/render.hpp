#ifndef SAW_RENDER_HPP
#define SAW_RENDER_HPP

#include <string>

#include "saw/analysis.hpp"
#include "saw/enumerate.hpp"
#include "saw/fisher.hpp"
#include "saw/lattice.hpp"

namespace saw {

/// One node per vertex labelled "cell/local"; dashed edges for Fisher
/// triangle sides.
std::string ball_to_dot(const BallGraph& ball);

/// Deterministic SVG of a ball on the spec embedding. tree3 falls back to a
/// radial layout; other embeddings are required.
std::string ball_to_svg(const BallGraph& ball);

std::string gasket_to_dot(const GasketGraph& g);
std::string gasket_to_svg(const GasketGraph& g);

/// mu_k^{-1} against k with the phi^{-1} asymptote.
std::string convergence_plot_svg(const FixedPointTrace& trace);

/// log10 of counts against n.
std::string series_plot_svg(const CountSeries& series);

} // namespace saw

#endif // SAW_RENDER_HPP
