#ifndef SAW_IO_HPP
#define SAW_IO_HPP

#include <string>

#include "saw/analysis.hpp"
#include "saw/enumerate.hpp"
#include "saw/fisher.hpp"
#include "saw/lattice.hpp"

namespace saw {

/// Parse the JSON spec file format. Restores origin tags from an optional
/// "maps" section written by transform serialization.
LatticeSpec load_spec(const std::string& text);

std::string serialize_spec(const LatticeSpec& spec);
std::string serialize_fisher(const FisherResult& fr);

std::string series_to_json(const CountSeries& series);
CountSeries series_from_json(const std::string& text);
std::string series_to_csv(const CountSeries& series);

std::string weighted_to_json(const WeightedCounts& w);
std::string displacement_to_json(const DisplacementSeries& d);
std::string displacement_to_csv(const DisplacementSeries& d);

std::string report_to_json(const IdentityReport& r);
std::string reports_to_json(const std::vector<IdentityReport>& rs);
std::string trace_to_json(const FixedPointTrace& t, int digits);
std::string trace_to_csv(const FixedPointTrace& t, int digits);
std::string estimate_to_json(const MuEstimate& m, int digits);
std::string diagnostics_to_json(const DiagnosticsReport& rep, int digits);
std::string structure_to_json(const StructureReport& r);
std::string two_point_rows_to_json(const BallGraph& ball, const std::vector<TwoPointRow>& rows,
                                   int digits);

/// Write via a temporary file in the same directory plus rename.
void atomic_write(const std::string& path, const std::string& content);

} // namespace saw

#endif // SAW_IO_HPP
