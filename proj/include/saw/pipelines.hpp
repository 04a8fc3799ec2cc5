#ifndef SAW_PIPELINES_HPP
#define SAW_PIPELINES_HPP

#include "saw/analysis.hpp"
#include "saw/enumerate.hpp"
#include "saw/fisher.hpp"
#include "saw/lattice.hpp"

namespace saw {

/// End-to-end identity runs: ball radii and start sets are derived from the
/// requested degree so every comparison is exact.

struct FisherVerification {
    IdentityReport identity;    // Z0(x^2(1+x)) = Z1*(x), coefficient-wise
    IdentityReport two_pow_n;   // per-core 2^n correspondence
};

FisherVerification run_fisher_verification(const LatticeSpec& base, int degree,
                                           const EnumOptions& opt = {});

IdentityReport run_sandwich_full(const LatticeSpec& base, int degree,
                                 const EnumOptions& opt = {});

IdentityReport run_sandwich_bipartite(const LatticeSpec& base, int degree,
                                      const EnumOptions& opt = {});

IdentityReport run_bipartite_substitution(const LatticeSpec& base, int degree);

} // namespace saw

#endif // SAW_PIPELINES_HPP
