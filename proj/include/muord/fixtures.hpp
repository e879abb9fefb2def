#pragma once

#include "muord/display.hpp"
#include "muord/omod.hpp"

namespace muord {
namespace fixtures {

// The two product-incompatibility modules (f = 2): G1 has signature
// (q_tau, q_tau') = (1, 2) on rank 2, G2 has (2, 0) on rank 3; G1 and G2 are
// mu-ordinary but G1 x G2 is not, and k-additivity fails at tau = 0.
ODieudonneModule g1(long long p, int r);
ODieudonneModule g2(long long p, int r);

// Rank-2 one-parameter Newton-stratum display: the special fiber has the
// antidiagonal Verschiebung block (0 p; 1 0) at the distinguished component
// and p^{n_j} I_2 elsewhere (n_j in {0,1}).  Its universal deformation has
// V^f = p^k (0 p; 1 -X) up to Frobenius twists of X.
Display strata_display(long long p, int f, const std::vector<int>& n, int owner, int r_w,
                       int deg);

// The height-4, f = 2, signature ((1,1),(0,2)) worked example: special-fiber
// Hasse-Witt blocks I_2 and (0 1; 1 0).
Display worked_display(long long p, int r_w, int deg);

} // namespace fixtures
} // namespace muord
