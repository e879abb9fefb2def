#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "muord/polygons.hpp"
#include "muord/semilinear.hpp"

namespace muord {

// Signature (p_tau, q_tau) of an O-module p-divisible group; p_tau + q_tau = h.
struct Signature {
    int f = 0, h = 0;
    std::vector<int> q; // q[tau]; p[tau] = h - q[tau]

    int p_tau(int tau) const { return h - q[mod_f(tau)]; }
    int q_tau(int tau) const { return q[mod_f(tau)]; }
    int d() const; // sum of p_tau
    int mod_f(int tau) const { return ((tau % f) + f) % f; }

    bool operator==(const Signature& o) const { return f == o.f && h == o.h && q == o.q; }
};

// k_tau = sum over tau' with q_{tau'} < q_tau of (q_tau - q_{tau'}): the
// exact p-divisibility order of the q_tau-th exterior power of V^f.
int k_tau(const Signature& sig, int tau);

// Hodge polygon determined by the signature alone: ascending slopes
// #{tau : q_tau <= j-1}/f at position j.
RatPolygon hodge_polygon_of_signature(const Signature& sig);

// tau-graded Dieudonne module over W_r(F_{p^m}), f | m.  Grading indices live
// in Z/f with V lowering the index: V_tau : M_tau -> M_{tau-1} is
// sigma^{-1}-linear and stored as the matrix A with V(x) = A sigma^{-1}(x).
// F_tau : M_tau -> M_{tau+1} is sigma-linear, F(x) = F_tau sigma(x), and
// satisfies F_{tau-1} sigma(V_tau) = p Id (so FV = VF = p).
class ODieudonneModule {
  public:
    ODieudonneModule(WittRingPtr ring, int f, int h, std::vector<Mat<WittScalar>> vmats,
                     std::optional<std::vector<Mat<WittScalar>>> fmats = std::nullopt);

    const WittRingPtr& ring() const { return ring_; }
    int f() const { return f_; }
    int h() const { return h_; }
    int r() const { return ring_->r(); }
    const Mat<WittScalar>& V(int tau) const { return vmats_[mod_f(tau)]; }
    bool has_F() const { return fmats_.has_value(); }
    bool f_reconstructed() const { return f_reconstructed_; }
    const Mat<WittScalar>& F(int tau) const;

    int mod_f(int tau) const { return ((tau % f_) + f_) % f_; }

    // throws invalid_module_error if FV != p or some V has an elementary
    // divisor exponent outside {0, 1}
    void validate() const;

    // V^f restricted to M_tau as a twisted map (twist -f mod m)
    TwistedMap vf_map(int tau) const;

    // reconstruct F from V as p V^{-1} (flags f_reconstructed)
    ODieudonneModule with_F() const;

  private:
    WittRingPtr ring_;
    int f_, h_;
    std::vector<Mat<WittScalar>> vmats_;
    std::optional<std::vector<Mat<WittScalar>>> fmats_;
    bool f_reconstructed_ = false;
};

Signature signature(const ODieudonneModule& M);

// Hodge polygon of the tau-component: reversed diamond of coker(V_{tau+1})
RatPolygon hodge_polygon_component(const ODieudonneModule& M, int tau);
// O-Hodge polygon: average over tau
RatPolygon o_hodge_polygon(const ODieudonneModule& M);
// O-Newton polygon via Dieudonne-Manin slopes of (M_tau, V^f); independent of
// tau (asserted across all components)
RatPolygon newton_polygon(const ODieudonneModule& M, int tau = 0);

// Point-level partial Hasse invariant data at tau.  The section is canonical
// only up to trivialization, so three levels are reported: a
// basis-dependent scalar (deterministic echelon basis), the invertibility
// bit, and the lattice valuation f*(Newt_O(q_tau) - Hdg_O(q_tau)) of the
// p^{-k_tau}-divided exterior power (0 iff invertible).  The lattice
// valuation needs the Newton polygon and is absent when that polygon is not
// determined at the working precision; scalar and invertible only need
// r > k_tau.
struct HasseReport {
    int tau = 0;
    int k_tau = 0;
    bool invertible = false;
    FqElem scalar;
    std::optional<Rational> lattice_val;
};

HasseReport partial_hasse(const ODieudonneModule& M, int tau);

struct MuOrdCertificate {
    bool mu_ordinary = false;
    RatPolygon newton, hodge;
    std::vector<HasseReport> hasse;
};

MuOrdCertificate mu_ordinary(const ODieudonneModule& M);

// Predicted Hodge-Newton split signatures at a contact break abscissa x:
// q' = min(q, x), q'' = max(q - x, 0).  Asserts the restricted-polygon and
// k-additivity identities.
std::pair<Signature, Signature> hodge_newton_split(const ODieudonneModule& M, int x);

// Cartier dual: graded pieces Hom(M_tau, W_r), V^D from transposed F, F^D
// from transposed V; signature swaps (p, q).
ODieudonneModule dualize(const ODieudonneModule& M);

ODieudonneModule product(const ODieudonneModule& A, const ODieudonneModule& B);

struct ProductHasseReport {
    bool k_additive = false;
    int k_product = 0, k_factor1 = 0, k_factor2 = 0;
    bool scalar_multiplicative = false; // meaningful only when k_additive
    HasseReport prod, fac1, fac2;
};

ProductHasseReport check_product_hasse(const ODieudonneModule& A, const ODieudonneModule& B,
                                       int tau);

// det(V^f on M_tau) = p^d * u with d = sum p_tau and u a unit of W_{r-d}
struct DetFactor {
    int d = 0;
    WittScalar unit;
};

DetFactor det_crystal_factor(const ODieudonneModule& M, int tau);

ODieudonneModule truncate(const ODieudonneModule& M, int s);

// coefficientwise extension of scalars F_{p^m} -> F_{p^{m2}}, m | m2
ODieudonneModule base_change(const ODieudonneModule& M, int m2);

// Random valid module with prescribed signature: V_{tau+1} = U diag(p^a) W
// with random unimodular U, W; always carries exact F-data.
ODieudonneModule random_module(std::mt19937_64& rng, const WittRingPtr& ring,
                               const Signature& sig);
// random unimodular h x h matrix over the ring
Mat<WittScalar> random_unimodular(std::mt19937_64& rng, const WittRingPtr& ring, int h);
Signature random_signature(std::mt19937_64& rng, int f, int h);

} // namespace muord
