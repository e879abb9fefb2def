#pragma once

#include <optional>
#include <vector>

#include "muord/linalg.hpp"
#include "muord/witt.hpp"

namespace muord {

// sigma^a-linear map between free W_r(F_q)-modules: x -> matrix . sigma^a(x).
// Twists are normalized to [0, m); composition adds twists and twists the
// inner matrix: (g o f)(x) = M_g . sigma^{b}(M_f) . sigma^{a+b}(x).
struct TwistedMap {
    Mat<WittScalar> mat;
    int twist = 0;

    int domain_rank() const { return mat.cols(); }
    int codomain_rank() const { return mat.rows(); }
};

Mat<WittScalar> frob_mat(const Mat<WittScalar>& m, int t);

TwistedMap compose(const TwistedMap& g, const TwistedMap& f);
TwistedMap exterior_power(const TwistedMap& f, int q);
// apply f to a column vector (h x 1 matrix)
Mat<WittScalar> apply(const TwistedMap& f, const Mat<WittScalar>& x);

// Elementary divisors of a matrix over the chain ring W_r(F_q), sorted
// descending; saturated entries mean "exponent >= r" (undetermined).
struct ElemDivisors {
    std::vector<ValExp> exponents;
};

// Smith normal form data.  U * M * W = diag(p^{a_i}) with U, W invertible;
// pivot_exps lists the exponents in pivot order (ascending valuations).
// lattice_basis = U^{-1} * diag(p^{a_i}): its columns are a basis of the
// column span of M, the i-th being p^{a_i} times a unimodular vector.
struct Snf {
    std::vector<ValExp> pivot_exps;
    Mat<WittScalar> U, Uinv, W, Winv;
    int rows = 0, cols = 0, r = 0;

    // Elementary divisors of coker(M : W^cols -> W^rows), sorted descending.
    // Rows beyond the pivot count contribute free summands, reported as
    // saturated exponents (indistinguishable from p^{>= r} at precision r).
    ElemDivisors divisors() const;
};

Snf smith_normal_form(const Mat<WittScalar>& m);

// Characteristic polynomial coefficients c_0..c_n of det(X I - M), computed
// division-free (Berkowitz); W_r has zero divisors and no fraction field, so
// Gaussian or Faddeev-LeVerrier elimination is not available.
std::vector<WittScalar> charpoly(const Mat<WittScalar>& m);

// division-free determinant (Berkowitz constant term)
WittScalar det(const Mat<WittScalar>& m);

// Solve C1 + X C2 + (N + p C3) X^rho + p X C4 X^rho = 0 over W_r(F_q) by the
// successive-approximation scheme of the deformation-space matrix lemma:
// solve mod p, then recurse on X = Gamma + p X'.  rho is the twist applied
// entrywise to X (sigma^rho).  C2 must be invertible; N mod p must be
// nilpotent for the mod-p stage to terminate.
Mat<WittScalar> solve_unipotent_equation(const Mat<WittScalar>& C1, const Mat<WittScalar>& C2,
                                         const Mat<WittScalar>& C3, const Mat<WittScalar>& C4,
                                         const Mat<WittScalar>& N, int rho);

// inverse of a matrix that is invertible over W_r (unit determinant)
Mat<WittScalar> inverse(const Mat<WittScalar>& m);

} // namespace muord
