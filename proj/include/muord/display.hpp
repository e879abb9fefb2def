#pragma once

#include <set>
#include <string>
#include <vector>

#include "muord/omod.hpp"
#include "muord/witt_series.hpp"

namespace muord {

// Zink display with O-action over (truncated Witt vectors of) k[[t_1..t_s]].
// Per tau-component a free module of rank h with basis convention: the first
// p_tau vectors reduce to a basis of Lie, the last q_tau span the Hodge
// filtration.  HW[tau] is the matrix of F + V^{-1} : P_tau -> P_{sigma tau},
// invertible over the Witt base (display axiom).
class Display {
  public:
    Display(WittSeriesRingPtr base, int f, int h, std::vector<std::pair<int, int>> sizes,
            std::vector<Mat<WittSeries>> hw);

    const WittSeriesRingPtr& base() const { return base_; }
    int f() const { return f_; }
    int h() const { return h_; }
    int p_tau(int tau) const { return sizes_[mod_f(tau)].first; }
    int q_tau(int tau) const { return sizes_[mod_f(tau)].second; }
    Signature sig() const;
    const Mat<WittSeries>& HW(int tau) const { return hw_[mod_f(tau)]; }
    int mod_f(int tau) const { return ((tau % f_) + f_) % f_; }

    // display axiom: every HW block invertible over the Witt base
    void check_axioms() const;

  private:
    WittSeriesRingPtr base_;
    int f_, h_;
    std::vector<std::pair<int, int>> sizes_;
    std::vector<Mat<WittSeries>> hw_;
};

struct DisplayBaseParams {
    long long p = 2;
    int m = 1;        // residue degree, f | m
    int r_w = 0;      // Witt length; <= 0 selects max_tau k_tau + 2
    int deg = 8;      // total-degree truncation of the series base
    std::vector<std::string> vars;
};

// Generalized Lubin-Tate display LT_A: rank 1 per tau, Lie part exactly at
// tau in A (F e_tau = p e_{sigma tau} off A, e_{sigma tau} on A); the special
// fiber is isoclinic of slope |A|/f.
Display lt_display(const std::set<int>& A, int f, const DisplayBaseParams& base);

// block product with basis reordered Lie-part-first within each component
Display display_product(const Display& a, const Display& b);

// Moonen's mu-ordinary model X^ord for a signature: the product of
// LT_{A_{l-1}}^{q^{(l)} - q^{(l-1)}} over the jump filtration of (q_tau).
Display x_ord(const Signature& sig, const DisplayBaseParams& base);

// Universal deformation: adjoin sum_tau p_tau q_tau variables and multiply
// the block targeting sigma tau by the unipotent Teichmuller matrix
// [[Id_{p}, [t^tau_{k,l}]], [0, Id_q]] of the owner component tau.  Variable
// names default to t<tau>_<k>_<l>, ordered (tau, k, l) lexicographically.
Display universal_deformation(const Display& d0, std::vector<std::string> var_names = {});

// V^sharp matrices: M_tau : P_tau -> P_{sigma^{-1} tau}^{(F)}, the linear
// matrix of Verschiebung on the crystal; M_tau = Delta * HW^{-1} of the
// source block.  Exposed per the deformation-space Verschiebung formula.
std::vector<Mat<WittSeries>> v_matrices(const Display& d);

// twisted f-fold product of the V^sharp matrices starting at tau
Mat<WittSeries> vf_product(const Display& d, int tau);

struct HasseSeries {
    int tau = 0;
    int k_tau = 0;
    TruncPoly series;      // image in k[[t]]/(deg) of p^{-k} det(Hodge block of V^f)
    bool unit_normalized = false;

    // t-adic vanishing order; -1 encodes the zero series at this truncation
    int vanishing_order() const { return series.order(); }
    bool invertible_at_zero() const { return !series.constant_term().is_zero(); }
};

HasseSeries hasse_series(const Display& d, int tau);

// evaluate the deformation variables at 0 and extract the Dieudonne module
// (with exact F-data) over W_{r_w}(F_{p^m})
ODieudonneModule special_fiber(const Display& d);

} // namespace muord
