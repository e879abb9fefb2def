#include "muord/fixtures.hpp"

namespace muord {
namespace fixtures {

namespace {

Mat<WittScalar> diag(const WittRingPtr& ring, std::vector<int> pexps) {
    int h = (int)pexps.size();
    Mat<WittScalar> m(h, h, ring->zero());
    for (int i = 0; i < h; ++i) m(i, i) = ring->p_power(pexps[i]);
    return m;
}

} // namespace

ODieudonneModule g1(long long p, int r) {
    auto ring = WittRing::get(p, 2, r);
    // V: M_0 -> M_1 is the identity, V: M_1 -> M_0 is diag(1, p);
    // F_tau = p sigma(V_{tau+1})^{-1}
    std::vector<Mat<WittScalar>> vm{diag(ring, {0, 0}), diag(ring, {0, 1})};
    std::vector<Mat<WittScalar>> fm{diag(ring, {1, 0}), diag(ring, {1, 1})};
    ODieudonneModule m(ring, 2, 2, std::move(vm), std::move(fm));
    m.validate();
    return m;
}

ODieudonneModule g2(long long p, int r) {
    auto ring = WittRing::get(p, 2, r);
    std::vector<Mat<WittScalar>> vm{diag(ring, {1, 1, 1}), diag(ring, {0, 0, 1})};
    std::vector<Mat<WittScalar>> fm{diag(ring, {1, 1, 0}), diag(ring, {0, 0, 0})};
    ODieudonneModule m(ring, 2, 3, std::move(vm), std::move(fm));
    m.validate();
    return m;
}

Display strata_display(long long p, int f, const std::vector<int>& n, int owner, int r_w,
                       int deg) {
    if ((int)n.size() != f) throw parameter_error("strata_display: need one n_j per component");
    auto ring = WittSeriesRing::get(p, f, r_w, {}, deg);
    std::vector<std::pair<int, int>> sizes;
    std::vector<Mat<WittSeries>> hw;
    for (int t = 0; t < f; ++t) {
        if (t == owner) {
            sizes.emplace_back(1, 1);
            // swap matrix: the non-mu-ordinary rank-2 block
            Mat<WittSeries> b(2, 2, ring->zero());
            b(0, 1) = ring->one();
            b(1, 0) = ring->one();
            hw.push_back(std::move(b));
        } else {
            if (n[t] != 0 && n[t] != 1)
                throw parameter_error("strata_display: n_j must be 0 or 1");
            sizes.emplace_back(n[t] ? 2 : 0, n[t] ? 0 : 2);
            hw.push_back(Mat<WittSeries>::identity(2, ring->zero(), ring->one()));
        }
    }
    Display d(ring, f, 2, std::move(sizes), std::move(hw));
    d.check_axioms();
    return d;
}

Display worked_display(long long p, int r_w, int deg) {
    auto ring = WittSeriesRing::get(p, 2, r_w, {}, deg);
    std::vector<std::pair<int, int>> sizes{{0, 2}, {1, 1}};
    Mat<WittSeries> b0 = Mat<WittSeries>::identity(2, ring->zero(), ring->one());
    Mat<WittSeries> b1(2, 2, ring->zero());
    b1(0, 1) = ring->one();
    b1(1, 0) = ring->one();
    std::vector<Mat<WittSeries>> hw{std::move(b0), std::move(b1)};
    Display d(ring, 2, 2, std::move(sizes), std::move(hw));
    d.check_axioms();
    return d;
}

} // namespace fixtures
} // namespace muord
