#include "muord/display.hpp"

#include <algorithm>

namespace muord {

namespace {

Mat<WittSeries> series_identity(const WittSeriesRingPtr& ring, int n) {
    return Mat<WittSeries>::identity(n, ring->zero(), ring->one());
}

// adjugate-based inverse; requires a unit determinant
Mat<WittSeries> series_inverse(const Mat<WittSeries>& m) {
    int n = m.rows();
    WittSeries d = det_small(m);
    if (!d.is_unit()) throw invalid_module_error("display: HW block is not invertible");
    WittSeries dinv = d.inverse();
    if (n == 1) return Mat<WittSeries>(1, 1, dinv);
    Mat<WittSeries> adj(n, n, m(0, 0).zero());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<int> rs, cs;
            for (int t = 0; t < n; ++t) {
                if (t != i) rs.push_back(t);
                if (t != j) cs.push_back(t);
            }
            WittSeries cof = det_small(m.submatrix(rs, cs));
            if ((i + j) % 2 == 1) cof = -cof;
            adj(j, i) = cof * dinv;
        }
    return adj;
}

Mat<WittSeries> frob_series_mat(const Mat<WittSeries>& m, int t) {
    return m.map([t](const WittSeries& x) { return x.frobenius(t); });
}

} // namespace

Display::Display(WittSeriesRingPtr base, int f, int h, std::vector<std::pair<int, int>> sizes,
                 std::vector<Mat<WittSeries>> hw)
    : base_(std::move(base)), f_(f), h_(h), sizes_(std::move(sizes)), hw_(std::move(hw)) {
    if (f_ < 1 || h_ < 1) throw parameter_error("Display: need f, h >= 1");
    if (base_->m() % f_ != 0) throw parameter_error("Display: f must divide m");
    if ((int)sizes_.size() != f_ || (int)hw_.size() != f_)
        throw parameter_error("Display: need f blocks");
    for (int t = 0; t < f_; ++t) {
        if (sizes_[t].first + sizes_[t].second != h_)
            throw parameter_error("Display: p_tau + q_tau != h");
        if (hw_[t].rows() != h_ || hw_[t].cols() != h_)
            throw parameter_error("Display: HW shape mismatch");
    }
}

Signature Display::sig() const {
    Signature s;
    s.f = f_;
    s.h = h_;
    for (int t = 0; t < f_; ++t) s.q.push_back(sizes_[t].second);
    return s;
}

void Display::check_axioms() const {
    for (int t = 0; t < f_; ++t)
        if (!det_small(hw_[t]).is_unit())
            throw invalid_module_error("Display: HW block not invertible at tau=" +
                                       std::to_string(t));
}

namespace {
int auto_witt_length(const Signature& sig, int requested) {
    if (requested > 0) return requested;
    int k = 0;
    for (int t = 0; t < sig.f; ++t) k = std::max(k, k_tau(sig, t));
    return k + 2;
}
} // namespace

Display lt_display(const std::set<int>& A, int f, const DisplayBaseParams& bp) {
    Signature sig;
    sig.f = f;
    sig.h = 1;
    for (int t = 0; t < f; ++t) sig.q.push_back(A.count(((t % f) + f) % f) ? 0 : 1);
    auto ring =
        WittSeriesRing::get(bp.p, bp.m, auto_witt_length(sig, bp.r_w), bp.vars, bp.deg);
    std::vector<std::pair<int, int>> sizes;
    std::vector<Mat<WittSeries>> hw;
    for (int t = 0; t < f; ++t) {
        bool lie = A.count(((t % f) + f) % f) > 0;
        sizes.emplace_back(lie ? 1 : 0, lie ? 0 : 1);
        hw.push_back(series_identity(ring, 1));
    }
    return Display(ring, f, 1, std::move(sizes), std::move(hw));
}

Display display_product(const Display& a, const Display& b) {
    if (a.base() != b.base() || a.f() != b.f())
        throw parameter_error("display_product: base parameters differ");
    int f = a.f(), h = a.h() + b.h();
    const auto& ring = a.base();
    // per component: new order = (a Lie, b Lie, a Hodge, b Hodge); perm[c]
    // maps new index -> old block-diagonal index
    std::vector<std::vector<int>> perm(f);
    std::vector<std::pair<int, int>> sizes;
    for (int c = 0; c < f; ++c) {
        std::vector<int> ord;
        for (int i = 0; i < a.p_tau(c); ++i) ord.push_back(i);
        for (int i = 0; i < b.p_tau(c); ++i) ord.push_back(a.h() + i);
        for (int i = 0; i < a.q_tau(c); ++i) ord.push_back(a.p_tau(c) + i);
        for (int i = 0; i < b.q_tau(c); ++i) ord.push_back(a.h() + b.p_tau(c) + i);
        perm[c] = ord;
        sizes.emplace_back(a.p_tau(c) + b.p_tau(c), a.q_tau(c) + b.q_tau(c));
    }
    std::vector<Mat<WittSeries>> hw;
    for (int t = 0; t < f; ++t) {
        Mat<WittSeries> big(h, h, ring->zero());
        for (int i = 0; i < a.h(); ++i)
            for (int j = 0; j < a.h(); ++j) big(i, j) = a.HW(t)(i, j);
        for (int i = 0; i < b.h(); ++i)
            for (int j = 0; j < b.h(); ++j) big(a.h() + i, a.h() + j) = b.HW(t)(i, j);
        // conjugate into the reordered bases: source perm[t], target perm[t+1]
        const auto& ps = perm[t];
        const auto& pt = perm[(t + 1) % f];
        Mat<WittSeries> out(h, h, ring->zero());
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < h; ++j) out(i, j) = big(pt[i], ps[j]);
        hw.push_back(std::move(out));
    }
    return Display(a.base(), f, h, std::move(sizes), std::move(hw));
}

Display x_ord(const Signature& sig, const DisplayBaseParams& bp) {
    DisplayBaseParams eff = bp;
    eff.r_w = auto_witt_length(sig, bp.r_w);
    // jump filtration of the signature: q^{(0)} = 0 < q^{(1)} < ... <= q^{(r+1)} = h
    std::vector<int> jumps{0};
    std::vector<int> sorted = sig.q;
    std::sort(sorted.begin(), sorted.end());
    for (int q : sorted)
        if (q != jumps.back() && q != 0) jumps.push_back(q);
    if (jumps.back() != sig.h) jumps.push_back(sig.h);

    std::vector<Display> pieces;
    for (size_t l = 1; l < jumps.size(); ++l) {
        std::set<int> A;
        for (int t = 0; t < sig.f; ++t)
            if (sig.q[t] <= jumps[l - 1]) A.insert(t);
        int mult = jumps[l] - jumps[l - 1];
        for (int i = 0; i < mult; ++i) pieces.push_back(lt_display(A, sig.f, eff));
    }
    Display acc = pieces[0];
    for (size_t i = 1; i < pieces.size(); ++i) acc = display_product(acc, pieces[i]);
    if (!(acc.sig() == sig)) throw std::logic_error("x_ord: signature mismatch");
    return acc;
}

Display universal_deformation(const Display& d0, std::vector<std::string> var_names) {
    if (d0.base()->base()->nvars() != 0)
        throw parameter_error("universal_deformation: base display already has variables");
    Signature sig = d0.sig();
    int nvars = 0;
    for (int t = 0; t < sig.f; ++t) nvars += sig.p_tau(t) * sig.q_tau(t);
    if (var_names.empty()) {
        for (int t = 0; t < sig.f; ++t)
            for (int k = 1; k <= sig.p_tau(t); ++k)
                for (int l = 1; l <= sig.q_tau(t); ++l)
                    var_names.push_back("t" + std::to_string(t) + "_" + std::to_string(k) + "_" +
                                        std::to_string(l));
    }
    if ((int)var_names.size() != nvars)
        throw parameter_error("universal_deformation: need sum p_tau q_tau variable names");

    auto ring = WittSeriesRing::get(d0.base()->p(), d0.base()->m(), d0.base()->r_w(), var_names,
                                    d0.base()->base()->deg());
    // embed a variable-free Witt series into the new ring
    auto embed_series = [&](const WittSeries& x) {
        std::vector<TruncPoly> comps;
        for (const auto& c : x.comps()) {
            std::map<std::vector<int>, FqElem> terms;
            for (const auto& [mono, coeff] : c.terms()) {
                (void)mono;
                terms[std::vector<int>(nvars, 0)] = coeff; // mono is empty: constants only
            }
            comps.emplace_back(ring->base(), std::move(terms));
        }
        return WittSeries(ring, std::move(comps));
    };

    std::vector<Mat<WittSeries>> hw;
    int var_idx = 0;
    std::vector<Mat<WittSeries>> U(sig.f, Mat<WittSeries>());
    for (int t = 0; t < sig.f; ++t) {
        Mat<WittSeries> u = series_identity(ring, d0.h());
        for (int k = 0; k < sig.p_tau(t); ++k)
            for (int l = 0; l < sig.q_tau(t); ++l)
                u(k, sig.p_tau(t) + l) = ring->teichmuller(ring->base()->var(var_idx++));
        U[t] = std::move(u);
    }
    for (int t = 0; t < sig.f; ++t) {
        Mat<WittSeries> b = d0.HW(t).map(embed_series);
        // deformation parameters of the target component act on the left
        hw.push_back(U[d0.mod_f(t + 1)] * b);
    }
    std::vector<std::pair<int, int>> sizes;
    for (int t = 0; t < sig.f; ++t) sizes.emplace_back(sig.p_tau(t), sig.q_tau(t));
    return Display(ring, sig.f, d0.h(), std::move(sizes), std::move(hw));
}

std::vector<Mat<WittSeries>> v_matrices(const Display& d) {
    const auto& ring = d.base();
    std::vector<Mat<WittSeries>> out(d.f(), Mat<WittSeries>());
    for (int t = 0; t < d.f(); ++t) {
        // V^sharp on P_{sigma tau} = Delta_tau * HW_tau^{-1}
        int src = d.mod_f(t + 1);
        Mat<WittSeries> delta(d.h(), d.h(), ring->zero());
        for (int i = 0; i < d.h(); ++i)
            delta(i, i) = (i < d.p_tau(t)) ? ring->from_int(ring->p()) : ring->one();
        out[src] = delta * series_inverse(d.HW(t));
    }
    return out;
}

Mat<WittSeries> vf_product(const Display& d, int tau) {
    auto mats = v_matrices(d);
    int f = d.f();
    Mat<WittSeries> acc = mats[d.mod_f(tau)];
    for (int j = 1; j < f; ++j) {
        // next factor acts on P_{sigma^{-j} tau}, twisted j times
        acc = frob_series_mat(mats[d.mod_f(tau - j)], j) * acc;
    }
    return acc;
}

HasseSeries hasse_series(const Display& d, int tau) {
    int t = d.mod_f(tau);
    Signature sig = d.sig();
    HasseSeries out;
    out.tau = t;
    out.k_tau = k_tau(sig, t);
    if (d.base()->r_w() <= out.k_tau)
        throw precision_error("hasse_series: need Witt length > k_tau");
    int q = d.q_tau(t), pt = d.p_tau(t);
    if (q == 0) {
        out.series = d.base()->base()->one();
        return out;
    }
    Mat<WittSeries> prod = vf_product(d, t);
    std::vector<int> hodge;
    for (int i = pt; i < d.h(); ++i) hodge.push_back(i);
    WittSeries corner = det_small(prod.submatrix(hodge, hodge));
    WittSeries divided = corner.divide_by_p_pow(out.k_tau);
    out.series = divided.reduce();
    return out;
}

ODieudonneModule special_fiber(const Display& d) {
    int rw = d.base()->r_w();
    auto wring = WittRing::get(d.base()->p(), d.base()->m(), rw);
    auto specialize = [&](const Mat<WittSeries>& m) {
        Mat<WittScalar> out(m.rows(), m.cols(), wring->zero());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).specialize_at_zero();
        return out;
    };
    std::vector<Mat<WittScalar>> vm(d.f(), Mat<WittScalar>()), fm(d.f(), Mat<WittScalar>());
    for (int t = 0; t < d.f(); ++t) {
        Mat<WittScalar> b0 = specialize(d.HW(t));
        Mat<WittScalar> binv = inverse(b0);
        Mat<WittScalar> delta(d.h(), d.h(), wring->zero());
        Mat<WittScalar> dprime(d.h(), d.h(), wring->zero());
        for (int i = 0; i < d.h(); ++i) {
            delta(i, i) = (i < d.p_tau(t)) ? wring->from_int(wring->p()) : wring->one();
            dprime(i, i) = (i < d.p_tau(t)) ? wring->one() : wring->from_int(wring->p());
        }
        // V on M_{sigma tau}: Delta_tau sigma^{-1}(HW_tau^{-1}); F on M_tau: HW_tau Delta'_tau
        vm[d.mod_f(t + 1)] = delta * frob_mat(binv, -1);
        fm[t] = b0 * dprime;
    }
    ODieudonneModule M(wring, d.f(), d.h(), std::move(vm), std::move(fm));
    M.validate();
    return M;
}

} // namespace muord
