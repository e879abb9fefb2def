#include "muord/omod.hpp"

#include <algorithm>
#include <stdexcept>

namespace muord {

int Signature::d() const {
    int s = 0;
    for (int qt : q) s += h - qt;
    return s;
}

int k_tau(const Signature& sig, int tau) {
    int qt = sig.q_tau(tau), k = 0;
    for (int j = 0; j < sig.f; ++j)
        if (sig.q[j] < qt) k += qt - sig.q[j];
    return k;
}

RatPolygon hodge_polygon_of_signature(const Signature& sig) {
    std::vector<Rational> slopes;
    slopes.reserve(sig.h);
    for (int j = 1; j <= sig.h; ++j) {
        int count = 0;
        for (int t = 0; t < sig.f; ++t)
            if (sig.q[t] < j) ++count;
        slopes.emplace_back(count, sig.f);
    }
    return RatPolygon(std::move(slopes), Orientation::ConvexAscending);
}

ODieudonneModule::ODieudonneModule(WittRingPtr ring, int f, int h,
                                   std::vector<Mat<WittScalar>> vmats,
                                   std::optional<std::vector<Mat<WittScalar>>> fmats)
    : ring_(std::move(ring)), f_(f), h_(h), vmats_(std::move(vmats)), fmats_(std::move(fmats)) {
    if (f_ < 1 || h_ < 1) throw parameter_error("ODieudonneModule: need f, h >= 1");
    if (ring_->m() % f_ != 0)
        throw parameter_error("ODieudonneModule: f must divide the residue degree m");
    if ((int)vmats_.size() != f_) throw parameter_error("ODieudonneModule: need f V-matrices");
    for (const auto& v : vmats_)
        if (v.rows() != h_ || v.cols() != h_)
            throw parameter_error("ODieudonneModule: V-matrix shape mismatch");
    if (fmats_) {
        if ((int)fmats_->size() != f_) throw parameter_error("ODieudonneModule: need f F-matrices");
        for (const auto& m : *fmats_)
            if (m.rows() != h_ || m.cols() != h_)
                throw parameter_error("ODieudonneModule: F-matrix shape mismatch");
    }
}

const Mat<WittScalar>& ODieudonneModule::F(int tau) const {
    if (!fmats_) throw parameter_error("ODieudonneModule: F matrices absent");
    return (*fmats_)[mod_f(tau)];
}

void ODieudonneModule::validate() const {
    WittScalar p = ring_->from_int(ring_->p());
    Mat<WittScalar> pid = Mat<WittScalar>::identity(h_, ring_->zero(), ring_->one()).scale(p);
    if (fmats_) {
        for (int t = 0; t < f_; ++t) {
            // F_{t-1} sigma(V_t) = p and sigma(V_{t+1}) F_t = p
            if (!(F(t - 1) * frob_mat(V(t), 1) == pid))
                throw invalid_module_error("validate: F V != p at tau=" + std::to_string(t));
            if (!(frob_mat(V(t + 1), 1) * F(t) == pid))
                throw invalid_module_error("validate: V F != p at tau=" + std::to_string(t));
        }
    }
    for (int t = 0; t < f_; ++t) {
        Snf s = smith_normal_form(V(t));
        for (const ValExp& e : s.pivot_exps) {
            if (e.saturated && ring_->r() == 1) continue; // "exp >= 1", admissible
            if (e.saturated || e.v > 1)
                throw invalid_module_error("validate: not a BT-module (pM c VM c M fails)");
        }
    }
}

TwistedMap ODieudonneModule::vf_map(int tau) const {
    int m = ring_->m();
    TwistedMap t{V(tau), ((m - 1) % m + m) % m};
    for (int j = 1; j < f_; ++j) {
        TwistedMap g{V(tau - j), (m - 1) % m};
        t = compose(g, t);
    }
    return t;
}

ODieudonneModule ODieudonneModule::with_F() const {
    if (fmats_) return *this;
    std::vector<Mat<WittScalar>> fm;
    fm.reserve(f_);
    for (int t = 0; t < f_; ++t) {
        Snf s = smith_normal_form(V(t + 1));
        Mat<WittScalar> D1(h_, h_, ring_->zero());
        for (int i = 0; i < h_; ++i) {
            const ValExp& e = s.pivot_exps[i];
            if (e.saturated || e.v > 1)
                throw invalid_module_error("with_F: not a BT-module, cannot form p V^{-1}");
            D1(i, i) = ring_->p_power(1 - e.v);
        }
        // p V_{t+1}^{-1} = W diag(p^{1-a}) U; F_t = sigma of that
        Mat<WittScalar> pvinv = s.W * D1 * s.U;
        fm.push_back(frob_mat(pvinv, 1));
    }
    ODieudonneModule out(ring_, f_, h_, vmats_, std::move(fm));
    out.f_reconstructed_ = true;
    return out;
}

Signature signature(const ODieudonneModule& M) {
    Signature sig;
    sig.f = M.f();
    sig.h = M.h();
    sig.q.resize(M.f());
    for (int t = 0; t < M.f(); ++t) {
        Snf s = smith_normal_form(M.V(t + 1));
        int q = 0;
        for (const ValExp& e : s.pivot_exps) {
            if (e.saturated && M.r() == 1) continue;
            if (e.saturated || e.v > 1)
                throw invalid_module_error("signature: not a BT-module");
            if (e.v == 0) ++q;
        }
        sig.q[t] = q;
    }
    return sig;
}

RatPolygon hodge_polygon_component(const ODieudonneModule& M, int tau) {
    Snf s = smith_normal_form(M.V(tau + 1));
    return hodge_diamond(s.divisors(), M.h()).reverse();
}

RatPolygon o_hodge_polygon(const ODieudonneModule& M) {
    std::vector<RatPolygon> ps;
    ps.reserve(M.f());
    for (int t = 0; t < M.f(); ++t) ps.push_back(hodge_polygon_component(M, t));
    return average(ps);
}

namespace {

// slopes of (M_tau, V^f) scaled by 1/f, ascending
std::vector<Rational> newton_slopes_at(const ODieudonneModule& M, int tau) {
    int m = M.ring()->m(), f = M.f();
    int n = m / f;
    TwistedMap vf = M.vf_map(tau);
    TwistedMap L = vf;
    for (int j = 1; j < n; ++j) L = compose(vf, L);
    if (L.twist != 0) throw std::logic_error("newton: linearization has nonzero twist");
    auto cp = charpoly(L.mat);
    // determinant must be nonzero at this precision for the slopes to exist
    if (cp[0].valuation().saturated)
        throw precision_error("newton_polygon: det V^f vanishes at precision r");
    std::vector<Rational> slopes = newton_slopes_from_charpoly(cp, n);
    for (auto& s : slopes) s = s / Rational(f);
    return slopes;
}

} // namespace

RatPolygon newton_polygon(const ODieudonneModule& M, int tau) {
    std::vector<Rational> s0 = newton_slopes_at(M, tau);
    for (int t = 0; t < M.f(); ++t) {
        if (t == M.mod_f(tau)) continue;
        if (newton_slopes_at(M, t) != s0)
            throw std::logic_error("newton_polygon: slopes depend on tau (invalid input?)");
    }
    return RatPolygon(std::move(s0), Orientation::ConvexAscending);
}

HasseReport partial_hasse(const ODieudonneModule& M, int tau) {
    Signature sig = signature(M);
    int t = M.mod_f(tau);
    HasseReport rep;
    rep.tau = t;
    rep.k_tau = k_tau(sig, t);
    int q = sig.q_tau(t);
    const WittRingPtr& ring = M.ring();
    if (ring->r() <= rep.k_tau)
        throw precision_error("partial_hasse: need r > k_tau");

    if (q == 0) {
        // no Hodge line: the invariant is the identity section
        rep.invertible = true;
        rep.scalar = ring->residue_field()->one();
        rep.lattice_val = Rational(0);
        return rep;
    }

    // deterministic echelon basis of W = V(M_{tau+1}): columns of
    // Uinv diag(p^{a_i}) in pivot order, unit pivots first (stable)
    Snf s = smith_normal_form(M.V(t + 1));
    std::vector<int> order(M.h());
    for (int i = 0; i < M.h(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return s.pivot_exps[a].v < s.pivot_exps[b].v;
    });
    TwistedMap vf = M.vf_map(t);

    // Y = [ V^f w_j : unit pivots j ];  w-coordinates of Y are U Y, and the
    // unit-pivot rows need no division
    Mat<WittScalar> Y(M.h(), q, ring->zero());
    for (int jj = 0; jj < q; ++jj) {
        int piv = order[jj];
        if (s.pivot_exps[piv].v != 0 || s.pivot_exps[piv].saturated)
            throw invalid_module_error("partial_hasse: signature/pivot mismatch");
        Mat<WittScalar> w(M.h(), 1, ring->zero());
        for (int i = 0; i < M.h(); ++i) w(i, 0) = s.Uinv(i, piv);
        Mat<WittScalar> y = apply(vf, w);
        for (int i = 0; i < M.h(); ++i) Y(i, jj) = y(i, 0);
    }
    Mat<WittScalar> Z = s.U * Y;
    Mat<WittScalar> Z0(q, q, ring->zero());
    for (int ii = 0; ii < q; ++ii)
        for (int jj = 0; jj < q; ++jj) Z0(ii, jj) = Z(order[ii], jj);
    WittScalar D = det_small(Z0);
    ValExp dv = D.valuation();
    if (!dv.saturated && dv.v < rep.k_tau)
        throw invalid_module_error("partial_hasse: divisibility violated (not a BT crystal)");
    rep.scalar = D.divide_by_p(rep.k_tau).residue();
    rep.invertible = !rep.scalar.is_zero();

    // contact gap at abscissa q_tau: f*(Newt_O - Hdg_O)(q_tau); zero iff the
    // invariant is invertible (Katz / propolygone).  Left unset when the
    // Newton polygon is not determined at this precision.
    try {
        RatPolygon newt = newton_polygon(M);
        rep.lattice_val = (newt.value_at(q) - Rational(rep.k_tau, M.f())) * Rational(M.f());
    } catch (const precision_error&) {
    }
    return rep;
}

MuOrdCertificate mu_ordinary(const ODieudonneModule& M) {
    MuOrdCertificate cert;
    cert.newton = newton_polygon(M);
    cert.hodge = o_hodge_polygon(M);
    cert.mu_ordinary = (cert.newton.slopes() == cert.hodge.slopes());
    bool all_invertible = true;
    for (int t = 0; t < M.f(); ++t) {
        cert.hasse.push_back(partial_hasse(M, t));
        if (!cert.hasse.back().invertible) all_invertible = false;
    }
    if (cert.mu_ordinary != all_invertible)
        throw std::logic_error("mu_ordinary: polygon and Hasse certificates disagree");
    return cert;
}

std::pair<Signature, Signature> hodge_newton_split(const ODieudonneModule& M, int x) {
    Signature sig = signature(M);
    if (x < 0 || x > sig.h) throw parameter_error("hodge_newton_split: abscissa out of range");
    if (x != 0 && x != sig.h) {
        RatPolygon newt = newton_polygon(M);
        RatPolygon hdg = o_hodge_polygon(M);
        auto breaks = newt.break_abscissas();
        if (std::find(breaks.begin(), breaks.end(), x) == breaks.end())
            throw parameter_error("hodge_newton_split: x is not a Newton break abscissa");
        if (newt.value_at(x) != hdg.value_at(x))
            throw parameter_error("hodge_newton_split: polygons do not touch at x");
    }
    Signature a, b;
    a.f = b.f = sig.f;
    a.h = x;
    b.h = sig.h - x;
    for (int t = 0; t < sig.f; ++t) {
        a.q.push_back(std::min(sig.q[t], x));
        b.q.push_back(std::max(sig.q[t] - x, 0));
    }
    // restricted-polygon identity: Hdg_O(M) on [0, x] equals Hdg_O(sig')
    RatPolygon hdg = o_hodge_polygon(M);
    RatPolygon ha = hodge_polygon_of_signature(a);
    for (int i = 0; i < x; ++i)
        if (hdg.slopes()[i] != ha.slopes()[i])
            throw std::logic_error("hodge_newton_split: restricted Hodge polygon mismatch");
    for (int t = 0; t < sig.f; ++t)
        if (k_tau(sig, t) != k_tau(a, t) + k_tau(b, t))
            throw std::logic_error("hodge_newton_split: k_tau additivity fails");
    return {a, b};
}

ODieudonneModule dualize(const ODieudonneModule& M) {
    if (!M.has_F()) throw parameter_error("dualize: F required for duality");
    std::vector<Mat<WittScalar>> vd(M.f(), Mat<WittScalar>()), fd(M.f(), Mat<WittScalar>());
    for (int t = 0; t < M.f(); ++t) {
        vd[t] = frob_mat(M.F(t - 1).transpose(), -1);
        fd[t] = frob_mat(M.V(t + 1).transpose(), 1);
    }
    return ODieudonneModule(M.ring(), M.f(), M.h(), std::move(vd), std::move(fd));
}

ODieudonneModule product(const ODieudonneModule& A, const ODieudonneModule& B) {
    if (A.ring() != B.ring() || A.f() != B.f())
        throw parameter_error("product: base parameters differ");
    const WittRingPtr& ring = A.ring();
    int h = A.h() + B.h();
    std::vector<Mat<WittScalar>> vm;
    for (int t = 0; t < A.f(); ++t) {
        Mat<WittScalar> m(h, h, ring->zero());
        for (int i = 0; i < A.h(); ++i)
            for (int j = 0; j < A.h(); ++j) m(i, j) = A.V(t)(i, j);
        for (int i = 0; i < B.h(); ++i)
            for (int j = 0; j < B.h(); ++j) m(A.h() + i, A.h() + j) = B.V(t)(i, j);
        vm.push_back(std::move(m));
    }
    std::optional<std::vector<Mat<WittScalar>>> fm;
    if (A.has_F() && B.has_F()) {
        fm.emplace();
        for (int t = 0; t < A.f(); ++t) {
            Mat<WittScalar> m(h, h, ring->zero());
            for (int i = 0; i < A.h(); ++i)
                for (int j = 0; j < A.h(); ++j) m(i, j) = A.F(t)(i, j);
            for (int i = 0; i < B.h(); ++i)
                for (int j = 0; j < B.h(); ++j) m(A.h() + i, A.h() + j) = B.F(t)(i, j);
            fm->push_back(std::move(m));
        }
    }
    return ODieudonneModule(ring, A.f(), h, std::move(vm), std::move(fm));
}

ProductHasseReport check_product_hasse(const ODieudonneModule& A, const ODieudonneModule& B,
                                       int tau) {
    ProductHasseReport rep;
    ODieudonneModule P = product(A, B);
    Signature sp = signature(P), sa = signature(A), sb = signature(B);
    int t = P.mod_f(tau);
    rep.k_product = k_tau(sp, t);
    rep.k_factor1 = k_tau(sa, t);
    rep.k_factor2 = k_tau(sb, t);
    rep.k_additive = (rep.k_product == rep.k_factor1 + rep.k_factor2);
    rep.prod = partial_hasse(P, t);
    rep.fac1 = partial_hasse(A, t);
    rep.fac2 = partial_hasse(B, t);
    if (rep.k_additive)
        rep.scalar_multiplicative = (rep.prod.scalar == rep.fac1.scalar * rep.fac2.scalar);
    return rep;
}

DetFactor det_crystal_factor(const ODieudonneModule& M, int tau) {
    Signature sig = signature(M);
    int d = sig.d();
    if (M.r() <= d) throw precision_error("det_crystal_factor: need r > d");
    TwistedMap vf = M.vf_map(tau);
    WittScalar D = det_small(vf.mat);
    ValExp v = D.valuation();
    if (v.saturated || v.v != d)
        throw invalid_module_error("det_crystal_factor: det valuation != d (not a BT-module)");
    DetFactor out;
    out.d = d;
    out.unit = D.divide_by_p(d);
    if (!out.unit.is_unit())
        throw invalid_module_error("det_crystal_factor: unit part is not a unit");
    return out;
}

ODieudonneModule truncate(const ODieudonneModule& M, int s) {
    if (s > M.r() || s < 1) throw parameter_error("truncate: bad target precision");
    auto target = WittRing::get(M.ring()->p(), M.ring()->m(), s);
    auto red = [&](const Mat<WittScalar>& m) {
        return m.map([&](const WittScalar& x) { return x.reduce(s); });
    };
    std::vector<Mat<WittScalar>> vm;
    for (int t = 0; t < M.f(); ++t) vm.push_back(red(M.V(t)));
    std::optional<std::vector<Mat<WittScalar>>> fm;
    if (M.has_F()) {
        fm.emplace();
        for (int t = 0; t < M.f(); ++t) fm->push_back(red(M.F(t)));
    }
    return ODieudonneModule(target, M.f(), M.h(), std::move(vm), std::move(fm));
}

ODieudonneModule base_change(const ODieudonneModule& M, int m2) {
    if (m2 % M.ring()->m() != 0)
        throw parameter_error("base_change: target degree is not a multiple");
    auto target = WittRing::get(M.ring()->p(), m2, M.r());
    auto emb = [&](const Mat<WittScalar>& m) {
        return m.map([&](const WittScalar& x) { return embed(x, target); });
    };
    std::vector<Mat<WittScalar>> vm;
    for (int t = 0; t < M.f(); ++t) vm.push_back(emb(M.V(t)));
    std::optional<std::vector<Mat<WittScalar>>> fm;
    if (M.has_F()) {
        fm.emplace();
        for (int t = 0; t < M.f(); ++t) fm->push_back(emb(M.F(t)));
    }
    return ODieudonneModule(target, M.f(), M.h(), std::move(vm), std::move(fm));
}

Mat<WittScalar> random_unimodular(std::mt19937_64& rng, const WittRingPtr& ring, int h) {
    std::uniform_int_distribution<long long> dist(0, ring->pr() - 1);
    for (;;) {
        Mat<WittScalar> m(h, h, ring->zero());
        for (int i = 0; i < h; ++i)
            for (int j = 0; j < h; ++j) {
                std::vector<long long> c(ring->m());
                for (int k = 0; k < ring->m(); ++k) c[k] = dist(rng);
                m(i, j) = ring->make(std::move(c));
            }
        if (det_small(m).is_unit()) return m;
    }
}

Signature random_signature(std::mt19937_64& rng, int f, int h) {
    Signature sig;
    sig.f = f;
    sig.h = h;
    std::uniform_int_distribution<int> dist(0, h);
    for (int t = 0; t < f; ++t) sig.q.push_back(dist(rng));
    return sig;
}

ODieudonneModule random_module(std::mt19937_64& rng, const WittRingPtr& ring,
                               const Signature& sig) {
    if (ring->m() % sig.f != 0) throw parameter_error("random_module: f must divide m");
    int h = sig.h, f = sig.f;
    std::vector<Mat<WittScalar>> vm(f, Mat<WittScalar>()), fm(f, Mat<WittScalar>());
    for (int t = 0; t < f; ++t) {
        // V_{t+1} has q_t unit divisors and p_t divisors equal to p
        Mat<WittScalar> U = random_unimodular(rng, ring, h);
        Mat<WittScalar> W = random_unimodular(rng, ring, h);
        Mat<WittScalar> D(h, h, ring->zero()), Dp(h, h, ring->zero());
        for (int i = 0; i < h; ++i) {
            int e = (i < sig.q[t]) ? 0 : 1;
            D(i, i) = ring->p_power(e);
            Dp(i, i) = ring->p_power(1 - e);
        }
        vm[sig.mod_f(t + 1) % f] = U * D * W;
        // F_t = sigma(p V_{t+1}^{-1}) = sigma(W^{-1} diag(p^{1-e}) U^{-1})
        fm[t] = frob_mat(inverse(W) * Dp * inverse(U), 1);
    }
    ODieudonneModule M(ring, f, h, std::move(vm), std::move(fm));
    M.validate();
    return M;
}

} // namespace muord
