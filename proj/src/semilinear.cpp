#include "muord/semilinear.hpp"

#include <algorithm>

namespace muord {

std::vector<std::vector<int>> subsets_lex(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    for (;;) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

Mat<WittScalar> frob_mat(const Mat<WittScalar>& m, int t) {
    return m.map([t](const WittScalar& x) { return x.frobenius(t); });
}

TwistedMap compose(const TwistedMap& g, const TwistedMap& f) {
    if (f.codomain_rank() != g.domain_rank())
        throw parameter_error("compose: rank mismatch");
    TwistedMap h;
    h.mat = g.mat * frob_mat(f.mat, g.twist);
    int m = f.mat(0, 0).ring()->m();
    h.twist = ((f.twist + g.twist) % m + m) % m;
    return h;
}

TwistedMap exterior_power(const TwistedMap& f, int q) {
    TwistedMap h;
    h.mat = compound(f.mat, q);
    h.twist = f.twist;
    return h;
}

Mat<WittScalar> apply(const TwistedMap& f, const Mat<WittScalar>& x) {
    if (x.cols() != 1 || x.rows() != f.domain_rank())
        throw parameter_error("apply: expected a domain-rank column vector");
    return f.mat * frob_mat(x, f.twist);
}

ElemDivisors Snf::divisors() const {
    ElemDivisors d;
    d.exponents = pivot_exps;
    while ((int)d.exponents.size() < rows) d.exponents.push_back(ValExp{r, true});
    std::sort(d.exponents.begin(), d.exponents.end(), [](const ValExp& a, const ValExp& b) {
        return a.v > b.v;
    });
    return d;
}

Snf smith_normal_form(const Mat<WittScalar>& m) {
    if (m.rows() == 0 || m.cols() == 0) throw parameter_error("smith_normal_form: empty matrix");
    const WittRingPtr ring = m(0, 0).ring();
    const int r = ring->r();
    Mat<WittScalar> A = m;
    int nr = A.rows(), nc = A.cols();
    WittScalar zero = ring->zero(), one = ring->one();
    Mat<WittScalar> U = Mat<WittScalar>::identity(nr, zero, one);
    Mat<WittScalar> Uinv = U;
    Mat<WittScalar> W = Mat<WittScalar>::identity(nc, zero, one);
    Mat<WittScalar> Winv = W;

    auto swap_rows = [&](int i, int j) {
        if (i == j) return;
        for (int c = 0; c < nc; ++c) std::swap(A(i, c), A(j, c));
        for (int c = 0; c < nr; ++c) std::swap(U(i, c), U(j, c));
        for (int rr = 0; rr < nr; ++rr) std::swap(Uinv(rr, i), Uinv(rr, j));
    };
    auto swap_cols = [&](int i, int j) {
        if (i == j) return;
        for (int rr = 0; rr < nr; ++rr) std::swap(A(rr, i), A(rr, j));
        for (int rr = 0; rr < nc; ++rr) std::swap(W(rr, i), W(rr, j));
        for (int c = 0; c < nc; ++c) std::swap(Winv(i, c), Winv(j, c));
    };
    // row_i -= s * row_k  (A and U); Uinv gets the inverse column operation
    auto row_op = [&](int i, int k, const WittScalar& s) {
        for (int c = 0; c < nc; ++c) A(i, c) = A(i, c) - s * A(k, c);
        for (int c = 0; c < nr; ++c) U(i, c) = U(i, c) - s * U(k, c);
        for (int rr = 0; rr < nr; ++rr) Uinv(rr, k) = Uinv(rr, k) + s * Uinv(rr, i);
    };
    auto col_op = [&](int j, int k, const WittScalar& s) {
        for (int rr = 0; rr < nr; ++rr) A(rr, j) = A(rr, j) - s * A(rr, k);
        for (int rr = 0; rr < nc; ++rr) W(rr, j) = W(rr, j) - s * W(rr, k);
        for (int c = 0; c < nc; ++c) Winv(k, c) = Winv(k, c) + s * Winv(j, c);
    };
    auto scale_row = [&](int i, const WittScalar& u, const WittScalar& uinv) {
        for (int c = 0; c < nc; ++c) A(i, c) = u * A(i, c);
        for (int c = 0; c < nr; ++c) U(i, c) = u * U(i, c);
        for (int rr = 0; rr < nr; ++rr) Uinv(rr, i) = Uinv(rr, i) * uinv;
    };

    Snf out;
    int steps = std::min(nr, nc);
    for (int k = 0; k < steps; ++k) {
        // pivot: minimal valuation, ties broken lexicographically by (row, col)
        int bi = -1, bj = -1, bv = r;
        for (int i = k; i < nr; ++i)
            for (int j = k; j < nc; ++j) {
                ValExp v = A(i, j).valuation();
                if (!v.saturated && v.v < bv) { bv = v.v; bi = i; bj = j; }
            }
        if (bi < 0) {
            // remaining block is indistinguishable from zero at precision r
            for (int i = k; i < steps; ++i) out.pivot_exps.push_back(ValExp{r, true});
            break;
        }
        swap_rows(k, bi);
        swap_cols(k, bj);
        // normalize pivot to exactly p^bv
        WittScalar unit = A(k, k).divide_by_p(bv).lift(r);
        // the lifted unit inverts in W_r: its reduction is the unit part of the pivot
        WittScalar uinv = unit.inverse();
        scale_row(k, uinv, unit);
        // now A(k,k) = p^bv + O(p^r); clear column then row
        for (int i = k + 1; i < nr; ++i) {
            ValExp v = A(i, k).valuation();
            if (v.saturated) continue;
            WittScalar s = A(i, k).divide_by_p(bv).lift(r);
            row_op(i, k, s);
        }
        for (int j = k + 1; j < nc; ++j) {
            ValExp v = A(k, j).valuation();
            if (v.saturated) continue;
            WittScalar s = A(k, j).divide_by_p(bv).lift(r);
            col_op(j, k, s);
        }
        out.pivot_exps.push_back(ValExp{bv, false});
    }
    out.U = U;
    out.Uinv = Uinv;
    out.W = W;
    out.Winv = Winv;
    out.rows = nr;
    out.cols = nc;
    out.r = r;
    return out;
}

std::vector<WittScalar> charpoly(const Mat<WittScalar>& m) {
    if (m.rows() != m.cols() || m.rows() == 0) throw parameter_error("charpoly: square matrix required");
    const int n = m.rows();
    const WittRingPtr ring = m(0, 0).ring();
    WittScalar zero = ring->zero(), one = ring->one();

    // Berkowitz: iterate Toeplitz products over leading principal minors.
    // V holds the coefficient vector of the charpoly of the k x k leading
    // block, highest degree first, length k+1.
    std::vector<WittScalar> V{one, -m(0, 0)};
    for (int k = 1; k < n; ++k) {
        // row vector R = (m[k][0..k-1]), column S = (m[0..k-1][k]), block B = k x k leading
        std::vector<WittScalar> c(k + 2, zero);
        c[0] = one;
        c[1] = -m(k, k);
        // c[j+1] = - R B^{j-1} S for j = 1..k
        std::vector<WittScalar> w(k);
        for (int i = 0; i < k; ++i) w[i] = m(i, k);
        for (int j = 1; j <= k; ++j) {
            if (j > 1) {
                std::vector<WittScalar> w2(k, zero);
                for (int i = 0; i < k; ++i) {
                    WittScalar acc = zero;
                    for (int t = 0; t < k; ++t) acc = acc + m(i, t) * w[t];
                    w2[i] = acc;
                }
                w = std::move(w2);
            }
            WittScalar acc = zero;
            for (int t = 0; t < k; ++t) acc = acc + m(k, t) * w[t];
            c[j + 1] = -acc;
        }
        // V <- Toeplitz(c) * V
        std::vector<WittScalar> V2(k + 2, zero);
        for (int i = 0; i <= k + 1; ++i) {
            WittScalar acc = zero;
            for (int j = 0; j <= std::min(i, k + 1); ++j)
                if (i - j <= (int)V.size() - 1) acc = acc + c[j] * V[i - j];
            V2[i] = acc;
        }
        V = std::move(V2);
    }
    // reorder to c_0..c_n (constant term first)
    std::vector<WittScalar> out(n + 1, zero);
    for (int i = 0; i <= n; ++i) out[i] = V[n - i];
    return out;
}

WittScalar det(const Mat<WittScalar>& m) {
    auto cp = charpoly(m);
    WittScalar d = cp[0]; // det(XI - M) at X=0 is (-1)^n det M
    if (m.rows() % 2 == 1) d = -d;
    return d;
}

Mat<WittScalar> inverse(const Mat<WittScalar>& m) {
    if (m.rows() != m.cols()) throw parameter_error("inverse: square matrix required");
    // adjugate route: division-free cofactors, then scale by det^{-1}
    const WittRingPtr ring = m(0, 0).ring();
    int n = m.rows();
    WittScalar d = det_small(m);
    if (!d.is_unit()) throw parameter_error("inverse: matrix is not invertible over W_r");
    WittScalar dinv = d.inverse();
    if (n == 1) {
        Mat<WittScalar> c(1, 1, dinv);
        return c;
    }
    Mat<WittScalar> adj(n, n, ring->zero());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<int> rs, cs;
            for (int t = 0; t < n; ++t) {
                if (t != i) rs.push_back(t);
                if (t != j) cs.push_back(t);
            }
            WittScalar cof = det_small(m.submatrix(rs, cs));
            if ((i + j) % 2 == 1) cof = -cof;
            adj(j, i) = cof * dinv;
        }
    return adj;
}

Mat<WittScalar> solve_unipotent_equation(const Mat<WittScalar>& C1, const Mat<WittScalar>& C2,
                                         const Mat<WittScalar>& C3, const Mat<WittScalar>& C4,
                                         const Mat<WittScalar>& N, int rho) {
    const WittRingPtr ring = C1(0, 0).ring();
    const int r = ring->r();
    const int rr = C1.rows(), ss = C1.cols();
    // X is rr x ss; the equation forces C2: ss x ss, C3 (and N): rr x rr, C4: ss x rr
    if (C2.rows() != ss || C2.cols() != ss || C3.rows() != rr || C3.cols() != rr ||
        C4.rows() != ss || C4.cols() != rr || N.rows() != rr || N.cols() != rr)
        throw parameter_error("solve_unipotent_equation: shape mismatch");
    if (!det_small(C2).is_unit())
        throw parameter_error("solve_unipotent_equation: C2 is not invertible");

    WittScalar p = ring->from_int(ring->p());
    auto twist = [&](const Mat<WittScalar>& X) { return frob_mat(X, rho); };

    std::function<Mat<WittScalar>(const Mat<WittScalar>&, const Mat<WittScalar>&,
                                  const Mat<WittScalar>&, const Mat<WittScalar>&, int)>
        solve = [&](const Mat<WittScalar>& A1, const Mat<WittScalar>& A2,
                    const Mat<WittScalar>& A3, const Mat<WittScalar>& A4,
                    int depth) -> Mat<WittScalar> {
        Mat<WittScalar> A2inv = inverse(A2);
        // mod-p stage: X = -(A1 + Nbar X^rho) A2^{-1}, iterated; Nbar is
        // nilpotent mod p so the iteration stabilizes
        Mat<WittScalar> G = (A1 * A2inv).scale(-ring->one());
        for (int it = 0; it <= 2 * (rr + 1); ++it) {
            Mat<WittScalar> G2 = (A1 + N * twist(G)) * A2inv;
            G2 = G2.scale(-ring->one());
            // compare mod p
            bool same = true;
            for (int i = 0; i < rr && same; ++i)
                for (int j = 0; j < ss && same; ++j)
                    if (!(G2(i, j) - G(i, j)).residue().is_zero()) same = false;
            G = G2;
            if (same) break;
            if (it == 2 * (rr + 1))
                throw invalid_module_error("solve_unipotent_equation: mod-p stage did not stabilize");
        }
        // full residual E = A1 + G A2 + (N + p A3) G^r + p G A4 G^r
        Mat<WittScalar> Gr = twist(G);
        Mat<WittScalar> E = A1 + G * A2 + (N + A3.scale(p)) * Gr + (G * A4 * Gr).scale(p);
        if (depth >= r) return G;
        // divide E by p exactly (it vanishes mod p by construction)
        Mat<WittScalar> E1 = E.map([&](const WittScalar& x) {
            return x.divide_by_p(1).lift(r);
        });
        Mat<WittScalar> B1 = E1;
        Mat<WittScalar> B2 = A2 + (A4 * Gr).scale(p);
        Mat<WittScalar> B3 = A3 + G * A4;
        Mat<WittScalar> B4 = A4.scale(p);
        Mat<WittScalar> Xp = solve(B1, B2, B3, B4, depth + 1);
        return G + Xp.scale(p);
    };

    return solve(C1, C2, C3, C4, 1);
}

} // namespace muord
