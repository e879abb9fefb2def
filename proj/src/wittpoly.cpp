#include "muord/wittpoly.hpp"

#include <gmpxx.h>

#include <map>
#include <mutex>

namespace muord {

namespace {

// sparse polynomial with exact integer coefficients
using ZPoly = std::map<Monomial, mpz_class>;

ZPoly zvar(int idx, int nvars) {
    Monomial m(nvars, 0);
    m[idx] = 1;
    ZPoly f;
    f[m] = 1;
    return f;
}

void zadd_term(ZPoly& f, const Monomial& m, const mpz_class& c) {
    auto it = f.find(m);
    if (it == f.end()) {
        if (c != 0) f[m] = c;
    } else {
        it->second += c;
        if (it->second == 0) f.erase(it);
    }
}

ZPoly zadd(const ZPoly& a, const ZPoly& b) {
    ZPoly c = a;
    for (const auto& [m, v] : b) zadd_term(c, m, v);
    return c;
}

ZPoly zscale(const ZPoly& a, const mpz_class& s) {
    ZPoly c;
    if (s == 0) return c;
    for (const auto& [m, v] : a) c[m] = v * s;
    return c;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    ZPoly c;
    for (const auto& [ma, va] : a)
        for (const auto& [mb, vb] : b) {
            Monomial m(ma.size());
            for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            zadd_term(c, m, va * vb);
        }
    return c;
}

ZPoly zpow(const ZPoly& a, long long e, int nvars) {
    ZPoly r;
    r[Monomial(nvars, 0)] = 1;
    if (a.empty()) return e == 0 ? r : ZPoly{};
    ZPoly b = a;
    while (e > 0) {
        if (e & 1) r = zmul(r, b);
        b = (e > 1) ? zmul(b, b) : b;
        e >>= 1;
    }
    return r;
}

// exact division by p^k; throws if any coefficient is not divisible
ZPoly zdiv_exact(const ZPoly& a, const mpz_class& d) {
    ZPoly c;
    for (const auto& [m, v] : a) {
        mpz_class q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
        if (r != 0)
            throw parameter_error("Witt structure polynomial is not integral (generation bug)");
        c[m] = q;
    }
    return c;
}

// ghost component w_n = sum_i p^i x_{off+i}^{p^{n-i}}
ZPoly ghost(long long p, int n, int off, int nvars) {
    const mpz_class P((long)p);
    ZPoly w;
    mpz_class coeff = 1;
    for (int i = 0; i <= n; ++i) {
        long long e = 1;
        for (int j = 0; j < n - i; ++j) e *= p;
        w = zadd(w, zscale(zpow(zvar(off + i, nvars), e, nvars), coeff));
        coeff *= P;
    }
    return w;
}

ModPoly reduce_mod_p(const ZPoly& f, long long p) {
    ModPoly out;
    const mpz_class P((long)p);
    for (const auto& [m, v] : f) {
        mpz_class r = v % P;
        if (r < 0) r += P;
        long long c = r.get_si();
        if (c) out.terms[m] = c;
    }
    return out;
}

} // namespace

WittOpTable::WittOpTable(long long p, int r_w) : p_(p), r_w_(r_w) {
    if (r_w < 1 || r_w > 5) throw capability_error("WittOpTable: r_w must be in [1,5]");
    int nv2 = 2 * r_w; // x-block then y-block
    int nv1 = r_w;

    std::vector<ZPoly> S(r_w), P(r_w), I(r_w);
    const mpz_class Pz((long)p);
    mpz_class pn = 1;
    for (int n = 0; n < r_w; ++n) {
        // w_n(S_0..S_n) = w_n(x) + w_n(y), same pattern for P (product of
        // ghosts) and I (negated ghost).
        ZPoly wx = ghost(p, n, 0, nv2);
        ZPoly wy = ghost(p, n, r_w, nv2);
        ZPoly target_S = zadd(wx, wy);
        ZPoly target_P = zmul(wx, wy);
        ZPoly target_I = zscale(ghost(p, n, 0, nv1), -1);

        mpz_class pi = 1;
        for (int i = 0; i < n; ++i) {
            long long e = 1;
            for (int j = 0; j < n - i; ++j) e *= p;
            target_S = zadd(target_S, zscale(zpow(S[i], e, nv2), -pi));
            target_P = zadd(target_P, zscale(zpow(P[i], e, nv2), -pi));
            target_I = zadd(target_I, zscale(zpow(I[i], e, nv1), -pi));
            pi *= Pz;
        }
        S[n] = zdiv_exact(target_S, pn);
        P[n] = zdiv_exact(target_P, pn);
        I[n] = zdiv_exact(target_I, pn);
        pn *= Pz;
    }

    S_.resize(r_w);
    P_.resize(r_w);
    I_.resize(r_w);
    exactS_.resize(r_w);
    for (int n = 0; n < r_w; ++n) {
        S_[n] = reduce_mod_p(S[n], p);
        P_[n] = reduce_mod_p(P[n], p);
        I_[n] = reduce_mod_p(I[n], p);
        for (const auto& [m, v] : S[n]) exactS_[n][m] = v.get_str();
    }
}

std::map<Monomial, std::string> WittOpTable::exact_sum(int n) const { return exactS_.at(n); }

std::shared_ptr<const WittOpTable> WittOpTable::get(long long p, int r_w) {
    static std::mutex mu;
    static std::map<std::pair<long long, int>, std::shared_ptr<const WittOpTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, r_w);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto t = std::make_shared<const WittOpTable>(p, r_w);
    cache[key] = t;
    return t;
}

} // namespace muord
