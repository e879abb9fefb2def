#include "muord/witt.hpp"

#include <map>
#include <mutex>

namespace muord {

namespace {

long long lmod(long long a, long long n) {
    long long r = a % n;
    return r < 0 ? r + n : r;
}

using Poly = std::vector<long long>;

// product in (Z/n)[x]/(modpoly), modpoly monic
Poly mulmod(const Poly& a, const Poly& b, const Poly& modpoly, long long n) {
    int m = (int)modpoly.size() - 1;
    std::vector<__int128> acc(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (size_t j = 0; j < b.size(); ++j) acc[i + j] += (__int128)a[i] * b[j];
    for (int d = (int)acc.size() - 1; d >= m; --d) {
        __int128 c = acc[d] % n;
        if (c < 0) c += n;
        acc[d] = 0;
        if (!c) continue;
        for (int j = 0; j < m; ++j) acc[d - m + j] -= c * modpoly[j];
    }
    Poly out(m, 0);
    for (int i = 0; i < m; ++i) out[i] = (long long)lmod((long long)(acc[i] % n), n);
    return out;
}

Poly addp(const Poly& a, const Poly& b, long long n) {
    Poly c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = lmod(a[i] + b[i], n);
    return c;
}

Poly subp(const Poly& a, const Poly& b, long long n) {
    Poly c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = lmod(a[i] - b[i], n);
    return c;
}

// evaluate a polynomial with integer coefficients at a ring element
Poly eval_int_poly(const std::vector<long long>& coeffs, const Poly& at, const Poly& modpoly,
                   long long n) {
    int m = (int)modpoly.size() - 1;
    Poly acc(m, 0);
    for (int i = (int)coeffs.size() - 1; i >= 0; --i) {
        acc = mulmod(acc, at, modpoly, n);
        acc[0] = lmod(acc[0] + coeffs[i], n);
    }
    return acc;
}

// ring inverse of a unit in (Z/p^r)[x]/(modpoly) via Newton from the mod-p inverse
Poly ring_inverse(const Poly& a, const Poly& modpoly, long long p, int r, long long pr,
                  const FqCtxPtr& fq) {
    std::vector<long long> res(a.size());
    for (size_t i = 0; i < a.size(); ++i) res[i] = lmod(a[i], p);
    FqElem inv0 = fq->make(res).inverse();
    Poly y(a.size());
    for (size_t i = 0; i < a.size(); ++i) y[i] = inv0.coeffs()[i];
    int prec = 1;
    while (prec < r) {
        // y <- y (2 - a y)
        Poly ay = mulmod(a, y, modpoly, pr);
        Poly two_minus(ay.size());
        for (size_t i = 0; i < ay.size(); ++i) two_minus[i] = lmod(-ay[i], pr);
        two_minus[0] = lmod(two_minus[0] + 2, pr);
        y = mulmod(y, two_minus, modpoly, pr);
        prec *= 2;
    }
    return y;
}

} // namespace

WittRing::WittRing(long long p, int m, int r) : p_(p), m_(m), r_(r) {
    if (r < 1 || r > 12) throw parameter_error("WittRing: bad precision r");
    fq_ = FqCtx::get(p, m);
    pr_ = 1;
    for (int i = 0; i < r; ++i) {
        if (pr_ > (1LL << 40)) throw parameter_error("WittRing: p^r too large");
        pr_ *= p;
    }
    modpoly_.assign(fq_->modpoly().begin(), fq_->modpoly().end()); // trivial lift

    // Hensel-lift the Frobenius: s == x^p mod p with Phi(s) == 0 mod p^r.
    Poly s(m, 0);
    {
        Poly x(m, 0);
        if (m > 1) x[1] = 1;
        else x[0] = lmod(-modpoly_[0], pr_);
        s = x;
        for (long long e = 1; e < p; ++e) s = mulmod(s, x, modpoly_, pr_); // x^p
        std::vector<long long> dcoeffs(m);                                // Phi'
        for (int i = 1; i <= m; ++i) dcoeffs[i - 1] = lmod((long long)i * modpoly_[i], pr_);
        for (int it = 0; it < r + 2; ++it) {
            Poly fs = eval_int_poly(modpoly_, s, modpoly_, pr_);
            bool zero = true;
            for (long long c : fs)
                if (c) zero = false;
            if (zero) break;
            Poly ds = eval_int_poly(dcoeffs, s, modpoly_, pr_);
            Poly dinv = ring_inverse(ds, modpoly_, p_, r_, pr_, fq_);
            Poly corr = mulmod(fs, dinv, modpoly_, pr_);
            s = subp(s, corr, pr_);
        }
        Poly check = eval_int_poly(modpoly_, s, modpoly_, pr_);
        for (long long c : check)
            if (c) throw parameter_error("WittRing: Frobenius lift failed");
    }

    // matrices of sigma^t: images of the basis x^j under x -> s
    sigma_.resize(m);
    std::vector<Poly> pow_s(m);
    {
        Poly cur(m, 0);
        cur[0] = 1;
        for (int j = 0; j < m; ++j) {
            pow_s[j] = cur;
            cur = mulmod(cur, s, modpoly_, pr_);
        }
    }
    std::vector<std::vector<long long>> mat(m, std::vector<long long>(m, 0));
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) mat[i][j] = pow_s[j][i];
    // sigma_[0] = identity
    sigma_[0].assign(m, std::vector<long long>(m, 0));
    for (int i = 0; i < m; ++i) sigma_[0][i][i] = 1;
    for (int t = 1; t < m; ++t) {
        sigma_[t].assign(m, std::vector<long long>(m, 0));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                __int128 acc = 0;
                for (int k = 0; k < m; ++k) acc += (__int128)mat[i][k] * sigma_[t - 1][k][j];
                sigma_[t][i][j] = lmod((long long)(acc % pr_), pr_);
            }
    }
    // sanity: sigma^m = id
    if (m > 1) {
        std::vector<std::vector<long long>> id(m, std::vector<long long>(m, 0));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                __int128 acc = 0;
                for (int k = 0; k < m; ++k) acc += (__int128)mat[i][k] * sigma_[m - 1][k][j];
                id[i][j] = lmod((long long)(acc % pr_), pr_);
            }
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (id[i][j] != (i == j ? 1 : 0))
                    throw parameter_error("WittRing: sigma^m != id");
    }
}

std::shared_ptr<const WittRing> WittRing::get(long long p, int m, int r) {
    static std::mutex mu;
    static std::map<std::tuple<long long, int, int>, std::shared_ptr<const WittRing>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(p, m, r);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto ring = std::make_shared<const WittRing>(p, m, r);
    cache[key] = ring;
    return ring;
}

WittScalar WittRing::zero() const {
    return WittScalar(shared_from_this(), std::vector<long long>(m_, 0));
}
WittScalar WittRing::one() const { return from_int(1); }

WittScalar WittRing::from_int(long long v) const {
    std::vector<long long> c(m_, 0);
    c[0] = lmod(v, pr_);
    return WittScalar(shared_from_this(), std::move(c));
}

WittScalar WittRing::make(std::vector<long long> coeffs) const {
    if ((int)coeffs.size() != m_) throw parameter_error("WittRing::make: wrong length");
    for (auto& c : coeffs) c = lmod(c, pr_);
    return WittScalar(shared_from_this(), std::move(coeffs));
}

WittScalar WittRing::p_power(int k) const {
    if (k < 0) throw parameter_error("WittRing::p_power: negative");
    long long v = 1;
    for (int i = 0; i < k && v < pr_; ++i) v *= p_;
    return from_int(k >= r_ ? 0 : v);
}

WittScalar WittRing::teichmuller(const FqElem& a) const {
    if (a.ctx()->p() != p_ || a.ctx()->m() != m_)
        throw parameter_error("teichmuller: residue field mismatch");
    std::vector<long long> c(m_);
    for (int i = 0; i < m_; ++i) c[i] = a.coeffs()[i];
    WittScalar t = make(std::move(c));
    long long q = 1;
    for (int i = 0; i < m_; ++i) q *= p_;
    for (int it = 0; it < r_; ++it) {
        // t <- t^q ; fixed point is the Teichmuller representative
        WittScalar b = t, acc = one();
        long long e = q;
        while (e > 0) {
            if (e & 1) acc = acc * b;
            b = b * b;
            e >>= 1;
        }
        t = acc;
    }
    return t;
}

std::vector<FqElem> WittRing::witt_coordinates(const WittScalar& x) const {
    std::vector<FqElem> coords;
    coords.reserve(r_);
    WittScalar cur = x;
    for (int i = 0; i < r_; ++i) {
        FqElem a = cur.residue();
        coords.push_back(a);
        if (i + 1 == r_) break;
        const WittRingPtr& ring = cur.ring();
        WittScalar t = ring->teichmuller(a);
        cur = (cur - t).divide_by_p(1).frobenius(1);
    }
    return coords;
}

WittScalar WittRing::from_witt_coordinates(const std::vector<FqElem>& coords) const {
    if ((int)coords.size() != r_) throw parameter_error("from_witt_coordinates: need r entries");
    WittScalar acc = zero();
    for (int i = r_ - 1; i >= 0; --i) {
        WittScalar t = teichmuller(coords[i]);
        WittScalar vi = t;
        for (int j = 0; j < i; ++j) vi = vi.verschiebung();
        acc = acc + vi;
    }
    return acc;
}

const std::vector<std::vector<long long>>& WittRing::sigma_matrix(int t) const {
    int tt = ((t % m_) + m_) % m_;
    return sigma_[tt];
}

void WittScalar::check_same(const WittScalar& o) const {
    if (!ring_ || !o.ring_ || ring_->p() != o.ring_->p() || ring_->m() != o.ring_->m() ||
        ring_->r() != o.ring_->r())
        throw parameter_error("WittScalar: mismatched rings (p, m, r)");
}

bool WittScalar::is_zero() const {
    for (long long c : c_)
        if (c) return false;
    return true;
}

bool WittScalar::operator==(const WittScalar& o) const {
    check_same(o);
    return c_ == o.c_;
}

WittScalar WittScalar::operator+(const WittScalar& o) const {
    check_same(o);
    return WittScalar(ring_, addp(c_, o.c_, ring_->pr()));
}

WittScalar WittScalar::operator-(const WittScalar& o) const {
    check_same(o);
    return WittScalar(ring_, subp(c_, o.c_, ring_->pr()));
}

WittScalar WittScalar::operator-() const {
    std::vector<long long> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = lmod(-c_[i], ring_->pr());
    return WittScalar(ring_, std::move(c));
}

WittScalar WittScalar::operator*(const WittScalar& o) const {
    check_same(o);
    return WittScalar(ring_, mulmod(c_, o.c_, ring_->modpoly(), ring_->pr()));
}

WittScalar WittScalar::frobenius(int t) const {
    int m = ring_->m();
    const auto& mat = ring_->sigma_matrix(t);
    std::vector<long long> out(m, 0);
    for (int i = 0; i < m; ++i) {
        __int128 acc = 0;
        for (int j = 0; j < m; ++j) acc += (__int128)mat[i][j] * c_[j];
        out[i] = lmod((long long)(acc % ring_->pr()), ring_->pr());
    }
    return WittScalar(ring_, std::move(out));
}

WittScalar WittScalar::verschiebung() const {
    WittScalar s = frobenius(-1);
    std::vector<long long> c(s.c_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = lmod(s.c_[i] * ring_->p(), ring_->pr());
    return WittScalar(ring_, std::move(c));
}

ValExp WittScalar::valuation() const {
    int best = ring_->r();
    for (long long c : c_) {
        if (!c) continue;
        int v = 0;
        long long x = c;
        while (x % ring_->p() == 0) { x /= ring_->p(); ++v; }
        if (v < best) best = v;
    }
    ValExp e;
    e.v = best;
    e.saturated = (best == ring_->r());
    return e;
}

WittScalar WittScalar::inverse() const {
    ValExp v = valuation();
    if (v.v != 0) throw parameter_error("WittScalar: inverse of non-unit");
    Poly y = ring_inverse(c_, ring_->modpoly(), ring_->p(), ring_->r(), ring_->pr(),
                          ring_->residue_field());
    return WittScalar(ring_, std::move(y));
}

FqElem WittScalar::residue() const {
    std::vector<long long> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = lmod(c_[i], ring_->p());
    return ring_->residue_field()->make(std::move(c));
}

WittScalar WittScalar::reduce(int s) const {
    if (s > ring_->r() || s < 1) throw parameter_error("WittScalar::reduce: bad target");
    auto target = WittRing::get(ring_->p(), ring_->m(), s);
    std::vector<long long> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = lmod(c_[i], target->pr());
    return WittScalar(target, std::move(c));
}

WittScalar WittScalar::divide_by_p(int k) const {
    if (k == 0) return *this;
    if (k < 0 || k >= ring_->r()) throw parameter_error("divide_by_p: bad k");
    long long pk = 1;
    for (int i = 0; i < k; ++i) pk *= ring_->p();
    std::vector<long long> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] % pk != 0) throw invalid_module_error("WittScalar: not divisible by p^k");
        c[i] = c_[i] / pk;
    }
    auto target = WittRing::get(ring_->p(), ring_->m(), ring_->r() - k);
    for (auto& x : c) x = lmod(x, target->pr());
    return WittScalar(target, std::move(c));
}

WittScalar WittScalar::lift(int r2) const {
    if (r2 < ring_->r()) throw parameter_error("WittScalar::lift: target smaller");
    auto target = WittRing::get(ring_->p(), ring_->m(), r2);
    return WittScalar(target, c_);
}

std::string WittScalar::str() const {
    std::string s = "(";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(c_[i]);
    }
    return s + ")";
}

WittScalar embed(const WittScalar& a, const WittRingPtr& bigger) {
    const WittRingPtr& small = a.ring();
    if (bigger->p() != small->p() || bigger->r() != small->r() ||
        bigger->m() % small->m() != 0)
        throw parameter_error("embed: incompatible Witt rings");
    if (bigger->m() == small->m()) return bigger->make(a.coeffs());
    // Witt coordinates transport the element through the residue embedding.
    std::vector<FqElem> coords = small->witt_coordinates(a);
    std::vector<FqElem> big;
    big.reserve(coords.size());
    for (const FqElem& c : coords) big.push_back(muord::embed(c, bigger->residue_field()));
    return bigger->from_witt_coordinates(big);
}

} // namespace muord
