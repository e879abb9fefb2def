#include "muord/fq.hpp"

#include <map>
#include <mutex>

namespace muord {

namespace {

long long mod(long long a, long long p) {
    long long r = a % p;
    return r < 0 ? r + p : r;
}

// poly arithmetic over F_p, coefficient vectors low-degree-first
using Poly = std::vector<long long>;

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& modpoly, long long p) {
    int m = (int)modpoly.size() - 1;
    std::vector<long long> acc(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (size_t j = 0; j < b.size(); ++j) acc[i + j] = mod(acc[i + j] + a[i] * b[j], p);
    // reduce by monic modpoly
    for (int d = (int)acc.size() - 1; d >= m; --d) {
        long long c = acc[d];
        if (!c) continue;
        acc[d] = 0;
        for (int j = 0; j < m; ++j) acc[d - m + j] = mod(acc[d - m + j] - c * modpoly[j], p);
    }
    acc.resize(m);
    return acc;
}

bool is_zero_poly(const Poly& a) {
    for (long long c : a)
        if (c) return false;
    return true;
}

// irreducibility over F_p by trial: x^{p^m} == x and x^{p^{m/q}} != x for
// prime divisors q of m.  m <= 8 here, brute force is plenty.
Poly powmod_xq(const Poly& base, long long e, const Poly& modpoly, long long p) {
    int m = (int)modpoly.size() - 1;
    Poly result(m, 0);
    result[0] = 1;
    Poly b = base;
    while (e > 0) {
        if (e & 1) result = poly_mulmod(result, b, modpoly, p);
        b = poly_mulmod(b, b, modpoly, p);
        e >>= 1;
    }
    return result;
}

bool is_irreducible(const Poly& modpoly, long long p) {
    int m = (int)modpoly.size() - 1;
    Poly x(m, 0);
    if (m == 1) return true;
    x[1] = 1;
    // x^{p^m} = x
    Poly t = x;
    for (int i = 0; i < m; ++i) t = powmod_xq(t, p, modpoly, p);
    Poly diff(m, 0);
    for (int i = 0; i < m; ++i) diff[i] = mod(t[i] - x[i], p);
    if (!is_zero_poly(diff)) return false;
    for (int q = 2; q <= m; ++q) {
        if (m % q) continue;
        bool qprime = true;
        for (int d = 2; d * d <= q; ++d)
            if (q % d == 0) qprime = false;
        if (!qprime) continue;
        Poly s = x;
        for (int i = 0; i < m / q; ++i) s = powmod_xq(s, p, modpoly, p);
        Poly d2(m, 0);
        for (int i = 0; i < m; ++i) d2[i] = mod(s[i] - x[i], p);
        if (is_zero_poly(d2)) return false;
    }
    return true;
}

} // namespace

FqCtx::FqCtx(long long p, int m) : p_(p), m_(m) {
    if (p < 2 || m < 1 || m > 8) throw parameter_error("FqCtx: bad (p, m)");
    // lexicographically smallest monic irreducible: scan constant..x^{m-1} digits
    std::vector<long long> digits(m, 0);
    for (;;) {
        Poly cand(m + 1, 0);
        for (int i = 0; i < m; ++i) cand[i] = digits[i];
        cand[m] = 1;
        if (is_irreducible(cand, p)) {
            modpoly_ = cand;
            return;
        }
        int i = 0;
        while (i < m && ++digits[i] == p) digits[i++] = 0;
        if (i == m) throw parameter_error("FqCtx: no irreducible found");
    }
}

std::shared_ptr<const FqCtx> FqCtx::get(long long p, int m) {
    static std::mutex mu;
    static std::map<std::pair<long long, int>, std::shared_ptr<const FqCtx>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, m);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto ctx = std::make_shared<const FqCtx>(p, m);
    cache[key] = ctx;
    return ctx;
}

FqElem FqCtx::zero() const { return FqElem(get(p_, m_), std::vector<long long>(m_, 0)); }
FqElem FqCtx::one() const { return from_int(1); }

FqElem FqCtx::gen() const {
    std::vector<long long> c(m_, 0);
    if (m_ > 1) c[1] = 1;
    else c[0] = mod(-modpoly_[0], p_); // x = -Phi(0) in the degree-1 case
    return FqElem(get(p_, m_), c);
}

FqElem FqCtx::from_int(long long v) const {
    std::vector<long long> c(m_, 0);
    c[0] = mod(v, p_);
    return FqElem(get(p_, m_), c);
}

FqElem FqCtx::make(std::vector<long long> coeffs) const {
    if ((int)coeffs.size() != m_) throw parameter_error("FqCtx::make: wrong length");
    for (auto& c : coeffs) c = mod(c, p_);
    return FqElem(get(p_, m_), std::move(coeffs));
}

std::vector<FqElem> FqCtx::enumerate() const {
    std::vector<FqElem> all;
    std::vector<long long> digits(m_, 0);
    long long total = 1;
    for (int i = 0; i < m_; ++i) total *= p_;
    all.reserve(total);
    for (long long k = 0; k < total; ++k) {
        all.push_back(make(digits));
        int i = 0;
        while (i < m_ && ++digits[i] == p_) digits[i++] = 0;
    }
    return all;
}

bool FqElem::is_zero() const {
    for (long long c : c_)
        if (c) return false;
    return true;
}

bool FqElem::operator==(const FqElem& o) const {
    check_same(o);
    return c_ == o.c_;
}

FqElem FqElem::operator+(const FqElem& o) const {
    check_same(o);
    std::vector<long long> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = mod(c_[i] + o.c_[i], ctx_->p());
    return FqElem(ctx_, std::move(c));
}

FqElem FqElem::operator-(const FqElem& o) const {
    check_same(o);
    std::vector<long long> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = mod(c_[i] - o.c_[i], ctx_->p());
    return FqElem(ctx_, std::move(c));
}

FqElem FqElem::operator-() const {
    std::vector<long long> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = mod(-c_[i], ctx_->p());
    return FqElem(ctx_, std::move(c));
}

FqElem FqElem::operator*(const FqElem& o) const {
    check_same(o);
    return FqElem(ctx_, poly_mulmod(c_, o.c_, ctx_->modpoly(), ctx_->p()));
}

FqElem FqElem::pow(long long e) const {
    if (e < 0) throw parameter_error("FqElem::pow: negative exponent");
    FqElem r = ctx_->one(), b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

FqElem FqElem::inverse() const {
    if (is_zero()) throw parameter_error("FqElem: inverse of zero");
    long long q = 1;
    for (int i = 0; i < ctx_->m(); ++i) q *= ctx_->p();
    return pow(q - 2); // x^{q-1} = 1
}

FqElem FqElem::pth_root() const {
    FqElem r = *this;
    for (int i = 0; i < ctx_->m() - 1; ++i) r = r.frobenius();
    return r;
}

std::string FqElem::str() const {
    std::string s = "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(c_[i]);
    }
    return s + "]";
}

FqElem embed(const FqElem& a, const FqCtxPtr& bigger) {
    const FqCtxPtr& small = a.ctx();
    if (bigger->p() != small->p() || bigger->m() % small->m() != 0)
        throw parameter_error("embed: target is not an extension");
    if (bigger->m() == small->m()) return bigger->make(a.coeffs());
    // find smallest root of Phi_small in the big field (cache would be easy,
    // but the scan is cheap at this scale)
    FqElem root = bigger->zero();
    bool found = false;
    for (const FqElem& c : bigger->enumerate()) {
        FqElem v = bigger->zero(), pw = bigger->one();
        for (int i = 0; i <= small->m(); ++i) {
            v = v + pw * bigger->from_int(small->modpoly()[i]);
            pw = pw * c;
        }
        if (v.is_zero()) { root = c; found = true; break; }
    }
    if (!found) throw parameter_error("embed: no root found");
    FqElem v = bigger->zero(), pw = bigger->one();
    for (int i = 0; i < small->m(); ++i) {
        v = v + pw * bigger->from_int(a.coeffs()[i]);
        pw = pw * root;
    }
    return v;
}

} // namespace muord
