#include "muord/series.hpp"

#include <map>
#include <mutex>
#include <numeric>

namespace muord {

namespace {
int total_deg(const std::vector<int>& m) { return std::accumulate(m.begin(), m.end(), 0); }
} // namespace

SeriesRing::SeriesRing(FqCtxPtr fq, std::vector<std::string> vars, int deg)
    : fq_(std::move(fq)), vars_(std::move(vars)), deg_(deg) {
    if (deg_ < 0 || deg_ > 64) throw parameter_error("SeriesRing: bad truncation degree");
}

std::shared_ptr<const SeriesRing> SeriesRing::get(long long p, int m,
                                                  std::vector<std::string> vars, int deg) {
    static std::mutex mu;
    static std::map<std::tuple<long long, int, std::vector<std::string>, int>,
                    std::shared_ptr<const SeriesRing>>
        cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(p, m, vars, deg);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto ring = std::make_shared<const SeriesRing>(FqCtx::get(p, m), vars, deg);
    cache[key] = ring;
    return ring;
}

TruncPoly SeriesRing::zero() const { return TruncPoly(shared_from_this(), {}); }

TruncPoly SeriesRing::one() const { return constant(fq_->one()); }

TruncPoly SeriesRing::constant(const FqElem& c) const {
    std::map<std::vector<int>, FqElem> t;
    if (!c.is_zero()) t[std::vector<int>(nvars(), 0)] = c;
    return TruncPoly(shared_from_this(), std::move(t));
}

TruncPoly SeriesRing::var(int i) const {
    if (i < 0 || i >= nvars()) throw parameter_error("SeriesRing::var: index out of range");
    std::map<std::vector<int>, FqElem> t;
    if (deg_ >= 1) {
        std::vector<int> m(nvars(), 0);
        m[i] = 1;
        t[m] = fq_->one();
    }
    return TruncPoly(shared_from_this(), std::move(t));
}

void TruncPoly::check_same(const TruncPoly& o) const {
    if (!ring_ || !o.ring_ || ring_->p() != o.ring_->p() || ring_->m() != o.ring_->m() ||
        ring_->vars() != o.ring_->vars() || ring_->deg() != o.ring_->deg())
        throw parameter_error("TruncPoly: mismatched series rings");
}

void TruncPoly::add_term(std::map<std::vector<int>, FqElem>& acc, const std::vector<int>& m,
                         const FqElem& c) const {
    if (c.is_zero() || total_deg(m) > ring_->deg()) return;
    auto it = acc.find(m);
    if (it == acc.end()) {
        acc.emplace(m, c);
    } else {
        FqElem s = it->second + c;
        if (s.is_zero()) acc.erase(it);
        else it->second = s;
    }
}

bool TruncPoly::operator==(const TruncPoly& o) const {
    check_same(o);
    return terms_ == o.terms_;
}

TruncPoly TruncPoly::operator+(const TruncPoly& o) const {
    check_same(o);
    auto acc = terms_;
    for (const auto& [m, c] : o.terms_) {
        auto it = acc.find(m);
        if (it == acc.end()) acc.emplace(m, c);
        else {
            FqElem s = it->second + c;
            if (s.is_zero()) acc.erase(it);
            else it->second = s;
        }
    }
    return TruncPoly(ring_, std::move(acc));
}

TruncPoly TruncPoly::operator-(const TruncPoly& o) const { return *this + (-o); }

TruncPoly TruncPoly::operator-() const {
    auto acc = terms_;
    for (auto& [m, c] : acc) c = -c;
    return TruncPoly(ring_, std::move(acc));
}

TruncPoly TruncPoly::operator*(const TruncPoly& o) const {
    check_same(o);
    std::map<std::vector<int>, FqElem> acc;
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) {
            std::vector<int> m(ma.size());
            int d = 0;
            for (size_t i = 0; i < m.size(); ++i) { m[i] = ma[i] + mb[i]; d += m[i]; }
            if (d > ring_->deg()) continue;
            add_term(acc, m, ca * cb);
        }
    return TruncPoly(ring_, std::move(acc));
}

TruncPoly TruncPoly::pow(long long e) const {
    if (e < 0) throw parameter_error("TruncPoly::pow: negative exponent");
    TruncPoly r = ring_->one(), b = *this;
    while (e > 0) {
        if (e & 1) r = r * b;
        if (e > 1) b = b * b;
        e >>= 1;
    }
    return r;
}

TruncPoly TruncPoly::scale(const FqElem& c) const {
    if (c.is_zero()) return ring_->zero();
    auto acc = terms_;
    for (auto& [m, v] : acc) v = v * c;
    return TruncPoly(ring_, std::move(acc));
}

TruncPoly TruncPoly::pth_power() const {
    long long p = ring_->p();
    std::map<std::vector<int>, FqElem> acc;
    for (const auto& [m, c] : terms_) {
        std::vector<int> mp(m.size());
        long long d = 0;
        for (size_t i = 0; i < m.size(); ++i) { mp[i] = (int)(m[i] * p); d += mp[i]; }
        if (d > ring_->deg()) continue;
        acc[mp] = c.pow(p);
    }
    return TruncPoly(ring_, std::move(acc));
}

TruncPoly TruncPoly::pth_root() const {
    long long p = ring_->p();
    std::map<std::vector<int>, FqElem> acc;
    for (const auto& [m, c] : terms_) {
        std::vector<int> mr(m.size());
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] % p != 0)
                throw invalid_module_error("TruncPoly: not a p-th power (exponent not divisible)");
            mr[i] = (int)(m[i] / p);
        }
        acc[mr] = c.pth_root();
    }
    return TruncPoly(ring_, std::move(acc));
}

TruncPoly TruncPoly::truncate_degree(int d) const {
    std::map<std::vector<int>, FqElem> acc;
    for (const auto& [m, c] : terms_)
        if (total_deg(m) <= d) acc.emplace(m, c);
    return TruncPoly(ring_, std::move(acc));
}

FqElem TruncPoly::constant_term() const {
    auto it = terms_.find(std::vector<int>(ring_->nvars(), 0));
    return it == terms_.end() ? ring_->field()->zero() : it->second;
}

int TruncPoly::order() const {
    int best = -1;
    for (const auto& [m, c] : terms_) {
        int d = total_deg(m);
        if (best < 0 || d < best) best = d;
    }
    return best;
}

TruncPoly TruncPoly::inverse() const {
    FqElem c0 = constant_term();
    if (c0.is_zero()) throw parameter_error("TruncPoly: inverse of non-unit");
    // f = c0 (1 - g), v(g) >= 1: invert by geometric series
    TruncPoly g = ring_->one() - scale(c0.inverse());
    TruncPoly acc = ring_->one(), term = ring_->one();
    for (int i = 1; i <= ring_->deg(); ++i) {
        term = term * g;
        if (term.is_zero()) break;
        acc = acc + term;
    }
    return acc.scale(c0.inverse());
}

std::string TruncPoly::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
        if (!s.empty()) s += " + ";
        s += c.str();
        for (size_t i = 0; i < m.size(); ++i) {
            if (!m[i]) continue;
            s += "*" + ring_->vars()[i];
            if (m[i] > 1) s += "^" + std::to_string(m[i]);
        }
    }
    return s;
}

} // namespace muord
