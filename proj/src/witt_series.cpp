#include "muord/witt_series.hpp"

#include <map>
#include <mutex>

namespace muord {

WittSeriesRing::WittSeriesRing(SeriesRingPtr base, int r_w) : base_(std::move(base)), r_w_(r_w) {
    table_ = WittOpTable::get(base_->p(), r_w);
}

std::shared_ptr<const WittSeriesRing> WittSeriesRing::get(long long p, int m, int r_w,
                                                          std::vector<std::string> vars,
                                                          int deg) {
    static std::mutex mu;
    static std::map<std::tuple<long long, int, int, std::vector<std::string>, int>,
                    std::shared_ptr<const WittSeriesRing>>
        cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(p, m, r_w, vars, deg);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto ring =
        std::make_shared<const WittSeriesRing>(SeriesRing::get(p, m, vars, deg), r_w);
    cache[key] = ring;
    return ring;
}

WittSeries WittSeriesRing::zero() const {
    return WittSeries(shared_from_this(), std::vector<TruncPoly>(r_w_, base_->zero()));
}

WittSeries WittSeriesRing::one() const { return teichmuller(base_->one()); }

WittSeries WittSeriesRing::from_int(long long v) const {
    // go through W_{r_w}(F_{p^m})
    auto w = WittRing::get(p(), m(), r_w_);
    return from_scalar(w->from_int(v));
}

WittSeries WittSeriesRing::teichmuller(const TruncPoly& f) const {
    std::vector<TruncPoly> comps(r_w_, base_->zero());
    comps[0] = f;
    return WittSeries(shared_from_this(), std::move(comps));
}

WittSeries WittSeriesRing::make(std::vector<TruncPoly> comps) const {
    if ((int)comps.size() != r_w_) throw parameter_error("WittSeriesRing::make: wrong length");
    return WittSeries(shared_from_this(), std::move(comps));
}

WittSeries WittSeriesRing::from_scalar(const WittScalar& x) const {
    const auto& wr = x.ring();
    if (wr->p() != p() || wr->m() != m() || wr->r() < r_w_)
        throw parameter_error("from_scalar: incompatible Witt scalar");
    std::vector<FqElem> coords = wr->witt_coordinates(x);
    std::vector<TruncPoly> comps;
    comps.reserve(r_w_);
    for (int i = 0; i < r_w_; ++i) comps.push_back(base_->constant(coords[i]));
    return WittSeries(shared_from_this(), std::move(comps));
}

void WittSeries::check_same(const WittSeries& o) const {
    if (!ring_ || !o.ring_ || ring_->p() != o.ring_->p() || ring_->m() != o.ring_->m() ||
        ring_->r_w() != o.ring_->r_w() || ring_->base()->vars() != o.ring_->base()->vars() ||
        ring_->base()->deg() != o.ring_->base()->deg())
        throw parameter_error("WittSeries: mismatched rings (p, m, r_w, vars, deg)");
}

bool WittSeries::is_zero() const {
    for (const auto& c : c_)
        if (!c.is_zero()) return false;
    return true;
}

bool WittSeries::operator==(const WittSeries& o) const {
    check_same(o);
    return c_ == o.c_;
}

TruncPoly WittSeries::eval_table(const ModPoly& f, const WittSeries* other) const {
    const auto& base = ring_->base();
    int rw = ring_->r_w();
    TruncPoly acc = base->zero();
    for (const auto& [mono, coeff] : f.terms) {
        TruncPoly term = base->constant(base->field()->from_int(coeff));
        bool dead = false;
        for (size_t v = 0; v < mono.size(); ++v) {
            if (!mono[v]) continue;
            const TruncPoly& arg = (v < (size_t)rw) ? c_[v] : other->c_[v - rw];
            if (arg.is_zero()) { dead = true; break; }
            term = term * arg.pow(mono[v]);
            if (term.is_zero()) { dead = true; break; }
        }
        if (!dead) acc = acc + term;
    }
    return acc;
}

WittSeries WittSeries::operator+(const WittSeries& o) const {
    check_same(o);
    std::vector<TruncPoly> comps;
    comps.reserve(c_.size());
    for (int n = 0; n < ring_->r_w(); ++n) comps.push_back(eval_table(ring_->table()->sum(n), &o));
    return WittSeries(ring_, std::move(comps));
}

WittSeries WittSeries::operator*(const WittSeries& o) const {
    check_same(o);
    std::vector<TruncPoly> comps;
    comps.reserve(c_.size());
    for (int n = 0; n < ring_->r_w(); ++n)
        comps.push_back(eval_table(ring_->table()->prod(n), &o));
    return WittSeries(ring_, std::move(comps));
}

WittSeries WittSeries::operator-() const {
    std::vector<TruncPoly> comps;
    comps.reserve(c_.size());
    for (int n = 0; n < ring_->r_w(); ++n)
        comps.push_back(eval_table(ring_->table()->neg(n), nullptr));
    return WittSeries(ring_, std::move(comps));
}

WittSeries WittSeries::operator-(const WittSeries& o) const { return *this + (-o); }

WittSeries WittSeries::frobenius(int t) const {
    if (t < 0) throw parameter_error("WittSeries::frobenius: negative twist");
    std::vector<TruncPoly> comps = c_;
    for (int k = 0; k < t; ++k)
        for (auto& c : comps) c = c.pth_power();
    return WittSeries(ring_, std::move(comps));
}

WittSeries WittSeries::verschiebung() const {
    std::vector<TruncPoly> comps(c_.size(), ring_->base()->zero());
    for (size_t i = 0; i + 1 < c_.size(); ++i) comps[i + 1] = c_[i];
    return WittSeries(ring_, std::move(comps));
}

WittSeries WittSeries::mul_p() const {
    // p = V F in characteristic p
    std::vector<TruncPoly> comps(c_.size(), ring_->base()->zero());
    for (size_t i = 0; i + 1 < c_.size(); ++i) comps[i + 1] = c_[i].pth_power();
    return WittSeries(ring_, std::move(comps));
}

WittSeries WittSeries::mul_p_pow(int k) const {
    WittSeries r = *this;
    for (int i = 0; i < k; ++i) r = r.mul_p();
    return r;
}

WittSeries WittSeries::divide_by_p() const {
    if (ring_->r_w() < 2) throw precision_error("divide_by_p: Witt length exhausted");
    if (!c_[0].is_zero())
        throw invalid_module_error("WittSeries: not divisible by p (first component nonzero)");
    auto target = WittSeriesRing::get(ring_->p(), ring_->m(), ring_->r_w() - 1,
                                      ring_->base()->vars(), ring_->base()->deg());
    std::vector<TruncPoly> comps;
    comps.reserve(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) comps.push_back(c_[i].pth_root());
    return WittSeries(target, std::move(comps));
}

WittSeries WittSeries::divide_by_p_pow(int k) const {
    WittSeries r = *this;
    for (int i = 0; i < k; ++i) r = r.divide_by_p();
    return r;
}

bool WittSeries::is_unit() const { return c_[0].is_unit(); }

WittSeries WittSeries::inverse() const {
    if (!is_unit()) throw parameter_error("WittSeries: inverse of non-unit");
    WittSeries y = ring_->teichmuller(c_[0].inverse());
    // Newton: error term 1 - a*y lies in (V) + (t); both are nilpotent here
    for (int it = 0; it < ring_->r_w() + 6; ++it) {
        WittSeries e = ring_->one() - (*this) * y;
        if (e.is_zero()) break;
        y = y + y * e;
    }
    if (!(((*this) * y) == ring_->one()))
        throw parameter_error("WittSeries: inversion did not converge");
    return y;
}

TruncPoly WittSeries::reduce() const { return c_[0]; }

WittScalar WittSeries::specialize_at_zero() const {
    auto w = WittRing::get(ring_->p(), ring_->m(), ring_->r_w());
    std::vector<FqElem> coords;
    coords.reserve(c_.size());
    for (const auto& c : c_) coords.push_back(c.constant_term());
    return w->from_witt_coordinates(coords);
}

std::string WittSeries::str() const {
    std::string s = "W(";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) s += "; ";
        s += c_[i].str();
    }
    return s + ")";
}

} // namespace muord
