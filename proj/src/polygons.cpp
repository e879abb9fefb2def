#include "muord/polygons.hpp"

#include <algorithm>

namespace muord {

RatPolygon::RatPolygon(std::vector<Rational> slopes, Orientation o)
    : slopes_(std::move(slopes)), or_(o) {
    if (or_ == Orientation::ConvexAscending)
        std::sort(slopes_.begin(), slopes_.end());
    else
        std::sort(slopes_.begin(), slopes_.end(), [](const Rational& a, const Rational& b) {
            return b < a;
        });
}

Rational RatPolygon::value_at(int i) const {
    if (i < 0 || i > width()) throw parameter_error("RatPolygon: abscissa out of range");
    Rational v(0);
    for (int j = 0; j < i; ++j) v = v + slopes_[j];
    return v;
}

std::vector<int> RatPolygon::break_abscissas() const {
    std::vector<int> out;
    for (int i = 1; i < width(); ++i)
        if (slopes_[i - 1] != slopes_[i]) out.push_back(i);
    return out;
}

RatPolygon RatPolygon::reverse() const {
    std::vector<Rational> s(slopes_.rbegin(), slopes_.rend());
    return RatPolygon(std::move(s), or_ == Orientation::ConvexAscending
                                        ? Orientation::ConcaveDescending
                                        : Orientation::ConvexAscending);
}

RatPolygon hodge_diamond(const ElemDivisors& divs, int pad_to) {
    if ((int)divs.exponents.size() > pad_to)
        throw parameter_error("hodge_diamond: more divisors than the target width");
    std::vector<Rational> slopes;
    slopes.reserve(pad_to);
    for (const ValExp& e : divs.exponents) {
        if (e.saturated)
            throw precision_error("hodge_diamond: elementary divisor not determined at precision r");
        slopes.emplace_back(e.v);
    }
    while ((int)slopes.size() < pad_to) slopes.emplace_back(0);
    return RatPolygon(std::move(slopes), Orientation::ConcaveDescending);
}

RatPolygon concat(const RatPolygon& a, const RatPolygon& b) {
    if (a.orientation() != b.orientation())
        throw parameter_error("concat: orientation mismatch");
    if (a.width() == 0) return b;
    if (b.width() == 0) return a;
    std::vector<Rational> s = a.slopes();
    s.insert(s.end(), b.slopes().begin(), b.slopes().end());
    return RatPolygon(std::move(s), a.orientation());
}

RatPolygon average(const std::vector<RatPolygon>& ps) {
    if (ps.empty()) throw parameter_error("average: empty list");
    int w = ps[0].width();
    for (const auto& p : ps) {
        if (p.width() != w) throw parameter_error("average: width mismatch");
        if (p.orientation() != ps[0].orientation())
            throw parameter_error("average: orientation mismatch");
    }
    // pointwise average of convex functions with integer breaks: slope lists
    // are sorted the same way, so the average of the sorted lists is again
    // sorted and is the slope list of the pointwise average
    std::vector<Rational> s(w, Rational(0));
    for (const auto& p : ps)
        for (int i = 0; i < w; ++i) s[i] = s[i] + p.slopes()[i];
    Rational f((long long)ps.size());
    for (auto& x : s) x = x / f;
    return RatPolygon(std::move(s), ps[0].orientation());
}

Compare compare(const RatPolygon& P, const RatPolygon& Q) {
    if (P.width() != Q.width()) throw parameter_error("compare: width mismatch");
    if (P.value_at(P.width()) != Q.value_at(Q.width()) || P.value_at(0) != Q.value_at(0))
        throw parameter_error("compare: endpoint mismatch");
    bool above = false, below = false;
    Rational vp(0), vq(0);
    for (int i = 1; i < P.width(); ++i) {
        vp = vp + P.slopes()[i - 1];
        vq = vq + Q.slopes()[i - 1];
        if (vp > vq) above = true;
        if (vp < vq) below = true;
    }
    if (above && below) return Compare::Crossing;
    if (above) return Compare::Above;
    if (below) return Compare::Below;
    return Compare::Equal;
}

std::vector<int> contact_points(const RatPolygon& P, const RatPolygon& Q) {
    if (P.width() != Q.width()) throw parameter_error("contact_points: width mismatch");
    std::vector<int> out;
    Rational vp(0), vq(0);
    if (P.value_at(0) == Q.value_at(0)) out.push_back(0);
    for (int i = 1; i <= P.width(); ++i) {
        vp = vp + P.slopes()[i - 1];
        vq = vq + Q.slopes()[i - 1];
        if (vp == vq) out.push_back(i);
    }
    return out;
}

std::vector<Rational> newton_slopes_from_charpoly(const std::vector<WittScalar>& coeffs,
                                                  int scale_den) {
    int n = (int)coeffs.size() - 1;
    if (n < 1) throw parameter_error("newton_slopes_from_charpoly: empty polynomial");
    std::vector<ValExp> vals(n + 1);
    for (int i = 0; i <= n; ++i) vals[i] = coeffs[i].valuation();
    if (vals[n].v != 0)
        throw parameter_error("newton_slopes_from_charpoly: polynomial is not monic-unit");

    // lower convex hull of (i, v_i), saturated points entered at v = r
    std::vector<int> hull; // indices of hull vertices, increasing abscissa
    for (int i = 0; i <= n; ++i) {
        while (hull.size() >= 2) {
            int a = hull[hull.size() - 2], b = hull[hull.size() - 1];
            // keep b only if it is strictly below segment a--i
            long long lhs = (long long)(vals[b].v - vals[a].v) * (i - a);
            long long rhs = (long long)(vals[i].v - vals[a].v) * (b - a);
            if (lhs >= rhs) hull.pop_back();
            else break;
        }
        hull.push_back(i);
    }
    // hull vertices whose coefficient is saturated leave the slopes ambiguous
    for (int idx : hull)
        if (vals[idx].saturated)
            throw precision_error("newton_slopes_from_charpoly: hull vertex at saturated coefficient");

    // root valuations: on hull segment (a, b) there are b-a roots of
    // valuation (v_a - v_b)/(b - a); collect descending then flip
    std::vector<Rational> slopes;
    slopes.reserve(n);
    for (size_t k = 0; k + 1 < hull.size(); ++k) {
        int a = hull[k], b = hull[k + 1];
        Rational s(vals[a].v - vals[b].v, (long long)(b - a) * scale_den);
        for (int t = 0; t < b - a; ++t) slopes.push_back(s);
    }
    std::sort(slopes.begin(), slopes.end());
    return slopes;
}

} // namespace muord
