#pragma once

#include <vector>

#include "muord/rational.hpp"
#include "muord/semilinear.hpp"

namespace muord {

enum class Orientation { ConvexAscending, ConcaveDescending };

// Convex (or concave) piecewise-linear function on [0, h], stored as the
// sorted multiset of its h slopes.  Evaluation at an integer i is the sum of
// the first i slopes; all arithmetic is exact.
class RatPolygon {
  public:
    RatPolygon() = default;
    RatPolygon(std::vector<Rational> slopes, Orientation o);

    int width() const { return (int)slopes_.size(); }
    Orientation orientation() const { return or_; }
    const std::vector<Rational>& slopes() const { return slopes_; }

    Rational value_at(int i) const; // 0 <= i <= width
    Rational endpoint() const { return value_at(width()); }
    // interior integer abscissas where the slope changes
    std::vector<int> break_abscissas() const;
    RatPolygon reverse() const; // flip orientation, reverse slope order

    bool operator==(const RatPolygon& o) const {
        return or_ == o.or_ && slopes_ == o.slopes_;
    }
    bool operator!=(const RatPolygon& o) const { return !(*this == o); }

  private:
    std::vector<Rational> slopes_; // ascending for convex, descending for concave
    Orientation or_ = Orientation::ConvexAscending;
};

// Hdg-diamond of a torsion module with the given elementary divisors:
// concave, slopes = exponents descending, zero-padded to width h; reverse()
// gives the Hodge polygon on [0, h] without losing the zero slopes.
// Saturated exponents mean the divisor is undetermined: precision error.
RatPolygon hodge_diamond(const ElemDivisors& divs, int pad_to);

RatPolygon concat(const RatPolygon& a, const RatPolygon& b);
RatPolygon average(const std::vector<RatPolygon>& ps);

enum class Compare { Above, Equal, Below, Crossing };

// exact comparison of two polygons with equal widths and endpoints;
// "Above" means P >= Q everywhere with strict inequality somewhere
Compare compare(const RatPolygon& P, const RatPolygon& Q);
std::vector<int> contact_points(const RatPolygon& P, const RatPolygon& Q);

// Lower convex hull of the coefficient valuations of a monic polynomial
// c_0..c_n (c_n a unit): returns the n root valuations, ascending.  scale
// divides the valuations (Dieudonne-Manin slope normalization).  Saturated
// coefficients participate at valuation r; if one of them ends up on the
// hull the slopes are not determined at this precision.
std::vector<Rational> newton_slopes_from_charpoly(const std::vector<WittScalar>& coeffs,
                                                  int scale_den);

} // namespace muord
