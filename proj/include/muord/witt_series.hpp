#pragma once

#include <memory>
#include <string>
#include <vector>

#include "muord/series.hpp"
#include "muord/witt.hpp"
#include "muord/wittpoly.hpp"

namespace muord {

// Length-r_w p-typical Witt vectors of F_{p^m}[[t_1..t_s]]/(deg N), in
// genuine Witt coordinates.  Sums/products go through the universal
// structure polynomials reduced mod p.
class WittSeriesRing : public std::enable_shared_from_this<WittSeriesRing> {
  public:
    static std::shared_ptr<const WittSeriesRing> get(long long p, int m, int r_w,
                                                     std::vector<std::string> vars, int deg);

    long long p() const { return base_->p(); }
    int m() const { return base_->m(); }
    int r_w() const { return r_w_; }
    const SeriesRingPtr& base() const { return base_; }
    const WittOpTablePtr& table() const { return table_; }

    class WittSeries zero() const;
    class WittSeries one() const;
    class WittSeries from_int(long long v) const;
    class WittSeries teichmuller(const TruncPoly& f) const;
    class WittSeries make(std::vector<TruncPoly> comps) const;
    // constant embedding of W_{r}(F_{p^m}) with r >= r_w (drops precision to r_w)
    class WittSeries from_scalar(const WittScalar& x) const;

    WittSeriesRing(SeriesRingPtr base, int r_w);

  private:
    SeriesRingPtr base_;
    int r_w_;
    WittOpTablePtr table_;
};

using WittSeriesRingPtr = std::shared_ptr<const WittSeriesRing>;

class WittSeries {
  public:
    WittSeries() = default;
    WittSeries(WittSeriesRingPtr ring, std::vector<TruncPoly> comps)
        : ring_(std::move(ring)), c_(std::move(comps)) {}

    const WittSeriesRingPtr& ring() const { return ring_; }
    const std::vector<TruncPoly>& comps() const { return c_; }

    WittSeries zero() const { return ring_->zero(); }
    WittSeries one() const { return ring_->one(); }

    bool is_zero() const;
    bool operator==(const WittSeries& o) const;
    bool operator!=(const WittSeries& o) const { return !(*this == o); }

    WittSeries operator+(const WittSeries& o) const;
    WittSeries operator-(const WittSeries& o) const;
    WittSeries operator*(const WittSeries& o) const;
    WittSeries operator-() const;

    WittSeries frobenius(int t = 1) const; // componentwise p^t-th power, t >= 0
    WittSeries verschiebung() const;       // shift components right
    WittSeries mul_p() const;              // p*x = (0, x_0^p, ..., x_{r_w-2}^p)
    WittSeries mul_p_pow(int k) const;

    // exact division by p: requires first component zero and later components
    // p-th powers; result has Witt length r_w - 1.
    WittSeries divide_by_p() const;
    WittSeries divide_by_p_pow(int k) const;

    // unit test + inverse (unit <=> first component is a unit series)
    bool is_unit() const;
    WittSeries inverse() const;

    TruncPoly reduce() const; // first component: image in the base ring
    // evaluate all variables at 0: element of W_{r_w}(F_{p^m})
    WittScalar specialize_at_zero() const;

    std::string str() const;

  private:
    void check_same(const WittSeries& o) const;
    TruncPoly eval_table(const ModPoly& f, const WittSeries* other) const;

    WittSeriesRingPtr ring_;
    std::vector<TruncPoly> c_;
};

} // namespace muord
