#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "muord/fq.hpp"

namespace muord {

class WittScalar;

// Valuation of a truncated Witt scalar.  v(0) is reported as r together with
// the saturated flag, never as infinity; polygon code branches on the flag.
struct ValExp {
    int v = 0;
    bool saturated = false; // true means "v >= r", the true value is undetermined

    bool operator==(const ValExp& o) const { return v == o.v && saturated == o.saturated; }
};

// W_r(F_{p^m}) in the unramified-extension representation:
//   (Z/p^r)[x] / (Phi),  Phi the trivial lift of the FqCtx modulus.
// The Frobenius lift sigma is Hensel-lifted once and cached as an m x m
// matrix over Z/p^r; sigma^m = id, sigma == x -> x^p mod p, sigma fixes Z/p^r.
class WittRing : public std::enable_shared_from_this<WittRing> {
  public:
    static std::shared_ptr<const WittRing> get(long long p, int m, int r);

    long long p() const { return p_; }
    int m() const { return m_; }
    int r() const { return r_; }
    long long pr() const { return pr_; } // p^r
    const FqCtxPtr& residue_field() const { return fq_; }
    // trivial lift of the residue modulus to Z/p^r
    const std::vector<long long>& modpoly() const { return modpoly_; }

    WittScalar zero() const;
    WittScalar one() const;
    WittScalar from_int(long long v) const;
    WittScalar make(std::vector<long long> coeffs) const;
    WittScalar p_power(int k) const; // p^k as a ring element

    WittScalar teichmuller(const FqElem& a) const;
    // x = sum_i V^i [a_i]; inverse of from_witt_coordinates.
    std::vector<FqElem> witt_coordinates(const WittScalar& x) const;
    WittScalar from_witt_coordinates(const std::vector<FqElem>& coords) const;

    // sigma^t as an m x m matrix acting on coefficient vectors, t in [0, m)
    const std::vector<std::vector<long long>>& sigma_matrix(int t) const;

    WittRing(long long p, int m, int r);

  private:
    long long p_;
    int m_, r_;
    long long pr_;
    FqCtxPtr fq_;
    std::vector<long long> modpoly_;                          // over Z/p^r, trivial lift
    std::vector<std::vector<std::vector<long long>>> sigma_;  // [t][row][col]
    friend class WittScalar;
};

using WittRingPtr = std::shared_ptr<const WittRing>;

// Element of W_r(F_{p^m}); immutable value type.
class WittScalar {
  public:
    WittScalar() = default;
    WittScalar(WittRingPtr ring, std::vector<long long> c)
        : ring_(std::move(ring)), c_(std::move(c)) {}

    const WittRingPtr& ring() const { return ring_; }
    const std::vector<long long>& coeffs() const { return c_; }

    WittScalar zero() const { return ring_->zero(); }
    WittScalar one() const { return ring_->one(); }

    bool is_zero() const;
    bool operator==(const WittScalar& o) const;
    bool operator!=(const WittScalar& o) const { return !(*this == o); }

    WittScalar operator+(const WittScalar& o) const;
    WittScalar operator-(const WittScalar& o) const;
    WittScalar operator*(const WittScalar& o) const;
    WittScalar operator-() const;

    WittScalar frobenius(int t = 1) const; // sigma^t, any integer t (mod m)
    WittScalar verschiebung() const;       // p * sigma^{-1}
    ValExp valuation() const;
    bool is_unit() const { return valuation().v == 0 && !valuation().saturated; }
    WittScalar inverse() const;            // error unless unit

    FqElem residue() const;                // reduction mod p
    WittScalar reduce(int s) const;        // image in W_s, s <= r
    // exact division by p^k; error unless v(x) >= k.  Result lives in W_{r-k}.
    WittScalar divide_by_p(int k) const;
    // lift to W_{r2}, r2 >= r (coefficientwise; NOT canonical beyond p^r)
    WittScalar lift(int r2) const;

    std::string str() const;

  private:
    void check_same(const WittScalar& o) const;

    WittRingPtr ring_;
    std::vector<long long> c_; // length m, entries in [0, p^r)
};

// Coefficientwise embedding W_r(F_{p^m}) -> W_r(F_{p^{m2}}), m | m2,
// compatible with the residue-field embedding and with sigma^{m}.
WittScalar embed(const WittScalar& a, const WittRingPtr& bigger);

} // namespace muord
