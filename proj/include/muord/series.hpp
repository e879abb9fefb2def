#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "muord/fq.hpp"

namespace muord {

// F_{p^m}[[t_1..t_s]] truncated at total degree N.  Monomials above N are
// dropped on every operation, so values represent classes mod degree N+1.
class SeriesRing : public std::enable_shared_from_this<SeriesRing> {
  public:
    static std::shared_ptr<const SeriesRing> get(long long p, int m,
                                                 std::vector<std::string> vars, int deg);

    long long p() const { return fq_->p(); }
    int m() const { return fq_->m(); }
    const FqCtxPtr& field() const { return fq_; }
    const std::vector<std::string>& vars() const { return vars_; }
    int nvars() const { return (int)vars_.size(); }
    int deg() const { return deg_; }

    class TruncPoly zero() const;
    class TruncPoly one() const;
    class TruncPoly constant(const FqElem& c) const;
    class TruncPoly var(int i) const;

    SeriesRing(FqCtxPtr fq, std::vector<std::string> vars, int deg);

  private:
    FqCtxPtr fq_;
    std::vector<std::string> vars_;
    int deg_;
};

using SeriesRingPtr = std::shared_ptr<const SeriesRing>;

class TruncPoly {
  public:
    TruncPoly() = default;
    TruncPoly(SeriesRingPtr ring, std::map<std::vector<int>, FqElem> terms)
        : ring_(std::move(ring)), terms_(std::move(terms)) {}

    const SeriesRingPtr& ring() const { return ring_; }
    const std::map<std::vector<int>, FqElem>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool operator==(const TruncPoly& o) const;
    bool operator!=(const TruncPoly& o) const { return !(*this == o); }

    TruncPoly operator+(const TruncPoly& o) const;
    TruncPoly operator-(const TruncPoly& o) const;
    TruncPoly operator*(const TruncPoly& o) const;
    TruncPoly operator-() const;
    TruncPoly pow(long long e) const;

    TruncPoly scale(const FqElem& c) const;
    // coefficientwise x -> x^p together with exponent scaling: f -> f^p
    TruncPoly pth_power() const;
    // inverse of pth_power; error if some monomial exponent is not divisible by p
    TruncPoly pth_root() const;
    // discard monomials of total degree > d
    TruncPoly truncate_degree(int d) const;

    FqElem constant_term() const;
    // smallest total degree of a nonzero monomial; -1 for the zero series
    int order() const;
    bool is_unit() const { return !constant_term().is_zero(); }
    TruncPoly inverse() const; // geometric series; error on non-unit

    std::string str() const;

  private:
    void add_term(std::map<std::vector<int>, FqElem>& acc, const std::vector<int>& m,
                  const FqElem& c) const;
    void check_same(const TruncPoly& o) const;

    SeriesRingPtr ring_;
    std::map<std::vector<int>, FqElem> terms_; // exponent vector -> nonzero coeff
};

} // namespace muord
