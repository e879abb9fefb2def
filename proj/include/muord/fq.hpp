#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "muord/errors.hpp"

namespace muord {

class FqElem;

// The field F_{p^m} presented as F_p[x]/(Phi), Phi the lexicographically
// smallest monic irreducible of degree m.  Contexts are interned per (p, m)
// so elements can be compared by context pointer.
class FqCtx {
  public:
    static std::shared_ptr<const FqCtx> get(long long p, int m);

    long long p() const { return p_; }
    int m() const { return m_; }
    // Coefficients of Phi, degree m, modpoly_[m] == 1.
    const std::vector<long long>& modpoly() const { return modpoly_; }

    FqElem zero() const;
    FqElem one() const;
    FqElem gen() const;                           // class of x
    FqElem from_int(long long v) const;           // image of Z
    FqElem make(std::vector<long long> coeffs) const;

    // All p^m elements in lexicographic coefficient order (constant term
    // fastest).  Used by brute-force tests and embeddings; m is tiny here.
    std::vector<FqElem> enumerate() const;

    FqCtx(long long p, int m);

  private:
    long long p_;
    int m_;
    std::vector<long long> modpoly_;
};

using FqCtxPtr = std::shared_ptr<const FqCtx>;

class FqElem {
  public:
    FqElem() = default;
    FqElem(FqCtxPtr ctx, std::vector<long long> c) : ctx_(std::move(ctx)), c_(std::move(c)) {}

    const FqCtxPtr& ctx() const { return ctx_; }
    const std::vector<long long>& coeffs() const { return c_; }

    bool is_zero() const;
    bool operator==(const FqElem& o) const;
    bool operator!=(const FqElem& o) const { return !(*this == o); }

    FqElem operator+(const FqElem& o) const;
    FqElem operator-(const FqElem& o) const;
    FqElem operator*(const FqElem& o) const;
    FqElem operator-() const;

    FqElem inverse() const;                // error on zero
    FqElem pow(long long e) const;         // e >= 0
    FqElem frobenius() const { return pow(ctx_->p()); }
    FqElem pth_root() const;               // inverse of frobenius (field is perfect)

    std::string str() const;

  private:
    void check_same(const FqElem& o) const {
        if (!ctx_ || !o.ctx_ || ctx_->p() != o.ctx_->p() || ctx_->m() != o.ctx_->m())
            throw parameter_error("FqElem: mismatched fields");
    }

    FqCtxPtr ctx_;
    std::vector<long long> c_;
};

// Deterministic embedding F_{p^m} -> F_{p^{m2}} for m | m2: the generator is
// sent to the lexicographically smallest root of Phi_m in the larger field.
FqElem embed(const FqElem& a, const FqCtxPtr& bigger);

} // namespace muord
