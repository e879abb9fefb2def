#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "muord/errors.hpp"

namespace muord {

// Sparse multivariate monomial: exponent vector over the working variables.
// For the universal polynomials the variables are x_0..x_{n-1}, y_0..y_{n-1}
// (y-block absent for the one-argument negation polynomials).
using Monomial = std::vector<int>;

// A universal Witt structure polynomial with coefficients reduced mod p.
// Coefficients are kept in [0, p); evaluation happens in characteristic p,
// where only the mod-p reduction of the integral polynomial matters.
struct ModPoly {
    std::map<Monomial, long long> terms;
};

// Sum/product/negation polynomial tables for p-typical Witt vectors of
// length r_w.  Generated once per (p, r_w) by inverting the ghost map over
// exact integers (GMP); integrality is asserted during generation.
class WittOpTable {
  public:
    // r_w <= 5 is a hard complexity guard.
    static std::shared_ptr<const WittOpTable> get(long long p, int r_w);

    long long p() const { return p_; }
    int r_w() const { return r_w_; }

    // S[n], P[n] in variables x_0..x_n, y_0..y_n; I[n] in x_0..x_n.
    const ModPoly& sum(int n) const { return S_.at(n); }
    const ModPoly& prod(int n) const { return P_.at(n); }
    const ModPoly& neg(int n) const { return I_.at(n); }

    // Exact integer coefficients (before reduction mod p), for tests that
    // freeze ghost-inversion results.  Keyed by monomial; values are decimal
    // strings to keep GMP out of the public interface.
    std::map<Monomial, std::string> exact_sum(int n) const;

    WittOpTable(long long p, int r_w);

  private:
    long long p_;
    int r_w_;
    std::vector<ModPoly> S_, P_, I_;
    std::vector<std::map<Monomial, std::string>> exactS_;
};

using WittOpTablePtr = std::shared_ptr<const WittOpTable>;

} // namespace muord
