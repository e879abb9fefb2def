#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "muord/witt.hpp"
#include "muord/witt_series.hpp"
#include "muord/wittpoly.hpp"

using namespace muord;

namespace {

WittScalar random_scalar(std::mt19937_64& rng, const WittRingPtr& ring) {
    std::uniform_int_distribution<long long> dist(0, ring->pr() - 1);
    std::vector<long long> c(ring->m());
    for (auto& x : c) x = dist(rng);
    return ring->make(std::move(c));
}

FqElem random_fq(std::mt19937_64& rng, const FqCtxPtr& fq) {
    std::uniform_int_distribution<long long> dist(0, fq->p() - 1);
    std::vector<long long> c(fq->m());
    for (auto& x : c) x = dist(rng);
    return fq->make(std::move(c));
}

WittSeries random_series(std::mt19937_64& rng, const WittSeriesRingPtr& ring) {
    std::vector<TruncPoly> comps;
    for (int i = 0; i < ring->r_w(); ++i) {
        std::map<std::vector<int>, FqElem> terms;
        int nterms = (int)(rng() % 4);
        for (int t = 0; t < nterms; ++t) {
            std::vector<int> mono(ring->base()->nvars(), 0);
            int d = 0;
            for (auto& e : mono) {
                e = (int)(rng() % 3);
                d += e;
            }
            if (d > ring->base()->deg()) continue;
            FqElem c = random_fq(rng, ring->base()->field());
            if (!c.is_zero()) terms[mono] = c;
        }
        comps.emplace_back(ring->base(), std::move(terms));
    }
    return ring->make(std::move(comps));
}

} // namespace

TEST_CASE("witt structure polynomials: ghost degree 0 and the frozen p=2 S_1") {
    auto t2 = WittOpTable::get(2, 3);
    // S_0 = x_0 + y_0, P_0 = x_0 y_0
    CHECK(t2->sum(0).terms.size() == 2);
    CHECK(t2->prod(0).terms.size() == 1);
    // exact S_1 for p = 2: x_1 + y_1 - x_0 y_0 (frozen from inverting the
    // ghost map w_1 = a_0^2 + 2 a_1 by hand)
    auto s1 = t2->exact_sum(1);
    REQUIRE(s1.size() == 3);
    CHECK(s1[Monomial{0, 1, 0, 0, 0, 0}] == "1"); // x_1
    CHECK(s1[Monomial{0, 0, 0, 0, 1, 0}] == "1"); // y_1
    CHECK(s1[Monomial{1, 0, 0, 1, 0, 0}] == "-1"); // -x_0 y_0
}

TEST_CASE("witt structure polynomials: length guard") {
    CHECK_THROWS_AS(WittOpTable::get(2, 6), capability_error);
}

TEST_CASE("W_r(F_q) ring axioms and Frobenius on random triples") {
    std::mt19937_64 rng(12345);
    for (auto [p, m, r] : {std::tuple<long long, int, int>{2, 2, 3},
                           {3, 2, 3},
                           {5, 1, 3},
                           {2, 4, 2},
                           {3, 3, 2}}) {
        auto ring = WittRing::get(p, m, r);
        for (int it = 0; it < 40; ++it) {
            WittScalar a = random_scalar(rng, ring), b = random_scalar(rng, ring),
                       c = random_scalar(rng, ring);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a * b == b * a);
            CHECK(a + (-a) == ring->zero());
            // sigma is a ring automorphism with sigma^m = id, fixing Z/p^r
            CHECK(a.frobenius(1) * b.frobenius(1) == (a * b).frobenius(1));
            CHECK(a.frobenius(m) == a);
            CHECK(ring->from_int(7).frobenius(1) == ring->from_int(7));
            // F o V = p
            CHECK(a.verschiebung().frobenius(1) == a * ring->from_int(p));
        }
    }
}

TEST_CASE("Teichmuller is multiplicative and sigma acts as [x^p]") {
    std::mt19937_64 rng(99);
    auto ring = WittRing::get(2, 2, 3); // F_4, r=3
    auto fq = ring->residue_field();
    for (const FqElem& a : fq->enumerate())
        for (const FqElem& b : fq->enumerate()) {
            CHECK(ring->teichmuller(a) * ring->teichmuller(b) == ring->teichmuller(a * b));
            CHECK(ring->teichmuller(a).frobenius(1) == ring->teichmuller(a.frobenius()));
        }
    // teichmuller(1) * x = x
    for (int it = 0; it < 10; ++it) {
        WittScalar x = random_scalar(rng, ring);
        CHECK(ring->teichmuller(fq->one()) * x == x);
    }
}

TEST_CASE("Teichmuller representatives are (q-1)-st roots of unity") {
    for (auto [p, m] : {std::pair<long long, int>{2, 2}, {3, 2}, {5, 1}}) {
        auto ring = WittRing::get(p, m, 4);
        long long q = 1;
        for (int i = 0; i < m; ++i) q *= p;
        for (const FqElem& a : ring->residue_field()->enumerate()) {
            if (a.is_zero()) continue;
            WittScalar t = ring->teichmuller(a), acc = ring->one();
            for (long long e = 0; e < q - 1; ++e) acc = acc * t;
            CHECK(acc == ring->one());
        }
    }
}

TEST_CASE("valuation: v(p [a]) = 1 and v(0) is r with the saturated flag") {
    auto ring = WittRing::get(3, 2, 4);
    auto fq = ring->residue_field();
    for (const FqElem& a : fq->enumerate()) {
        if (a.is_zero()) continue;
        WittScalar x = ring->from_int(3) * ring->teichmuller(a);
        ValExp v = x.valuation();
        CHECK(v.v == 1);
        CHECK_FALSE(v.saturated);
    }
    ValExp z = ring->zero().valuation();
    CHECK(z.v == 4);
    CHECK(z.saturated);
}

TEST_CASE("Witt coordinates round-trip and cross-representation homomorphism") {
    std::mt19937_64 rng(2024);
    for (auto [p, m] : {std::pair<long long, int>{2, 2}, {3, 1}, {5, 2}}) {
        int r = 3;
        auto ring = WittRing::get(p, m, r);
        auto sring = WittSeriesRing::get(p, m, r, {}, 4);
        for (int it = 0; it < 25; ++it) {
            WittScalar a = random_scalar(rng, ring), b = random_scalar(rng, ring);
            CHECK(ring->from_witt_coordinates(ring->witt_coordinates(a)) == a);
            // the coordinate embedding into constant Witt series is a ring hom
            WittSeries as = sring->from_scalar(a), bs = sring->from_scalar(b);
            CHECK(as + bs == sring->from_scalar(a + b));
            CHECK(as * bs == sring->from_scalar(a * b));
        }
    }
}

TEST_CASE("unit inversion in W_r(F_q)") {
    std::mt19937_64 rng(7);
    auto ring = WittRing::get(5, 2, 4);
    int found = 0;
    while (found < 20) {
        WittScalar a = random_scalar(rng, ring);
        if (!a.is_unit()) continue;
        ++found;
        CHECK(a * a.inverse() == ring->one());
    }
}

TEST_CASE("witt series: ring axioms at r_w <= 3") {
    std::mt19937_64 rng(5150);
    for (auto [p, rw] : {std::pair<long long, int>{2, 3}, {3, 2}, {5, 2}}) {
        auto ring = WittSeriesRing::get(p, 2, rw, {"t", "u"}, 4);
        for (int it = 0; it < 12; ++it) {
            WittSeries a = random_series(rng, ring), b = random_series(rng, ring),
                       c = random_series(rng, ring);
            CHECK((a + b) + c == a + (b + c));
            CHECK(a + b == b + a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + (-a) == ring->zero());
            CHECK(a * ring->one() == a);
        }
    }
}

TEST_CASE("witt series: F, V, p and Teichmuller functoriality") {
    std::mt19937_64 rng(31337);
    auto ring = WittSeriesRing::get(2, 1, 3, {"t", "u", "v"}, 6);
    auto base = ring->base();
    TruncPoly t = base->var(0), u = base->var(1), v = base->var(2);

    // frobenius(teichmuller(t)) = teichmuller(t^p)
    CHECK(ring->teichmuller(t).frobenius(1) == ring->teichmuller(t.pth_power()));

    // p(a_0, a_1, ...) = (0, a_0^p, ...), i.e. multiplication by [p] agrees
    WittSeries two = ring->from_int(2);
    for (int it = 0; it < 10; ++it) {
        WittSeries a = random_series(rng, ring);
        CHECK(two * a == a.mul_p());
        CHECK(a.verschiebung().frobenius(1) == a.mul_p()); // F V = p
    }

    // ([t] + [u]) [v] = [tv] + [uv], expanded through the structure polynomials
    WittSeries lhs = (ring->teichmuller(t) + ring->teichmuller(u)) * ring->teichmuller(v);
    WittSeries rhs = ring->teichmuller(t * v) + ring->teichmuller(u * v);
    CHECK(lhs == rhs);
}

TEST_CASE("witt series: frobenius is a strong Frobenius lift") {
    // frobenius(a) - a^p lies in p W
    std::mt19937_64 rng(90210);
    for (long long p : {2LL, 3LL}) {
        auto ring = WittSeriesRing::get(p, 2, 3, {"t", "u"}, 4);
        for (int it = 0; it < 8; ++it) {
            WittSeries a = random_series(rng, ring);
            WittSeries ap = ring->one();
            for (long long e = 0; e < p; ++e) ap = ap * a;
            WittSeries diff = a.frobenius(1) - ap;
            if (diff.is_zero()) continue;
            CHECK(diff.comps()[0].is_zero());
            CHECK_NOTHROW(diff.divide_by_p());
        }
    }
}

TEST_CASE("witt series divide_by_p") {
    std::mt19937_64 rng(440);
    auto ring = WittSeriesRing::get(3, 1, 3, {"t"}, 9);
    auto base = ring->base();

    // divide_by_p(p x) = x truncated to deg/p componentwise
    for (int it = 0; it < 15; ++it) {
        WittSeries x = random_series(rng, ring);
        WittSeries q = x.mul_p().divide_by_p();
        REQUIRE(q.ring()->r_w() == 2);
        for (int i = 0; i < 2; ++i)
            CHECK(q.comps()[i] == x.comps()[i].truncate_degree(ring->base()->deg() / 3));
    }

    // (0, t^p) -> (t, ...)
    {
        std::vector<TruncPoly> comps{base->zero(), base->var(0).pow(3), base->zero()};
        WittSeries a = ring->make(comps);
        WittSeries b = a.divide_by_p();
        CHECK(b.comps()[0] == base->var(0));
        CHECK(b.comps()[1].is_zero());
    }

    // unit input is not divisible
    CHECK_THROWS_AS(ring->one().divide_by_p(), invalid_module_error);
}

TEST_CASE("witt series inversion") {
    auto ring = WittSeriesRing::get(2, 2, 3, {"t"}, 5);
    auto base = ring->base();
    WittSeries u = ring->one() + ring->teichmuller(base->var(0));
    WittSeries v = u.inverse();
    CHECK(u * v == ring->one());
    CHECK_THROWS_AS(ring->teichmuller(base->var(0)).inverse(), parameter_error);
}

TEST_CASE("parameter mismatches are rejected") {
    auto r1 = WittRing::get(2, 2, 3);
    auto r2 = WittRing::get(2, 2, 2);
    auto r3 = WittRing::get(3, 2, 3);
    CHECK_THROWS_AS(r1->one() + r2->one(), parameter_error);
    CHECK_THROWS_AS(r1->one() * r3->one(), parameter_error);
}
