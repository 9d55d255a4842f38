#include <doctest.h>

#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace qeta;
using testing::R;
using testing::dense;
using testing::poly;

TEST_CASE("telescoping product with a truncated geometric series")
{
    std::vector<QSeries::Term> terms;
    for (int k = 0; k < 100; ++k) {
        terms.push_back({k, Rational(1)});
    }
    const QSeries geo = QSeries::from_terms(1, 100, terms);
    const QSeries prod = poly({{0, 1}, {1, -1}}) * geo;
    CHECK(prod == QSeries::constant(1) + QSeries::zero(R(100)));
    CHECK(*prod.truncation() == 100);
}

TEST_CASE("addition unifies grids")
{
    const QSeries a = QSeries::monomial(1, R(1, 2)) + QSeries::monomial(1, R(1)) + QSeries::zero(R(2));
    const QSeries b = -QSeries::monomial(1, R(1, 2)) + QSeries::zero(R(2));
    const QSeries sum = a + b;
    CHECK(sum == QSeries::monomial(1, R(1)) + QSeries::zero(R(2)));
    CHECK(sum.normalized().grid() == 1);
    CHECK(a.grid() == 2);
}

TEST_CASE("multiplication truncation follows the valuations")
{
    // (q^-1 + O(q^5)) * (q^2 + O(q^4)): min(5 + 2, 4 - 1) = 3
    const QSeries a = poly({{-1, 1}}, 5);
    const QSeries b = poly({{2, 1}}, 4);
    const QSeries p = a * b;
    CHECK(*p.truncation() == 3);
    CHECK(p.coeff(R(1)) == 1);
    CHECK_THROWS_AS(p.coeff(R(3)), SeriesError);
}

TEST_CASE("product of two zero-to-truncation series is zero")
{
    const QSeries p = QSeries::zero(R(3)) * QSeries::zero(R(5));
    CHECK(p.is_zero());
    CHECK(p.truncation().has_value());
}

TEST_CASE("square of (q;q) matches a naive convolution through q^100")
{
    const QSeries e = qpochhammer(R(1), R(1), R(101));
    const oracle::Dense naive = oracle::pochhammer(1, 1, 101);
    CHECK(dense(e * e, 101) == oracle::convolve(naive, naive));
}

TEST_CASE("invert")
{
    SUBCASE("geometric series")
    {
        const QSeries inv = invert(poly({{0, 1}, {1, -1}}, 40));
        for (int k = 0; k < 40; ++k) {
            CHECK(inv.coeff(R(k)) == 1);
        }
    }
    SUBCASE("valuation shift")
    {
        const QSeries inv = invert(poly({{-1, 1}, {0, -1}}, 40));
        CHECK(*inv.valuation() == 1);
        CHECK(inv.coeff(R(0)) == 0);
        for (int k = 1; k < 40; ++k) {
            CHECK(inv.coeff(R(k)) == 1);
        }
    }
    SUBCASE("partition numbers from (q;q)")
    {
        const QSeries inv = invert(qpochhammer(R(1), R(1), R(60)));
        const auto p = oracle::partitions(60);
        for (int k = 0; k < 60; ++k) {
            CHECK(inv.coeff(R(k)) == p[k]);
        }
        CHECK(inv.coeff(R(7)) == 15);
    }
    SUBCASE("non-invertible input")
    {
        CHECK_THROWS_AS(invert(QSeries::zero(R(4))), SeriesError);
        CHECK_THROWS_AS(invert(poly({{0, 1}, {1, -1}})), SeriesError);
    }
    SUBCASE("propagated truncation")
    {
        // valuation -2, exact below q^5: the inverse is exact below q^9
        const QSeries a = poly({{-2, 3}, {0, 1}, {4, -1}}, 5);
        const QSeries inv = invert(a);
        CHECK(*inv.truncation() == 9);
        const QSeries id = a * inv;
        CHECK(*id.truncation() == 7);
        CHECK(id == QSeries::constant(1) + QSeries::zero(R(7)));
    }
}

TEST_CASE("int_pow")
{
    CHECK(int_pow(poly({{0, 3}, {1, 1}}), 0) == QSeries::constant(1));
    CHECK(int_pow(poly({{0, 1}, {1, 1}}), 2) == poly({{0, 1}, {1, 2}, {2, 1}}));

    // psi(q) = (q^2;q^2)^2 / (q;q)
    const Rational t(201);
    const QSeries psi = int_pow(qpochhammer(R(2), R(2), t), 2) * invert(qpochhammer(R(1), R(1), t));
    CHECK(int_pow(psi, 2) == psi * psi);
    CHECK(int_pow(psi, -3) == invert(psi * psi * psi));
}

TEST_CASE("sqrt")
{
    CHECK(qeta::sqrt(QSeries::constant(1)) == QSeries::constant(1));
    CHECK(qeta::sqrt(poly({{2, 1}, {3, 2}, {4, 1}})) == poly({{1, 1}, {2, 1}}));

    const QSeries f = qpochhammer(R(1), R(1), R(150));
    CHECK(qeta::sqrt(f * f) == f);

    SUBCASE("odd valuation doubles the grid")
    {
        const QSeries r = qeta::sqrt(poly({{1, 4}, {2, 4}}, 20));
        CHECK(r.grid() == 2);
        CHECK(r.leading() == std::pair<Rational, Rational>(R(1, 2), R(2)));
        CHECK(r * r == poly({{1, 4}, {2, 4}}, 20));
    }
    SUBCASE("non-square leading term")
    {
        CHECK_THROWS_WITH_AS(qeta::sqrt(poly({{0, 2}, {1, 1}}, 10)), doctest::Contains("non-square"), SeriesError);
        CHECK_THROWS_AS(qeta::sqrt(poly({{0, 1}, {1, 1}})), SeriesError);
    }
}

TEST_CASE("inspection")
{
    const QSeries eta = eta_series(1, R(10));
    CHECK(eta.leading() == std::pair<Rational, Rational>(R(1, 24), R(1)));
    CHECK(lambert_sigma(1, R(10)).coeff(R(4)) == 7);
    CHECK_THROWS_WITH_AS(eta.coeff(R(10)), doctest::Contains("beyond truncation"), SeriesError);

    const QSeries f = poly({{-1, 2}, {3, -5}}, 7);
    CHECK(f.regrid(6).normalized() == f);
    CHECK(f.regrid(6).terms().size() == f.terms().size());
    CHECK(f.regrid(6).coeff(R(3)) == -5);
}

TEST_CASE("q-Pochhammer symbols")
{
    CHECK(qpochhammer(R(1), R(1), R(8)) == poly({{0, 1}, {1, -1}, {2, -1}, {5, 1}, {7, 1}}, 8));
    CHECK(dense(qpochhammer(R(1), R(1), R(8)), 8) == oracle::pochhammer(1, 1, 8));
    CHECK(qpochhammer(R(2), R(2), R(80)) == qpochhammer(R(1), R(1), R(40)).substitute(2));
    CHECK(qpochhammer(R(1), R(2), R(101)) * qpochhammer(R(2), R(2), R(101)) == qpochhammer(R(1), R(1), R(101)));
    CHECK(dense(qpochhammer(R(3), R(7), R(90)), 90) == oracle::pochhammer(3, 7, 90));
    CHECK_THROWS_AS(qpochhammer(R(0), R(1), R(10)), SeriesError);
}

TEST_CASE("eta_series agrees with the naive product through 200 steps")
{
    for (std::int64_t delta : {1, 2, 3, 5, 12}) {
        CAPTURE(delta);
        const QSeries e = eta_series(delta, R(200));
        CHECK(e.leading().first == R(delta, 24));
        const QSeries body = e.shifted(-R(delta, 24)).truncated(R(199)).normalized();
        CHECK(body.grid() == 1);
        CHECK(dense(body, 199) == oracle::pochhammer(delta, delta, 199));
        CHECK(euler_product(delta, R(200)) == qpochhammer(R(delta), R(delta), R(200)));
    }
}

TEST_CASE("Pi_q has valuation 1/4")
{
    const QSeries pi = int_pow(eta_series(2, R(30)), 4) * int_pow(eta_series(1, R(30)), -2);
    CHECK(*pi.valuation() == R(1, 4));
}

TEST_CASE("Lambert series match divisor sums to exponent 500")
{
    SUBCASE("sigma")
    {
        const QSeries s1 = lambert_sigma(1, R(501));
        const std::int64_t first[] = {1, 3, 4, 7, 6, 12};
        for (int n = 1; n <= 6; ++n) {
            CHECK(s1.coeff(R(n)) == first[n - 1]);
        }
        for (std::int64_t k : {1, 2, 6}) {
            CAPTURE(k);
            const QSeries s = lambert_sigma(k, R(501));
            for (std::int64_t n = 0; n <= 500; ++n) {
                const std::int64_t expected = (n > 0 && n % k == 0) ? oracle::sigma(n / k) : 0;
                REQUIRE(s.coeff(R(n)) == expected);
            }
        }
        CHECK(lambert_sigma(6, R(20)).leading() == std::pair<Rational, Rational>(R(6), R(1)));
    }
    SUBCASE("ap")
    {
        const QSeries a21 = lambert_ap(2, 1, R(10));
        const std::int64_t first[] = {1, 2, 4, 4};
        for (int n = 1; n <= 4; ++n) {
            CHECK(a21.coeff(R(n)) == first[n - 1]);
        }
        CHECK(lambert_ap(12, 6, R(20)).leading() == std::pair<Rational, Rational>(R(6), R(1)));
        for (auto [k, j] : {std::pair{2, 1}, {12, 5}, {16, 3}, {16, 8}, {7, 6}}) {
            CAPTURE(k);
            CAPTURE(j);
            const QSeries s = lambert_ap(k, j, R(501));
            for (std::int64_t n = 0; n <= 500; ++n) {
                REQUIRE(s.coeff(R(n)) == oracle::ap_coeff(k, j, n));
            }
        }
    }
    SUBCASE("odd part identity")
    {
        const Rational t(101);
        CHECK(lambert_sigma(1, t) - lambert_sigma(2, t) == lambert_ap(2, 1, t));
    }
    SUBCASE("geometric double expansion")
    {
        oracle::Dense d(200, Rational(0));
        for (std::size_t n = 1; n < 200; ++n) {
            for (std::size_t m = 1; 3 * m * n < 200; ++m) {
                d[3 * m * n] += m;
            }
        }
        CHECK(dense(lambert_sigma(3, R(200)), 200) == d);
    }
}

TEST_CASE("product_of_powers matches explicit multiplication")
{
    std::vector<PowerFactor> f;
    f.push_back({[](const Rational& t) { return eta_series(4, t); }, 4, R(4, 24)});
    f.push_back({[](const Rational& t) { return eta_series(2, t); }, -2, R(2, 24)});
    const Rational t(50);
    const QSeries p = product_of_powers(f, t);
    const QSeries direct = int_pow(eta_series(4, R(60)), 4) * int_pow(eta_series(2, R(60)), -2);
    CHECK(p == direct.truncated(t));
}

TEST_CASE("first_difference and common-window agreement")
{
    const QSeries a = poly({{0, 1}, {3, 2}}, 10);
    const QSeries b = poly({{0, 1}, {3, 2}, {5, 7}}, 8);
    CHECK(first_difference(a, b) == std::optional(std::pair<Rational, Rational>(R(5), R(-7))));
    CHECK_FALSE(agree_on_common_window(a, b));
    CHECK(agree_on_common_window(a, poly({{0, 1}, {3, 2}}, 4)));
}

TEST_CASE("rendering")
{
    CHECK(poly({{-1, 1}, {1, 2}}, 4).to_string() == "q^-1 + 2*q + O(q^4)");
}
