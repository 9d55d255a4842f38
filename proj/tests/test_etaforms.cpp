#include <doctest.h>

#include "oracles.hpp"
#include "qeta/etaforms.hpp"
#include "test_helpers.hpp"

using namespace qeta;
using testing::R;
using testing::dense;
using testing::poly;

namespace {

const EtaQuotient h(12, {{4, 4}, {6, 2}, {2, -2}, {12, -4}});
const EtaQuotient s(16, {{8, 6}, {4, -2}, {16, -4}});
const EtaQuotient h2(24, {{12, 12}, {6, -4}, {24, -8}});
const GenEtaQuotient h1(12, {{5, 2}, {1, -2}});
const GenEtaQuotient h3(12, {{4, 2}, {2, -2}});
const GenEtaQuotient s1(16, {{7, 2}, {1, -2}});
const GenEtaQuotient s2(16, {{5, 2}, {3, -2}});
const GenEtaQuotient s4(16, {{6, 2}, {2, -2}});

/// prod_{n >= 0} (1 - q^(a + nL))(1 - q^(L - a + nL))(1 - q^(L + nL)) = f(-q^a, -q^(L-a))
oracle::Dense jtp(std::size_t a, std::size_t L, std::size_t size)
{
    return oracle::convolve(oracle::convolve(oracle::pochhammer(a, L, size), oracle::pochhammer(L - a, L, size)),
                            oracle::pochhammer(L, L, size));
}

oracle::Dense power(const oracle::Dense& d, int k)
{
    oracle::Dense out = oracle::one(d.size());
    for (int i = 0; i < k; ++i) {
        out = oracle::convolve(out, d);
    }
    return out;
}

}  // namespace

TEST_CASE("Pi quotients")
{
    CHECK(pi_quotient(2) / pi_quotient(6) == h);
    CHECK(pi_quotient(4) / pi_quotient(8) == s);
    CHECK(pi_quotient(3).valuation() == R(3, 4));

    const Rational t(51);
    const QSeries psi = theta_f(1, R(1), 1, R(3), t);
    CHECK(expand(pi_quotient(1), t) == (psi * psi).shifted(R(1, 4)).truncated(t));
}

TEST_CASE("Gamma0 conditions")
{
    const Gamma0Check ch = check_gamma0(h);
    CHECK(ch.weight == 0);
    CHECK(ch.sum_delta == -24);
    CHECK(ch.holds());
    CHECK(ch.character_kernel == Integer(1));

    const Gamma0Check c2 = check_gamma0(h2);
    CHECK(c2.weight == 0);
    CHECK(c2.sum_delta == -72);
    CHECK(c2.sum_cofactor == 0);
    CHECK(c2.holds());

    const Gamma0Check c1 = check_gamma0(EtaQuotient(1, {{1, 1}}));
    CHECK(c1.weight == R(1, 2));
    CHECK_FALSE(c1.delta_condition);
    CHECK_FALSE(c1.holds());
}

TEST_CASE("Ligozat orders")
{
    CHECK(eta_order_at_cusp(h, Cusp::make(1, 4)) == 1);
    CHECK(eta_order_at_cusp(h, Cusp::infinity()) == -1);
    CHECK(eta_order_at_cusp(s, Cusp::infinity()) == -1);

    const OrderTable t = eta_order_table(h2);
    const std::vector<std::pair<std::string, std::int64_t>> expected = {
        {"0", 0}, {"1/2", 0}, {"1/3", 0}, {"1/4", 1}, {"1/6", 0}, {"1/8", -1}, {"1/12", 3}, {"inf", -3}};
    for (const auto& [cusp, value] : expected) {
        CAPTURE(cusp);
        CHECK(t.at(parse_cusp(cusp)).value == value);
        CHECK(t.at(parse_cusp(cusp)).exact);
    }

    CHECK_THROWS_WITH_AS(eta_order_at_cusp(h, Cusp::make(1, 5)), doctest::Contains("non-divisor denominator"),
                         std::invalid_argument);
}

TEST_CASE("weight-0 orders sum to zero")
{
    for (const EtaQuotient& f : {h, s, h2, pi_quotient(2).pow(4) / pi_quotient(4).pow(4)}) {
        CAPTURE(f.to_string());
        Rational total(0);
        for (const auto& e : eta_order_table(f).entries) {
            total += e.value;
        }
        CHECK(total == 0);
    }
}

TEST_CASE("Gamma1 conditions")
{
    const Gamma1Check c1 = check_gamma1(h1);
    CHECK(c1.sum_r == 0);
    CHECK(c1.sum_gr == 8);
    CHECK(c1.sum_g2r == 48);
    CHECK(c1.holds());

    const Gamma1Check cs = check_gamma1(s1);
    CHECK(cs.sum_g2r == 96);
    CHECK(cs.holds());

    const Gamma1Check bad = check_gamma1(GenEtaQuotient(12, {{1, 2}}));
    CHECK(bad.sum_r == 2);
    CHECK_FALSE(bad.r_condition);
    CHECK_FALSE(bad.holds());
}

TEST_CASE("generalized orders")
{
    const OrderTable t1 = gen_eta_order_table(h1, 12);
    for (const auto& e : t1.entries) {
        CAPTURE(e.cusp.to_string());
        CHECK(e.value == (e.cusp.is_infinity() ? -2 : 0));
    }
    CHECK((-t1).at(Cusp::infinity()).value == 2);

    CHECK(gen_eta_ord(s1, Cusp::infinity()) == -3);
    CHECK(gen_eta_ord(s2, Cusp::infinity()) == -1);

    // h2 as geta(24;12)^4 / geta(24;6)^4 viewed on Gamma0(12)
    const GenEtaQuotient h2g(24, {{12, 4}, {6, -4}});
    CHECK(gen_eta_ord(h2g, Cusp::make(1, 4), 12) == 1);
    CHECK(gen_eta_ord(h2g, Cusp::infinity(), 12) == -3);
    CHECK(*expand(h2, R(2)).valuation() == -3);
    CHECK(expand(h2g, R(20)) == expand(h2, R(20)));
}

TEST_CASE("expansion valuations match the order formulas at infinity")
{
    for (const EtaQuotient& f : {h, s, h2, pi_quotient(2), pi_quotient(6).inverse()}) {
        CAPTURE(f.to_string());
        CHECK(*expand(f, R(10)).valuation() == eta_order_at_cusp(f, Cusp::infinity()) / 1);
        CHECK(*expand(f, R(10)).valuation() == f.valuation());
    }
    for (const GenEtaQuotient& f : {h1, h3, s1, s2, s4}) {
        CAPTURE(f.to_string());
        CHECK(*expand(f, R(10)).valuation() == gen_eta_ord(f, Cusp::infinity()));
    }
}

TEST_CASE("expansions against naive products")
{
    const std::size_t size = 150;
    for (const EtaQuotient& f : {h, s, h2, EtaQuotient(6, {{1, 5}, {2, -3}, {3, 7}, {6, -1}})}) {
        CAPTURE(f.to_string());
        const Rational v = f.valuation();
        const QSeries body = expand(f, v + static_cast<long>(size)).shifted(-v).normalized();
        CHECK(dense(body, size) == oracle::eta_product(f.exps(), size));
    }
    for (const GenEtaQuotient& f : {h1, h3, s1, s2, s4, GenEtaQuotient(10, {{1, 3}, {4, -1}, {5, 2}})}) {
        CAPTURE(f.to_string());
        const Rational v = f.valuation();
        const QSeries body = expand(f, v + static_cast<long>(size)).shifted(-v).normalized();
        // geta(N; N/2) is a single product (q^(N/2); q^N) squared in the oracle
        std::map<std::int64_t, std::int64_t> exps = f.exps();
        CHECK(dense(body, size) == oracle::geta_product(f.level(), exps, size));
    }
}

TEST_CASE("printed expansions")
{
    CHECK(expand(h, R(4)) == poly({{-1, 1}, {1, 2}, {3, 1}}, 4));
    const QSeries j1 = expand(h1, R(3)) + expand(h1.inverse(), R(3));
    CHECK(j1 == poly({{-2, 1}, {-1, 2}, {0, 3}, {1, 4}, {2, 6}}, 3));
    CHECK((j1 + QSeries::constant(1)).coeff(R(0)) == 4);
    CHECK(expand(GenEtaQuotient(12, {{1, 1}}), R(2)).leading().first == R(13, 24));
    CHECK(expand(GenEtaQuotient(12, {{5, 1}}), R(2)).leading().first == R(-11, 24));
}

TEST_CASE("theta function")
{
    const Rational t(101);
    const QSeries psi = theta_f(1, R(1), 1, R(3), t);
    CHECK(psi == qpochhammer(R(2), R(2), t) * invert(qpochhammer(R(1), R(2), t)));
    CHECK(theta_f(-1, R(1), -1, R(2), t) == qpochhammer(R(1), R(1), t));
    CHECK(theta_f(-1, R(7), -1, R(5), t) == theta_product(-1, R(7), -1, R(5), t));
    CHECK(theta_f(1, R(1, 2), -1, R(5, 2), t) == theta_product(1, R(1, 2), -1, R(5, 2), t));
    // f(a, b) = f(b, a) and a negative exponent is allowed when ea + eb > 0
    CHECK(theta_f(-1, R(9), -1, R(-3), t) == theta_f(-1, R(-3), -1, R(9), t));
    CHECK(theta_valuation(-1, R(9), -1, R(-3)) == *theta_f(-1, R(9), -1, R(-3), t).valuation());
    CHECK_THROWS_WITH_AS(theta_f(1, R(1), 1, R(-1), t), doctest::Contains("divergent theta parameters"),
                         std::invalid_argument);
}

TEST_CASE("Lambert/theta summation at L = 12 and 16")
{
    const std::size_t size = 121;
    const Rational t(static_cast<long>(size));
    for (std::int64_t L : {12, 16}) {
        const std::size_t half = static_cast<std::size_t>(L / 2);
        for (std::int64_t j = 1; j < L; ++j) {
            if (2 * j == L) {
                continue;
            }
            CAPTURE(L);
            CAPTURE(j);
            const BaileyPair p = bailey_pair(L, j, t);
            CHECK(p.lhs == p.rhs);
            for (std::size_t n = 0; n < size; ++n) {
                const auto k = static_cast<std::int64_t>(n);
                REQUIRE(p.lhs.coeff(R(k)) ==
                        oracle::ap_coeff(L, j, k) + oracle::ap_coeff(L, L - j, k) - 2 * oracle::ap_coeff(L, L / 2, k));
            }
            if (2 * j < L) {
                const auto uj = static_cast<std::size_t>(j);
                const auto uL = static_cast<std::size_t>(L);
                oracle::Dense num = oracle::convolve(power(oracle::pochhammer(uL, uL, size), 6),
                                                     power(jtp(half + uj, uL, size), 2));
                oracle::Dense den = oracle::convolve(power(jtp(uj, uL, size), 2), power(jtp(half, uL, size), 2));
                oracle::Dense rhs(size, Rational(0));
                const oracle::Dense body = oracle::divide(num, den);
                for (std::size_t n = uj; n < size; ++n) {
                    rhs[n] = body[n - uj];
                }
                CHECK(dense(p.rhs, size) == rhs);
            }
        }
    }

    SUBCASE("odd residues at L = 16")
    {
        QSeries sum = QSeries::zero(t);
        for (std::int64_t j : {1, 3, 5, 7}) {
            sum += bailey_pair(16, j, t).lhs;
        }
        CHECK(sum == lambert_ap(2, 1, t) - 8 * lambert_ap(16, 8, t));
    }
    SUBCASE("degenerate parameters")
    {
        CHECK_THROWS_AS(bailey_pair(12, 6, t), std::invalid_argument);
        CHECK_THROWS_AS(bailey_pair(12, 0, t), std::invalid_argument);
        CHECK_THROWS_AS(bailey_pair(7, 1, t), std::invalid_argument);
    }
}

TEST_CASE("quotient arithmetic and validation")
{
    CHECK(h * h.inverse() == EtaQuotient(12, {}));
    CHECK(h.pow(2).exps().at(4) == 8);
    CHECK(EtaQuotient::from_exponents({{4, 1}, {6, 1}}).level() == 12);
    CHECK(h.lifted(24).level() == 24);
    CHECK(h.to_string() == "eta(4)^4*eta(6)^2*eta(2)^-2*eta(12)^-4");
    CHECK(h1.to_string() == "geta(12;5)^2*geta(12;1)^-2");
    CHECK_THROWS_AS(EtaQuotient(12, {{5, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(GenEtaQuotient(12, {{7, 1}}), std::invalid_argument);
}

TEST_CASE("order table arithmetic")
{
    const OrderTable a = gen_eta_order_table(h3, 12);
    const OrderTable b = -a;
    const OrderTable sum = a + b;
    for (const auto& e : sum.entries) {
        CHECK(e.value == 0);
        CHECK(e.exact);
    }
    OrderTable c = a;
    c.entries[1].exact = false;
    CHECK_FALSE((c + b).entries[1].exact);
    CHECK_THROWS(-c);
}
