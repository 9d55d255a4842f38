#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "qeta/modgroup.hpp"
#include "test_helpers.hpp"

using namespace qeta;
using testing::R;

namespace {

std::vector<std::string> labels(const CuspTable& t)
{
    std::vector<std::string> out;
    for (const auto& e : t.entries) {
        out.push_back(e.cusp.to_string());
    }
    return out;
}

std::int64_t count_roots(std::int64_t n, std::int64_t b, std::int64_t c)
{
    std::int64_t k = 0;
    for (std::int64_t x = 0; x < n; ++x) {
        if ((x * x + b * x + c) % n == 0) {
            ++k;
        }
    }
    return k;
}

int legendre_brute(std::int64_t a, std::int64_t p)
{
    a = ((a % p) + p) % p;
    if (a == 0) {
        return 0;
    }
    for (std::int64_t x = 1; x < p; ++x) {
        if (x * x % p == a) {
            return 1;
        }
    }
    return -1;
}

}  // namespace

TEST_CASE("cusp lists at levels 1, 12, 16 and 24")
{
    using V = std::vector<std::string>;
    CHECK(labels(cusp_set(1)) == V{"inf"});
    CHECK(labels(cusp_set(12)) == V{"inf", "0", "1/2", "1/3", "1/4", "1/6"});
    CHECK(labels(cusp_set(16)) == V{"inf", "0", "1/2", "1/4", "3/4", "1/8"});
    CHECK(labels(cusp_set(24)) == V{"inf", "0", "1/2", "1/3", "1/4", "1/6", "1/8", "1/12"});
}

TEST_CASE("cusp classes agree with orbits on P1(Z/N)")
{
    for (std::int64_t n = 1; n <= 36; ++n) {
        CAPTURE(n);
        const oracle::CuspOrbits orbits = oracle::cusp_orbits(n);
        const CuspTable t = cusp_set(n);
        REQUIRE(t.entries.size() == orbits.sizes.size());
        CHECK(static_cast<std::int64_t>(t.entries.size()) == cusp_count(n));

        std::set<int> seen;
        std::int64_t total = 0;
        for (const auto& e : t.entries) {
            const int id = orbits.orbit_of_cusp(e.cusp.a, e.cusp.c);
            CHECK(seen.insert(id).second);
            CHECK(e.width == orbits.sizes[static_cast<std::size_t>(id)]);
            CHECK(e.width == width(n, e.cusp));
            total += e.width;
        }
        CHECK(total == gamma0_index(n));
        CHECK(static_cast<std::int64_t>(orbits.orbit_of.size()) == gamma0_index(n));
    }
}

TEST_CASE("every reduced fraction lands on exactly one listed cusp")
{
    for (std::int64_t n : {12, 16, 24, 32}) {
        CAPTURE(n);
        const oracle::CuspOrbits orbits = oracle::cusp_orbits(n);
        const CuspTable t = cusp_set(n);
        for (std::int64_t c = 1; c <= 4 * n; ++c) {
            for (std::int64_t a = -4 * n; a <= 4 * n; ++a) {
                if (std::gcd(a, c) != 1) {
                    continue;
                }
                const Cusp r = Cusp::make(a, c);
                int matches = 0;
                for (const auto& e : t.entries) {
                    matches += are_equivalent(n, r, e.cusp) ? 1 : 0;
                }
                REQUIRE(matches == 1);
                const Cusp rep = canonical_cusp(n, r);
                REQUIRE(orbits.orbit_of_cusp(rep.a, rep.c) == orbits.orbit_of_cusp(a, c));
            }
        }
    }
}

TEST_CASE("equivalence examples")
{
    // alpha = [1 0; 12 1] sends a/c to a/(12a + c)
    CHECK(are_equivalent(24, Cusp::make(1, 24), Cusp::infinity()));
    CHECK(are_equivalent(24, Cusp::make(1, 16), Cusp::make(1, 8)));
    CHECK(are_equivalent(12, Cusp::make(1, 5), Cusp::zero()));
    CHECK_FALSE(are_equivalent(12, Cusp::make(1, 2), Cusp::make(1, 4)));
}

TEST_CASE("equivalence is an equivalence relation")
{
    const std::int64_t n = 24;
    std::vector<Cusp> sample;
    for (std::int64_t c = 0; c <= 30; c += 1) {
        for (std::int64_t a = -7; a <= 7; a += 3) {
            if (std::gcd(a, c) == 1) {
                sample.push_back(Cusp::make(a, c));
            }
        }
    }
    for (const auto& x : sample) {
        REQUIRE(are_equivalent(n, x, x));
        for (const auto& y : sample) {
            const bool xy = are_equivalent(n, x, y);
            REQUIRE(xy == are_equivalent(n, y, x));
            if (!xy) {
                continue;
            }
            for (const auto& z : sample) {
                if (are_equivalent(n, y, z)) {
                    REQUIRE(are_equivalent(n, x, z));
                }
            }
        }
    }
}

TEST_CASE("widths")
{
    CHECK(width(12, Cusp::infinity()) == 1);
    CHECK(width(12, Cusp::zero()) == 12);
    CHECK(width(12, Cusp::make(1, 2)) == 3);
}

TEST_CASE("genus from independently counted data")
{
    CHECK(genus(12) == 0);
    CHECK(genus(16) == 0);
    CHECK(genus(11) == 1);
    for (std::int64_t n = 1; n <= 60; ++n) {
        CAPTURE(n);
        const oracle::CuspOrbits orbits = oracle::cusp_orbits(n);
        const std::int64_t index = static_cast<std::int64_t>(orbits.orbit_of.size());
        const std::int64_t e2 = n % 4 == 0 ? 0 : count_roots(n, 0, 1);
        const std::int64_t e3 = n % 9 == 0 ? 0 : count_roots(n, 1, 1);
        const std::int64_t cusps = static_cast<std::int64_t>(orbits.sizes.size());
        const Rational g = 1 + R(index, 12) - R(e2, 4) - R(e3, 3) - R(cusps, 2);
        CHECK(elliptic_points_2(n) == e2);
        CHECK(elliptic_points_3(n) == e3);
        CHECK(Rational(genus(n)) == g);
    }
}

TEST_CASE("Kronecker symbol")
{
    for (std::int64_t a = -20; a <= 20; ++a) {
        CHECK(kronecker(a, 1) == 1);
    }
    CHECK(kronecker(2, 7) == 1);
    CHECK(kronecker(2, 3) == -1);
    for (std::int64_t p : {3, 5, 7, 11, 13, 29}) {
        for (std::int64_t a = -30; a <= 30; ++a) {
            REQUIRE(kronecker(a, p) == legendre_brute(a, p));
        }
    }
    for (std::int64_t a = -12; a <= 12; ++a) {
        for (std::int64_t m = 1; m <= 12; ++m) {
            for (std::int64_t n = 1; n <= 12; ++n) {
                REQUIRE(kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n));
            }
            for (std::int64_t b = -12; b <= 12; ++b) {
                REQUIRE(kronecker(a * b, m) == kronecker(a, m) * kronecker(b, m));
            }
        }
    }
    CHECK(kronecker(-3, -1) == -1);
    CHECK(kronecker(3, -1) == 1);
    CHECK(kronecker(1, 0) == 1);
    CHECK(kronecker(2, 0) == 0);
}

TEST_CASE("squarefree kernel")
{
    CHECK(squarefree_kernel(R(1, 9)) == 1);
    CHECK(squarefree_kernel(R(-8, 3)) == -6);
    // 4^4 6^2 2^-2 12^-4
    CHECK(squarefree_kernel(R(256 * 36, 4 * 20736)) == 1);
}

TEST_CASE("Bernoulli polynomial")
{
    CHECK(bernoulli2(R(0), false) == R(1, 6));
    CHECK(bernoulli2(R(5, 4), true) == R(-1, 48));
    CHECK(bernoulli2(R(5, 4), false) == R(25, 16) - R(5, 4) + R(1, 6));
    for (std::int64_t num = -20; num <= 20; ++num) {
        const Rational t = R(num, 7);
        CHECK(bernoulli2(t + 1, true) == bernoulli2(t, true));
    }
}

TEST_CASE("cusp text")
{
    CHECK(parse_cusp("inf") == Cusp::infinity());
    CHECK(parse_cusp("oo") == Cusp::infinity());
    CHECK(parse_cusp("3/4") == Cusp::make(3, 4));
    CHECK(parse_cusp("0") == Cusp::zero());
    CHECK(Cusp::make(-2, -6).to_string() == "1/3");
    CHECK(Cusp::make(5, 0) == Cusp::infinity());
    CHECK_THROWS(parse_cusp("1/x"));
}
