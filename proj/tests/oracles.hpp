#pragma once

// Independent reference computations. Everything here works on dense
// coefficient vectors with plain loops and shares no code with the library
// beyond the GMP scalar type.

#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "qeta/series.hpp"

namespace oracle {

using qeta::Rational;

/// Coefficients of q^0 .. q^(n-1).
using Dense = std::vector<Rational>;

inline Dense one(std::size_t n)
{
    Dense d(n, Rational(0));
    if (n > 0) {
        d[0] = 1;
    }
    return d;
}

inline Dense convolve(const Dense& a, const Dense& b)
{
    const std::size_t n = std::min(a.size(), b.size());
    Dense out(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; i + j < n; ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

/// a / b by long division; b[0] must be nonzero.
inline Dense divide(const Dense& a, const Dense& b)
{
    const std::size_t n = std::min(a.size(), b.size());
    Dense out(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        Rational acc = a[i];
        for (std::size_t k = 1; k <= i; ++k) {
            acc -= b[k] * out[i - k];
        }
        out[i] = acc / b[0];
    }
    return out;
}

/// d * (1 - c q^m)
inline void times_binomial(Dense& d, std::size_t m, const Rational& c = Rational(1))
{
    for (std::size_t i = d.size(); i-- > m;) {
        d[i] -= c * d[i - m];
    }
}

/// d / (1 - q^m)
inline void over_binomial(Dense& d, std::size_t m)
{
    for (std::size_t i = m; i < d.size(); ++i) {
        d[i] += d[i - m];
    }
}

/// prod_{n>=0} (1 - q^(a + n b)) through q^(size-1), a, b >= 1.
inline Dense pochhammer(std::size_t a, std::size_t b, std::size_t size)
{
    Dense d = one(size);
    for (std::size_t e = a; e < size; e += b) {
        times_binomial(d, e);
    }
    return d;
}

/// prod_delta (q^delta; q^delta)^(r_delta) through q^(size-1), built by
/// multiplying or dividing one binomial at a time.
inline Dense eta_product(const std::map<std::int64_t, std::int64_t>& exps, std::size_t size)
{
    Dense d = one(size);
    for (const auto& [delta, r] : exps) {
        for (std::size_t e = static_cast<std::size_t>(delta); e < size; e += static_cast<std::size_t>(delta)) {
            for (std::int64_t i = 0; i < std::abs(r); ++i) {
                if (r > 0) {
                    times_binomial(d, e);
                } else {
                    over_binomial(d, e);
                }
            }
        }
    }
    return d;
}

/// prod_g ((q^g; q^N)(q^(N-g); q^N))^(r_g) through q^(size-1).
inline Dense geta_product(std::int64_t n, const std::map<std::int64_t, std::int64_t>& exps, std::size_t size)
{
    Dense d = one(size);
    for (const auto& [g, r] : exps) {
        for (std::int64_t start : {g, n - g}) {
            for (std::size_t e = static_cast<std::size_t>(start); e < size; e += static_cast<std::size_t>(n)) {
                for (std::int64_t i = 0; i < std::abs(r); ++i) {
                    if (r > 0) {
                        times_binomial(d, e);
                    } else {
                        over_binomial(d, e);
                    }
                }
            }
        }
    }
    return d;
}

inline std::int64_t sigma(std::int64_t n)
{
    std::int64_t s = 0;
    for (std::int64_t d = 1; d <= n; ++d) {
        if (n % d == 0) {
            s += d;
        }
    }
    return s;
}

/// Coefficient of q^n in sum_{m>=1} q^(km-j)/(1-q^(km-j))^2: the sum of n/b
/// over divisors b of n with b = -j (mod k).
inline std::int64_t ap_coeff(std::int64_t k, std::int64_t j, std::int64_t n)
{
    std::int64_t s = 0;
    for (std::int64_t b = 1; b <= n; ++b) {
        if (n % b == 0 && (b + j) % k == 0) {
            s += n / b;
        }
    }
    return s;
}

/// Number of partitions of every n < size by recursive enumeration of parts
/// in non-increasing order.
inline std::vector<std::int64_t> partitions(std::size_t size)
{
    std::vector<std::int64_t> out(size, 0);
    auto count = [](auto&& self, std::int64_t rest, std::int64_t largest) -> std::int64_t {
        if (rest == 0) {
            return 1;
        }
        std::int64_t total = 0;
        for (std::int64_t p = std::min(rest, largest); p >= 1; --p) {
            total += self(self, rest - p, p);
        }
        return total;
    };
    for (std::size_t n = 0; n < size; ++n) {
        out[n] = count(count, static_cast<std::int64_t>(n), static_cast<std::int64_t>(n));
    }
    return out;
}

/// Cusps of Gamma0(N) as orbits of <T, -I> acting on the bottom rows (c : d)
/// of P^1(Z/N). Returns the orbit id of every normalized row and the orbit
/// sizes.
struct CuspOrbits {
    std::int64_t n = 1;
    std::map<std::pair<std::int64_t, std::int64_t>, int> orbit_of;
    std::vector<std::int64_t> sizes;

    /// Canonical representative of (c : d) under scaling by units mod N.
    std::pair<std::int64_t, std::int64_t> normalize(std::int64_t c, std::int64_t d) const
    {
        std::pair<std::int64_t, std::int64_t> best{n, n};
        for (std::int64_t u = 1; u <= n; ++u) {
            if (std::gcd(u, n) != 1) {
                continue;
            }
            const std::pair<std::int64_t, std::int64_t> p{((u * c) % n + n) % n, ((u * d) % n + n) % n};
            best = std::min(best, p);
        }
        return best;
    }

    /// Orbit of the cusp a/c (c = 0 is infinity): complete to [a b; c d].
    int orbit_of_cusp(std::int64_t a, std::int64_t c) const
    {
        if (c == 0) {
            return orbit_of.at(normalize(0, 1));
        }
        // Extended Euclid: a x + c y = 1, so d = x.
        std::int64_t r0 = a, r1 = c, x0 = 1, x1 = 0;
        while (r1 != 0) {
            const std::int64_t qt = r0 / r1;
            r0 = std::exchange(r1, r0 - qt * r1);
            x0 = std::exchange(x1, x0 - qt * x1);
        }
        const std::int64_t d = r0 < 0 ? -x0 : x0;
        return orbit_of.at(normalize(c, d));
    }
};

inline CuspOrbits cusp_orbits(std::int64_t n)
{
    CuspOrbits out;
    out.n = n;
    std::set<std::pair<std::int64_t, std::int64_t>> points;
    for (std::int64_t c = 0; c < n; ++c) {
        for (std::int64_t d = 0; d < n; ++d) {
            if (std::gcd(std::gcd(c, d), n) == 1) {
                points.insert(out.normalize(c, d));
            }
        }
    }
    for (const auto& p : points) {
        if (out.orbit_of.count(p)) {
            continue;
        }
        const int id = static_cast<int>(out.sizes.size());
        std::int64_t size = 0;
        auto cur = p;
        while (!out.orbit_of.count(cur)) {
            out.orbit_of[cur] = id;
            ++size;
            cur = out.normalize(cur.first, cur.first + cur.second);
        }
        out.sizes.push_back(size);
    }
    return out;
}

/// Small deterministic generator of sparse Laurent series for property tests.
class SeriesGen {
public:
    explicit SeriesGen(std::uint64_t seed) : rng_(seed) {}

    std::int64_t integer(std::int64_t lo, std::int64_t hi)
    {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
    }

    Rational rational()
    {
        const std::int64_t num = integer(-9, 9);
        return qeta::make_rational(num, integer(1, 4));
    }

    Rational nonzero_rational()
    {
        Rational r = rational();
        while (r == 0) {
            r = rational();
        }
        return r;
    }

    std::int64_t grid() { return std::array<std::int64_t, 5>{1, 2, 3, 4, 6}[integer(0, 4)]; }

    /// Leading key in [-4, 4], between 1 and 6 further terms, truncation
    /// 8..30 steps after the leading key.
    qeta::QSeries sparse(std::int64_t grid)
    {
        const std::int64_t lead = integer(-4, 4);
        const std::int64_t trunc = lead + integer(8, 30);
        std::vector<qeta::QSeries::Term> terms{{lead, nonzero_rational()}};
        const std::int64_t extra = integer(1, 6);
        for (std::int64_t i = 0; i < extra; ++i) {
            terms.push_back({integer(lead + 1, trunc - 1), rational()});
        }
        return qeta::QSeries::from_terms(grid, trunc, std::move(terms));
    }

    /// Like sparse but with leading coefficient a rational square.
    qeta::QSeries square_led(std::int64_t grid)
    {
        qeta::QSeries s = sparse(grid);
        const Rational r = nonzero_rational();
        const auto [e, c] = s.leading();
        return s + qeta::QSeries::monomial(r * r - c, e);
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace oracle
