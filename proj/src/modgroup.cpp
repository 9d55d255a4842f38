#include "qeta/modgroup.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace qeta {

namespace {

std::int64_t mod(std::int64_t x, std::int64_t n)
{
    const std::int64_t r = x % n;
    return r < 0 ? r + n : r;
}

std::vector<std::int64_t> prime_factors(std::int64_t n)
{
    std::vector<std::int64_t> ps;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) {
                n /= p;
            }
        }
    }
    if (n > 1) {
        ps.push_back(n);
    }
    return ps;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t n)
{
    std::int64_t t = 0, new_t = 1, r = n, new_r = mod(a, n);
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    return mod(t, n);
}

void require_level(std::int64_t n)
{
    if (n < 1) {
        throw std::invalid_argument("level must be >= 1");
    }
}

}  // namespace

Cusp Cusp::make(std::int64_t a, std::int64_t c)
{
    if (c == 0) {
        if (a == 0) {
            throw std::invalid_argument("0/0 is not a cusp");
        }
        return infinity();
    }
    if (c < 0) {
        a = -a;
        c = -c;
    }
    const std::int64_t g = std::gcd(a, c);
    return {a / g, c / g};
}

std::string Cusp::to_string() const
{
    if (c == 0) {
        return "inf";
    }
    if (c == 1) {
        return std::to_string(a);
    }
    return std::to_string(a) + "/" + std::to_string(c);
}

Cusp parse_cusp(std::string_view text)
{
    if (text == "inf" || text == "oo" || text == "infinity") {
        return Cusp::infinity();
    }
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Cusp::make(to_int64(parse_rational(text).get_num()), 1);
    }
    const Rational num = parse_rational(text.substr(0, slash));
    const Rational den = parse_rational(text.substr(slash + 1));
    if (!is_integer(num) || !is_integer(den)) {
        throw std::invalid_argument("malformed cusp: '" + std::string(text) + "'");
    }
    return Cusp::make(to_int64(num.get_num()), to_int64(den.get_num()));
}

bool cusp_less(const Cusp& x, const Cusp& y)
{
    if (x.c != y.c) {
        return x.c < y.c;
    }
    return x.a < y.a;
}

std::vector<std::int64_t> divisors(std::int64_t n)
{
    std::vector<std::int64_t> ds;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            ds.push_back(d);
            if (d * d != n) {
                ds.push_back(n / d);
            }
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

std::int64_t euler_phi(std::int64_t n)
{
    std::int64_t result = n;
    for (std::int64_t p : prime_factors(n)) {
        result -= result / p;
    }
    return result;
}

std::int64_t gamma0_index(std::int64_t n)
{
    require_level(n);
    std::int64_t result = n;
    for (std::int64_t p : prime_factors(n)) {
        result = result / p * (p + 1);
    }
    return result;
}

CuspTable cusp_set(std::int64_t n)
{
    require_level(n);
    CuspTable table;
    table.level = n;
    for (std::int64_t c : divisors(n)) {
        const std::int64_t modulus = std::gcd(c, n / c);
        std::vector<std::int64_t> seen;
        for (std::int64_t a = 1; a <= n; ++a) {
            if (std::gcd(a, n) != 1) {
                continue;
            }
            const std::int64_t residue = a % modulus;
            if (std::find(seen.begin(), seen.end(), residue) != seen.end()) {
                continue;
            }
            seen.push_back(residue);
            Cusp cusp;
            if (c == n) {
                cusp = Cusp::infinity();
            } else if (c == 1) {
                cusp = Cusp::zero();
            } else {
                cusp = Cusp::make(a, c);
            }
            table.entries.push_back({cusp, width(n, cusp)});
        }
    }
    std::sort(table.entries.begin(), table.entries.end(),
              [](const CuspEntry& x, const CuspEntry& y) { return cusp_less(x.cusp, y.cusp); });
    return table;
}

bool are_equivalent(std::int64_t n, const Cusp& r1, const Cusp& r2)
{
    require_level(n);
    const std::int64_t a = mod(r1.a, n);
    const std::int64_t c = mod(r1.c, n);
    const std::int64_t a2 = mod(r2.a, n);
    const std::int64_t c2 = mod(r2.c, n);
    if (n == 1) {
        return true;
    }
    for (std::int64_t s = 1; s < n; ++s) {
        if (std::gcd(s, n) != 1 || mod(s * c, n) != c2) {
            continue;
        }
        const std::int64_t s_inv = mod_inverse(s, n);
        const std::int64_t base = mod(s_inv * a, n);
        for (std::int64_t k = 0; k < n; ++k) {
            if (mod(base + k * c, n) == a2) {
                return true;
            }
        }
    }
    return false;
}

Cusp canonical_cusp(std::int64_t n, const Cusp& r)
{
    for (const auto& e : cusp_set(n).entries) {
        if (are_equivalent(n, r, e.cusp)) {
            return e.cusp;
        }
    }
    throw std::logic_error("no representative found for cusp " + r.to_string());
}

std::int64_t width(std::int64_t n, const Cusp& r)
{
    require_level(n);
    const std::int64_t cm = mod(r.c, n);
    return n / std::gcd(mod(cm * cm, n), n);
}

std::int64_t elliptic_points_2(std::int64_t n)
{
    if (n % 4 == 0) {
        return 0;
    }
    std::int64_t count = 1;
    for (std::int64_t p : prime_factors(n)) {
        count *= 1 + kronecker(-4, p);
    }
    return count;
}

std::int64_t elliptic_points_3(std::int64_t n)
{
    if (n % 9 == 0) {
        return 0;
    }
    std::int64_t count = 1;
    for (std::int64_t p : prime_factors(n)) {
        count *= 1 + kronecker(-3, p);
    }
    return count;
}

std::int64_t cusp_count(std::int64_t n)
{
    std::int64_t count = 0;
    for (std::int64_t d : divisors(n)) {
        count += euler_phi(std::gcd(d, n / d));
    }
    return count;
}

std::int64_t genus(std::int64_t n)
{
    require_level(n);
    const Rational g = Rational(1) + make_rational(gamma0_index(n), 12) - make_rational(elliptic_points_2(n), 4) -
                       make_rational(elliptic_points_3(n), 3) - make_rational(cusp_count(n), 2);
    if (!is_integer(g)) {
        throw std::logic_error("non-integral genus for level " + std::to_string(n));
    }
    return to_int64(g.get_num());
}

int kronecker(std::int64_t a, std::int64_t n)
{
    if (n == 0) {
        return (a == 1 || a == -1) ? 1 : 0;
    }
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) {
            result = -result;
        }
    }
    // factor 2 out of n
    int twos = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++twos;
    }
    if (twos > 0) {
        if (a % 2 == 0) {
            return 0;
        }
        // (a/2) = 1 if a = +-1 mod 8, -1 if a = +-3 mod 8
        const std::int64_t r8 = mod(a, 8);
        if ((twos % 2 == 1) && (r8 == 3 || r8 == 5)) {
            result = -result;
        }
    }
    // Jacobi symbol (a/n) for odd n > 0
    std::int64_t x = mod(a, n);
    std::int64_t y = n;
    while (x != 0) {
        while (x % 2 == 0) {
            x /= 2;
            const std::int64_t r8 = y % 8;
            if (r8 == 3 || r8 == 5) {
                result = -result;
            }
        }
        std::swap(x, y);
        if (x % 4 == 3 && y % 4 == 3) {
            result = -result;
        }
        x %= y;
    }
    return y == 1 ? result : 0;
}

Rational bernoulli2(const Rational& t, bool periodic)
{
    const Rational x = periodic ? frac(t) : t;
    return x * x - x + make_rational(1, 6);
}

Integer squarefree_kernel(const Rational& r)
{
    if (sgn(r) == 0) {
        return 0;
    }
    Integer kernel = sgn(r) < 0 ? -1 : 1;
    for (Integer part : {Integer(abs(r.get_num())), r.get_den()}) {
        for (Integer p = 2; p * p <= part; ++p) {
            int e = 0;
            while (mpz_divisible_p(part.get_mpz_t(), p.get_mpz_t()) != 0) {
                part /= p;
                ++e;
            }
            if (e % 2 == 1) {
                kernel *= p;
            }
        }
        if (part > 1) {
            kernel *= part;
        }
    }
    return kernel;
}

}  // namespace qeta
