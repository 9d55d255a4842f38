#pragma once

// Cusps of Gamma0(N) and the small number-theoretic helpers the order
// formulas need.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qeta/rational.hpp"

namespace qeta {

/// A reduced fraction a/c with c >= 0; infinity is 1/0.
struct Cusp {
    std::int64_t a = 1;
    std::int64_t c = 0;

    /// Reduces and normalizes the sign so that c >= 0. (a, 0) becomes 1/0.
    static Cusp make(std::int64_t a, std::int64_t c);
    static Cusp infinity() { return {1, 0}; }
    static Cusp zero() { return {0, 1}; }

    bool is_infinity() const { return c == 0; }

    /// "inf", "0", "a/c" (integers a/1 print as "a").
    std::string to_string() const;

    friend bool operator==(const Cusp&, const Cusp&) = default;
};

/// Accepts "inf", "oo", "a/c" and plain integers.
Cusp parse_cusp(std::string_view text);

/// Orders by denominator, then numerator (infinity first).
bool cusp_less(const Cusp& x, const Cusp& y);

struct CuspEntry {
    Cusp cusp;
    std::int64_t width = 1;
};

struct CuspTable {
    std::int64_t level = 1;
    std::vector<CuspEntry> entries;
};

std::vector<std::int64_t> divisors(std::int64_t n);
std::int64_t euler_phi(std::int64_t n);

/// [SL2(Z) : Gamma0(N)] = N prod_{p | N} (1 + 1/p).
std::int64_t gamma0_index(std::int64_t n);

/// One representative per Gamma0(N) class: for each c | N the numerators
/// 0 < a <= N coprime to N, taken distinct modulo gcd(c, N/c) (smallest
/// first). The class of 1/1 is reported as 0 and that of 1/N as infinity.
CuspTable cusp_set(std::int64_t n);

/// Exhaustive search for a unit s mod N and n in [0, N) with
/// (a', c') = (s^-1 a + n c, s c) mod N.
bool are_equivalent(std::int64_t n, const Cusp& r1, const Cusp& r2);

/// The entry of cusp_set(N) equivalent to r.
Cusp canonical_cusp(std::int64_t n, const Cusp& r);

/// N / gcd(c^2, N); infinity has width 1.
std::int64_t width(std::int64_t n, const Cusp& r);

/// Genus of X0(N) from the index, elliptic points and cusp count.
std::int64_t genus(std::int64_t n);

/// Number of elliptic points of order 2 and 3 on X0(N).
std::int64_t elliptic_points_2(std::int64_t n);
std::int64_t elliptic_points_3(std::int64_t n);

/// sum_{d | N} phi(gcd(d, N/d)).
std::int64_t cusp_count(std::int64_t n);

/// Kronecker symbol (a / n) for arbitrary integers.
int kronecker(std::int64_t a, std::int64_t n);

/// B2(t) = t^2 - t + 1/6, or P2(t) = B2({t}) when periodic.
Rational bernoulli2(const Rational& t, bool periodic);

/// Product of the primes that occur to an odd power in r (sign kept).
/// The kernel of 1/9 is 1, of -8/3 is -6.
Integer squarefree_kernel(const Rational& r);

}  // namespace qeta
