#pragma once

// Eta-quotients and generalized eta-quotients as symbolic objects: their
// modularity criteria, orders at cusps and q-expansions, plus the theta
// function and bilateral Lambert-sum builders.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qeta/modgroup.hpp"
#include "qeta/rational.hpp"
#include "qeta/series.hpp"

namespace qeta {

/// prod_{delta | N} eta(delta tau)^(r_delta)
class EtaQuotient {
public:
    EtaQuotient() = default;

    /// Throws std::invalid_argument when a key does not divide the level.
    EtaQuotient(std::int64_t level, std::map<std::int64_t, std::int64_t> exps);

    /// Level is the lcm of the keys.
    static EtaQuotient from_exponents(const std::map<std::int64_t, std::int64_t>& exps);

    std::int64_t level() const { return level_; }
    const std::map<std::int64_t, std::int64_t>& exps() const { return exps_; }

    /// (1/2) sum r_delta
    Rational weight() const;

    /// Leading exponent of the expansion at infinity: sum delta r_delta / 24.
    Rational valuation() const;

    /// Same quotient regarded on Gamma0(level) for a multiple of the level.
    EtaQuotient lifted(std::int64_t level) const;

    EtaQuotient inverse() const;
    EtaQuotient pow(std::int64_t k) const;

    /// "eta(4)^4*eta(6)^2*eta(2)^-2*eta(12)^-4"
    std::string to_string() const;

    friend EtaQuotient operator*(const EtaQuotient& a, const EtaQuotient& b);
    friend EtaQuotient operator/(const EtaQuotient& a, const EtaQuotient& b);
    friend bool operator==(const EtaQuotient&, const EtaQuotient&) = default;

private:
    std::int64_t level_ = 1;
    std::map<std::int64_t, std::int64_t> exps_;
};

/// prod_{1 <= g <= N/2} eta_{N,g}(tau)^(r_g) with
/// eta_{N,g} = q^(N B2(g/N)/2) (q^g, q^(N-g); q^N)_inf.
class GenEtaQuotient {
public:
    GenEtaQuotient() = default;

    /// Throws std::invalid_argument when a key is outside [1, N/2].
    GenEtaQuotient(std::int64_t level, std::map<std::int64_t, std::int64_t> exps);

    std::int64_t level() const { return level_; }
    const std::map<std::int64_t, std::int64_t>& exps() const { return exps_; }

    /// sum_g r_g N B2(g/N) / 2
    Rational valuation() const;

    GenEtaQuotient inverse() const;
    GenEtaQuotient pow(std::int64_t k) const;

    /// "geta(12;5)^2*geta(12;1)^-2"
    std::string to_string() const;

    friend GenEtaQuotient operator*(const GenEtaQuotient& a, const GenEtaQuotient& b);
    friend GenEtaQuotient operator/(const GenEtaQuotient& a, const GenEtaQuotient& b);
    friend bool operator==(const GenEtaQuotient&, const GenEtaQuotient&) = default;

private:
    std::int64_t level_ = 1;
    std::map<std::int64_t, std::int64_t> exps_;
};

struct OrderEntry {
    Cusp cusp;
    Rational value;
    /// false: value is only a lower bound.
    bool exact = true;
};

/// Orders of one object at every cusp of Gamma0(level), in cusp_set order.
struct OrderTable {
    std::int64_t level = 1;
    std::string label;
    std::vector<OrderEntry> entries;

    const OrderEntry& at(const Cusp& cusp) const;
    OrderEntry& at(const Cusp& cusp);

    /// Orders of a product: values add, exact only where both are.
    friend OrderTable operator+(const OrderTable& a, const OrderTable& b);
    /// Orders of the reciprocal. Every entry must be exact.
    OrderTable operator-() const;
    OrderTable relabeled(std::string new_label) const;

    friend bool operator==(const OrderTable& a, const OrderTable& b);
};

/// Gosper's Pi_{q^k} = q^(k/4) psi(q^k)^2 = eta(2k tau)^4 / eta(k tau)^2.
EtaQuotient pi_quotient(std::int64_t k);

struct Gamma0Check {
    Rational weight;
    std::int64_t sum_delta = 0;      // sum delta r_delta
    std::int64_t sum_cofactor = 0;   // sum (N/delta) r_delta
    bool delta_condition = false;    // sum_delta = 0 mod 24
    bool cofactor_condition = false; // sum_cofactor = 0 mod 24
    /// D with chi(d) = kronecker(D, d); absent for half-integral weight.
    std::optional<Integer> character_kernel;
    std::string character;

    bool holds() const { return delta_condition && cofactor_condition && character_kernel.has_value(); }
};

Gamma0Check check_gamma0(const EtaQuotient& f);

/// N / (24 d gcd(d, N/d)) * sum_delta gcd(d, delta)^2 r_delta / delta at the
/// cusp a/d, d | N (infinity is d = N). Throws std::invalid_argument with
/// "non-divisor denominator; canonicalize first" when d does not divide N.
Rational eta_order_at_cusp(const EtaQuotient& f, const Cusp& r);

/// Orders at all cusps of Gamma0(level); level defaults to f.level() and must
/// be a multiple of it.
OrderTable eta_order_table(const EtaQuotient& f, std::optional<std::int64_t> level = std::nullopt,
                           std::string label = {});

struct Gamma1Check {
    std::int64_t sum_r = 0;
    std::int64_t sum_gr = 0;
    std::int64_t sum_g2r = 0;
    bool r_condition = false;   // sum r_g = 0 mod 12
    bool gr_condition = false;  // sum g r_g = 0 mod 2
    bool g2r_condition = false; // sum g^2 r_g = 0 mod 2N

    bool holds() const { return r_condition && gr_condition && g2r_condition; }
};

Gamma1Check check_gamma1(const GenEtaQuotient& f);

/// Ord_r f = (M / gcd(c^2, M)) * sum_g r_g gcd(c,N)^2/(2N) P2(a g / gcd(c,N)),
/// where N is the quotient's level and M the level of the cusp table. This
/// is the scaled leading exponent of f at r, not a modular order.
Rational gen_eta_ord(const GenEtaQuotient& f, const Cusp& r, std::optional<std::int64_t> table_level = std::nullopt);

OrderTable gen_eta_order_table(const GenEtaQuotient& f, std::int64_t table_level, std::string label = {});

QSeries expand(const EtaQuotient& f, const Rational& trunc);
QSeries expand(const GenEtaQuotient& f, const Rational& trunc);

/// Ramanujan's f(a, b) at a = sa q^ea, b = sb q^eb via the bilateral sum.
/// Requires ea + eb > 0.
QSeries theta_f(int sa, const Rational& ea, int sb, const Rational& eb, const Rational& trunc);

/// The same function through the Jacobi triple product (-a, -b, ab; ab)_inf.
/// Requires ea > 0 and eb > 0.
QSeries theta_product(int sa, const Rational& ea, int sb, const Rational& eb, const Rational& trunc);

/// Exact leading exponent of theta_f(sa, ea, sb, eb).
Rational theta_valuation(int sa, const Rational& ea, int sb, const Rational& eb);

struct BaileyPair {
    QSeries lhs;
    QSeries rhs;
};

/// Both sides of the bilateral Lambert/theta summation with q -> q^L,
/// b = q^(L/2), a = q^j:
///   sum_n [F(q^(Ln+j)) - F(q^(Ln+L/2))],  F(x) = x/(1-x)^2,
///   q^j (q^L;q^L)^6 f(-q^(L/2+j), -q^(L/2-j))^2 / (f(-q^j, -q^(L-j))^2 f(-q^(L/2), -q^(L/2))^2).
/// L must be even and positive, 0 < j < L, j != L/2.
BaileyPair bailey_pair(std::int64_t L, std::int64_t j, const Rational& trunc);

}  // namespace qeta
