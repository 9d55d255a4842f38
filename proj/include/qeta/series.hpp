#pragma once

// Truncated Laurent-Puiseux series over exact rationals.
//
// A QSeries lives on the exponent grid (1/M)Z. It stores the coefficients of
// q^(k/M) for finitely many k and knows them exactly for every k < T, where T
// is the truncation in grid steps ("f + O(q^(T/M))"). A series without a
// truncation is exact everywhere (a Laurent polynomial). Absent keys below the
// truncation are zero; queries at or beyond it throw.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qeta/rational.hpp"

namespace qeta {

class SeriesError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class QSeries {
public:
    using Key = std::int64_t;

    struct Term {
        Key key;
        Rational coeff;
    };

    /// The exact zero series.
    QSeries() = default;

    /// O(q^trunc) with no known nonzero terms.
    static QSeries zero(const Rational& trunc);
    static QSeries constant(const Rational& c);
    static QSeries monomial(const Rational& c, const Rational& exponent);

    /// Terms may come in any order and may repeat keys (they are summed).
    /// Keys at or beyond the truncation are rejected.
    static QSeries from_terms(std::int64_t grid, std::optional<Key> trunc, std::vector<Term> terms);

    std::int64_t grid() const { return grid_; }
    std::optional<Key> trunc_steps() const { return trunc_; }
    std::optional<Rational> truncation() const;
    bool is_exact() const { return !trunc_.has_value(); }
    const std::vector<Term>& terms() const { return terms_; }

    /// True when no nonzero coefficient is known (zero to truncation).
    bool is_zero() const { return terms_.empty(); }

    /// Smallest exponent with a nonzero coefficient.
    std::optional<Rational> valuation() const;

    /// (exponent, coefficient) of the leading term. Throws on a zero series.
    std::pair<Rational, Rational> leading() const;

    /// Exact coefficient of q^exponent. Throws SeriesError("beyond truncation").
    Rational coeff(const Rational& exponent) const;

    /// Same series on a finer grid; new_grid must be a multiple of grid().
    QSeries regrid(std::int64_t new_grid) const;

    /// Same series on the coarsest grid compatible with its keys and truncation.
    QSeries normalized() const;

    /// Forgets everything at or above exponent t.
    QSeries truncated(const Rational& t) const;

    /// q^e * f
    QSeries shifted(const Rational& e) const;

    /// f(q^k) for k >= 1.
    QSeries substitute(std::int64_t k) const;

    QSeries scaled(const Rational& c) const;

    QSeries operator-() const;
    QSeries& operator+=(const QSeries& other);
    QSeries& operator-=(const QSeries& other);
    QSeries& operator*=(const QSeries& other);

    /// Canonical equality: same coefficients, same truncation, compared on a
    /// common grid.
    friend bool operator==(const QSeries& a, const QSeries& b);

    /// Renders "q^-1 + 2*q + O(q^4)", eliding after max_terms terms.
    std::string to_string(std::size_t max_terms = 16) const;

private:
    std::int64_t grid_ = 1;
    std::optional<Key> trunc_;
    std::vector<Term> terms_;  // sorted by key, nonzero coefficients, key < trunc_
};

QSeries operator+(const QSeries& a, const QSeries& b);
QSeries operator-(const QSeries& a, const QSeries& b);
QSeries operator*(const QSeries& a, const QSeries& b);
QSeries operator*(const Rational& c, const QSeries& a);

/// Both series carried to a common grid.
std::pair<QSeries, QSeries> unify_grids(const QSeries& a, const QSeries& b);

/// Multiplicative inverse. The input must have a nonzero leading term and
/// either a truncation or a single term. The result is exact below
/// (T - 2v)/M when a is exact below T/M with valuation v/M.
QSeries invert(const QSeries& a);

/// Repeated squaring; k < 0 inverts first.
QSeries int_pow(const QSeries& a, std::int64_t k);

/// Square root with positive leading coefficient. Doubles the grid when the
/// leading exponent is not halvable on the current one.
QSeries sqrt(const QSeries& a);

/// First exponent below the common truncation where a and b differ.
std::optional<std::pair<Rational, Rational>> first_difference(const QSeries& a, const QSeries& b);

/// True when a and b agree on every exponent both know exactly.
bool agree_on_common_window(const QSeries& a, const QSeries& b);

// ---------------------------------------------------------------------------
// Primitive builders. Each is exact below `trunc`.

/// (q^a; q^b)_inf for a, b > 0.
QSeries qpochhammer(const Rational& a, const Rational& b, const Rational& trunc);

/// prod_{n>=0} (1 - s * t^n * q^(a + n b)) with signs s, t in {-1, +1}.
QSeries signed_qpochhammer(int s, const Rational& a, int t, const Rational& b, const Rational& trunc);

/// eta(delta * tau) = q^(delta/24) (q^delta; q^delta)_inf, via Euler's
/// pentagonal number theorem.
QSeries eta_series(std::int64_t delta, const Rational& trunc);

/// (q^delta; q^delta)_inf alone, pentagonal expansion.
QSeries euler_product(std::int64_t delta, const Rational& trunc);

/// sum_{n>=1} q^(kn) / (1 - q^(kn))^2 = sum_n sigma(n) q^(kn).
QSeries lambert_sigma(std::int64_t k, const Rational& trunc);

/// sum_{n>=1} q^(kn-j) / (1 - q^(kn-j))^2 for 0 < j < k.
QSeries lambert_ap(std::int64_t k, std::int64_t j, const Rational& trunc);

/// One factor of a product of powers. `build(t)` must return the factor
/// exact below t; `valuation` is its exact leading exponent.
struct PowerFactor {
    std::function<QSeries(const Rational&)> build;
    std::int64_t power = 1;
    Rational valuation;
};

/// prod_i build_i^power_i, exact below trunc. Each factor is requested only
/// to the depth its share of the product needs.
QSeries product_of_powers(std::span<const PowerFactor> factors, const Rational& trunc);

}  // namespace qeta
