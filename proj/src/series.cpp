#include "qeta/series.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace qeta {

namespace {

using Key = QSeries::Key;

// Grid steps k with k/M < t, i.e. the truncation that represents "exact below t".
Key steps_below(const Rational& t, std::int64_t grid)
{
    return to_int64(ceil(t * Rational(grid)));
}

Key key_of(const Rational& exponent, std::int64_t grid)
{
    Rational k = exponent * Rational(grid);
    if (!is_integer(k)) {
        throw SeriesError("exponent " + to_string(exponent) + " is not on grid 1/" + std::to_string(grid));
    }
    return to_int64(k.get_num());
}

std::int64_t grid_for(std::initializer_list<Rational> values)
{
    std::int64_t m = 1;
    for (const auto& v : values) {
        m = lcm64(m, to_int64(v.get_den()));
    }
    return m;
}

std::optional<Key> min_trunc(std::optional<Key> a, std::optional<Key> b)
{
    if (!a) {
        return b;
    }
    if (!b) {
        return a;
    }
    return std::min(*a, *b);
}

// Integer image of a coefficient list: coeff_i = values_i / denom.
struct IntegerImage {
    std::vector<Integer> values;
    Integer denom;
};

IntegerImage integer_image(const std::vector<QSeries::Term>& terms)
{
    Integer d = 1;
    for (const auto& t : terms) {
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
    IntegerImage img;
    img.denom = d;
    img.values.reserve(terms.size());
    for (const auto& t : terms) {
        Integer v = t.coeff.get_num() * (d / t.coeff.get_den());
        img.values.push_back(std::move(v));
    }
    return img;
}

// gcd of (key - first key) over all terms; 0 for a single term.
Key stride_of(const std::vector<QSeries::Term>& terms)
{
    Key s = 0;
    for (const auto& t : terms) {
        s = std::gcd(s, t.key - terms.front().key);
    }
    return s;
}

std::string exponent_text(const Rational& e)
{
    if (is_integer(e)) {
        return to_string(e);
    }
    return "(" + to_string(e) + ")";
}

}  // namespace

QSeries QSeries::zero(const Rational& trunc)
{
    QSeries s;
    s.grid_ = to_int64(trunc.get_den());
    s.trunc_ = to_int64(trunc.get_num());
    return s;
}

QSeries QSeries::constant(const Rational& c) { return monomial(c, Rational(0)); }

QSeries QSeries::monomial(const Rational& c, const Rational& exponent)
{
    QSeries s;
    s.grid_ = to_int64(exponent.get_den());
    if (sgn(c) != 0) {
        s.terms_.push_back({to_int64(exponent.get_num()), c});
    }
    return s;
}

QSeries QSeries::from_terms(std::int64_t grid, std::optional<Key> trunc, std::vector<Term> terms)
{
    if (grid <= 0) {
        throw SeriesError("grid must be positive");
    }
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.key < b.key; });
    QSeries s;
    s.grid_ = grid;
    s.trunc_ = trunc;
    for (auto& t : terms) {
        if (trunc && t.key >= *trunc) {
            throw SeriesError("term at key " + std::to_string(t.key) + " lies beyond truncation");
        }
        if (!s.terms_.empty() && s.terms_.back().key == t.key) {
            s.terms_.back().coeff += t.coeff;
        } else {
            s.terms_.push_back(std::move(t));
        }
    }
    std::erase_if(s.terms_, [](const Term& t) { return sgn(t.coeff) == 0; });
    return s;
}

std::optional<Rational> QSeries::truncation() const
{
    if (!trunc_) {
        return std::nullopt;
    }
    return make_rational(*trunc_, grid_);
}

std::optional<Rational> QSeries::valuation() const
{
    if (terms_.empty()) {
        return std::nullopt;
    }
    return make_rational(terms_.front().key, grid_);
}

std::pair<Rational, Rational> QSeries::leading() const
{
    if (terms_.empty()) {
        throw SeriesError("leading term of a series that is zero to its truncation");
    }
    return {make_rational(terms_.front().key, grid_), terms_.front().coeff};
}

Rational QSeries::coeff(const Rational& exponent) const
{
    Rational scaled = exponent * Rational(grid_);
    if (trunc_ && scaled >= Rational(*trunc_)) {
        throw SeriesError("beyond truncation: q^" + qeta::to_string(exponent) + " requested, series known below q^" +
                          qeta::to_string(*truncation()));
    }
    if (!is_integer(scaled)) {
        return Rational(0);
    }
    const Key k = to_int64(scaled.get_num());
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k, [](const Term& t, Key key) { return t.key < key; });
    if (it != terms_.end() && it->key == k) {
        return it->coeff;
    }
    return Rational(0);
}

QSeries QSeries::regrid(std::int64_t new_grid) const
{
    if (new_grid <= 0 || new_grid % grid_ != 0) {
        throw SeriesError("regrid target " + std::to_string(new_grid) + " is not a multiple of " + std::to_string(grid_));
    }
    const std::int64_t f = new_grid / grid_;
    QSeries s;
    s.grid_ = new_grid;
    if (trunc_) {
        s.trunc_ = *trunc_ * f;
    }
    s.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        s.terms_.push_back({t.key * f, t.coeff});
    }
    return s;
}

QSeries QSeries::normalized() const
{
    std::int64_t g = grid_;
    if (trunc_) {
        g = std::gcd(g, *trunc_);
    }
    for (const auto& t : terms_) {
        if (g == 1) {
            break;
        }
        g = std::gcd(g, t.key);
    }
    if (g <= 1) {
        return *this;
    }
    QSeries s;
    s.grid_ = grid_ / g;
    if (trunc_) {
        s.trunc_ = *trunc_ / g;
    }
    s.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        s.terms_.push_back({t.key / g, t.coeff});
    }
    return s;
}

QSeries QSeries::truncated(const Rational& t) const
{
    const std::int64_t m = lcm64(grid_, to_int64(t.get_den()));
    QSeries s = regrid(m);
    const Key cut = steps_below(t, m);
    if (!s.trunc_ || cut < *s.trunc_) {
        s.trunc_ = cut;
        std::erase_if(s.terms_, [cut](const Term& term) { return term.key >= cut; });
    }
    return s.normalized();
}

QSeries QSeries::shifted(const Rational& e) const
{
    const std::int64_t m = lcm64(grid_, to_int64(e.get_den()));
    QSeries s = regrid(m);
    const Key d = key_of(e, m);
    for (auto& t : s.terms_) {
        t.key += d;
    }
    if (s.trunc_) {
        *s.trunc_ += d;
    }
    return s.normalized();
}

QSeries QSeries::substitute(std::int64_t k) const
{
    if (k < 1) {
        throw SeriesError("substitution q -> q^k needs k >= 1");
    }
    QSeries s = *this;
    for (auto& t : s.terms_) {
        t.key *= k;
    }
    if (s.trunc_) {
        *s.trunc_ *= k;
    }
    return s;
}

QSeries QSeries::scaled(const Rational& c) const
{
    if (sgn(c) == 0) {
        QSeries z;
        z.grid_ = grid_;
        z.trunc_ = trunc_;
        return z;
    }
    QSeries s = *this;
    for (auto& t : s.terms_) {
        t.coeff *= c;
    }
    return s;
}

QSeries QSeries::operator-() const { return scaled(Rational(-1)); }

std::pair<QSeries, QSeries> unify_grids(const QSeries& a, const QSeries& b)
{
    const std::int64_t m = lcm64(a.grid(), b.grid());
    return {a.regrid(m), b.regrid(m)};
}

QSeries& QSeries::operator+=(const QSeries& other)
{
    auto [a, b] = unify_grids(*this, other);
    const auto trunc = min_trunc(a.trunc_, b.trunc_);
    std::vector<Term> merged;
    merged.reserve(a.terms_.size() + b.terms_.size());
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    auto below = [&](Key k) { return !trunc || k < *trunc; };
    while (ia != a.terms_.end() || ib != b.terms_.end()) {
        Term t;
        if (ib == b.terms_.end() || (ia != a.terms_.end() && ia->key < ib->key)) {
            t = *ia++;
        } else if (ia == a.terms_.end() || ib->key < ia->key) {
            t = *ib++;
        } else {
            t = {ia->key, ia->coeff + ib->coeff};
            ++ia;
            ++ib;
        }
        if (below(t.key) && sgn(t.coeff) != 0) {
            merged.push_back(std::move(t));
        }
    }
    grid_ = a.grid_;
    trunc_ = trunc;
    terms_ = std::move(merged);
    *this = normalized();
    return *this;
}

QSeries& QSeries::operator-=(const QSeries& other) { return *this += -other; }

QSeries& QSeries::operator*=(const QSeries& other)
{
    *this = *this * other;
    return *this;
}

QSeries operator+(const QSeries& a, const QSeries& b)
{
    QSeries r = a;
    r += b;
    return r;
}

QSeries operator-(const QSeries& a, const QSeries& b)
{
    QSeries r = a;
    r -= b;
    return r;
}

QSeries operator*(const Rational& c, const QSeries& a) { return a.scaled(c); }

QSeries operator*(const QSeries& lhs, const QSeries& rhs)
{
    // Exact zero annihilates even truncated factors.
    if ((lhs.is_exact() && lhs.is_zero()) || (rhs.is_exact() && rhs.is_zero())) {
        return QSeries();
    }
    auto [a, b] = unify_grids(lhs, rhs);
    const std::int64_t m = a.grid();
    const auto& ta = a.terms();
    const auto& tb = b.terms();

    if (ta.empty() || tb.empty()) {
        // At least one side is O(q^T) with nothing known below T.
        Key t;
        if (ta.empty() && tb.empty()) {
            t = *a.trunc_steps() + *b.trunc_steps();
        } else if (ta.empty()) {
            t = *a.trunc_steps() + tb.front().key;
        } else {
            t = *b.trunc_steps() + ta.front().key;
        }
        return QSeries::from_terms(m, t, {}).normalized();
    }

    const Key va = ta.front().key;
    const Key vb = tb.front().key;
    std::optional<Key> trunc;
    if (a.trunc_steps()) {
        trunc = *a.trunc_steps() + vb;
    }
    if (b.trunc_steps()) {
        trunc = min_trunc(trunc, *b.trunc_steps() + va);
    }

    Key stride = std::gcd(stride_of(ta), stride_of(tb));
    if (stride == 0) {
        stride = 1;
    }
    const Key base = va + vb;
    const Key top = trunc ? *trunc - 1 : ta.back().key + tb.back().key;
    if (top < base) {
        return QSeries::from_terms(m, trunc, {}).normalized();
    }
    const auto slots = static_cast<std::size_t>((top - base) / stride + 1);

    const IntegerImage ia = integer_image(ta);
    const IntegerImage ib = integer_image(tb);
    std::vector<Integer> acc(slots);
    for (std::size_t i = 0; i < ta.size(); ++i) {
        const Key ka = ta[i].key;
        if (ka + vb > top) {
            break;
        }
        for (std::size_t j = 0; j < tb.size(); ++j) {
            const Key k = ka + tb[j].key;
            if (k > top) {
                break;
            }
            const auto slot = static_cast<std::size_t>((k - base) / stride);
            mpz_addmul(acc[slot].get_mpz_t(), ia.values[i].get_mpz_t(), ib.values[j].get_mpz_t());
        }
    }

    const Integer denom = ia.denom * ib.denom;
    std::vector<QSeries::Term> out;
    for (std::size_t s = 0; s < slots; ++s) {
        if (sgn(acc[s]) != 0) {
            out.push_back({base + static_cast<Key>(s) * stride, make_rational(acc[s], denom)});
        }
    }
    return QSeries::from_terms(m, trunc, std::move(out)).normalized();
}

bool operator==(const QSeries& lhs, const QSeries& rhs)
{
    auto [a, b] = unify_grids(lhs, rhs);
    if (a.trunc_steps() != b.trunc_steps() || a.terms().size() != b.terms().size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.terms().size(); ++i) {
        if (a.terms()[i].key != b.terms()[i].key || a.terms()[i].coeff != b.terms()[i].coeff) {
            return false;
        }
    }
    return true;
}

std::string QSeries::to_string(std::size_t max_terms) const
{
    std::ostringstream os;
    std::size_t shown = 0;
    for (const auto& t : terms_) {
        if (shown == max_terms) {
            os << " + ...";
            break;
        }
        const Rational e = make_rational(t.key, grid_);
        Rational c = t.coeff;
        if (shown > 0) {
            os << (sgn(c) < 0 ? " - " : " + ");
            c = abs(c);
        } else if (sgn(c) < 0 && sgn(e) != 0 && c == -1) {
            os << "-";
            c = 1;
        }
        if (sgn(e) == 0) {
            os << qeta::to_string(c);
        } else {
            if (c != 1) {
                os << qeta::to_string(c) << "*";
            }
            os << "q";
            if (e != 1) {
                os << "^" << exponent_text(e);
            }
        }
        ++shown;
    }
    if (trunc_) {
        os << (shown > 0 ? " + " : "") << "O(q^" << exponent_text(*truncation()) << ")";
    } else if (shown == 0) {
        os << "0";
    }
    return os.str();
}

QSeries invert(const QSeries& a)
{
    if (a.is_zero()) {
        throw SeriesError("non-invertible series");
    }
    const auto& terms = a.terms();
    const Key v = terms.front().key;
    const std::int64_t m = a.grid();
    if (a.is_exact()) {
        if (terms.size() != 1) {
            throw SeriesError("inverse of an exact multi-term series needs a truncation");
        }
        return QSeries::from_terms(m, std::nullopt, {{-v, 1 / terms.front().coeff}});
    }

    const Key rel_trunc = *a.trunc_steps() - v;  // relative keys known below this
    Key stride = stride_of(terms);
    if (stride == 0) {
        stride = 1;
    }
    const auto len = static_cast<std::size_t>((rel_trunc + stride - 1) / stride);

    // u_i: coefficient of relative index i (relative key i * stride).
    std::vector<std::pair<std::size_t, QSeries::Term const*>> sparse;
    for (const auto& t : terms) {
        sparse.emplace_back(static_cast<std::size_t>((t.key - v) / stride), &t);
    }

    const Rational& u0 = terms.front().coeff;
    bool integral = (u0 == 1 || u0 == -1);
    for (const auto& t : terms) {
        integral = integral && t.coeff.get_den() == 1;
    }

    std::vector<QSeries::Term> out;
    out.reserve(len);
    if (integral) {
        const int s0 = sgn(u0);
        std::vector<Integer> b(len);
        for (std::size_t n = 0; n < len; ++n) {
            Integer acc = (n == 0) ? Integer(1) : Integer(0);
            for (std::size_t p = 1; p < sparse.size() && sparse[p].first <= n; ++p) {
                mpz_submul(acc.get_mpz_t(), sparse[p].second->coeff.get_num_mpz_t(), b[n - sparse[p].first].get_mpz_t());
            }
            b[n] = (s0 > 0) ? acc : Integer(-acc);
            if (sgn(b[n]) != 0) {
                out.push_back({-v + static_cast<Key>(n) * stride, Rational(b[n])});
            }
        }
    } else {
        const Rational inv0 = 1 / u0;
        std::vector<Rational> b(len);
        for (std::size_t n = 0; n < len; ++n) {
            Rational acc = (n == 0) ? Rational(1) : Rational(0);
            for (std::size_t p = 1; p < sparse.size() && sparse[p].first <= n; ++p) {
                acc -= sparse[p].second->coeff * b[n - sparse[p].first];
            }
            b[n] = acc * inv0;
            if (sgn(b[n]) != 0) {
                out.push_back({-v + static_cast<Key>(n) * stride, b[n]});
            }
        }
    }
    return QSeries::from_terms(m, -v + rel_trunc, std::move(out)).normalized();
}

QSeries int_pow(const QSeries& a, std::int64_t k)
{
    if (k == 0) {
        return QSeries::constant(Rational(1));
    }
    QSeries base = (k < 0) ? invert(a) : a;
    std::uint64_t e = (k < 0) ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
    QSeries result = QSeries::constant(Rational(1));
    bool first = true;
    while (e > 0) {
        if (e & 1U) {
            result = first ? base : result * base;
            first = false;
        }
        e >>= 1U;
        if (e > 0) {
            base = base * base;
        }
    }
    return result;
}

QSeries sqrt(const QSeries& a)
{
    if (a.is_zero()) {
        if (a.is_exact()) {
            return a;
        }
        throw SeriesError("square root of a series that is zero to its truncation");
    }
    const auto lead = a.terms().front().coeff;
    const auto root0 = rational_sqrt(lead);
    if (!root0) {
        throw SeriesError("non-square leading term");
    }
    QSeries w = a;
    if (w.terms().front().key % 2 != 0) {
        w = w.regrid(2 * w.grid());
    }
    const std::int64_t m = w.grid();
    const auto& terms = w.terms();
    const Key v = terms.front().key;
    if (w.is_exact()) {
        if (terms.size() == 1) {
            return QSeries::from_terms(m, std::nullopt, {{v / 2, *root0}}).normalized();
        }
        // A Laurent polynomial has an exact root only if it is a perfect
        // square; the root then ends at half the top key.
        const Key top = terms.back().key;
        const QSeries approx = sqrt(QSeries::from_terms(m, top + 1, terms)).regrid(m);
        std::vector<QSeries::Term> kept;
        for (const auto& t : approx.terms()) {
            if (2 * t.key <= top) {
                kept.push_back(t);
            }
        }
        QSeries root = QSeries::from_terms(m, std::nullopt, std::move(kept));
        if (top % 2 != 0 || !(root * root == w)) {
            throw SeriesError("square root of an exact series that is not a perfect square needs a truncation");
        }
        return root.normalized();
    }

    const Key rel_trunc = *w.trunc_steps() - v;
    Key stride = stride_of(terms);
    if (stride == 0) {
        stride = 1;
    }
    const auto len = static_cast<std::size_t>((rel_trunc + stride - 1) / stride);
    std::vector<Rational> u(len);
    for (const auto& t : terms) {
        u[static_cast<std::size_t>((t.key - v) / stride)] = t.coeff;
    }
    std::vector<Rational> b(len);
    std::vector<std::size_t> nonzero;  // indices i >= 1 with b_i != 0
    const Rational half_inv = 1 / (2 * *root0);
    std::vector<QSeries::Term> out;
    b[0] = *root0;
    out.push_back({v / 2, b[0]});
    for (std::size_t n = 1; n < len; ++n) {
        Rational acc = u[n];
        for (std::size_t i : nonzero) {
            if (i >= n) {
                break;
            }
            if (sgn(b[n - i]) != 0) {
                acc -= b[i] * b[n - i];
            }
        }
        b[n] = acc * half_inv;
        if (sgn(b[n]) != 0) {
            nonzero.push_back(n);
            out.push_back({v / 2 + static_cast<Key>(n) * stride, b[n]});
        }
    }
    return QSeries::from_terms(m, v / 2 + rel_trunc, std::move(out)).normalized();
}

std::optional<std::pair<Rational, Rational>> first_difference(const QSeries& a, const QSeries& b)
{
    const QSeries d = a - b;
    if (d.is_zero()) {
        return std::nullopt;
    }
    return d.leading();
}

bool agree_on_common_window(const QSeries& a, const QSeries& b) { return !first_difference(a, b).has_value(); }

// ---------------------------------------------------------------------------

QSeries signed_qpochhammer(int s, const Rational& a, int t, const Rational& b, const Rational& trunc)
{
    if (sgn(a) <= 0 || sgn(b) <= 0) {
        throw SeriesError("q-Pochhammer parameters must be positive (got a=" + to_string(a) + ", b=" + to_string(b) + ")");
    }
    if ((s != 1 && s != -1) || (t != 1 && t != -1)) {
        throw SeriesError("q-Pochhammer signs must be +1 or -1");
    }
    const std::int64_t m = grid_for({a, b, trunc});
    const Key trunc_steps = steps_below(trunc, m);
    if (trunc_steps <= 0) {
        return QSeries::from_terms(m, trunc_steps, {});
    }
    const Key ka = key_of(a, m);
    const Key kb = key_of(b, m);
    std::vector<Integer> c(static_cast<std::size_t>(trunc_steps));
    c[0] = 1;
    int sign = s;  // s * t^n
    for (Key e = ka; e < trunc_steps; e += kb) {
        // multiply by (1 - sign * q^e)
        for (Key k = trunc_steps - 1; k >= e; --k) {
            auto& dst = c[static_cast<std::size_t>(k)];
            const auto& src = c[static_cast<std::size_t>(k - e)];
            if (sign > 0) {
                dst -= src;
            } else {
                dst += src;
            }
        }
        sign *= t;
    }
    std::vector<QSeries::Term> out;
    for (Key k = 0; k < trunc_steps; ++k) {
        if (sgn(c[static_cast<std::size_t>(k)]) != 0) {
            out.push_back({k, Rational(c[static_cast<std::size_t>(k)])});
        }
    }
    return QSeries::from_terms(m, trunc_steps, std::move(out)).normalized();
}

QSeries qpochhammer(const Rational& a, const Rational& b, const Rational& trunc)
{
    return signed_qpochhammer(1, a, 1, b, trunc);
}

QSeries euler_product(std::int64_t delta, const Rational& trunc)
{
    if (delta < 1) {
        throw SeriesError("eta argument must be >= 1");
    }
    const std::int64_t m = to_int64(trunc.get_den());
    const Key trunc_steps = steps_below(trunc, m);
    std::vector<QSeries::Term> out;
    // sum_k (-1)^k q^(delta * k(3k-1)/2), k over all integers
    for (Key k = 0;; ++k) {
        bool any = false;
        const std::vector<Key> ks = k == 0 ? std::vector<Key>{0} : std::vector<Key>{k, -k};
        for (Key kk : ks) {
            const Key e = delta * (kk * (3 * kk - 1) / 2) * m;
            if (e < trunc_steps) {
                out.push_back({e, Rational((kk % 2 == 0) ? 1 : -1)});
                any = true;
            }
        }
        if (!any) {
            break;
        }
    }
    return QSeries::from_terms(m, trunc_steps, std::move(out)).normalized();
}

QSeries eta_series(std::int64_t delta, const Rational& trunc)
{
    const Rational prefactor = make_rational(delta, 24);
    return euler_product(delta, trunc - prefactor).shifted(prefactor);
}

QSeries lambert_sigma(std::int64_t k, const Rational& trunc)
{
    if (k < 1) {
        throw SeriesError("lambert_sigma needs k >= 1");
    }
    const std::int64_t m = to_int64(trunc.get_den());
    const Key trunc_steps = steps_below(trunc, m);
    // exponent k*n < trunc  <=>  k*n*m < trunc_steps
    const Key nmax = trunc_steps <= 0 ? 0 : (trunc_steps - 1) / (k * m);
    std::vector<Integer> sigma(static_cast<std::size_t>(nmax + 1));
    for (Key d = 1; d <= nmax; ++d) {
        for (Key n = d; n <= nmax; n += d) {
            sigma[static_cast<std::size_t>(n)] += d;
        }
    }
    std::vector<QSeries::Term> out;
    for (Key n = 1; n <= nmax; ++n) {
        out.push_back({k * n * m, Rational(sigma[static_cast<std::size_t>(n)])});
    }
    return QSeries::from_terms(m, trunc_steps, std::move(out)).normalized();
}

QSeries lambert_ap(std::int64_t k, std::int64_t j, const Rational& trunc)
{
    if (j <= 0 || j >= k) {
        throw SeriesError("lambert_ap needs 0 < j < k");
    }
    const std::int64_t m = to_int64(trunc.get_den());
    const Key trunc_steps = steps_below(trunc, m);
    const Key emax = trunc_steps <= 0 ? 0 : (trunc_steps - 1) / m;  // largest integer exponent < trunc
    std::vector<Integer> c(static_cast<std::size_t>(emax + 1));
    for (Key base = k - j; base <= emax; base += k) {
        for (Key mult = 1; mult * base <= emax; ++mult) {
            c[static_cast<std::size_t>(mult * base)] += mult;
        }
    }
    std::vector<QSeries::Term> out;
    for (Key e = 1; e <= emax; ++e) {
        if (sgn(c[static_cast<std::size_t>(e)]) != 0) {
            out.push_back({e * m, Rational(c[static_cast<std::size_t>(e)])});
        }
    }
    return QSeries::from_terms(m, trunc_steps, std::move(out)).normalized();
}

QSeries product_of_powers(std::span<const PowerFactor> factors, const Rational& trunc)
{
    Rational total(0);
    for (const auto& f : factors) {
        total += Rational(f.power) * f.valuation;
    }
    QSeries result = QSeries::constant(Rational(1));
    for (const auto& f : factors) {
        if (f.power == 0) {
            continue;
        }
        const QSeries base = f.build(trunc - total + f.valuation);
        result = result * int_pow(base, f.power);
    }
    return result;
}

}  // namespace qeta
