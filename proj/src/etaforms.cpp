#include "qeta/etaforms.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace qeta {

namespace {

void drop_zeros(std::map<std::int64_t, std::int64_t>& exps)
{
    std::erase_if(exps, [](const auto& kv) { return kv.second == 0; });
}

std::map<std::int64_t, std::int64_t> merged(std::map<std::int64_t, std::int64_t> a,
                                             const std::map<std::int64_t, std::int64_t>& b, std::int64_t sign)
{
    for (const auto& [k, r] : b) {
        a[k] += sign * r;
    }
    drop_zeros(a);
    return a;
}

std::string power_text(const std::string& base, std::int64_t r)
{
    return r == 1 ? base : base + "^" + std::to_string(r);
}

// Numerator factors first, each group by increasing key.
template <class Name>
std::string product_text(const std::map<std::int64_t, std::int64_t>& exps, Name name)
{
    std::string out;
    for (const bool positive : {true, false}) {
        for (const auto& [key, r] : exps) {
            if ((r > 0) != positive) {
                continue;
            }
            if (!out.empty()) {
                out += "*";
            }
            out += power_text(name(key), r);
        }
    }
    return out;
}

// Trunc key on the grid m for an exponent t that lies on that grid.
QSeries::Key key_on(const Rational& t, std::int64_t m)
{
    const Rational k = t * m;
    if (!is_integer(k)) {
        throw std::logic_error("exponent " + to_string(t) + " is off the grid 1/" + std::to_string(m));
    }
    return to_int64(k.get_num());
}

int sign_power(int s, std::int64_t e)
{
    return (s < 0 && e % 2 != 0) ? -1 : 1;
}

void check_sign(int s)
{
    if (s != 1 && s != -1) {
        throw std::invalid_argument("theta signs must be +1 or -1");
    }
}

}  // namespace

// ---------------------------------------------------------------------------

EtaQuotient::EtaQuotient(std::int64_t level, std::map<std::int64_t, std::int64_t> exps)
    : level_(level), exps_(std::move(exps))
{
    if (level_ < 1) {
        throw std::invalid_argument("level must be >= 1");
    }
    drop_zeros(exps_);
    for (const auto& [delta, r] : exps_) {
        if (delta < 1 || level_ % delta != 0) {
            throw std::invalid_argument("eta(" + std::to_string(delta) + ") does not divide level " +
                                        std::to_string(level_));
        }
    }
}

EtaQuotient EtaQuotient::from_exponents(const std::map<std::int64_t, std::int64_t>& exps)
{
    std::int64_t level = 1;
    for (const auto& [delta, r] : exps) {
        if (delta < 1) {
            throw std::invalid_argument("eta argument must be >= 1");
        }
        if (r != 0) {
            level = lcm64(level, delta);
        }
    }
    return {level, exps};
}

Rational EtaQuotient::weight() const
{
    std::int64_t sum = 0;
    for (const auto& [delta, r] : exps_) {
        sum += r;
    }
    return make_rational(sum, 2);
}

Rational EtaQuotient::valuation() const
{
    std::int64_t sum = 0;
    for (const auto& [delta, r] : exps_) {
        sum += delta * r;
    }
    return make_rational(sum, 24);
}

EtaQuotient EtaQuotient::lifted(std::int64_t level) const
{
    if (level < 1 || level % level_ != 0) {
        throw std::invalid_argument("cannot lift level " + std::to_string(level_) + " to " + std::to_string(level));
    }
    return {level, exps_};
}

EtaQuotient EtaQuotient::inverse() const { return pow(-1); }

EtaQuotient EtaQuotient::pow(std::int64_t k) const
{
    auto exps = exps_;
    for (auto& [delta, r] : exps) {
        r *= k;
    }
    return {level_, exps};
}

std::string EtaQuotient::to_string() const
{
    if (exps_.empty()) {
        return "1";
    }
    return product_text(exps_, [](std::int64_t delta) { return "eta(" + std::to_string(delta) + ")"; });
}

EtaQuotient operator*(const EtaQuotient& a, const EtaQuotient& b)
{
    return {lcm64(a.level_, b.level_), merged(a.exps_, b.exps_, 1)};
}

EtaQuotient operator/(const EtaQuotient& a, const EtaQuotient& b)
{
    return {lcm64(a.level_, b.level_), merged(a.exps_, b.exps_, -1)};
}

// ---------------------------------------------------------------------------

GenEtaQuotient::GenEtaQuotient(std::int64_t level, std::map<std::int64_t, std::int64_t> exps)
    : level_(level), exps_(std::move(exps))
{
    if (level_ < 2) {
        throw std::invalid_argument("generalized eta level must be >= 2");
    }
    drop_zeros(exps_);
    for (const auto& [g, r] : exps_) {
        if (g < 1 || 2 * g > level_) {
            throw std::invalid_argument("geta(" + std::to_string(level_) + ";" + std::to_string(g) +
                                        ") needs 1 <= g <= N/2");
        }
    }
}

Rational GenEtaQuotient::valuation() const
{
    Rational sum(0);
    for (const auto& [g, r] : exps_) {
        sum += Rational(r) * level_ * bernoulli2(make_rational(g, level_), false) / 2;
    }
    return sum;
}

GenEtaQuotient GenEtaQuotient::inverse() const
{
    auto exps = exps_;
    for (auto& [g, r] : exps) {
        r = -r;
    }
    return {level_, exps};
}

GenEtaQuotient GenEtaQuotient::pow(std::int64_t k) const
{
    auto exps = exps_;
    for (auto& [g, r] : exps) {
        r *= k;
    }
    return {level_, exps};
}

std::string GenEtaQuotient::to_string() const
{
    if (exps_.empty()) {
        return "1";
    }
    return product_text(exps_, [this](std::int64_t g) {
        return "geta(" + std::to_string(level_) + ";" + std::to_string(g) + ")";
    });
}

GenEtaQuotient operator*(const GenEtaQuotient& a, const GenEtaQuotient& b)
{
    if (a.level_ != b.level_) {
        throw std::invalid_argument("generalized eta-quotients of different levels");
    }
    return {a.level_, merged(a.exps_, b.exps_, 1)};
}

GenEtaQuotient operator/(const GenEtaQuotient& a, const GenEtaQuotient& b)
{
    if (a.level_ != b.level_) {
        throw std::invalid_argument("generalized eta-quotients of different levels");
    }
    return {a.level_, merged(a.exps_, b.exps_, -1)};
}

// ---------------------------------------------------------------------------

const OrderEntry& OrderTable::at(const Cusp& cusp) const
{
    for (const auto& e : entries) {
        if (e.cusp == cusp) {
            return e;
        }
    }
    throw std::out_of_range("cusp " + cusp.to_string() + " not in the table of level " + std::to_string(level));
}

OrderEntry& OrderTable::at(const Cusp& cusp)
{
    return const_cast<OrderEntry&>(std::as_const(*this).at(cusp));
}

OrderTable operator+(const OrderTable& a, const OrderTable& b)
{
    if (a.level != b.level || a.entries.size() != b.entries.size()) {
        throw std::invalid_argument("order tables of different levels");
    }
    OrderTable out;
    out.level = a.level;
    out.label = a.label + "*" + b.label;
    for (const auto& e : a.entries) {
        const auto& other = b.at(e.cusp);
        out.entries.push_back({e.cusp, e.value + other.value, e.exact && other.exact});
    }
    return out;
}

OrderTable OrderTable::operator-() const
{
    OrderTable out = *this;
    out.label = "1/" + label;
    for (auto& e : out.entries) {
        if (!e.exact) {
            throw std::invalid_argument("reciprocal of a lower bound at cusp " + e.cusp.to_string());
        }
        e.value = -e.value;
    }
    return out;
}

OrderTable OrderTable::relabeled(std::string new_label) const
{
    OrderTable out = *this;
    out.label = std::move(new_label);
    return out;
}

bool operator==(const OrderTable& a, const OrderTable& b)
{
    if (a.level != b.level || a.entries.size() != b.entries.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        const auto& x = a.entries[i];
        const auto& y = b.entries[i];
        if (!(x.cusp == y.cusp) || x.value != y.value || x.exact != y.exact) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------

EtaQuotient pi_quotient(std::int64_t k)
{
    if (k < 1) {
        throw std::invalid_argument("Pi needs k >= 1");
    }
    return {2 * k, {{2 * k, 4}, {k, -2}}};
}

Gamma0Check check_gamma0(const EtaQuotient& f)
{
    Gamma0Check out;
    const std::int64_t n = f.level();
    out.weight = f.weight();
    Rational s(1);
    for (const auto& [delta, r] : f.exps()) {
        out.sum_delta += delta * r;
        out.sum_cofactor += (n / delta) * r;
        Integer p;
        mpz_pow_ui(p.get_mpz_t(), Integer(delta).get_mpz_t(), static_cast<unsigned long>(r < 0 ? -r : r));
        s *= r < 0 ? Rational(1) / Rational(p) : Rational(p);
    }
    out.delta_condition = out.sum_delta % 24 == 0;
    out.cofactor_condition = out.sum_cofactor % 24 == 0;
    if (is_integer(out.weight)) {
        const bool odd = to_int64(out.weight.get_num()) % 2 != 0;
        const Integer kernel = squarefree_kernel(odd ? Rational(-s) : s);
        out.character_kernel = kernel;
        out.character = kernel == 1 ? "trivial" : "(" + to_string(kernel) + "/.)";
    } else {
        out.character = "half-integral weight";
    }
    return out;
}

Rational eta_order_at_cusp(const EtaQuotient& f, const Cusp& r)
{
    const std::int64_t n = f.level();
    const std::int64_t d = r.is_infinity() ? n : r.c;
    if (d < 1 || n % d != 0) {
        throw std::invalid_argument("non-divisor denominator; canonicalize first");
    }
    Rational sum(0);
    for (const auto& [delta, rd] : f.exps()) {
        const std::int64_t g = std::gcd(d, delta);
        sum += make_rational(g * g * rd, delta);
    }
    return sum * make_rational(n, 24 * d * std::gcd(d, n / d));
}

OrderTable eta_order_table(const EtaQuotient& f, std::optional<std::int64_t> level, std::string label)
{
    const EtaQuotient lifted = f.lifted(level.value_or(f.level()));
    OrderTable out;
    out.level = lifted.level();
    out.label = label.empty() ? f.to_string() : std::move(label);
    for (const auto& e : cusp_set(out.level).entries) {
        out.entries.push_back({e.cusp, eta_order_at_cusp(lifted, e.cusp), true});
    }
    return out;
}

Gamma1Check check_gamma1(const GenEtaQuotient& f)
{
    Gamma1Check out;
    for (const auto& [g, r] : f.exps()) {
        out.sum_r += r;
        out.sum_gr += g * r;
        out.sum_g2r += g * g * r;
    }
    out.r_condition = out.sum_r % 12 == 0;
    out.gr_condition = out.sum_gr % 2 == 0;
    out.g2r_condition = out.sum_g2r % (2 * f.level()) == 0;
    return out;
}

Rational gen_eta_ord(const GenEtaQuotient& f, const Cusp& r, std::optional<std::int64_t> table_level)
{
    const std::int64_t n = f.level();
    const std::int64_t m = table_level.value_or(n);
    const std::int64_t c = r.is_infinity() ? 0 : r.c;
    const std::int64_t a = r.is_infinity() ? 1 : r.a;
    const std::int64_t gc = std::gcd(c, n);
    Rational sum(0);
    for (const auto& [g, rg] : f.exps()) {
        sum += Rational(rg) * make_rational(gc * gc, 2 * n) * bernoulli2(make_rational(a * g, gc), true);
    }
    const Integer c2 = Integer(c) * c;
    Integer g2;
    mpz_gcd(g2.get_mpz_t(), c2.get_mpz_t(), Integer(m).get_mpz_t());
    return sum * Rational(Rational(Integer(m)) / Rational(g2));
}

OrderTable gen_eta_order_table(const GenEtaQuotient& f, std::int64_t table_level, std::string label)
{
    OrderTable out;
    out.level = table_level;
    out.label = label.empty() ? f.to_string() : std::move(label);
    for (const auto& e : cusp_set(table_level).entries) {
        out.entries.push_back({e.cusp, gen_eta_ord(f, e.cusp, table_level), true});
    }
    return out;
}

// ---------------------------------------------------------------------------

QSeries expand(const EtaQuotient& f, const Rational& trunc)
{
    std::vector<PowerFactor> factors;
    for (const auto& [delta, r] : f.exps()) {
        factors.push_back({[delta = delta](const Rational& t) { return euler_product(delta, t); }, r, Rational(0)});
    }
    const Rational v = f.valuation();
    return product_of_powers(factors, trunc - v).shifted(v);
}

QSeries expand(const GenEtaQuotient& f, const Rational& trunc)
{
    const std::int64_t n = f.level();
    std::vector<PowerFactor> factors;
    for (const auto& [g, r] : f.exps()) {
        factors.push_back({[g = g, n](const Rational& t) {
                               return qpochhammer(Rational(g), Rational(n), t) *
                                      qpochhammer(Rational(n - g), Rational(n), t);
                           },
                           r, Rational(0)});
    }
    const Rational v = f.valuation();
    return product_of_powers(factors, trunc - v).shifted(v);
}

QSeries theta_f(int sa, const Rational& ea, int sb, const Rational& eb, const Rational& trunc)
{
    check_sign(sa);
    check_sign(sb);
    const Rational step = ea + eb;
    if (sgn(step) <= 0) {
        throw std::invalid_argument("divergent theta parameters: theta_f needs ea + eb > 0");
    }
    const std::int64_t m = lcm64(lcm64(to_int64(ea.get_den()), to_int64(eb.get_den())), to_int64(trunc.get_den()));
    const QSeries::Key trunc_key = key_on(trunc, m);
    // e(n) = step/2 n^2 + (ea - eb)/2 n, minimal near n = -(ea - eb) / (2 step)
    const Rational vertex = -(ea - eb) / (2 * step);
    std::vector<QSeries::Term> out;
    auto visit = [&](std::int64_t n) {
        const std::int64_t up = n * (n + 1) / 2;
        const std::int64_t down = n * (n - 1) / 2;
        const Rational e = ea * up + eb * down;
        const QSeries::Key k = key_on(e, m);
        if (k < trunc_key) {
            out.push_back({k, Rational(sign_power(sa, up) * sign_power(sb, down))});
            return true;
        }
        return false;
    };
    const std::int64_t start = to_int64(floor(vertex));
    for (std::int64_t n = start + 1;; ++n) {
        if (!visit(n) && Rational(n) > vertex) {
            break;
        }
    }
    for (std::int64_t n = start;; --n) {
        if (!visit(n) && Rational(n) < vertex) {
            break;
        }
    }
    return QSeries::from_terms(m, trunc_key, std::move(out)).normalized();
}

QSeries theta_product(int sa, const Rational& ea, int sb, const Rational& eb, const Rational& trunc)
{
    check_sign(sa);
    check_sign(sb);
    if (sgn(ea) <= 0 || sgn(eb) <= 0) {
        throw std::invalid_argument("theta_product needs ea > 0 and eb > 0");
    }
    const Rational step = ea + eb;
    const int sab = sa * sb;
    const std::vector<PowerFactor> factors = {
        {[=](const Rational& t) { return signed_qpochhammer(-sa, ea, sab, step, t); }, 1, Rational(0)},
        {[=](const Rational& t) { return signed_qpochhammer(-sb, eb, sab, step, t); }, 1, Rational(0)},
        {[=](const Rational& t) { return signed_qpochhammer(sab, step, sab, step, t); }, 1, Rational(0)},
    };
    return product_of_powers(factors, trunc);
}

Rational theta_valuation(int sa, const Rational& ea, int sb, const Rational& eb)
{
    const Rational step = ea + eb;
    if (sgn(step) <= 0) {
        throw std::invalid_argument("divergent theta parameters: theta_f needs ea + eb > 0");
    }
    const Rational vertex = -(ea - eb) / (2 * step);
    Rational lowest;
    bool first = true;
    const std::int64_t start = to_int64(floor(vertex));
    for (std::int64_t n : {start, start + 1}) {
        const Rational e = ea * (n * (n + 1) / 2) + eb * (n * (n - 1) / 2);
        if (first || e < lowest) {
            lowest = e;
            first = false;
        }
    }
    // Two terms can cancel at the bottom; widen the window until something survives.
    for (Rational width = step;; width *= 2) {
        const QSeries s = theta_f(sa, ea, sb, eb, lowest + width);
        if (auto v = s.valuation()) {
            return *v;
        }
    }
}

BaileyPair bailey_pair(std::int64_t L, std::int64_t j, const Rational& trunc)
{
    if (L < 2 || L % 2 != 0 || j <= 0 || j >= L || 2 * j == L) {
        throw std::invalid_argument("bailey_pair needs even L >= 2 and 0 < j < L with j != L/2");
    }
    const std::int64_t half = L / 2;
    BaileyPair out;

    // sum over all n of F(q^(Ln+j)) - F(q^(Ln+L/2)); F(1/x) = F(x) and
    // F(x) = sum_m m x^m.
    {
        const std::int64_t m = to_int64(trunc.get_den());
        const QSeries::Key trunc_key = key_on(trunc, m);
        std::vector<QSeries::Term> terms;
        auto add_lambert = [&](std::int64_t e, int sign) {
            if (e == 0) {
                throw std::logic_error("pole of F at exponent 0");
            }
            const std::int64_t base = e < 0 ? -e : e;
            for (std::int64_t mult = 1; base * mult * m < trunc_key; ++mult) {
                terms.push_back({base * mult * m, Rational(sign * mult)});
            }
        };
        const std::int64_t reach = trunc_key <= 0 ? 0 : (trunc_key / m) / L + 2;
        for (std::int64_t n = -reach; n <= reach; ++n) {
            add_lambert(L * n + j, 1);
            add_lambert(L * n + half, -1);
        }
        out.lhs = QSeries::from_terms(m, trunc_key, std::move(terms)).normalized();
    }

    {
        const Rational lj(L), hj(half), jj(j);
        const Rational v1 = theta_valuation(-1, hj + jj, -1, hj - jj);
        const std::vector<PowerFactor> factors = {
            {[=](const Rational& t) { return euler_product(L, t); }, 6, Rational(0)},
            {[=](const Rational& t) { return theta_f(-1, hj + jj, -1, hj - jj, t); }, 2, v1},
            {[=](const Rational& t) { return theta_f(-1, jj, -1, lj - jj, t); }, -2, Rational(0)},
            {[=](const Rational& t) { return theta_f(-1, hj, -1, hj, t); }, -2, Rational(0)},
        };
        out.rhs = product_of_powers(factors, trunc - jj).shifted(jj);
    }
    return out;
}

}  // namespace qeta
