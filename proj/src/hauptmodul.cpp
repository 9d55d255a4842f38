#include "qeta/hauptmodul.hpp"

#include <algorithm>
#include <stdexcept>

namespace qeta {

namespace {

bool same_failure(const std::optional<Failure>& a, const std::optional<Failure>& b)
{
    if (a.has_value() != b.has_value()) {
        return false;
    }
    return !a || (a->exponent == b->exponent && a->coefficient == b->coefficient);
}

bool same_window(const std::optional<Window>& a, const std::optional<Window>& b)
{
    if (a.has_value() != b.has_value()) {
        return false;
    }
    return !a || (a->from == b->from && a->to == b->to);
}

Certificate inconclusive(Certificate cert, std::string reason)
{
    cert.verdict = Verdict::Inconclusive;
    cert.reason = "inconclusive: " + std::move(reason);
    return cert;
}

Certificate refuted(Certificate cert, const Rational& exponent, const Rational& coefficient)
{
    cert.verdict = Verdict::Refuted;
    cert.failure = Failure{exponent, coefficient};
    cert.reason = "refuted at exponent " + to_string(exponent) + " with coefficient " + to_string(coefficient);
    return cert;
}

}  // namespace

HauptPoly HauptPoly::trimmed() const
{
    HauptPoly out = *this;
    while (!out.coeffs.empty() && sgn(out.coeffs.back()) == 0) {
        out.coeffs.pop_back();
    }
    return out;
}

QSeries HauptPoly::evaluate(const QSeries& g) const
{
    if (coeffs.empty()) {
        return {};
    }
    QSeries result = QSeries::constant(coeffs.back());
    for (auto it = coeffs.rbegin() + 1; it != coeffs.rend(); ++it) {
        result = result * g + QSeries::constant(*it);
    }
    return result;
}

std::string HauptPoly::to_string(const std::string& var) const
{
    std::string out;
    for (std::int64_t i = degree(); i >= 0; --i) {
        const Rational& c = coeffs[static_cast<std::size_t>(i)];
        if (sgn(c) == 0) {
            continue;
        }
        const Rational mag = abs(c);
        if (out.empty()) {
            out += sgn(c) < 0 ? "-" : "";
        } else {
            out += sgn(c) < 0 ? " - " : " + ";
        }
        std::string power = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        if (i == 0) {
            out += qeta::to_string(mag);
        } else if (mag == 1) {
            out += power;
        } else {
            out += qeta::to_string(mag) + "*" + power;
        }
    }
    return out.empty() ? "0" : out;
}

bool operator==(const HauptPoly& a, const HauptPoly& b)
{
    return a.trimmed().coeffs == b.trimmed().coeffs;
}

PoleBoundTable combine_order_bounds(std::span<const PoleBoundTable> parts, std::string label)
{
    if (parts.empty()) {
        throw std::invalid_argument("combine_order_bounds needs at least one part");
    }
    const auto& first = parts.front();
    for (const auto& p : parts) {
        if (p.level != first.level || p.entries.size() != first.entries.size()) {
            throw std::invalid_argument("order tables of different levels (" + std::to_string(first.level) + " vs " +
                                        std::to_string(p.level) + ")");
        }
    }
    PoleBoundTable out;
    out.level = first.level;
    if (label.empty()) {
        for (const auto& p : parts) {
            out.label += (out.label.empty() ? "" : " + ") + p.label;
        }
    } else {
        out.label = std::move(label);
    }
    for (const auto& e : first.entries) {
        Rational lowest = e.value;
        for (const auto& p : parts) {
            lowest = std::min(lowest, p.at(e.cusp).value);
        }
        int attained = 0;
        bool exact = false;
        for (const auto& p : parts) {
            const auto& entry = p.at(e.cusp);
            if (entry.value == lowest) {
                ++attained;
                exact = entry.exact;
            }
        }
        out.entries.push_back({e.cusp, lowest, attained == 1 && exact});
    }
    return out;
}

GeneratorExpression express_in_generator(const QSeries& f, const QSeries& g, std::int64_t m)
{
    if (m < 0) {
        throw std::invalid_argument("degree bound must be non-negative");
    }
    const auto gv = g.valuation();
    if (!gv || *gv != -1) {
        throw std::invalid_argument("generator must have valuation exactly -1");
    }
    const Rational lead = g.leading().second;
    for (const auto& t : f.terms()) {
        const Rational e = make_rational(t.key, f.grid());
        if (e > 0) {
            break;
        }
        if (!is_integer(e)) {
            throw std::invalid_argument("grid mismatch: term at q^" + to_string(e));
        }
        if (e < -m) {
            throw std::invalid_argument("degree bound exceeded: pole of order " + to_string(-e) + " > " +
                                        std::to_string(m));
        }
    }
    std::vector<QSeries> powers = {QSeries::constant(Rational(1))};
    for (std::int64_t d = 1; d <= m; ++d) {
        powers.push_back(powers.back() * g);
    }
    GeneratorExpression out;
    out.poly.coeffs.assign(static_cast<std::size_t>(m + 1), Rational(0));
    QSeries rest = f;
    for (std::int64_t d = m; d >= 0; --d) {
        const Rational c = rest.coeff(Rational(-d));
        if (sgn(c) == 0) {
            continue;
        }
        Rational lead_power(1);
        for (std::int64_t i = 0; i < d; ++i) {
            lead_power *= lead;
        }
        const Rational cd = c / lead_power;
        out.poly.coeffs[static_cast<std::size_t>(d)] = cd;
        rest -= powers[static_cast<std::size_t>(d)].scaled(cd);
    }
    out.poly = out.poly.trimmed();
    out.remainder = rest;
    return out;
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::ProvedConditional:
        return "proved-conditional";
    case Verdict::VerifiedToDepth:
        return "verified-to-depth";
    case Verdict::Refuted:
        return "refuted";
    case Verdict::Inconclusive:
        return "inconclusive";
    }
    return "inconclusive";
}

Verdict parse_verdict(const std::string& text)
{
    for (Verdict v : {Verdict::ProvedConditional, Verdict::VerifiedToDepth, Verdict::Refuted, Verdict::Inconclusive}) {
        if (to_string(v) == text) {
            return v;
        }
    }
    throw std::invalid_argument("unknown verdict '" + text + "'");
}

bool operator==(const Certificate& a, const Certificate& b)
{
    return a.id == b.id && a.mode == b.mode && a.axioms == b.axioms && a.level == b.level &&
           a.generator == b.generator && a.bounds == b.bounds && a.poly == b.poly && same_window(a.window, b.window) &&
           a.verdict == b.verdict && same_failure(a.failure, b.failure) && a.reason == b.reason && a.steps == b.steps;
}

std::int64_t guard_steps(std::int64_t degree) { return std::max<std::int64_t>(degree, 0) + 2; }

Certificate certify_expression(const CertifyRequest& request)
{
    Certificate cert;
    cert.id = request.id;
    cert.mode = "conditional";
    cert.axioms = request.axioms;
    cert.generator = request.generator_name + " = " + request.generator.to_string();
    if (request.parts.empty()) {
        throw std::invalid_argument("certify_expression needs at least one order table");
    }
    const PoleBoundTable bounds = request.parts.size() == 1 ? request.parts.front()
                                                             : combine_order_bounds(request.parts, request.id);
    cert.bounds = bounds;
    const std::int64_t n = bounds.level;
    cert.level = n;

    if (genus(n) != 0) {
        return inconclusive(cert, "X0(" + std::to_string(n) + ") has genus " + std::to_string(genus(n)));
    }

    // The generator must lie in M^inf(N) with a simple pole at infinity.
    if (n % request.generator.level() != 0) {
        return inconclusive(cert, "generator level does not divide " + std::to_string(n));
    }
    const EtaQuotient g = request.generator.lifted(n);
    const Gamma0Check gc = check_gamma0(g);
    if (!gc.holds() || gc.weight != 0 || *gc.character_kernel != 1) {
        return inconclusive(cert, "generator is not a modular function on Gamma0(" + std::to_string(n) + ")");
    }
    for (const auto& e : eta_order_table(g).entries) {
        if (e.cusp.is_infinity() ? e.value != -1 : e.value < 0) {
            return inconclusive(cert, "generator has order " + to_string(e.value) + " at " + e.cusp.to_string());
        }
    }

    for (const auto& e : bounds.entries) {
        if (!e.cusp.is_infinity() && e.value < 0) {
            return inconclusive(cert, "possible pole at cusp " + e.cusp.to_string());
        }
    }
    const OrderEntry& at_inf = bounds.at(Cusp::infinity());
    if (!at_inf.exact) {
        return inconclusive(cert, "pole bound not exact");
    }
    if (!is_integer(at_inf.value)) {
        return inconclusive(cert, "non-integral order at infinity");
    }
    const std::int64_t m = std::max<std::int64_t>(0, -to_int64(at_inf.value.get_num()));

    const auto trunc = request.f.truncation();
    const Rational need(guard_steps(m) + 1);
    if (trunc && *trunc < need) {
        return inconclusive(cert, "expansion known below q^" + to_string(*trunc) + ", guard window needs q^" +
                                      to_string(need));
    }

    const QSeries g_series = expand(g, trunc ? *trunc + m : need + m);

    if (request.expected) {
        const QSeries diff = request.f - request.expected->evaluate(g_series);
        if (!diff.is_zero()) {
            auto [e, c] = diff.leading();
            cert.poly = *request.expected;
            return refuted(cert, e, c);
        }
    }

    GeneratorExpression solved;
    try {
        solved = express_in_generator(request.f, g_series, m);
    } catch (const std::invalid_argument& ex) {
        return inconclusive(cert, ex.what());
    }
    cert.poly = solved.poly;
    if (!solved.remainder.is_zero()) {
        auto [e, c] = solved.remainder.leading();
        return refuted(cert, e, c);
    }
    const auto rt = solved.remainder.truncation();
    const Rational to = rt ? *rt : need;
    if (to < need) {
        return inconclusive(cert, "remainder known below q^" + to_string(to) + ", guard window needs q^" +
                                      to_string(need));
    }
    cert.window = Window{Rational(-m), to};
    cert.verdict = Verdict::ProvedConditional;
    cert.reason = "remainder vanishes below q^" + to_string(to) + "; holds assuming the listed axioms";
    return cert;
}

}  // namespace qeta
