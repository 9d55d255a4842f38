#include "qeta/prover.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qeta {

namespace {

const std::string kBailey =
    "bilateral Lambert summation: sum_n [a q^n/(1-a q^n)^2 - b q^n/(1-b q^n)^2] = "
    "a f(-q)^6 f(-ab,-q/(ab)) f(-b/a,-aq/b) / (f(-a,-q/a)^2 f(-b,-q/b)^2)";
const std::string kTripleProduct = "Jacobi triple product: f(-q^a, -q^(N-a)) = (q^a, q^(N-a), q^N; q^N)_inf";
const std::string kHalving = "elementary rearrangement: sum over odd n of q^n/(1-q^n)^2 is the full sum minus its q -> q^2 image";
const std::string kSubstitution = "an identity of q-series stays valid under q -> q^k";
const std::string kGamma1 =
    "a generalized eta-quotient with sum r_g = 0 (mod 12), sum g r_g = 0 (mod 2), sum g^2 r_g = 0 (mod 2N) is "
    "modular on Gamma1(N)";
const std::string kGamma0 =
    "an eta-quotient with sum delta r_delta = 0 and sum (N/delta) r_delta = 0 (mod 24) and square product is "
    "modular on Gamma0(N), with orders at cusps given by the eta order formula";
const std::string kOrd =
    "Ord at a cusp of a generalized eta-quotient is the scaled exponent of the first term of its expansion there; "
    "ord of a sum is at least the minimum, with equality when the minimum is attained once";
const std::string kPolynomial =
    "on a genus-zero Gamma0(N), a modular function with poles only at infinity is a polynomial in a Hauptmodul of "
    "degree -ord_inf";
const std::string kHauptH = "h = eta(4)^4 eta(6)^2/(eta(2)^2 eta(12)^4) is a Hauptmodul of Gamma0(12) with a simple pole at infinity";
const std::string kHauptS = "s = eta(8)^6/(eta(4)^2 eta(16)^4) is a Hauptmodul of Gamma0(16) with a simple pole at infinity";
const std::string kHauptG4 = "g4 = eta(2)^24/(eta(1)^8 eta(4)^16) is a Hauptmodul of Gamma0(4) with a simple pole at infinity";
const std::string kSwap12 =
    "h1(gamma tau) = 1/h1(tau) and h3(gamma tau) = 1/h3(tau) for gamma = [5 2; 12 5]; Gamma1(12) and gamma generate "
    "Gamma0(12)";
const std::string kSwap16 =
    "s1(gamma tau) = s2(tau), s2(gamma tau) = 1/s1(tau) and s4(gamma tau) = 1/s4(tau) for gamma = [3 -1; 16 -5]; "
    "Gamma1(16) and gamma generate Gamma0(16)";
const std::string kAlpha24 =
    "h2(alpha tau) = 16/h2(tau) for alpha = [1 0; 12 1]; Gamma0(24) and alpha generate Gamma0(12)";
const std::string kAlpha32 =
    "s3(alpha tau) = 16/s3(tau) for alpha = [1 0; 16 1]; Gamma0(32) and alpha generate Gamma0(16)";
const std::string kE2 =
    "2E2(2tau) - E2(tau) = 1 + 24 sum_n (sigma(n) - 2 sigma(n/2)) q^n is a holomorphic weight-2 modular form on "
    "Gamma0(2)";

bool passes(Verdict v) { return v == Verdict::ProvedConditional || v == Verdict::VerifiedToDepth; }

void merge_axioms(std::vector<std::string>& into, const std::vector<std::string>& from)
{
    for (const auto& a : from) {
        if (std::find(into.begin(), into.end(), a) == into.end()) {
            into.push_back(a);
        }
    }
}

Certificate base_certificate(const IdentityStatement& stmt)
{
    Certificate cert;
    cert.id = stmt.id;
    cert.mode = to_string(stmt.mode);
    cert.level = stmt.level;
    cert.axioms = stmt.axioms;
    return cert;
}

void set_inconclusive(Certificate& cert, const std::string& reason)
{
    cert.verdict = Verdict::Inconclusive;
    cert.failure.reset();
    cert.reason = "inconclusive: " + reason;
}

void set_refuted(Certificate& cert, const Rational& exponent, const Rational& coefficient)
{
    cert.verdict = Verdict::Refuted;
    cert.failure = Failure{exponent, coefficient};
    cert.reason = "refuted at exponent " + to_string(exponent) + " with coefficient " + to_string(coefficient);
}

struct SeriesCheck {
    QSeries diff;
    Rational from;
    Rational to;
};

SeriesCheck check_sides(Evaluator& ev, const IdentityStatement& stmt, const Rational& t)
{
    const QSeries lhs = ev.evaluate(stmt.lhs, t);
    const QSeries rhs = ev.evaluate(stmt.rhs, t);
    SeriesCheck out;
    out.diff = lhs - rhs;
    out.to = out.diff.truncation().value_or(t);
    out.from = out.to;
    for (const QSeries* s : {&lhs, &rhs}) {
        if (auto v = s->valuation()) {
            out.from = std::min(out.from, *v);
        }
    }
    return out;
}

// Applies the lhs - rhs comparison; returns false when the certificate was
// decided (refuted or inconclusive).
bool apply_series_check(Certificate& cert, Evaluator& ev, const IdentityStatement& stmt, const Rational& t)
{
    const SeriesCheck sc = check_sides(ev, stmt, t);
    if (!sc.diff.is_zero()) {
        const auto [e, c] = sc.diff.leading();
        set_refuted(cert, e, c);
        return false;
    }
    if (sc.to < t) {
        set_inconclusive(cert, "difference known only below q^" + to_string(sc.to));
        return false;
    }
    if (!cert.window) {
        cert.window = Window{sc.from, sc.to};
    }
    return true;
}

Certificate run_heuristic(Evaluator& ev, const IdentityStatement& stmt, std::int64_t depth)
{
    Certificate cert = base_certificate(stmt);
    cert.mode = to_string(ProofMode::Heuristic);
    const Rational t = depth_exponent(stmt, depth);
    try {
        if (!apply_series_check(cert, ev, stmt, t)) {
            return cert;
        }
    } catch (const SeriesError& ex) {
        const std::string what = ex.what();
        set_inconclusive(cert, what.find("square") != std::string::npos ? "square-root branch: " + what : what);
        return cert;
    }
    cert.verdict = Verdict::VerifiedToDepth;
    cert.reason = "lhs - rhs vanishes below q^" + to_string(cert.window->to) + " (numerical evidence only)";
    return cert;
}

Certificate run(Evaluator& ev, const IdentityStatement& stmt, std::int64_t depth);

Certificate run_conditional(Evaluator& ev, const IdentityStatement& stmt, std::int64_t depth)
{
    Certificate cert = base_certificate(stmt);
    std::vector<std::string> blocked;
    for (const auto& dep : stmt.depends) {
        Certificate step = run(ev, lookup(dep), depth);
        merge_axioms(cert.axioms, step.axioms);
        if (lookup(dep).relation && cert.poly.coeffs.empty()) {
            // A chain ending in a polynomial relation reports that relation.
            cert.generator = step.generator;
            cert.bounds = step.bounds;
            cert.poly = step.poly;
        }
        if (!passes(step.verdict)) {
            blocked.push_back(dep + " is " + to_string(step.verdict));
        }
        cert.steps.push_back(std::move(step));
    }
    const Rational t = depth_exponent(stmt, depth);

    try {
        if (stmt.relation) {
            const RelationPlan& plan = *stmt.relation;
            for (const auto& g : plan.gamma1_inputs) {
                if (!check_gamma1(g).holds()) {
                    set_inconclusive(cert, g.to_string() + " fails the Gamma1(" + std::to_string(g.level()) +
                                               ") conditions");
                    return cert;
                }
            }
            CertifyRequest req;
            req.id = stmt.id;
            req.f = ev.evaluate(stmt.lhs, t);
            req.parts = plan.parts;
            req.generator = plan.generator;
            req.generator_name = plan.generator_name;
            req.axioms = cert.axioms;
            req.expected = plan.expected;
            Certificate solved = certify_expression(req);
            solved.steps = std::move(cert.steps);
            solved.mode = cert.mode;
            cert = std::move(solved);
            if (cert.verdict != Verdict::ProvedConditional) {
                return cert;
            }
            // The rhs expression must agree with the certified polynomial.
            const Window proved = *cert.window;
            cert.window.reset();
            if (!apply_series_check(cert, ev, stmt, t)) {
                return cert;
            }
            cert.window = proved;
        } else if (!apply_series_check(cert, ev, stmt, t)) {
            return cert;
        }
        if (stmt.bailey) {
            const auto [L, j] = *stmt.bailey;
            const BaileyPair bp = bailey_pair(L, j, t);
            const QSeries lhs = ev.evaluate(stmt.lhs, t);
            for (const auto& d : {bp.lhs - lhs, bp.lhs - bp.rhs}) {
                if (!d.is_zero()) {
                    const auto [e, c] = d.leading();
                    set_refuted(cert, e, c);
                    return cert;
                }
            }
        }
    } catch (const SeriesError& ex) {
        set_inconclusive(cert, ex.what());
        return cert;
    }

    if (!blocked.empty()) {
        std::string reason = "step ";
        for (std::size_t i = 0; i < blocked.size(); ++i) {
            reason += (i ? ", " : "") + blocked[i];
        }
        set_inconclusive(cert, reason);
        return cert;
    }
    cert.verdict = Verdict::ProvedConditional;
    if (cert.reason.empty()) {
        cert.reason = stmt.depends.empty()
                          ? "instance checked below q^" + to_string(cert.window->to) + "; holds assuming the listed axioms"
                          : "follows from the certified steps; lhs - rhs vanishes below q^" +
                                to_string(cert.window->to);
    }
    return cert;
}

Certificate run(Evaluator& ev, const IdentityStatement& stmt, std::int64_t depth)
{
    return stmt.mode == ProofMode::Heuristic ? run_heuristic(ev, stmt, depth) : run_conditional(ev, stmt, depth);
}

Expr parse_named(const std::string& text) { return parse_expr(text, named_objects()); }

IdentityStatement statement(std::string id, std::string title, const std::string& lhs, const std::string& rhs,
                            std::int64_t level, ProofMode mode)
{
    IdentityStatement s;
    s.id = std::move(id);
    s.title = std::move(title);
    s.lhs = parse_named(lhs);
    s.rhs = parse_named(rhs);
    s.level = level;
    s.mode = mode;
    return s;
}

GenEtaQuotient geta_of(const std::string& name)
{
    const Expr& e = named_objects().at(name);
    if (e.kind() != Expr::Kind::GenEta) {
        throw std::logic_error(name + " is not a generalized eta-quotient");
    }
    return e.node().geta;
}

EtaQuotient eta_of(const std::string& name)
{
    const Expr& e = named_objects().at(name);
    if (e.kind() != Expr::Kind::Eta) {
        throw std::logic_error(name + " is not an eta-quotient");
    }
    return e.node().eta;
}

HauptPoly poly(std::initializer_list<int> coeffs)
{
    HauptPoly p;
    for (int c : coeffs) {
        p.coeffs.emplace_back(c);
    }
    return p;
}

// min{Ord f, Ord 1/f}
PoleBoundTable pair_bound(const GenEtaQuotient& f, std::int64_t level, const std::string& name, const std::string& label)
{
    const std::vector<PoleBoundTable> parts = {gen_eta_order_table(f, level, "Ord " + name),
                                               gen_eta_order_table(f.inverse(), level, "Ord 1/" + name)};
    return combine_order_bounds(parts, label);
}

PoleBoundTable bound_F4()
{
    PoleBoundTable num;
    num.level = 4;
    num.label = "ord 1 + 24(sigma(1) - 2 sigma(2))";
    for (const auto& c : cusp_set(4).entries) {
        num.entries.push_back({c.cusp, Rational(0), c.cusp.is_infinity()});
    }
    const PoleBoundTable den = eta_order_table(pi_quotient(2).pow(-2), 4, "ord pi(2)^-2");
    return (num + den).relabeled("ord F");
}

std::vector<IdentityStatement> build_registry()
{
    using M = ProofMode;
    std::vector<IdentityStatement> r;
    auto add = [&r](IdentityStatement s) -> IdentityStatement& {
        r.push_back(std::move(s));
        return r.back();
    };

    // Headline identities.
    {
        auto& s = add(statement("eq1.1", "Gosper's level-2 identity",
                                "sigma(1) - 2*sigma(2)", "1/24*(pi(1)^4/pi(2)^2 - 1) + 2/3*pi(2)^2", 4, M::Conditional));
        s.depends = {"rel.F4"};
        s.derivation = "multiply F = g4 + 16 by pi(2)^2/24";
        s.headline = true;
    }
    {
        auto& s = add(statement("eq1.2", "level-10 square-root identity", "(ap(2,1) - 5*ap(10,5))/pi(5)^2",
                                "sqrt((pi(1)/pi(5))^3 - 2*(pi(1)/pi(5))^2 + 5*pi(1)/pi(5))", 20, M::Heuristic));
        s.headline = true;
    }
    {
        auto& s = add(statement("eq1.3", "level-5 sigma identity", "6*(sigma(1) - 5*sigma(5)) + 1",
                                "(pi(1)/pi(5) + 2 + 5*pi(5)/pi(1))*(ap(2,1) - 5*ap(10,5))", 20, M::Heuristic));
        s.headline = true;
    }
    {
        auto& s = add(statement("eq1.4", "level-12 Lambert identity", "(ap(2,1) - 6*ap(12,6))/pi(6)^2", "h^2 + 2*h",
                                12, M::Conditional));
        s.depends = {"eq3.2", "eq3.3"};
        s.derivation = "compare the symmetrized Bailey sum with j1 = h^2 + 2h - 1";
        s.headline = true;
    }
    {
        auto& s = add(statement("eq1.5", "level-18 square-root identity", "(ap(2,1) - 9*ap(18,9))/pi(9)^2",
                                "(pi(1)/pi(9) + 3)*sqrt((pi(1)/pi(9))^(3/2) - 3*pi(1)/pi(9) + 3*(pi(1)/pi(9))^(1/2))",
                                36, M::Heuristic));
        s.headline = true;
    }
    {
        auto& s = add(statement("eq1.6", "level-9 sigma identity", "3*(sigma(1) - 9*sigma(9)) + 1",
                                "(sqrt(pi(1)/pi(9)) + 3*sqrt(pi(9)/pi(1)))*(ap(2,1) - 9*ap(18,9))", 36, M::Heuristic));
        s.headline = true;
    }
    {
        auto& s = add(statement("eq1.7", "level-6 sigma identity", "(24*(sigma(1) - 6*sigma(6)) + 5)/pi(6)^2",
                                "5*h^3 + 24*h^2 + 42*h + 9/h", 12, M::Conditional));
        s.depends = {"eq3.11", "rel.hH"};
        s.derivation = "substitute hH = h^4 - 6h^2 - 3 into the rearranged sigma identity";
        s.headline = true;
    }
    {
        auto& s = add(statement("eq1.8", "level-16 Lambert identity", "(ap(2,1) - 8*ap(16,8))/pi(8)^2",
                                "s^3 + 2*s^2 + 4*s + 4", 16, M::Conditional));
        s.depends = {"eq4.2", "eq4.3"};
        s.derivation = "compare the symmetrized Bailey sum with z = s^3 + 2s^2 + 4s + 4";
        s.headline = true;
    }
    {
        auto& s = add(statement("eq1.9", "level-8 sigma identity", "(24*(sigma(1) - 8*sigma(8)) + 7)/pi(8)^2",
                                "7*s^4 + 24*s^3 + 72*s^2 + 96*s + 112", 16, M::Conditional));
        s.depends = {"eq4.8", "rel.S"};
        s.derivation = "substitute S = s^4 - 8 into the rearranged sigma identity";
        s.headline = true;
    }

    // Instances of the bilateral summation with q -> q^L, b = q^(L/2), a = q^j.
    for (std::int64_t L : {12, 16}) {
        for (std::int64_t j = 1; j < L / 2; ++j) {
            const std::string Ls = std::to_string(L);
            const std::string js = std::to_string(j);
            const std::string half = std::to_string(L / 2);
            const std::string lhs = "ap(" + Ls + "," + js + ") + ap(" + Ls + "," + std::to_string(L - j) + ") - 2*ap(" +
                                    Ls + "," + half + ")";
            const Rational shift = Rational(j) - Rational(L, 4);
            const std::string rhs = "q^(" + to_string(shift) + ")*pi(" + half + ")^2*theta(-1," +
                                    std::to_string(L / 2 + j) + ",-1," + std::to_string(L / 2 - j) +
                                    ")^2/theta(-1," + js + ",-1," + std::to_string(L - j) + ")^2";
            auto& s = add(statement("bailey" + Ls + "." + js, "bilateral summation, L = " + Ls + ", a = q^" + js, lhs,
                                    rhs, L, M::Conditional));
            s.axioms = {kBailey};
            s.bailey = std::make_pair(L, j);
            s.derivation = "q -> q^" + Ls + ", b = q^" + half + ", a = q^" + js;
        }
    }
    // a = q^j and a = q^(L-j) give the same identity; the odd and even j
    // above cover every instance the sums use.

    // Symmetrized sums.
    {
        auto& s = add(statement("eq3.2", "odd a = q, q^3, q^5 at level 12", "(ap(2,1) - 6*ap(12,6))/pi(6)^2",
                                "h1 + 1 + 1/h1", 12, M::Conditional));
        s.axioms = {kTripleProduct};
        s.depends = {"bailey12.1", "bailey12.3", "bailey12.5"};
        s.derivation = "add the a = q, q^3, q^5 instances and divide by pi(6)^2";
    }
    {
        auto& s = add(statement("eq3.7", "even a = q^2, q^4 at level 12", "sigma(2) - sigma(6) - 4*ap(12,6)",
                                "pi(6)^2*(h3 + 1/h3)", 12, M::Conditional));
        s.axioms = {kTripleProduct};
        s.depends = {"bailey12.2", "bailey12.4"};
        s.derivation = "add the a = q^2, q^4 instances";
    }
    {
        auto& s = add(statement("eq4.2", "odd a = q, q^3, q^5, q^7 at level 16", "(ap(2,1) - 8*ap(16,8))/pi(8)^2", "z",
                                16, M::Conditional));
        s.axioms = {kTripleProduct};
        s.depends = {"bailey16.1", "bailey16.3", "bailey16.5", "bailey16.7"};
        s.derivation = "add the a = q, q^3, q^5, q^7 instances and divide by pi(8)^2";
    }
    {
        auto& s = add(statement("eq4.5", "even a = q^2, q^4, q^6 at level 16", "sigma(2) - sigma(8) - 6*ap(16,8)",
                                "pi(8)^2*(s4 + 1 + 1/s4)", 16, M::Conditional));
        s.axioms = {kTripleProduct};
        s.depends = {"bailey16.2", "bailey16.4", "bailey16.6"};
        s.derivation = "add the a = q^2, q^4, q^6 instances";
    }

    // Polynomial relations in the Hauptmoduln.
    {
        auto& s = add(statement("eq3.3", "j1 = h^2 + 2h - 1", "j1", "h^2 + 2*h - 1", 12, M::Conditional));
        s.axioms = {kGamma1, kSwap12, kOrd, kHauptH, kPolynomial};
        const GenEtaQuotient h1 = geta_of("h1");
        s.relation = RelationPlan{{gen_eta_order_table(h1, 12, "Ord h1"), gen_eta_order_table(h1.inverse(), 12, "Ord 1/h1")},
                                  eta_of("h"), "h", poly({-1, 2, 1}), {h1}};
    }
    {
        auto& s = add(statement("rel.hj3", "h j3 = h^2 + 1", "h*j3", "h^2 + 1", 12, M::Conditional));
        s.axioms = {kGamma1, kSwap12, kOrd, kGamma0, kHauptH, kPolynomial};
        const GenEtaQuotient h3 = geta_of("h3");
        s.relation = RelationPlan{{pair_bound(h3, 12, "h3", "ord j3") + eta_order_table(eta_of("h"), 12, "ord h")},
                                  eta_of("h"), "h", poly({1, 0, 1}), {h3}};
    }
    {
        auto& s = add(statement("rel.hH", "h H = h^4 - 6h^2 - 3", "h*H", "h^4 - 6*h^2 - 3", 12, M::Conditional));
        s.axioms = {kGamma0, kAlpha24, kOrd, kHauptH, kPolynomial};
        const GenEtaQuotient h2 = GenEtaQuotient(24, {{12, 4}, {6, -4}});
        s.relation = RelationPlan{{pair_bound(h2, 12, "h2", "ord H") + eta_order_table(eta_of("h"), 12, "ord h")},
                                  eta_of("h"), "h", poly({-3, 0, -6, 0, 1}), {}};
    }
    {
        auto& s = add(statement("eq4.3", "z = s^3 + 2s^2 + 4s + 4", "z", "s^3 + 2*s^2 + 4*s + 4", 16, M::Conditional));
        s.axioms = {kGamma1, kSwap16, kOrd, kHauptS, kPolynomial};
        const GenEtaQuotient s1 = geta_of("s1");
        const GenEtaQuotient s2 = geta_of("s2");
        s.relation = RelationPlan{{gen_eta_order_table(s1, 16, "Ord s1"), gen_eta_order_table(s2, 16, "Ord s2"),
                                   gen_eta_order_table(s1.inverse(), 16, "Ord 1/s1"),
                                   gen_eta_order_table(s2.inverse(), 16, "Ord 1/s2")},
                                  eta_of("s"), "s", poly({4, 4, 2, 1}), {s1, s2}};
    }
    {
        auto& s = add(statement("rel.j4", "j4 = s^2 + 2", "j4", "s^2 + 2", 16, M::Conditional));
        s.axioms = {kGamma1, kSwap16, kOrd, kHauptS, kPolynomial};
        const GenEtaQuotient s4 = geta_of("s4");
        s.relation = RelationPlan{{gen_eta_order_table(s4, 16, "Ord s4"), gen_eta_order_table(s4.inverse(), 16, "Ord 1/s4")},
                                  eta_of("s"), "s", poly({2, 0, 1}), {s4}};
    }
    {
        auto& s = add(statement("rel.S", "S = s^4 - 8", "S", "s^4 - 8", 16, M::Conditional));
        s.axioms = {kGamma0, kAlpha32, kOrd, kHauptS, kPolynomial};
        const GenEtaQuotient s3 = GenEtaQuotient(32, {{16, 4}, {8, -4}});
        s.relation = RelationPlan{{gen_eta_order_table(s3, 16, "Ord s3"), gen_eta_order_table(s3.inverse(), 16, "Ord 1/s3")},
                                  eta_of("s"), "s", poly({-8, 0, 0, 0, 1}), {}};
    }
    {
        auto& s = add(statement("rel.F4", "F = g4 + 16", "F", "g4 + 16", 4, M::Conditional));
        s.axioms = {kE2, kGamma0, kHauptG4, kPolynomial};
        s.relation = RelationPlan{{bound_F4()}, eta_of("g4"), "g4", poly({16, 1}), {}};
    }

    // Chained steps.
    {
        auto& s = add(statement("eq3.8", "even sum in terms of h", "sigma(2) - sigma(6) - 4*ap(12,6)",
                                "pi(6)^2*(h + 1/h)", 12, M::Conditional));
        s.depends = {"eq3.7", "rel.hj3"};
        s.derivation = "replace h3 + 1/h3 by (h^2 + 1)/h";
    }
    {
        auto& s = add(statement("eq3.9", "Lambert halving", "sigma(1) - sigma(2)", "ap(2,1)", 2, M::Conditional));
        s.axioms = {kHalving};
    }
    {
        auto& s = add(statement("eq3.10", "level-12 sigma rearrangement", "(sigma(1) - 6*sigma(6))/pi(6)^2 - h^2 - 3*h - 1/h",
                                "5*(ap(12,6) - sigma(12))/pi(6)^2", 12, M::Conditional));
        s.depends = {"eq3.8", "eq3.9", "eq3.2", "eq3.3"};
        s.derivation = "add the odd and even sums using the halving identity";
    }
    {
        auto& s = add(statement("eq3.11", "level-12 sigma identity with H",
                                "(24*(sigma(1) - 6*sigma(6)) + 5)/pi(6)^2 - 24*h^2 - 72*h - 24/h", "5*H", 12,
                                M::Conditional));
        s.axioms = {kSubstitution};
        s.depends = {"eq3.10", "eq1.1"};
        s.derivation = "apply the level-2 identity at q^6 to the right-hand side and multiply by 24";
    }
    {
        auto& s = add(statement("eq4.6", "even sum in terms of s", "sigma(2) - sigma(8) - 6*ap(16,8)",
                                "pi(8)^2*(s^2 + 3)", 16, M::Conditional));
        s.depends = {"eq4.5", "rel.j4"};
        s.derivation = "replace s4 + 1/s4 by s^2 + 2";
    }
    {
        auto& s = add(statement("eq4.7", "level-16 sigma rearrangement",
                                "(sigma(1) - 8*sigma(8))/pi(8)^2 - s^3 - 3*s^2 - 4*s - 7",
                                "7*(ap(16,8) - sigma(16))/pi(8)^2", 16, M::Conditional));
        s.depends = {"eq4.6", "eq3.9", "eq4.2", "eq4.3"};
        s.derivation = "add the odd and even sums using the halving identity";
    }
    {
        auto& s = add(statement("eq4.8", "level-16 sigma identity with S",
                                "(24*(sigma(1) - 8*sigma(8)) + 7)/pi(8)^2 - 24*s^3 - 72*s^2 - 96*s - 168", "7*S", 16,
                                M::Conditional));
        s.axioms = {kSubstitution};
        s.depends = {"eq4.7", "eq1.1"};
        s.derivation = "apply the level-2 identity at q^8 to the right-hand side and multiply by 24";
    }
    return r;
}

QSeries golden(std::int64_t trunc, std::vector<std::pair<int, int>> terms)
{
    std::vector<QSeries::Term> ts;
    for (auto [e, c] : terms) {
        ts.push_back({e, Rational(c)});
    }
    return QSeries::from_terms(1, trunc, std::move(ts));
}

}  // namespace

std::string to_string(ProofMode m) { return m == ProofMode::Heuristic ? "heuristic" : "conditional"; }

const SymbolTable& named_objects()
{
    static const SymbolTable table = [] {
        SymbolTable t;
        auto def = [&t](const std::string& name, const std::string& text) {
            t.insert_or_assign(name, parse_expr(text, t).named(name));
        };
        def("h", "eta(4)^4*eta(6)^2*eta(2)^-2*eta(12)^-4");
        def("s", "eta(8)^6*eta(4)^-2*eta(16)^-4");
        def("h1", "geta(12;5)^2*geta(12;1)^-2");
        def("h3", "geta(12;4)^2*geta(12;2)^-2");
        def("h2", "eta(12)^12*eta(6)^-4*eta(24)^-8");
        def("s1", "geta(16;7)^2*geta(16;1)^-2");
        def("s2", "geta(16;5)^2*geta(16;3)^-2");
        def("s3", "eta(16)^12*eta(8)^-4*eta(32)^-8");
        def("s4", "geta(16;6)^2*geta(16;2)^-2");
        def("g4", "eta(2)^24*eta(1)^-8*eta(4)^-16");
        def("H", "h2 + 16/h2");
        def("S", "s3 + 16/s3");
        def("j1", "h1 + 1/h1");
        def("j3", "h3 + 1/h3");
        def("j4", "s4 + 1/s4");
        def("z", "s1 + s2 + 1/s1 + 1/s2");
        def("F", "(1 + 24*(sigma(1) - 2*sigma(2)))/pi(2)^2");
        return t;
    }();
    return table;
}

const std::vector<IdentityStatement>& registry()
{
    static const std::vector<IdentityStatement> r = build_registry();
    return r;
}

const IdentityStatement& lookup(const std::string& id)
{
    for (const auto& s : registry()) {
        if (s.id == id) {
            return s;
        }
    }
    throw std::out_of_range("unknown identity '" + id + "'");
}

std::int64_t default_depth(const IdentityStatement& stmt) { return stmt.bailey ? 120 : 200; }

Rational depth_exponent(const IdentityStatement& stmt, std::int64_t depth)
{
    if (depth <= 0) {
        throw std::invalid_argument("depth must be positive");
    }
    const std::int64_t grid = lcm64(stmt.lhs.step_grid(), stmt.rhs.step_grid());
    return make_rational(depth, grid);
}

Certificate verify_heuristic(const IdentityStatement& stmt, std::int64_t depth)
{
    Evaluator ev;
    return run_heuristic(ev, stmt, depth);
}

Certificate verify_conditional(const IdentityStatement& stmt, std::int64_t depth)
{
    Evaluator ev;
    return run_conditional(ev, stmt, depth);
}

Certificate verify(const IdentityStatement& stmt, std::int64_t depth)
{
    Evaluator ev;
    return run(ev, stmt, depth);
}

IdentityStatement perturbed(const IdentityStatement& stmt, const Rational& exponent, const Rational& delta)
{
    IdentityStatement out = stmt;
    out.lhs = stmt.lhs + Expr::constant(delta) * Expr::q_power(exponent);
    out.id = stmt.id + "+perturbed";
    return out;
}

IdentityStatement adhoc_statement(const std::string& lhs, const std::string& rhs)
{
    IdentityStatement s;
    s.id = "adhoc";
    s.title = lhs + " = " + rhs;
    s.lhs = parse_named(lhs);
    s.rhs = parse_named(rhs);
    s.level = 0;  // no level claimed
    s.mode = ProofMode::Heuristic;
    return s;
}

std::vector<NamedTable> order_tables()
{
    std::vector<NamedTable> out;
    const GenEtaQuotient h1 = geta_of("h1");
    const GenEtaQuotient h3 = geta_of("h3");
    const GenEtaQuotient h2g(24, {{12, 4}, {6, -4}});
    const GenEtaQuotient s1 = geta_of("s1");
    const GenEtaQuotient s2 = geta_of("s2");
    const GenEtaQuotient s3g(32, {{16, 4}, {8, -4}});
    const GenEtaQuotient s4 = geta_of("s4");

    auto pair_table = [&out](std::string id, std::string caption, const GenEtaQuotient& f, std::int64_t level,
                             const std::string& name, const std::string& sum_label) {
        NamedTable t{std::move(id), std::move(caption), level, {}};
        t.rows.push_back(gen_eta_order_table(f, level, "Ord " + name));
        t.rows.push_back(gen_eta_order_table(f.inverse(), level, "Ord 1/" + name));
        t.rows.push_back(combine_order_bounds(std::span<const PoleBoundTable>(t.rows), "ord " + sum_label));
        out.push_back(std::move(t));
    };

    pair_table("tbl31", "Ord h1, Ord 1/h1 and ord j1 on Gamma0(12)", h1, 12, "h1", "j1");
    {
        const EtaQuotient h2 = eta_of("h2");
        const PoleBoundTable base = eta_order_table(h2, 24, "ord h2");
        PoleBoundTable moved = base;
        moved.label = "ord h2(alpha tau)";
        for (const auto& img : alpha_images(24, 12)) {
            moved.at(img.cusp).value = base.at(img.representative).value;
        }
        NamedTable t{"tbl32", "ord h2(alpha tau), ord h2 and ord H0 on Gamma0(24)", 24, {}};
        t.rows = {moved, base, (moved + base).relabeled("ord H0")};
        out.push_back(std::move(t));
    }
    pair_table("tbl33", "Ord h2, Ord 1/h2 and ord H on Gamma0(12)", h2g, 12, "h2", "H");
    pair_table("tbl34", "Ord h3, Ord 1/h3 and ord j3 on Gamma0(12)", h3, 12, "h3", "j3");
    {
        NamedTable t{"tbl41", "Ord s1, Ord s2, Ord 1/s1, Ord 1/s2 and ord z on Gamma0(16)", 16, {}};
        t.rows = {gen_eta_order_table(s1, 16, "Ord s1"), gen_eta_order_table(s2, 16, "Ord s2"),
                  gen_eta_order_table(s1.inverse(), 16, "Ord 1/s1"), gen_eta_order_table(s2.inverse(), 16, "Ord 1/s2")};
        t.rows.push_back(combine_order_bounds(std::span<const PoleBoundTable>(t.rows), "ord z"));
        out.push_back(std::move(t));
    }
    pair_table("tbl42", "Ord s3, Ord 1/s3 and ord S on Gamma0(16)", s3g, 16, "s3", "S");
    pair_table("tbl43", "Ord s4, Ord 1/s4 and ord j4 on Gamma0(16)", s4, 16, "s4", "j4");
    return out;
}

std::vector<CuspImage> alpha_images(std::int64_t level, std::int64_t shift)
{
    std::vector<CuspImage> out;
    for (const auto& e : cusp_set(level).entries) {
        // [1 0; k 1] (a/c) = a / (k a + c)
        const Cusp img = Cusp::make(e.cusp.a, shift * e.cusp.a + e.cusp.c);
        out.push_back({e.cusp, img, canonical_cusp(level, img)});
    }
    return out;
}

std::vector<ExpansionCheck> expansion_checks()
{
    const std::vector<std::pair<std::string, QSeries>> expected = {
        {"j1", golden(3, {{-2, 1}, {-1, 2}, {0, 3}, {1, 4}, {2, 6}})},
        {"h", golden(4, {{-1, 1}, {1, 2}, {3, 1}})},
        {"z", golden(3, {{-3, 1}, {-2, 2}, {-1, 4}, {0, 4}, {1, 6}, {2, 8}})},
        {"j3", golden(4, {{-1, 1}, {1, 3}, {3, -1}})},
        {"j4", golden(6, {{-2, 1}, {0, 2}, {2, 4}})},
        {"hH", golden(4, {{-4, 1}, {-2, 2}, {0, 1}, {2, 20}})},
        {"S", golden(13, {{-4, 1}, {4, 20}, {12, -62}})},
    };
    std::vector<ExpansionCheck> out;
    Evaluator ev;
    for (const auto& [name, series] : expected) {
        const Expr e = parse_named(name == "hH" ? "h*H" : name);
        ExpansionCheck c;
        c.name = name;
        c.expected = series;
        c.actual = ev.evaluate(e, *series.truncation()).truncated(*series.truncation()).normalized();
        c.ok = c.actual == c.expected;
        out.push_back(std::move(c));
    }
    return out;
}

Report reproduce_paper(std::int64_t depth)
{
    if (depth < 60) {
        throw std::invalid_argument("reproduction needs depth >= 60, got " + std::to_string(depth));
    }
    Report rep;
    rep.depth = depth;
    for (std::int64_t n : {12, 16, 24}) {
        rep.cusps.push_back(cusp_set(n));
    }
    rep.tables = order_tables();
    rep.alpha_images = alpha_images(24, 12);
    for (const auto& t : rep.tables) {
        if (t.id == "tbl32") {
            for (const auto& e : t.rows.back().entries) {
                if (e.value != 0) {
                    rep.failures.push_back("tbl32: ord H0 at " + e.cusp.to_string() + " is " + to_string(e.value));
                }
            }
        }
    }
    rep.expansions = expansion_checks();
    for (const auto& c : rep.expansions) {
        if (!c.ok) {
            rep.failures.push_back("expansion " + c.name + ": expected " + c.expected.to_string() + ", got " +
                                   c.actual.to_string());
        }
    }

    Evaluator ev;
    for (const auto& stmt : registry()) {
        Certificate cert = run(ev, stmt, stmt.bailey ? std::min(depth, default_depth(stmt)) : depth);
        if (!passes(cert.verdict)) {
            rep.failures.push_back(stmt.id + ": " + cert.reason);
        }
        if (stmt.headline) {
            (stmt.mode == ProofMode::Heuristic ? rep.heuristic : rep.headline).push_back(std::move(cert));
        } else if (stmt.relation) {
            rep.relations.push_back(std::move(cert));
        } else if (stmt.bailey) {
            rep.bailey.push_back(std::move(cert));
        } else {
            rep.chain.push_back(std::move(cert));
        }
    }
    return rep;
}

namespace {

std::string generator_var(const Certificate& cert)
{
    const auto pos = cert.generator.find(" = ");
    return pos == std::string::npos ? std::string("g") : cert.generator.substr(0, pos);
}

std::string render_row(const PoleBoundTable& t)
{
    std::string out = t.label + ":";
    for (const auto& e : t.entries) {
        out += "  " + e.cusp.to_string() + " " + (e.exact ? "" : ">=") + to_string(e.value);
    }
    return out;
}

void render_certificate(std::ostringstream& os, const Certificate& cert, const std::string& indent)
{
    os << indent << cert.id << "  " << to_string(cert.verdict) << "  (" << cert.mode;
    if (cert.level > 0) {
        os << ", level " << cert.level;
    }
    os << ")\n";
    if (!cert.generator.empty()) {
        os << indent << "  generator: " << cert.generator << "\n";
    }
    if (cert.bounds) {
        os << indent << "  bounds: " << render_row(*cert.bounds) << "\n";
    }
    if (!cert.poly.coeffs.empty()) {
        os << indent << "  poly: " << cert.poly.to_string(generator_var(cert)) << "\n";
    }
    if (cert.window) {
        os << indent << "  window: [" << to_string(cert.window->from) << ", " << to_string(cert.window->to) << ")\n";
    }
    if (cert.failure) {
        os << indent << "  failure: q^" << to_string(cert.failure->exponent) << " coefficient "
           << to_string(cert.failure->coefficient) << "\n";
    }
    os << indent << "  reason: " << cert.reason << "\n";
    if (!cert.axioms.empty()) {
        os << indent << "  axioms:\n";
        for (const auto& a : cert.axioms) {
            os << indent << "    - " << a << "\n";
        }
    }
    if (!cert.steps.empty()) {
        os << indent << "  steps:";
        for (const auto& s : cert.steps) {
            os << " " << s.id << "=" << to_string(s.verdict);
        }
        os << "\n";
    }
}

}  // namespace

std::string render_text(const Certificate& cert)
{
    std::ostringstream os;
    render_certificate(os, cert, "");
    return os.str();
}

std::string render_text(const Report& report)
{
    std::ostringstream os;
    os << "reproduction at depth " << report.depth << ": " << (report.ok() ? "ok" : "FAILED") << "\n\n";
    for (const auto& ct : report.cusps) {
        os << "cusps of Gamma0(" << ct.level << "):";
        for (const auto& e : ct.entries) {
            os << "  " << e.cusp.to_string() << " (width " << e.width << ")";
        }
        os << "\n";
    }
    os << "\nalpha = [1 0; 12 1] on Gamma0(24):\n";
    for (const auto& img : report.alpha_images) {
        os << "  alpha(" << img.cusp.to_string() << ") = " << img.image.to_string() << " ~ "
           << img.representative.to_string() << "\n";
    }
    for (const auto& t : report.tables) {
        os << "\n" << t.id << ": " << t.caption << "\n";
        for (const auto& row : t.rows) {
            os << "  " << render_row(row) << "\n";
        }
    }
    os << "\nexpansions:\n";
    for (const auto& c : report.expansions) {
        os << "  " << c.name << " = " << c.actual.to_string() << (c.ok ? "" : "   MISMATCH") << "\n";
    }
    auto section = [&os](const char* title, const std::vector<Certificate>& certs) {
        os << "\n" << title << ":\n";
        for (const auto& c : certs) {
            render_certificate(os, c, "  ");
        }
    };
    section("polynomial relations", report.relations);
    section("headline certificates", report.headline);
    section("heuristic checks", report.heuristic);
    section("bilateral summation instances", report.bailey);
    section("chained steps", report.chain);
    if (!report.failures.empty()) {
        os << "\nfailures:\n";
        for (const auto& f : report.failures) {
            os << "  " << f << "\n";
        }
    }
    return os.str();
}

}  // namespace qeta
