// Command-line front end: cusp data, order tables, expansions, the
// Hauptmodul solver, identity verification and the reproduction report.
//
// Exit codes: 0 ok/proved/verified, 1 refuted, 2 usage or parse error,
// 3 inconclusive.

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "qeta/json_io.hpp"
#include "qeta/prover.hpp"

using namespace qeta;

namespace {

constexpr int kOk = 0;
constexpr int kRefuted = 1;
constexpr int kUsage = 2;
constexpr int kInconclusive = 3;

struct Config {
    std::optional<std::int64_t> depth;
    std::string format = "text";
    std::string output;
};

int exit_code(Verdict v)
{
    switch (v) {
    case Verdict::ProvedConditional:
    case Verdict::VerifiedToDepth:
        return kOk;
    case Verdict::Refuted:
        return kRefuted;
    case Verdict::Inconclusive:
        return kInconclusive;
    }
    return kInconclusive;
}

class Output {
public:
    explicit Output(const Config& cfg) : cfg_(cfg) {}

    bool json() const { return cfg_.format == "json"; }

    void emit(const std::string& text)
    {
        if (cfg_.output.empty()) {
            std::cout << text;
            std::cout.flush();
            return;
        }
        std::ofstream f(cfg_.output);
        if (!f) {
            throw std::runtime_error("cannot write " + cfg_.output);
        }
        f << text;
    }

    void emit(const Json& j) { emit(j.dump(2) + "\n"); }

private:
    const Config& cfg_;
};

std::string order_text(const OrderEntry& e) { return (e.exact ? "" : ">=") + to_string(e.value); }

int cmd_cusps(Output& out, std::int64_t n)
{
    if (n < 1) {
        throw std::invalid_argument("level must be >= 1");
    }
    const CuspTable t = cusp_set(n);
    if (out.json()) {
        out.emit(to_json(t));
        return kOk;
    }
    std::string text;
    for (const auto& e : t.entries) {
        text += e.cusp.to_string() + " width " + std::to_string(e.width) + "\n";
    }
    out.emit(text);
    return kOk;
}

int cmd_orders(Output& out, const std::string& spec, std::int64_t n)
{
    const ParsedQuotient q = parse_quotient(spec);
    OrderTable t;
    std::string check;
    if (q.generalized) {
        t = gen_eta_order_table(q.geta, n, q.geta.to_string());
        const Gamma1Check c = check_gamma1(q.geta);
        check = std::string("Gamma1(") + std::to_string(q.geta.level()) + ") conditions " +
                (c.holds() ? "hold" : "fail");
    } else {
        t = eta_order_table(q.eta, n, q.eta.to_string());
        const Gamma0Check c = check_gamma0(q.eta.lifted(n));
        check = "weight " + to_string(c.weight) + ", Gamma0(" + std::to_string(n) + ") conditions " +
                (c.holds() ? "hold" : "fail");
    }
    if (out.json()) {
        out.emit(to_json(t));
        return kOk;
    }
    std::string text = t.label + " on Gamma0(" + std::to_string(n) + "); " + check + "\n";
    for (const auto& e : t.entries) {
        text += e.cusp.to_string() + " " + order_text(e) + "\n";
    }
    out.emit(text);
    return kOk;
}

int cmd_expand(Output& out, const Config& cfg, const std::string& text)
{
    const Expr e = parse_expr(text, named_objects());
    const std::int64_t depth = cfg.depth.value_or(200);
    const QSeries s = evaluate(e, make_rational(depth, e.step_grid()));
    if (out.json()) {
        out.emit(Json{{"expr", e.to_string()}, {"series", to_json(s)}});
        return kOk;
    }
    out.emit(s.to_string(std::numeric_limits<std::size_t>::max()) + "\n");
    return kOk;
}

int cmd_solve(Output& out, const Config& cfg, const std::string& f_text, const std::string& g_text, std::int64_t m)
{
    const Expr f = parse_expr(f_text, named_objects());
    const Expr g = parse_expr(g_text, named_objects());
    const std::int64_t depth = cfg.depth.value_or(200);
    const Rational t(depth);
    Evaluator ev;
    const QSeries fs = ev.evaluate(f, t);
    const QSeries gs = ev.evaluate(g, t + m);
    const GeneratorExpression sol = express_in_generator(fs, gs, m);

    Verdict verdict = Verdict::VerifiedToDepth;
    std::string reason;
    std::optional<Failure> failure;
    const Rational need(guard_steps(m) + 1);
    const Rational known = sol.remainder.truncation().value_or(t);
    if (!sol.remainder.is_zero()) {
        const auto [e, c] = sol.remainder.leading();
        failure = Failure{e, c};
        verdict = Verdict::Refuted;
        reason = "remainder starts at q^" + to_string(e) + " with coefficient " + to_string(c);
    } else if (known < need) {
        verdict = Verdict::Inconclusive;
        reason = "remainder known below q^" + to_string(known) + ", guard window needs q^" + to_string(need);
    } else {
        reason = "remainder vanishes below q^" + to_string(known);
    }

    if (out.json()) {
        Json poly = Json::array();
        for (const auto& c : sol.poly.coeffs) {
            poly.push_back(to_string(c));
        }
        Json j{{"f", f.to_string()},
               {"g", g.to_string()},
               {"degree", m},
               {"poly", std::move(poly)},
               {"remainder", to_json(sol.remainder)},
               {"verdict", to_string(verdict)},
               {"reason", reason}};
        j["failure"] = failure ? Json{{"exponent", to_string(failure->exponent)},
                                      {"coefficient", to_string(failure->coefficient)}}
                               : Json(nullptr);
        out.emit(j);
    } else {
        const bool named = std::all_of(g_text.begin(), g_text.end(), [](unsigned char ch) { return std::isalnum(ch); });
        out.emit("poly: " + sol.poly.to_string(named ? g_text : "g") + "\nverdict: " + to_string(verdict) +
                 "\nreason: " + reason + "\n");
    }
    return exit_code(verdict);
}

int cmd_verify(Output& out, const Config& cfg, const std::vector<std::string>& args)
{
    IdentityStatement stmt;
    if (args.size() == 1) {
        stmt = lookup(args[0]);
    } else if (args.size() == 2) {
        stmt = adhoc_statement(args[0], args[1]);
    } else {
        throw std::invalid_argument("verify takes an identity id or two expressions");
    }
    const Certificate cert = verify(stmt, cfg.depth.value_or(default_depth(stmt)));
    if (out.json()) {
        out.emit(to_json(cert));
    } else {
        out.emit(render_text(cert));
    }
    return exit_code(cert.verdict);
}

int cmd_reproduce(Output& out, const Config& cfg)
{
    const Report rep = reproduce_paper(cfg.depth.value_or(200));
    if (out.json()) {
        out.emit(to_json(rep));
    } else {
        out.emit(render_text(rep));
    }
    if (rep.ok()) {
        return kOk;
    }
    for (const auto* group : {&rep.relations, &rep.headline, &rep.heuristic, &rep.bailey, &rep.chain}) {
        for (const auto& c : *group) {
            if (c.verdict == Verdict::Refuted) {
                return kRefuted;
            }
        }
    }
    return kInconclusive;
}

int cmd_registry(Output& out)
{
    if (out.json()) {
        Json a = Json::array();
        for (const auto& s : registry()) {
            a.push_back({{"id", s.id},
                         {"title", s.title},
                         {"level", s.level},
                         {"mode", to_string(s.mode)},
                         {"headline", s.headline},
                         {"lhs", s.lhs.to_string()},
                         {"rhs", s.rhs.to_string()},
                         {"depends", s.depends}});
        }
        out.emit(a);
        return kOk;
    }
    std::ostringstream os;
    for (const auto& s : registry()) {
        os << s.id << "  [" << to_string(s.mode) << ", level " << s.level << "]  " << s.title << "\n    "
           << s.lhs.to_string() << " = " << s.rhs.to_string() << "\n";
    }
    out.emit(os.str());
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact q-series, eta-quotient and Hauptmodul toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    Config cfg;
    app.add_option("--depth", cfg.depth, "depth in grid steps")->check(CLI::PositiveNumber);
    app.add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--output", cfg.output, "write to this file instead of standard output");

    std::int64_t level = 0;
    std::string spec;
    std::string expr;
    std::string f_text;
    std::string g_text;
    std::int64_t degree = 0;
    std::vector<std::string> verify_args;

    auto* cusps = app.add_subcommand("cusps", "cusps of Gamma0(N) with widths");
    cusps->add_option("N", level)->required();
    auto* orders = app.add_subcommand("orders", "orders of an (generalized) eta-quotient at the cusps of Gamma0(N)");
    orders->add_option("spec", spec)->required();
    orders->add_option("N", level)->required();
    auto* expand_cmd = app.add_subcommand("expand", "q-expansion of an expression");
    expand_cmd->add_option("expr", expr)->required();
    auto* solve = app.add_subcommand("solve", "write f as a polynomial of degree <= m in g");
    solve->add_option("f", f_text)->required();
    solve->add_option("g", g_text)->required();
    solve->add_option("m", degree)->required()->check(CLI::NonNegativeNumber);
    auto* verify_cmd = app.add_subcommand("verify", "verify a registry identity or an ad hoc lhs = rhs");
    verify_cmd->add_option("identity", verify_args)->required()->expected(1, 2);
    auto* reproduce = app.add_subcommand("reproduce", "regenerate every table, relation and certificate");
    auto* registry_cmd = app.add_subcommand("registry", "list the identity registry");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    Output out(cfg);
    try {
        if (cusps->parsed()) {
            return cmd_cusps(out, level);
        }
        if (orders->parsed()) {
            return cmd_orders(out, spec, level);
        }
        if (expand_cmd->parsed()) {
            return cmd_expand(out, cfg, expr);
        }
        if (solve->parsed()) {
            return cmd_solve(out, cfg, f_text, g_text, degree);
        }
        if (verify_cmd->parsed()) {
            return cmd_verify(out, cfg, verify_args);
        }
        if (reproduce->parsed()) {
            return cmd_reproduce(out, cfg);
        }
        if (registry_cmd->parsed()) {
            return cmd_registry(out);
        }
    } catch (const ParseError& e) {
        Json err = error_json("parse", e.what());
        err["position"] = e.position();
        err["token"] = e.token();
        out.json() ? out.emit(err) : void(std::cerr << "error: " << e.what() << "\n");
        return kUsage;
    } catch (const std::exception& e) {
        out.json() ? out.emit(error_json("input", e.what())) : void(std::cerr << "error: " << e.what() << "\n");
        return kUsage;
    }
    return kUsage;
}
