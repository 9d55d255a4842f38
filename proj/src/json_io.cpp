#include "qeta/json_io.hpp"

#include <stdexcept>

namespace qeta {

namespace {

std::string str(const Rational& r) { return to_string(r); }

Rational rat(const Json& j)
{
    if (j.is_number_integer()) {
        return Rational(j.get<std::int64_t>());
    }
    return parse_rational(j.get<std::string>());
}

QSeries::Key key_for(const Rational& exponent, std::int64_t grid)
{
    const Rational k = exponent * grid;
    if (!is_integer(k)) {
        throw std::invalid_argument("exponent " + str(exponent) + " is off the grid 1/" + std::to_string(grid));
    }
    return to_int64(k.get_num());
}

}  // namespace

Json to_json(const QSeries& s)
{
    Json j;
    j["grid"] = s.grid();
    j["truncation"] = s.truncation() ? Json(str(*s.truncation())) : Json(nullptr);
    Json terms = Json::array();
    for (const auto& t : s.terms()) {
        terms.push_back({{"exponent", str(make_rational(t.key, s.grid()))}, {"coeff", str(t.coeff)}});
    }
    j["terms"] = std::move(terms);
    return j;
}

QSeries series_from_json(const Json& j)
{
    const std::int64_t grid = j.at("grid").get<std::int64_t>();
    std::optional<QSeries::Key> trunc;
    if (!j.at("truncation").is_null()) {
        trunc = key_for(rat(j.at("truncation")), grid);
    }
    std::vector<QSeries::Term> terms;
    for (const auto& t : j.at("terms")) {
        terms.push_back({key_for(rat(t.at("exponent")), grid), rat(t.at("coeff"))});
    }
    return QSeries::from_terms(grid, trunc, std::move(terms));
}

Json to_json(const CuspTable& t)
{
    Json cusps = Json::array();
    for (const auto& e : t.entries) {
        cusps.push_back({{"cusp", e.cusp.to_string()}, {"width", e.width}});
    }
    return {{"level", t.level}, {"cusps", std::move(cusps)}};
}

CuspTable cusp_table_from_json(const Json& j)
{
    CuspTable t;
    t.level = j.at("level").get<std::int64_t>();
    for (const auto& e : j.at("cusps")) {
        t.entries.push_back({parse_cusp(e.at("cusp").get<std::string>()), e.at("width").get<std::int64_t>()});
    }
    return t;
}

Json to_json(const OrderTable& t)
{
    Json orders = Json::array();
    for (const auto& e : t.entries) {
        orders.push_back({{"cusp", e.cusp.to_string()}, {"value", str(e.value)}, {"exact", e.exact}});
    }
    return {{"level", t.level}, {"label", t.label}, {"orders", std::move(orders)}};
}

OrderTable order_table_from_json(const Json& j)
{
    OrderTable t;
    t.level = j.at("level").get<std::int64_t>();
    t.label = j.value("label", std::string());
    for (const auto& e : j.at("orders")) {
        t.entries.push_back({parse_cusp(e.at("cusp").get<std::string>()), rat(e.at("value")), e.at("exact").get<bool>()});
    }
    return t;
}

Json to_json(const Certificate& c)
{
    Json j;
    j["id"] = c.id;
    j["mode"] = c.mode;
    j["axioms"] = c.axioms;
    j["level"] = c.level;
    j["generator"] = c.generator;
    if (c.bounds) {
        Json b = Json::object();
        for (const auto& e : c.bounds->entries) {
            b[e.cusp.to_string()] = {{"value", str(e.value)}, {"exact", e.exact}};
        }
        j["bounds"] = std::move(b);
    } else {
        j["bounds"] = nullptr;
    }
    Json poly = Json::array();
    for (const auto& a : c.poly.coeffs) {
        poly.push_back(str(a));
    }
    j["poly"] = std::move(poly);
    j["window"] = c.window ? Json{{"from", str(c.window->from)}, {"to", str(c.window->to)}} : Json(nullptr);
    j["verdict"] = to_string(c.verdict);
    j["failure"] = c.failure ? Json{{"exponent", str(c.failure->exponent)}, {"coefficient", str(c.failure->coefficient)}}
                             : Json(nullptr);
    j["reason"] = c.reason;
    Json steps = Json::array();
    for (const auto& s : c.steps) {
        steps.push_back(to_json(s));
    }
    j["steps"] = std::move(steps);
    return j;
}

Certificate certificate_from_json(const Json& j)
{
    Certificate c;
    c.id = j.at("id").get<std::string>();
    c.mode = j.at("mode").get<std::string>();
    c.axioms = j.at("axioms").get<std::vector<std::string>>();
    c.level = j.at("level").get<std::int64_t>();
    c.generator = j.value("generator", std::string());
    if (const auto& b = j.at("bounds"); !b.is_null()) {
        PoleBoundTable t;
        t.level = c.level;
        t.label = c.id;
        for (const auto& [cusp, e] : b.items()) {
            t.entries.push_back({parse_cusp(cusp), rat(e.at("value")), e.at("exact").get<bool>()});
        }
        c.bounds = std::move(t);
    }
    for (const auto& a : j.at("poly")) {
        c.poly.coeffs.push_back(rat(a));
    }
    if (const auto& w = j.at("window"); !w.is_null()) {
        c.window = Window{rat(w.at("from")), rat(w.at("to"))};
    }
    c.verdict = parse_verdict(j.at("verdict").get<std::string>());
    if (j.contains("failure") && !j.at("failure").is_null()) {
        c.failure = Failure{rat(j["failure"].at("exponent")), rat(j["failure"].at("coefficient"))};
    }
    c.reason = j.value("reason", std::string());
    if (j.contains("steps")) {
        for (const auto& s : j.at("steps")) {
            c.steps.push_back(certificate_from_json(s));
        }
    }
    return c;
}

Json to_json(const Report& r)
{
    Json j;
    j["depth"] = r.depth;
    j["ok"] = r.ok();
    Json cusps = Json::array();
    for (const auto& t : r.cusps) {
        cusps.push_back(to_json(t));
    }
    j["cusps"] = std::move(cusps);
    Json images = Json::array();
    for (const auto& img : r.alpha_images) {
        images.push_back({{"cusp", img.cusp.to_string()},
                          {"image", img.image.to_string()},
                          {"equivalent", img.representative.to_string()}});
    }
    j["alpha_images"] = std::move(images);
    Json tables = Json::array();
    for (const auto& t : r.tables) {
        Json rows = Json::array();
        for (const auto& row : t.rows) {
            rows.push_back(to_json(row));
        }
        tables.push_back({{"id", t.id}, {"caption", t.caption}, {"level", t.level}, {"rows", std::move(rows)}});
    }
    j["tables"] = std::move(tables);
    Json expansions = Json::array();
    for (const auto& e : r.expansions) {
        expansions.push_back({{"name", e.name},
                              {"text", e.actual.to_string()},
                              {"expected", to_json(e.expected)},
                              {"actual", to_json(e.actual)},
                              {"ok", e.ok}});
    }
    j["expansions"] = std::move(expansions);
    auto certs = [](const std::vector<Certificate>& v) {
        Json a = Json::array();
        for (const auto& c : v) {
            a.push_back(to_json(c));
        }
        return a;
    };
    j["relations"] = certs(r.relations);
    j["headline"] = certs(r.headline);
    j["heuristic"] = certs(r.heuristic);
    j["bailey"] = certs(r.bailey);
    j["chain"] = certs(r.chain);
    j["failures"] = r.failures;
    return j;
}

Json error_json(const std::string& kind, const std::string& message)
{
    return {{"error", kind}, {"message", message}};
}

}  // namespace qeta
