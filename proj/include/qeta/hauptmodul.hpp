#pragma once

// Order-bound bookkeeping for sums of non-modular pieces and the genus-zero
// solver that writes a function with poles only at infinity as a polynomial
// in a Hauptmodul.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qeta/etaforms.hpp"
#include "qeta/series.hpp"

namespace qeta {

using PoleBoundTable = OrderTable;

/// sum_i coeffs[i] g^i
struct HauptPoly {
    std::vector<Rational> coeffs;

    /// -1 for the zero polynomial.
    std::int64_t degree() const { return static_cast<std::int64_t>(coeffs.size()) - 1; }

    /// Drops zero leading coefficients.
    HauptPoly trimmed() const;

    /// Horner evaluation at a series.
    QSeries evaluate(const QSeries& g) const;

    /// "h^2 + 2*h - 1"
    std::string to_string(const std::string& var = "g") const;

    friend bool operator==(const HauptPoly& a, const HauptPoly& b);
};

/// Per cusp: the minimum over the parts, exact when exactly one part attains
/// it and that entry is exact.
PoleBoundTable combine_order_bounds(std::span<const PoleBoundTable> parts, std::string label = {});

struct GeneratorExpression {
    HauptPoly poly;
    QSeries remainder;
};

/// Greedy elimination of the principal part of f against powers of g.
/// g must have valuation exactly -1; f must have valuation >= -m.
/// Throws std::invalid_argument("degree bound exceeded") or ("grid mismatch").
GeneratorExpression express_in_generator(const QSeries& f, const QSeries& g, std::int64_t m);

enum class Verdict { ProvedConditional, VerifiedToDepth, Refuted, Inconclusive };

std::string to_string(Verdict v);
Verdict parse_verdict(const std::string& text);

struct Failure {
    Rational exponent;
    Rational coefficient;
};

struct Window {
    Rational from;
    /// Exclusive: everything strictly below `to` was checked.
    Rational to;
};

struct Certificate {
    std::string id;
    std::string mode = "conditional";  // "heuristic" | "conditional"
    std::vector<std::string> axioms;
    std::int64_t level = 1;
    std::string generator;
    std::optional<PoleBoundTable> bounds;
    HauptPoly poly;
    std::optional<Window> window;
    Verdict verdict = Verdict::Inconclusive;
    std::optional<Failure> failure;
    std::string reason;
    /// Certificates of the facts this one was chained from.
    std::vector<Certificate> steps;

    friend bool operator==(const Certificate&, const Certificate&);
};

struct CertifyRequest {
    std::string id;
    /// Expansion of the function at infinity.
    QSeries f;
    /// One order table per summand (combined here) or a single table.
    std::vector<PoleBoundTable> parts;
    EtaQuotient generator;
    std::string generator_name = "g";
    std::vector<std::string> axioms;
    /// When present, f - expected(g) must vanish; its first nonzero term is
    /// reported as the refutation.
    std::optional<HauptPoly> expected;
};

/// Checks genus 0, the generator, the combined bounds and the vanishing of the
/// remainder through q^(deg + 2).
Certificate certify_expression(const CertifyRequest& request);

/// Guard window beyond the constant term, in integer steps.
std::int64_t guard_steps(std::int64_t degree);

}  // namespace qeta
