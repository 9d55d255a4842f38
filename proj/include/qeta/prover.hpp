#pragma once

// The identity registry, heuristic and conditional verification, and the
// end-to-end reproduction report.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qeta/expr.hpp"
#include "qeta/hauptmodul.hpp"

namespace qeta {

enum class ProofMode { Heuristic, Conditional };

std::string to_string(ProofMode m);

/// Data for a relation f = P(g) certified by the genus-zero argument.
struct RelationPlan {
    std::vector<PoleBoundTable> parts;
    EtaQuotient generator;
    std::string generator_name;
    HauptPoly expected;
    /// Generalized eta-quotients whose Gamma1(N) conditions must hold.
    std::vector<GenEtaQuotient> gamma1_inputs;
};

struct IdentityStatement {
    std::string id;
    std::string title;
    Expr lhs;
    Expr rhs;
    std::int64_t level = 1;
    ProofMode mode = ProofMode::Heuristic;
    std::vector<std::string> axioms;
    /// Registry ids this statement is derived from.
    std::vector<std::string> depends;
    std::optional<RelationPlan> relation;
    /// (L, j) for instances of the bilateral Lambert summation.
    std::optional<std::pair<std::int64_t, std::int64_t>> bailey;
    std::string derivation;
    bool headline = false;
};

/// Named functions: h, s, h1, h2, h3, H, j1, j3, j4, s1..s4, z, S, g4, F.
const SymbolTable& named_objects();

const std::vector<IdentityStatement>& registry();

/// Throws std::out_of_range for an unknown id.
const IdentityStatement& lookup(const std::string& id);

/// Default depth in grid steps for a statement: 120 for Bailey instances,
/// 200 otherwise.
std::int64_t default_depth(const IdentityStatement& stmt);

/// Exponent bound (exclusive) for `depth` grid steps of the statement.
Rational depth_exponent(const IdentityStatement& stmt, std::int64_t depth);

/// lhs - rhs vanishes below the depth: verified-to-depth; otherwise refuted
/// with the first failing exponent.
Certificate verify_heuristic(const IdentityStatement& stmt, std::int64_t depth);

/// Verifies the dependency chain, then the statement's own step (relation
/// certificate or series check). Axioms are collected from all steps.
Certificate verify_conditional(const IdentityStatement& stmt, std::int64_t depth);

/// Dispatches on the statement's proof mode.
Certificate verify(const IdentityStatement& stmt, std::int64_t depth);

/// The statement with lhs replaced by lhs + delta q^exponent.
IdentityStatement perturbed(const IdentityStatement& stmt, const Rational& exponent, const Rational& delta);

/// An ad hoc statement lhs = rhs checked heuristically.
IdentityStatement adhoc_statement(const std::string& lhs, const std::string& rhs);

struct NamedTable {
    std::string id;
    std::string caption;
    std::int64_t level = 1;
    std::vector<PoleBoundTable> rows;
};

/// alpha(r) ~ representative, for alpha = [1 0; k 1] on Gamma0(N).
struct CuspImage {
    Cusp cusp;
    Cusp image;
    Cusp representative;
};

struct ExpansionCheck {
    std::string name;
    QSeries expected;
    QSeries actual;
    bool ok = false;
};

struct Report {
    std::int64_t depth = 0;
    std::vector<CuspTable> cusps;
    std::vector<NamedTable> tables;
    std::vector<CuspImage> alpha_images;
    std::vector<ExpansionCheck> expansions;
    std::vector<Certificate> relations;
    std::vector<Certificate> headline;
    std::vector<Certificate> heuristic;
    std::vector<Certificate> bailey;
    std::vector<Certificate> chain;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

/// The seven order tables of the level-12 and level-16 arguments.
std::vector<NamedTable> order_tables();

/// alpha = [1 0; 12 1] images of the cusps of Gamma0(24).
std::vector<CuspImage> alpha_images(std::int64_t level, std::int64_t shift);

/// The printed q-expansions, compared with fresh evaluations.
std::vector<ExpansionCheck> expansion_checks();

/// Throws std::invalid_argument when depth < 60.
Report reproduce_paper(std::int64_t depth);

std::string render_text(const Certificate& cert);
std::string render_text(const Report& report);

}  // namespace qeta
