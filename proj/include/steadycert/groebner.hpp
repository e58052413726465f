#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "steadycert/polynomial.hpp"

namespace steadycert {

/// Finite generator list in a shared variable context. Zero generators are
/// dropped on construction; at least one nonzero generator is required.
struct Ideal {
    ContextPtr context;
    std::vector<Polynomial> generators;

    Ideal(ContextPtr ctx, std::vector<Polynomial> gens);
};

/// Resource caps for basis computations. Exceeding a cap raises BudgetError;
/// a partial basis is never returned.
struct Budget {
    std::uint64_t max_pairs = 500000;
    double max_seconds = 600.0;
    static Budget unlimited() { return {UINT64_MAX, 1e18}; }
};

struct DivisionResult {
    std::vector<Polynomial> quotients;  // one per divisor
    Polynomial remainder;
};

/// Multivariate division: f = sum q_i g_i + r with no term of r divisible by
/// any LT(g_i). Deterministic: the first divisible divisor in list order wins.
DivisionResult normal_form(const Polynomial& f, std::span<const Polynomial> divisors, TermOrder ord);

/// S(f,g) = (x^gamma/LT(f)) f - (x^gamma/LT(g)) g, x^gamma = lcm of leading
/// monomials. Leading terms cancel by construction.
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, TermOrder ord);

struct GroebnerBasis {
    ContextPtr context;
    TermOrder order = TermOrder::degrevlex();
    std::vector<Polynomial> basis;
    bool reduced = false;
    /// When cofactor tracking was requested: basis[i] == sum_j cofactors[i][j] * gens[j].
    std::vector<std::vector<Polynomial>> cofactors;
};

/// Buchberger's algorithm with the normal (lowest lcm degree first) selection
/// strategy and the product/chain pair-elimination criteria. New elements are
/// made monic on insertion.
GroebnerBasis buchberger(const Ideal& ideal, TermOrder ord, const Budget& budget = Budget(),
                         bool track_cofactors = false);

/// Unique reduced basis: monic, mutually tail-reduced, sorted by decreasing
/// leading monomial.
GroebnerBasis reduce_basis(const GroebnerBasis& gb);

GroebnerBasis groebner(const Ideal& ideal, TermOrder ord, const Budget& budget = Budget());

bool member(const Polynomial& f, const GroebnerBasis& gb);
bool member(const Polynomial& f, const Ideal& ideal, TermOrder ord = TermOrder::degrevlex(),
            const Budget& budget = Budget());

/// Generators of I ∩ Q[last n-k variables], computed with the block
/// elimination order. The result lives over the suffix context.
Ideal eliminate(const Ideal& ideal, std::size_t k, const Budget& budget = Budget());

Ideal intersect(const Ideal& a, const Ideal& b, const Budget& budget = Budget());

/// Ideal quotient I : J = { f : f*J ⊆ I }.
Ideal quotient(const Ideal& a, const Ideal& b, const Budget& budget = Budget());

/// Rabinowitsch: f ∈ √I iff 1 ∈ I + <1 - t f> in an extended context.
bool radical_member(const Polynomial& f, const Ideal& ideal, const Budget& budget = Budget());

/// True iff the two ideals have identical reduced bases under `ord`.
bool ideal_equal(const Ideal& a, const Ideal& b, TermOrder ord = TermOrder::degrevlex(),
                 const Budget& budget = Budget());

/// True iff the reduced basis is {1}.
bool is_unit_ideal(const Ideal& ideal, const Budget& budget = Budget());

}  // namespace steadycert
