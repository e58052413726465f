#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace steadycert {

/// Exponent vector. Length always matches the variable context it lives in.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<std::uint32_t> e) : e_(std::move(e)) {}
    explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}

    std::size_t size() const { return e_.size(); }
    std::uint32_t operator[](std::size_t i) const { return e_[i]; }
    std::uint32_t& operator[](std::size_t i) { return e_[i]; }
    const std::vector<std::uint32_t>& exponents() const { return e_; }

    std::uint64_t degree() const;
    bool is_one() const;

    Monomial operator*(const Monomial& o) const;
    bool divides(const Monomial& o) const;       // this | o
    Monomial divide_into(const Monomial& o) const;  // o / this, pre: divides
    bool operator==(const Monomial& o) const { return e_ == o.e_; }

private:
    std::vector<std::uint32_t> e_;
};

/// Entrywise max.
Monomial lcm(const Monomial& a, const Monomial& b);

enum class OrderKind { Lex, DegRevLex, Block };

/// Total multiplicative monomial order with 1 minimal.
///  - lex: first nonzero entry of a-b decides, read left to right.
///  - degrevlex: total degree first; ties broken by the rightmost nonzero
///    entry of a-b being negative.
///  - block(k): the first k variables form an elimination block; blocks are
///    compared left to right, degrevlex inside each block.
class TermOrder {
public:
    static TermOrder lex() { return TermOrder(OrderKind::Lex, 0); }
    static TermOrder degrevlex() { return TermOrder(OrderKind::DegRevLex, 0); }
    static TermOrder block(std::size_t split) { return TermOrder(OrderKind::Block, split); }
    static TermOrder parse(const std::string& name);

    OrderKind kind() const { return kind_; }
    std::size_t block_split() const { return split_; }

    /// -1 if a < b, 0 if equal, +1 if a > b. Throws ContextError on length mismatch.
    int compare(const Monomial& a, const Monomial& b) const;

    bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

    std::string name() const;
    bool operator==(const TermOrder& o) const { return kind_ == o.kind_ && split_ == o.split_; }

private:
    TermOrder(OrderKind k, std::size_t s) : kind_(k), split_(s) {}
    OrderKind kind_;
    std::size_t split_;
};

}  // namespace steadycert
