#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "steadycert/errors.hpp"
#include "steadycert/monomial.hpp"
#include "steadycert/rational.hpp"

namespace steadycert {

/// Ordered list of variable names. Polynomials from different contexts never
/// mix implicitly; equality is by name sequence.
class VarContext {
public:
    explicit VarContext(std::vector<std::string> names);
    const std::vector<std::string>& names() const { return names_; }
    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    std::optional<std::size_t> index_of(const std::string& v) const;
    bool operator==(const VarContext& o) const { return names_ == o.names_; }

private:
    std::vector<std::string> names_;
};

using ContextPtr = std::shared_ptr<const VarContext>;

ContextPtr make_context(std::vector<std::string> names);
bool same_context(const ContextPtr& a, const ContextPtr& b);

struct Term {
    Rational coeff;
    Monomial mono;
};

/// Multivariate polynomial over Q with an attached term order. Terms are kept
/// sorted strictly decreasing, no zero coefficients, no duplicate monomials;
/// the leading term is terms().front().
class Polynomial {
public:
    Polynomial() = default;  // zero polynomial over the empty context
    Polynomial(ContextPtr ctx, TermOrder ord) : ctx_(std::move(ctx)), ord_(ord) {}
    Polynomial(ContextPtr ctx, TermOrder ord, std::vector<Term> terms);

    static Polynomial zero(ContextPtr ctx, TermOrder ord = TermOrder::degrevlex());
    static Polynomial constant(ContextPtr ctx, const Rational& c, TermOrder ord = TermOrder::degrevlex());
    static Polynomial variable(ContextPtr ctx, const std::string& name, TermOrder ord = TermOrder::degrevlex());

    /// Parses "+ - * ^ ( )" expressions with integer/decimal/fraction literals,
    /// e.g. "2*s*x5 + s + b*x5 - 2*g*x5^2 - g*x5".
    static Polynomial parse(ContextPtr ctx, std::string_view text, TermOrder ord = TermOrder::degrevlex());

    const ContextPtr& context() const { return ctx_; }
    const TermOrder& order() const { return ord_; }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    std::size_t term_count() const { return terms_.size(); }

    const Term& leading_term() const;
    const Monomial& leading_monomial() const { return leading_term().mono; }
    const Rational& leading_coeff() const { return leading_term().coeff; }
    std::uint64_t total_degree() const;
    std::uint64_t degree_in(std::size_t var) const;

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial scaled(const Rational& c) const;
    Polynomial mul_term(const Rational& c, const Monomial& m) const;
    Polynomial pow(unsigned e) const;
    Polynomial monic() const;  // pre: nonzero

    Polynomial with_order(TermOrder ord) const;
    Polynomial derivative(std::size_t var) const;

    /// Substitutes a subset of variables by rational values; the result lives
    /// over the remaining variables (original relative order).
    Polynomial substitute(const std::map<std::string, Rational>& values) const;

    /// Reinterprets this polynomial over a larger context that contains every
    /// variable of the current one (matched by name).
    Polynomial embed(const ContextPtr& bigger, TermOrder ord) const;

    /// Evaluation at a full point, one value per context variable.
    template <typename T>
    T evaluate(std::span<const T> point) const {
        if (point.size() != ctx_->size()) throw ContextError("evaluation point arity mismatch");
        T acc = T(0);
        for (const auto& t : terms_) {
            T m = T(from_rational_tag<T>(t.coeff));
            for (std::size_t i = 0; i < point.size(); ++i)
                for (std::uint32_t k = 0; k < t.mono[i]; ++k) m = m * point[i];
            acc = acc + m;
        }
        return acc;
    }

    /// Structural equality as an element of Q[context] (order-insensitive).
    bool equals(const Polynomial& o) const;

    std::string str() const;

private:
    template <typename T>
    static T from_rational_tag(const Rational& r) {
        if constexpr (std::is_same_v<T, double>) return r.to_double();
        else return T(r);
    }

    void normalize();

    ContextPtr ctx_;
    TermOrder ord_ = TermOrder::degrevlex();
    std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

}  // namespace steadycert
