#pragma once

#include <string>
#include <vector>

#include "steadycert/polynomial.hpp"
#include "steadycert/rational.hpp"

namespace steadycert {

/// Dense univariate polynomial over Q, coefficients ascending (c0 + c1*x + ...).
/// The zero polynomial has an empty coefficient list.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> ascending) : c_(std::move(ascending)) { trim(); }
    static UniPoly constant(const Rational& c) { return UniPoly({c}); }
    static UniPoly x() { return UniPoly({Rational(0), Rational(1)}); }
    static UniPoly linear(const Rational& c0, const Rational& c1) { return UniPoly({c0, c1}); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& operator[](std::size_t i) const { return c_[i]; }
    Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
    const Rational& leading() const;

    UniPoly operator-() const;
    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly scaled(const Rational& c) const;
    UniPoly monic() const;
    UniPoly derivative() const;
    UniPoly pow(unsigned e) const;

    /// Euclidean division: *this = q*d + r with deg r < deg d.
    std::pair<UniPoly, UniPoly> divrem(const UniPoly& d) const;
    UniPoly operator%(const UniPoly& d) const { return divrem(d).second; }

    template <typename T>
    T eval(const T& x) const {
        T acc = T(0);
        for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + cast_to<T>(c_[i]);
        return acc;
    }
    double eval_d(double x) const;

    bool operator==(const UniPoly& o) const { return c_ == o.c_; }
    std::string str(const std::string& var = "x") const;

private:
    template <typename T>
    static T cast_to(const Rational& r) {
        if constexpr (std::is_same_v<T, double>) return r.to_double();
        else return T(r);
    }
    void trim();
    std::vector<Rational> c_;
};

/// Monic gcd, Euclid's algorithm.
UniPoly gcd(const UniPoly& a, const UniPoly& b);

/// p / gcd(p, p'): same roots, all simple.
UniPoly squarefree_part(const UniPoly& p);

/// Extracts a univariate polynomial from a one-variable Polynomial (the context
/// must have exactly one variable).
UniPoly to_unipoly(const Polynomial& p);

/// Collapses a multivariate polynomial by sending every variable in `vars` to
/// the same indeterminate; all other variables must be absent.
UniPoly collapse_to_unipoly(const Polynomial& p, const std::vector<std::string>& vars);

Polynomial to_polynomial(const UniPoly& p, const ContextPtr& one_var_ctx);

/// Evaluates a multivariate polynomial at univariate polynomial arguments,
/// reducing modulo `mod` after every operation (mod must be nonzero).
UniPoly eval_at_unipolys(const Polynomial& p, const std::vector<UniPoly>& args, const UniPoly& mod);

}  // namespace steadycert
