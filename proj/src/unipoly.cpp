#include "steadycert/unipoly.hpp"

#include <sstream>

#include "steadycert/errors.hpp"

namespace steadycert {

void UniPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const Rational& UniPoly::leading() const {
    if (c_.empty()) throw DomainError("leading coefficient of zero polynomial");
    return c_.back();
}

UniPoly UniPoly::operator-() const {
    UniPoly r(*this);
    for (auto& c : r.c_) c = -c;
    return r;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return UniPoly(std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return UniPoly();
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return UniPoly(std::move(r));
}

UniPoly UniPoly::scaled(const Rational& s) const {
    if (s.is_zero()) return UniPoly();
    UniPoly r(*this);
    for (auto& c : r.c_) c *= s;
    return r;
}

UniPoly UniPoly::monic() const { return scaled(leading().inv()); }

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<Rational> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return UniPoly(std::move(r));
}

UniPoly UniPoly::pow(unsigned e) const {
    UniPoly r = constant(1), base = *this;
    while (e) {
        if (e & 1) r = r * base;
        if (e > 1) base = base * base;
        e >>= 1;
    }
    return r;
}

std::pair<UniPoly, UniPoly> UniPoly::divrem(const UniPoly& d) const {
    if (d.is_zero()) throw DomainError("univariate division by zero");
    UniPoly r(*this);
    int dd = d.degree();
    if (degree() < dd) return {UniPoly(), r};
    std::vector<Rational> q(static_cast<std::size_t>(degree() - dd) + 1, Rational(0));
    Rational lead_inv = d.leading().inv();
    while (!r.is_zero() && r.degree() >= dd) {
        int k = r.degree() - dd;
        Rational f = r.leading() * lead_inv;
        q[static_cast<std::size_t>(k)] = f;
        // r -= f * x^k * d
        for (int i = 0; i <= dd; ++i) r.c_[static_cast<std::size_t>(i + k)] -= f * d.c_[static_cast<std::size_t>(i)];
        r.trim();
    }
    return {UniPoly(std::move(q)), r};
}

double UniPoly::eval_d(double x) const {
    double acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i].to_double();
    return acc;
}

std::string UniPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_zero()) continue;
        Rational c = c_[i];
        if (!first) { os << (c.sign() < 0 ? " - " : " + "); if (c.sign() < 0) c = -c; }
        else if (c.sign() < 0) { os << "-"; c = -c; }
        first = false;
        if (i == 0 || !c.is_one()) os << c.str();
        if (i > 0) {
            if (!c.is_one()) os << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a, y = b;
    while (!y.is_zero()) {
        UniPoly r = x % y;
        x = std::move(y);
        y = r.is_zero() ? r : r.monic();  // monic at each step controls growth
    }
    return x.is_zero() ? x : x.monic();
}

UniPoly squarefree_part(const UniPoly& p) {
    if (p.is_zero() || p.degree() == 0) return p;
    UniPoly g = gcd(p, p.derivative());
    if (g.degree() == 0) return p;
    return p.divrem(g).first;
}

UniPoly to_unipoly(const Polynomial& p) {
    if (p.context()->size() != 1) throw ContextError("to_unipoly expects a one-variable context");
    std::vector<Rational> c(p.is_zero() ? 0 : p.total_degree() + 1, Rational(0));
    for (const auto& t : p.terms()) c[t.mono[0]] = t.coeff;
    return UniPoly(std::move(c));
}

UniPoly collapse_to_unipoly(const Polynomial& p, const std::vector<std::string>& vars) {
    std::vector<bool> collapse(p.context()->size(), false);
    for (const auto& v : vars) {
        auto idx = p.context()->index_of(v);
        if (!idx) throw ContextError("collapse variable not in context: " + v);
        collapse[*idx] = true;
    }
    std::vector<Rational> c;
    for (const auto& t : p.terms()) {
        std::uint64_t d = 0;
        for (std::size_t i = 0; i < collapse.size(); ++i) {
            if (t.mono[i] == 0) continue;
            if (!collapse[i]) throw ContextError("collapse: stray variable " + p.context()->name(i));
            d += t.mono[i];
        }
        if (c.size() <= d) c.resize(d + 1, Rational(0));
        c[d] += t.coeff;
    }
    return UniPoly(std::move(c));
}

Polynomial to_polynomial(const UniPoly& p, const ContextPtr& ctx) {
    if (ctx->size() != 1) throw ContextError("to_polynomial expects a one-variable context");
    std::vector<Term> terms;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
        if (p.coeffs()[i].is_zero()) continue;
        Monomial m(1);
        m[0] = static_cast<std::uint32_t>(i);
        terms.push_back({p.coeffs()[i], std::move(m)});
    }
    return Polynomial(ctx, TermOrder::lex(), std::move(terms));
}

UniPoly eval_at_unipolys(const Polynomial& p, const std::vector<UniPoly>& args, const UniPoly& mod) {
    if (args.size() != p.context()->size()) throw ContextError("eval_at_unipolys arity mismatch");
    UniPoly acc;
    for (const auto& t : p.terms()) {
        UniPoly m = UniPoly::constant(t.coeff);
        for (std::size_t i = 0; i < args.size(); ++i)
            for (std::uint32_t k = 0; k < t.mono[i]; ++k) m = (m * args[i]) % mod;
        acc = acc + m;
    }
    return acc % mod;
}

}  // namespace steadycert
