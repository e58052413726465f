#include "steadycert/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

namespace steadycert {

VarContext::VarContext(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i)
        for (std::size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j]) throw ContextError("duplicate variable name: " + names_[i]);
}

std::optional<std::size_t> VarContext::index_of(const std::string& v) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == v) return i;
    return std::nullopt;
}

ContextPtr make_context(std::vector<std::string> names) {
    return std::make_shared<const VarContext>(std::move(names));
}

bool same_context(const ContextPtr& a, const ContextPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

Polynomial::Polynomial(ContextPtr ctx, TermOrder ord, std::vector<Term> terms)
    : ctx_(std::move(ctx)), ord_(ord), terms_(std::move(terms)) {
    for (const auto& t : terms_)
        if (t.mono.size() != ctx_->size()) throw ContextError("term arity does not match context");
    normalize();
}

void Polynomial::normalize() {
    std::stable_sort(terms_.begin(), terms_.end(),
                     [&](const Term& a, const Term& b) { return ord_.greater(a.mono, b.mono); });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().mono == t.mono) {
            out.back().coeff += t.coeff;
            if (out.back().coeff.is_zero()) out.pop_back();
        } else if (!t.coeff.is_zero()) {
            out.push_back(std::move(t));
        }
    }
    terms_ = std::move(out);
}

Polynomial Polynomial::zero(ContextPtr ctx, TermOrder ord) { return Polynomial(std::move(ctx), ord); }

Polynomial Polynomial::constant(ContextPtr ctx, const Rational& c, TermOrder ord) {
    Polynomial p(ctx, ord);
    if (!c.is_zero()) p.terms_.push_back({c, Monomial(ctx->size())});
    return p;
}

Polynomial Polynomial::variable(ContextPtr ctx, const std::string& name, TermOrder ord) {
    auto idx = ctx->index_of(name);
    if (!idx) throw ContextError("variable not in context: " + name);
    Monomial m(ctx->size());
    m[*idx] = 1;
    Polynomial p(ctx, ord);
    p.terms_.push_back({Rational(1), std::move(m)});
    return p;
}

const Term& Polynomial::leading_term() const {
    if (terms_.empty()) throw DomainError("leading term of zero polynomial");
    return terms_.front();
}

std::uint64_t Polynomial::total_degree() const {
    std::uint64_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
}

std::uint64_t Polynomial::degree_in(std::size_t var) const {
    std::uint64_t d = 0;
    for (const auto& t : terms_) d = std::max<std::uint64_t>(d, t.mono[var]);
    return d;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    if (!same_context(ctx_, o.ctx_)) throw ContextError("polynomial context mismatch in +");
    Polynomial rhs = (o.ord_ == ord_) ? o : o.with_order(ord_);
    Polynomial r(ctx_, ord_);
    r.terms_.reserve(terms_.size() + rhs.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < rhs.terms_.size()) {
        int c = ord_.compare(terms_[i].mono, rhs.terms_[j].mono);
        if (c > 0) r.terms_.push_back(terms_[i++]);
        else if (c < 0) r.terms_.push_back(rhs.terms_[j++]);
        else {
            Rational s = terms_[i].coeff + rhs.terms_[j].coeff;
            if (!s.is_zero()) r.terms_.push_back({std::move(s), terms_[i].mono});
            ++i; ++j;
        }
    }
    for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
    for (; j < rhs.terms_.size(); ++j) r.terms_.push_back(rhs.terms_[j]);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::mul_term(const Rational& c, const Monomial& m) const {
    if (c.is_zero()) return zero(ctx_, ord_);
    Polynomial r(ctx_, ord_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.coeff * c, t.mono * m});
    return r;  // multiplying by a monomial preserves the term order
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (!same_context(ctx_, o.ctx_)) throw ContextError("polynomial context mismatch in *");
    if (is_zero() || o.is_zero()) return zero(ctx_, ord_);
    if (o.terms_.size() == 1) return mul_term(o.terms_[0].coeff, o.terms_[0].mono);
    if (terms_.size() == 1) return o.mul_term(terms_[0].coeff, terms_[0].mono).with_order(ord_);

    auto cmp = [this](const Monomial& a, const Monomial& b) { return ord_.greater(a, b); };
    std::map<Monomial, Rational, decltype(cmp)> acc(cmp);
    for (const auto& a : terms_)
        for (const auto& b : o.terms_) {
            Monomial m = a.mono * b.mono;
            auto it = acc.find(m);
            if (it == acc.end()) acc.emplace(std::move(m), a.coeff * b.coeff);
            else it->second += a.coeff * b.coeff;
        }
    Polynomial r(ctx_, ord_);
    for (auto& [m, c] : acc)
        if (!c.is_zero()) r.terms_.push_back({c, m});
    return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    if (c.is_zero()) return zero(ctx_, ord_);
    Polynomial r(*this);
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial r = constant(ctx_, 1, ord_);
    Polynomial base = *this;
    while (e) {
        if (e & 1) r = r * base;
        base = e > 1 ? base * base : base;
        e >>= 1;
    }
    return r;
}

Polynomial Polynomial::monic() const {
    return scaled(leading_coeff().inv());
}

Polynomial Polynomial::with_order(TermOrder ord) const {
    if (ord == ord_) return *this;
    Polynomial r(ctx_, ord, terms_);
    return r;
}

Polynomial Polynomial::derivative(std::size_t var) const {
    Polynomial r(ctx_, ord_);
    for (const auto& t : terms_) {
        if (t.mono[var] == 0) continue;
        Monomial m = t.mono;
        Rational c = t.coeff * Rational(static_cast<long>(m[var]));
        m[var] -= 1;
        r.terms_.push_back({std::move(c), std::move(m)});
    }
    r.normalize();
    return r;
}

Polynomial Polynomial::substitute(const std::map<std::string, Rational>& values) const {
    std::vector<std::optional<Rational>> sub(ctx_->size());
    std::vector<std::string> kept;
    std::vector<std::size_t> keep_idx;
    for (std::size_t i = 0; i < ctx_->size(); ++i) {
        auto it = values.find(ctx_->name(i));
        if (it != values.end()) sub[i] = it->second;
        else { kept.push_back(ctx_->name(i)); keep_idx.push_back(i); }
    }
    for (const auto& [k, v] : values)
        if (!ctx_->index_of(k)) throw ContextError("substituted variable not in context: " + k);

    ContextPtr nctx = make_context(kept);
    Polynomial r(nctx, ord_);
    std::vector<Term> terms;
    for (const auto& t : terms_) {
        Rational c = t.coeff;
        Monomial m(kept.size());
        for (std::size_t i = 0, j = 0; i < ctx_->size(); ++i) {
            if (sub[i]) c *= sub[i]->pow(t.mono[i]);
            else m[j++] = t.mono[i];
        }
        terms.push_back({std::move(c), std::move(m)});
    }
    return Polynomial(nctx, ord_, std::move(terms));
}

Polynomial Polynomial::embed(const ContextPtr& bigger, TermOrder ord) const {
    std::vector<std::size_t> map(ctx_->size());
    for (std::size_t i = 0; i < ctx_->size(); ++i) {
        auto idx = bigger->index_of(ctx_->name(i));
        if (!idx) throw ContextError("embed target misses variable " + ctx_->name(i));
        map[i] = *idx;
    }
    std::vector<Term> terms;
    terms.reserve(terms_.size());
    for (const auto& t : terms_) {
        Monomial m(bigger->size());
        for (std::size_t i = 0; i < ctx_->size(); ++i) m[map[i]] = t.mono[i];
        terms.push_back({t.coeff, std::move(m)});
    }
    return Polynomial(bigger, ord, std::move(terms));
}

bool Polynomial::equals(const Polynomial& o) const {
    if (!same_context(ctx_, o.ctx_)) return false;
    Polynomial d = *this - o;
    return d.is_zero();
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        Rational c = t.coeff;
        if (first) {
            if (c.sign() < 0) { os << "-"; c = -c; }
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
            if (c.sign() < 0) c = -c;
        }
        first = false;
        bool shipped = false;
        if (!c.is_one() || t.mono.is_one()) { os << c.str(); shipped = true; }
        for (std::size_t i = 0; i < t.mono.size(); ++i) {
            if (t.mono[i] == 0) continue;
            if (shipped) os << "*";
            os << ctx_->name(i);
            if (t.mono[i] > 1) os << "^" << t.mono[i];
            shipped = true;
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

// --------------------------------------------------------------------------
// expression parser

namespace {

struct Parser {
    ContextPtr ctx;
    TermOrder ord;
    std::string_view s;
    std::size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw DomainError("polynomial parse error at offset " + std::to_string(pos) + ": " + msg);
    }

    Polynomial expr() {
        Polynomial acc = term();  // unary minus handled in atom()
        for (;;) {
            skip();
            if (pos >= s.size()) break;
            if (s[pos] == '+') { ++pos; acc = acc + term(); }
            else if (s[pos] == '-') { ++pos; acc = acc - term(); }
            else break;
        }
        return acc;
    }

    Polynomial term() {
        Polynomial acc = factor();
        for (;;) {
            skip();
            if (pos < s.size() && s[pos] == '*') { ++pos; acc = acc * factor(); }
            else break;
        }
        return acc;
    }

    Polynomial factor() {
        skip();
        if (pos < s.size() && s[pos] == '-') { ++pos; return -factor(); }
        if (pos < s.size() && s[pos] == '+') { ++pos; return factor(); }
        Polynomial base = atom();
        skip();
        if (pos < s.size() && s[pos] == '^') {
            ++pos; skip();
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (start == pos) fail("exponent expected");
            unsigned e = static_cast<unsigned>(std::stoul(std::string(s.substr(start, pos - start))));
            return base.pow(e);
        }
        return base;
    }

    Polynomial atom() {
        skip();
        if (pos >= s.size()) fail("unexpected end of input");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            Polynomial p = expr();
            if (!eat(')')) fail("expected )");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t start = pos;
            while (pos < s.size() &&
                   (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.' ||
                    s[pos] == '/' ||
                    ((s[pos] == 'e' || s[pos] == 'E') && pos + 1 < s.size() &&
                     (std::isdigit(static_cast<unsigned char>(s[pos + 1])) || s[pos + 1] == '+' || s[pos + 1] == '-')) ||
                    ((s[pos] == '+' || s[pos] == '-') && pos > start && (s[pos - 1] == 'e' || s[pos - 1] == 'E'))))
                ++pos;
            return Polynomial::constant(ctx, Rational::parse(s.substr(start, pos - start)), ord);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
            std::string name(s.substr(start, pos - start));
            if (!ctx->index_of(name)) fail("unknown variable " + name);
            return Polynomial::variable(ctx, name, ord);
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

}  // namespace

Polynomial Polynomial::parse(ContextPtr ctx, std::string_view text, TermOrder ord) {
    Parser p{std::move(ctx), ord, text};
    Polynomial r = p.expr();
    p.skip();
    if (p.pos != text.size()) p.fail("trailing input");
    return r;
}

}  // namespace steadycert
