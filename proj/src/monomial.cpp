#include "steadycert/monomial.hpp"

#include "steadycert/errors.hpp"

namespace steadycert {

std::uint64_t Monomial::degree() const {
    std::uint64_t d = 0;
    for (auto e : e_) d += e;
    return d;
}

bool Monomial::is_one() const {
    for (auto e : e_)
        if (e) return false;
    return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
    if (e_.size() != o.e_.size()) throw ContextError("monomial length mismatch");
    Monomial r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    if (e_.size() != o.e_.size()) throw ContextError("monomial length mismatch");
    for (std::size_t i = 0; i < e_.size(); ++i)
        if (e_[i] > o.e_[i]) return false;
    return true;
}

Monomial Monomial::divide_into(const Monomial& o) const {
    if (e_.size() != o.e_.size()) throw ContextError("monomial length mismatch");
    Monomial r(o);
    for (std::size_t i = 0; i < e_.size(); ++i) {
        if (e_[i] > o.e_[i]) throw DomainError("monomial division not exact");
        r.e_[i] -= e_[i];
    }
    return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
    if (a.size() != b.size()) throw ContextError("monomial length mismatch");
    Monomial r(a);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (b[i] > r[i]) r[i] = b[i];
    return r;
}

namespace {

int cmp_lex(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
        if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
    }
    return 0;
}

int cmp_degrevlex(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
    std::uint64_t da = 0, db = 0;
    for (std::size_t i = lo; i < hi; ++i) { da += a[i]; db += b[i]; }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = hi; i-- > lo;) {
        if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;  // rightmost nonzero of a-b negative => a greater
    }
    return 0;
}

}  // namespace

int TermOrder::compare(const Monomial& a, const Monomial& b) const {
    if (a.size() != b.size()) throw ContextError("monomial length mismatch in compare");
    switch (kind_) {
        case OrderKind::Lex:
            return cmp_lex(a, b, 0, a.size());
        case OrderKind::DegRevLex:
            return cmp_degrevlex(a, b, 0, a.size());
        case OrderKind::Block: {
            std::size_t k = split_ < a.size() ? split_ : a.size();
            int c = cmp_degrevlex(a, b, 0, k);
            if (c) return c;
            return cmp_degrevlex(a, b, k, a.size());
        }
    }
    return 0;
}

std::string TermOrder::name() const {
    switch (kind_) {
        case OrderKind::Lex: return "lex";
        case OrderKind::DegRevLex: return "degrevlex";
        case OrderKind::Block: return "block" + std::to_string(split_);
    }
    return "?";
}

TermOrder TermOrder::parse(const std::string& name) {
    if (name == "lex") return lex();
    if (name == "degrevlex" || name == "grevlex") return degrevlex();
    if (name.rfind("block", 0) == 0) return block(std::stoul(name.substr(5)));
    throw DomainError("unknown term order: " + name);
}

}  // namespace steadycert
