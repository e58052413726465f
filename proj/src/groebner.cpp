#include "steadycert/groebner.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>

namespace steadycert {

Ideal::Ideal(ContextPtr ctx, std::vector<Polynomial> gens) : context(std::move(ctx)) {
    for (auto& g : gens) {
        if (!same_context(g.context(), context)) throw ContextError("ideal generator context mismatch");
        if (!g.is_zero()) generators.push_back(std::move(g));
    }
    if (generators.empty()) throw DomainError("ideal needs at least one nonzero generator");
}

namespace {

// Shared division core. Divisors must already carry `ord`; quotient
// accumulation is optional since membership checks only need the remainder.
Polynomial divide_core(const Polynomial& f, const std::vector<const Polynomial*>& divs, TermOrder ord,
                       std::vector<Polynomial>* quotients) {
    ContextPtr ctx = f.context();
    Polynomial p = f.with_order(ord);
    std::vector<Term> rem;
    std::vector<std::vector<Term>> qterms;
    if (quotients) qterms.assign(divs.size(), {});

    while (!p.is_zero()) {
        const Term lt = p.leading_term();
        bool divided = false;
        for (std::size_t i = 0; i < divs.size(); ++i) {
            const Monomial& lm = divs[i]->leading_monomial();
            if (!lm.divides(lt.mono)) continue;
            Monomial t = lm.divide_into(lt.mono);
            Rational c = lt.coeff / divs[i]->leading_coeff();
            p = p - divs[i]->mul_term(c, t);
            if (quotients) qterms[i].push_back({std::move(c), std::move(t)});
            divided = true;
            break;
        }
        if (!divided) {
            rem.push_back(lt);
            p = p - Polynomial(ctx, ord, {lt});
        }
    }
    if (quotients) {
        quotients->clear();
        for (auto& ts : qterms) quotients->emplace_back(ctx, ord, std::move(ts));
    }
    return Polynomial(ctx, ord, std::move(rem));
}

}  // namespace

DivisionResult normal_form(const Polynomial& f, std::span<const Polynomial> divisors, TermOrder ord) {
    ContextPtr ctx = f.context();
    std::vector<Polynomial> owned;
    owned.reserve(divisors.size());  // keeps the pointers below stable
    std::vector<const Polynomial*> divs;
    divs.reserve(divisors.size());
    for (const auto& d : divisors) {
        if (!same_context(d.context(), ctx)) throw ContextError("division context mismatch");
        if (d.is_zero()) throw DomainError("zero divisor in normal form");
        if (d.order() == ord) {
            divs.push_back(&d);
        } else {
            owned.push_back(d.with_order(ord));
            divs.push_back(&owned.back());
        }
    }

    DivisionResult res;
    res.remainder = divide_core(f, divs, ord, &res.quotients);
    return res;
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, TermOrder ord) {
    if (f.is_zero() || g.is_zero()) throw DomainError("S-polynomial of zero polynomial");
    if (!same_context(f.context(), g.context())) throw ContextError("S-polynomial context mismatch");
    Polynomial a = f.with_order(ord), b = g.with_order(ord);
    Monomial m = lcm(a.leading_monomial(), b.leading_monomial());
    Monomial ma = a.leading_monomial().divide_into(m);
    Monomial mb = b.leading_monomial().divide_into(m);
    return a.mul_term(a.leading_coeff().inv(), ma) - b.mul_term(b.leading_coeff().inv(), mb);
}

namespace {

struct PairKey {
    std::uint64_t lcm_deg;
    std::vector<std::uint32_t> lcm_exp;
    std::size_t i, j;
    bool operator<(const PairKey& o) const {
        if (lcm_deg != o.lcm_deg) return lcm_deg < o.lcm_deg;
        if (lcm_exp != o.lcm_exp) return lcm_exp < o.lcm_exp;
        if (i != o.i) return i < o.i;
        return j < o.j;
    }
};

class BudgetClock {
public:
    explicit BudgetClock(const Budget& b) : budget_(b), start_(std::chrono::steady_clock::now()) {}
    void tick(std::uint64_t pairs) {
        if (pairs > budget_.max_pairs)
            throw BudgetError("Groebner pair budget exceeded", pairs, elapsed());
        if ((pairs & 0x3f) == 0 && elapsed() > budget_.max_seconds)
            throw BudgetError("Groebner time budget exceeded", pairs, elapsed());
    }
    double elapsed() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    Budget budget_;
    std::chrono::steady_clock::time_point start_;
};

bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] && b[k]) return false;
    return true;
}

}  // namespace

GroebnerBasis buchberger(const Ideal& ideal, TermOrder ord, const Budget& budget, bool track_cofactors) {
    ContextPtr ctx = ideal.context;
    std::vector<Polynomial> G;
    std::vector<std::vector<Polynomial>> cof;
    const std::size_t ngens = ideal.generators.size();

    for (std::size_t i = 0; i < ngens; ++i) {
        Polynomial g = ideal.generators[i].with_order(ord);
        Rational lc = g.leading_coeff();
        G.push_back(g.monic());
        if (track_cofactors) {
            std::vector<Polynomial> row(ngens, Polynomial::zero(ctx, ord));
            row[i] = Polynomial::constant(ctx, lc.inv(), ord);
            cof.push_back(std::move(row));
        }
    }

    // pending S-pairs, normal strategy: smallest lcm degree first
    std::set<PairKey> queue;
    std::set<std::pair<std::size_t, std::size_t>> pending;
    auto push_pair = [&](std::size_t i, std::size_t j) {
        Monomial m = lcm(G[i].leading_monomial(), G[j].leading_monomial());
        queue.insert({m.degree(), m.exponents(), i, j});
        pending.insert({i, j});
    };
    for (std::size_t i = 0; i < G.size(); ++i)
        for (std::size_t j = i + 1; j < G.size(); ++j) push_pair(i, j);

    BudgetClock clock(budget);
    std::uint64_t processed = 0;

    while (!queue.empty()) {
        PairKey k = *queue.begin();
        queue.erase(queue.begin());
        pending.erase({k.i, k.j});
        clock.tick(++processed);

        const Monomial& li = G[k.i].leading_monomial();
        const Monomial& lj = G[k.j].leading_monomial();

        // product criterion: coprime leading monomials reduce to zero
        if (coprime(li, lj)) continue;

        // chain criterion: some LT(g_t) divides the lcm and both companion
        // pairs are no longer pending
        Monomial m = lcm(li, lj);
        bool skip = false;
        for (std::size_t t = 0; t < G.size() && !skip; ++t) {
            if (t == k.i || t == k.j) continue;
            if (!G[t].leading_monomial().divides(m)) continue;
            auto p1 = std::minmax(k.i, t);
            auto p2 = std::minmax(k.j, t);
            if (!pending.count({p1.first, p1.second}) && !pending.count({p2.first, p2.second})) skip = true;
        }
        if (skip) continue;

        Polynomial S = s_polynomial(G[k.i], G[k.j], ord);
        std::vector<const Polynomial*> gp;
        gp.reserve(G.size());
        for (const auto& g : G) gp.push_back(&g);
        std::vector<Polynomial> quot;
        Polynomial rem = divide_core(S, gp, ord, track_cofactors ? &quot : nullptr);
        if (rem.is_zero()) continue;

        Rational lc = rem.leading_coeff();
        Polynomial r = rem.monic();
        if (track_cofactors) {
            // S = (m/LT_i)/lc_i * G[i] - (m/LT_j)/lc_j * G[j] with G monic;
            // r = (S - sum q_t G[t]) / lc
            Monomial mi = li.divide_into(m), mj = lj.divide_into(m);
            std::vector<Polynomial> row(ngens, Polynomial::zero(ctx, ord));
            for (std::size_t t = 0; t < ngens; ++t) {
                Polynomial acc = cof[k.i][t].mul_term(Rational(1), mi) - cof[k.j][t].mul_term(Rational(1), mj);
                for (std::size_t d = 0; d < G.size(); ++d)
                    acc = acc - quot[d] * cof[d][t];
                row[t] = acc.scaled(lc.inv());
            }
            cof.push_back(std::move(row));
        }
        G.push_back(std::move(r));
        for (std::size_t i = 0; i + 1 < G.size(); ++i) push_pair(i, G.size() - 1);
    }

    GroebnerBasis gb;
    gb.context = ctx;
    gb.order = ord;
    gb.basis = std::move(G);
    gb.reduced = false;
    if (track_cofactors) gb.cofactors = std::move(cof);
    return gb;
}

GroebnerBasis reduce_basis(const GroebnerBasis& in) {
    ContextPtr ctx = in.context;
    TermOrder ord = in.order;
    bool track = !in.cofactors.empty();

    std::vector<Polynomial> G;
    std::vector<std::vector<Polynomial>> cof;
    for (std::size_t i = 0; i < in.basis.size(); ++i) {
        if (in.basis[i].is_zero()) continue;
        Rational lc = in.basis[i].leading_coeff();
        G.push_back(in.basis[i].with_order(ord).monic());
        if (track) {
            std::vector<Polynomial> row = in.cofactors[i];
            for (auto& c : row) c = c.scaled(lc.inv());
            cof.push_back(std::move(row));
        }
    }

    // minimal basis: drop elements whose leading monomial is divisible by a
    // different surviving element's leading monomial (first of equals wins)
    std::vector<bool> keep(G.size(), true);
    for (std::size_t i = 0; i < G.size(); ++i) {
        for (std::size_t j = 0; j < G.size(); ++j) {
            if (i == j || !keep[j] || !keep[i]) continue;
            const Monomial& mi = G[i].leading_monomial();
            const Monomial& mj = G[j].leading_monomial();
            if (mj.divides(mi) && !(mi == mj && j > i)) { keep[i] = false; }
        }
    }
    std::vector<Polynomial> M;
    std::vector<std::vector<Polynomial>> Mc;
    for (std::size_t i = 0; i < G.size(); ++i)
        if (keep[i]) {
            M.push_back(G[i]);
            if (track) Mc.push_back(cof[i]);
        }

    // tail reduction to a fixpoint
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < M.size(); ++i) {
            std::vector<Polynomial> others;
            std::vector<std::size_t> idx;
            for (std::size_t j = 0; j < M.size(); ++j)
                if (j != i) { others.push_back(M[j]); idx.push_back(j); }
            if (others.empty()) continue;
            DivisionResult d = normal_form(M[i], others, ord);
            if (!d.remainder.equals(M[i])) {
                changed = true;
                Rational lc = d.remainder.leading_coeff();
                if (track) {
                    std::vector<Polynomial> row = Mc[i];
                    for (std::size_t t = 0; t < row.size(); ++t) {
                        Polynomial acc = row[t];
                        for (std::size_t dIdx = 0; dIdx < others.size(); ++dIdx)
                            acc = acc - d.quotients[dIdx] * Mc[idx[dIdx]][t];
                        row[t] = acc.scaled(lc.inv());
                    }
                    Mc[i] = std::move(row);
                }
                M[i] = d.remainder.monic();
            }
        }
    }

    // canonical order: decreasing leading monomial
    std::vector<std::size_t> perm(M.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        return ord.greater(M[a].leading_monomial(), M[b].leading_monomial());
    });

    GroebnerBasis out;
    out.context = ctx;
    out.order = ord;
    out.reduced = true;
    for (auto i : perm) {
        out.basis.push_back(M[i]);
        if (track) out.cofactors.push_back(Mc[i]);
    }
    return out;
}

GroebnerBasis groebner(const Ideal& ideal, TermOrder ord, const Budget& budget) {
    return reduce_basis(buchberger(ideal, ord, budget));
}

bool member(const Polynomial& f, const GroebnerBasis& gb) {
    if (f.is_zero()) return true;
    return normal_form(f, gb.basis, gb.order).remainder.is_zero();
}

bool member(const Polynomial& f, const Ideal& ideal, TermOrder ord, const Budget& budget) {
    return member(f, groebner(ideal, ord, budget));
}

namespace {

ContextPtr extend_front(const ContextPtr& ctx, const std::string& fresh) {
    if (ctx->index_of(fresh)) throw ContextError("auxiliary variable collides: " + fresh);
    std::vector<std::string> names{fresh};
    for (const auto& n : ctx->names()) names.push_back(n);
    return make_context(names);
}

}  // namespace

Ideal eliminate(const Ideal& ideal, std::size_t k, const Budget& budget) {
    const auto& names = ideal.context->names();
    if (k > names.size()) throw DomainError("eliminate: too many variables");
    TermOrder ord = k == 0 ? TermOrder::degrevlex() : TermOrder::block(k);
    GroebnerBasis gb = groebner(ideal, ord, budget);

    std::vector<std::string> rest(names.begin() + static_cast<std::ptrdiff_t>(k), names.end());
    ContextPtr sub = make_context(rest);
    std::vector<Polynomial> kept;
    for (const auto& g : gb.basis) {
        bool free_of_front = true;
        for (const auto& t : g.terms())
            for (std::size_t i = 0; i < k && free_of_front; ++i)
                if (t.mono[i]) free_of_front = false;
        if (!free_of_front) continue;
        std::vector<Term> terms;
        for (const auto& t : g.terms()) {
            Monomial m(rest.size());
            for (std::size_t i = k; i < names.size(); ++i) m[i - k] = t.mono[i];
            terms.push_back({t.coeff, std::move(m)});
        }
        kept.emplace_back(sub, TermOrder::degrevlex(), std::move(terms));
    }
    if (kept.empty())
        throw DomainError("elimination ideal is zero (no relations among remaining variables)");
    return Ideal(sub, std::move(kept));
}

Ideal intersect(const Ideal& a, const Ideal& b, const Budget& budget) {
    if (!same_context(a.context, b.context)) throw ContextError("intersect context mismatch");
    ContextPtr ext = extend_front(a.context, "__t");
    TermOrder ord = TermOrder::block(1);
    Polynomial t = Polynomial::variable(ext, "__t", ord);
    Polynomial one_minus_t = Polynomial::constant(ext, 1, ord) - t;
    std::vector<Polynomial> gens;
    for (const auto& f : a.generators) gens.push_back(t * f.embed(ext, ord));
    for (const auto& g : b.generators) gens.push_back(one_minus_t * g.embed(ext, ord));
    return eliminate(Ideal(ext, std::move(gens)), 1, budget);
}

Ideal quotient(const Ideal& a, const Ideal& b, const Budget& budget) {
    if (!same_context(a.context, b.context)) throw ContextError("quotient context mismatch");
    std::optional<Ideal> acc;
    for (const auto& g : b.generators) {
        // I : <g> = (1/g) * (I ∩ <g>)
        Ideal meet = intersect(a, Ideal(a.context, {g}), budget);
        std::vector<Polynomial> divided;
        std::vector<Polynomial> single{g};
        for (const auto& h : meet.generators) {
            DivisionResult d = normal_form(h, single, TermOrder::degrevlex());
            if (!d.remainder.is_zero())
                throw DomainError("quotient: generator of I ∩ <g> not divisible by g");
            divided.push_back(d.quotients[0]);
        }
        Ideal part(a.context, std::move(divided));
        acc = acc ? intersect(*acc, part, budget) : part;
    }
    return *acc;
}

bool radical_member(const Polynomial& f, const Ideal& ideal, const Budget& budget) {
    if (f.is_zero()) return true;
    ContextPtr ext = extend_front(ideal.context, "__t");
    TermOrder ord = TermOrder::degrevlex();
    Polynomial t = Polynomial::variable(ext, "__t", ord);
    std::vector<Polynomial> gens;
    for (const auto& g : ideal.generators) gens.push_back(g.embed(ext, ord));
    gens.push_back(Polynomial::constant(ext, 1, ord) - t * f.embed(ext, ord));
    GroebnerBasis gb = groebner(Ideal(ext, std::move(gens)), ord, budget);
    return member(Polynomial::constant(ext, 1, ord), gb);
}

bool ideal_equal(const Ideal& a, const Ideal& b, TermOrder ord, const Budget& budget) {
    if (!same_context(a.context, b.context)) return false;
    GroebnerBasis ga = groebner(a, ord, budget);
    GroebnerBasis gbb = groebner(b, ord, budget);
    if (ga.basis.size() != gbb.basis.size()) return false;
    for (std::size_t i = 0; i < ga.basis.size(); ++i)
        if (!ga.basis[i].equals(gbb.basis[i])) return false;
    return true;
}

bool is_unit_ideal(const Ideal& ideal, const Budget& budget) {
    GroebnerBasis gb = groebner(ideal, TermOrder::degrevlex(), budget);
    return gb.basis.size() == 1 && gb.basis[0].is_constant() && !gb.basis[0].is_zero();
}

}  // namespace steadycert
