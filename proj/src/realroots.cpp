#include "steadycert/realroots.hpp"

#include <algorithm>
#include <deque>

#include "steadycert/errors.hpp"

namespace steadycert {

std::vector<UniPoly> sturm_sequence(const UniPoly& p) {
    if (p.is_zero()) throw DomainError("Sturm sequence of zero polynomial");
    std::vector<UniPoly> chain{p};
    if (p.degree() == 0) return chain;
    chain.push_back(p.derivative());
    while (chain.back().degree() > 0) {
        UniPoly r = chain[chain.size() - 2] % chain.back();
        if (r.is_zero()) break;
        chain.push_back(-r);
    }
    return chain;
}

namespace {

int variations(const std::vector<int>& signs) {
    int v = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

int variations_at(const std::vector<UniPoly>& chain, const Rational& x) {
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& q : chain) signs.push_back(q.eval<Rational>(x).sign());
    return variations(signs);
}

int variations_at_inf(const std::vector<UniPoly>& chain, int dir) {
    // sign at +inf is the leading sign; at -inf it flips with odd degree.
    std::vector<int> signs;
    signs.reserve(chain.size());
    for (const auto& q : chain) {
        int s = q.leading().sign();
        if (dir < 0 && (q.degree() & 1)) s = -s;
        signs.push_back(s);
    }
    return variations(signs);
}

// Exact count on (a, b] for a squarefree polynomial. Evaluating the chain at a
// root r gives the same variation count as just right of r, so the half-open
// semantics come out of V(a) - V(b) directly.
int count_sf(const std::vector<UniPoly>& chain, const Rational& a, const Rational& b) {
    return variations_at(chain, a) - variations_at(chain, b);
}

}  // namespace

Rational root_bound(const UniPoly& p) {
    if (p.is_zero()) throw DomainError("root bound of zero polynomial");
    Rational m(0);
    Rational lead = p.leading().abs();
    for (int i = 0; i < p.degree(); ++i) {
        Rational q = p.coeff(static_cast<std::size_t>(i)).abs() / lead;
        if (q > m) m = q;
    }
    Rational b = m + Rational(1);
    // round up to the next power of two so all bisection endpoints stay dyadic
    Rational pow2(1);
    while (pow2 < b) pow2 *= Rational(2);
    return pow2;
}

int count_roots(const UniPoly& p, const Rational& a, const Rational& b) {
    if (p.is_zero()) throw DomainError("root count of zero polynomial");
    if (!(a < b)) throw DomainError("count_roots requires a < b");
    UniPoly sf = squarefree_part(p);
    if (sf.degree() <= 0) return 0;
    auto chain = sturm_sequence(sf);
    return count_sf(chain, a, b);
}

int count_roots(const UniPoly& p) {
    if (p.is_zero()) throw DomainError("root count of zero polynomial");
    UniPoly sf = squarefree_part(p);
    if (sf.degree() <= 0) return 0;
    auto chain = sturm_sequence(sf);
    return variations_at_inf(chain, -1) - variations_at_inf(chain, +1);
}

namespace {

std::vector<IsolatingInterval> isolate_sf(const UniPoly& sf) {
    std::vector<IsolatingInterval> out;
    if (sf.degree() <= 0) return out;
    if (sf.degree() == 1) {
        Rational root = -sf[0] / sf[1];
        out.push_back({root, root});
        return out;
    }
    auto chain = sturm_sequence(sf);
    Rational B = root_bound(sf);

    struct Node { Rational lo, hi; int count; };
    std::deque<Node> work;
    int total = count_sf(chain, -B, B);
    if (total > 0) work.push_back({-B, B, total});

    while (!work.empty()) {
        Node n = work.front();
        work.pop_front();
        if (n.count == 1) {
            Rational lo = n.lo, hi = n.hi;
            bool exact = false;
            if (sf.eval<Rational>(hi).is_zero()) {
                lo = hi;
                exact = true;
            }
            // tighten to width <= 1 (catching dyadic rational roots on the
            // way) and make sure the lower endpoint is not a root, so that
            // non-exact intervals always carry a sign change
            while (!exact && (hi - lo > Rational(1) || sf.eval<Rational>(lo).is_zero())) {
                Rational mid = (lo + hi) / Rational(2);
                if (sf.eval<Rational>(mid).is_zero()) {
                    lo = hi = mid;
                    exact = true;
                    break;
                }
                if (count_sf(chain, mid, hi) == 1) lo = mid;
                else hi = mid;
            }
            out.push_back({lo, hi});
            continue;
        }
        Rational mid = (n.lo + n.hi) / Rational(2);
        int left = count_sf(chain, n.lo, mid);
        int right = n.count - left;
        if (left > 0) work.push_back({n.lo, mid, left});
        if (right > 0) work.push_back({mid, n.hi, right});
    }
    std::sort(out.begin(), out.end(),
              [](const IsolatingInterval& a, const IsolatingInterval& b) { return a.lo < b.lo; });
    return out;
}

}  // namespace

std::vector<IsolatingInterval> isolate_roots(const UniPoly& p) {
    if (p.is_zero()) throw DomainError("isolate_roots of zero polynomial");
    return isolate_sf(squarefree_part(p));
}

std::vector<IsolatingInterval> isolate_roots(const UniPoly& p, const Rational& lo, const Rational& hi) {
    UniPoly sf = squarefree_part(p);
    auto all = isolate_sf(sf);
    std::vector<IsolatingInterval> out;
    for (auto iv : all) {
        if (iv.is_exact()) {
            if (lo < iv.lo && iv.lo < hi) out.push_back(iv);
            continue;
        }
        // shrink until clearly inside or clearly outside the open domain
        for (;;) {
            if (iv.lo >= hi || iv.hi <= lo) break;       // disjoint from (lo, hi)
            if (iv.lo >= lo && iv.hi <= hi) { out.push_back(iv); break; }
            iv = refine(iv, sf, iv.width() / Rational(2));
            if (iv.is_exact()) {
                if (lo < iv.lo && iv.lo < hi) out.push_back(iv);
                break;
            }
        }
    }
    return out;
}

IsolatingInterval refine(const IsolatingInterval& iv, const UniPoly& p, const Rational& eps) {
    if (iv.is_exact()) return iv;
    UniPoly sf = squarefree_part(p);
    Rational slo = sf.eval<Rational>(iv.lo);
    Rational shi = sf.eval<Rational>(iv.hi);
    IsolatingInterval cur = iv;
    if (slo.is_zero() || shi.is_zero()) {
        // endpoint happens to be the root itself
        return slo.is_zero() ? IsolatingInterval{iv.lo, iv.lo} : IsolatingInterval{iv.hi, iv.hi};
    }
    if (slo.sign() == shi.sign())
        throw DomainError("refine: interval does not bracket a root");
    int lo_sign = slo.sign();
    while (cur.width() > eps) {
        Rational mid = (cur.lo + cur.hi) / Rational(2);
        int ms = sf.eval<Rational>(mid).sign();
        if (ms == 0) return {mid, mid};
        if (ms == lo_sign) cur.lo = mid;
        else cur.hi = mid;
    }
    return cur;
}

}  // namespace steadycert
