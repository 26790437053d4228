#ifndef WGAB_AUTOMORPHISMS_HPP
#define WGAB_AUTOMORPHISMS_HPP

// Automorphism families of the deformed Schrodinger-Virasoro algebras as
// window maps: scaling maps for non-integral a, index-flip scaling maps for
// a = 0, index-shifting maps for a = 1, and exponentials of nilpotent inner
// derivations. Square roots are handled by explicit rational witnesses whose
// defining quadratic is checked exactly at construction.
//
// Family shapes (k is the true half-integer Y index, n = k - 1/2):
//
//   GenericScale(alpha, mu, s), s^2 = alpha*mu, a not integral:
//     L(m) -> alpha^m L(m),  I(m) -> alpha^m mu I(m),  Y(k) -> alpha^n s Y(k)
//
//   FlipScale0b(eps, alpha, mu, s, c, d), s^2 = eps*alpha*mu, a = 0:
//     L(m) -> eps alpha^m L(eps m) + alpha^m g(m) I(eps m)
//     I(m) -> alpha^m mu I(eps m),  Y(k) -> alpha^n s Y(eps k)
//     with g(m) = c m + d for b = 0 and g(m) = m (c m + d) otherwise.
//
//   Shift1b(eps, alpha, mu, s, c, d, e, t), s^2 = eps*alpha*mu, a = 1:
//     I(n) -> alpha^n mu I(eps(n+1) - 1)
//     Y(k) -> alpha^n q(n) I(eps(n+1) - 1) + alpha^n s Y(eps(n+1) - 1 + 1/2)
//     L(n) -> eps alpha^n L(eps n) + alpha^n h(n) I(eps n - 1)
//                                  + alpha^n y(n) Y(eps n - 1 + 1/2)
//     b=0: h = n c + d,        y = 0,       q = 0
//     b=1: h = n (n c + d),    y = 0,       q = (n+1) e
//     b=3: h = n (n^3 c + d),  y = n^2 t,   q = -eps (n+1) t s,   t^2 = 2 eps c
//     else h = n((n-1)c + d),  y = n t,     q = -2 eps (n+1) t s / (b-1),
//                                           t^2 = eps (1-b) c
//
// Whether a given parameter point in the exotic a = 1 shapes really is an
// automorphism is decided by check_homomorphism, never assumed.

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "algebra.hpp"

namespace wgab {

struct GenericScale {
    Rational alpha, mu, s;
};
struct FlipScale0b {
    int eps = 1;
    Rational alpha, mu, s, c, d;
};
struct Shift1b {
    int eps = 1;
    Rational alpha, mu, s, c, d, e, t;
};
using AutomorphismSpec = std::variant<GenericScale, FlipScale0b, Shift1b>;

inline std::string variant_name(const AutomorphismSpec& spec) {
    if (std::holds_alternative<GenericScale>(spec)) return "generic";
    if (std::holds_alternative<FlipScale0b>(spec)) return "flip0";
    return "shift1";
}

namespace aut_detail {

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument("automorphism: " + msg);
}

inline std::int64_t int_index(const BasisIndex& b) { return b.index.as_int(); }

}  // namespace aut_detail

// Validates variant/parameter compatibility and the witness equations.
inline void validate_automorphism(const AlgebraInstance& inst, const AutomorphismSpec& spec) {
    using aut_detail::require;
    const Rational a = inst.param("a");
    const Rational b = inst.param("b");
    if (auto* g = std::get_if<GenericScale>(&spec)) {
        require(!a.is_integer(), "GenericScale requires non-integral a, got a = " + a.str());
        require(!g->alpha.is_zero() && !g->mu.is_zero(), "alpha and mu must be nonzero");
        require(g->s * g->s == g->alpha * g->mu, "witness violated: s^2 != alpha*mu");
    } else if (auto* f = std::get_if<FlipScale0b>(&spec)) {
        require(a.is_zero(), "FlipScale0b requires a = 0, got a = " + a.str());
        require(f->eps == 1 || f->eps == -1, "eps must be +1 or -1");
        require(!f->alpha.is_zero() && !f->mu.is_zero(), "alpha and mu must be nonzero");
        require(f->s * f->s == f->alpha * f->mu * Rational(f->eps),
                "witness violated: s^2 != eps*alpha*mu");
    } else {
        const auto& h = std::get<Shift1b>(spec);
        require(a == Rational(1), "Shift1b requires a = 1, got a = " + a.str());
        require(h.eps == 1 || h.eps == -1, "eps must be +1 or -1");
        require(!h.alpha.is_zero() && !h.mu.is_zero(), "alpha and mu must be nonzero");
        require(h.s * h.s == h.alpha * h.mu * Rational(h.eps),
                "witness violated: s^2 != eps*alpha*mu");
        if (b == Rational(0)) {
            require(h.e.is_zero() && h.t.is_zero(), "parameters e, t unused for b = 0");
        } else if (b == Rational(1)) {
            require(h.t.is_zero(), "parameter t unused for b = 1");
        } else if (b == Rational(3)) {
            require(h.e.is_zero(), "parameter e unused for b = 3");
            require(h.t * h.t == Rational(2 * h.eps) * h.c, "witness violated: t^2 != 2*eps*c");
        } else {
            require(h.e.is_zero(), "parameter e only used for b = 1");
            require(h.t * h.t == Rational(h.eps) * (Rational(1) - b) * h.c,
                    "witness violated: t^2 != eps*(1-b)*c");
        }
    }
}

inline WindowMap build_automorphism(const AlgebraInstance& inst, const AutomorphismSpec& spec,
                                    const Window& win, bool validate = true) {
    using aut_detail::int_index;
    if (validate) validate_automorphism(inst, spec);
    const AlgebraSpec& alg = inst.spec();
    const int fL = alg.family_index("L"), fI = alg.family_index("I"),
              fY = alg.family_index("Y");
    if (fL < 0 || fI < 0 || fY < 0)
        throw std::invalid_argument("automorphism builder needs families L, I, Y");
    const Rational b = inst.param("b");

    auto domain = window_basis(alg, win);
    std::vector<Element> images(domain.size());
    for (std::size_t c = 0; c < domain.size(); ++c) {
        const BasisIndex& x = domain[c];
        Element img;
        if (auto* g = std::get_if<GenericScale>(&spec)) {
            if (x.family == fY) {
                const std::int64_t n = (x.index.doubled - 1) / 2;
                img.add(x, g->alpha.pow(n) * g->s);
            } else {
                Rational c0 = g->alpha.pow(int_index(x));
                if (x.family == fI) c0 *= g->mu;
                img.add(x, c0);
            }
        } else if (auto* f = std::get_if<FlipScale0b>(&spec)) {
            const std::int64_t e = f->eps;
            if (x.family == fY) {
                const std::int64_t n = (x.index.doubled - 1) / 2;
                img.add(BasisIndex{fY, HalfInt::of_doubled(e * x.index.doubled)},
                        f->alpha.pow(n) * f->s);
            } else {
                const std::int64_t m = int_index(x);
                const BasisIndex tgt{x.family, HalfInt::of_int(e * m)};
                if (x.family == fI) {
                    img.add(tgt, f->alpha.pow(m) * f->mu);
                } else {
                    img.add(tgt, f->alpha.pow(m) * Rational(e));
                    Rational rm(m);
                    Rational g_m = b.is_zero() ? f->c * rm + f->d : rm * (f->c * rm + f->d);
                    img.add(BasisIndex{fI, HalfInt::of_int(e * m)}, f->alpha.pow(m) * g_m);
                }
            }
        } else {
            const auto& h = std::get<Shift1b>(spec);
            const std::int64_t e = h.eps;
            auto shifted_int = [&](std::int64_t n) {  // eps(n+1) - 1
                return e * (n + 1) - 1;
            };
            if (x.family == fY) {
                const std::int64_t n = (x.index.doubled - 1) / 2;
                const Rational an = h.alpha.pow(n);
                Rational q(0);
                if (b == Rational(1)) {
                    q = Rational(n + 1) * h.e;
                } else if (b == Rational(3)) {
                    q = -Rational(e) * Rational(n + 1) * h.t * h.s;
                } else if (!b.is_zero()) {
                    q = Rational(-2 * e) * Rational(n + 1) * h.t * h.s / (b - Rational(1));
                }
                img.add(BasisIndex{fI, HalfInt::of_int(shifted_int(n))}, an * q);
                img.add(BasisIndex{fY, HalfInt::of_int(shifted_int(n)) + HalfInt::of_doubled(1)},
                        an * h.s);
            } else if (x.family == fI) {
                const std::int64_t n = int_index(x);
                img.add(BasisIndex{fI, HalfInt::of_int(shifted_int(n))}, h.alpha.pow(n) * h.mu);
            } else {
                const std::int64_t n = int_index(x);
                const Rational an = h.alpha.pow(n);
                const Rational rn(n);
                img.add(BasisIndex{fL, HalfInt::of_int(e * n)}, an * Rational(e));
                Rational hn, yn(0);
                if (b.is_zero()) {
                    hn = rn * h.c + h.d;
                } else if (b == Rational(1)) {
                    hn = rn * (rn * h.c + h.d);
                } else if (b == Rational(3)) {
                    hn = rn * (rn * rn * rn * h.c + h.d);
                    yn = rn * rn * h.t;
                } else {
                    hn = rn * ((rn - Rational(1)) * h.c + h.d);
                    yn = rn * h.t;
                }
                img.add(BasisIndex{fI, HalfInt::of_int(e * n - 1)}, an * hn);
                img.add(BasisIndex{fY, HalfInt::of_int(e * n - 1) + HalfInt::of_doubled(1)},
                        an * yn);
            }
        }
        images[c] = std::move(img);
    }

    // minimal codomain window covering every image
    std::optional<HalfInt> lo, hi;
    for (auto& img : images)
        for (auto& [u, coef] : img.terms()) {
            if (!lo || u.degree() < *lo) lo = u.degree();
            if (!hi || *hi < u.degree()) hi = u.degree();
        }
    if (!lo) throw std::invalid_argument("automorphism: empty window");
    WindowMap m = WindowMap::make(alg, win, Window(*lo, *hi));
    for (std::size_t c = 0; c < domain.size(); ++c) m.set_column(c, images[c]);
    return m;
}

// ---------------------------------------------------------------------------
// inner exponentials

struct InnerFactor {
    BasisIndex generator;
    Rational coefficient;
};
struct InnerWord {
    std::vector<InnerFactor> factors;
};

namespace aut_detail {

// Exact exponential exp(coef * ad g) as a rectangular map out of `dom`:
// powers of ad g are chained through shifted windows until they vanish, so
// nothing is ever dropped.
inline WindowMap exp_factor_exact(const AlgebraInstance& inst, const BasisIndex& gen,
                                  const Rational& coef, const Window& dom) {
    const Element z = Element::basis(gen);
    const HalfInt d = gen.degree();
    constexpr int kMaxOrder = 8;

    std::vector<WindowMap> powers;  // powers[j] : dom -> dom + (j+1) d
    {
        WindowMap p = ad_matrix(inst, z, dom);
        while (!p.mat.is_zero()) {
            powers.push_back(p);
            if (static_cast<int>(powers.size()) >= kMaxOrder)
                throw std::invalid_argument("exp: ad " + basis_str(inst.spec(), gen) +
                                            " is not nilpotent of small order");
            WindowMap step = ad_matrix(inst, z, powers.back().codomain);
            WindowMap q = WindowMap::make(inst.spec(), dom, step.codomain);
            q.mat = step.mat * powers.back().mat;
            p = std::move(q);
        }
    }

    Window cod = dom;
    for (auto& p : powers) cod = Window::hull(cod, p.codomain);
    WindowMap out = WindowMap::make(inst.spec(), dom, cod);
    for (std::size_t c = 0; c < out.domain_basis.size(); ++c) {
        auto r = out.codomain_pos(out.domain_basis[c]);
        out.mat.at(*r, c) = Rational(1);
    }
    Rational fact(1), cpow(1);
    for (std::size_t j = 0; j < powers.size(); ++j) {
        fact *= Rational(static_cast<long>(j + 1));
        cpow *= coef;
        const Rational scale = cpow / fact;
        if (scale.is_zero()) continue;
        for (std::size_t c = 0; c < powers[j].domain_basis.size(); ++c)
            for (std::size_t r = 0; r < powers[j].codomain_basis.size(); ++r) {
                const Rational& v = powers[j].mat.at(r, c);
                if (v.is_zero()) continue;
                auto rr = out.codomain_pos(powers[j].codomain_basis[r]);
                out.mat.at(*rr, c) += scale * v;
            }
    }
    return out;
}

}  // namespace aut_detail

// Product over factors of exp(coef * ad g) as an endomorphism of `win`:
// factors multiply left to right (the last factor acts first). Computed
// exactly on growing windows, then truncated back; a column is flagged when
// truncation dropped a nonzero term, so unflagged columns are exact.
inline WindowMap exp_inner(const AlgebraInstance& inst, const InnerWord& word,
                           const Window& win) {
    const AlgebraSpec& spec = inst.spec();
    WindowMap composite = WindowMap::identity(spec, win);
    for (auto it = word.factors.rbegin(); it != word.factors.rend(); ++it) {
        WindowMap f = aut_detail::exp_factor_exact(inst, it->generator, it->coefficient,
                                                   composite.codomain);
        WindowMap next = WindowMap::make(spec, win, f.codomain);
        // align composite's codomain into f's domain (equal windows by construction)
        next.mat = f.mat * composite.mat;
        composite = std::move(next);
    }

    WindowMap out = WindowMap::make(spec, win, win);
    for (std::size_t c = 0; c < composite.domain_basis.size(); ++c) {
        bool dropped = false;
        for (std::size_t r = 0; r < composite.codomain_basis.size(); ++r) {
            const Rational& v = composite.mat.at(r, c);
            if (v.is_zero()) continue;
            auto rr = out.codomain_pos(composite.codomain_basis[r]);
            if (rr)
                out.mat.at(*rr, c) = v;
            else
                dropped = true;
        }
        out.approx_cols[c] = dropped;
    }
    return out;
}

// ---------------------------------------------------------------------------
// checks and composition

struct HomViolation {
    BasisIndex x, y;
    Element mapped_bracket;  // sigma([x,y])
    Element bracket_mapped;  // [sigma x, sigma y]
};

struct HomReport {
    std::size_t checked_pairs = 0, skipped_pairs = 0;
    std::size_t violation_count = 0;
    bool injective = true;
    std::vector<HomViolation> violations;  // first few, for reporting
    bool pass() const { return injective && violation_count == 0; }
};

// sigma[x,y] = [sigma x, sigma y] for every domain pair whose bracket support
// stays in the domain, skipping truncation-flagged columns; plus injectivity
// on the checked columns.
inline HomReport check_homomorphism(const AlgebraInstance& inst, const WindowMap& sigma) {
    HomReport rep;
    const auto& basis = sigma.domain_basis;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            if (sigma.approx_cols[i] || sigma.approx_cols[j]) {
                ++rep.skipped_pairs;
                continue;
            }
            Element bxy = inst.bracket_basis(basis[i], basis[j]);
            bool ok = true;
            for (auto& [u, cu] : bxy.terms()) {
                auto p = sigma.domain_pos(u);
                if (!p || sigma.approx_cols[*p]) ok = false;
            }
            if (!ok) {
                ++rep.skipped_pairs;
                continue;
            }
            ++rep.checked_pairs;
            Element lhs = sigma.apply(bxy);
            Element rhs = inst.bracket(sigma.column_element(i), sigma.column_element(j));
            if (!(lhs == rhs)) {
                ++rep.violation_count;
                if (rep.violations.size() < 16)
                    rep.violations.push_back({basis[i], basis[j], lhs, rhs});
            }
        }

    // injectivity on unflagged columns
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < basis.size(); ++c)
        if (!sigma.approx_cols[c]) cols.push_back(c);
    QMatrix sub(sigma.codomain_basis.size(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        bool nonzero = false;
        for (std::size_t r = 0; r < sigma.codomain_basis.size(); ++r) {
            sub.at(r, c) = sigma.mat.at(r, cols[c]);
            nonzero = nonzero || !sub.at(r, c).is_zero();
        }
        if (!nonzero) rep.injective = false;
    }
    if (rep.injective && rank(sub) != cols.size()) rep.injective = false;
    return rep;
}

struct IdealViolation {
    BasisIndex column, row;
    Rational entry;
};

struct IdealReport {
    bool pass = true;
    std::vector<IdealViolation> violations;
};

// Columns of ideal symbols (every family except L) may only hit ideal rows.
inline IdealReport ideal_preservation_check(const AlgebraInstance& inst,
                                            const WindowMap& sigma) {
    IdealReport rep;
    const int fL = inst.spec().family_index("L");
    for (std::size_t c = 0; c < sigma.domain_basis.size(); ++c) {
        if (sigma.domain_basis[c].family == fL) continue;
        for (std::size_t r = 0; r < sigma.codomain_basis.size(); ++r) {
            if (sigma.codomain_basis[r].family != fL) continue;
            if (!sigma.mat.at(r, c).is_zero()) {
                rep.pass = false;
                if (rep.violations.size() < 16)
                    rep.violations.push_back(
                        {sigma.domain_basis[c], sigma.codomain_basis[r], sigma.mat.at(r, c)});
            }
        }
    }
    return rep;
}

// f after g; windows must be threaded exactly. Truncation flags propagate
// through nonzero entries.
inline WindowMap compose(const AlgebraSpec& spec, const WindowMap& f, const WindowMap& g) {
    if (!(g.codomain == f.domain))
        throw std::invalid_argument("compose: inner codomain window " + g.codomain.str() +
                                    " does not match outer domain window " + f.domain.str());
    WindowMap out = WindowMap::make(spec, g.domain, f.codomain);
    out.mat = f.mat * g.mat;
    for (std::size_t c = 0; c < g.domain_basis.size(); ++c) {
        bool approx = g.approx_cols[c];
        for (std::size_t r = 0; r < g.codomain_basis.size() && !approx; ++r)
            if (!g.mat.at(r, c).is_zero() && f.approx_cols[r]) approx = true;
        out.approx_cols[c] = approx;
    }
    return out;
}

// ---------------------------------------------------------------------------
// closed-form composition laws

struct CompositionLawReport {
    AutomorphismSpec composed;
    bool pass = true;
    std::size_t mismatched_columns = 0;
};

// Composes sigma1 after sigma2 two ways: matrix composition of the built maps
// against the closed-form composed parameter tuple, with the witness extended
// multiplicatively. Exact column-wise comparison.
inline CompositionLawReport composition_law_check(const AlgebraInstance& inst,
                                                  const AutomorphismSpec& spec1,
                                                  const AutomorphismSpec& spec2,
                                                  const Window& win) {
    if (spec1.index() != spec2.index())
        throw std::invalid_argument("composition law: variants differ");
    const Rational b = inst.param("b");

    AutomorphismSpec composed = spec1;
    if (auto* g1 = std::get_if<GenericScale>(&spec1)) {
        const auto& g2 = std::get<GenericScale>(spec2);
        composed = GenericScale{g1->alpha * g2.alpha, g1->mu * g2.mu, g1->s * g2.s};
    } else if (auto* f1 = std::get_if<FlipScale0b>(&spec1)) {
        const auto& f2 = std::get<FlipScale0b>(spec2);
        FlipScale0b r;
        r.eps = f1->eps * f2.eps;
        r.alpha = f1->alpha.pow(f2.eps) * f2.alpha;
        r.mu = f1->mu * f2.mu;
        if (b.is_zero()) {
            r.c = f1->c + f1->mu * f2.c;
            r.d = Rational(f2.eps) * f1->d + f1->mu * f2.d;
        } else if (b == Rational(1)) {
            r.c = Rational(f2.eps) * f1->c + f1->mu * f2.c;
            r.d = f1->d + f1->mu * f2.d;
        } else {
            throw std::invalid_argument("composition law: no closed form for a = 0, b = " +
                                        b.str());
        }
        r.s = f1->s * f2.s * f1->alpha.pow((f2.eps - 1) / 2);
        composed = r;
    } else {
        const auto& h1 = std::get<Shift1b>(spec1);
        const auto& h2 = std::get<Shift1b>(spec2);
        if (!b.is_zero())
            throw std::invalid_argument("composition law: closed form only for a = 1, b = 0");
        Shift1b r;
        r.eps = h1.eps * h2.eps;
        r.alpha = h1.alpha.pow(h2.eps) * h2.alpha;
        r.mu = h1.alpha.pow(h2.eps - 1) * h1.mu * h2.mu;
        r.c = h1.c + h1.alpha.inverse() * h1.mu * h2.c;
        r.d = Rational(h2.eps) * h1.d + h1.alpha.inverse() * h1.mu * h2.d;
        r.s = h1.s * h2.s * h1.alpha.pow(h2.eps - 1);
        composed = r;
    }

    WindowMap m2 = build_automorphism(inst, spec2, win);
    WindowMap m1 = build_automorphism(inst, spec1, m2.codomain);
    WindowMap prod = compose(inst.spec(), m1, m2);
    WindowMap closed = build_automorphism(inst, composed, win);

    CompositionLawReport rep;
    rep.composed = composed;
    for (std::size_t c = 0; c < prod.domain_basis.size(); ++c)
        if (!(prod.column_element(c) == closed.column_element(c))) {
            rep.pass = false;
            ++rep.mismatched_columns;
        }
    return rep;
}

// ---------------------------------------------------------------------------
// inner commutator relation

struct CommutatorReport {
    Rational gamma;  // alpha*beta*(j - i)
    std::size_t compared_columns = 0;
    bool pass = true;
};

// (exp a ad Y_{j+1/2})(exp b ad Y_{i+1/2})(inverse)(inverse) against
// exp(gamma ad I_{i+j+1}) with gamma = a b (j - i), compared column-wise on
// the interior of the window over truncation-exact columns.
inline CommutatorReport commutator_relation_check(const AlgebraInstance& inst,
                                                  const Rational& alpha, const Rational& beta,
                                                  std::int64_t i, std::int64_t j,
                                                  const Window& win, int margin = 4) {
    if (margin < 4) throw std::invalid_argument("commutator check: margin must be at least 4");
    const AlgebraSpec& spec = inst.spec();
    const int fI = spec.family_index("I"), fY = spec.family_index("Y");
    if (fI < 0 || fY < 0) throw std::invalid_argument("commutator check needs families I, Y");

    const BasisIndex yj{fY, HalfInt::of_int(j) + HalfInt::of_doubled(1)};
    const BasisIndex yi{fY, HalfInt::of_int(i) + HalfInt::of_doubled(1)};
    const BasisIndex target{fI, HalfInt::of_int(i + j + 1)};

    InnerWord lhs_word{{{yj, alpha}, {yi, beta}, {yj, -alpha}, {yi, -beta}}};
    WindowMap lhs = exp_inner(inst, lhs_word, win);

    CommutatorReport rep;
    rep.gamma = alpha * beta * Rational(j - i);
    WindowMap rhs = exp_inner(inst, InnerWord{{{target, rep.gamma}}}, win);

    const Window interior = win.shrunk(margin);
    for (std::size_t c = 0; c < lhs.domain_basis.size(); ++c) {
        if (!interior.contains(lhs.domain_basis[c].degree())) continue;
        if (lhs.approx_cols[c] || rhs.approx_cols[c]) continue;
        ++rep.compared_columns;
        if (!(lhs.column_element(c) == rhs.column_element(c))) rep.pass = false;
    }
    if (rep.compared_columns == 0)
        throw std::invalid_argument("commutator check: no exact interior columns; enlarge "
                                    "the window");
    return rep;
}

}  // namespace wgab

#endif
