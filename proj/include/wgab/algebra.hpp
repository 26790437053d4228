#ifndef WGAB_ALGEBRA_HPP
#define WGAB_ALGEBRA_HPP

// A spec instantiated at rational parameter values, with exact bracket
// evaluation on finite linear combinations, truncation windows over the
// grading, and matrices of linear maps on window bases.
//
// Windows constrain enumeration, never arithmetic: the bracket of two
// elements is always the full exact result. Only endomorphism matrices on a
// fixed window (ad_endo) have a truncation policy.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "algebra_spec.hpp"
#include "qmatrix.hpp"

namespace wgab {

struct BasisIndex {
    int family = 0;
    HalfInt index;

    HalfInt degree() const { return index; }
    friend auto operator<=>(const BasisIndex&, const BasisIndex&) = default;
};

inline std::string basis_str(const AlgebraSpec& spec, const BasisIndex& b) {
    return spec.families[b.family].name + "(" + b.index.str() + ")";
}

// Finite rational linear combination of basis symbols; no zero coefficients.
class Element {
public:
    Element() = default;

    static Element basis(BasisIndex b) {
        Element e;
        e.terms_[b] = Rational(1);
        return e;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<BasisIndex, Rational>& terms() const { return terms_; }

    void add(const BasisIndex& b, const Rational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(b);
        if (it == terms_.end()) {
            terms_.emplace(b, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Element& operator+=(const Element& o) {
        for (auto& [b, c] : o.terms_) add(b, c);
        return *this;
    }
    Element& operator-=(const Element& o) {
        for (auto& [b, c] : o.terms_) add(b, -c);
        return *this;
    }
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    Element operator-() const {
        Element r;
        for (auto& [b, c] : terms_) r.terms_[b] = -c;
        return r;
    }
    Element scaled(const Rational& c) const {
        Element r;
        if (c.is_zero()) return r;
        for (auto& [b, co] : terms_) r.terms_[b] = co * c;
        return r;
    }

    friend bool operator==(const Element& a, const Element& b) { return a.terms_ == b.terms_; }

    // Zero is homogeneous of every degree; mixed support returns nullopt.
    std::optional<HalfInt> homogeneous_degree() const {
        std::optional<HalfInt> deg;
        for (auto& [b, c] : terms_) {
            if (deg && *deg != b.degree()) return std::nullopt;
            deg = b.degree();
        }
        return deg ? deg : std::optional<HalfInt>(HalfInt::of_int(0));
    }
    bool is_homogeneous() const { return is_zero() || homogeneous_degree().has_value(); }

    std::string str(const AlgebraSpec& spec) const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto& [b, c] : terms_) {
            Rational coef = c;
            if (out.empty()) {
                if (coef.sign() < 0) {
                    out += "-";
                    coef = -coef;
                }
            } else {
                out += coef.sign() < 0 ? " - " : " + ";
                if (coef.sign() < 0) coef = -coef;
            }
            if (coef.is_one())
                out += basis_str(spec, b);
            else
                out += coef.str() + "*" + basis_str(spec, b);
        }
        return out;
    }

private:
    std::map<BasisIndex, Rational> terms_;
};

// ---------------------------------------------------------------------------

class AlgebraInstance {
public:
    AlgebraInstance(AlgebraSpec spec, std::map<std::string, Rational> params)
        : spec_(std::move(spec)), params_(std::move(params)) {
        for (auto& p : spec_.parameters)
            if (!params_.count(p))
                throw std::invalid_argument("instantiate: missing parameter '" + p + "'");
        for (auto& [name, v] : params_)
            if (std::find(spec_.parameters.begin(), spec_.parameters.end(), name) ==
                spec_.parameters.end())
                throw std::invalid_argument("instantiate: extra parameter '" + name + "'");
        std::map<VarId, Poly> subst;
        for (auto& [name, v] : params_) subst[VarPool::intern(name)] = Poly::constant(v);
        for (auto& r : spec_.rules) coeffs_.push_back(r.coefficient.subst(subst));
    }

    const AlgebraSpec& spec() const { return spec_; }
    const std::map<std::string, Rational>& params() const { return params_; }

    Rational param(const std::string& name) const {
        auto it = params_.find(name);
        if (it == params_.end())
            throw std::invalid_argument("instance has no parameter '" + name + "'");
        return it->second;
    }

    // index validity: (index - offset) integral
    BasisIndex make_basis(const std::string& family, HalfInt index) const {
        int f = spec_.family_index(family);
        if (f < 0) throw std::invalid_argument("unknown family '" + family + "'");
        if ((index - spec_.families[f].index_offset).doubled % 2 != 0)
            throw std::invalid_argument("index " + index.str() + " invalid for family '" +
                                        family + "'");
        return BasisIndex{f, index};
    }

    Element bracket_basis(const BasisIndex& x, const BasisIndex& y) const {
        bool flipped = false;
        const BracketRule* r = spec_.rule_for(x.family, y.family, flipped);
        if (!r || r->is_zero()) return Element();
        const int ri = static_cast<int>(r - spec_.rules.data());
        const HalfInt il = flipped ? y.index : x.index;
        const HalfInt ir = flipped ? x.index : y.index;
        Rational c = coeffs_[static_cast<std::size_t>(ri)].eval(
            {{VarPool::M, il.to_rational()}, {VarPool::N, ir.to_rational()}});
        if (flipped) c = -c;
        if (c.is_zero()) return Element();
        Element out;
        out.add(BasisIndex{*r->target, x.index + y.index + r->target_shift}, c);
        return out;
    }

    Element bracket(const Element& x, const Element& y) const {
        Element out;
        for (auto& [bx, cx] : x.terms())
            for (auto& [by, cy] : y.terms()) out += bracket_basis(bx, by).scaled(cx * cy);
        return out;
    }

private:
    AlgebraSpec spec_;
    std::map<std::string, Rational> params_;
    std::vector<Poly> coeffs_;  // rule coefficients with parameters substituted
};

inline AlgebraInstance instantiate(const AlgebraSpec& spec,
                                   std::map<std::string, Rational> params) {
    return AlgebraInstance(spec, std::move(params));
}

// ---------------------------------------------------------------------------

struct Window {
    HalfInt lo, hi;

    Window() = default;
    Window(HalfInt lo_, HalfInt hi_) : lo(lo_), hi(hi_) {
        if (hi < lo) throw std::invalid_argument("window: min exceeds max");
    }
    static Window of_ints(std::int64_t a, std::int64_t b) {
        return Window(HalfInt::of_int(a), HalfInt::of_int(b));
    }

    bool contains(HalfInt d) const { return lo <= d && d <= hi; }
    Window shifted(HalfInt d) const { return Window(lo + d, hi + d); }
    Window reflected() const { return Window(-hi, -lo); }
    Window shrunk(int margin) const {
        return Window(lo + HalfInt::of_int(margin), hi - HalfInt::of_int(margin));
    }
    static Window hull(const Window& a, const Window& b) {
        return Window(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
    }

    friend bool operator==(const Window&, const Window&) = default;
    std::string str() const { return lo.str() + ":" + hi.str(); }
};

// Canonical window basis: families in declaration order, then ascending index.
inline std::vector<BasisIndex> window_basis(const AlgebraSpec& spec, const Window& win) {
    std::vector<BasisIndex> out;
    for (int f = 0; f < static_cast<int>(spec.families.size()); ++f) {
        const HalfInt off = spec.families[f].index_offset;
        // smallest k with off + 2k/2 >= lo
        std::int64_t start = (win.lo - off).doubled;
        start = start % 2 == 0 ? start / 2 : (start > 0 ? start / 2 + 1 : start / 2);
        for (std::int64_t k = start;; ++k) {
            HalfInt idx = off + HalfInt::of_int(k);
            if (!(idx <= win.hi)) break;
            if (idx < win.lo) continue;
            out.push_back(BasisIndex{f, idx});
        }
    }
    return out;
}

// Basis of the full degree-d slice (finite: one symbol per family whose
// offset matches the parity of d).
inline std::vector<BasisIndex> slice_basis(const AlgebraSpec& spec, HalfInt d) {
    std::vector<BasisIndex> out;
    for (int f = 0; f < static_cast<int>(spec.families.size()); ++f)
        if ((d - spec.families[f].index_offset).doubled % 2 == 0)
            out.push_back(BasisIndex{f, d});
    return out;
}

// Exact matrix of a linear map between window bases. Columns follow the
// domain basis, rows the codomain basis. approx_cols flags columns whose
// entries lost out-of-window terms to truncation.
struct WindowMap {
    Window domain, codomain;
    std::vector<BasisIndex> domain_basis, codomain_basis;
    QMatrix mat;
    std::vector<bool> approx_cols;

    static WindowMap make(const AlgebraSpec& spec, const Window& dom, const Window& cod) {
        WindowMap m;
        m.domain = dom;
        m.codomain = cod;
        m.domain_basis = window_basis(spec, dom);
        m.codomain_basis = window_basis(spec, cod);
        m.mat = QMatrix(m.codomain_basis.size(), m.domain_basis.size());
        m.approx_cols.assign(m.domain_basis.size(), false);
        for (std::size_t i = 0; i < m.domain_basis.size(); ++i)
            m.domain_index_[m.domain_basis[i]] = i;
        for (std::size_t i = 0; i < m.codomain_basis.size(); ++i)
            m.codomain_index_[m.codomain_basis[i]] = i;
        return m;
    }

    static WindowMap identity(const AlgebraSpec& spec, const Window& win) {
        WindowMap m = make(spec, win, win);
        m.mat = QMatrix::identity(m.domain_basis.size());
        return m;
    }

    std::optional<std::size_t> codomain_pos(const BasisIndex& b) const {
        auto it = codomain_index_.find(b);
        if (it == codomain_index_.end()) return std::nullopt;
        return it->second;
    }

    std::optional<std::size_t> domain_pos(const BasisIndex& b) const {
        auto it = domain_index_.find(b);
        if (it == domain_index_.end()) return std::nullopt;
        return it->second;
    }

    // Write an exact image into a column; drops nothing (throws if the image
    // does not fit the codomain).
    void set_column(std::size_t col, const Element& image) {
        for (auto& [b, c] : image.terms()) {
            auto r = codomain_pos(b);
            if (!r) throw std::invalid_argument("window map: image leaves the codomain window");
            mat.at(*r, col) = c;
        }
    }

    Element column_element(std::size_t col) const {
        Element e;
        for (std::size_t r = 0; r < codomain_basis.size(); ++r)
            e.add(codomain_basis[r], mat.at(r, col));
        return e;
    }

    Element apply_basis(const BasisIndex& b) const {
        auto c = domain_pos(b);
        if (!c) throw std::invalid_argument("window map: basis element outside domain");
        return column_element(*c);
    }

    bool column_approx(const BasisIndex& b) const {
        auto c = domain_pos(b);
        return c ? approx_cols[*c] : true;
    }

    Element apply(const Element& x) const {
        Element out;
        for (auto& [b, c] : x.terms()) out += apply_basis(b).scaled(c);
        return out;
    }

private:
    std::map<BasisIndex, std::size_t> domain_index_, codomain_index_;
};

enum class TruncationPolicy { strict, truncate };

// Matrix of x -> [z, x] from win to the shifted window; exact by construction.
inline WindowMap ad_matrix(const AlgebraInstance& inst, const Element& z, const Window& win) {
    auto dz = z.homogeneous_degree();
    if (!dz) throw std::invalid_argument("ad matrix: element is not homogeneous");
    WindowMap m = WindowMap::make(inst.spec(), win, win.shifted(*dz));
    for (std::size_t c = 0; c < m.domain_basis.size(); ++c)
        m.set_column(c, inst.bracket(z, Element::basis(m.domain_basis[c])));
    return m;
}

// Matrix of x -> [z, x] as an endomorphism of one window. strict errors on any
// out-of-window image; truncate drops those terms and flags the column.
inline WindowMap ad_endo(const AlgebraInstance& inst, const Element& z, const Window& win,
                         TruncationPolicy policy) {
    auto dz = z.homogeneous_degree();
    if (!dz) throw std::invalid_argument("ad matrix: element is not homogeneous");
    WindowMap m = WindowMap::make(inst.spec(), win, win);
    for (std::size_t c = 0; c < m.domain_basis.size(); ++c) {
        Element img = inst.bracket(z, Element::basis(m.domain_basis[c]));
        for (auto& [b, coef] : img.terms()) {
            auto r = m.codomain_pos(b);
            if (r) {
                m.mat.at(*r, c) = coef;
            } else if (policy == TruncationPolicy::strict) {
                throw std::invalid_argument("ad matrix: image of " +
                                            basis_str(inst.spec(), m.domain_basis[c]) +
                                            " leaves the window (strict mode)");
            } else {
                m.approx_cols[c] = true;
            }
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// numeric Jacobi check on a window

struct JacobiWindowViolation {
    BasisIndex x, y, z;
    Element residual;
};

struct JacobiWindowReport {
    bool pass = true;
    std::size_t triples_checked = 0;
    std::vector<JacobiWindowViolation> violations;
};

// Checks the cyclic Jacobi sum for every basis triple whose pairwise and
// triple degree sums stay inside the window.
inline JacobiWindowReport jacobi_window(const AlgebraInstance& inst, const Window& win,
                                        std::size_t max_violations = 16) {
    JacobiWindowReport rep;
    auto basis = window_basis(inst.spec(), win);
    const std::size_t n = basis.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t l = j + 1; l < n; ++l) {
                const HalfInt dx = basis[i].degree(), dy = basis[j].degree(),
                              dz = basis[l].degree();
                if (!win.contains(dx + dy) || !win.contains(dy + dz) ||
                    !win.contains(dx + dz) || !win.contains(dx + dy + dz))
                    continue;
                ++rep.triples_checked;
                Element ex = Element::basis(basis[i]);
                Element ey = Element::basis(basis[j]);
                Element ez = Element::basis(basis[l]);
                Element sum = inst.bracket(inst.bracket(ex, ey), ez);
                sum += inst.bracket(inst.bracket(ey, ez), ex);
                sum += inst.bracket(inst.bracket(ez, ex), ey);
                if (!sum.is_zero()) {
                    rep.pass = false;
                    if (rep.violations.size() < max_violations)
                        rep.violations.push_back({basis[i], basis[j], basis[l], sum});
                }
            }
    return rep;
}

}  // namespace wgab

#endif
