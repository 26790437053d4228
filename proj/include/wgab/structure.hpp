#ifndef WGAB_STRUCTURE_HPP
#define WGAB_STRUCTURE_HPP

// Window-based structural probes: center, perfectness, and the even-shift
// isomorphism between instances at (a, b) and (a + k, b).

#include <stdexcept>
#include <string>
#include <vector>

#include "algebra.hpp"

namespace wgab {

struct CenterReport {
    std::map<std::string, Rational> params;
    Window window, interior;
    bool full_generators = false;
    std::vector<Element> basis;  // central elements supported on the interior
};

// Solves [g, v] = 0 for v supported on the interior window. By default g
// ranges over the degree |d| <= 2 slices (L_{-2..2} and friends generate
// enough constraints); full_generators uses every window basis element.
inline CenterReport center(const AlgebraInstance& inst, const Window& win, int margin,
                           bool full_generators = false) {
    if (margin < 2) throw std::invalid_argument("center: margin must be at least 2");
    CenterReport rep;
    rep.params = inst.params();
    rep.window = win;
    rep.full_generators = full_generators;
    try {
        rep.interior = win.shrunk(margin);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("center: interior window is empty");
    }

    const AlgebraSpec& spec = inst.spec();
    auto interior_basis = window_basis(spec, rep.interior);

    std::vector<BasisIndex> gens;
    if (full_generators) {
        gens = window_basis(spec, win);
    } else {
        for (std::int64_t d = -4; d <= 4; ++d)
            for (const auto& g : slice_basis(spec, HalfInt::of_doubled(d))) gens.push_back(g);
    }

    // one equation per generator and target symbol hit by some [g, e]
    RowReducer red(interior_basis.size());
    for (const auto& g : gens) {
        std::map<BasisIndex, std::vector<Rational>> per_gen;
        for (std::size_t c = 0; c < interior_basis.size(); ++c) {
            Element br = inst.bracket_basis(g, interior_basis[c]);
            for (auto& [u, coef] : br.terms()) {
                auto it = per_gen.find(u);
                if (it == per_gen.end())
                    it = per_gen.emplace(u, std::vector<Rational>(interior_basis.size())).first;
                it->second[c] += coef;
            }
        }
        for (auto& [u, row] : per_gen) red.push_row(std::move(row));
    }
    auto [pcols, prows] = red.finalize();
    for (auto& v : nullspace_of_reduced(pcols, prows, interior_basis.size())) {
        Element e;
        for (std::size_t c = 0; c < interior_basis.size(); ++c) e.add(interior_basis[c], v[c]);
        rep.basis.push_back(std::move(e));
    }
    return rep;
}

struct PerfectReport {
    std::map<std::string, Rational> params;
    Window window, interior;
    bool pass = true;
    std::vector<BasisIndex> uncovered;  // interior symbols outside the bracket span
};

// Span of all brackets of window basis pairs must contain every interior
// basis element.
inline PerfectReport perfectness_check(const AlgebraInstance& inst, const Window& win,
                                       int margin) {
    if (margin < 2) throw std::invalid_argument("perfectness: margin must be at least 2");
    PerfectReport rep;
    rep.params = inst.params();
    rep.window = win;
    try {
        rep.interior = win.shrunk(margin);
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("perfectness: interior window is empty");
    }

    const AlgebraSpec& spec = inst.spec();
    auto basis = window_basis(spec, win);

    // coordinates: every symbol reachable by a pair bracket, plus the interior
    std::set<BasisIndex> coords_set;
    std::vector<Element> brackets;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            Element br = inst.bracket_basis(basis[i], basis[j]);
            if (br.is_zero()) continue;
            for (auto& [u, c] : br.terms()) coords_set.insert(u);
            brackets.push_back(std::move(br));
        }
    for (const auto& e : window_basis(spec, rep.interior)) coords_set.insert(e);

    std::vector<BasisIndex> coords(coords_set.begin(), coords_set.end());
    std::map<BasisIndex, std::size_t> pos;
    for (std::size_t i = 0; i < coords.size(); ++i) pos[coords[i]] = i;

    RowReducer red(coords.size());
    for (auto& br : brackets) {
        std::vector<Rational> row(coords.size());
        for (auto& [u, c] : br.terms()) row[pos[u]] = c;
        red.push_row(std::move(row));
    }
    auto [pcols, prows] = red.finalize();

    auto in_span = [&](std::size_t coord) {
        std::vector<Rational> v(coords.size());
        v[coord] = Rational(1);
        for (std::size_t r = 0; r < pcols.size(); ++r) {
            if (v[pcols[r]].is_zero()) continue;
            Rational f = v[pcols[r]];
            for (std::size_t jj = 0; jj < coords.size(); ++jj)
                if (!prows[r][jj].is_zero()) v[jj] -= f * prows[r][jj];
        }
        for (auto& x : v)
            if (!x.is_zero()) return false;
        return true;
    };

    for (const auto& e : window_basis(spec, rep.interior))
        if (!in_span(pos[e])) {
            rep.pass = false;
            rep.uncovered.push_back(e);
        }
    return rep;
}

struct ShiftIsoViolation {
    BasisIndex x, y;
    Element mapped_bracket;   // sigma([x, y]) in the target instance
    Element bracket_mapped;   // [sigma x, sigma y] in the target instance
};

struct ShiftIsoReport {
    std::map<std::string, Rational> source_params, target_params;
    std::int64_t k = 0;
    Window window;
    std::size_t checked_pairs = 0;
    bool pass = true;
    std::vector<ShiftIsoViolation> violations;
};

// The even-shift map L(m) -> L(m), I(n) -> I(n-k), Y(t) -> Y(t-k/2) into the
// instance at (a + k, b); verified pairwise by the cross-instance bracket
// check, which is the only evidence the map is right.
inline std::pair<WindowMap, ShiftIsoReport> shift_isomorphism(const AlgebraInstance& src,
                                                              std::int64_t k,
                                                              const Window& win) {
    if (k % 2 != 0)
        throw std::invalid_argument("shift isomorphism: k must be even (odd k breaks the "
                                    "half-integer indices)");
    const AlgebraSpec& spec = src.spec();
    const int fL = spec.family_index("L"), fI = spec.family_index("I"),
              fY = spec.family_index("Y");
    if (fL < 0 || fI < 0 || fY < 0)
        throw std::invalid_argument("shift isomorphism needs families L, I, Y");

    auto params = src.params();
    auto tgt_params = params;
    tgt_params.at("a") = tgt_params.at("a") + Rational(k);
    AlgebraInstance tgt = instantiate(spec, tgt_params);

    const HalfInt kk = HalfInt::of_int(k);
    const HalfInt khalf = HalfInt::of_doubled(k);  // k/2
    Window cod = Window::hull(win, win.shifted(-kk));
    WindowMap sigma = WindowMap::make(spec, win, cod);
    for (std::size_t c = 0; c < sigma.domain_basis.size(); ++c) {
        const BasisIndex& x = sigma.domain_basis[c];
        BasisIndex img = x;
        if (x.family == fI) img.index = x.index - kk;
        if (x.family == fY) img.index = x.index - khalf;
        sigma.set_column(c, Element::basis(img));
    }

    ShiftIsoReport rep;
    rep.source_params = params;
    rep.target_params = tgt_params;
    rep.k = k;
    rep.window = win;
    auto basis = sigma.domain_basis;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            Element bxy = src.bracket_basis(basis[i], basis[j]);
            bool in_domain = true;
            for (auto& [u, cu] : bxy.terms())
                if (!sigma.domain_pos(u)) in_domain = false;
            if (!in_domain) continue;
            ++rep.checked_pairs;
            Element lhs = sigma.apply(bxy);
            Element rhs = tgt.bracket(sigma.apply_basis(basis[i]), sigma.apply_basis(basis[j]));
            if (!(lhs == rhs)) {
                rep.pass = false;
                if (rep.violations.size() < 16)
                    rep.violations.push_back({basis[i], basis[j], lhs, rhs});
            }
        }
    return {std::move(sigma), std::move(rep)};
}

}  // namespace wgab

#endif
