#ifndef WGAB_DERIVATIONS_HPP
#define WGAB_DERIVATIONS_HPP

// Degree-homogeneous derivations on truncation windows.
//
// A degree-d candidate assigns to every window basis element x an image of
// degree deg(x) + d. The Leibniz rule D[x,y] = [Dx,y] + [x,Dy] becomes one
// exact linear block per basis pair whose bracket degree (and its shift by d)
// stays inside the window; the solution space is a nullspace basis over the
// image coefficients.
//
// Window truncation frees boundary coefficients (their constraints reference
// brackets that fell outside), so solution spaces are only compared after
// restriction to an interior window obtained by shrinking the solve window by
// a margin at both ends. The H^1 component of degree d is the interior
// solution space modulo the interior restriction of the inner span
// {ad z : z in the degree-d slice}.

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"

namespace wgab {

struct DerivationCandidate {
    HalfInt degree;
    std::map<BasisIndex, Element> images;

    friend bool operator==(const DerivationCandidate&, const DerivationCandidate&) = default;
};

// Canonical coordinates for the image coefficients of a degree-d candidate on
// a window: pairs (x, t) with x in the window basis and t in the full
// degree-(deg x + d) slice, enumerated in basis order.
class DerivationCoords {
public:
    DerivationCoords(const AlgebraSpec& spec, const Window& win, HalfInt degree)
        : degree_(degree) {
        for (const auto& x : window_basis(spec, win))
            for (const auto& t : slice_basis(spec, x.degree() + degree)) {
                pos_[{x, t}] = unknowns_.size();
                unknowns_.emplace_back(x, t);
            }
    }

    std::size_t size() const { return unknowns_.size(); }
    const std::pair<BasisIndex, BasisIndex>& at(std::size_t i) const { return unknowns_[i]; }

    std::size_t pos(const BasisIndex& x, const BasisIndex& t) const {
        auto it = pos_.find({x, t});
        if (it == pos_.end()) throw std::logic_error("derivation coords: unknown coordinate");
        return it->second;
    }
    bool has(const BasisIndex& x, const BasisIndex& t) const {
        return pos_.count({x, t}) > 0;
    }

    std::vector<Rational> vectorize(const DerivationCandidate& cand) const {
        std::vector<Rational> v(unknowns_.size());
        for (std::size_t i = 0; i < unknowns_.size(); ++i) {
            auto& [x, t] = unknowns_[i];
            auto it = cand.images.find(x);
            if (it == cand.images.end()) continue;
            auto ct = it->second.terms().find(t);
            if (ct != it->second.terms().end()) v[i] = ct->second;
        }
        return v;
    }

    DerivationCandidate devectorize(const std::vector<Rational>& v) const {
        DerivationCandidate cand;
        cand.degree = degree_;
        for (auto& [pair, i] : pos_) cand.images[pair.first];  // materialize all keys
        for (std::size_t i = 0; i < unknowns_.size(); ++i)
            cand.images[unknowns_[i].first].add(unknowns_[i].second, v[i]);
        return cand;
    }

    HalfInt degree() const { return degree_; }

private:
    HalfInt degree_;
    std::vector<std::pair<BasisIndex, BasisIndex>> unknowns_;
    std::map<std::pair<BasisIndex, BasisIndex>, std::size_t> pos_;
};

// Nullspace basis of the Leibniz constraint system; deterministic.
inline std::vector<DerivationCandidate> solve_homogeneous_derivations(
    const AlgebraInstance& inst, HalfInt degree, const Window& win) {
    const AlgebraSpec& spec = inst.spec();
    DerivationCoords coords(spec, win, degree);
    if (coords.size() == 0)
        throw std::invalid_argument("derivation solve: window has no basis after shifting");

    auto basis = window_basis(spec, win);
    RowReducer reducer(coords.size());
    std::size_t blocks = 0;

    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            const BasisIndex& x = basis[i];
            const BasisIndex& y = basis[j];
            const HalfInt dsum = x.degree() + y.degree();
            if (!win.contains(dsum) || !win.contains(dsum + degree)) continue;
            ++blocks;

            const Element bxy = inst.bracket_basis(x, y);
            for (const auto& t : slice_basis(spec, dsum + degree)) {
                std::vector<Rational> row(coords.size());
                bool nonzero = false;
                // + D[x,y]
                for (auto& [u, cu] : bxy.terms()) {
                    row[coords.pos(u, t)] += cu;
                    nonzero = true;
                }
                // - [Dx, y]
                for (const auto& v : slice_basis(spec, x.degree() + degree)) {
                    Element bv = inst.bracket_basis(v, y);
                    auto ct = bv.terms().find(t);
                    if (ct != bv.terms().end()) {
                        row[coords.pos(x, v)] -= ct->second;
                        nonzero = true;
                    }
                }
                // - [x, Dy]
                for (const auto& w : slice_basis(spec, y.degree() + degree)) {
                    Element bw = inst.bracket_basis(x, w);
                    auto ct = bw.terms().find(t);
                    if (ct != bw.terms().end()) {
                        row[coords.pos(y, w)] -= ct->second;
                        nonzero = true;
                    }
                }
                if (nonzero) reducer.push_row(std::move(row));
            }
        }
    }
    if (blocks == 0)
        throw std::invalid_argument(
            "derivation solve: empty constraint system (window too small for degree " +
            degree.str() + ")");

    auto [pcols, prows] = reducer.finalize();
    auto null_basis = nullspace_of_reduced(pcols, prows, coords.size());
    std::vector<DerivationCandidate> out;
    out.reserve(null_basis.size());
    for (auto& v : null_basis) out.push_back(coords.devectorize(v));
    return out;
}

// Independent generators of {ad z : z homogeneous of the given degree},
// expressed on the window. The span is taken honestly: at parameter points
// where some ad z vanishes the dimension drops.
inline std::vector<DerivationCandidate> inner_derivations(const AlgebraInstance& inst,
                                                          HalfInt degree, const Window& win) {
    const AlgebraSpec& spec = inst.spec();
    DerivationCoords coords(spec, win, degree);
    auto basis = window_basis(spec, win);

    std::vector<DerivationCandidate> out;
    RowReducer reducer(coords.size());
    for (const auto& z : slice_basis(spec, degree)) {
        DerivationCandidate cand;
        cand.degree = degree;
        Element ez = Element::basis(z);
        for (const auto& x : basis) cand.images[x] = inst.bracket(ez, Element::basis(x));
        if (reducer.push_row(coords.vectorize(cand))) out.push_back(std::move(cand));
    }
    return out;
}

inline DerivationCandidate restrict_candidate(const DerivationCandidate& cand,
                                              const Window& interior) {
    DerivationCandidate out;
    out.degree = cand.degree;
    for (auto& [x, img] : cand.images)
        if (interior.contains(x.degree())) out.images[x] = img;
    return out;
}

struct H1Report {
    std::map<std::string, Rational> params;
    HalfInt degree;
    Window solve_window, interior_window;
    std::size_t solution_dim = 0;  // interior-restricted
    std::size_t inner_dim = 0;     // interior-restricted
    std::size_t outer_dim = 0;
    std::vector<DerivationCandidate> outer_basis;  // interior-restricted representatives
};

inline H1Report h1_component(const AlgebraInstance& inst, HalfInt degree,
                             const Window& solve_win, int margin) {
    if (margin < 2) throw std::invalid_argument("h1: margin must be at least 2");
    Window interior = [&] {
        try {
            return solve_win.shrunk(margin);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("h1: interior window is empty");
        }
    }();

    auto sols = solve_homogeneous_derivations(inst, degree, solve_win);
    auto inner = inner_derivations(inst, degree, solve_win);

    DerivationCoords coords(inst.spec(), interior, degree);

    RowReducer inner_red(coords.size());
    for (auto& c : inner) inner_red.push_row(coords.vectorize(c));
    auto [ipiv, irows] = inner_red.finalize();

    auto reduce_by_inner = [&](std::vector<Rational> v) {
        for (std::size_t r = 0; r < ipiv.size(); ++r) {
            const std::size_t c = ipiv[r];
            if (v[c].is_zero()) continue;
            Rational f = v[c];
            for (std::size_t j = 0; j < v.size(); ++j)
                if (!irows[r][j].is_zero()) v[j] -= f * irows[r][j];
        }
        return v;
    };

    RowReducer sol_red(coords.size());
    RowReducer outer_red(coords.size());
    for (auto& c : sols) {
        auto v = coords.vectorize(c);
        sol_red.push_row(v);
        outer_red.push_row(reduce_by_inner(std::move(v)));
    }

    H1Report rep;
    rep.params = inst.params();
    rep.degree = degree;
    rep.solve_window = solve_win;
    rep.interior_window = interior;
    rep.solution_dim = sol_red.rank();
    rep.inner_dim = ipiv.size();
    auto [opiv, orows] = outer_red.finalize();
    rep.outer_dim = opiv.size();
    for (auto& row : orows) rep.outer_basis.push_back(coords.devectorize(row));
    return rep;
}

// ---------------------------------------------------------------------------
// closed-form outer derivations for cross-checking

enum class ClosedForm { D1, D2_00, D2_01, D2_02, D3, D3_1m1 };

inline ClosedForm closed_form_from_name(const std::string& s) {
    if (s == "D1") return ClosedForm::D1;
    if (s == "D2_00") return ClosedForm::D2_00;
    if (s == "D2_01") return ClosedForm::D2_01;
    if (s == "D2_02") return ClosedForm::D2_02;
    if (s == "D3") return ClosedForm::D3;
    if (s == "D3_1m1") return ClosedForm::D3_1m1;
    throw std::invalid_argument("unknown closed-form derivation '" + s + "'");
}

inline std::string closed_form_name(ClosedForm f) {
    switch (f) {
        case ClosedForm::D1: return "D1";
        case ClosedForm::D2_00: return "D2_00";
        case ClosedForm::D2_01: return "D2_01";
        case ClosedForm::D2_02: return "D2_02";
        case ClosedForm::D3: return "D3";
        case ClosedForm::D3_1m1: return "D3_1m1";
    }
    throw std::logic_error("unreachable");
}

// The six scaling/cocycle maps:
//   D1:      L(m) -> 0,            I(m) -> I(m),  Y(k) -> 1/2 Y(k)
//   D2_00:   L(m) -> (m-1) I(m)                         (a,b) = (0,0)
//   D2_01:   L(m) -> (m^2-m) I(m)                       (a,b) = (0,1)
//   D2_02:   L(m) -> m^3 I(m)                           (a,b) = (0,2)
//   D3:      L(m) -> m I(m)                             (a,b) = (0,0)
//   D3_1m1:  Y(k) -> I(k - 1/2), degree -1/2            (a,b) = (1,-1)
// The Y coefficient of D1 is forced to half the I coefficient: Leibniz on
// [Y, Y] in I reads c_I = 2 c_Y. Construction does not require the designated
// parameters, so transplants can be used as negative tests.
inline DerivationCandidate closed_form_derivation(ClosedForm which,
                                                  const AlgebraInstance& inst,
                                                  const Window& win) {
    const AlgebraSpec& spec = inst.spec();
    const int fL = spec.family_index("L");
    const int fI = spec.family_index("I");
    const int fY = spec.family_index("Y");
    if (fL < 0 || fI < 0 || fY < 0)
        throw std::invalid_argument("closed-form derivations need families L, I, Y");

    DerivationCandidate cand;
    cand.degree = which == ClosedForm::D3_1m1 ? HalfInt::of_doubled(-1) : HalfInt::of_int(0);
    for (const auto& x : window_basis(spec, win)) {
        Element img;
        const Rational m = x.index.to_rational();
        switch (which) {
            case ClosedForm::D1:
                if (x.family == fI) img.add(x, Rational(1));
                if (x.family == fY) img.add(x, Rational(1, 2));
                break;
            case ClosedForm::D2_00:
                if (x.family == fL) img.add(BasisIndex{fI, x.index}, m - Rational(1));
                break;
            case ClosedForm::D2_01:
                if (x.family == fL) img.add(BasisIndex{fI, x.index}, m * m - m);
                break;
            case ClosedForm::D2_02:
                if (x.family == fL) img.add(BasisIndex{fI, x.index}, m * m * m);
                break;
            case ClosedForm::D3:
                if (x.family == fL) img.add(BasisIndex{fI, x.index}, m);
                break;
            case ClosedForm::D3_1m1:
                if (x.family == fY)
                    img.add(BasisIndex{fI, x.index - HalfInt::of_doubled(1)}, Rational(1));
                break;
        }
        cand.images[x] = std::move(img);
    }
    return cand;
}

// ---------------------------------------------------------------------------
// Leibniz checker

struct LeibnizViolation {
    BasisIndex x, y;
    Element residual;  // D[x,y] - [Dx,y] - [x,Dy]
};

// Exact check over all window pairs whose bracket support stays inside the
// candidate's domain; empty result means pass.
inline std::vector<LeibnizViolation> check_leibniz(const AlgebraInstance& inst,
                                                   const DerivationCandidate& cand,
                                                   const Window& win) {
    std::vector<LeibnizViolation> out;
    std::vector<BasisIndex> domain;
    for (auto& [x, img] : cand.images)
        if (win.contains(x.degree())) domain.push_back(x);

    auto image_of = [&](const BasisIndex& b) -> const Element* {
        auto it = cand.images.find(b);
        return it == cand.images.end() ? nullptr : &it->second;
    };

    for (std::size_t i = 0; i < domain.size(); ++i)
        for (std::size_t j = i + 1; j < domain.size(); ++j) {
            const BasisIndex& x = domain[i];
            const BasisIndex& y = domain[j];
            Element bxy = inst.bracket_basis(x, y);
            Element lhs;
            bool applicable = true;
            for (auto& [u, cu] : bxy.terms()) {
                const Element* du = image_of(u);
                if (!du) {
                    applicable = false;
                    break;
                }
                lhs += du->scaled(cu);
            }
            if (!applicable) continue;
            Element rhs = inst.bracket(*image_of(x), Element::basis(y));
            rhs += inst.bracket(Element::basis(x), *image_of(y));
            Element res = lhs - rhs;
            if (!res.is_zero()) out.push_back({x, y, std::move(res)});
        }
    return out;
}

}  // namespace wgab

#endif
