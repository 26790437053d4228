#ifndef WGAB_POLY_HPP
#define WGAB_POLY_HPP

// Multivariate polynomials over Rational with a fixed interned variable pool.
// Terms live in a map under total-degree-then-lex order, so structurally equal
// polynomials compare equal and printing is canonical.

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace wgab {

using VarId = int;

class VarPool {
public:
    static constexpr VarId M = 0, N = 1, K = 2, A = 3, B = 4;

    static VarId intern(const std::string& name) {
        auto& p = instance();
        std::lock_guard<std::mutex> lock(p.mu_);
        for (VarId i = 0; i < static_cast<VarId>(p.names_.size()); ++i)
            if (p.names_[i] == name) return i;
        p.names_.push_back(name);
        return static_cast<VarId>(p.names_.size()) - 1;
    }

    static std::string name(VarId id) {
        auto& p = instance();
        std::lock_guard<std::mutex> lock(p.mu_);
        return p.names_.at(static_cast<std::size_t>(id));
    }

private:
    static VarPool& instance() {
        static VarPool pool;
        return pool;
    }
    VarPool() : names_{"m", "n", "k", "a", "b"} {}
    std::mutex mu_;
    std::vector<std::string> names_;
};

// Sparse exponent vector, sorted by variable id, no zero exponents.
using Monomial = std::vector<std::pair<VarId, int>>;

inline int total_degree(const Monomial& m) {
    int d = 0;
    for (auto& [v, e] : m) d += e;
    return d;
}

struct MonomialOrder {
    // total degree first, then lex with lower VarId more significant
    bool operator()(const Monomial& x, const Monomial& y) const {
        int dx = total_degree(x), dy = total_degree(y);
        if (dx != dy) return dx < dy;
        std::size_t i = 0, j = 0;
        while (i < x.size() || j < y.size()) {
            VarId vx = i < x.size() ? x[i].first : INT32_MAX;
            VarId vy = j < y.size() ? y[j].first : INT32_MAX;
            if (vx != vy) {
                // the side owning the earlier variable has the larger monomial
                return vx > vy;
            }
            int ex = x[i].second, ey = y[j].second;
            if (ex != ey) return ex < ey;
            ++i, ++j;
        }
        return false;
    }
};

class Poly {
public:
    using TermMap = std::map<Monomial, Rational, MonomialOrder>;

    Poly() = default;

    static Poly constant(Rational c) {
        Poly p;
        if (!c.is_zero()) p.terms_[Monomial{}] = std::move(c);
        return p;
    }
    static Poly var(VarId v) {
        Poly p;
        p.terms_[Monomial{{v, 1}}] = Rational(1);
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
    }
    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw std::domain_error("poly: not a constant");
        return terms_.begin()->second;
    }

    const TermMap& terms() const { return terms_; }

    std::set<VarId> variables() const {
        std::set<VarId> out;
        for (auto& [mono, c] : terms_)
            for (auto& [v, e] : mono) out.insert(v);
        return out;
    }

    Poly operator-() const {
        Poly r;
        for (auto& [mono, c] : terms_) r.terms_[mono] = -c;
        return r;
    }

    Poly& operator+=(const Poly& o) {
        for (auto& [mono, c] : o.terms_) add_term(mono, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        for (auto& [mono, c] : o.terms_) add_term(mono, -c);
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) r.add_term(mul_mono(ma, mb), ca * cb);
        return r;
    }

    Poly scaled(const Rational& c) const {
        Poly r;
        if (c.is_zero()) return r;
        for (auto& [mono, coef] : terms_) r.terms_[mono] = coef * c;
        return r;
    }

    Poly pow(int e) const {
        if (e < 0) throw std::domain_error("poly: negative power");
        Poly acc = constant(Rational(1));
        for (int i = 0; i < e; ++i) acc = acc * *this;
        return acc;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    // deterministic total order, usable as a map key
    friend bool operator<(const Poly& a, const Poly& b) {
        return std::lexicographical_compare(
            a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(),
            [](const auto& x, const auto& y) {
                MonomialOrder lt;
                if (lt(x.first, y.first)) return true;
                if (lt(y.first, x.first)) return false;
                return x.second < y.second;
            });
    }

    // Exact evaluation; every variable of the polynomial must be assigned.
    Rational eval(const std::map<VarId, Rational>& assignment) const {
        Rational out(0);
        for (auto& [mono, c] : terms_) {
            Rational t = c;
            for (auto& [v, e] : mono) {
                auto it = assignment.find(v);
                if (it == assignment.end())
                    throw std::invalid_argument("poly eval: missing variable '" +
                                                VarPool::name(v) + "'");
                t *= it->second.pow(e);
            }
            out += t;
        }
        return out;
    }

    // Simultaneous substitution of variables by polynomials; unassigned
    // variables stay themselves.
    Poly subst(const std::map<VarId, Poly>& images) const {
        Poly out;
        for (auto& [mono, c] : terms_) {
            Poly t = constant(c);
            for (auto& [v, e] : mono) {
                auto it = images.find(v);
                const Poly base = it != images.end() ? it->second : var(v);
                t = t * base.pow(e);
            }
            out += t;
        }
        return out;
    }

    // Canonical rendering, highest term first, e.g. "m^2 - n^2" or "-1/2*m*n + a".
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [mono, c] = *it;
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
            std::string vars;
            for (auto& [v, e] : mono) {
                if (!vars.empty()) vars += "*";
                vars += VarPool::name(v);
                if (e > 1) vars += "^" + std::to_string(e);
            }
            if (vars.empty()) {
                out += coef.str();
            } else if (coef.is_one()) {
                out += vars;
            } else {
                out += coef.str() + "*" + vars;
            }
        }
        return out;
    }

private:
    void add_term(const Monomial& mono, const Rational& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(mono);
        if (it == terms_.end()) {
            terms_.emplace(mono, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    static Monomial mul_mono(const Monomial& a, const Monomial& b) {
        Monomial r;
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
                r.push_back(a[i++]);
            } else if (i == a.size() || b[j].first < a[i].first) {
                r.push_back(b[j++]);
            } else {
                r.emplace_back(a[i].first, a[i].second + b[j].second);
                ++i, ++j;
            }
        }
        return r;
    }

    TermMap terms_;
};

}  // namespace wgab

#endif
