#ifndef WGAB_CLI_HPP
#define WGAB_CLI_HPP

// Command-line front end. run() is the whole tool as a library function so
// tests can drive it in-process and assert on bytes and exit codes.
//
// Exit codes: 0 success/pass, 1 mathematical failure (violations found,
// golden mismatch), 2 usage error.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "automorphisms.hpp"
#include "dsl.hpp"
#include "report.hpp"
#include "structure.hpp"

namespace wgab {

namespace cli_detail {

struct CommonOpts {
    std::string preset_name = "wgab";
    std::string file;
    std::string a, b;
    std::string window = "-8:8";
    int margin = 3;
    bool json_out = false;
    std::string golden;
};

inline Window parse_window(const std::string& s) {
    auto colon = s.rfind(':');
    if (colon == std::string::npos || colon == 0)
        throw std::invalid_argument("window must look like '-8:8'");
    return Window(HalfInt::parse(s.substr(0, colon)), HalfInt::parse(s.substr(colon + 1)));
}

inline AlgebraSpec load_spec(const CommonOpts& o) {
    if (!o.file.empty()) {
        std::ifstream in(o.file);
        if (!in) throw std::invalid_argument("cannot open spec file '" + o.file + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_spec(ss.str());
    }
    return preset(o.preset_name);
}

inline AlgebraInstance load_instance(const CommonOpts& o) {
    AlgebraSpec spec = load_spec(o);
    std::map<std::string, Rational> params;
    for (auto& p : spec.parameters) {
        const std::string* v = p == "a" ? &o.a : p == "b" ? &o.b : nullptr;
        if (!v || v->empty())
            throw std::invalid_argument("algebra '" + spec.name + "' needs --" + p);
        params[p] = Rational::parse(*v);
    }
    return instantiate(spec, std::move(params));
}

inline std::string params_str(const AlgebraInstance& inst) {
    std::string out;
    for (auto& [k, v] : inst.params()) {
        if (!out.empty()) out += ", ";
        out += k + "=" + v.str();
    }
    return out.empty() ? "no parameters" : out;
}

// tiny element expression grammar: coef * Fam(index) terms joined by +/-
inline Element parse_element(const AlgebraInstance& inst, std::string_view s, std::size_t& i) {
    auto skip = [&] { while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i; };
    auto fail = [&](const std::string& m) -> void {
        throw std::invalid_argument("element expression: " + m + " at offset " +
                                    std::to_string(i));
    };
    Element out;
    bool first = true;
    for (;;) {
        skip();
        Rational sign(1);
        if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sign = Rational(-1);
            ++i;
        } else if (!first) {
            break;
        }
        skip();
        // optional rational coefficient followed by '*'
        Rational coef = sign;
        std::size_t save = i;
        std::string num;
        while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/'))
            num += s[i++];
        skip();
        if (!num.empty() && i < s.size() && s[i] == '*') {
            ++i;
            coef = coef * Rational::parse(num);
            skip();
        } else if (!num.empty()) {
            fail("expected '*' after coefficient");
        } else {
            i = save;
        }
        std::string fam;
        while (i < s.size() && (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_'))
            fam += s[i++];
        if (fam.empty()) fail("expected family name");
        if (i >= s.size() || s[i] != '(') fail("expected '('");
        ++i;
        std::string idx;
        while (i < s.size() && s[i] != ')') idx += s[i++];
        if (i >= s.size()) fail("missing ')'");
        ++i;
        out.add(inst.make_basis(fam, HalfInt::parse(idx)), coef);
        first = false;
    }
    return out;
}

inline std::pair<Element, Element> parse_bracket_expr(const AlgebraInstance& inst,
                                                      const std::string& s) {
    std::size_t i = 0;
    auto skip = [&] { while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i; };
    skip();
    if (i >= s.size() || s[i] != '[')
        throw std::invalid_argument("bracket expression must look like \"[L(2), L(3)]\"");
    ++i;
    Element x = parse_element(inst, s, i);
    skip();
    if (i >= s.size() || s[i] != ',') throw std::invalid_argument("bracket: expected ','");
    ++i;
    Element y = parse_element(inst, s, i);
    skip();
    if (i >= s.size() || s[i] != ']') throw std::invalid_argument("bracket: expected ']'");
    return {x, y};
}

// 0 pass, 1 mathematical failure; honors --golden and --json
inline int emit(const CommonOpts& o, const json& doc, const std::string& human,
                bool pass, std::ostream& out, std::ostream& err) {
    if (!o.golden.empty()) {
        GoldenDiff gd = golden_compare(doc, load_json_file(o.golden));
        if (o.json_out) out << doc.dump(2) << "\n";
        if (!gd.pass) {
            err << "golden mismatch vs " << o.golden << ":\n" << gd.diff;
            return 1;
        }
        if (!o.json_out) out << human << "golden match: " << o.golden << "\n";
        return pass ? 0 : 1;
    }
    if (o.json_out)
        out << doc.dump(2) << "\n";
    else
        out << human;
    return pass ? 0 : 1;
}

inline void add_common(CLI::App* cmd, CommonOpts& o, bool needs_params = true) {
    cmd->add_option("--preset", o.preset_name, "built-in algebra: witt, wab, wgab");
    cmd->add_option("--file", o.file, "algebra definition file (overrides --preset)");
    if (needs_params) {
        cmd->add_option("--a", o.a, "parameter a as an exact rational p/q");
        cmd->add_option("--b", o.b, "parameter b as an exact rational p/q");
    }
    cmd->add_flag("--json", o.json_out, "emit the machine-readable report");
    cmd->add_option("--golden", o.golden, "compare the report against a stored JSON file");
}

}  // namespace cli_detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace cli_detail;
    CLI::App app{"exact computations in 1/2 Z-graded Lie algebras W^g(a,b)"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string degree_s = "0";
    std::string element_expr;
    bool symbolic_only = false;
    bool with_window = false;
    bool full_generators = false;
    std::int64_t shift_k = 2;
    std::string variant = "generic";
    struct AutParams {
        std::string eps = "1", alpha = "1", mu = "1", s = "1", c = "0", d = "0", e = "0",
                    t = "0";
    } ap1, ap2;
    std::string alpha_s = "1", beta_s = "1";
    std::int64_t idx_i = 0, idx_j = 0;

    auto* jac = app.add_subcommand("jacobi", "verify the Jacobi identity");
    {
        CommonOpts defaults;
        o = defaults;
    }
    add_common(jac, o);
    jac->add_flag("--symbolic", symbolic_only, "symbolic check only (default does both when --a/--b given)");
    jac->add_option("--window", o.window, "window lo:hi for the numeric check");
    jac->add_flag("--with-window", with_window, "also run the numeric window check");

    auto* br = app.add_subcommand("bracket", "evaluate one bracket of element expressions");
    add_common(br, o);
    br->add_option("expr", element_expr, "e.g. \"[Y(3/2), Y(1/2)]\"")->required();

    auto* h1cmd = app.add_subcommand("h1", "outer-derivation component of one degree");
    add_common(h1cmd, o);
    h1cmd->add_option("--degree", degree_s, "degree as k or k/2");
    h1cmd->add_option("--window", o.window, "solve window lo:hi");
    h1cmd->add_option("--margin", o.margin, "interior margin");

    auto* scan = app.add_subcommand("h1-scan", "outer dimensions for degrees -2..2 in 1/2 steps");
    add_common(scan, o);
    scan->add_option("--window", o.window, "solve window lo:hi");
    scan->add_option("--margin", o.margin, "interior margin");

    auto* cen = app.add_subcommand("center", "basis of the window center");
    add_common(cen, o);
    cen->add_option("--window", o.window, "window lo:hi");
    cen->add_option("--margin", o.margin, "interior margin")->default_val(2);
    cen->add_flag("--full", full_generators, "constrain against every window element");

    auto* perf = app.add_subcommand("perfect", "bracket span covers the interior");
    add_common(perf, o);
    perf->add_option("--window", o.window, "window lo:hi");
    perf->add_option("--margin", o.margin, "interior margin")->default_val(2);

    auto* shift = app.add_subcommand("shift-iso", "even-shift isomorphism onto (a+k, b)");
    add_common(shift, o);
    shift->add_option("--k", shift_k, "even shift")->default_val(2);
    shift->add_option("--window", o.window, "window lo:hi");

    auto* aut = app.add_subcommand("aut", "automorphism construction and verification");
    aut->require_subcommand(1);
    auto add_aut_params = [&](CLI::App* c, AutParams& p, const std::string& suffix) {
        c->add_option("--eps" + suffix, p.eps, "+1 or -1");
        c->add_option("--alpha" + suffix, p.alpha, "nonzero rational");
        c->add_option("--mu" + suffix, p.mu, "nonzero rational");
        c->add_option("--s" + suffix, p.s, "square-root witness for eps*alpha*mu");
        c->add_option("--c" + suffix, p.c, "rational");
        c->add_option("--d" + suffix, p.d, "rational");
        c->add_option("--e" + suffix, p.e, "rational (a=1, b=1 family)");
        c->add_option("--t" + suffix, p.t, "square-root witness (a=1 exotic families)");
    };
    auto* autb = aut->add_subcommand("build", "build the window matrix of a family member");
    add_common(autb, o);
    autb->add_option("--variant", variant, "generic | flip0 | shift1");
    autb->add_option("--window", o.window, "domain window lo:hi");
    add_aut_params(autb, ap1, "");
    auto* autv = aut->add_subcommand("verify", "build + homomorphism and ideal checks");
    add_common(autv, o);
    autv->add_option("--variant", variant, "generic | flip0 | shift1");
    autv->add_option("--window", o.window, "domain window lo:hi");
    add_aut_params(autv, ap1, "");
    auto* autc = aut->add_subcommand("compose", "closed-form composition law vs matrices");
    add_common(autc, o);
    autc->add_option("--variant", variant, "generic | flip0 | shift1");
    autc->add_option("--window", o.window, "domain window lo:hi");
    add_aut_params(autc, ap1, "1");
    add_aut_params(autc, ap2, "2");
    auto* autk = aut->add_subcommand("commutator", "inner commutator relation");
    add_common(autk, o);
    autk->add_option("--alpha", alpha_s, "coefficient of ad Y(j+1/2)");
    autk->add_option("--beta", beta_s, "coefficient of ad Y(i+1/2)");
    autk->add_option("--i", idx_i, "integer i");
    autk->add_option("--j", idx_j, "integer j");
    autk->add_option("--window", o.window, "window lo:hi")->default_val("-12:12");
    autk->add_option("--margin", o.margin, "interior margin")->default_val(4);

    auto* sp = app.add_subcommand("spec", "parse and print algebra definitions");
    sp->require_subcommand(1);
    auto* spp = sp->add_subcommand("parse", "parse and validate");
    add_common(spp, o, false);
    auto* spr = sp->add_subcommand("print", "canonical source");
    add_common(spr, o, false);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed_ms = [&] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    };

    try {
        if (jac->parsed()) {
            AlgebraSpec spec = load_spec(o);
            auto sym = jacobi_symbolic(spec);
            json res = json::object();
            json symj = json::object();
            symj["pass"] = sym.pass;
            json fails = json::array();
            for (auto& f : sym.failures) {
                json fj = json::object();
                fj["families"] = json::array({spec.families[f.families[0]].name,
                                              spec.families[f.families[1]].name,
                                              spec.families[f.families[2]].name});
                fj["target"] = spec.families[f.target_family].name;
                fj["residual"] = f.residual.str();
                fails.push_back(fj);
            }
            symj["failures"] = fails;
            res["symbolic"] = symj;
            bool pass = sym.pass;
            std::ostringstream human;
            human << "jacobi symbolic: " << (sym.pass ? "pass" : "FAIL") << "\n";
            bool numeric = with_window || (!symbolic_only && !o.a.empty());
            if (numeric) {
                AlgebraInstance inst = load_instance(o);
                auto win = parse_window(o.window);
                auto rep = jacobi_window(inst, win);
                json wj = json::object();
                wj["pass"] = rep.pass;
                wj["triples_checked"] = rep.triples_checked;
                res["window"] = wj;
                pass = pass && rep.pass;
                human << "jacobi window " << win.str() << ": " << (rep.pass ? "pass" : "FAIL")
                      << " (" << rep.triples_checked << " triples)\n";
            }
            human << "elapsed: " << elapsed_ms() << " ms\n";
            json params = o.a.empty() ? json() : json{{"a", o.a}, {"b", o.b}};
            return emit(o, make_report("jacobi", params, o.window, std::nullopt, res),
                        human.str(), pass, out, err);
        }

        if (br->parsed()) {
            AlgebraInstance inst = load_instance(o);
            auto [x, y] = parse_bracket_expr(inst, element_expr);
            Element v = inst.bracket(x, y);
            json res = json::object();
            res["input"] = element_expr;
            res["value"] = v.str(inst.spec());
            std::ostringstream human;
            human << element_expr << " = " << v.str(inst.spec()) << "\n";
            return emit(o, make_report("bracket", params_json(inst.params()), std::nullopt,
                                       std::nullopt, res),
                        human.str(), true, out, err);
        }

        if (h1cmd->parsed()) {
            AlgebraInstance inst = load_instance(o);
            auto win = parse_window(o.window);
            auto rep = h1_component(inst, HalfInt::parse(degree_s), win, o.margin);
            std::ostringstream human;
            human << "h1 degree " << rep.degree.str() << " at " << params_str(inst)
                  << ": outer_dim " << rep.outer_dim << " (solutions " << rep.solution_dim
                  << ", inner " << rep.inner_dim << ")\n"
                  << "elapsed: " << elapsed_ms() << " ms\n";
            return emit(o, make_report("h1", params_json(inst.params()), win.str(), o.margin,
                                       h1_json(inst.spec(), rep)),
                        human.str(), true, out, err);
        }

        if (scan->parsed()) {
            AlgebraInstance inst = load_instance(o);
            auto win = parse_window(o.window);
            json degrees = json::array();
            std::ostringstream human;
            human << "h1 scan at " << params_str(inst) << ", window " << win.str()
                  << ", margin " << o.margin << ":\n";
            for (std::int64_t d2 = -4; d2 <= 4; ++d2) {
                auto rep = h1_component(inst, HalfInt::of_doubled(d2), win, o.margin);
                json dj = json::object();
                dj["degree"] = rep.degree.str();
                dj["outer_dim"] = rep.outer_dim;
                dj["inner_dim"] = rep.inner_dim;
                dj["solution_dim"] = rep.solution_dim;
                degrees.push_back(dj);
                human << "  degree " << rep.degree.str() << ": outer_dim " << rep.outer_dim
                      << "\n";
            }
            human << "elapsed: " << elapsed_ms() << " ms\n";
            json res = json::object();
            res["degrees"] = degrees;
            return emit(o, make_report("h1-scan", params_json(inst.params()), win.str(),
                                       o.margin, res),
                        human.str(), true, out, err);
        }

        if (cen->parsed()) {
            AlgebraInstance inst = load_instance(o);
            auto win = parse_window(o.window);
            auto rep = center(inst, win, o.margin, full_generators);
            json res = json::object();
            json basis = json::array();
            for (auto& e : rep.basis) basis.push_back(e.str(inst.spec()));
            res["dimension"] = rep.basis.size();
            res["basis"] = basis;
            res["interior_window"] = rep.interior.str();
            std::ostringstream human;
            human << "center at " << params_str(inst) << ": dimension "
                  << rep.basis.size();
            for (auto& e : rep.basis) human << ", " << e.str(inst.spec());
            human << "\n";
            return emit(o, make_report("center", params_json(inst.params()), win.str(),
                                       o.margin, res),
                        human.str(), true, out, err);
        }

        if (perf->parsed()) {
            AlgebraInstance inst = load_instance(o);
            auto win = parse_window(o.window);
            auto rep = perfectness_check(inst, win, o.margin);
            json res = json::object();
            res["pass"] = rep.pass;
            json unc = json::array();
            for (auto& u : rep.uncovered) unc.push_back(basis_str(inst.spec(), u));
            res["uncovered"] = unc;
            std::ostringstream human;
            human << "perfectness at " << params_str(inst) << ": "
                  << (rep.pass ? "pass" : "FAIL");
            for (auto& u : rep.uncovered) human << " uncovered " << basis_str(inst.spec(), u);
            human << "\n";
            return emit(o, make_report("perfect", params_json(inst.params()), win.str(),
                                       o.margin, res),
                        human.str(), rep.pass, out, err);
        }

        if (shift->parsed()) {
            AlgebraInstance inst = load_instance(o);
            auto win = parse_window(o.window);
            auto [sigma, rep] = shift_isomorphism(inst, shift_k, win);
            json res = json::object();
            res["k"] = rep.k;
            res["pass"] = rep.pass;
            res["checked_pairs"] = rep.checked_pairs;
            res["target_params"] = params_json(rep.target_params);
            std::ostringstream human;
            human << "shift isomorphism k=" << rep.k << " from " << params_str(inst)
                  << ": " << (rep.pass ? "pass" : "FAIL") << " (" << rep.checked_pairs
                  << " pairs)\n";
            return emit(o, make_report("shift-iso", params_json(rep.source_params), win.str(),
                                       std::nullopt, res),
                        human.str(), rep.pass, out, err);
        }

        auto parse_aut_spec = [&](const AutParams& p) -> AutomorphismSpec {
            if (variant == "generic")
                return GenericScale{Rational::parse(p.alpha), Rational::parse(p.mu),
                                    Rational::parse(p.s)};
            if (variant == "flip0")
                return FlipScale0b{std::stoi(p.eps), Rational::parse(p.alpha),
                                   Rational::parse(p.mu), Rational::parse(p.s),
                                   Rational::parse(p.c), Rational::parse(p.d)};
            if (variant == "shift1")
                return Shift1b{std::stoi(p.eps),      Rational::parse(p.alpha),
                               Rational::parse(p.mu), Rational::parse(p.s),
                               Rational::parse(p.c),  Rational::parse(p.d),
                               Rational::parse(p.e),  Rational::parse(p.t)};
            throw std::invalid_argument("unknown variant '" + variant +
                                        "' (expected generic, flip0 or shift1)");
        };
        auto aut_spec_json = [&](const AutomorphismSpec& s) {
            json j = json::object();
            j["variant"] = variant_name(s);
            if (auto* g = std::get_if<GenericScale>(&s)) {
                j["alpha"] = g->alpha.str();
                j["mu"] = g->mu.str();
                j["s"] = g->s.str();
            } else if (auto* f = std::get_if<FlipScale0b>(&s)) {
                j["eps"] = f->eps;
                j["alpha"] = f->alpha.str();
                j["mu"] = f->mu.str();
                j["s"] = f->s.str();
                j["c"] = f->c.str();
                j["d"] = f->d.str();
            } else {
                const auto& h = std::get<Shift1b>(s);
                j["eps"] = h.eps;
                j["alpha"] = h.alpha.str();
                j["mu"] = h.mu.str();
                j["s"] = h.s.str();
                j["c"] = h.c.str();
                j["d"] = h.d.str();
                j["e"] = h.e.str();
                j["t"] = h.t.str();
            }
            return j;
        };

        if (autb->parsed() || autv->parsed()) {
            AlgebraInstance inst = load_instance(o);
            auto win = parse_window(o.window);
            AutomorphismSpec aspec = parse_aut_spec(ap1);
            WindowMap m = build_automorphism(inst, aspec, win);
            json res = json::object();
            res["spec"] = aut_spec_json(aspec);
            res["domain"] = m.domain.str();
            res["codomain"] = m.codomain.str();
            bool pass = true;
            std::ostringstream human;
            if (autv->parsed()) {
                auto hom = check_homomorphism(inst, m);
                auto idl = ideal_preservation_check(inst, m);
                json hj = json::object();
                hj["pass"] = hom.pass();
                hj["checked_pairs"] = hom.checked_pairs;
                hj["violations"] = hom.violation_count;
                hj["injective"] = hom.injective;
                res["homomorphism"] = hj;
                json ij = json::object();
                ij["pass"] = idl.pass;
                res["ideal_preservation"] = ij;
                pass = hom.pass() && idl.pass;
                human << "aut verify " << variant << ": homomorphism "
                      << (hom.pass() ? "pass" : "FAIL") << " (" << hom.checked_pairs
                      << " pairs), ideal " << (idl.pass ? "pass" : "FAIL") << "\n";
            } else {
                json images = json::object();
                for (std::size_t c = 0; c < m.domain_basis.size(); ++c)
                    images[basis_str(inst.spec(), m.domain_basis[c])] =
                        m.column_element(c).str(inst.spec());
                res["images"] = images;
                human << "aut build " << variant << ": " << m.domain.str() << " -> "
                      << m.codomain.str() << "\n";
            }
            return emit(o, make_report(autv->parsed() ? "aut-verify" : "aut-build",
                                       params_json(inst.params()), win.str(), std::nullopt,
                                       res),
                        human.str(), pass, out, err);
        }

        if (autc->parsed()) {
            AlgebraInstance inst = load_instance(o);
            auto win = parse_window(o.window);
            auto rep = composition_law_check(inst, parse_aut_spec(ap1), parse_aut_spec(ap2),
                                             win);
            json res = json::object();
            res["pass"] = rep.pass;
            res["composed"] = aut_spec_json(rep.composed);
            res["mismatched_columns"] = rep.mismatched_columns;
            std::ostringstream human;
            human << "aut compose " << variant << ": " << (rep.pass ? "pass" : "FAIL") << "\n";
            return emit(o, make_report("aut-compose", params_json(inst.params()), win.str(),
                                       std::nullopt, res),
                        human.str(), rep.pass, out, err);
        }

        if (autk->parsed()) {
            AlgebraInstance inst = load_instance(o);
            auto win = parse_window(o.window);
            auto rep = commutator_relation_check(inst, Rational::parse(alpha_s),
                                                 Rational::parse(beta_s), idx_i, idx_j, win,
                                                 o.margin);
            json res = json::object();
            res["gamma"] = rep.gamma.str();
            res["pass"] = rep.pass;
            res["compared_columns"] = rep.compared_columns;
            std::ostringstream human;
            human << "commutator relation (alpha=" << alpha_s << ", beta=" << beta_s
                  << ", i=" << idx_i << ", j=" << idx_j << "): gamma = " << rep.gamma.str()
                  << ", " << (rep.pass ? "pass" : "FAIL") << "\n";
            return emit(o, make_report("aut-commutator", params_json(inst.params()), win.str(),
                                       o.margin, res),
                        human.str(), rep.pass, out, err);
        }

        if (spp->parsed() || spr->parsed()) {
            AlgebraSpec spec = load_spec(o);
            json res = json::object();
            std::size_t zero_rules = 0;
            for (auto& r : spec.rules) zero_rules += r.is_zero() ? 1 : 0;
            res["algebra"] = spec.name;
            res["parameters"] = spec.parameters;
            res["families"] = spec.families.size();
            res["rules"] = spec.rules.size();
            res["zero_rules"] = zero_rules;
            std::ostringstream human;
            if (spr->parsed()) {
                res["source"] = print_spec(spec);
                human << print_spec(spec);
            } else {
                human << "parsed algebra '" << spec.name << "': " << spec.families.size()
                      << " families, " << spec.rules.size() << " rules (" << zero_rules
                      << " zero)\n";
            }
            return emit(o, make_report(spr->parsed() ? "spec-print" : "spec-parse", json(),
                                       std::nullopt, std::nullopt, res),
                        human.str(), true, out, err);
        }
    } catch (const std::exception& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

}  // namespace wgab

#endif
