#include <catch2/catch_amalgamated.hpp>

#include <wgab/algebra.hpp>
#include <wgab/dsl.hpp>

#include <random>

using namespace wgab;

namespace {
AlgebraInstance wgab_at(const char* a, const char* b) {
    return instantiate(preset("wgab"), {{"a", Rational::parse(a)}, {"b", Rational::parse(b)}});
}
Element basis_of(const AlgebraInstance& inst, const char* fam, const char* idx) {
    return Element::basis(inst.make_basis(fam, HalfInt::parse(idx)));
}
}  // namespace

TEST_CASE("instantiate validates parameters") {
    auto spec = preset("wgab");
    CHECK_THROWS_AS(instantiate(spec, {{"a", Rational(0)}}), std::invalid_argument);
    CHECK_THROWS_AS(instantiate(spec, {{"a", Rational(0)}, {"b", Rational(0)}, {"c", Rational(0)}}),
                    std::invalid_argument);
    CHECK_NOTHROW(instantiate(preset("witt"), {}));

    // the two-family algebra instantiates away from the integers too
    auto wab = instantiate(preset("wab"), {{"a", Rational(1, 2)}, {"b", Rational(1, 2)}});
    CHECK(wab.bracket(Element::basis(wab.make_basis("L", HalfInt::of_int(1))),
                      Element::basis(wab.make_basis("I", HalfInt::of_int(0)))) ==
          Element::basis(wab.make_basis("I", HalfInt::of_int(1))).scaled(Rational(-1)));
}

TEST_CASE("bracket on basis symbols") {
    auto inst = wgab_at("0", "0");
    CHECK(inst.bracket(basis_of(inst, "L", "2"), basis_of(inst, "L", "3")) ==
          basis_of(inst, "L", "5").scaled(Rational(-1)));
    CHECK(inst.bracket(basis_of(inst, "Y", "3/2"), basis_of(inst, "Y", "1/2")) ==
          basis_of(inst, "I", "2"));
    CHECK(inst.bracket(basis_of(inst, "I", "3"), basis_of(inst, "Y", "5/2")).is_zero());
    CHECK(inst.bracket(basis_of(inst, "L", "0"), basis_of(inst, "I", "0")).is_zero());

    auto inst2 = wgab_at("1", "-1");
    // [L_m, I_n] = -(n + 1 - m) I_{m+n}
    CHECK(inst2.bracket(basis_of(inst2, "L", "2"), basis_of(inst2, "I", "3")) ==
          basis_of(inst2, "I", "5").scaled(Rational(-2)));
}

TEST_CASE("basis index validation") {
    auto inst = wgab_at("0", "0");
    CHECK_THROWS_AS(inst.make_basis("Y", HalfInt::of_int(1)), std::invalid_argument);
    CHECK_THROWS_AS(inst.make_basis("L", HalfInt::of_doubled(1)), std::invalid_argument);
    CHECK_THROWS_AS(inst.make_basis("Q", HalfInt::of_int(0)), std::invalid_argument);
}

TEST_CASE("window basis is family-major, index-ascending") {
    auto spec = preset("wgab");
    auto basis = window_basis(spec, Window(HalfInt::of_int(-1), HalfInt::of_int(1)));
    std::vector<std::string> names;
    for (auto& b : basis) names.push_back(basis_str(spec, b));
    CHECK(names == std::vector<std::string>{"L(-1)", "L(0)", "L(1)", "I(-1)", "I(0)", "I(1)",
                                            "Y(-1/2)", "Y(1/2)"});
}

TEST_CASE("element printing and homogeneity") {
    auto inst = wgab_at("0", "0");
    Element e = basis_of(inst, "L", "2").scaled(Rational(2)) - basis_of(inst, "Y", "5/2");
    CHECK(e.str(inst.spec()) == "2*L(2) - Y(5/2)");
    CHECK(!e.is_homogeneous());
    CHECK(Element().is_homogeneous());
    Element h = basis_of(inst, "L", "2") + basis_of(inst, "I", "2");
    REQUIRE(h.homogeneous_degree());
    CHECK(*h.homogeneous_degree() == HalfInt::of_int(2));
}

TEST_CASE("ad matrices") {
    // ad I0 at (1/2, 0) sends L_m to 1/2 I_m
    auto inst = wgab_at("1/2", "0");
    Window win = Window::of_ints(-4, 4);
    auto m = ad_matrix(inst, basis_of(inst, "I", "0"), win);
    CHECK(m.codomain == win);  // degree-0 generator
    for (int k = -4; k <= 4; ++k) {
        Element img = m.apply_basis(inst.make_basis("L", HalfInt::of_int(k)));
        CHECK(img == basis_of(inst, "I", std::to_string(k).c_str()).scaled(Rational(1, 2)));
    }
    // ad L0 at (0,0) is -k on Y(k) columns
    auto inst2 = wgab_at("0", "0");
    auto m2 = ad_matrix(inst2, basis_of(inst2, "L", "0"), win);
    Element img = m2.apply_basis(inst2.make_basis("Y", HalfInt::of_doubled(3)));
    CHECK(img == basis_of(inst2, "Y", "3/2").scaled(Rational(-3, 2)));

    // ad of the zero element is the zero matrix
    auto mz = ad_matrix(inst, Element(), win);
    CHECK(mz.mat.is_zero());

    // strict endomorphism mode rejects out-of-window images
    CHECK_THROWS_AS(ad_endo(inst, basis_of(inst, "I", "2"), win, TruncationPolicy::strict),
                    std::invalid_argument);
    auto mt = ad_endo(inst, basis_of(inst, "I", "2"), win, TruncationPolicy::truncate);
    CHECK(mt.column_approx(inst.make_basis("L", HalfInt::of_int(4))));
    CHECK(!mt.column_approx(inst.make_basis("L", HalfInt::of_int(0))));

    CHECK_THROWS_AS(ad_matrix(inst, basis_of(inst, "L", "1") + basis_of(inst, "I", "0"), win),
                    std::invalid_argument);
}

TEST_CASE("bracket properties at random parameters") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> num(-8, 8), den(1, 5);
    for (int iter = 0; iter < 3; ++iter) {
        auto inst = instantiate(preset("wgab"), {{"a", Rational(num(rng), den(rng))},
                                                 {"b", Rational(num(rng), den(rng))}});
        auto basis = window_basis(inst.spec(), Window::of_ints(-3, 3));
        std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
        auto rnd_elem = [&] {
            Element e;
            for (int t = 0; t < 3; ++t)
                e.add(basis[pick(rng)], Rational(num(rng), den(rng)));
            return e;
        };
        for (int t = 0; t < 10; ++t) {
            Element x = rnd_elem(), y = rnd_elem(), z = rnd_elem();
            // antisymmetry and bilinearity
            CHECK(inst.bracket(x, y) == -inst.bracket(y, x));
            CHECK(inst.bracket(x + z, y) == inst.bracket(x, y) + inst.bracket(z, y));
            // ad is a derivation
            CHECK(inst.bracket(z, inst.bracket(x, y)) ==
                  inst.bracket(inst.bracket(z, x), y) + inst.bracket(x, inst.bracket(z, y)));
        }
        // grading
        for (auto& x : basis)
            for (auto& y : basis) {
                Element br = inst.bracket(Element::basis(x), Element::basis(y));
                if (br.is_zero()) continue;
                REQUIRE(br.homogeneous_degree());
                CHECK(*br.homogeneous_degree() == x.degree() + y.degree());
            }
    }
}

TEST_CASE("ad nilpotency orders") {
    auto inst = wgab_at("2/3", "5");
    auto basis = window_basis(inst.spec(), Window::of_ints(-3, 3));
    const Element i1 = basis_of(inst, "I", "1");
    const Element y1 = basis_of(inst, "Y", "1/2");
    for (auto& x : basis) {
        Element ex = Element::basis(x);
        CHECK(inst.bracket(i1, inst.bracket(i1, ex)).is_zero());
        CHECK(inst.bracket(y1, inst.bracket(y1, inst.bracket(y1, ex))).is_zero());
    }
}

TEST_CASE("window jacobi check") {
    auto witt = instantiate(preset("witt"), {});
    CHECK(jacobi_window(witt, Window::of_ints(-4, 4)).pass);

    auto inst = wgab_at("2/3", "5");
    CHECK(jacobi_window(inst, Window::of_ints(-6, 6)).pass);

    // corrupted structure constants are caught with the offending triple
    auto bad_spec = preset("wgab");
    for (auto& r : bad_spec.rules)
        if (r.left == bad_spec.family_index("L") && r.right == bad_spec.family_index("Y"))
            r.coefficient = Poly::var(VarPool::M) - Poly::var(VarPool::N);
    auto bad = instantiate(bad_spec, {{"a", Rational(0)}, {"b", Rational(0)}});
    auto rep = jacobi_window(bad, Window::of_ints(-3, 3));
    CHECK(!rep.pass);
    CHECK(!rep.violations.empty());
}
