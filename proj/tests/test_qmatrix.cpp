#include <catch2/catch_amalgamated.hpp>

#include <wgab/qmatrix.hpp>

#include <random>

using namespace wgab;

namespace {
QMatrix from_rows(const std::vector<std::vector<long>>& rows) {
    QMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m.at(r, c) = Rational(rows[r][c]);
    return m;
}
}  // namespace

TEST_CASE("nullspace basics") {
    {
        QMatrix z(1, 1);
        auto ns = nullspace(z);
        REQUIRE(ns.size() == 1);
        CHECK(ns[0][0] == Rational(1));
    }
    CHECK(nullspace(QMatrix::identity(3)).empty());
    {
        auto a = from_rows({{1, 1}, {2, 2}});
        auto ns = nullspace(a);
        REQUIRE(ns.size() == 1);
        // proportional to [1, -1]
        CHECK(ns[0][0] * Rational(-1) == ns[0][1]);
        for (auto& x : a.apply(ns[0])) CHECK(x.is_zero());
    }
}

TEST_CASE("solve_linear") {
    {
        auto id = QMatrix::identity(3);
        std::vector<Rational> b{Rational(1, 2), Rational(-3), Rational(7)};
        auto x = solve_linear(id, b);
        REQUIRE(x);
        CHECK(*x == b);
    }
    {
        auto a = from_rows({{1, 1}});
        auto x = solve_linear(a, {Rational(2)});
        REQUIRE(x);
        CHECK((*x)[0] + (*x)[1] == Rational(2));
    }
    {
        auto a = from_rows({{1}, {1}});
        CHECK(!solve_linear(a, {Rational(0), Rational(1)}));
    }
}

TEST_CASE("rank-nullity and rref idempotence on random matrices") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<long> e(-4, 4);
    std::uniform_int_distribution<std::size_t> dim(1, 7);
    for (int iter = 0; iter < 60; ++iter) {
        QMatrix a(dim(rng), dim(rng));
        for (std::size_t r = 0; r < a.rows(); ++r)
            for (std::size_t c = 0; c < a.cols(); ++c) a.at(r, c) = Rational(e(rng));
        auto rr = rref(a);
        CHECK(rr.rank + nullspace(a).size() == a.cols());
        auto rr2 = rref(rr.reduced);
        CHECK(rr2.reduced == rr.reduced);
        for (auto& v : nullspace(a))
            for (auto& x : a.apply(v)) CHECK(x.is_zero());
    }
}

TEST_CASE("deterministic output") {
    auto a = from_rows({{2, 4, 6}, {1, 2, 3}, {0, 1, 5}});
    auto n1 = nullspace(a);
    auto n2 = nullspace(a);
    CHECK(n1 == n2);
    CHECK(rref(a).reduced == rref(a).reduced);
}

TEST_CASE("matrix product shape check") {
    CHECK_THROWS_AS(QMatrix(2, 3) * QMatrix(2, 3), std::invalid_argument);
}
