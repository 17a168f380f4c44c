#include "doctest.h"

#include <algorithm>
#include <random>

#include "wlax/series_matrix.hpp"
#include "wlax/uea.hpp"

using namespace wlax;

namespace {

using QSeries = LaurentSeries<Scalar>;
using QMatrix = SeriesMatrix<QSeries>;

QSeries poly(std::initializer_list<std::pair<int, long>> t, int trunc = kDefaultTrunc)
{
    QSeries::Terms terms;
    for (auto [k, c] : t)
        terms.emplace(k, Scalar(c));
    return QSeries(std::move(terms), trunc);
}

QMatrix scalar_matrix(const std::vector<std::vector<long>>& rows)
{
    QMatrix m(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j)
            m(i, j) = QSeries::constant(Scalar(rows[i][j]));
    return m;
}

template <class S>
bool agree(const S& a, const S& b, int order)
{
    if (a.prec() > order || b.prec() > order)
        return false;
    int top = std::max(a.top_bound(), b.top_bound());
    for (int k = order; k <= top; ++k)
        if (!(a.coeff(k) == b.coeff(k)))
            return false;
    return true;
}

} // namespace

TEST_CASE("scalar quasideterminant of a 2x2 matrix")
{
    QMatrix m = scalar_matrix({{1, 2}, {3, 4}});
    // 1 - 2 * 4^{-1} * 3 = -1/2
    auto q1 = quasideterminant(m, {0}, {0}, -4);
    auto q2 = quasidet_explicit(m, {0}, {0}, -4);
    CHECK(q1(0, 0).coeff(0) == Scalar(-1) / 2);
    CHECK(q1 == q2);
    // |M|_{1,2}: 2 - 1 * 3^{-1} * 4 = 2/3
    auto q3 = quasidet_explicit(m, {0}, {1}, -4);
    CHECK(q3(0, 0).coeff(0) == Scalar(2) / 3);
    CHECK(quasideterminant(m, {0}, {1}, -4) == q3);
}

TEST_CASE("series inverse of z - a")
{
    QSeries s = poly({{1, 1}, {0, -2}});
    QSeries inv = s.inverse(-6);
    // (z - 2)^{-1} = sum_{k>=0} 2^k z^{-k-1}
    for (int k = 0; k < 6; ++k)
        CHECK(inv.coeff(-k - 1) == Scalar(1L << k));
    CHECK(inv.prec() == -6);
    QSeries one = (s * inv).truncated(-5);
    CHECK(one.coeff(0) == 1);
    for (int k = -5; k < 0; ++k)
        CHECK(one.coeff(k) == 0);
}

TEST_CASE("z id plus nilpotent has a finite inverse")
{
    QMatrix m(2, 2);
    m(0, 0) = poly({{1, 1}});
    m(1, 1) = poly({{1, 1}});
    m(1, 0) = poly({{0, 1}});
    QMatrix inv = m.inverse(-6);
    CHECK(inv(0, 0) == poly({{-1, 1}}, -6).with_trunc(-6));
    CHECK(inv(1, 0).coeff(-2) == -1);
    CHECK(inv(0, 1).known_zero());
    // quasideterminant over the full space is the matrix itself
    QMatrix q = quasideterminant(m, {0, 1}, {0, 1}, -6);
    CHECK(q(0, 0).coeff(1) == 1);
    CHECK(q(1, 0).coeff(0) == 1);
    CHECK(q(0, 1).known_zero());
}

TEST_CASE("block triangular quasideterminant")
{
    // [[a, b], [0, d]] : |M|_{0,0} = a - b d^{-1} 0 = a
    QMatrix m(2, 2);
    m(0, 0) = poly({{1, 1}, {0, 3}});
    m(0, 1) = poly({{0, 5}});
    m(1, 1) = poly({{1, 1}});
    auto q = quasidet_explicit(m, {0}, {0}, -6);
    CHECK(q(0, 0) == m(0, 0));
    auto qd = quasideterminant(m, {0}, {0}, -6);
    CHECK(agree(qd(0, 0), m(0, 0), -4));
}

TEST_CASE("random scalar 3x3: definition agrees with the explicit formula")
{
    std::mt19937 rng(11);
    std::uniform_int_distribution<long> dist(-4, 4);
    int checked = 0;
    while (checked < 100) {
        std::vector<std::vector<long>> rows(3, std::vector<long>(3));
        for (auto& r : rows)
            for (auto& x : r)
                x = dist(rng);
        QMatrix m = scalar_matrix(rows);
        for (std::size_t u = 0; u < 3; ++u)
            for (std::size_t w = 0; w < 3; ++w) {
                try {
                    auto a = quasideterminant(m, {u}, {w}, 0);
                    auto b = quasidet_explicit(m, {u}, {w}, 0);
                    CHECK(a == b);
                    ++checked;
                } catch (const ComputationError&) {
                }
            }
    }
}

TEST_CASE("two-sided inverse over U(gl1) and U(gl2)")
{
    auto gl1 = build_algebra(AlgebraKind::gl, 1);
    auto env1 = std::make_shared<Enveloping>(gl1);
    using USeries = LaurentSeries<PBWPoly>;
    USeries::Terms t;
    t.emplace(1, PBWPoly(1));
    t.emplace(0, PBWPoly::generator(env1, 0));
    USeries a(t, -8);
    USeries inv = a.inverse(-8);
    USeries left = (inv * a).truncated(-6), right = (a * inv).truncated(-6);
    USeries one = USeries::constant(PBWPoly(1));
    CHECK(agree(left, one, -6));
    CHECK(agree(right, one, -6));

    auto gl2 = build_algebra(AlgebraKind::gl, 2);
    auto env2 = std::make_shared<Enveloping>(gl2);
    SeriesMatrix<USeries> m(2, 2, -8);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            USeries::Terms e;
            if (i == j)
                e.emplace(1, PBWPoly(1));
            e.emplace(0, PBWPoly::generator(env2, i * 2 + j));
            m(i, j) = USeries(e, -8);
        }
    auto mi = m.inverse(-8);
    auto prod = mi * m;
    auto prod2 = m * mi;
    auto id = SeriesMatrix<USeries>::identity(2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(agree(prod(i, j), id(i, j), -5));
            CHECK(agree(prod2(i, j), id(i, j), -5));
        }
}

TEST_CASE("non-invertible input is reported")
{
    QMatrix m = scalar_matrix({{1, 2}, {2, 4}});
    CHECK_THROWS_AS(m.inverse(-4), ComputationError);
    CHECK_THROWS_AS(quasideterminant(m, {0}, {0, 1}, -4), InvalidArgument);
}

TEST_CASE("deepening reaches the requested order")
{
    QSeries s = poly({{2, 1}, {0, -1}});
    QMatrix m(1, 1);
    m(0, 0) = s;
    auto r = with_precision(-7, [&](int floor) { return m.inverse(floor); });
    CHECK(r.precision() <= -7);
    CHECK(r(0, 0).coeff(-2) == 1);
    CHECK(r(0, 0).coeff(-4) == 1);
    CHECK(r(0, 0).coeff(-3) == 0);
    // hereditary: a deeper computation agrees on the common range
    auto deep = with_precision(-11, [&](int floor) { return m.inverse(floor); });
    CHECK(deep.truncated(-7) == r);
}
