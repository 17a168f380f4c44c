#include "doctest.h"

#include "wlax/adler.hpp"

using namespace wlax;

namespace {

Matrix so3_split_form()
{
    Matrix g(3, 3);
    g(0, 2) = g(2, 0) = g(1, 1) = 1;
    return g;
}

PsiDOMatrix scalar_op(std::initializer_list<std::pair<int, DiffPoly>> terms)
{
    PsiDO::Terms t;
    for (const auto& [k, c] : terms)
        t.emplace(k, c);
    PsiDOMatrix m(1, 1);
    m(0, 0) = PsiDO(std::move(t), kDefaultTrunc);
    return m;
}

void require_holds(const CheckReport& r)
{
    if (r.first_failure)
        MESSAGE(*r.first_failure);
    CHECK(r.holds);
    CHECK(r.coefficients_checked > 0);
}

} // namespace

TEST_CASE("Adler table")
{
    auto p = adler_params_for(*build_algebra(AlgebraKind::sl, 3));
    CHECK(p.alpha == 1);
    CHECK(p.beta == 0);
    CHECK(p.gamma == Scalar(1) / 3);
    p = adler_params_for(*build_algebra(AlgebraKind::gl, 2));
    CHECK(p.gamma == 0);
    p = adler_params_for(*build_algebra(AlgebraKind::sp, 2));
    CHECK(p.alpha == Scalar(1) / 2);
    CHECK(p.beta == Scalar(1) / 2);
}

TEST_CASE("Adler identity for gl1")
{
    auto gl1 = build_algebra(AlgebraKind::gl, 1);
    LaxAffineOp a = lax_affine(*gl1, sl2_from_partition(*gl1, {1}));
    CheckReport r = check_adler(a.op, bracket_of(a.reduction), adler_params_for(*gl1));
    require_holds(r);
    CHECK(r.z_from == kDefaultTrunc);
}

TEST_CASE("constant operators")
{
    BracketFn zero = [](const DiffPoly&, const DiffPoly&) { return LambdaPoly(); };
    CHECK(check_adler(scalar_op({{0, DiffPoly(3)}}), zero, {1, 0, 0}).holds);
    // L = d alone forces {L_lambda L} = lambda
    CheckReport r = check_adler(scalar_op({{1, DiffPoly(1)}}), zero, {1, 0, 0}, -3);
    CHECK_FALSE(r.holds);
    REQUIRE(r.first_failure);
    CHECK(*r.first_failure == "entry (1,1)(1,1) z^0 w^0 λ^1: -1");
}

TEST_CASE("Adler identity for sl2 principal selects the level")
{
    auto sl2 = build_algebra(AlgebraKind::sl, 2);
    Sl2Triple t = sl2_from_partition(*sl2, {2});
    for (Scalar level : {Scalar(1), Scalar(-1), Scalar(Scalar(1) / 2), Scalar(2)}) {
        CAPTURE(to_string(level));
        if (level != 1)
            CHECK_THROWS_AS(lax_affine(*sl2, t, kDefaultTrunc, level), ComputationError);
        LaxAffineOp a = lax_affine(*sl2, t, kDefaultTrunc, level, false);
        CheckReport r = check_adler(a.op, bracket_of(a.reduction), adler_params_for(*sl2), -6);
        CHECK(r.holds == (level == 1));
    }
    LaxAffineOp a = lax_affine(*sl2, t);
    require_holds(check_adler(a.op, bracket_of(a.reduction), adler_params_for(*sl2), -6));
    CHECK_FALSE(check_adler(a.op, bracket_of(a.reduction), {1, 0, 0}, -6).holds);
}

TEST_CASE("Adler identity for the KdV operator")
{
    require_holds(check_adler(kdv_operator(), bracket_of(kdv_context()), {1, 0, Scalar(1) / 2}, -6));
}

TEST_CASE("Adler identity for gl2")
{
    auto gl2 = build_algebra(AlgebraKind::gl, 2);
    LaxAffineOp p = lax_affine(*gl2, sl2_from_partition(*gl2, {2}));
    require_holds(check_adler(p.op, bracket_of(p.reduction), adler_params_for(*gl2), -4));
    LaxAffineOp z = lax_affine(*gl2, sl2_from_partition(*gl2, {1, 1}));
    REQUIRE(z.n == 2);
    require_holds(check_adler(z.op, bracket_of(z.reduction), adler_params_for(*gl2), -3));
}

TEST_CASE("Adler identity for sl3 and gl3 principal")
{
    for (AlgebraKind kind : {AlgebraKind::sl, AlgebraKind::gl}) {
        auto alg = build_algebra(kind, 3);
        LaxAffineOp a = lax_affine(*alg, sl2_from_partition(*alg, {3}));
        require_holds(check_adler(a.op, bracket_of(a.reduction), adler_params_for(*alg), -3));
    }
}

TEST_CASE("Adler identity for split-form so3")
{
    auto so3 = build_algebra(AlgebraKind::so, 3, so3_split_form());
    Matrix e(3, 3), x(3, 3), f(3, 3);
    x(0, 0) = 1;
    x(2, 2) = -1;
    e(0, 1) = 2;
    e(1, 2) = -2;
    f(1, 0) = 1;
    f(2, 1) = -1;
    LaxAffineOp a = lax_affine(*so3, triple_from_matrices(*so3, e, x, f));
    REQUIRE(a.n == 1);
    require_holds(check_adler(a.op, bracket_of(a.reduction), adler_params_for(*so3), -3, Matrix::identity(1)));
}

TEST_CASE("Adler identity with f = 0 for so and sp")
{
    for (auto [kind, n] : {std::pair{AlgebraKind::sp, 2}, std::pair{AlgebraKind::so, 3}, std::pair{AlgebraKind::so, 4}}) {
        auto alg = build_algebra(kind, n);
        CAPTURE(n);
        Matrix zero(n, n);
        LaxAffineOp a = lax_affine(*alg, triple_from_matrices(*alg, zero, zero, zero));
        REQUIRE(alg->form());
        require_holds(check_adler(a.op, bracket_of(a.reduction), adler_params_for(*alg), -2, *alg->form()));
    }
}

TEST_CASE("Adler check preconditions")
{
    BracketFn zero = [](const DiffPoly&, const DiffPoly&) { return LambdaPoly(); };
    CHECK_THROWS_AS(check_adler(scalar_op({{-1, DiffPoly(1)}}), zero, {1, 0, 0}), InvalidArgument);
    CHECK_THROWS_AS(check_adler(scalar_op({{1, DiffPoly(1)}}), zero, {1, 1, 0}), InvalidArgument);
}
