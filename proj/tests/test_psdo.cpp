#include "doctest.h"

#include <random>

#include "wlax/psdo.hpp"

using namespace wlax;

namespace {

PsiDO sym(std::initializer_list<std::pair<int, DiffPoly>> terms, int trunc = kDefaultTrunc)
{
    PsiDO::Terms t;
    for (const auto& [k, c] : terms)
        t.emplace(k, c);
    return PsiDO(std::move(t), trunc);
}

PsiDO random_op(std::mt19937& rng, const DiffPoly& u, int top, int trunc)
{
    std::uniform_int_distribution<int> coef(-3, 3), ord(0, 2);
    PsiDO::Terms t;
    for (int k = top; k >= top - 3; --k) {
        DiffPoly c = DiffPoly(coef(rng)) + u.derivative(ord(rng)) * coef(rng);
        if (!c.is_zero())
            t.emplace(k, c);
    }
    return PsiDO(std::move(t), trunc);
}

bool agree(const PsiDO& a, const PsiDO& b, int from)
{
    if (a.prec() > from || b.prec() > from)
        return false;
    for (int k = std::max(a.top_bound(), b.top_bound()); k >= from; --k)
        if (!(a.coeff(k) == b.coeff(k)))
            return false;
    return true;
}

} // namespace

TEST_CASE("composition of symbols")
{
    NamesPtr names = make_names({"u"});
    DiffPoly u = DiffPoly::variable(names, 0);
    PsiDO d = PsiDO::monomial(DiffPoly(1), 1), dinv = PsiDO::monomial(DiffPoly(1), -1);
    PsiDO cu = PsiDO::constant(u);
    CHECK(compose(d, cu) == sym({{1, u}, {0, u.derivative()}}));
    PsiDO di = compose(dinv, cu);
    CHECK(di.coeff(-1) == u);
    CHECK(di.coeff(-2) == -u.derivative());
    CHECK(di.coeff(-3) == u.derivative(2));
    CHECK(di.coeff(-8) == -u.derivative(7));
    CHECK(compose(d, dinv) == PsiDO::constant(DiffPoly(1)));
    CHECK(compose(d, cu).to_string() == "(u)*∂ + (u')");
}

TEST_CASE("formal adjoint")
{
    NamesPtr names = make_names({"u"});
    DiffPoly u = DiffPoly::variable(names, 0);
    CHECK(adjoint(sym({{1, u}})) == sym({{1, -u}, {0, -u.derivative()}}));
    CHECK(adjoint(sym({{2, DiffPoly(1)}, {0, u}})) == sym({{2, DiffPoly(1)}, {0, u}}));
    std::mt19937 rng(7);
    for (int rep = 0; rep < 10; ++rep) {
        PsiDO a = random_op(rng, u, 2, -6), b = random_op(rng, u, 1, -6);
        CHECK(agree(adjoint(compose(a, b)), compose(adjoint(b), adjoint(a)), -3));
        CHECK(agree(adjoint(adjoint(a)), a, -6));
        PsiDO c = random_op(rng, u, 0, -6);
        CHECK(agree(compose(compose(a, b), c), compose(a, compose(b, c)), -3));
    }
}

TEST_CASE("square root of the Schroedinger operator")
{
    PsiDOMatrix l = kdv_operator();
    DiffPoly u = kdv_context()->generator(0);
    PsiDO b = kth_root(l(0, 0), 2);
    CHECK(b.coeff(1) == DiffPoly(1));
    CHECK(b.coeff(0).is_zero());
    CHECK(b.coeff(-1) == u * (Scalar(1) / 2));
    CHECK(b.coeff(-2) == u.derivative() * (Scalar(-1) / 4));
    CHECK(b.coeff(-3) == (u.derivative(2) - u * u) * (Scalar(1) / 8));
    CHECK(agree(power(b, 2), l(0, 0), -7));
    CHECK_THROWS_AS(kth_root(l(0, 0), 3), InvalidArgument);
    CHECK_THROWS_AS(kth_root(sym({{2, DiffPoly(2)}}), 2), InvalidArgument);
}

TEST_CASE("residues and positive parts")
{
    PsiDOMatrix l = kdv_operator();
    DiffPoly u = kdv_context()->generator(0);
    PsiDO b = kth_root(l(0, 0), 2);
    CHECK(residue(b) == u * (Scalar(1) / 2));
    CHECK(residue(power(b, 3)) == u * u * (Scalar(3) / 8) + u.derivative(2) * (Scalar(1) / 8));
    CHECK(positive_part(b) == PsiDO::monomial(DiffPoly(1), 1));
    CHECK_THROWS_AS(residue(PsiDO(PsiDO::Terms{}, -8, 0)), ComputationError);
}

TEST_CASE("KdV hierarchy densities and flows")
{
    PsiDOMatrix l = kdv_operator();
    DiffPoly u = kdv_context()->generator(0);
    CHECK(hierarchy_density(l, 2, 0).density.is_zero());
    CHECK(hierarchy_density(l, 2, 1).density == -u);
    CHECK(hierarchy_density(l, 2, 2).density.is_zero());
    CHECK(hierarchy_density(l, 2, 3).density ==
          u * u * (Scalar(-1) / 4) + u.derivative(2) * (Scalar(-1) / 12));

    CHECK(lax_flow(l, 2, 1)(0, 0) == PsiDO::constant(u.derivative(), l.min_trunc()));
    CHECK(lax_flow(l, 2, 2)(0, 0).known_zero());
    PsiDO f3 = lax_flow(l, 2, 3)(0, 0);
    CHECK(f3.exact());
    CHECK(f3.coeff(0) == u.derivative(3) * (Scalar(1) / 4) + u * u.derivative() * (Scalar(3) / 2));
    CHECK(f3.coeff(1).is_zero());
}

TEST_CASE("KdV flows are Hamiltonian and commute")
{
    PsiDOMatrix l = kdv_operator();
    ContextPtr ctx = kdv_context();
    FlowFn br = flow_of(ctx);
    for (std::size_t n = 1; n <= 5; ++n) {
        CAPTURE(n);
        FlowReport r = check_flow_consistency(l, 2, n, br);
        CHECK(r.holds);
        if (r.first_failure)
            MESSAGE(*r.first_failure);
    }
    for (std::size_t m = 1; m <= 5; m += 2)
        for (std::size_t n = 1; n <= 5; n += 2)
            CHECK(involution_check(*ctx, hierarchy_density(l, 2, m).density, hierarchy_density(l, 2, n).density));
}

TEST_CASE("affine Lax operators")
{
    auto gl1 = build_algebra(AlgebraKind::gl, 1);
    LaxAffineOp a = lax_affine(*gl1, sl2_from_partition(*gl1, {1}));
    CHECK(a.n == 1);
    CHECK(a.op(0, 0).to_string() == "∂ + (e11)");

    auto sl2 = build_algebra(AlgebraKind::sl, 2);
    LaxAffineOp s = lax_affine(*sl2, sl2_from_partition(*sl2, {2}));
    CHECK(s.op(0, 0).to_string() == "-∂^2 + (e21 + 1/2*h1' + 1/4*h1^2)");
    CHECK(s.op(0, 0).exact());
    CHECK(s.op(0, 0).coeff(2) == DiffPoly(-1));

    auto gl2 = build_algebra(AlgebraKind::gl, 2);
    LaxAffineOp g2 = lax_affine(*gl2, sl2_from_partition(*gl2, {2}));
    CHECK(g2.op(0, 0).to_string() == "-∂^2 + (-e11 - e22)*∂ + (e21 - e22' - e11*e22)");

    auto gl3 = build_algebra(AlgebraKind::gl, 3);
    LaxAffineOp g3 = lax_affine(*gl3, sl2_from_partition(*gl3, {3}), -6);
    CHECK(g3.op(0, 0).exact());
    CHECK(g3.op(0, 0).coeff(3) == DiffPoly(1));
    CHECK(g3.op(0, 0).coeff(2).to_string() == "e11 + e22 + e33");
    LaxAffineOp g21 = lax_affine(*gl3, sl2_from_partition(*gl3, {2, 1}), -6);
    CHECK_FALSE(g21.op(0, 0).exact());
    CHECK(g21.op(0, 0).coeff(1).to_string() == "-e11 - e22 - e13*e32");
    CHECK(g21.op.precision() <= -6);
}

TEST_CASE("reduced brackets drive the Lax flows")
{
    auto sl2 = build_algebra(AlgebraKind::sl, 2);
    LaxAffineOp s = lax_affine(*sl2, sl2_from_partition(*sl2, {2}));
    PsiDOMatrix minus_l = s.op;
    minus_l(0, 0) = -minus_l(0, 0);
    FlowFn br = flow_of(s.reduction);
    for (std::size_t n = 1; n <= 3; ++n) {
        CAPTURE(n);
        FlowReport r = check_flow_consistency(minus_l, 2, n, br);
        CHECK(r.holds);
        if (r.first_failure)
            MESSAGE(*r.first_failure);
    }
}

TEST_CASE("gl2 and gl3 principal flows")
{
    for (std::size_t n : {2, 3}) {
        CAPTURE(n);
        auto gl = build_algebra(AlgebraKind::gl, n);
        LaxAffineOp a = lax_affine(*gl, sl2_from_partition(*gl, {n}));
        PsiDOMatrix l = a.op;
        if (n % 2 == 0)
            l(0, 0) = -l(0, 0);
        FlowFn br = flow_of(a.reduction);
        for (std::size_t m = 1; m <= 3; ++m) {
            CAPTURE(m);
            FlowReport r = check_flow_consistency(l, n, m, br);
            CHECK(r.holds);
            if (r.first_failure)
                MESSAGE(*r.first_failure);
        }
    }
}
