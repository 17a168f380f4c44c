#include "wlax/psdo.hpp"

#include <algorithm>
#include <memory>
#include <string>

namespace wlax {

namespace {

Matrix invert_form(const Matrix& g)
{
    auto inv = g.inverse();
    if (!inv)
        throw InvalidArgument("form matrix is singular");
    return *inv;
}

void require_known(const PsiDO& p, int order, const char* what)
{
    if (p.prec() > order)
        throw ComputationError(std::string(what) + ": symbol known only down to ∂^" + std::to_string(p.prec()) +
                               ", need ∂^" + std::to_string(order));
}

// Lowest power of the leading monomial when L = d^top + lower terms.
int monic_top(const PsiDO& l)
{
    auto lead = l.unit_leading();
    if (!lead || lead->second != 1)
        throw InvalidArgument("operator must be monic (leading coefficient 1)");
    return lead->first;
}

} // namespace

PsiDO compose(const PsiDO& a, const PsiDO& b) { return a * b; }

PsiDOMatrix compose(const PsiDOMatrix& a, const PsiDOMatrix& b) { return a * b; }

PsiDO adjoint(const PsiDO& p)
{
    PsiDO out(p.trunc());
    for (const auto& [k, c] : p.terms()) {
        Scalar sign = (k % 2 == 0) ? 1 : -1;
        out += PsiDO::monomial(DiffPoly(sign), k, p.trunc()) * PsiDO::constant(c, p.trunc());
    }
    if (!p.exact()) {
        // (a d^k)^* only reaches d^k and below, so unknown terms stay below prec.
        out.degrade_to(p.prec());
    }
    return out;
}

PsiDOMatrix adjoint(const PsiDOMatrix& p)
{
    PsiDOMatrix out(p.cols(), p.rows(), p.min_trunc());
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j)
            out(j, i) = adjoint(p(i, j));
    return out;
}

PsiDOMatrix form_dagger(const PsiDOMatrix& p, const Matrix& form)
{
    if (p.rows() != p.cols() || form.rows() != p.rows() || form.cols() != p.cols())
        throw InvalidArgument("form size does not match the operator");
    Matrix ginv = invert_form(form);
    const std::size_t n = p.rows();
    PsiDOMatrix out(n, n, p.min_trunc());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    Scalar s = ginv(i, a) * form(b, j);
                    if (s != 0)
                        out(i, j) += p(b, a) * s;
                }
    return out;
}

PsiDO positive_part(const PsiDO& p)
{
    require_known(p, 0, "positive part");
    PsiDO::Terms t;
    for (const auto& [k, c] : p.terms())
        if (k >= 0)
            t.emplace(k, c);
    return PsiDO(std::move(t), p.trunc());
}

PsiDOMatrix positive_part(const PsiDOMatrix& p)
{
    PsiDOMatrix out(p.rows(), p.cols(), p.min_trunc());
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j)
            out(i, j) = positive_part(p(i, j));
    return out;
}

DiffPoly residue(const PsiDO& p)
{
    require_known(p, -1, "residue");
    return p.coeff(-1);
}

DiffPoly residue_trace(const PsiDOMatrix& p)
{
    if (p.rows() != p.cols())
        throw InvalidArgument("trace of a non-square operator");
    DiffPoly r;
    for (std::size_t i = 0; i < p.rows(); ++i)
        r += residue(p(i, i));
    return r;
}

PsiDO power(const PsiDO& b, std::size_t n)
{
    PsiDO r = PsiDO::constant(DiffPoly(1), b.trunc());
    for (std::size_t i = 0; i < n; ++i)
        r = r * b;
    return r;
}

PsiDO kth_root(const PsiDO& l, std::size_t k)
{
    if (k == 0)
        throw InvalidArgument("root index must be positive");
    if (k == 1)
        return l;
    const int top = monic_top(l);
    if (top % static_cast<int>(k) != 0)
        throw InvalidArgument("order " + std::to_string(top) + " is not divisible by " + std::to_string(k));
    const int m = top / static_cast<int>(k);
    const int target = l.trunc();
    // Powers of the partial root stay exact because each partial root is a
    // finite sum; the working floor keeps every needed coefficient.
    const int work = target - static_cast<int>(k - 1) * std::max(m, 0) - 2;
    PsiDO b = PsiDO::monomial(DiffPoly(1), m, work);
    const Scalar kinv = Scalar(1) / static_cast<long>(k);
    for (int j = 1; m - j >= target; ++j) {
        int p = top - j;
        if (p < l.prec())
            throw ComputationError("operator known only down to ∂^" + std::to_string(l.prec()));
        PsiDO bk = power(b, k);
        if (bk.prec() > p)
            throw ComputationError("working floor too shallow for the root");
        DiffPoly c = (l.coeff(p) - bk.coeff(p)) * kinv;
        if (!c.is_zero())
            b += PsiDO::monomial(c, m - j, work);
    }
    PsiDO out = b.with_trunc(target);
    out.degrade_to(target);
    return out;
}

PsiDOMatrix kth_root(const PsiDOMatrix& l, std::size_t k)
{
    if (k == 1)
        return l;
    if (l.rows() != 1 || l.cols() != 1)
        throw InvalidArgument("roots are implemented for 1 x 1 operators only");
    PsiDOMatrix out(1, 1, l.min_trunc());
    out(0, 0) = kth_root(l(0, 0), k);
    return out;
}

PsiDOMatrix operator_A_rho_affine(const GradingData& grading, const NamesPtr& names, int trunc)
{
    const LieAlgebra& alg = *grading.algebra;
    const std::size_t n = alg.N();
    const Matrix& p = grading.weight_basis;
    auto pinv = p.inverse();
    if (!pinv)
        throw ComputationError("weight basis is singular");
    auto conj = [&](const Matrix& m) { return *pinv * m * p; };
    Matrix f = conj(grading.triple.F);
    std::vector<std::vector<DiffPoly>> c0(n, std::vector<DiffPoly>(n));
    for (std::size_t i : grading.indices_le_half()) {
        Matrix cm = conj(alg.dual_rep(i));
        DiffPoly u = DiffPoly::variable(names, i);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (cm(a, b) != 0)
                    c0[a][b] += u * cm(a, b);
    }
    PsiDOMatrix out(n, n, trunc);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            PsiDO::Terms t;
            DiffPoly c = c0[a][b] + DiffPoly(f(a, b));
            if (!c.is_zero())
                t.emplace(0, c);
            if (a == b)
                t.emplace(1, DiffPoly(1));
            out(a, b) = PsiDO(std::move(t), trunc);
        }
    return out;
}

LaxAffineOp lax_affine(const LieAlgebra& alg, const Sl2Triple& triple, int trunc, const Scalar& level,
                       bool assert_membership, QuasidetRoute route)
{
    if (trunc > 0)
        throw InvalidArgument("truncation order must be <= 0");
    auto red = std::make_shared<const Reduction>(grading_data(alg, triple), level);
    const GradingData& gd = red->grading();
    std::vector<std::size_t> top = gd.v_grading.at(gd.half_d);
    std::vector<std::size_t> bottom = gd.v_grading.at(-gd.half_d);
    PsiDOMatrix m = operator_A_rho_affine(gd, red->context().names(), trunc);
    PsiDOMatrix l = with_precision(trunc, [&](int floor) {
        if (route == QuasidetRoute::explicit_formula)
            return quasidet_explicit(m, top, bottom, floor);
        return quasideterminant(m, top, bottom, floor);
    });
    if (assert_membership) {
        for (std::size_t i = 0; i < l.rows(); ++i)
            for (std::size_t j = 0; j < l.cols(); ++j)
                for (const auto& [pw, c] : l(i, j).terms())
                    if (auto bad = red->membership_failure(c))
                        throw ComputationError("coefficient of ∂^" + std::to_string(pw) + " in entry (" +
                                               std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                               ") is not in the classical W-algebra: fails under " + *bad);
    }
    LaxAffineOp out{l, red, trunc, bottom.size(), top, bottom, std::nullopt};
    if (alg.form()) {
        const Matrix& p = gd.weight_basis;
        Matrix g = p.transpose() * *alg.form() * p;
        Matrix h(out.n, out.n);
        for (std::size_t a = 0; a < out.n; ++a)
            for (std::size_t b = 0; b < out.n; ++b)
                h(a, b) = g(top[a], bottom[b]);
        if (h.inverse())
            out.form = h;
    }
    return out;
}

namespace {

int order_of(const PsiDOMatrix& l)
{
    int top = kExact;
    for (std::size_t i = 0; i < l.rows(); ++i)
        for (std::size_t j = 0; j < l.cols(); ++j)
            top = std::max(top, l(i, j).top_bound());
    return top;
}

// B^n known at least down to `need`, with B the k-th root of l.
PsiDOMatrix root_power(const PsiDOMatrix& l, std::size_t k, std::size_t n, int need)
{
    const int top = order_of(l);
    const int m = std::max(top / static_cast<int>(k), 0);
    const int depth = need - static_cast<int>(n > 0 ? n - 1 : 0) * m - 2;
    if (depth < l.min_trunc() && l.precision() != kExact)
        throw ComputationError("operator truncated at ∂^" + std::to_string(l.min_trunc()) + "; need ∂^" +
                               std::to_string(depth) + " for this power");
    if (l.precision() > depth)
        throw ComputationError("operator known only down to ∂^" + std::to_string(l.precision()) + "; need ∂^" +
                               std::to_string(depth) + " for this power");
    PsiDOMatrix src = l.truncated(depth);
    PsiDOMatrix b = kth_root(src, k);
    PsiDOMatrix r = PsiDOMatrix::identity(b.rows(), b.min_trunc());
    for (std::size_t i = 0; i < n; ++i)
        r = r * b;
    return r;
}

} // namespace

HierarchyDensity hierarchy_density(const PsiDOMatrix& l, std::size_t k, std::size_t n)
{
    if (n == 0)
        return {0, k, DiffPoly()};
    PsiDOMatrix bn = root_power(l, k, n, -1);
    DiffPoly d = residue_trace(bn) * Scalar(Scalar(-static_cast<long>(k)) / static_cast<long>(n));
    return {n, k, d};
}

PsiDOMatrix lax_flow(const PsiDOMatrix& l, std::size_t k, std::size_t n, const Scalar& alpha, const Scalar& beta,
                     const std::optional<Matrix>& form)
{
    PsiDOMatrix bn = root_power(l, k, n, 0);
    PsiDOMatrix p = positive_part(bn);
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j)
            p(i, j) *= alpha;
    if (beta != 0) {
        if (!form)
            throw InvalidArgument("beta != 0 needs a form");
        PsiDOMatrix q = positive_part(form_dagger(adjoint(bn), *form));
        for (std::size_t i = 0; i < q.rows(); ++i)
            for (std::size_t j = 0; j < q.cols(); ++j)
                p(i, j) -= q(i, j) * beta;
    }
    return p * l - l * p;
}

FlowFn flow_of(ContextPtr ctx)
{
    return [ctx](const DiffPoly& h, const DiffPoly& a) { return hamiltonian_flow(*ctx, h, a); };
}

FlowFn flow_of(std::shared_ptr<const Reduction> red)
{
    return [red](const DiffPoly& h, const DiffPoly& a) { return red->reduced_flow(h, a); };
}

FlowReport check_flow_consistency(const PsiDOMatrix& l, std::size_t k, std::size_t n, const FlowFn& hflow,
                                  const Scalar& alpha, const Scalar& beta, const std::optional<Matrix>& form)
{
    FlowReport rep;
    DiffPoly h = hierarchy_density(l, k, n).density;
    PsiDOMatrix flow = lax_flow(l, k, n, alpha, beta, form);
    int from = std::max(l.precision(), flow.precision());
    from = std::max(from, l.min_trunc());
    rep.from = from;
    const int top = std::max(order_of(l), order_of(flow));
    for (std::size_t i = 0; i < l.rows(); ++i)
        for (std::size_t j = 0; j < l.cols(); ++j)
            for (int pw = top; pw >= from; --pw) {
                DiffPoly a = l(i, j).coeff(pw);
                DiffPoly lhs = h.is_zero() || a.is_zero() ? DiffPoly() : hflow(h, a);
                DiffPoly rhs = flow(i, j).coeff(pw);
                if (!(lhs == rhs)) {
                    rep.holds = false;
                    rep.first_failure = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") ∂^" +
                                        std::to_string(pw) + ": bracket " + lhs.to_string() + " vs flow " +
                                        rhs.to_string();
                    return rep;
                }
            }
    return rep;
}

ContextPtr kdv_context() { return virasoro_context(-1, Scalar(-1) / 2, "u"); }

PsiDOMatrix kdv_operator(int trunc)
{
    ContextPtr ctx = kdv_context();
    PsiDOMatrix l(1, 1, trunc);
    PsiDO::Terms t;
    t.emplace(2, DiffPoly(1));
    t.emplace(0, ctx->generator(0));
    l(0, 0) = PsiDO(std::move(t), trunc);
    return l;
}

} // namespace wlax
