#include "wlax/finw.hpp"

#include <map>
#include <memory>
#include <set>
#include <utility>

namespace wlax {

namespace {

/// P^{-1} M P for a constant change of basis, applied to a matrix whose
/// entries are built as sum_t c_t * S_t with scalar matrices S_t.
struct LinearBuilder {
    std::size_t n;
    int trunc;
    Matrix scalar_part;
    Matrix z_part;
    std::vector<std::pair<PBWPoly, Matrix>> letters;

    UeaSeriesMatrix build(const Matrix& p, const Matrix& pinv) const
    {
        auto conj = [&](const Matrix& m) { return pinv * m * p; };
        Matrix s = conj(scalar_part), zz = conj(z_part);
        UeaSeriesMatrix out(n, n, trunc);
        std::vector<std::vector<PBWPoly>> c0(n, std::vector<PBWPoly>(n));
        for (const auto& [u, m] : letters) {
            Matrix cm = conj(m);
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l)
                    if (cm(k, l) != 0)
                        c0[k][l] += u * cm(k, l);
        }
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t l = 0; l < n; ++l) {
                UeaSeries::Terms t;
                PBWPoly c = c0[k][l] + PBWPoly(s(k, l));
                if (!c.is_zero())
                    t.emplace(0, c);
                if (zz(k, l) != 0)
                    t.emplace(1, PBWPoly(zz(k, l)));
                out(k, l) = UeaSeries(std::move(t), trunc);
            }
        return out;
    }
};

Matrix inverse_or_throw(const Matrix& m)
{
    auto inv = m.inverse();
    if (!inv)
        throw ComputationError("weight basis is singular");
    return *inv;
}

// Bivariate truncated series in z, w with U(g) coefficients. Coefficients
// of z^a w^b are exact when a >= pz and b >= pw.
struct BiSeries {
    std::map<std::pair<int, int>, PBWPoly> terms;
    int pz = kExact, pw = kExact;
    int topz = kExact, topw = kExact;

    bool exact_zero() const { return terms.empty() && pz == kExact && pw == kExact; }

    void prune()
    {
        for (auto it = terms.begin(); it != terms.end();) {
            if (it->second.is_zero() || it->first.first < pz || it->first.second < pw)
                it = terms.erase(it);
            else
                ++it;
        }
    }

    static BiSeries from_z(const UeaSeries& s)
    {
        BiSeries b;
        for (const auto& [k, c] : s.terms())
            b.terms.emplace(std::make_pair(k, 0), c);
        b.pz = s.prec();
        b.topz = s.top_bound();
        b.topw = 0;
        return b;
    }
    static BiSeries from_w(const UeaSeries& s)
    {
        BiSeries b;
        for (const auto& [k, c] : s.terms())
            b.terms.emplace(std::make_pair(0, k), c);
        b.pw = s.prec();
        b.topw = s.top_bound();
        b.topz = 0;
        return b;
    }
    static BiSeries poly(const std::map<std::pair<int, int>, Scalar>& t)
    {
        BiSeries b;
        for (const auto& [k, c] : t)
            if (c != 0) {
                b.terms.emplace(k, PBWPoly(c));
                b.topz = std::max(b.topz, k.first);
                b.topw = std::max(b.topw, k.second);
            }
        return b;
    }

    BiSeries& operator+=(const BiSeries& o)
    {
        if (o.exact_zero())
            return *this;
        pz = std::max(pz, o.pz);
        pw = std::max(pw, o.pw);
        topz = std::max(topz, o.topz);
        topw = std::max(topw, o.topw);
        for (const auto& [k, c] : o.terms)
            terms[k] += c;
        prune();
        return *this;
    }
    BiSeries& operator-=(const BiSeries& o)
    {
        BiSeries neg = o;
        for (auto& [k, c] : neg.terms)
            c *= Scalar(-1);
        return *this += neg;
    }

    friend BiSeries operator*(const BiSeries& x, const BiSeries& y)
    {
        BiSeries r;
        if (x.exact_zero() || y.exact_zero())
            return r;
        r.topz = x.topz + y.topz;
        r.topw = x.topw + y.topw;
        auto lift = [](int p, int top) { return p == kExact ? kExact : p + top; };
        r.pz = std::max(lift(x.pz, y.topz), lift(y.pz, x.topz));
        r.pw = std::max(lift(x.pw, y.topw), lift(y.pw, x.topw));
        for (const auto& [kx, cx] : x.terms)
            for (const auto& [ky, cy] : y.terms) {
                int a = kx.first + ky.first, b = kx.second + ky.second;
                if (a < r.pz || b < r.pw)
                    continue;
                r.terms[{a, b}] += cx * cy;
            }
        r.prune();
        return r;
    }
};

struct BiMatrix {
    std::size_t n = 0;
    std::vector<BiSeries> data;

    explicit BiMatrix(std::size_t size) : n(size), data(size * size) {}
    BiSeries& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
    const BiSeries& operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }

    friend BiMatrix operator*(const BiMatrix& a, const BiMatrix& b)
    {
        BiMatrix r(a.n);
        for (std::size_t i = 0; i < a.n; ++i)
            for (std::size_t k = 0; k < a.n; ++k) {
                if (a(i, k).exact_zero())
                    continue;
                for (std::size_t j = 0; j < a.n; ++j)
                    if (!b(k, j).exact_zero())
                        r(i, j) += a(i, k) * b(k, j);
            }
        return r;
    }
};

/// c_zw-linear factor  (z coeff) z + (w coeff) w + c0 id + s * S.
BiMatrix linear_factor(std::size_t nn, const Scalar& zc, const Scalar& wc, const Scalar& c0, const Scalar& s,
                       const Matrix* sm)
{
    BiMatrix m(nn);
    for (std::size_t i = 0; i < nn; ++i)
        for (std::size_t j = 0; j < nn; ++j) {
            std::map<std::pair<int, int>, Scalar> t;
            if (i == j) {
                t[{1, 0}] += zc;
                t[{0, 1}] += wc;
                t[{0, 0}] += c0;
            }
            if (sm && (*sm)(i, j) != 0)
                t[{0, 0}] += s * (*sm)(i, j);
            m(i, j) = BiSeries::poly(t);
        }
    return m;
}

std::string render_bi_failure(std::size_t n, std::size_t r, std::size_t c, int a, int b, const PBWPoly& v)
{
    auto pair_label = [n](std::size_t idx) {
        return "(" + std::to_string(idx / n + 1) + "," + std::to_string(idx % n + 1) + ")";
    };
    return "entry " + pair_label(r) + pair_label(c) + " z^" + std::to_string(a) + " w^" + std::to_string(b) + ": " +
           v.to_string();
}

std::optional<int> opt_prec(int p)
{
    if (p == kExact)
        return std::nullopt;
    return p;
}

} // namespace

UeaSeriesMatrix operator_A(const EnvelopingPtr& env, int trunc)
{
    const LieAlgebra& alg = env->algebra();
    LinearBuilder b{alg.N(), trunc, Matrix(alg.N(), alg.N()), Matrix::identity(alg.N()), {}};
    for (std::size_t i = 0; i < alg.dim(); ++i)
        b.letters.emplace_back(PBWPoly::generator(env, i), alg.dual_rep(i));
    Matrix id = Matrix::identity(alg.N());
    return b.build(id, id);
}

UeaSeriesMatrix operator_A_rho(const GradingData& grading, const EnvelopingPtr& env, int trunc)
{
    const LieAlgebra& alg = *grading.algebra;
    if (&env->algebra() != &alg)
        throw InvalidArgument("enveloping algebra does not match the graded algebra");
    LinearBuilder b{alg.N(), trunc, grading.triple.F, Matrix::identity(alg.N()), {}};
    for (std::size_t i : grading.indices_le_half())
        b.letters.emplace_back(PBWPoly::generator(env, i), alg.dual_rep(i));
    const Matrix& p = grading.weight_basis;
    return b.build(p, inverse_or_throw(p));
}

UeaSeriesMatrix shift_matrix(const GradingData& grading, int trunc)
{
    const std::size_t n = grading.algebra->N();
    LinearBuilder b{n, trunc, grading.shift, Matrix(n, n), {}};
    const Matrix& p = grading.weight_basis;
    return b.build(p, inverse_or_throw(p));
}

LaxFiniteOp lax_finite(const LieAlgebra& alg, const Sl2Triple& triple, int trunc, QuasidetRoute route,
                       const std::vector<std::size_t>& chi, bool assert_invariance)
{
    if (trunc > 0)
        throw InvalidArgument("truncation order must be <= 0");
    GradingData gd = grading_data(alg, triple);
    auto env = std::make_shared<const Enveloping>(gd.algebra);
    std::vector<std::size_t> top = gd.v_grading.at(gd.half_d);
    std::vector<std::size_t> bottom = gd.v_grading.at(-gd.half_d);
    const std::size_t n = bottom.size();

    std::vector<std::size_t> perm = chi;
    if (perm.empty())
        for (std::size_t k = 0; k < n; ++k)
            perm.push_back(k);
    if (perm.size() != n)
        throw InvalidArgument("chi must permute " + std::to_string(n) + " weight vectors");
    {
        std::vector<bool> seen(n, false);
        for (std::size_t k : perm) {
            if (k >= n || seen[k])
                throw InvalidArgument("chi is not a permutation");
            seen[k] = true;
        }
    }

    UeaSeriesMatrix m = operator_A_rho(gd, env, trunc) + shift_matrix(gd, trunc);
    UeaSeriesMatrix tl = with_precision(trunc, [&](int floor) {
        if (route == QuasidetRoute::explicit_formula)
            return quasidet_explicit(m, top, bottom, floor);
        return quasideterminant(m, top, bottom, floor);
    });

    LaxFiniteOp out{UeaSeriesMatrix(n, n, trunc), gd, env, trunc, n, top, bottom, std::nullopt, std::nullopt};
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
            const UeaSeries& s = tl(k, l);
            UeaSeries::Terms t;
            for (const auto& [pw, c] : s.terms()) {
                QuotientRep q = reduce_mod_ideal(c, gd);
                if (assert_invariance) {
                    if (auto bad = ad_invariance_failure(q, gd))
                        throw ComputationError("coefficient of z^" + std::to_string(pw) +
                                               " is not ad-invariant under " + *bad);
                }
                if (!q.value.is_zero())
                    t.emplace(pw, q.value);
            }
            out.op(perm[k], l) = UeaSeries(std::move(t), s.trunc(), s.prec());
        }

    if (alg.form()) {
        const Matrix& p = gd.weight_basis;
        Matrix g = p.transpose() * *alg.form() * p;
        std::vector<std::size_t> inv(n);
        for (std::size_t k = 0; k < n; ++k)
            inv[perm[k]] = k;
        Matrix h(n, n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                h(a, b) = g(top[inv[a]], bottom[b]);
        if (h.transpose() == h)
            out.epsilon = 1;
        else if (h.transpose() == -h)
            out.epsilon = -1;
        if (out.epsilon && h.inverse())
            out.form = h;
        else
            out.epsilon.reset();
    }
    return out;
}

YangianParams yangian_params_for_A(const LieAlgebra& alg)
{
    if (alg.kind() == AlgebraKind::gl || alg.kind() == AlgebraKind::sl)
        return {1, 0, 0};
    Scalar eps = alg.epsilon().value_or(alg.kind() == AlgebraKind::so ? 1 : -1);
    return {Scalar(1) / 2, Scalar(1) / 2, eps / 2};
}

YangianParams yangian_params_for_L(const LieAlgebra& alg, std::size_t n)
{
    if (alg.kind() == AlgebraKind::gl || alg.kind() == AlgebraKind::sl)
        return {1, 0, 0};
    Scalar eps = alg.epsilon().value_or(alg.kind() == AlgebraKind::so ? 1 : -1);
    return {Scalar(1) / 2, Scalar(1) / 2, (eps - Scalar(static_cast<long>(alg.N())) + Scalar(static_cast<long>(n))) / 2};
}

CheckReport check_yangian(const UeaSeriesMatrix& op, const YangianParams& p, const std::optional<Matrix>& form,
                          const std::function<PBWPoly(const PBWPoly&)>& finalize)
{
    if (op.rows() != op.cols())
        throw InvalidArgument("Yangian check needs a square operator");
    const std::size_t n = op.rows(), nn = n * n;
    std::optional<Matrix> dag;
    if (p.beta != 0) {
        if (!form)
            throw InvalidArgument("missing form data: beta != 0 needs a bilinear form");
        if (form->rows() != n || form->cols() != n)
            throw InvalidArgument("form size does not match the operator");
        dag = omega_dagger(*form).matrix;
    }
    Matrix omega = omega_plain(n).matrix;

    BiMatrix az(nn), aw(nn);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t h = 0; h < n; ++h) {
                az(i * n + h, j * n + h) = BiSeries::from_z(op(i, j));
                aw(h * n + i, h * n + j) = BiSeries::from_w(op(i, j));
            }
    BiMatrix x = linear_factor(nn, 1, -1, 0, p.alpha, &omega);
    BiMatrix y = linear_factor(nn, 1, 1, p.gamma, -p.beta, dag ? &*dag : nullptr);

    BiMatrix lhs = x * az * y * aw;
    BiMatrix rhs = aw * y * az * x;

    CheckReport rep;
    int pz = kExact, pw = kExact;
    for (std::size_t k = 0; k < lhs.data.size(); ++k) {
        pz = std::max({pz, lhs.data[k].pz, rhs.data[k].pz});
        pw = std::max({pw, lhs.data[k].pw, rhs.data[k].pw});
    }
    rep.z_from = opt_prec(pz);
    rep.w_from = opt_prec(pw);
    for (std::size_t r = 0; r < nn && rep.holds; ++r)
        for (std::size_t c = 0; c < nn && rep.holds; ++c) {
            std::set<std::pair<int, int>> keys;
            for (const auto* side : {&lhs(r, c), &rhs(r, c)})
                for (const auto& kv : side->terms)
                    if (kv.first.first >= pz && kv.first.second >= pw)
                        keys.insert(kv.first);
            rep.coefficients_checked += keys.size();
            BiSeries d = lhs(r, c);
            d -= rhs(r, c);
            for (const auto& [k, v] : d.terms) {
                if (k.first < pz || k.second < pw)
                    continue;
                PBWPoly val = finalize ? finalize(v) : v;
                if (!val.is_zero()) {
                    rep.holds = false;
                    rep.first_failure = render_bi_failure(n, r, c, k.first, k.second, val);
                    break;
                }
            }
        }
    return rep;
}

CheckReport check_symmetry_condition(const UeaSeriesMatrix& op, const Matrix& form, int epsilon,
                                     const std::function<PBWPoly(const PBWPoly&)>& finalize)
{
    const std::size_t n = op.rows();
    if (op.cols() != n || form.rows() != n || form.cols() != n)
        throw InvalidArgument("symmetry condition needs a square operator and a matching form");
    if (epsilon != 1 && epsilon != -1)
        throw InvalidArgument("epsilon must be +1 or -1");
    auto ginv = form.inverse();
    if (!ginv)
        throw InvalidArgument("degenerate bilinear form");

    auto negate_z = [](const UeaSeries& s) {
        UeaSeries::Terms t;
        for (const auto& [k, c] : s.terms())
            t.emplace(k, k % 2 == 0 ? c : -c);
        return UeaSeries(std::move(t), s.trunc(), s.prec());
    };
    auto embed = [&](const Scalar& c, const UeaSeries& s) { return s * c; };

    CheckReport rep;
    int prec = kExact;
    for (std::size_t i = 0; i < n && rep.holds; ++i)
        for (std::size_t j = 0; j < n && rep.holds; ++j) {
            // (G^{-1} A(-z)^T G)_{ij}
            UeaSeries dagger(op(0, 0).trunc());
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b) {
                    Scalar c = (*ginv)(i, a) * form(b, j);
                    if (c != 0)
                        dagger += embed(c, negate_z(op(b, a)));
                }
            UeaSeries odd = op(i, j) - negate_z(op(i, j));
            UeaSeries::Terms shifted;
            for (const auto& [k, c] : odd.terms())
                shifted.emplace(k - 1, c * (Scalar(1) / 4));
            UeaSeries quarter(std::move(shifted), odd.trunc() - 1, odd.exact() ? kExact : odd.prec() - 1);
            UeaSeries diff = dagger - op(i, j) * Scalar(epsilon) + quarter;
            prec = std::max(prec, diff.prec());
            for (const auto& [k, c] : diff.terms()) {
                ++rep.coefficients_checked;
                PBWPoly v = finalize ? finalize(c) : c;
                if (!v.is_zero()) {
                    rep.holds = false;
                    rep.first_failure = "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") z^" +
                                        std::to_string(k) + ": " + v.to_string();
                    break;
                }
            }
        }
    rep.z_from = opt_prec(prec);
    return rep;
}

} // namespace wlax
