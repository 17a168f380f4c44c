#include "wlax/liealg.hpp"

#include <algorithm>
#include <numeric>

namespace wlax {

std::string to_string(AlgebraKind k)
{
    switch (k) {
    case AlgebraKind::gl: return "gl";
    case AlgebraKind::sl: return "sl";
    case AlgebraKind::so: return "so";
    case AlgebraKind::sp: return "sp";
    }
    return "?";
}

AlgebraKind parse_algebra_kind(const std::string& s)
{
    if (s == "gl") return AlgebraKind::gl;
    if (s == "sl") return AlgebraKind::sl;
    if (s == "so") return AlgebraKind::so;
    if (s == "sp") return AlgebraKind::sp;
    throw InvalidArgument("unsupported algebra kind '" + s + "'");
}

namespace {

// Rank test: flatten matrices into rows.
std::size_t span_rank(const std::vector<Matrix>& ms)
{
    if (ms.empty())
        return 0;
    std::size_t n2 = ms[0].rows() * ms[0].cols();
    Matrix m(ms.size(), n2);
    for (std::size_t r = 0; r < ms.size(); ++r)
        for (std::size_t i = 0; i < ms[r].rows(); ++i)
            for (std::size_t j = 0; j < ms[r].cols(); ++j)
                m(r, i * ms[r].cols() + j) = ms[r](i, j);
    return m.rank();
}

std::string index_label(char prefix, std::size_t i, std::size_t j, std::size_t n)
{
    std::string s(1, prefix);
    if (n < 10)
        return s + std::to_string(i + 1) + std::to_string(j + 1);
    return s + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

} // namespace

LieAlgebra::LieAlgebra(AlgebraKind kind, std::size_t n, std::vector<std::string> labels,
                       std::vector<Matrix> basis, std::optional<int> epsilon, std::optional<Matrix> form)
    : kind_(kind), n_(n), labels_(std::move(labels)), basis_(std::move(basis)), epsilon_(epsilon),
      form_(std::move(form))
{
    if (labels_.size() != basis_.size())
        throw InvalidArgument("label count does not match basis size");
    for (const auto& b : basis_)
        if (b.rows() != n_ || b.cols() != n_)
            throw InvalidArgument("basis matrix has wrong shape");
    if (span_rank(basis_) != basis_.size())
        throw InvalidArgument("basis matrices are linearly dependent");
    const std::size_t m = basis_.size();
    gram_ = Matrix(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            gram_(i, j) = (basis_[i] * basis_[j]).trace();
    auto ginv = gram_.inverse();
    if (!ginv)
        throw InvalidArgument("trace form is degenerate on the chosen basis");
    dual_.assign(m, Matrix(n_, n_));
    dual_coeffs_.assign(m, Coeffs(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) {
            dual_coeffs_[i][k] = (*ginv)(i, k);
            if ((*ginv)(i, k) != 0)
                dual_[i] += basis_[k] * (*ginv)(i, k);
        }
    structure_.resize(m * m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Matrix c = commutator(basis_[i], basis_[j]);
            Matrix rebuilt(n_, n_);
            SparseCoeffs sc;
            for (std::size_t k = 0; k < m; ++k) {
                Scalar v = (c * dual_[k]).trace();
                if (v != 0) {
                    sc.emplace_back(k, v);
                    rebuilt += basis_[k] * v;
                }
            }
            if (!(rebuilt == c))
                throw InvalidArgument("basis is not closed under the commutator");
            structure_[i * m + j] = std::move(sc);
        }
    if (form_) {
        if (form_->rows() != n_ || form_->cols() != n_ || !form_->inverse())
            throw InvalidArgument("bilinear form must be a non-degenerate N x N matrix");
        if (!epsilon_)
            throw InvalidArgument("bilinear form given without its symmetry sign");
    }
}

Coeffs LieAlgebra::bracket(const Coeffs& a, const Coeffs& b) const
{
    Coeffs r(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (b[j] == 0)
                continue;
            for (const auto& [k, c] : bracket(i, j))
                r[k] += a[i] * b[j] * c;
        }
    }
    return r;
}

Scalar LieAlgebra::trace_form(const Coeffs& a, const Coeffs& b) const
{
    Scalar r = 0;
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j)
            if (a[i] != 0 && b[j] != 0)
                r += a[i] * b[j] * gram_(i, j);
    return r;
}

Matrix LieAlgebra::element(const Coeffs& c) const
{
    Matrix m(n_, n_);
    for (std::size_t i = 0; i < dim(); ++i)
        if (c[i] != 0)
            m += basis_[i] * c[i];
    return m;
}

std::optional<Coeffs> LieAlgebra::coordinates(const Matrix& m) const
{
    Coeffs c(dim());
    for (std::size_t k = 0; k < dim(); ++k)
        c[k] = (m * dual_[k]).trace();
    if (!(element(c) == m))
        return std::nullopt;
    return c;
}

Matrix LieAlgebra::adjoint(const Matrix& a) const
{
    if (!form_)
        throw InvalidArgument("adjoint requires a bilinear form");
    return *form_->inverse() * a.transpose() * *form_;
}

AlgebraPtr build_algebra(AlgebraKind kind, std::size_t n, std::optional<Matrix> form)
{
    if (n < 1)
        throw InvalidArgument("N must be at least 1");
    std::vector<Matrix> basis;
    std::vector<std::string> labels;
    switch (kind) {
    case AlgebraKind::gl:
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                basis.push_back(Matrix::unit(n, i, j));
                labels.push_back(index_label('e', i, j, n));
            }
        return std::make_shared<LieAlgebra>(kind, n, labels, basis);
    case AlgebraKind::sl:
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) {
                    basis.push_back(Matrix::unit(n, i, j));
                    labels.push_back(index_label('e', i, j, n));
                }
        for (std::size_t i = 0; i + 1 < n; ++i) {
            basis.push_back(Matrix::unit(n, i, i) - Matrix::unit(n, i + 1, i + 1));
            labels.push_back("h" + std::to_string(i + 1));
        }
        return std::make_shared<LieAlgebra>(kind, n, labels, basis);
    case AlgebraKind::so:
    case AlgebraKind::sp: {
        int eps = kind == AlgebraKind::so ? 1 : -1;
        if (kind == AlgebraKind::sp && n % 2 != 0)
            throw InvalidArgument("sp_N requires even N");
        Matrix g;
        if (form) {
            g = *form;
            if (g.rows() != n || g.cols() != n)
                throw InvalidArgument("form matrix has wrong shape");
            if (!(g.transpose() == g * Scalar(eps)))
                throw InvalidArgument(kind == AlgebraKind::so ? "so_N form must be symmetric"
                                                              : "sp_N form must be skew-symmetric");
            if (!g.inverse())
                throw InvalidArgument("form matrix is degenerate");
        } else if (kind == AlgebraKind::so) {
            g = Matrix::identity(n);
        } else {
            g = Matrix(n, n);
            std::size_t m = n / 2;
            for (std::size_t i = 0; i < m; ++i) {
                g(i, m + i) = 1;
                g(m + i, i) = -1;
            }
        }
        Matrix ginv = *g.inverse();
        // {A : A^dagger = -A}, spanned by E_ij - E_ij^dagger.
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                Matrix e = Matrix::unit(n, i, j);
                Matrix cand = e - ginv * e.transpose() * g;
                if (cand.is_zero() || cand(i, j) == 0)
                    continue;
                cand *= 1 / cand(i, j);
                basis.push_back(cand);
                if (span_rank(basis) < basis.size()) {
                    basis.pop_back();
                    continue;
                }
                labels.push_back(index_label('s', i, j, n));
            }
        return std::make_shared<LieAlgebra>(kind, n, labels, basis, eps, g);
    }
    }
    throw InvalidArgument("unsupported algebra kind");
}

namespace {

void check_triple(const LieAlgebra& alg, const Matrix& e, const Matrix& x, const Matrix& f)
{
    if (!(commutator(x, e) == e) || !(commutator(x, f) == -f) || !(commutator(e, f) == x * Scalar(2)))
        throw InvalidArgument("matrices do not satisfy the sl2 relations [x,e]=e, [x,f]=-f, [e,f]=2x");
    Matrix p = f;
    for (std::size_t k = 0; k < alg.N(); ++k)
        p = p * f;
    if (!p.is_zero())
        throw InvalidArgument("f is not nilpotent");
}

} // namespace

Sl2Triple triple_from_matrices(const LieAlgebra& alg, const Matrix& e, const Matrix& x, const Matrix& f)
{
    check_triple(alg, e, x, f);
    auto ce = alg.coordinates(e), cx = alg.coordinates(x), cf = alg.coordinates(f);
    if (!ce || !cx || !cf)
        throw InvalidArgument("triple matrices do not lie in the algebra");
    return {*ce, *cx, *cf, e, x, f};
}

Sl2Triple sl2_from_partition(const LieAlgebra& alg, const std::vector<std::size_t>& partition)
{
    if (alg.kind() != AlgebraKind::gl && alg.kind() != AlgebraKind::sl)
        throw InvalidArgument("partitions are supported for gl/sl only; supply an explicit triple for so/sp");
    std::size_t total = std::accumulate(partition.begin(), partition.end(), std::size_t{0});
    if (total != alg.N())
        throw InvalidArgument("partition sums to " + std::to_string(total) + ", expected " +
                              std::to_string(alg.N()));
    const std::size_t n = alg.N();
    Matrix e(n, n), x(n, n), f(n, n);
    std::size_t off = 0;
    for (std::size_t p : partition) {
        if (p == 0)
            throw InvalidArgument("partition parts must be positive");
        for (std::size_t k = 0; k < p; ++k)
            x(off + k, off + k) = Scalar(static_cast<long>(p) - 1 - 2 * static_cast<long>(k)) / 2;
        for (std::size_t k = 1; k < p; ++k) {
            f(off + k, off + k - 1) = 1;
            e(off + k - 1, off + k) = static_cast<long>(k * (p - k));
        }
        off += p;
    }
    return triple_from_matrices(alg, e, x, f);
}

Sl2Triple zero_triple(const LieAlgebra& alg)
{
    Matrix z(alg.N(), alg.N());
    Coeffs c(alg.dim());
    return {c, c, c, z, z, z};
}

Scalar trace_form(const LieAlgebra& alg, const Coeffs& a, const Coeffs& b) { return alg.trace_form(a, b); }

namespace {

bool le_half(const Scalar& s) { return s <= Scalar(1, 2); }
bool ge_one(const Scalar& s) { return s >= 1; }
bool positive(const Scalar& s) { return s > 0; }

// ad x in the basis of `alg`: column j holds [x, u_j].
Matrix ad_matrix(const LieAlgebra& alg, const Coeffs& x)
{
    Matrix ad(alg.dim(), alg.dim());
    for (std::size_t j = 0; j < alg.dim(); ++j) {
        Coeffs uj(alg.dim());
        uj[j] = 1;
        Coeffs c = alg.bracket(x, uj);
        for (std::size_t k = 0; k < alg.dim(); ++k)
            ad(k, j) = c[k];
    }
    return ad;
}

std::vector<Scalar> half_integer_candidates(long bound)
{
    std::vector<Scalar> out;
    for (long j = -2 * bound; j <= 2 * bound; ++j)
        out.push_back(Scalar(j) / 2);
    return out;
}

} // namespace

std::vector<std::size_t> GradingData::indices_where(bool (*pred)(const Scalar&)) const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < degree.size(); ++i)
        if (pred(degree[i]))
            out.push_back(i);
    return out;
}

std::vector<std::size_t> GradingData::indices_le_half() const { return indices_where(le_half); }
std::vector<std::size_t> GradingData::indices_ge_one() const { return indices_where(ge_one); }
std::vector<std::size_t> GradingData::indices_positive() const { return indices_where(positive); }

Scalar GradingData::f_pairing(std::size_t i) const { return (triple.F * algebra->rep(i)).trace(); }

GradingData grading_data(const LieAlgebra& alg, const Sl2Triple& triple)
{
    const std::size_t m = alg.dim();
    const long bound = static_cast<long>(alg.N());
    Matrix ad = ad_matrix(alg, triple.x);

    // New basis: ad x-eigenvectors, ascending degree, ties by construction index.
    std::vector<Matrix> basis;
    std::vector<std::string> labels;
    std::vector<Scalar> degree;
    bool homogeneous = ad.is_diagonal();
    std::size_t total = 0;
    for (const Scalar& lam : half_integer_candidates(bound)) {
        if (homogeneous) {
            for (std::size_t j = 0; j < m; ++j)
                if (ad(j, j) == lam) {
                    basis.push_back(alg.rep(j));
                    labels.push_back(alg.label(j));
                    degree.push_back(lam);
                }
            continue;
        }
        Matrix shifted = ad - Matrix::identity(m) * lam;
        Matrix ns = shifted.nullspace();
        for (std::size_t c = 0; c < ns.cols(); ++c) {
            Coeffs v(m);
            for (std::size_t k = 0; k < m; ++k)
                v[k] = ns(k, c);
            basis.push_back(alg.element(v));
            labels.push_back("b" + std::to_string(++total));
            degree.push_back(lam);
        }
    }
    if (basis.size() != m)
        throw InvalidArgument("ad x is not diagonalisable with half-integer eigenvalues");

    GradingData g;
    g.algebra = std::make_shared<LieAlgebra>(alg.kind(), alg.N(), labels, basis, alg.epsilon(), alg.form());
    g.triple = triple_from_matrices(*g.algebra, triple.E, triple.X, triple.F);
    g.degree = degree;
    for (std::size_t i = 0; i < m; ++i)
        g.by_degree[degree[i]].push_back(i);

    // Weight basis of V.
    const std::size_t n = alg.N();
    if (triple.X.is_diagonal()) {
        g.weight_basis = Matrix::identity(n);
        for (std::size_t i = 0; i < n; ++i)
            g.weights.push_back(triple.X(i, i));
    } else {
        g.weight_basis = Matrix(n, n);
        std::size_t col = 0;
        auto cands = half_integer_candidates(bound);
        for (auto it = cands.rbegin(); it != cands.rend(); ++it) {
            Matrix ns = (triple.X - Matrix::identity(n) * *it).nullspace();
            for (std::size_t c = 0; c < ns.cols(); ++c, ++col) {
                for (std::size_t k = 0; k < n; ++k)
                    g.weight_basis(k, col) = ns(k, c);
                g.weights.push_back(*it);
            }
        }
        if (col != n)
            throw InvalidArgument("X is not diagonalisable with half-integer eigenvalues");
    }
    for (std::size_t i = 0; i < n; ++i)
        g.v_grading[g.weights[i]].push_back(i);
    g.half_d = g.v_grading.rbegin()->first;

    // Centraliser of f: kernel of ad f.
    Matrix adf = ad_matrix(*g.algebra, g.triple.f);
    Matrix ker = adf.nullspace();
    for (std::size_t c = 0; c < ker.cols(); ++c) {
        Coeffs v(m);
        for (std::size_t k = 0; k < m; ++k)
            v[k] = ker(k, c);
        g.centralizer.push_back(v);
    }

    g.shift = Matrix(n, n);
    for (std::size_t i : g.indices_ge_one())
        g.shift -= g.algebra->dual_rep(i) * g.algebra->rep(i);
    return g;
}

OmegaTensor omega_plain(std::size_t n)
{
    Matrix m(n * n, n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            m(a * n + b, b * n + a) = 1;
    return {OmegaTensor::Variant::plain, m};
}

OmegaTensor omega_dagger(const Matrix& form)
{
    const std::size_t n = form.rows();
    auto ginv = form.inverse();
    if (!ginv)
        throw InvalidArgument("degenerate bilinear form");
    Matrix m(n * n, n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Matrix left = *ginv * Matrix::unit(n, a, b).transpose() * form;
            m += Matrix::kron(left, Matrix::unit(n, b, a));
        }
    return {OmegaTensor::Variant::dagger, m};
}

std::pair<OmegaTensor, std::optional<OmegaTensor>> omega_maps(const LieAlgebra& alg)
{
    std::optional<OmegaTensor> dag;
    if (alg.form())
        dag = omega_dagger(*alg.form());
    return {omega_plain(alg.N()), dag};
}

} // namespace wlax
