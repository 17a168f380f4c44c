#include "wlax/adler.hpp"

#include <array>
#include <map>
#include <set>
#include <string>

namespace wlax {

namespace {

// Polynomial in z^{+-1}, w, lambda with DiffPoly coefficients; the key is
// (z power, w power, lambda power).
using Key = std::array<int, 3>;

struct Tri {
    std::map<Key, DiffPoly> t;

    void add(const Key& k, const DiffPoly& c)
    {
        if (c.is_zero())
            return;
        auto it = t.find(k);
        if (it == t.end()) {
            t.emplace(k, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero())
            t.erase(it);
    }
    Tri& operator+=(const Tri& o)
    {
        for (const auto& [k, c] : o.t)
            add(k, c);
        return *this;
    }
    Tri scaled(const Scalar& s) const
    {
        Tri r;
        if (s == 0)
            return r;
        for (const auto& [k, c] : t)
            r.t.emplace(k, c * s);
        return r;
    }
    Tri shifted(int dz, int dw, int dl) const
    {
        Tri r;
        for (const auto& [k, c] : t)
            r.t.emplace(Key{k[0] + dz, k[1] + dw, k[2] + dl}, c);
        return r;
    }
    Tri derivative() const
    {
        Tri r;
        for (const auto& [k, c] : t)
            r.add(k, c.derivative());
        return r;
    }
    Tri times(const DiffPoly& d) const
    {
        Tri r;
        if (d.is_zero())
            return r;
        for (const auto& [k, c] : t)
            r.add(k, d * c);
        return r;
    }
    Tri drop_below_z(int pz) const
    {
        Tri r;
        for (const auto& [k, c] : t)
            if (k[0] >= pz)
                r.t.emplace(k, c);
        return r;
    }
};

Tri operator*(const Tri& x, const Tri& y)
{
    Tri r;
    for (const auto& [a, ca] : x.t)
        for (const auto& [b, cb] : y.t)
            r.add(Key{a[0] + b[0], a[1] + b[1], a[2] + b[2]}, ca * cb);
    return r;
}

Tri constant(const DiffPoly& c)
{
    Tri r;
    r.add(Key{0, 0, 0}, c);
    return r;
}

// (w + lambda + d) y, d acting on the coefficients of y.
Tri shift_wl(const Tri& y) { return (y.shifted(0, 1, 0) += y.shifted(0, 0, 1)) += y.derivative(); }
// (lambda + d) y.
Tri shift_l(const Tri& y) { return y.shifted(0, 0, 1) += y.derivative(); }
// (-w - d) y.
Tri neg_shift_w(const Tri& y) { return (y.shifted(0, 1, 0) += y.derivative()).scaled(-1); }

Tri in_z(const PsiDO& p)
{
    Tri r;
    for (const auto& [k, c] : p.terms())
        r.add(Key{k, 0, 0}, c);
    return r;
}

Tri in_w(const PsiDO& p)
{
    Tri r;
    for (const auto& [k, c] : p.terms())
        r.add(Key{0, k, 0}, c);
    return r;
}

// P^*(lambda - z) = sum_k (z - lambda - d)^k a_k, d acting on a_k.
Tri adjoint_at(const PsiDO& p)
{
    Tri r;
    for (const auto& [k, c] : p.terms()) {
        Tri x = constant(c);
        for (int i = 0; i < k; ++i)
            x = (x.shifted(1, 0, 0) += x.shifted(0, 0, 1).scaled(-1)) += x.derivative().scaled(-1);
        r += x;
    }
    return r;
}

// P(w + lambda + d) y = sum_q b_q (w + lambda + d)^q y.
Tri apply_shifted(const PsiDO& p, const Tri& y)
{
    Tri r;
    if (p.terms().empty())
        return r;
    int top = p.terms().begin()->first;
    Tri yq = y;
    for (int q = 0; q <= top; ++q) {
        DiffPoly b = p.coeff(q);
        if (!b.is_zero())
            r += yq.times(b);
        if (q < top)
            yq = shift_wl(yq);
    }
    return r;
}

// sum_{j <= jmax} z^{-j-1} (w + lambda + d)^j y.
Tri geometric_minus(const Tri& y, int jmax)
{
    Tri r, yj = y;
    for (int j = 0; j <= jmax; ++j) {
        r += yj.shifted(-j - 1, 0, 0);
        if (j < jmax)
            yj = shift_wl(yj);
    }
    return r;
}

// sum_{j <= jmax} z^{-j-1} (-w - d)^j y.
Tri geometric_plus(const Tri& y, int jmax)
{
    Tri r, yj = y;
    for (int j = 0; j <= jmax; ++j) {
        r += yj.shifted(-j - 1, 0, 0);
        if (j < jmax)
            yj = neg_shift_w(yj);
    }
    return r;
}

// Q with (lambda + d) Q = D, or nullopt when the division leaves a remainder.
std::optional<Tri> divide_by_shift(const Tri& d, std::string& remainder)
{
    std::map<std::pair<int, int>, std::map<int, DiffPoly>> groups;
    for (const auto& [k, c] : d.t)
        groups[{k[0], k[1]}][k[2]] = c;
    Tri q;
    for (const auto& [zw, poly] : groups) {
        int top = poly.rbegin()->first;
        DiffPoly carry;
        // q_{c-1} = d_c - q_c'
        for (int c = top; c >= 1; --c) {
            auto it = poly.find(c);
            DiffPoly dc = it == poly.end() ? DiffPoly() : it->second;
            DiffPoly qc = dc - carry.derivative();
            q.add(Key{zw.first, zw.second, c - 1}, qc);
            carry = qc;
        }
        auto it0 = poly.find(0);
        DiffPoly rem = (it0 == poly.end() ? DiffPoly() : it0->second) - carry.derivative();
        if (!rem.is_zero()) {
            remainder = "z^" + std::to_string(zw.first) + " w^" + std::to_string(zw.second) + ": " + rem.to_string();
            return std::nullopt;
        }
    }
    return q;
}

int order_of(const PsiDOMatrix& l)
{
    int top = 0;
    for (std::size_t i = 0; i < l.rows(); ++i)
        for (std::size_t j = 0; j < l.cols(); ++j)
            if (auto t = l(i, j).top())
                top = std::max(top, *t);
    return top;
}

std::string render(std::size_t i, std::size_t h, std::size_t j, std::size_t k, const Key& key, const DiffPoly& v)
{
    auto pair = [](std::size_t a, std::size_t b) {
        return "(" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")";
    };
    return "entry " + pair(i, h) + pair(j, k) + " z^" + std::to_string(key[0]) + " w^" + std::to_string(key[1]) +
           " λ^" + std::to_string(key[2]) + ": " + v.to_string();
}

} // namespace

BracketFn bracket_of(ContextPtr ctx)
{
    return [ctx](const DiffPoly& a, const DiffPoly& b) { return lambda_bracket(*ctx, a, b); };
}

BracketFn bracket_of(std::shared_ptr<const Reduction> red)
{
    return [red](const DiffPoly& a, const DiffPoly& b) { return red->reduced_bracket_unchecked(a, b); };
}

AdlerParams adler_params_for(const LieAlgebra& alg)
{
    switch (alg.kind()) {
    case AlgebraKind::gl:
        return {1, 0, 0};
    case AlgebraKind::sl:
        return {1, 0, Scalar(1) / static_cast<long>(alg.N())};
    default:
        return {Scalar(1) / 2, Scalar(1) / 2, 0};
    }
}

CheckReport check_adler(const PsiDOMatrix& l, const BracketFn& bracket, const AdlerParams& params, int trunc,
                        const std::optional<Matrix>& form)
{
    if (l.rows() != l.cols())
        throw InvalidArgument("Adler identity needs a square operator");
    const std::size_t n = l.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const PsiDO& e = l(i, j);
            if (!e.exact() || (!e.terms().empty() && e.terms().rbegin()->first < 0))
                throw InvalidArgument("Adler check is implemented for matrix differential operators");
        }
    if (trunc > 0)
        throw InvalidArgument("truncation order must be <= 0");
    if (params.beta != 0 && (!form || form->rows() != n || form->cols() != n))
        throw InvalidArgument("beta != 0 needs an n x n form");
    Matrix g = form ? *form : Matrix::identity(n);
    Matrix ginv = Matrix::identity(n);
    if (params.beta != 0) {
        auto inv = g.inverse();
        if (!inv)
            throw InvalidArgument("form matrix is singular");
        ginv = *inv;
    }

    // Terms dropped from the geometric series only reach z^{ord - jmax - 2}.
    const int ord = order_of(l);
    const int jmax = std::max(0, ord - trunc - 1);
    const int pz = ord - jmax - 1;

    std::vector<Tri> lz(n * n), lw(n * n), lstar(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            lz[i * n + j] = in_z(l(i, j));
            lw[i * n + j] = in_w(l(i, j));
            // L^*_{ij} is the formal adjoint of the entry L_{ij}.
            lstar[i * n + j] = adjoint_at(l(i, j));
        }

    CheckReport rep;
    rep.z_from = pz;
    std::string remainder;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t h = 0; h < n; ++h)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    Tri lhs;
                    for (const auto& [p, a] : l(i, j).terms())
                        for (const auto& [q, b] : l(h, k).terms()) {
                            LambdaPoly br = bracket(a, b);
                            for (std::size_t c = 0; c < br.coeffs().size(); ++c)
                                lhs.add(Key{p, q, static_cast<int>(c)}, br.coeffs()[c]);
                        }

                    Tri rhs;
                    if (params.alpha != 0) {
                        Tri t1 = apply_shifted(l(h, j), geometric_minus(lstar[i * n + k], jmax));
                        Tri t2 = lz[h * n + j] * geometric_minus(lw[i * n + k], jmax);
                        rhs += t1.scaled(params.alpha);
                        rhs += t2.scaled(-params.alpha);
                    }
                    if (params.beta != 0) {
                        for (std::size_t b = 0; b < n; ++b) {
                            if (ginv(b, i) == 0)
                                continue;
                            Tri inner;
                            for (std::size_t c = 0; c < n; ++c)
                                if (g(c, k) != 0)
                                    inner += lz[c * n + j].scaled(g(c, k));
                            Tri t3 = apply_shifted(l(h, b), geometric_plus(inner, jmax));
                            rhs += t3.scaled(-params.beta * ginv(b, i));
                        }
                        for (std::size_t a = 0; a < n; ++a) {
                            if (ginv(h, a) == 0)
                                continue;
                            Tri inner;
                            for (std::size_t d = 0; d < n; ++d)
                                if (g(j, d) != 0)
                                    inner += lw[d * n + k].scaled(g(j, d));
                            Tri t4 = lstar[i * n + a] * geometric_plus(inner, jmax);
                            rhs += t4.scaled(params.beta * ginv(h, a));
                        }
                    }
                    if (params.gamma != 0) {
                        Tri diff = lstar[i * n + j];
                        diff += lz[i * n + j].scaled(-1);
                        auto q = divide_by_shift(diff, remainder);
                        if (!q)
                            throw ComputationError("gamma term: L*(λ-z) - L(z) is not divisible by λ+∂ at " +
                                                   remainder);
                        Tri t5 = apply_shifted(l(h, k), *q);
                        t5 += (lw[h * n + k] * *q).scaled(-1);
                        rhs += t5.scaled(params.gamma);
                    }

                    lhs = lhs.drop_below_z(pz);
                    rhs = rhs.drop_below_z(pz);
                    std::set<Key> keys;
                    for (const auto& [key, c] : lhs.t)
                        keys.insert(key);
                    for (const auto& [key, c] : rhs.t)
                        keys.insert(key);
                    rep.coefficients_checked += keys.size();
                    Tri diff = rhs.scaled(-1);
                    diff += lhs;
                    if (!diff.t.empty() && rep.holds) {
                        rep.holds = false;
                        const auto& [key, v] = *diff.t.rbegin();
                        rep.first_failure = render(i, h, j, k, key, v);
                    }
                }
    return rep;
}

} // namespace wlax
