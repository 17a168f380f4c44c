#include "wlax/pva.hpp"

#include <map>
#include <random>
#include <utility>

namespace wlax {

namespace {

class VirasoroContext final : public PoissonContext {
public:
    VirasoroContext(const Scalar& a, const Scalar& c, const std::string& name)
        : PoissonContext(make_names({name})), a_(a), c_(c)
    {
    }

    LambdaPoly generator_bracket(std::size_t, std::size_t) const override
    {
        DiffPoly u = generator(0);
        std::vector<DiffPoly> v(4);
        v[0] = u.derivative() * a_;
        v[1] = u * (2 * a_);
        v[3] = DiffPoly(c_).with_names(names());
        return LambdaPoly(std::move(v));
    }

    std::string describe() const override
    {
        return "{" + (*names())[0] + "_λ " + (*names())[0] + "} = " + generator_bracket(0, 0).to_string();
    }

private:
    Scalar a_, c_;
};

class CurrentContext final : public PoissonContext {
public:
    CurrentContext(AlgebraPtr alg, const Scalar& level)
        : PoissonContext(make_names(alg->labels())), alg_(std::move(alg)), level_(level)
    {
    }

    LambdaPoly generator_bracket(std::size_t i, std::size_t j) const override
    {
        DiffPoly zero;
        for (const auto& [k, c] : alg_->bracket(i, j))
            zero += generator(k) * c;
        std::vector<DiffPoly> v{zero, DiffPoly(alg_->trace_form(i, j) * level_).with_names(names())};
        return LambdaPoly(std::move(v));
    }

    std::string describe() const override
    {
        return "current algebra of " + to_string(alg_->kind()) + std::to_string(alg_->N()) + " at level " +
               wlax::to_string(level_);
    }

private:
    AlgebraPtr alg_;
    Scalar level_;
};

// Partial derivatives of f grouped by generator: result[i] lists (m, df/du_i^(m)).
std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, DiffPoly>>> partials(const DiffPoly& f)
{
    std::map<std::uint32_t, std::vector<std::pair<std::uint32_t, DiffPoly>>> out;
    for (DVar v : f.variables()) {
        DiffPoly p = f.partial(v);
        if (!p.is_zero())
            out[v.gen].emplace_back(v.order, std::move(p));
    }
    return out;
}

using BiPoly = std::map<std::pair<std::size_t, std::size_t>, DiffPoly>;

void bi_add(BiPoly& p, std::size_t l, std::size_t m, const DiffPoly& c)
{
    if (c.is_zero())
        return;
    auto& slot = p[{l, m}];
    slot += c;
    if (slot.is_zero())
        p.erase({l, m});
}

// {a_lambda (sum_k mu^k y_k)} as lambda^l mu^k terms.
BiPoly bracket_into_mu(const PoissonContext& ctx, const DiffPoly& a, const LambdaPoly& y, bool swap)
{
    BiPoly out;
    for (std::size_t k = 0; k < y.coeffs().size(); ++k) {
        LambdaPoly inner = lambda_bracket(ctx, a, y.coeffs()[k]);
        for (std::size_t l = 0; l < inner.coeffs().size(); ++l)
            swap ? bi_add(out, k, l, inner.coeffs()[l]) : bi_add(out, l, k, inner.coeffs()[l]);
    }
    return out;
}

std::string bi_failure(const BiPoly& d)
{
    const auto& [k, c] = *d.begin();
    return "coefficient of λ^" + std::to_string(k.first) + " μ^" + std::to_string(k.second) + ": " + c.to_string();
}

std::optional<std::string> compare(const LambdaPoly& lhs, const LambdaPoly& rhs, const std::string& what)
{
    LambdaPoly d = lhs - rhs;
    if (d.is_zero())
        return std::nullopt;
    return what + ": difference " + d.to_string();
}

DiffPoly random_diffpoly(const PoissonContext& ctx, std::mt19937& rng, std::size_t max_degree, std::size_t max_order)
{
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<std::size_t> gen(0, ctx.generators() - 1);
    std::uniform_int_distribution<std::size_t> order(0, max_order);
    std::uniform_int_distribution<std::size_t> degree(0, max_degree);
    std::uniform_int_distribution<int> nterms(1, 3);
    DiffPoly out = DiffPoly(0).with_names(ctx.names());
    for (int t = nterms(rng); t > 0; --t) {
        DiffPoly term = DiffPoly(Scalar(coeff(rng))).with_names(ctx.names());
        for (std::size_t d = degree(rng); d > 0; --d)
            term = term * ctx.generator(gen(rng), order(rng));
        out += term;
    }
    if (out.is_zero())
        out = ctx.generator(gen(rng), order(rng));
    return out;
}

} // namespace

ContextPtr virasoro_context(const Scalar& a, const Scalar& c, const std::string& name)
{
    return std::make_shared<VirasoroContext>(a, c, name);
}

ContextPtr current_algebra(AlgebraPtr alg, const Scalar& level) { return std::make_shared<CurrentContext>(std::move(alg), level); }

Scalar default_level() { return 1; }

LambdaPoly lambda_bracket(const PoissonContext& ctx, const DiffPoly& f, const DiffPoly& g)
{
    auto fp = partials(f);
    auto gp = partials(g);
    LambdaPoly out;
    if (fp.empty() || gp.empty())
        return out;
    for (const auto& [i, flist] : fp) {
        // W_i = sum_m (-lambda - d)^m df/du_i^(m)
        LambdaPoly w;
        for (const auto& [m, df] : flist)
            w += LambdaPoly(df).neg_shift_power(m);
        for (const auto& [j, glist] : gp) {
            LambdaPoly z = ctx.generator_bracket(i, j).apply_shifted(w);
            if (z.is_zero())
                continue;
            for (const auto& [n, dg] : glist)
                out += dg * z.shift_power(n);
        }
    }
    return out;
}

DiffPoly hamiltonian_flow(const PoissonContext& ctx, const DiffPoly& h, const DiffPoly& g)
{
    // The master formula at lambda = 0:
    // sum dg/du_j^(n) d^n sum_i H_ij(d) delta h / delta u_i.
    auto gp = partials(g);
    DiffPoly out = DiffPoly(0).with_names(ctx.names());
    if (gp.empty())
        return out;
    std::map<std::uint32_t, DiffPoly> delta;
    for (DVar v : h.variables())
        if (!delta.count(v.gen))
            delta.emplace(v.gen, variational_derivative(h, v.gen));
    for (const auto& [j, glist] : gp) {
        DiffPoly x;
        for (const auto& [i, dh] : delta) {
            if (dh.is_zero())
                continue;
            LambdaPoly b = ctx.generator_bracket(i, j);
            const auto& c = b.coeffs();
            for (std::size_t k = 0; k < c.size(); ++k)
                if (!c[k].is_zero())
                    x += c[k] * dh.derivative(k);
        }
        if (x.is_zero())
            continue;
        for (const auto& [n, dg] : glist)
            out += dg * x.derivative(n);
    }
    return out;
}

DiffPoly variational_derivative(const DiffPoly& f, std::size_t gen)
{
    DiffPoly out = DiffPoly(0).with_names(f.names());
    auto top = f.max_order(static_cast<std::uint32_t>(gen));
    if (!top)
        return out;
    for (std::uint32_t n = 0; n <= *top; ++n) {
        DiffPoly p = f.partial(DVar{static_cast<std::uint32_t>(gen), n});
        if (p.is_zero())
            continue;
        p = p.derivative(n);
        out += n % 2 == 0 ? p : -p;
    }
    return out;
}

bool is_trivial_functional(const DiffPoly& f, std::size_t generators)
{
    for (std::size_t i = 0; i < generators; ++i)
        if (!variational_derivative(f, i).is_zero())
            return false;
    return true;
}

bool involution_check(const PoissonContext& ctx, const DiffPoly& h1, const DiffPoly& h2)
{
    return is_trivial_functional(hamiltonian_flow(ctx, h1, h2), ctx.generators());
}

Reduction::Reduction(GradingData grading, const Scalar& level)
    : grading_(std::move(grading)), level_(level), ctx_(current_algebra(grading_.algebra, level))
{
}

DiffPoly Reduction::rho(const DiffPoly& p) const
{
    return p.substitute([this](DVar v) -> std::optional<DiffPoly> {
        if (grading_.degree[v.gen] <= Scalar(1) / 2)
            return std::nullopt;
        if (v.order > 0)
            return DiffPoly(0);
        return DiffPoly(grading_.f_pairing(v.gen));
    });
}

LambdaPoly Reduction::rho(const LambdaPoly& p) const
{
    return p.map([this](const DiffPoly& c) { return rho(c); });
}

std::optional<std::string> Reduction::membership_failure(const DiffPoly& g) const
{
    for (DVar v : g.variables())
        if (grading_.degree[v.gen] > Scalar(1) / 2)
            return "uses " + grading_.algebra->label(v.gen) + " outside g_{<=1/2}";
    for (std::size_t a : grading_.indices_positive())
        if (!rho(lambda_bracket(*ctx_, ctx_->generator(a), g)).is_zero())
            return grading_.algebra->label(a);
    return std::nullopt;
}

bool Reduction::is_member(const DiffPoly& g) const { return !membership_failure(g); }

DiffPoly Reduction::reduced_flow(const DiffPoly& h, const DiffPoly& g) const
{
    return rho(hamiltonian_flow(*ctx_, h, g));
}

LambdaPoly Reduction::reduced_bracket_unchecked(const DiffPoly& g, const DiffPoly& h) const
{
    return rho(lambda_bracket(*ctx_, g, h));
}

LambdaPoly Reduction::reduced_bracket(const DiffPoly& g, const DiffPoly& h) const
{
    for (const DiffPoly* p : {&g, &h})
        if (auto bad = membership_failure(*p))
            throw InvalidArgument("reduced bracket needs W-algebra elements: " + p->to_string() + " fails at " + *bad);
    return reduced_bracket_unchecked(g, h);
}

bool classical_w_membership(const Reduction& r, const DiffPoly& g) { return r.is_member(g); }

namespace axioms {

std::optional<std::string> sesquilinearity(const PoissonContext& ctx, const DiffPoly& a, const DiffPoly& b)
{
    LambdaPoly ab = lambda_bracket(ctx, a, b);
    // {da_lambda b} = -lambda {a_lambda b}
    if (auto f = compare(lambda_bracket(ctx, a.derivative(), b), -ab.times_lambda(), "left sesquilinearity"))
        return f;
    // {a_lambda db} = (lambda + d) {a_lambda b}
    return compare(lambda_bracket(ctx, a, b.derivative()), ab.shift_power(1), "right sesquilinearity");
}

std::optional<std::string> skewsymmetry(const PoissonContext& ctx, const DiffPoly& a, const DiffPoly& b)
{
    // {b_lambda a} = -{a_{-lambda-d} b}
    return compare(lambda_bracket(ctx, b, a), -lambda_bracket(ctx, a, b).skew_substitute(), "skewsymmetry");
}

std::optional<std::string> jacobi(const PoissonContext& ctx, const DiffPoly& a, const DiffPoly& b, const DiffPoly& c)
{
    // {a_lambda {b_mu c}} - {b_mu {a_lambda c}} = {{a_lambda b}_{lambda+mu} c}
    BiPoly lhs = bracket_into_mu(ctx, a, lambda_bracket(ctx, b, c), false);
    BiPoly second = bracket_into_mu(ctx, b, lambda_bracket(ctx, a, c), true);
    for (const auto& [k, v] : second)
        bi_add(lhs, k.first, k.second, -v);

    BiPoly rhs;
    LambdaPoly ab = lambda_bracket(ctx, a, b);
    for (std::size_t l = 0; l < ab.coeffs().size(); ++l) {
        if (ab.coeffs()[l].is_zero())
            continue;
        LambdaPoly r = lambda_bracket(ctx, ab.coeffs()[l], c);
        for (std::size_t m = 0; m < r.coeffs().size(); ++m)
            for (std::size_t t = 0; t <= m; ++t)
                bi_add(rhs, l + t, m - t, r.coeffs()[m] * binomial(static_cast<long>(m), static_cast<long>(t)));
    }
    for (const auto& [k, v] : rhs)
        bi_add(lhs, k.first, k.second, -v);
    if (lhs.empty())
        return std::nullopt;
    return "Jacobi identity: " + bi_failure(lhs);
}

std::optional<std::string> left_leibniz(const PoissonContext& ctx, const DiffPoly& a, const DiffPoly& b, const DiffPoly& c)
{
    // {a_lambda bc} = {a_lambda b} c + {a_lambda c} b
    LambdaPoly rhs = c * lambda_bracket(ctx, a, b) + b * lambda_bracket(ctx, a, c);
    return compare(lambda_bracket(ctx, a, b * c), rhs, "left Leibniz rule");
}

std::optional<std::string> right_leibniz(const PoissonContext& ctx, const DiffPoly& a, const DiffPoly& b, const DiffPoly& c)
{
    // {ab_lambda c} = {a_{lambda+d} c}_-> b + {b_{lambda+d} c}_-> a
    LambdaPoly rhs = lambda_bracket(ctx, a, c).apply_shifted(LambdaPoly(b)) +
                     lambda_bracket(ctx, b, c).apply_shifted(LambdaPoly(a));
    return compare(lambda_bracket(ctx, a * b, c), rhs, "right Leibniz rule");
}

} // namespace axioms

AxiomReport random_axiom_suite(const PoissonContext& ctx, std::size_t instances, unsigned seed, std::size_t max_degree,
                               std::size_t max_order)
{
    std::mt19937 rng(seed);
    AxiomReport rep;
    for (std::size_t n = 0; n < instances && rep.holds(); ++n) {
        DiffPoly a = random_diffpoly(ctx, rng, max_degree, max_order);
        DiffPoly b = random_diffpoly(ctx, rng, max_degree, max_order);
        DiffPoly c = random_diffpoly(ctx, rng, max_degree, max_order);
        ++rep.instances;
        std::optional<std::string> f;
        if (!f)
            f = axioms::sesquilinearity(ctx, a, b);
        if (!f)
            f = axioms::skewsymmetry(ctx, a, b);
        if (!f)
            f = axioms::jacobi(ctx, a, b, c);
        if (!f)
            f = axioms::left_leibniz(ctx, a, b, c);
        if (!f)
            f = axioms::right_leibniz(ctx, a, b, c);
        rep.checks += 5;
        if (f)
            rep.first_failure = *f + " for a = " + a.to_string() + ", b = " + b.to_string() + ", c = " + c.to_string();
    }
    return rep;
}

} // namespace wlax
