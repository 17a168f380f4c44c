#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wlax/diffpoly.hpp"
#include "wlax/liealg.hpp"

namespace wlax {

/// A differential polynomial algebra with a declared lambda-bracket on
/// its generators, extended to everything by the master formula.
class PoissonContext {
public:
    virtual ~PoissonContext() = default;

    const NamesPtr& names() const { return names_; }
    std::size_t generators() const { return names_->size(); }
    DiffPoly generator(std::size_t i, std::size_t order = 0) const { return DiffPoly::variable(names_, i, order); }

    /// {u_i lambda u_j}.
    virtual LambdaPoly generator_bracket(std::size_t i, std::size_t j) const = 0;
    virtual std::string describe() const = 0;

protected:
    explicit PoissonContext(NamesPtr names) : names_(std::move(names)) {}

private:
    NamesPtr names_;
};

using ContextPtr = std::shared_ptr<const PoissonContext>;

/// Single generator `name` with {u_lambda u} = a (2 lambda + d) u + c lambda^3.
/// a = c = 1 is the Virasoro-Magri PVA.
ContextPtr virasoro_context(const Scalar& a = 1, const Scalar& c = 1, const std::string& name = "u");

/// V(g) with {a_lambda b} = [a, b] + (a|b) k lambda, generators labelled by
/// the algebra basis.
ContextPtr current_algebra(AlgebraPtr alg, const Scalar& level = 1);

/// The level used throughout unless overridden.
Scalar default_level();

/// Master formula:
/// {f_lambda g} = sum (dg/du_j^(n)) (lambda+d)^n {u_i_{lambda+d} u_j}_-> (-lambda-d)^m df/du_i^(m).
LambdaPoly lambda_bracket(const PoissonContext& ctx, const DiffPoly& f, const DiffPoly& g);

/// {h_lambda g} at lambda = 0, i.e. {int h, g}.
DiffPoly hamiltonian_flow(const PoissonContext& ctx, const DiffPoly& h, const DiffPoly& g);

/// Euler operator sum_n (-d)^n df/du_gen^(n).
DiffPoly variational_derivative(const DiffPoly& f, std::size_t gen);

/// int f = 0: every variational derivative vanishes (f is a total
/// derivative plus a constant).
bool is_trivial_functional(const DiffPoly& f, std::size_t generators);

/// {int h1, int h2} = 0.
bool involution_check(const PoissonContext& ctx, const DiffPoly& h1, const DiffPoly& h2);

/// Classical Hamiltonian reduction for V(g) with a good grading. Polynomials
/// use the generator indices of grading.algebra.
class Reduction {
public:
    Reduction(GradingData grading, const Scalar& level = default_level());

    const GradingData& grading() const { return grading_; }
    const PoissonContext& context() const { return *ctx_; }
    const ContextPtr& context_ptr() const { return ctx_; }
    const Scalar& level() const { return level_; }

    /// Substitutes u_n by (f|u_n) and its derivatives by 0 for n in g_{>1/2}.
    DiffPoly rho(const DiffPoly& p) const;
    LambdaPoly rho(const LambdaPoly& p) const;

    /// True iff rho{a_lambda g} = 0 for every basis element a of g_{>0}.
    bool is_member(const DiffPoly& g) const;
    /// First offending basis label, if any.
    std::optional<std::string> membership_failure(const DiffPoly& g) const;

    /// rho{g_lambda h}; both arguments must be members.
    LambdaPoly reduced_bracket(const DiffPoly& g, const DiffPoly& h) const;
    /// rho{int h, g}.
    DiffPoly reduced_flow(const DiffPoly& h, const DiffPoly& g) const;
    /// rho{g_lambda h} without the membership precondition.
    LambdaPoly reduced_bracket_unchecked(const DiffPoly& g, const DiffPoly& h) const;

private:
    GradingData grading_;
    Scalar level_;
    ContextPtr ctx_;
};

bool classical_w_membership(const Reduction& r, const DiffPoly& g);

/// PVA axioms as identities on concrete elements. Each returns a
/// description of the failure, or nullopt when the identity holds.
namespace axioms {
std::optional<std::string> sesquilinearity(const PoissonContext& ctx, const DiffPoly& a, const DiffPoly& b);
std::optional<std::string> skewsymmetry(const PoissonContext& ctx, const DiffPoly& a, const DiffPoly& b);
std::optional<std::string> jacobi(const PoissonContext& ctx, const DiffPoly& a, const DiffPoly& b, const DiffPoly& c);
std::optional<std::string> left_leibniz(const PoissonContext& ctx, const DiffPoly& a, const DiffPoly& b, const DiffPoly& c);
std::optional<std::string> right_leibniz(const PoissonContext& ctx, const DiffPoly& a, const DiffPoly& b, const DiffPoly& c);
} // namespace axioms

struct AxiomReport {
    std::size_t instances = 0;
    std::size_t checks = 0;
    std::optional<std::string> first_failure;
    bool holds() const { return !first_failure; }
};

/// Runs all five axioms on `instances` random triples of differential
/// polynomials (degree <= max_degree, derivative order <= max_order).
AxiomReport random_axiom_suite(const PoissonContext& ctx, std::size_t instances, unsigned seed,
                               std::size_t max_degree = 3, std::size_t max_order = 2);

} // namespace wlax
