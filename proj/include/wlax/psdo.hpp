#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <optional>
#include <vector>

#include "wlax/diffpoly.hpp"
#include "wlax/pva.hpp"
#include "wlax/series_matrix.hpp"

namespace wlax {

/// Truncated pseudodifferential symbol sum_k a_k d^k.
using PsiDO = SymbolSeries<DiffPoly, DerivationVariable>;
using PsiDOMatrix = SeriesMatrix<PsiDO>;

PsiDO compose(const PsiDO& a, const PsiDO& b);
PsiDOMatrix compose(const PsiDOMatrix& a, const PsiDOMatrix& b);

/// Formal adjoint (a d^n)^* = (-d)^n o a.
PsiDO adjoint(const PsiDO& p);
/// Entrywise adjoint composed with the transpose.
PsiDOMatrix adjoint(const PsiDOMatrix& p);
/// Form adjoint G^{-1} P^T G of a matrix of symbols (no formal adjoint).
PsiDOMatrix form_dagger(const PsiDOMatrix& p, const Matrix& form);

/// Differential part (powers >= 0). Needs the symbol known down to power 0.
PsiDO positive_part(const PsiDO& p);
PsiDOMatrix positive_part(const PsiDOMatrix& p);

/// Coefficient of d^-1; the symbol must be known down to power -1.
DiffPoly residue(const PsiDO& p);
DiffPoly residue_trace(const PsiDOMatrix& p);

/// B with B^K = L, for L = d^{Km} + lower terms (1 x 1 case).
PsiDO kth_root(const PsiDO& l, std::size_t k);
PsiDOMatrix kth_root(const PsiDOMatrix& l, std::size_t k);

PsiDO power(const PsiDO& b, std::size_t n);

struct LaxAffineOp {
    /// L(d), an n x n matrix of symbols; rows index V[d/2], columns V[-d/2].
    PsiDOMatrix op;
    std::shared_ptr<const Reduction> reduction;
    int trunc;
    std::size_t n;
    std::vector<std::size_t> top, bottom;
    /// Pairing of V[d/2] with V[-d/2] induced by the form of g, when present.
    std::optional<Matrix> form;
};

/// d id + F + sum_{i in I_{<=1/2}} u_i U^i in the weight basis.
PsiDOMatrix operator_A_rho_affine(const GradingData& grading, const NamesPtr& names, int trunc = kDefaultTrunc);

/// L(d) = |A^rho(d)|_{V[d/2], V[-d/2]} to order `trunc`. With
/// `assert_membership`, every coefficient is checked to lie in W(g, f).
LaxAffineOp lax_affine(const LieAlgebra& alg, const Sl2Triple& triple, int trunc = kDefaultTrunc,
                       const Scalar& level = default_level(), bool assert_membership = true,
                       QuasidetRoute route = QuasidetRoute::explicit_formula);

struct HierarchyDensity {
    std::size_t n = 0;
    std::size_t k = 1;
    DiffPoly density;
};

/// h_{n,B} = -K/n Res tr(B^n), B the K-th root of L; h_0 = 0.
HierarchyDensity hierarchy_density(const PsiDOMatrix& l, std::size_t k, std::size_t n);

/// [alpha (B^n)_+ - beta ((B^n)^{*dagger})_+, L] as a symbol. `form` is
/// needed when beta != 0.
PsiDOMatrix lax_flow(const PsiDOMatrix& l, std::size_t k, std::size_t n, const Scalar& alpha = 1, const Scalar& beta = 0,
                     const std::optional<Matrix>& form = std::nullopt);

/// (h, a) -> {int h, a}.
using FlowFn = std::function<DiffPoly(const DiffPoly&, const DiffPoly&)>;

FlowFn flow_of(ContextPtr ctx);
FlowFn flow_of(std::shared_ptr<const Reduction> red);

struct FlowReport {
    bool holds = true;
    std::optional<std::string> first_failure;
    /// Lowest power of d compared.
    int from = 0;
};

/// Compares {int h_{n,B}, a} with the matching symbol coefficient of the
/// Lax flow for every coefficient a of L known to order `trunc`.
FlowReport check_flow_consistency(const PsiDOMatrix& l, std::size_t k, std::size_t n, const FlowFn& flow,
                                  const Scalar& alpha = 1, const Scalar& beta = 0,
                                  const std::optional<Matrix>& form = std::nullopt);

/// {u_lambda u} = -(2 lambda + d) u - 1/2 lambda^3: the reduced sl2 bracket
/// written for L = d^2 + u (u = -w).
ContextPtr kdv_context();
/// d^2 + u over kdv_context().
PsiDOMatrix kdv_operator(int trunc = kDefaultTrunc);

} // namespace wlax
