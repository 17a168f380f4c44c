#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "wlax/finw.hpp"
#include "wlax/psdo.hpp"

namespace wlax {

/// (a, b) -> {a_lambda b}.
using BracketFn = std::function<LambdaPoly(const DiffPoly&, const DiffPoly&)>;

BracketFn bracket_of(ContextPtr ctx);
/// rho{a_lambda b} in the classical W-algebra.
BracketFn bracket_of(std::shared_ptr<const Reduction> red);

struct AdlerParams {
    Scalar alpha = 1, beta = 0, gamma = 0;
};

/// gl_N: (1, 0, 0); sl_N: (1, 0, 1/N); so_N, sp_N: (1/2, 1/2, 0).
AdlerParams adler_params_for(const LieAlgebra& alg);

/// Compares {L_ij(z)_lambda L_hk(w)} with the five-term Adler expression for
/// a matrix differential operator L. The geometric series in z^-1 are
/// expanded far enough that every coefficient of z^a with a >= trunc is
/// exact; `z_from` reports that bound. `form` is needed when beta != 0.
CheckReport check_adler(const PsiDOMatrix& l, const BracketFn& bracket, const AdlerParams& params,
                        int trunc = kDefaultTrunc, const std::optional<Matrix>& form = std::nullopt);

} // namespace wlax
