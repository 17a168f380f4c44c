#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wlax/liealg.hpp"
#include "wlax/series_matrix.hpp"
#include "wlax/uea.hpp"

namespace wlax {

using UeaSeries = LaurentSeries<PBWPoly>;
using UeaSeriesMatrix = SeriesMatrix<UeaSeries>;

/// z id_V + sum_i u_i U^i over U(g), in the standard basis of V.
UeaSeriesMatrix operator_A(const EnvelopingPtr& env, int trunc = kDefaultTrunc);

/// z id_V + F + sum_{i in I_{<=1/2}} u_i U^i, written in the weight basis of
/// V. `env` must be built over grading.algebra.
UeaSeriesMatrix operator_A_rho(const GradingData& grading, const EnvelopingPtr& env, int trunc = kDefaultTrunc);

/// The shift matrix D as a constant series matrix in the weight basis.
UeaSeriesMatrix shift_matrix(const GradingData& grading, int trunc = kDefaultTrunc);

struct LaxFiniteOp {
    /// chi o L(z), an n x n matrix on V[-d/2]; coefficients are canonical
    /// quotient representatives.
    UeaSeriesMatrix op;
    GradingData grading;
    EnvelopingPtr env;
    int trunc;
    std::size_t n;
    /// Weight-basis indices spanning V[d/2] and V[-d/2].
    std::vector<std::size_t> top, bottom;
    /// Form on V[-d/2] given by <chi^{-1} v | w>, when g carries a form and
    /// the induced pairing is (skew)symmetric.
    std::optional<Matrix> form;
    std::optional<int> epsilon;
};

/// L(z) = |A^rho(z) + D|_{V[d/2], V[-d/2]} 1-bar, computed to order `trunc`.
/// `chi` permutes the weight basis of V[-d/2] (identity when empty). Every
/// coefficient is checked for ad g_{>0}-invariance; a failure throws
/// ComputationError.
LaxFiniteOp lax_finite(const LieAlgebra& alg, const Sl2Triple& triple, int trunc = kDefaultTrunc,
                       QuasidetRoute route = QuasidetRoute::explicit_formula,
                       const std::vector<std::size_t>& chi = {}, bool assert_invariance = true);

struct YangianParams {
    Scalar alpha, beta, gamma;
};

/// Table rows for A(z) and for L(z) (gamma = (eps - N + n)/2 for so/sp).
YangianParams yangian_params_for_A(const LieAlgebra& alg);
YangianParams yangian_params_for_L(const LieAlgebra& alg, std::size_t n);

struct CheckReport {
    bool holds = true;
    /// Lowest verified powers (z, w); nullopt means no truncation.
    std::optional<int> z_from, w_from;
    std::optional<std::string> first_failure;
    std::size_t coefficients_checked = 0;
};

/// Expands both sides of the generalized (alpha, beta, gamma)-Yangian
/// identity in U(g)[[z^-1, w^-1]][z, w] (x) End V (x) End V. First End leg
/// carries z, the second carries w. `finalize` maps each coefficient of the
/// difference before the zero test (e.g. the 1-bar reduction).
CheckReport check_yangian(const UeaSeriesMatrix& op, const YangianParams& p, const std::optional<Matrix>& form,
                          const std::function<PBWPoly(const PBWPoly&)>& finalize = {});

/// A^dagger(-z) - eps A(z) + (A(z) - A(-z)) / (4z), reported as a series
/// difference.
CheckReport check_symmetry_condition(const UeaSeriesMatrix& op, const Matrix& form, int epsilon,
                                     const std::function<PBWPoly(const PBWPoly&)>& finalize = {});

} // namespace wlax
