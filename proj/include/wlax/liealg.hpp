#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wlax/matrix.hpp"
#include "wlax/scalar.hpp"

namespace wlax {

enum class AlgebraKind { gl, sl, so, sp };

std::string to_string(AlgebraKind k);
AlgebraKind parse_algebra_kind(const std::string& s);

/// Coefficient vector of a Lie algebra element over the algebra basis.
using Coeffs = std::vector<Scalar>;

/// Sparse expansion sum_k c_k u_k.
using SparseCoeffs = std::vector<std::pair<std::size_t, Scalar>>;

/// A matrix Lie algebra g in End(V), V = F^N the standard representation,
/// with a fixed basis u_i, its structure constants, the trace form
/// (a|b) = tr(AB) and the dual basis u^i with (u_i|u^j) = delta_ij.
class LieAlgebra {
public:
    /// Builds the algebra spanned by `basis` (must be linearly independent
    /// and closed under the commutator). Throws InvalidArgument otherwise,
    /// or when the trace form is degenerate on the span.
    LieAlgebra(AlgebraKind kind, std::size_t n, std::vector<std::string> labels,
               std::vector<Matrix> basis, std::optional<int> epsilon = std::nullopt,
               std::optional<Matrix> form = std::nullopt);

    AlgebraKind kind() const { return kind_; }
    std::size_t N() const { return n_; }
    std::size_t dim() const { return basis_.size(); }

    const std::string& label(std::size_t i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }
    const Matrix& rep(std::size_t i) const { return basis_[i]; }
    const Matrix& dual_rep(std::size_t i) const { return dual_[i]; }
    /// Coordinates of u^i over the basis.
    const Coeffs& dual_coeffs(std::size_t i) const { return dual_coeffs_[i]; }

    const std::optional<int>& epsilon() const { return epsilon_; }
    const std::optional<Matrix>& form() const { return form_; }

    /// [u_i, u_j] = sum_k c_ij^k u_k.
    const SparseCoeffs& bracket(std::size_t i, std::size_t j) const { return structure_[i * dim() + j]; }
    Coeffs bracket(const Coeffs& a, const Coeffs& b) const;

    Scalar trace_form(std::size_t i, std::size_t j) const { return gram_(i, j); }
    Scalar trace_form(const Coeffs& a, const Coeffs& b) const;
    const Matrix& gram() const { return gram_; }

    Matrix element(const Coeffs& c) const;
    /// Coordinates of a matrix in the span of the basis; nullopt if outside.
    std::optional<Coeffs> coordinates(const Matrix& m) const;

    /// Form adjoint A^dagger = G^{-1} A^T G for <v|w> = v^T G w.
    Matrix adjoint(const Matrix& a) const;

private:
    AlgebraKind kind_;
    std::size_t n_;
    std::vector<std::string> labels_;
    std::vector<Matrix> basis_;
    std::vector<Matrix> dual_;
    std::vector<Coeffs> dual_coeffs_;
    std::vector<SparseCoeffs> structure_;
    Matrix gram_;
    std::optional<int> epsilon_;
    std::optional<Matrix> form_;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

/// gl_N, sl_N, so_N (form = identity) or sp_N (form = [[0, I], [-I, 0]]).
/// A custom non-degenerate form of the right symmetry may be given for so/sp.
AlgebraPtr build_algebra(AlgebraKind kind, std::size_t n, std::optional<Matrix> form = std::nullopt);

struct Sl2Triple {
    Coeffs e, x, f;
    Matrix E, X, F;
};

/// Jordan-block triple for gl/sl: f is the lower shift within each block.
Sl2Triple sl2_from_partition(const LieAlgebra& alg, const std::vector<std::size_t>& partition);

/// Validates user supplied matrices against the sl2 relations.
Sl2Triple triple_from_matrices(const LieAlgebra& alg, const Matrix& e, const Matrix& x, const Matrix& f);

/// The zero triple (f = 0, x = 0).
Sl2Triple zero_triple(const LieAlgebra& alg);

struct GradingData {
    /// Algebra with an ad x-homogeneous basis sorted by degree; this is the
    /// PBW order used downstream.
    AlgebraPtr algebra;
    Sl2Triple triple;
    std::vector<Scalar> degree;
    std::map<Scalar, std::vector<std::size_t>> by_degree;

    /// Columns are X-eigenvectors of V; `weights[k]` is the eigenvalue of column k.
    Matrix weight_basis;
    std::vector<Scalar> weights;
    std::map<Scalar, std::vector<std::size_t>> v_grading;
    Scalar half_d;
    /// Largest X-eigenvalue times two.
    Scalar d() const { return 2 * half_d; }

    /// Basis of g^f = {a : [a, f] = 0}, as coefficient vectors.
    std::vector<Coeffs> centralizer;
    /// D = -sum_{i in I_{>=1}} U^i U_i.
    Matrix shift;

    std::vector<std::size_t> indices_where(bool (*pred)(const Scalar&)) const;
    std::vector<std::size_t> indices_le_half() const;
    std::vector<std::size_t> indices_ge_one() const;
    std::vector<std::size_t> indices_positive() const;

    /// (f | u_i).
    Scalar f_pairing(std::size_t i) const;
};

GradingData grading_data(const LieAlgebra& alg, const Sl2Triple& triple);

Scalar trace_form(const LieAlgebra& alg, const Coeffs& a, const Coeffs& b);

/// Element of End V (x) End V as an N^2 x N^2 matrix, pair index (i, h) -> i*N + h.
struct OmegaTensor {
    enum class Variant { plain, dagger };
    Variant variant;
    Matrix matrix;
};

/// Plain permutation map on V (x) V and, when a form is present, Omega^dagger.
std::pair<OmegaTensor, std::optional<OmegaTensor>> omega_maps(const LieAlgebra& alg);

OmegaTensor omega_plain(std::size_t n);
/// (Omega')^dagger (x) Omega'' for the form <v|w> = v^T G w.
OmegaTensor omega_dagger(const Matrix& form);

} // namespace wlax
