#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "wlax/adler.hpp"
#include "wlax/finw.hpp"
#include "wlax/psdo.hpp"
#include "wlax/pva.hpp"

namespace wlax {

/// Keys keep insertion order so documents are byte-stable.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const Scalar& s);
Json to_json(const Matrix& m);
/// Dense matrix of rational strings ("p/q") or integers.
Matrix matrix_from_json(const Json& j);

/// kind, N, labels, structure constants as [i, j, k, "c"], rep matrices.
Json to_json(const LieAlgebra& alg);

/// Degrees of the ad x grading and the V grading.
Json grading_json(const GradingData& g);

/// {"e": [[...]], "x": [[...]], "f": [[...]]} validated by triple_from_matrices.
Sl2Triple triple_from_json(const LieAlgebra& alg, const Json& j);

template <class C, class V>
Json series_json(const SymbolSeries<C, V>& s)
{
    Json terms = Json::array();
    for (const auto& [k, c] : s.terms())
        terms.push_back(Json::array({k, coeff_traits<C>::to_string(c)}));
    return terms;
}

template <class Entry>
Json series_matrix_json(const SeriesMatrix<Entry>& m)
{
    Json j;
    j["shape"] = Json::array({m.rows(), m.cols()});
    j["truncOrder"] = m.min_trunc();
    int p = m.precision();
    j["precision"] = p == kExact ? Json(nullptr) : Json(p);
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k)
            row.push_back(series_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    j["entries"] = std::move(rows);
    return j;
}

/// {holds, window: [z, w], firstFailure, coefficientsChecked}.
Json to_json(const CheckReport& r);
Json to_json(const FlowReport& r);
Json to_json(const AxiomReport& r);
Json to_json(const LambdaPoly& p);

/// Top-level document {"schema": 1, "command": ..., ...body}.
Json document(const std::string& command, const Json& body);

} // namespace wlax
