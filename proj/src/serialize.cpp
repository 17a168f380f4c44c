#include "wlax/serialize.hpp"

namespace wlax {

namespace {

Json opt_int(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

Json opt_str(const std::optional<std::string>& v) { return v ? Json(*v) : Json(nullptr); }

} // namespace

Json to_json(const Scalar& s) { return to_string(s); }

Json to_json(const Matrix& m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k)
            row.push_back(to_string(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const Json& j)
{
    if (!j.is_array() || j.empty() || !j[0].is_array())
        throw InvalidArgument("matrix must be a non-empty array of rows");
    const std::size_t rows = j.size(), cols = j[0].size();
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw InvalidArgument("matrix rows must have equal length");
        for (std::size_t k = 0; k < cols; ++k) {
            const Json& v = j[i][k];
            if (v.is_string())
                m(i, k) = parse_scalar(v.get<std::string>());
            else if (v.is_number_integer())
                m(i, k) = Scalar(v.get<long>());
            else
                throw InvalidArgument("matrix entries must be integers or rational strings");
        }
    }
    return m;
}

Json to_json(const LieAlgebra& alg)
{
    Json j;
    j["kind"] = to_string(alg.kind());
    j["N"] = alg.N();
    j["dim"] = alg.dim();
    j["labels"] = alg.labels();
    if (alg.epsilon())
        j["epsilon"] = *alg.epsilon();
    if (alg.form())
        j["form"] = to_json(*alg.form());
    Json sc = Json::array();
    for (std::size_t a = 0; a < alg.dim(); ++a)
        for (std::size_t b = 0; b < alg.dim(); ++b)
            for (const auto& [k, c] : alg.bracket(a, b))
                sc.push_back(Json::array({a, b, k, to_string(c)}));
    j["structureConstants"] = std::move(sc);
    Json reps = Json::array();
    for (std::size_t a = 0; a < alg.dim(); ++a)
        reps.push_back(to_json(alg.rep(a)));
    j["rep"] = std::move(reps);
    return j;
}

Json grading_json(const GradingData& g)
{
    Json j;
    Json deg;
    for (std::size_t i = 0; i < g.algebra->dim(); ++i)
        deg[g.algebra->label(i)] = to_string(g.degree[i]);
    j["degree"] = std::move(deg);
    j["d"] = to_string(g.d());
    Json v = Json::array();
    for (const auto& [w, idx] : g.v_grading)
        v.push_back(Json::array({to_string(w), idx.size()}));
    j["vGrading"] = std::move(v);
    j["centralizerDim"] = g.centralizer.size();
    return j;
}

Sl2Triple triple_from_json(const LieAlgebra& alg, const Json& j)
{
    for (const char* key : {"e", "x", "f"})
        if (!j.contains(key))
            throw InvalidArgument(std::string("triple file lacks \"") + key + "\"");
    return triple_from_matrices(alg, matrix_from_json(j["e"]), matrix_from_json(j["x"]), matrix_from_json(j["f"]));
}

Json to_json(const CheckReport& r)
{
    Json j;
    j["holds"] = r.holds;
    j["window"] = Json::array({opt_int(r.z_from), opt_int(r.w_from)});
    j["firstFailure"] = opt_str(r.first_failure);
    j["coefficientsChecked"] = r.coefficients_checked;
    return j;
}

Json to_json(const FlowReport& r)
{
    Json j;
    j["holds"] = r.holds;
    j["window"] = Json::array({r.from});
    j["firstFailure"] = opt_str(r.first_failure);
    return j;
}

Json to_json(const AxiomReport& r)
{
    Json j;
    j["holds"] = r.holds();
    j["instances"] = r.instances;
    j["checks"] = r.checks;
    j["firstFailure"] = opt_str(r.first_failure);
    return j;
}

Json to_json(const LambdaPoly& p)
{
    Json terms = Json::array();
    for (std::size_t k = 0; k < p.coeffs().size(); ++k)
        if (!p.coeffs()[k].is_zero())
            terms.push_back(Json::array({k, p.coeffs()[k].to_string()}));
    return terms;
}

Json document(const std::string& command, const Json& body)
{
    Json j;
    j["schema"] = kSchemaVersion;
    j["command"] = command;
    for (const auto& [k, v] : body.items())
        j[k] = v;
    return j;
}

} // namespace wlax
