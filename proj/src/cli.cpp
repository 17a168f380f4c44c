#include "wlax/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "wlax/serialize.hpp"

namespace wlax {

namespace {

struct RunConfig {
    std::string command;
    std::string algebra;
    std::size_t n = 0;
    std::vector<std::size_t> partition;
    std::string triple_file;
    int trunc = kDefaultTrunc;
    std::string level = "1";
    std::string format = "text";
    std::string output;
    std::string alpha, beta, gamma;
    std::size_t index = 3;
    std::size_t max = 3;
    std::string context = "virasoro";
    std::size_t instances = 200;
    unsigned seed = 1;
};

struct Outcome {
    std::string text;
    Json json;
    bool ok = true;
};

struct Setup {
    AlgebraPtr alg;
    Sl2Triple triple;
    bool nilpotent = false;
};

Setup load_setup(const RunConfig& cfg)
{
    if (cfg.algebra.empty() || cfg.n == 0)
        throw InvalidArgument("--algebra and --n are required");
    AlgebraKind kind = parse_algebra_kind(cfg.algebra);
    std::optional<Json> file;
    if (!cfg.triple_file.empty()) {
        std::ifstream in(cfg.triple_file);
        if (!in)
            throw InvalidArgument("cannot read triple file " + cfg.triple_file);
        try {
            file = Json::parse(in);
        } catch (const Json::parse_error& e) {
            throw InvalidArgument("triple file is not valid JSON: " + std::string(e.what()));
        }
    }
    std::optional<Matrix> form;
    if (file && file->contains("form"))
        form = matrix_from_json((*file)["form"]);
    Setup s;
    s.alg = build_algebra(kind, cfg.n, form);
    if (file) {
        if (!cfg.partition.empty())
            throw InvalidArgument("give either --partition or --triple, not both");
        s.triple = triple_from_json(*s.alg, *file);
        s.nilpotent = true;
    } else if (!cfg.partition.empty()) {
        s.triple = sl2_from_partition(*s.alg, cfg.partition);
        s.nilpotent = true;
    } else {
        s.triple = zero_triple(*s.alg);
    }
    return s;
}

Scalar scalar_or(const std::string& text, const Scalar& fallback)
{
    return text.empty() ? fallback : parse_scalar(text);
}

std::string window_text(const CheckReport& r)
{
    if (!r.z_from && !r.w_from)
        return "exact";
    std::string s;
    if (r.z_from)
        s += "z >= " + std::to_string(*r.z_from);
    if (r.w_from)
        s += std::string(s.empty() ? "" : ", ") + "w >= " + std::to_string(*r.w_from);
    return s;
}

std::string report_text(const std::string& what, const CheckReport& r)
{
    std::ostringstream o;
    o << what << ": " << (r.holds ? "holds" : "FAILS") << "\n";
    o << "window: " << window_text(r) << "\n";
    o << "coefficients checked: " << r.coefficients_checked << "\n";
    if (r.first_failure)
        o << "first failure: " << *r.first_failure << "\n";
    return o.str();
}

std::string params_text(const Scalar& a, const Scalar& b, const Scalar& c)
{
    return "(" + to_string(a) + ", " + to_string(b) + ", " + to_string(c) + ")";
}

Json params_json(const Scalar& a, const Scalar& b, const Scalar& c)
{
    return Json::array({to_string(a), to_string(b), to_string(c)});
}

template <class Entry>
std::string matrix_text(const std::string& name, const SeriesMatrix<Entry>& m, const std::string& var)
{
    std::ostringstream o;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < m.cols(); ++k) {
            o << name;
            if (m.rows() > 1 || m.cols() > 1)
                o << "[" << i + 1 << "," << k + 1 << "]";
            o << "(" << var << ") = " << m(i, k).to_string() << "\n";
        }
    return o.str();
}

Outcome cmd_algebra(const RunConfig& cfg)
{
    Setup s = load_setup(cfg);
    Outcome out;
    std::ostringstream o;
    o << to_string(s.alg->kind()) << s.alg->N() << ": dim " << s.alg->dim() << "\n";
    o << "basis:";
    for (const auto& l : s.alg->labels())
        o << " " << l;
    o << "\n";
    out.json = to_json(*s.alg);
    if (s.nilpotent) {
        GradingData g = grading_data(*s.alg, s.triple);
        o << "degrees:";
        for (std::size_t i = 0; i < g.algebra->dim(); ++i)
            o << " " << g.algebra->label(i) << ":" << to_string(g.degree[i]);
        o << "\nd = " << to_string(g.d()) << ", dim g^f = " << g.centralizer.size() << "\n";
        out.json["grading"] = grading_json(g);
    }
    out.text = o.str();
    return out;
}

Outcome cmd_lax_finite(const RunConfig& cfg)
{
    Setup s = load_setup(cfg);
    LaxFiniteOp l = lax_finite(*s.alg, s.triple, cfg.trunc);
    Outcome out;
    out.text = matrix_text("L", l.op, "z");
    out.json["algebra"] = to_string(s.alg->kind()) + std::to_string(s.alg->N());
    out.json["n"] = l.n;
    out.json["operator"] = series_matrix_json(l.op);
    return out;
}

Outcome cmd_check_yangian(const RunConfig& cfg)
{
    Setup s = load_setup(cfg);
    Outcome out;
    CheckReport r;
    YangianParams p;
    std::string target;
    if (!s.nilpotent) {
        target = "A(z)";
        auto env = std::make_shared<const Enveloping>(s.alg);
        p = yangian_params_for_A(*s.alg);
        p = {scalar_or(cfg.alpha, p.alpha), scalar_or(cfg.beta, p.beta), scalar_or(cfg.gamma, p.gamma)};
        r = check_yangian(operator_A(env, cfg.trunc), p, s.alg->form());
    } else {
        target = "L(z)";
        LaxFiniteOp l = lax_finite(*s.alg, s.triple, cfg.trunc);
        p = yangian_params_for_L(*s.alg, l.n);
        p = {scalar_or(cfg.alpha, p.alpha), scalar_or(cfg.beta, p.beta), scalar_or(cfg.gamma, p.gamma)};
        if (p.beta != 0 && !l.form)
            throw InvalidArgument("beta != 0 needs a form on V[-d/2]");
        const GradingData& g = l.grading;
        r = check_yangian(l.op, p, l.form, [&g](const PBWPoly& x) { return reduce_mod_ideal(x, g).value; });
    }
    out.ok = r.holds;
    out.text = report_text("Yangian identity for " + target + " with " + params_text(p.alpha, p.beta, p.gamma), r);
    out.json["target"] = target;
    out.json["params"] = params_json(p.alpha, p.beta, p.gamma);
    out.json["report"] = to_json(r);
    return out;
}

Outcome cmd_check_symmetry(const RunConfig& cfg)
{
    Setup s = load_setup(cfg);
    Outcome out;
    CheckReport r;
    std::string target;
    if (!s.nilpotent) {
        if (!s.alg->form() || !s.alg->epsilon())
            throw InvalidArgument("the symmetry condition needs so or sp");
        target = "A(z)";
        auto env = std::make_shared<const Enveloping>(s.alg);
        r = check_symmetry_condition(operator_A(env, cfg.trunc), *s.alg->form(), *s.alg->epsilon());
    } else {
        LaxFiniteOp l = lax_finite(*s.alg, s.triple, cfg.trunc);
        if (!l.form || !l.epsilon)
            throw InvalidArgument("the symmetry condition needs a (skew)symmetric form on V[-d/2]");
        target = "L(z)";
        const GradingData& g = l.grading;
        r = check_symmetry_condition(l.op, *l.form, *l.epsilon,
                                     [&g](const PBWPoly& x) { return reduce_mod_ideal(x, g).value; });
    }
    out.ok = r.holds;
    out.text = report_text("symmetry condition for " + target, r);
    out.json["target"] = target;
    out.json["report"] = to_json(r);
    return out;
}

Outcome cmd_lax_affine(const RunConfig& cfg)
{
    Setup s = load_setup(cfg);
    LaxAffineOp l = lax_affine(*s.alg, s.triple, cfg.trunc, parse_scalar(cfg.level));
    Outcome out;
    out.text = matrix_text("L", l.op, "∂");
    out.json["algebra"] = to_string(s.alg->kind()) + std::to_string(s.alg->N());
    out.json["level"] = cfg.level;
    out.json["n"] = l.n;
    out.json["operator"] = series_matrix_json(l.op);
    return out;
}

Outcome cmd_check_adler(const RunConfig& cfg)
{
    Setup s = load_setup(cfg);
    LaxAffineOp l = lax_affine(*s.alg, s.triple, kDefaultTrunc, parse_scalar(cfg.level));
    AdlerParams p = adler_params_for(*s.alg);
    p = {scalar_or(cfg.alpha, p.alpha), scalar_or(cfg.beta, p.beta), scalar_or(cfg.gamma, p.gamma)};
    CheckReport r = check_adler(l.op, bracket_of(l.reduction), p, cfg.trunc, l.form);
    Outcome out;
    out.ok = r.holds;
    out.text = report_text("Adler identity with " + params_text(p.alpha, p.beta, p.gamma), r);
    out.json["params"] = params_json(p.alpha, p.beta, p.gamma);
    out.json["level"] = cfg.level;
    out.json["report"] = to_json(r);
    return out;
}

struct HierarchySource {
    PsiDOMatrix l;
    std::size_t k = 1;
    FlowFn flow;
    std::string name;
};

// KdV operator by default; otherwise L(d) of the given algebra, made monic.
HierarchySource hierarchy_source(const RunConfig& cfg)
{
    HierarchySource h;
    if (cfg.algebra.empty()) {
        h.l = kdv_operator(cfg.trunc);
        h.k = 2;
        h.flow = flow_of(kdv_context());
        h.name = "d^2 + u";
        return h;
    }
    Setup s = load_setup(cfg);
    LaxAffineOp l = lax_affine(*s.alg, s.triple, cfg.trunc, parse_scalar(cfg.level));
    h.l = l.op;
    h.flow = flow_of(l.reduction);
    h.name = "L(d)";
    if (l.n == 1) {
        auto lead = h.l(0, 0).unit_leading();
        if (!lead)
            throw InvalidArgument("L(d) has no scalar leading term");
        if (lead->second == -1)
            h.l(0, 0) = -h.l(0, 0);
        else if (lead->second != 1)
            throw InvalidArgument("L(d) is not monic up to sign");
        h.k = static_cast<std::size_t>(lead->first);
        h.name = lead->second == -1 ? "-L(d)" : "L(d)";
    }
    return h;
}

Outcome cmd_hierarchy(const RunConfig& cfg)
{
    HierarchySource h = hierarchy_source(cfg);
    Outcome out;
    std::ostringstream o;
    o << "densities h_n = -K/n Res B^n for " << h.name << ", K = " << h.k << "\n";
    Json list = Json::array();
    for (std::size_t n = 1; n <= cfg.max; ++n) {
        HierarchyDensity d = hierarchy_density(h.l, h.k, n);
        o << "h_" << n << " = " << d.density.to_string() << "\n";
        list.push_back(Json::array({n, d.density.to_string()}));
    }
    out.text = o.str();
    out.json["K"] = h.k;
    out.json["densities"] = std::move(list);
    return out;
}

Outcome cmd_flow(const RunConfig& cfg)
{
    HierarchySource h = hierarchy_source(cfg);
    PsiDOMatrix f = lax_flow(h.l, h.k, cfg.index);
    FlowReport r = check_flow_consistency(h.l, h.k, cfg.index, h.flow);
    Outcome out;
    out.ok = r.holds;
    std::ostringstream o;
    for (std::size_t i = 0; i < f.rows(); ++i)
        for (std::size_t k = 0; k < f.cols(); ++k) {
            o << "dL";
            if (f.rows() > 1)
                o << "[" << i + 1 << "," << k + 1 << "]";
            o << "/dt_" << cfg.index << " = " << f(i, k).to_string() << "\n";
        }
    o << "Hamiltonian consistency: " << (r.holds ? "holds" : "FAILS") << "\n";
    if (r.first_failure)
        o << "first failure: " << *r.first_failure << "\n";
    out.text = o.str();
    out.json["index"] = cfg.index;
    out.json["K"] = h.k;
    out.json["flow"] = series_matrix_json(f);
    out.json["report"] = to_json(r);
    return out;
}

Outcome cmd_kdv(const RunConfig&)
{
    ContextPtr vir = virasoro_context();
    DiffPoly u = vir->generator(0);
    DiffPoly rhs = hamiltonian_flow(*vir, u * u * (Scalar(1) / 2), u);
    Outcome out;
    out.text = "u_t = " + rhs.to_string() + "\n";
    out.json["equation"] = "u_t = " + rhs.to_string();
    out.json["hamiltonian"] = "1/2*u^2";
    return out;
}

Outcome cmd_axioms(const RunConfig& cfg)
{
    ContextPtr ctx;
    if (cfg.context == "virasoro") {
        ctx = virasoro_context();
    } else if (cfg.context == "current") {
        RunConfig c = cfg;
        if (c.algebra.empty()) {
            c.algebra = "gl";
            c.n = 2;
        }
        ctx = current_algebra(load_setup(c).alg, parse_scalar(cfg.level));
    } else {
        throw InvalidArgument("--context must be virasoro or current");
    }
    AxiomReport r = random_axiom_suite(*ctx, cfg.instances, cfg.seed);
    Outcome out;
    out.ok = r.holds();
    std::ostringstream o;
    o << "PVA axioms for " << ctx->describe() << ": " << (r.holds() ? "hold" : "FAIL") << "\n";
    o << "instances: " << r.instances << ", identities checked: " << r.checks << "\n";
    if (r.first_failure)
        o << "first failure: " << *r.first_failure << "\n";
    out.text = o.str();
    out.json["context"] = ctx->describe();
    out.json["report"] = to_json(r);
    return out;
}

void add_algebra_options(CLI::App* sub, RunConfig& cfg)
{
    sub->add_option("--algebra", cfg.algebra, "gl, sl, so or sp");
    sub->add_option("--n", cfg.n, "dimension N of the standard representation");
    sub->add_option("--partition", cfg.partition, "Jordan type of f (gl/sl), e.g. 2,1")->delimiter(',');
    sub->add_option("--triple", cfg.triple_file, "JSON file with e, x, f (and optionally form)");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Lax operators for finite and affine W-algebras"};
    app.name("wlax");
    app.require_subcommand(1);

    using Handler = std::function<Outcome(const RunConfig&)>;
    std::vector<std::pair<CLI::App*, Handler>> subs;
    auto add = [&](const std::string& name, const std::string& help, Handler h) {
        CLI::App* s = app.add_subcommand(name, help);
        s->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
        s->add_option("--output", cfg.output, "write the result to this file");
        subs.emplace_back(s, std::move(h));
        return s;
    };

    CLI::App* s = add("algebra", "describe an algebra and its grading", cmd_algebra);
    add_algebra_options(s, cfg);

    s = add("lax-finite", "quantum finite Lax operator L(z)", cmd_lax_finite);
    add_algebra_options(s, cfg);
    s->add_option("--trunc", cfg.trunc, "lowest power of z");

    s = add("check-yangian", "Yangian identity for A(z), or L(z) when f is given", cmd_check_yangian);
    add_algebra_options(s, cfg);
    s->add_option("--trunc", cfg.trunc, "lowest power of z");
    s->add_option("--alpha", cfg.alpha);
    s->add_option("--beta", cfg.beta);
    s->add_option("--gamma", cfg.gamma);

    s = add("check-symmetry", "symmetry condition for so/sp", cmd_check_symmetry);
    add_algebra_options(s, cfg);
    s->add_option("--trunc", cfg.trunc, "lowest power of z");

    s = add("lax-affine", "classical affine Lax operator L(d)", cmd_lax_affine);
    add_algebra_options(s, cfg);
    s->add_option("--trunc", cfg.trunc, "lowest power of d");
    s->add_option("--level", cfg.level, "level k of the current algebra");

    s = add("check-adler", "Adler identity for L(d)", cmd_check_adler);
    add_algebra_options(s, cfg);
    s->add_option("--trunc", cfg.trunc, "lowest power of z in the window");
    s->add_option("--level", cfg.level, "level k of the current algebra");
    s->add_option("--alpha", cfg.alpha);
    s->add_option("--beta", cfg.beta);
    s->add_option("--gamma", cfg.gamma);

    s = add("hierarchy", "Hamiltonian densities h_n (KdV unless an algebra is given)", cmd_hierarchy);
    add_algebra_options(s, cfg);
    s->add_option("--trunc", cfg.trunc, "lowest power of d");
    s->add_option("--level", cfg.level, "level k of the current algebra");
    s->add_option("--max", cfg.max, "largest n");

    s = add("flow", "Lax flow of index n and its Hamiltonian check", cmd_flow);
    add_algebra_options(s, cfg);
    s->add_option("--trunc", cfg.trunc, "lowest power of d");
    s->add_option("--level", cfg.level, "level k of the current algebra");
    s->add_option("--index", cfg.index, "flow index n");

    add("kdv", "KdV equation from the Virasoro-Magri bracket", cmd_kdv);

    s = add("axioms", "randomized PVA axiom suite", cmd_axioms);
    add_algebra_options(s, cfg);
    s->add_option("--context", cfg.context, "virasoro or current");
    s->add_option("--level", cfg.level, "level of the current algebra");
    s->add_option("--instances", cfg.instances, "random instances");
    s->add_option("--seed", cfg.seed, "random seed");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        for (auto& [sub, handler] : subs) {
            if (!sub->parsed())
                continue;
            cfg.command = sub->get_name();
            Outcome o = handler(cfg);
            std::string doc;
            if (cfg.format == "json")
                doc = document(cfg.command, o.json).dump(2) + "\n";
            else
                doc = o.text;
            if (cfg.output.empty()) {
                out << doc;
            } else {
                std::ofstream f(cfg.output);
                if (!f)
                    throw InvalidArgument("cannot write " + cfg.output);
                f << doc;
            }
            return o.ok ? kExitOk : kExitCheckFailed;
        }
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}

} // namespace wlax
