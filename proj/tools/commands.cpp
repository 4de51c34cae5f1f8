#include "commands.hpp"

#include <sys/resource.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cohomolab/char_chern.hpp"
#include "cohomolab/davis.hpp"
#include "cohomolab/invariant_rings.hpp"
#include "cohomolab/ring_models.hpp"

namespace coho::cli {

namespace {

std::string rat(const Rational& q) { return q.get_str(); }

json integers(const std::vector<Integer>& v)
{
    json out = json::array();
    for (const auto& x : v) {
        if (x.fits_slong_p()) out.push_back(x.get_si());
        else out.push_back(x.get_str());
    }
    return out;
}

json homology_json(const std::vector<HomologyGroup>& h)
{
    json out = json::array();
    for (std::size_t i = 0; i < h.size(); ++i)
        out.push_back({{"degree", i}, {"rank", h[i].rank}, {"torsion", integers(h[i].torsion)}, {"text", h[i].str()}});
    return out;
}

json dims_json(const DimComparison& c)
{
    json j{{"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass()}};
    j["first_mismatch"] = c.first_mismatch ? json(*c.first_mismatch) : json(nullptr);
    return j;
}

json comparison_json(const RingComparison& c)
{
    json j{{"label", c.label}, {"fixed", c.fixed}, {"generated", c.generated},
           {"generators_invariant", c.generators_invariant}, {"pass", c.pass()}};
    j["first_mismatch"] = c.first_mismatch ? json(*c.first_mismatch) : json(nullptr);
    return j;
}

json element_json(const GradedAlgebra& a, const Element& x)
{
    json terms = json::array();
    for (const auto& [m, c] : x) {
        json e = m.exps;
        for (std::size_t k = 0; k < a.next(); ++k) e.push_back((m.ext >> k) & 1u);
        terms.push_back({e, c});
    }
    return terms;
}

MatFp matrix_from_json(const json& j)
{
    MatFp m;
    for (const auto& row : j) {
        std::vector<std::uint32_t> r;
        for (const auto& v : row) r.push_back(v.get<std::uint32_t>());
        m.push_back(r);
    }
    if (m.empty() || std::any_of(m.begin(), m.end(), [&](const auto& r) { return r.size() != m.size(); }))
        throw InputError("matrices must be square and non-empty");
    return m;
}

GroupSpec spec_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("family")) throw InputError("group spec needs a \"family\"");
    GroupSpec s;
    s.family = j.at("family").get<std::string>();
    s.p = j.value("p", 0u);
    s.n = j.value("n", 0u);
    s.a = j.value("a", 1u);
    s.m = j.value("m", 0u);
    s.epsilon = j.value("epsilon", 1);
    if (j.contains("factors"))
        for (const auto& f : j.at("factors")) s.factors.push_back(spec_from_json(f));
    if (j.contains("matrices"))
        for (const auto& m : j.at("matrices")) s.matrices.push_back(matrix_from_json(m));
    return s;
}

SimplicialComplex complex_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("vertices") || !j.contains("facets"))
        throw InputError("complex JSON needs \"vertices\" and \"facets\"");
    std::vector<Simplex> facets;
    for (const auto& f : j.at("facets")) facets.push_back(f.get<Simplex>());
    return SimplicialComplex::from_facets(j.at("vertices").get<std::uint32_t>(), facets);
}

json complex_json(const SimplicialComplex& k)
{
    return {{"vertices", k.vertex_count()}, {"facets", k.facets()}};
}

// Builtin names, or a path to complex JSON.
SimplicialComplex named_complex(const std::string& name, int subdivisions)
{
    SimplicialComplex k;
    if (name == "point") k = SimplicialComplex::simplex(1);
    else if (name == "edge") k = SimplicialComplex::simplex(2);
    else if (name == "two-points") k = SimplicialComplex::discrete(2);
    else if (name == "triangle") k = SimplicialComplex::simplex(3);
    else if (name.rfind("boundary:", 0) == 0) k = SimplicialComplex::boundary_of_simplex(std::stoul(name.substr(9)));
    else if (name.rfind("moore:", 0) == 0) k = moore_complex(static_cast<std::uint32_t>(std::stoul(name.substr(6))));
    else k = complex_from_json(load_json_arg(name));
    for (int i = 0; i < subdivisions; ++i) k = barycentric_subdivision(k);
    return k;
}

json euler_json(const EulerReport& e)
{
    return {{"n", e.n},
            {"chi_chiswell", rat(e.chi_chiswell)},
            {"chi_printed_formula", rat(e.chi_printed)},
            {"chi_orbifold", rat(e.chi_orbifold)},
            {"chi_quotient_over_index", rat(e.chi_quotient_over_index)},
            {"colours", e.k},
            {"quotient_euler", e.quotient_euler},
            {"pass", e.pass()}};
}

std::vector<std::size_t> fixed_dims_model(const RingModel& r, const std::vector<RingAutomorphism>& act, std::uint32_t d)
{
    std::vector<std::size_t> dims;
    for (std::uint32_t n = 0; n <= d; ++n) dims.push_back(fixed_subspace(r, act, n).size());
    return dims;
}

void require_prime(std::uint32_t p)
{
    if (!is_prime(p)) throw InputError("p must be prime");
}

// ------------------------------------------------------------------ subcommands

struct Context {
    Globals g;
    json out;
    int code = -1; // set when a subcommand decides the exit code itself
};

void add_cohomology(CLI::App& app, Context& ctx)
{
    auto* sub = app.add_subcommand("cohomology", "Mod-p dimensions or integral groups from the bar complex");
    auto group = std::make_shared<std::string>();
    auto p = std::make_shared<std::uint32_t>(0);
    auto maxd = std::make_shared<unsigned>(4);
    auto integral = std::make_shared<bool>(false);
    auto direct = std::make_shared<bool>(false);
    auto dump = std::make_shared<std::string>();
    sub->add_option("--group", *group, "group spec (JSON text or file)")->required();
    sub->add_option("--p", *p, "prime for F_p coefficients");
    sub->add_option("--max-degree", *maxd, "top degree");
    sub->add_flag("--integral", *integral, "integral cohomology H^1..H^D");
    sub->add_flag("--direct", *direct, "unreduced bar complex (oracle)");
    sub->add_option("--dump-matrix", *dump, "write the degree-D coboundary matrix in coordinate format");
    sub->callback([=, &ctx] {
        auto g = group_from_json(load_json_arg(*group));
        json& o = ctx.out;
        o["group"] = g->name();
        o["order"] = g->order();
        if (!*integral && *p == 0) throw InputError("give --p or --integral");
        if (*p) {
            require_prime(*p);
            o["p"] = *p;
            o["dims"] = *direct ? cohomology_dims_mod_p_direct(g, *p, *maxd, ctx.g.limits)
                                : cohomology_dims_mod_p(g, *p, *maxd, ctx.g.limits);
        }
        if (*integral) {
            json rows = json::array();
            for (unsigned n = 1; n <= *maxd; ++n) {
                auto h = *direct ? integral_cohomology_direct(g, n, ctx.g.limits) : integral_cohomology(g, n, ctx.g.limits);
                rows.push_back({{"degree", n}, {"rank", h.rank}, {"torsion", integers(h.torsion)},
                                {"order", h.rank ? json(nullptr) : integers({h.order()})[0]}});
            }
            o["integral"] = rows;
        }
        if (!dump->empty()) {
            if (cell_count(*g, *maxd + 1) > ctx.g.limits.max_cells) throw ResourceLimit("matrix exceeds --max-cells");
            std::ofstream f(*dump);
            if (*p) write_coordinate(f, coboundary_matrix_fp(g, *maxd, *p));
            else write_coordinate(f, coboundary_matrix_z(g, *maxd));
            o["dumped"] = *dump;
        }
    });
}

void add_massey(CLI::App& app, Context& ctx)
{
    auto* sub = app.add_subcommand("massey", "Triple Massey product of degree-1 classes");
    auto group = std::make_shared<std::string>();
    auto p = std::make_shared<std::uint32_t>(0);
    auto cls = std::make_shared<std::vector<std::size_t>>(std::vector<std::size_t>{0, 0, 0});
    auto expect = std::make_shared<std::string>();
    sub->add_option("--group", *group)->required();
    sub->add_option("--p", *p)->required();
    sub->add_option("--classes", *cls, "indices into the H^1 basis")->expected(3)->delimiter(',');
    sub->add_option("--expect", *expect, "bockstein | zero")->check(CLI::IsMember({"bockstein", "zero"}));
    sub->callback([=, &ctx] {
        require_prime(*p);
        auto g = group_from_json(load_json_arg(*group));
        auto h1 = cohomology_basis(g, 1, *p);
        for (auto i : *cls)
            if (i >= h1.size()) throw InputError("class index out of range (dim H^1 = " + std::to_string(h1.size()) + ")");
        const auto &u = h1[(*cls)[0]], &v = h1[(*cls)[1]], &w = h1[(*cls)[2]];
        auto m = massey(u, v, w);
        auto again = massey(u, v, w, 0x5eed);
        bool indet_zero = std::all_of(m.indeterminacy.begin(), m.indeterminacy.end(),
                                      [](const Cochain& c) { return coboundary_preimage(c).has_value(); });
        bool zero = coboundary_preimage(m.representative).has_value();
        bool is_bock = class_equal_modulo(m.representative, bockstein(u), m.indeterminacy);
        json& o = ctx.out;
        o["group"] = g->name();
        o["p"] = *p;
        o["classes"] = *cls;
        o["degree"] = m.representative.degree();
        o["representative_zero"] = zero;
        o["equals_bockstein_of_first"] = is_bock;
        o["bockstein_nonzero"] = !coboundary_preimage(bockstein(u)).has_value();
        o["indeterminacy_generators"] = m.indeterminacy.size();
        o["indeterminacy_zero"] = indet_zero;
        o["independent_witnesses_agree"] = class_equal_modulo(m.representative, again.representative, m.indeterminacy);
        if (!expect->empty())
            o["pass"] = (*expect == "zero" ? zero : is_bock) && indet_zero &&
                        o["independent_witnesses_agree"].get<bool>();
    });
}

void add_chern(CLI::App& app, Context& ctx)
{
    auto* chern = app.add_subcommand("chern", "Characters and Chern exponents");
    chern->require_subcommand(1);
    auto group = std::make_shared<std::string>();
    auto p = std::make_shared<std::uint32_t>(0);
    auto* pc = chern->add_subcommand("pc", "pc invariant at a prime");
    pc->add_option("--group", *group)->required();
    pc->add_option("--p", *p)->required();
    pc->callback([=, &ctx] {
        require_prime(*p);
        auto g = group_from_json(load_json_arg(*group));
        auto rep = pc_invariant(g, *p);
        std::uint64_t pn = 1, n = 0;
        for (auto o = g->order(); o % *p == 0; o /= *p) pn *= *p, ++n;
        json rows = json::array();
        for (const auto& c : rep.per_class) {
            json gens = json::array();
            for (auto e : c.subgroup.generators) gens.push_back(g->describe(e));
            json m = c.m ? json(*c.m) : json(nullptr);
            rows.push_back({{"generators", gens}, {"m", m}, {"exponents", c.exponent_set}});
        }
        json& o = ctx.out;
        o["group"] = g->name();
        o["p"] = *p;
        o["pc"] = rep.pc;
        o["lcm_of_2m"] = rep.lcm_of_2m;
        o["per_class"] = rows;
        if (n > 0) {
            std::uint64_t bound = 2 * (*p - 1) * (pn / *p);
            o["bound"] = bound;
            o["divides_bound"] = rep.pc != 0 && bound % rep.pc == 0;
        }
    });
    auto* chars = chern->add_subcommand("characters", "irreducible character degrees");
    chars->add_option("--group", *group)->required();
    chars->callback([=, &ctx] {
        auto g = group_from_json(load_json_arg(*group));
        auto irr = irreducible_characters(g);
        std::vector<std::string> degs;
        for (const auto& x : irr) degs.push_back(x.degree().get_str());
        std::sort(degs.begin(), degs.end(), [](const std::string& a, const std::string& b) {
            return a.size() != b.size() ? a.size() < b.size() : a < b;
        });
        ctx.out["group"] = g->name();
        ctx.out["degrees"] = degs;
    });
}

void add_invariants(CLI::App& app, Context& ctx)
{
    auto* inv = app.add_subcommand("invariants", "Fixed subrings of polynomial and exterior algebras");
    inv->require_subcommand(1);
    auto p = std::make_shared<std::uint32_t>(0);
    auto maxd = std::make_shared<std::uint32_t>(24);
    auto action = std::make_shared<std::string>();
    auto perturbed = std::make_shared<bool>(false);
    auto twisted = std::make_shared<bool>(false);
    auto show_basis = std::make_shared<bool>(false);
    auto transposed = std::make_shared<bool>(false);

    auto* dickson = inv->add_subcommand("dickson", "SL_2(p) and GL_2(p) invariants of F_p[x,x']");
    dickson->add_option("--p", *p)->required();
    dickson->add_option("--max-degree", *maxd);
    dickson->add_flag("--perturbed", *perturbed, "replace b by a non-invariant (negative control)");
    dickson->add_flag("--twisted", *twisted, "deg x = 2 with a det-twisted exterior generator");
    dickson->callback([=, &ctx] {
        require_prime(*p);
        auto r = *twisted ? twisted_dickson_check(*p, *maxd)
                          : dickson_check(*p, *maxd, *perturbed ? DicksonVariant::perturbed : DicksonVariant::standard);
        ctx.out["p"] = *p;
        ctx.out["max_degree"] = *maxd;
        ctx.out["variant"] = *twisted ? "twisted" : (*perturbed ? "perturbed" : "standard");
        ctx.out["sl2"] = comparison_json(r.sl);
        ctx.out["gl2"] = comparison_json(r.gl);
        ctx.out["pass"] = r.pass();
    });

    auto* fixed = inv->add_subcommand("fixed", "fixed subspaces under a matrix group");
    fixed->add_option("--p", *p)->required();
    fixed->add_option("--max-degree", *maxd);
    fixed->add_option("--action", *action,
                      "{\"matrices\": [...], \"degrees\": [...], \"ext_degrees\": [...], \"ext_det_power\": [...]}")
        ->required();
    fixed->add_flag("--basis", *show_basis, "emit basis elements as [[exponents], coefficient] terms");
    fixed->callback([=, &ctx] {
        require_prime(*p);
        auto j = load_json_arg(*action);
        std::vector<MatFp> mats;
        for (const auto& m : j.at("matrices")) mats.push_back(matrix_from_json(m));
        if (mats.empty()) throw InputError("action needs at least one matrix");
        const std::size_t n = mats[0].size();
        auto degs = j.value("degrees", std::vector<std::uint32_t>(n, 1));
        auto ext = j.value("ext_degrees", std::vector<std::uint32_t>{});
        auto pw = j.value("ext_det_power", std::vector<std::int32_t>(ext.size(), 0));
        if (degs.size() != n || pw.size() != ext.size()) throw InputError("degree lists do not match the matrices");
        GradedAlgebra a(*p, degs, ext);
        MatrixAction act(*p, mats, pw);
        ctx.out["p"] = *p;
        ctx.out["group_order"] = act.closure().size();
        std::vector<std::size_t> dims;
        json basis = json::object();
        for (std::uint32_t d = 0; d <= *maxd; ++d) {
            auto f = fixed_subspace(a, act, d);
            dims.push_back(f.size());
            if (*show_basis && !f.empty()) {
                json list = json::array();
                for (const auto& x : f) list.push_back(element_json(a, x));
                basis[std::to_string(d)] = list;
            }
        }
        ctx.out["dims"] = dims;
        if (*show_basis) ctx.out["basis"] = basis;
    });

    auto* held = inv->add_subcommand("held5", "order-48 matrix group at p = 5 against the presented ring");
    held->add_option("--max-degree", *maxd);
    held->add_flag("--transposed", *transposed);
    held->callback([=, &ctx] {
        auto r = held_5_part_check(*maxd, *transposed);
        json& o = ctx.out;
        o["group_order"] = r.group_order;
        o["transposed"] = r.transposed;
        o["max_degree"] = r.max_degree;
        o["fixed"] = r.fixed;
        o["presented"] = r.presented;
        o["generated"] = r.generated;
        o["first_mismatch"] = r.first_mismatch ? json(*r.first_mismatch) : json(nullptr);
        o["relation"] = r.relation;
        o["relation_normalizes"] = r.relation_normalizes;
        o["headline_relation"] = r.headline_relation;
        o["working_relation"] = r.working_relation;
        o["pass"] = r.pass();
    });
}

void add_ringmodel(CLI::App& app, Context& ctx)
{
    auto* rm = app.add_subcommand("ringmodel", "Mod-p model of the cohomology ring of P_2(p)");
    rm->require_subcommand(1);
    auto p = std::make_shared<std::uint32_t>(0);
    auto maxd = std::make_shared<std::uint32_t>(24);
    auto action = std::make_shared<std::string>();
    auto lambda = std::make_shared<std::uint32_t>(1);
    auto samples = std::make_shared<std::size_t>(500);

    auto* fixed = rm->add_subcommand("fixed", "fixed subring under a named or explicit action");
    fixed->add_option("--p", *p, "prime (defaults from the named action)");
    fixed->add_option("--action", *action, "D8 | D8-det | S3xC3 | C3-shear | C4A4 | identity | JSON")->required();
    fixed->add_option("--max-degree", *maxd);
    fixed->add_option("--lambda", *lambda, "constant in the mu*nu relation");
    fixed->callback([=, &ctx] {
        json& o = ctx.out;
        const bool is_json = !action->empty() && (action->front() == '{' || std::filesystem::exists(*action));
        const std::string name = is_json ? std::string("custom") : canonical_action_name(*action);
        o["action"] = name;
        o["max_degree"] = *maxd;
        auto need = [&](std::uint32_t q) {
            if (*p && *p != q) throw InputError("action " + name + " is defined for p = " + std::to_string(q));
            *p = q;
        };
        if (name == "C4A4") {
            auto r = held_5_part_check(*maxd);
            o["p"] = 5;
            o["group_order"] = r.group_order;
            o["fixed_dims"] = r.fixed;
            o["presented"] = r.presented;
            o["generated"] = r.generated;
            o["relation"] = r.relation;
            o["first_mismatch"] = r.first_mismatch ? json(*r.first_mismatch) : json(nullptr);
            o["pass"] = r.pass();
            return;
        }
        if (name == "D8" || name == "D8-det") need(3);
        if (name == "S3xC3") need(7);
        if (*p == 0) throw InputError("--p is required for this action");
        require_prime(*p);
        if (*p < 3) throw InputError("the model needs an odd prime");
        RingModel r(*p, *lambda);
        std::vector<RingAutomorphism> act;
        if (is_json) {
            auto j = load_json_arg(*action);
            for (const auto& g : j.at("matrices"))
                act.push_back(RingAutomorphism::from_matrix(r, matrix_from_json(g.at("n")), g.value("j", 1)));
        } else {
            act = named_action(r, name);
        }
        o["p"] = *p;
        o["fixed_dims"] = fixed_dims_model(r, act, *maxd);
        if (name == "D8" || name == "D8-det") {
            auto rep = check_d8_fixed_ring(*maxd, name == "D8");
            o["span_fixed"] = rep.span_fixed;
            o["fixed_vs_span"] = dims_json(rep.fixed_vs_span);
            o["span_vs_generated"] = dims_json(rep.span_vs_generated);
            o["generators_fixed"] = rep.generators_fixed;
            o["stable_under_normaliser"] = rep.stable_under_normaliser;
            o["unexplained"] = rep.unexplained;
            o["pass"] = rep.pass();
        } else if (name == "S3xC3") {
            auto rep = check_s3xc3_fixed_ring(*maxd, *lambda);
            o["generators_fixed"] = rep.generators_fixed;
            o["fixed_vs_generated"] = dims_json(rep.fixed_vs_generated);
            o["fifteen_vs_twelve_plus_three"] = dims_json(rep.fifteen_vs_twelve_plus_three);
            o["pass"] = rep.pass();
        } else if (name == "C3-shear") {
            auto rep = check_shear_fixed_ring(*p, *maxd);
            o["even"] = dims_json(rep.even);
            o["pass"] = rep.pass();
        }
    });

    auto* restrict_cmd = rm->add_subcommand("restrict", "restriction of the twelve p = 7 generators to K");
    auto target_degree = std::make_shared<std::uint32_t>(100);
    restrict_cmd->add_option("--max-degree", *target_degree, "top degree in the target");
    restrict_cmd->callback([=, &ctx] {
        auto rep = check_k_restriction(*target_degree);
        json lines = json::array();
        for (const auto& l : rep.lines) lines.push_back({{"name", l.name}, {"image", l.image}, {"in_target", l.in_target}});
        ctx.out["lines"] = lines;
        ctx.out["image_vs_s_prime"] = dims_json(rep.image_vs_s_prime);
        ctx.out["pass"] = rep.pass();
    });

    auto* check = rm->add_subcommand("check", "associativity, commutativity and relations");
    check->add_option("--p", *p)->required();
    check->add_option("--max-degree", *maxd);
    check->add_option("--lambda", *lambda);
    check->add_option("--samples", *samples);
    check->callback([=, &ctx] {
        require_prime(*p);
        if (*p < 3) throw InputError("the model needs an odd prime");
        RingModel r(*p, *lambda);
        auto as = check_associativity(r, *maxd, *samples, 1);
        auto co = check_commutativity(r, *maxd, *samples, 2);
        auto bad = failing_relations(r);
        std::vector<std::size_t> dims;
        for (std::uint32_t d = 0; d <= *maxd; ++d) dims.push_back(r.basis(d).size());
        ctx.out["p"] = *p;
        ctx.out["dims"] = dims;
        ctx.out["associative"] = as.ok;
        ctx.out["commutative"] = co.ok;
        ctx.out["failing_relations"] = bad;
        ctx.out["pass"] = as.ok && co.ok && bad.empty();
    });
}

void add_davis(CLI::App& app, Context& ctx)
{
    auto* dv = app.add_subcommand("davis", "Right-angled Coxeter groups and Davis complex quotients");
    dv->require_subcommand(1);
    auto kspec = std::make_shared<std::string>();
    auto n = std::make_shared<std::uint32_t>(0);
    auto sub = std::make_shared<int>(0);
    auto out = std::make_shared<std::string>();
    auto write = std::make_shared<std::string>();

    auto source = [=]() -> SimplicialComplex {
        if (*n && !kspec->empty()) throw InputError("give either --n or --k");
        if (*n) return named_complex("moore:" + std::to_string(*n), *sub);
        if (kspec->empty()) throw InputError("give --n or --k");
        return named_complex(*kspec, *sub);
    };
    auto common = [&](CLI::App* c) {
        c->add_option("--k", *kspec, "complex JSON file, or point | edge | two-points | triangle | boundary:<d> | moore:<n>");
        c->add_option("--n", *n, "Moore complex parameter");
        c->add_option("--subdivide", *sub, "barycentric subdivisions to apply");
        c->add_option("--out", *out, "write the report here as well");
    };
    auto finish = [=, &ctx] {
        if (!out->empty()) std::ofstream(*out) << ctx.out.dump(2) << "\n";
    };

    auto* build = dv->add_subcommand("build", "Davis quotient of the RACG of a full complex");
    common(build);
    build->add_option("--write-complex", *write, "write the quotient complex JSON");
    build->callback([=, &ctx] {
        auto k = source();
        auto gp = racg_from_complex(k);
        auto q = davis_quotient(gp, torsion_free_coloring(k));
        json& o = ctx.out;
        o["nerve_f_vector"] = k.f_vector();
        o["colouring"] = q.coloring.method;
        o["colours"] = q.coloring.k;
        o["quotient_f_vector"] = q.complex.f_vector();
        o["quotient_euler"] = q.euler;
        o["orbifold_chi"] = rat(orbifold_chi(k));
        o["pass"] = true; // construction asserts its own cross-checks
        if (!write->empty()) std::ofstream(*write) << complex_json(q.complex).dump() << "\n";
        finish();
    });

    auto* hom = dv->add_subcommand("homology", "integral homology and H^n of a complex");
    common(hom);
    hom->callback([=, &ctx] {
        auto k = source();
        auto h = homology(k);
        json coh = json::array();
        for (unsigned i = 0; i <= h.size(); ++i) {
            auto c = cohomology_degree(h, i);
            coh.push_back({{"degree", i}, {"rank", c.rank}, {"torsion", integers(c.torsion)}, {"text", c.str()}});
        }
        ctx.out["f_vector"] = k.f_vector();
        ctx.out["full"] = k.is_full();
        ctx.out["homology"] = homology_json(h);
        ctx.out["cohomology"] = coh;
        finish();
    });

    auto* chi = dv->add_subcommand("chi", "Euler characteristics of the RACG");
    common(chi);
    chi->callback([=, &ctx] {
        ctx.out = euler_json(euler_report(source()));
        finish();
    });

    auto* best = dv->add_subcommand("bestvina", "quotient for the subdivided Moore complex");
    best->add_option("--n", *n)->required();
    best->add_option("--out", *out);
    best->callback([=, &ctx] {
        auto r = bestvina(*n);
        json& o = ctx.out;
        o["n"] = r.n;
        o["moore_homology"] = homology_json(r.moore_homology);
        o["moore_certified"] = r.moore_certified;
        o["nerve_f_vector"] = r.nerve_f_vector;
        o["colours"] = r.k;
        o["quotient_f_vector"] = r.quotient_f_vector;
        o["quotient_homology"] = homology_json(r.quotient_homology);
        o["h3"] = {{"rank", r.h3.rank}, {"torsion", integers(r.h3.torsion)}, {"exponent", integers({r.h3.exponent()})[0]}};
        o["h0_is_z"] = r.h0_is_z;
        o["high_degrees_vanish"] = r.high_vanish;
        o["exponent_divides_n"] = r.exponent_divides;
        o["rank_h3_zero_expected"] = r.rank_h3_zero;
        o["euler"] = euler_json(r.euler);
        o["pass"] = r.pass();
        finish();
    });
}

void add_scenario(CLI::App& app, Context& ctx)
{
    auto* sc = app.add_subcommand("scenario", "Run a scenario file");
    auto path = std::make_shared<std::string>();
    sc->add_option("path", *path)->required();
    sc->callback([=, &ctx] {
        auto r = run_scenario(*path, ctx.g);
        ctx.out = r.report;
        ctx.code = r.code;
    });
}

} // namespace

json load_json_arg(const std::string& text)
{
    std::string body = text;
    auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw InputError("empty JSON argument");
    if (text[first] != '{' && text[first] != '[') {
        std::ifstream f(text);
        if (!f) throw InputError("cannot open " + text);
        std::stringstream ss;
        ss << f.rdbuf();
        body = ss.str();
    }
    try {
        return json::parse(body);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

GroupPtr group_from_json(const json& j)
{
    try {
        return build_group(spec_from_json(j));
    } catch (const json::exception& e) {
        throw InputError(std::string("bad group spec: ") + e.what());
    }
}

Result run(const std::vector<std::string>& args, Globals globals)
{
    CLI::App app{"Exact computations with finite group cohomology and Davis complexes", "cohomolab"};
    app.require_subcommand(1);
    Context ctx{globals, json::object(), -1};
    app.add_option("--cache-dir", ctx.g.limits.cache_dir, "boundary matrix cache (overrides COHOMOLAB_CACHE)");
    app.add_option("--max-cells", ctx.g.limits.max_cells, "feasibility limit on bar cells");
    app.add_option("--json-out", ctx.g.json_out, "write the JSON report to this file");
    add_cohomology(app, ctx);
    add_massey(app, ctx);
    add_chern(app, ctx);
    add_invariants(app, ctx);
    add_ringmodel(app, ctx);
    add_davis(app, ctx);
    add_scenario(app, ctx);

    Result res;
    auto finish = [&](int code, json body) {
        res.code = code;
        res.report = std::move(body);
        res.report["schema_version"] = kSchemaVersion;
        if (!ctx.g.json_out.empty()) std::ofstream(ctx.g.json_out) << res.report.dump(2) << "\n";
        return res;
    };
    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        res.report = {{"help", app.help()}};
        return res;
    } catch (const CLI::ParseError& e) {
        return finish(Exit::input_error, {{"error", e.what()}});
    } catch (const ResourceLimit& e) {
        json body = ctx.out.is_object() ? ctx.out : json::object();
        body["error"] = e.what();
        return finish(Exit::resource_limit, body);
    } catch (const InputError& e) {
        return finish(Exit::input_error, {{"error", e.what()}});
    } catch (const InvalidGroupSpec& e) {
        return finish(Exit::input_error, {{"error", e.what()}});
    } catch (const DavisError& e) {
        return finish(Exit::input_error, {{"error", e.what()}});
    } catch (const std::invalid_argument& e) {
        return finish(Exit::input_error, {{"error", e.what()}});
    } catch (const json::exception& e) {
        return finish(Exit::input_error, {{"error", e.what()}});
    }
    if (ctx.code >= 0) return finish(ctx.code, ctx.out);
    bool failed = ctx.out.contains("pass") && ctx.out["pass"].is_boolean() && !ctx.out["pass"].get<bool>();
    return finish(failed ? Exit::expectation_failed : Exit::pass, ctx.out);
}

// ------------------------------------------------------------------ scenarios

namespace {

const json* pointer_lookup(const json& j, const std::string& ptr)
{
    try {
        return &j.at(json::json_pointer(ptr));
    } catch (const json::exception&) {
        return nullptr;
    }
}

long peak_rss_mb()
{
    rusage u{};
    getrusage(RUSAGE_SELF, &u);
    return u.ru_maxrss / 1024;
}

} // namespace

Result run_scenario(const std::string& path, const Globals& globals)
{
    json sc;
    std::vector<std::pair<std::string, std::vector<std::string>>> steps;
    double seconds = 0;
    long memory_mb = 0;
    try {
        sc = load_json_arg(path);
        if (!sc.is_object() || !sc.contains("steps") || !sc.at("steps").is_array())
            throw InputError("scenario needs a \"steps\" array");
        seconds = sc.value("budget", json::object()).value("seconds", 0.0);
        memory_mb = sc.value("budget", json::object()).value("memory_mb", 0L);
        for (const auto& s : sc.at("steps")) {
            steps.emplace_back(s.at("name").get<std::string>(), s.at("args").get<std::vector<std::string>>());
            if (!s.contains("expect") || !s.at("expect").is_array()) throw InputError("step needs an \"expect\" array");
            for (const auto& e : s.at("expect"))
                if (!e.contains("path") || !e.contains("equals") || !e.contains("provenance"))
                    throw InputError("expectation needs path, equals and provenance");
        }
    } catch (const InputError& e) {
        return {Exit::input_error, {{"error", e.what()}, {"schema_version", kSchemaVersion}}};
    } catch (const json::exception& e) {
        return {Exit::input_error, {{"error", std::string("malformed scenario: ") + e.what()}, {"schema_version", kSchemaVersion}}};
    }

    Globals inner = globals;
    inner.json_out.clear();
    json report{{"scenario", sc.value("name", path)}, {"schema_version", kSchemaVersion}};
    json step_reports = json::array();
    bool all = true;
    int code = Exit::pass;
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const auto& spec = sc["steps"][i];
        auto r = run(steps[i].second, inner);
        json exps = json::array();
        bool ok = r.code == Exit::pass || r.code == Exit::expectation_failed;
        if (r.code == Exit::input_error) code = std::max(code, static_cast<int>(Exit::input_error));
        if (r.code == Exit::resource_limit) code = Exit::resource_limit;
        for (const auto& e : spec["expect"]) {
            const json* got = pointer_lookup(r.report, e["path"].get<std::string>());
            bool hit = got && *got == e["equals"];
            ok = ok && hit;
            exps.push_back({{"path", e["path"]}, {"expected", e["equals"]}, {"actual", got ? *got : json(nullptr)},
                            {"provenance", e["provenance"]}, {"pass", hit}});
        }
        all = all && ok;
        json sr{{"name", steps[i].first}, {"exit_code", r.code}, {"expectations", exps}, {"pass", ok}};
        if (r.report.contains("error")) sr["error"] = r.report["error"];
        step_reports.push_back(sr);
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = seconds <= 0 || elapsed <= seconds;
    const bool in_memory = memory_mb <= 0 || peak_rss_mb() <= memory_mb;
    // Timings go to stderr so that reports stay byte-identical across runs.
    std::cerr << "scenario " << report["scenario"].get<std::string>() << ": " << elapsed << " s, peak " << peak_rss_mb()
              << " MB\n";
    report["steps"] = step_reports;
    report["within_budget"] = in_time && in_memory;
    report["pass"] = all && in_time && in_memory;
    if (!in_time || !in_memory) code = Exit::resource_limit;
    else if (code == Exit::pass && !all) code = Exit::expectation_failed;
    return {code, report};
}

} // namespace coho::cli
