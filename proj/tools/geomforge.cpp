// geomforge: exact-arithmetic constructions and checks for classical groups
// and their geometries. Every subcommand prints a JSON report; exit codes:
// 0 all checks passed, 1 check failures, 2 parse/input errors, 3 budget
// exceeded.

#include "geomforge/building.hpp"
#include "geomforge/classical.hpp"
#include "geomforge/namedgroup.hpp"
#include "geomforge/polar.hpp"
#include "geomforge/projgeom.hpp"
#include "geomforge/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using json = nlohmann::ordered_json;
using namespace geomforge;

namespace {

constexpr const char* kSchema = "geomforge/1";

json report_envelope(const std::string& command, json inputs, const Budget& budget) {
    json r;
    r["schema"] = kSchema;
    r["command"] = command;
    r["inputs"] = std::move(inputs);
    r["budget"] = {{"max_group_order", budget.max_group_order},
                   {"max_grassmannian", budget.max_grassmannian},
                   {"max_enumeration", budget.max_enumeration},
                   {"time_ms", budget.time_ms}};
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json axiom_json(const AxiomCheck& a) {
    json j;
    j["status"] = a.pass ? "pass" : "fail";
    if (!a.pass) j["witness"] = a.witness;
    return j;
}

// Form descriptor: {"scalar": {"p":..,"k":..}, "sigma": "id" | e,
// "epsilon": code (or -1), "lambda": "zero"|"trace"|"fixed"|"full"|[codes],
// "gram": [[codes]]}
struct FormInput {
    const Gf* F;
    FieldAuto sigma;
    std::uint32_t eps;
    LambdaTag tag;
    std::vector<std::uint32_t> lambda;
    FMat gram;
};

FormInput parse_form_file(const std::string& path) {
    json j = json::parse(slurp(path));
    FormInput in{nullptr, FieldAuto(), 1, LambdaTag::Zero, {}, FMat()};
    const Gf& F = field_make(j.at("scalar").at("p").get<unsigned>(),
                             j.at("scalar").at("k").get<unsigned>());
    in.F = &F;
    if (j.at("sigma").is_string()) {
        std::string s = j["sigma"].get<std::string>();
        if (s == "id") in.sigma = FieldAuto::identity(F);
        else if (s == "frobenius") in.sigma = FieldAuto::frobenius(F);
        else throw std::invalid_argument("sigma must be \"id\", \"frobenius\", or an exponent");
    } else {
        in.sigma = FieldAuto(F, j["sigma"].get<unsigned>());
    }
    long long e = j.at("epsilon").get<long long>();
    in.eps = (e < 0) ? F.neg(F.from_int(-e)) : F.from_int(e);
    const auto& lam = j.at("lambda");
    if (lam.is_string()) {
        std::string s = lam.get<std::string>();
        if (s == "zero") in.tag = LambdaTag::Zero;
        else if (s == "trace") in.tag = LambdaTag::Trace;
        else if (s == "fixed") in.tag = LambdaTag::FixedSet;
        else if (s == "full") in.tag = LambdaTag::Full;
        else throw std::invalid_argument("lambda tag must be zero|trace|fixed|full");
    } else {
        in.tag = LambdaTag::Explicit;
        for (const auto& v : lam) in.lambda.push_back(v.get<std::uint32_t>());
    }
    const auto& g = j.at("gram");
    unsigned n = static_cast<unsigned>(g.size());
    in.gram = FMat(F, n, n);
    for (unsigned r = 0; r < n; ++r) {
        if (g[r].size() != n) throw std::invalid_argument("gram must be square");
        for (unsigned c = 0; c < n; ++c) {
            long long v = g[r][c].get<long long>();
            in.gram.at(r, c) = (v < 0) ? F.neg(F.from_int(-v)) : static_cast<std::uint32_t>(v) % F.q()
                                           ;
        }
    }
    return in;
}

PseudoQuadraticForm form_from_input(const FormInput& in) {
    FormParameter par(in.sigma, in.eps, in.tag, in.lambda);
    return PseudoQuadraticForm(SesquilinearForm(in.sigma, in.gram), par);
}

PermGroup group_from_spec_or_file(const std::string& spec, const std::string& file,
                                  const Budget& budget, json& inputs) {
    if (!spec.empty()) {
        inputs["group"] = spec;
        return parse_named_group(spec, budget).perm;
    }
    if (file.empty()) throw std::invalid_argument("need --group or --file");
    inputs["file"] = file;
    std::istringstream in(slurp(file));
    std::string line;
    std::vector<Perm> gens;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        gens.push_back(Perm::parse(line));
    }
    if (gens.empty()) throw std::invalid_argument("no permutations in " + file);
    for (const auto& g : gens)
        if (g.degree() != gens.front().degree())
            throw std::invalid_argument("permutation degrees differ");
    return PermGroup(gens.front().degree(), gens);
}

json ps_report_json(const PsAxiomReport& rep) {
    json axioms;
    axioms["PS1"] = axiom_json(rep.ps1);
    axioms["PS2"] = axiom_json(rep.ps2);
    axioms["PS3"] = axiom_json(rep.ps3);
    axioms["PS4"] = axiom_json(rep.ps4);
    axioms["PS5"] = axiom_json(rep.ps5);
    json out;
    out["axioms"] = axioms;
    out["lattice_rank"] = rep.lattice_rank;
    if (rep.witt_index) out["witt_index"] = *rep.witt_index;
    out["thick"] = rep.thick;
    out["weak"] = rep.weak;
    return out;
}

int emit(json& report, bool pass, bool human) {
    report["pass"] = pass;
    std::cout << report.dump(2) << "\n";
    if (human)
        std::cerr << (pass ? "all checks passed" : "CHECK FAILURES, see report") << "\n";
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"geomforge: exact constructions and checks for classical groups, "
                 "polar spaces, and buildings"};
    app.require_subcommand(1);
    bool human = false;
    bool timing = false;
    std::uint64_t seed = 20260809;
    app.add_flag("--human", human, "append a human summary on stderr");
    app.add_flag("--timing", timing, "include wall-clock timing in the report "
                                     "(breaks byte-for-byte determinism)");
    app.add_option("--seed", seed, "seed for randomized property subcommands");

    Budget budget = Budget::from_env();

    // geometry
    auto* geometry = app.add_subcommand("geometry", "projective geometries");
    auto* gbuild = geometry->add_subcommand("build", "emit PG(rank, q) as interchange text");
    unsigned g_rank = 2, g_q = 2;
    gbuild->add_option("--rank", g_rank, "projective rank")->required();
    gbuild->add_option("--q", g_q, "field order")->required();
    auto* gcheck = geometry->add_subcommand("check", "check axioms of a geometry file");
    std::string g_file, g_axioms = "pg";
    gcheck->add_option("--file", g_file, "interchange-format geometry")->required();
    gcheck->add_option("--axioms", g_axioms, "axiom system: pg or ps");

    // polar
    auto* polar = app.add_subcommand("polar", "polar spaces");
    auto* pbuild = polar->add_subcommand("build", "emit the polar space of a form");
    std::string p_form;
    bool p_a32 = false;
    unsigned p_q = 2;
    pbuild->add_option("--form", p_form, "form descriptor JSON file");
    pbuild->add_flag("--a32", p_a32, "build the line-Grassmannian space A32 instead");
    pbuild->add_option("--q", p_q, "field order for --a32");
    auto* pcheck = polar->add_subcommand("check", "Buekenhout-Shult axioms of a geometry file");
    std::string pc_file;
    pcheck->add_option("--file", pc_file, "interchange-format geometry")->required();
    auto* porif = polar->add_subcommand("oriflamme", "oriflamme complex of a weak polar space");
    std::string po_file;
    bool po_a32 = false;
    unsigned po_q = 2;
    porif->add_option("--file", po_file, "interchange-format geometry");
    porif->add_flag("--a32", po_a32, "use A32(GF(q)) and compare with the building");
    porif->add_option("--q", po_q, "field order for --a32");

    // forms
    auto* forms = app.add_subcommand("forms", "pseudo-quadratic forms");
    std::string f_file;
    auto* fclassify = forms->add_subcommand("classify", "five-way classification");
    fclassify->add_option("--file", f_file, "form descriptor JSON")->required();
    auto* fwitt = forms->add_subcommand("witt", "Witt index and decomposition");
    fwitt->add_option("--file", f_file, "form descriptor JSON")->required();
    auto* freduce = forms->add_subcommand("reduce", "slightly-degenerate reduction");
    freduce->add_option("--file", f_file, "form descriptor JSON")->required();
    auto* fparam = forms->add_subcommand("paramcheck", "form parameter validity report");
    fparam->add_option("--file", f_file, "form descriptor JSON")->required();

    // group
    auto* group = app.add_subcommand("group", "permutation groups");
    std::string gr_spec, gr_file, gr_a, gr_b;
    auto add_group_opts = [&](CLI::App* sub) {
        sub->add_option("--group", gr_spec, "named group, e.g. psl(2,7)");
        sub->add_option("--file", gr_file, "generators, one image line per permutation");
    };
    auto* gorder = group->add_subcommand("order", "group order");
    add_group_opts(gorder);
    auto* gtrans = group->add_subcommand("transitivity", "largest t with a t-transitive action");
    add_group_opts(gtrans);
    auto* gperf = group->add_subcommand("perfect", "is the group perfect?");
    add_group_opts(gperf);
    auto* gsimple = group->add_subcommand("simple", "is the group simple?");
    add_group_opts(gsimple);
    auto* giso = group->add_subcommand("iso", "isomorphism test");
    giso->add_option("--a", gr_a, "first named group")->required();
    giso->add_option("--b", gr_b, "second named group")->required();

    // classical
    auto* classical = app.add_subcommand("classical", "classical matrix groups");
    auto* cbuild = classical->add_subcommand("build", "build a classical group");
    std::string c_kind;
    unsigned c_n = 3, c_q = 2;
    std::string c_form;
    cbuild->add_option("--group", c_kind, "el|sl|gl|pel|pgl|psl|sp|o|u")->required();
    cbuild->add_option("--n", c_n, "dimension")->required();
    cbuild->add_option("--q", c_q, "field order")->required();
    cbuild->add_option("--form", c_form, "form descriptor for the isometry families");
    auto* cstein = classical->add_subcommand("steinberg", "Steinberg relation check");
    unsigned s_n = 3, s_q = 0, s_samples = 200;
    bool s_quat = false;
    cstein->add_option("--n", s_n, "matrix dimension (>= 3)")->required();
    cstein->add_option("--q", s_q, "field order (exhaustive)");
    cstein->add_flag("--quat", s_quat, "rational quaternions (sampled)");
    cstein->add_option("--samples", s_samples, "sample count for --quat");
    auto* cdet = classical->add_subcommand("det", "Dieudonne determinant of a matrix file");
    std::string d_file;
    unsigned d_q = 0;
    bool d_quat = false;
    cdet->add_option("--file", d_file, "rows of space-separated scalar literals")->required();
    cdet->add_option("--q", d_q, "field order");
    cdet->add_flag("--quat", d_quat, "quaternion literals a+bi+cj+dk");
    auto* cmouf = classical->add_subcommand("moufang", "Moufang set of the projective line");
    unsigned m_q = 2;
    std::string m_level = "gl";
    cmouf->add_option("--q", m_q, "field order")->required();
    cmouf->add_option("--level", m_level, "el or gl");
    auto* crec = classical->add_subcommand("reconstruct", "lines from a 2-transitive action");
    std::string r_spec, r_file;
    crec->add_option("--group", r_spec, "named group");
    crec->add_option("--file", r_file, "permutation generators file");

    // building
    auto* building = app.add_subcommand("building", "flag complexes and Tits systems");
    auto* bflags = building->add_subcommand("flags", "flag complex of PG(rank, q)");
    unsigned b_rank = 2, b_q = 2, b_n = 2;
    bflags->add_option("--rank", b_rank, "projective rank")->required();
    bflags->add_option("--q", b_q, "field order")->required();
    auto* bapart = building->add_subcommand("apartment", "standard apartment of PG(rank, q)");
    bapart->add_option("--rank", b_rank, "projective rank")->required();
    bapart->add_option("--q", b_q, "field order")->required();
    auto* btits = building->add_subcommand("tits", "extract and verify the Tits system");
    btits->add_option("--rank", b_rank, "building rank n (group EL_{n+1})")->required();
    btits->add_option("--q", b_q, "field order")->required();
    auto* broots = building->add_subcommand("roots", "A_n root system and commutators");
    broots->add_option("--n", b_n, "rank")->required();
    unsigned b_rq = 0;
    broots->add_option("--q", b_rq, "also check the commutator correspondence over GF(q)");

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string v_suite = "paper";
    verify->add_option("--suite", v_suite, "suite name (paper)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // help/version exit 0, parse errors exit 2
    }

    try {
        if (*gbuild) {
            json rep = report_envelope("geometry build",
                                       {{"rank", g_rank}, {"q", g_q}}, budget);
            auto pg = build_pg(g_rank, detail::field_of_order(g_q), budget);
            auto plg = pg.truncation_1_2();
            rep["results"] = {{"points", plg.num_points()}, {"lines", plg.num_lines()}};
            rep["geometry"] = serialize_geometry(plg);
            return emit(rep, true, human);
        }
        if (*gcheck) {
            json rep = report_envelope("geometry check",
                                       {{"file", g_file}, {"axioms", g_axioms}}, budget);
            auto G = parse_geometry(slurp(g_file));
            if (g_axioms == "pg") {
                auto ax = check_pg_axioms(G);
                json axioms;
                axioms["PG1"] = axiom_json(ax.pg1);
                axioms["PG2"] = axiom_json(ax.pg2);
                axioms["PG3"] = axiom_json(ax.pg3);
                axioms["PG4"] = axiom_json(ax.pg4);
                rep["results"] = {{"axioms", axioms},
                                  {"projective_space", ax.has_disjoint_lines},
                                  {"projective_plane", !ax.has_disjoint_lines}};
                return emit(rep, ax.all_pass(), human);
            }
            if (g_axioms == "ps") {
                auto ax = check_polar_axioms(G, budget);
                rep["results"] = ps_report_json(ax);
                bool pass = ax.ps1.pass && ax.ps2.pass && ax.ps3.pass && ax.ps4.pass;
                return emit(rep, pass, human);
            }
            throw std::invalid_argument("--axioms must be pg or ps");
        }
        if (*pbuild) {
            json inputs;
            PolarSpace P;
            if (p_a32) {
                inputs = {{"a32", true}, {"q", p_q}};
                P = build_a32(detail::field_of_order(p_q), budget);
            } else if (!p_form.empty()) {
                inputs = {{"form", p_form}};
                P = build_polar(form_from_input(parse_form_file(p_form)), budget);
            } else {
                throw std::invalid_argument("polar build needs --form or --a32");
            }
            json rep = report_envelope("polar build", inputs, budget);
            rep["results"] = {{"witt_index", P.witt},
                              {"points", P.plg.num_points()},
                              {"lines", P.plg.num_lines()}};
            rep["geometry"] = serialize_geometry(P.plg);
            return emit(rep, true, human);
        }
        if (*pcheck) {
            json rep = report_envelope("polar check", {{"file", pc_file}}, budget);
            auto G = parse_geometry(slurp(pc_file));
            auto ax = check_polar_axioms(G, budget);
            rep["results"] = ps_report_json(ax);
            bool pass = ax.ps1.pass && ax.ps2.pass && ax.ps3.pass && ax.ps4.pass;
            return emit(rep, pass, human);
        }
        if (*porif) {
            json inputs;
            PointLineGeometry G;
            std::optional<PolarSpace> a32;
            if (po_a32) {
                inputs = {{"a32", true}, {"q", po_q}};
                a32 = build_a32(detail::field_of_order(po_q), budget);
                G = a32->plg;
            } else if (!po_file.empty()) {
                inputs = {{"file", po_file}};
                G = parse_geometry(slurp(po_file));
            } else {
                throw std::invalid_argument("polar oriflamme needs --file or --a32");
            }
            json rep = report_envelope("polar oriflamme", inputs, budget);
            auto C = oriflamme_complex(G, budget);
            unsigned class0 = 0, class1 = 0;
            for (auto c : C.vclass) {
                if (c == 0) ++class0;
                if (c == 1) ++class1;
            }
            rep["results"] = {{"rank", C.m},
                              {"vertices", C.vertices.size()},
                              {"maximal_class_sizes", {class0, class1}},
                              {"chambers", C.chambers.size()}};
            bool pass = true;
            if (po_a32) {
                auto pg = build_pg(3, detail::field_of_order(po_q), budget);
                auto cmp = oriflamme_matches_building(*a32, C, pg);
                rep["results"]["matches_building"] = cmp.isomorphic;
                rep["results"]["building_chambers"] = cmp.chambers_right;
                pass = cmp.isomorphic;
            }
            return emit(rep, pass, human);
        }
        if (*fclassify) {
            json rep = report_envelope("forms classify", {{"file", f_file}}, budget);
            auto in = parse_form_file(f_file);
            FormParameter par(in.sigma, in.eps, in.tag, in.lambda);
            auto r = classify_form_case(*in.F, in.sigma, in.eps, par.lambda());
            rep["results"] = {{"ok", r.ok},
                              {"case", form_case_name(r.kind)},
                              {"detail", r.detail},
                              {"lambda", r.lambda}};
            return emit(rep, r.ok, human);
        }
        if (*fwitt) {
            json rep = report_envelope("forms witt", {{"file", f_file}}, budget);
            auto pq = form_from_input(parse_form_file(f_file));
            unsigned m = witt_index(pq, budget);
            json results = {{"index", m}, {"nondegenerate", pq.is_nondegenerate()}};
            if (pq.is_nondegenerate()) {
                auto wd = witt_decompose(pq, budget);
                results["hyperbolic_pairs"] = wd.pairs.size();
                results["anisotropic_dim"] = wd.anisotropic.dim();
            }
            rep["results"] = results;
            return emit(rep, true, human);
        }
        if (*freduce) {
            json rep = report_envelope("forms reduce", {{"file", f_file}}, budget);
            auto pq = form_from_input(parse_form_file(f_file));
            json results;
            results["radical_dim"] = pq.radical().dim();
            results["slightly_degenerate"] = pq.is_slightly_degenerate();
            bool pass = true;
            if (pq.is_slightly_degenerate()) {
                auto red = reduce_slightly_degenerate(pq);
                results["reduced_dim"] = red.reduced.dim();
                results["reduced_lambda"] = red.reduced.param().lambda();
                results["isotropic_points_before"] = isotropic_points(pq, budget).size();
                results["isotropic_points_after"] =
                    isotropic_points(red.reduced, budget).size();
            } else {
                pass = false;
                results["error"] = "input is not slightly degenerate";
            }
            rep["results"] = results;
            return emit(rep, pass, human);
        }
        if (*fparam) {
            json rep = report_envelope("forms paramcheck", {{"file", f_file}}, budget);
            auto in = parse_form_file(f_file);
            std::vector<std::uint32_t> lambda = in.lambda;
            if (in.tag != LambdaTag::Explicit) {
                // resolve the tag without the constructor's validation
                std::uint32_t meps = in.F->neg(in.eps);
                if (in.tag == LambdaTag::Zero) lambda = {0};
                else if (in.tag == LambdaTag::Trace) lambda = trace_group(*in.F, in.sigma, meps);
                else if (in.tag == LambdaTag::FixedSet)
                    lambda = fixed_group(*in.F, in.sigma, meps);
                else {
                    lambda.resize(in.F->q());
                    for (std::uint32_t c = 0; c < in.F->q(); ++c) lambda[c] = c;
                }
            }
            auto r = form_parameter_check(*in.F, in.sigma, in.eps, lambda);
            rep["results"] = {{"valid", r.valid()},
                              {"eps_ok", r.eps_ok},
                              {"sigma_sq_ok", r.sigma_sq_ok},
                              {"additive_ok", r.additive_ok},
                              {"lower_ok", r.lower_ok},
                              {"upper_ok", r.upper_ok},
                              {"stable_ok", r.stable_ok},
                              {"square_module_ok", r.square_module_ok},
                              {"zero_implication_ok", r.zero_implication_ok},
                              {"trace_group_lower", r.lower},
                              {"trace_group_upper", r.upper},
                              {"lambda", lambda}};
            return emit(rep, r.valid(), human);
        }
        if (*gorder || *gtrans || *gperf || *gsimple) {
            std::string cmd = *gorder ? "group order"
                              : *gtrans ? "group transitivity"
                              : *gperf ? "group perfect"
                                        : "group simple";
            json inputs;
            PermGroup G = group_from_spec_or_file(gr_spec, gr_file, budget, inputs);
            json rep = report_envelope(cmd, inputs, budget);
            json results;
            results["degree"] = G.degree();
            results["order"] = G.order();
            if (*gorder && !gr_spec.empty()) {
                auto named = parse_named_group(gr_spec, budget);
                if (named.matrix_order) results["matrix_order"] = *named.matrix_order;
            }
            if (*gtrans) results["transitivity_degree"] = transitivity_degree(G);
            if (*gperf) results["perfect"] = is_perfect(G);
            if (*gsimple) results["simple"] = is_simple(G, budget);
            rep["results"] = results;
            return emit(rep, true, human);
        }
        if (*giso) {
            json rep = report_envelope("group iso", {{"a", gr_a}, {"b", gr_b}}, budget);
            auto A = parse_named_group(gr_a, budget);
            auto B = parse_named_group(gr_b, budget);
            auto r = iso_small(A.perm, B.perm, budget);
            json results;
            results["order_a"] = A.perm.order();
            results["order_b"] = B.perm.order();
            results["isomorphic"] = r.isomorphic;
            if (r.isomorphic) {
                json map;
                for (std::size_t i = 0; i < r.gen_from.size(); ++i)
                    map.push_back({{"from", r.gen_from[i].to_text()},
                                   {"to", r.gen_to[i].to_text()}});
                results["generator_map"] = map;
            } else {
                results["certificate"] = r.certificate;
            }
            rep["results"] = results;
            return emit(rep, true, human);
        }
        if (*cbuild) {
            json rep = report_envelope(
                "classical build", {{"group", c_kind}, {"n", c_n}, {"q", c_q}}, budget);
            json results;
            if (c_kind == "sp" || c_kind == "o" || c_kind == "u") {
                PseudoQuadraticForm pq =
                    !c_form.empty()
                        ? form_from_input(parse_form_file(c_form))
                        : (c_kind == "sp"
                               ? detail::standard_symplectic(detail::field_of_order(c_q), c_n)
                           : c_kind == "o"
                               ? detail::standard_orthogonal(detail::field_of_order(c_q), c_n)
                               : detail::standard_unitary(
                                     field_make(detail::field_of_order(c_q).p(),
                                                detail::field_of_order(c_q).k() * 2),
                                     c_n));
                auto U = build_unitary(pq, budget);
                results["order"] = U.elements.size();
                results["isotropic_points"] = U.iso_points.size();
                results["point_action_order"] = U.on_isotropic_points.order();
            } else {
                std::string spec = c_kind + "(" + std::to_string(c_n) + "," +
                                   std::to_string(c_q) + ")";
                auto g = parse_named_group(spec, budget);
                results["order"] = g.order();
                results["degree"] = g.perm.degree();
                results["description"] = g.description;
            }
            rep["results"] = results;
            return emit(rep, true, human);
        }
        if (*cstein) {
            json rep = report_envelope("classical steinberg",
                                       {{"n", s_n},
                                        {"q", s_q},
                                        {"quat", s_quat},
                                        {"samples", s_samples},
                                        {"seed", seed}},
                                       budget);
            SteinbergReport r = s_quat ? check_steinberg_quat(s_n, s_samples, seed)
                                       : check_steinberg_field(s_n, detail::field_of_order(s_q));
            rep["results"] = {{"SR1", r.sr1},
                              {"SR2", r.sr2},
                              {"SR3", r.sr3},
                              {"checked", r.checked},
                              {"convention", r.convention}};
            return emit(rep, r.all(), human);
        }
        if (*cdet) {
            json rep = report_envelope("classical det",
                                       {{"file", d_file}, {"q", d_q}, {"quat", d_quat}}, budget);
            std::istringstream in(slurp(d_file));
            std::vector<std::vector<std::string>> rows;
            std::string line;
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                std::istringstream ls(line);
                std::vector<std::string> row;
                std::string tok;
                while (ls >> tok) row.push_back(tok);
                rows.push_back(row);
            }
            if (rows.empty()) throw std::invalid_argument("empty matrix file");
            json results;
            if (d_quat) {
                QMat m(static_cast<unsigned>(rows.size()),
                       static_cast<unsigned>(rows[0].size()));
                for (unsigned r = 0; r < m.rows(); ++r)
                    for (unsigned c = 0; c < m.cols(); ++c) m.at(r, c) = quat_parse(rows[r][c]);
                Quat d = dieudonne_det(m);
                results["class_representative"] = quat_literal(d);
                results["norm"] = geomforge::detail::rat_str(quat_norm(d));
            } else {
                if (d_q == 0) throw std::invalid_argument("need --q or --quat");
                const Gf& F = detail::field_of_order(d_q);
                FMat m(F, static_cast<unsigned>(rows.size()),
                       static_cast<unsigned>(rows[0].size()));
                for (unsigned r = 0; r < m.rows(); ++r)
                    for (unsigned c = 0; c < m.cols(); ++c)
                        m.at(r, c) = static_cast<std::uint32_t>(std::stoul(rows[r][c])) % F.q();
                results["det"] = dieudonne_det(m);
            }
            rep["results"] = results;
            return emit(rep, true, human);
        }
        if (*cmouf) {
            json rep = report_envelope("classical moufang",
                                       {{"q", m_q}, {"level", m_level}}, budget);
            auto ms = moufang_set_projective_line(
                detail::field_of_order(m_q),
                m_level == "el" ? MoufangLevel::EL : MoufangLevel::GL, budget);
            auto r = check_moufang(ms, budget);
            auto rns = regular_normal_subgroups(ms.G, ms.x, budget);
            rep["results"] = {{"MS1", r.ms1},
                              {"MS2", r.ms2},
                              {"MS3", r.ms3},
                              {"u_order", r.u_order},
                              {"sharply_2transitive", r.sharply_2transitive},
                              {"regular_normal_subgroups", rns.size()}};
            return emit(rep, r.all() && rns.size() == 1, human);
        }
        if (*crec) {
            json inputs;
            PermGroup G = group_from_spec_or_file(r_spec, r_file, budget, inputs);
            json rep = report_envelope("classical reconstruct", inputs, budget);
            auto geo = reconstruct_lines(G, budget);
            auto ax = check_pg_axioms(geo);
            json lines = json::array();
            for (std::uint32_t l = 0; l < geo.num_lines(); ++l) lines.push_back(geo.points_of_line(l));
            rep["results"] = {{"points", geo.num_points()},
                              {"lines", geo.num_lines()},
                              {"pg_axioms_pass", ax.all_pass()},
                              {"line_rows", lines}};
            return emit(rep, ax.all_pass(), human);
        }
        if (*bflags) {
            json rep = report_envelope("building flags", {{"rank", b_rank}, {"q", b_q}}, budget);
            auto fc = flag_complex(build_pg(b_rank, detail::field_of_order(b_q), budget));
            std::size_t vertices = 0;
            for (const auto& layer : fc.layers) vertices += layer.size();
            rep["results"] = {{"vertices", vertices},
                              {"chambers", fc.chambers.size()},
                              {"chamber_graph_connected", fc.chamber_graph_connected()}};
            return emit(rep, true, human);
        }
        if (*bapart) {
            json rep = report_envelope("building apartment",
                                       {{"rank", b_rank}, {"q", b_q}}, budget);
            const Gf& F = detail::field_of_order(b_q);
            unsigned dim = b_rank + 1;
            VSpace V(F, dim);
            std::vector<Subspace> frame;
            for (unsigned i = 0; i < dim; ++i)
                frame.push_back(span_of_columns(F, dim, {V.basis_vector(i)}));
            auto ap = apartment(frame);
            rep["results"] = {{"vertices", ap.vertices.size()},
                              {"chambers", ap.chambers.size()}};
            return emit(rep, true, human);
        }
        if (*btits) {
            json rep = report_envelope("building tits", {{"rank", b_rank}, {"q", b_q}}, budget);
            auto ts = extract_tits_system(b_rank, detail::field_of_order(b_q), budget);
            auto r = verify_tits(ts);
            rep["results"] = {{"group_order", ts.G.order()},
                              {"chambers", ts.complex.chambers.size()},
                              {"B_order", ts.B.size()},
                              {"N_order", ts.N.size()},
                              {"T_order", ts.T.size()},
                              {"TS1", r.ts1},
                              {"TS2", r.ts2},
                              {"TS3", r.ts3},
                              {"TS4", r.ts4},
                              {"TS5", r.ts5},
                              {"B_is_chamber_stabilizer", r.b_is_chamber_stabilizer},
                              {"coxeter_ok", r.coxeter_ok},
                              {"splitting_ok", r.splitting_ok},
                              {"weyl_order", r.weyl_order},
                              {"bruhat_cells", r.bruhat_cells},
                              {"cell_sizes", r.cell_sizes},
                              {"one_apartment_chamber_per_cell",
                               r.one_apartment_chamber_per_cell}};
            return emit(rep, r.all(), human);
        }
        if (*broots) {
            json rep = report_envelope("building roots", {{"n", b_n}, {"q", b_rq}}, budget);
            auto rs = build_root_system(b_n);
            json results;
            results["roots"] = rs.roots.size();
            results["positive_roots"] = rs.roots.size() / 2;
            bool pass = true;
            if (b_rq) {
                auto rr = root_commutator_correspondence(b_n, detail::field_of_order(b_rq));
                results["commutator_rows"] = rr.rows.size();
                results["all_match"] = rr.all_match;
                results["all_predictions_ok"] = rr.all_predictions_ok;
                pass = rr.all_match && rr.all_predictions_ok;
            }
            rep["results"] = results;
            return emit(rep, pass, human);
        }
        if (*verify) {
            if (v_suite != "paper") throw std::invalid_argument("unknown suite: " + v_suite);
            json rep = report_envelope("verify", {{"suite", v_suite}}, budget);
            auto results = run_paper_suite(budget);
            bool all = true;
            json arr = json::array();
            for (const auto& r : results) {
                all = all && r.pass;
                json row = {{"id", r.id}, {"name", r.name}, {"pass", r.pass}};
                if (!r.detail.empty()) row["detail"] = r.detail;
                if (timing) row["seconds"] = r.seconds;
                arr.push_back(row);
                std::cerr << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name;
                if (timing) std::cerr << " (" << r.seconds << "s)";
                std::cerr << "\n";
            }
            rep["results"] = {{"criteria", arr}};
            return emit(rep, all, human);
        }
        throw std::invalid_argument("no subcommand matched");
    } catch (const budget_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
