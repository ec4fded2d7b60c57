// Command line front end: exact distances, geodesic enumeration, geodesic
// interpolation, measure histograms, and the inequality / oracle checks.
// All sampling is seed-determined; identical invocations give byte-identical
// output.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gasket/gasket.hpp"
#include "gasket/sampling.hpp"

using namespace gasket;
using nlohmann::json;

namespace {

std::vector<mpq_class> parse_weight_list(const std::string& text) {
    std::vector<mpq_class> out;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) out.push_back(parse_rational(item));
    return out;
}

std::vector<Cell> parse_cell_list(const std::string& text, int n) {
    std::vector<Cell> out;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ';')) out.push_back(parse_cell(item, n));
    return out;
}

json geodesic_json(const Geodesic& g) {
    json j;
    j["from"] = to_text(g.a);
    j["to"] = to_text(g.b);
    j["length"] = g.length.frac_str();
    j["kind"] = g.kind == GeodesicKind::P1   ? "P1"
                : g.kind == GeodesicKind::P2 ? "P2"
                                             : "within-cell";
    j["anchors"] = json::array();
    for (const auto& a : g.anchors) j["anchors"].push_back(to_text(a));
    j["polyline"] = json::array();
    for (const auto& p : g.polyline) {
        json pt = json::array();
        for (const auto& c : p.coords) pt.push_back(c.frac_str());
        j["polyline"].push_back(pt);
    }
    return j;
}

json rational_point_json(const RationalPoint& p) {
    json pt = json::array();
    for (const auto& c : p.coords) pt.push_back(rational_str(c));
    return pt;
}

json common_path_json(const CommonPath& cp) {
    json j;
    j["cell_a"] = to_text(cp.A);
    if (!cp.point_target) j["cell_b"] = to_text(cp.B);
    j["entry"] = to_text(cp.entry);
    j["exit"] = to_text(cp.exit_point);
    j["entry_index"] = int(cp.entry_index);
    j["exit_index"] = int(cp.exit_index);
    j["length"] = cp.D.frac_str();
    j["t1f"] = rational_str(cp.t1f);
    j["t2i"] = rational_str(cp.t2i);
    j["regular"] = cp.regular();
    return j;
}

/// Writes to the path, or to stdout when the path is empty.
void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream os(out_path);
    if (!os) throw Error("cannot open output file: " + out_path);
    os << content;
}

struct DensityOptions {
    std::string measure = "nu";
    int n = 2;
    int depth = 8;
    std::string t_str = "1/2";
    int k = 1, m = 1;
    std::string method = "grid";
    std::string weights;
    int entry = 0, exit = 1;
    std::string cell_a, cell_b, point_b;
    std::string out;
};

int run_density(const DensityOptions& o) {
    mpq_class t = parse_rational(o.t_str);
    json meta{{"measure", o.measure}, {"n", o.n}, {"depth", o.depth}};
    std::ostringstream body;
    if (o.measure == "nu") {
        SelfSimilarMeasure1D meas = SelfSimilarMeasure1D::standard(o.n);
        if (!o.weights.empty()) {
            auto w = parse_weight_list(o.weights);
            if (w.size() != 2) throw InvalidWeights("nu takes two weights: w0,w1");
            meas = {w[0], w[1]};
            meas.validate();
        }
        write_histogram_csv(body, nu_histogram(meas, o.depth), meta);
    } else if (o.measure == "tilde-nu") {
        PushforwardSpec spec = standard_spec(o.n, t, o.k, o.m);
        if (!o.weights.empty())
            spec = weighted_variants(o.n, parse_weight_list(o.weights), o.entry, o.exit, t, o.k,
                                     o.m);
        meta["t"] = rational_str(t);
        meta["k"] = o.k;
        meta["m"] = o.m;
        if (o.method == "grid" || o.method == "ifs") {
            meta["method"] = o.method;
            if (o.method == "grid")
                write_histogram_csv(body, tilde_nu_histogram_grid(spec, o.depth), meta);
            else
                write_histogram_csv(body, tilde_nu_histogram_ifs(spec, o.depth).hist, meta);
        } else if (o.method == "both") {
            Histogram grid = tilde_nu_histogram_grid(spec, o.depth);
            IfsResult ifs = tilde_nu_histogram_ifs(spec, o.depth);
            std::string base = o.out.empty() ? "tilde_nu" : o.out;
            auto dot = base.rfind(".csv");
            if (dot != std::string::npos) base = base.substr(0, dot);
            std::ostringstream gb, fb;
            meta["method"] = "grid";
            write_histogram_csv(gb, grid, meta);
            emit(base + ".grid.csv", gb.str());
            meta["method"] = "ifs";
            write_histogram_csv(fb, ifs.hist, meta);
            emit(base + ".ifs.csv", fb.str());
            double l1 = l1_distance(grid, ifs.hist);
            std::cout << "L1(grid, ifs) = " << l1 << " after " << ifs.iterations
                      << " iterations\n";
            return l1 <= 0.02 ? 0 : 1;
        } else {
            throw ParseError("unknown method: " + o.method);
        }
    } else if (o.measure == "eta-point") {
        Cell A = parse_cell(o.cell_a, o.n);
        PointAddress b = parse_address(o.point_b, o.n);
        EtaResult res = eta_cell_to_point(A, b, t, o.depth);
        meta["t"] = rational_str(t);
        meta["cell_a"] = to_text(A);
        meta["point_b"] = to_text(b);
        meta["total"] = rational_str(res.normalization);
        write_histogram_csv(body, res.hist, meta);
    } else if (o.measure == "eta-cell") {
        Cell A = parse_cell(o.cell_a, o.n);
        Cell B = parse_cell(o.cell_b, o.n);
        EtaResult res = eta_cell_to_cell(A, B, t, o.depth);
        meta["t"] = rational_str(t);
        meta["cell_a"] = to_text(A);
        meta["cell_b"] = to_text(B);
        meta["total"] = rational_str(res.normalization);
        write_histogram_csv(body, res.hist, meta);
    } else {
        throw ParseError("unknown measure: " + o.measure);
    }
    emit(o.out, body.str());
    return 0;
}

struct IneqOptions {
    std::string check = "gineq";
    int n = 2;
    int depth = 12;
    int grid = 10000;
    std::string t_str = "1/2";
    std::string cell_a, cell_b;
    std::string union_a, union_b;
    std::string out;
    int random = 0;
    unsigned long seed = 1;
    std::string format = "json";
};

int run_inequality(const IneqOptions& o) {
    mpq_class t = parse_rational(o.t_str);
    json j;
    bool ok = true;
    if (o.check == "phi") {
        PhiLemmaReport rep = check_phi_lemma(o.n, o.grid);
        ok = rep.ok();
        j = {{"check", "phi"},
             {"n", o.n},
             {"grid", o.grid},
             {"max_violation_left", rep.max_violation_left},
             {"max_violation_right", rep.max_violation_right},
             {"ok", ok}};
    } else if (o.check == "gineq") {
        GIneqReport rep = check_gineq(o.n, o.depth);
        ok = rep.ok();
        j = {{"check", "gineq"}, {"n", o.n}, {"depth", o.depth}, {"min_slack", rep.min_slack},
             {"ok", ok}};
        if (!o.out.empty()) {
            // CDF-vs-Phi table, one row per dyadic point.
            std::ostringstream body;
            body << "# schema=gasket-gineq-v1\n# " << j.dump() << "\nx,cdf,phi\n";
            auto meas = SelfSimilarMeasure1D::standard(o.n);
            long steps = 1L << o.depth;
            for (long i = 0; i <= steps; ++i) {
                Dyadic x(mpz_class(i), static_cast<unsigned>(o.depth));
                body << rational_str(mpq_class(i, steps)) << ','
                     << rational_str(nu_cdf(meas, x)) << ',' << phi(o.n, x.to_double()) << '\n';
            }
            emit(o.out, body.str());
        }
    } else if (o.check == "cell") {
        CellIneqReport rep =
            check_cell_inequality(parse_cell(o.cell_a, o.n), parse_cell(o.cell_b, o.n), t);
        ok = rep.ok();
        j = {{"check", "cell"},     {"n", o.n},     {"t", rational_str(t)},
             {"h1", rational_str(rep.h1)}, {"lhs", rep.lhs}, {"rhs", rep.rhs},
             {"sharp", rep.sharp},  {"ok", ok}};
    } else if (o.check == "main") {
        CellUnion A{parse_cell_list(o.union_a.empty() ? o.cell_a : o.union_a, o.n)};
        CellUnion B{parse_cell_list(o.union_b.empty() ? o.cell_b : o.union_b, o.n)};
        MainIneqReport rep = check_main_inequality(A, B, t);
        ok = rep.ok();
        j = {{"check", "main"},     {"n", o.n},     {"t", rational_str(t)},
             {"h1", rational_str(rep.h1)}, {"lhs", rep.lhs}, {"rhs", rep.rhs},
             {"rhs_stated", rep.rhs_stated}, {"stated_ok", rep.stated_ok()},
             {"sharp", rep.sharp},  {"ok", ok}};
    } else if (o.check == "random") {
        // Seeded sweep of random regular cell pairs through check_cell_inequality.
        sampling::Rng rng(o.seed);
        json cases = json::array();
        for (int i = 0; i < o.random; ++i) {
            auto [A, B] = sampling::random_regular_cell_pair(rng, o.n);
            CommonPath cp = build_common_path(A, B);
            mpq_class tc = sampling::random_t_in_window(rng, cp.t1f, cp.t2i);
            CellIneqReport rep = check_cell_inequality(A, B, tc);
            ok = ok && rep.ok();
            cases.push_back({{"index", i},
                             {"cell_a", to_text(A)},
                             {"cell_b", to_text(B)},
                             {"t", rational_str(tc)},
                             {"slack", rep.lhs - rep.rhs}});
        }
        j = {{"check", "random"}, {"n", o.n}, {"seed", o.seed}, {"cases", cases}, {"ok", ok}};
    } else {
        throw ParseError("unknown check: " + o.check);
    }
    std::cout << j.dump(2) << "\n";
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact geometry of Sierpinski n-gaskets: geodesics, interpolation, measures"};
    app.require_subcommand(1);

    int n = 2;

    auto* dist = app.add_subcommand("distance", "exact distance and geodesic count");
    std::string dx, dy;
    dist->add_option("-n", n, "gasket dimension");
    dist->add_option("x", dx, "first point address")->required();
    dist->add_option("y", dy, "second point address")->required();

    auto* geo = app.add_subcommand("geodesics", "enumerate all geodesics");
    std::string gx, gy, geo_out, geo_format = "json";
    geo->add_option("-n", n, "gasket dimension");
    geo->add_option("x", gx, "first point address")->required();
    geo->add_option("y", gy, "second point address")->required();
    geo->add_option("--out", geo_out, "output file (default stdout)");
    geo->add_option("--format", geo_format, "json|text");

    auto* interp = app.add_subcommand("interpolate", "geodesic interpolation");
    std::string ix, iy, icell_a, icell_b, ipoint_b, it_str = "1/2", interp_out;
    interp->add_option("-n", n, "gasket dimension");
    interp->add_option("x", ix, "first point address (point mode)");
    interp->add_option("y", iy, "second point address (point mode)");
    interp->add_option("--cell-a", icell_a, "source cell word, e.g. \"1 1\"");
    interp->add_option("--cell-b", icell_b, "target cell word");
    interp->add_option("--point-b", ipoint_b, "target point address");
    interp->add_option("-t", it_str, "interpolation parameter p/q");
    interp->add_option("--out", interp_out, "output file (default stdout)");

    auto* dens = app.add_subcommand("density", "measure histograms as CSV");
    DensityOptions dopt;
    dens->add_option("--measure", dopt.measure, "nu|tilde-nu|eta-point|eta-cell");
    dens->add_option("-n", dopt.n, "gasket dimension");
    dens->add_option("-M,--depth", dopt.depth, "histogram depth (2^M bins)");
    dens->add_option("-t", dopt.t_str, "interpolation parameter p/q");
    dens->add_option("-k", dopt.k, "source cell level");
    dens->add_option("-m", dopt.m, "target cell level");
    dens->add_option("--method", dopt.method, "grid|ifs|both");
    dens->add_option("--weights", dopt.weights, "comma separated rational weights");
    dens->add_option("--entry", dopt.entry, "entry corner index for weighted variants");
    dens->add_option("--exit", dopt.exit, "exit corner index for weighted variants");
    dens->add_option("--cell-a", dopt.cell_a, "source cell word (eta modes)");
    dens->add_option("--cell-b", dopt.cell_b, "target cell word (eta-cell)");
    dens->add_option("--point-b", dopt.point_b, "target point address (eta-point)");
    dens->add_option("--out", dopt.out, "output file (default stdout)");

    auto* ineq = app.add_subcommand("inequality", "interpolation inequality checks");
    IneqOptions iopt;
    ineq->add_option("--check", iopt.check, "phi|gineq|cell|main|random");
    ineq->add_option("-n", iopt.n, "gasket dimension");
    ineq->add_option("-M,--depth", iopt.depth, "dyadic depth for gineq");
    ineq->add_option("--grid", iopt.grid, "grid size for the phi lemma");
    ineq->add_option("-t", iopt.t_str, "interpolation parameter p/q");
    ineq->add_option("--cell-a", iopt.cell_a, "cell word");
    ineq->add_option("--cell-b", iopt.cell_b, "cell word");
    ineq->add_option("--union-a", iopt.union_a, "semicolon separated cell words");
    ineq->add_option("--union-b", iopt.union_b, "semicolon separated cell words");
    ineq->add_option("--random", iopt.random, "number of random configurations");
    ineq->add_option("--seed", iopt.seed, "sampling seed");
    ineq->add_option("--out", iopt.out, "CSV output for the gineq table");
    ineq->add_option("--format", iopt.format, "json");

    auto* ver = app.add_subcommand("verify", "exhaustive oracle comparison");
    int vm = 3;
    bool vno_counts = false;
    std::string vformat = "text";
    ver->add_option("-n", n, "gasket dimension");
    ver->add_option("-m", vm, "graph level");
    ver->add_flag("--no-counts", vno_counts, "skip geodesic count comparison");
    ver->add_option("--format", vformat, "text|json");

    CLI11_PARSE(app, argc, argv);

    try {
        if (dist->parsed()) {
            PointAddress x = parse_address(dx, n), y = parse_address(dy, n);
            std::size_t count = count_geodesics(x, y);  // throws SamePoint for x == y
            std::cout << distance(x, y).frac_str() << " (geodesics: " << count << ")\n";
            return 0;
        }
        if (geo->parsed()) {
            auto gs = enumerate_geodesics(parse_address(gx, n), parse_address(gy, n));
            if (geo_format == "text") {
                std::ostringstream body;
                for (const auto& g : gs) {
                    body << g.length.frac_str() << " " << to_text(g.a);
                    for (const auto& a : g.anchors) body << " " << to_text(a);
                    body << " " << to_text(g.b) << "\n";
                }
                emit(geo_out, body.str());
            } else {
                json j;
                j["count"] = gs.size();
                j["distance"] = gs.front().length.frac_str();
                j["geodesics"] = json::array();
                for (const auto& g : gs) j["geodesics"].push_back(geodesic_json(g));
                emit(geo_out, j.dump(2) + "\n");
            }
            return 0;
        }
        if (interp->parsed()) {
            mpq_class t = parse_rational(it_str);
            json j;
            if (!icell_a.empty()) {
                Cell A = parse_cell(icell_a, n);
                CommonPath cp = ipoint_b.empty()
                                    ? build_common_path(A, parse_cell(icell_b, n))
                                    : build_common_path(A, parse_address(ipoint_b, n));
                j["common_path"] = common_path_json(cp);
                if (t >= cp.t1f && t <= cp.t2i) {
                    InterpolantInterval iv = interpolant_interval(cp, t);
                    j["interval"] = {{"t", rational_str(t)},
                                     {"s1", rational_str(iv.s1)},
                                     {"s2", rational_str(iv.s2)},
                                     {"length", rational_str(iv.length)},
                                     {"x1", rational_point_json(iv.x1)},
                                     {"x2", rational_point_json(iv.x2)}};
                } else {
                    j["interval"] = nullptr;
                    j["largest_valid_subcell"] =
                        t < cp.t1f && t > 0 ? to_text(largest_valid_subcell(cp, t)) : "";
                }
            } else {
                Dyadic td = Dyadic::from_mpq(t);
                auto pts = interpolate_points(parse_address(ix, n), parse_address(iy, n), td);
                j["t"] = rational_str(t);
                j["points"] = json::array();
                for (const auto& p : pts) j["points"].push_back(to_text(p));
            }
            emit(interp_out, j.dump(2) + "\n");
            return 0;
        }
        if (dens->parsed()) return run_density(dopt);
        if (ineq->parsed()) return run_inequality(iopt);
        if (ver->parsed()) {
            VerifyReport rep = verify_metric(n, vm, !vno_counts);
            if (vformat == "json") {
                std::cout << rep.to_json().dump(2) << "\n";
            } else if (rep.ok()) {
                std::cout << "all pairs OK; max geodesics " << rep.max_count << "\n";
            } else {
                std::cout << rep.mismatches.size() << " mismatches over "
                          << rep.pairs_checked << " pairs\n";
            }
            return rep.ok() ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
