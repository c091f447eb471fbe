#include "isl/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

namespace isl {

namespace {

const std::set<std::string> kSuiteNames = {"compat",    "thm1_1",  "thm2_1",      "defect",
                                           "nijenhuis", "normality", "codim1",    "codim2",
                                           "composition", "crosscheck", "all"};

AmbientStructure ambient_from_json(const nlohmann::json& j) {
    const std::string kind = j.value("kind", "");
    if (kind == "swap") return AmbientStructure::swap(j.at("p").get<int>());
    if (kind == "fixed_axis_swap")
        return AmbientStructure::fixed_axis_swap(j.at("p").get<int>());
    if (kind == "reflection")
        return AmbientStructure::reflection(j.at("p").get<int>(), j.at("q").get<int>());
    if (kind == "custom") {
        const auto& rows = j.at("matrix");
        Mat m(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t c = 0; c < rows[i].size(); ++c) m(i, c) = rows[i][c].get<double>();
        // Deliberately unchecked: the compat suite reports violations.
        return AmbientStructure::custom_unchecked(m, j.value("epsilon", 1));
    }
    throw ConfigError("unknown ambient kind: " + kind);
}

Polynomial polynomial_from_json(const nlohmann::json& j, int m) {
    Polynomial p;
    for (const auto& term : j) {
        Monomial t;
        t.coeff = term.at("c").get<double>();
        t.exps = term.at("e").get<std::vector<int>>();
        if (static_cast<int>(t.exps.size()) != m)
            throw ConfigError("monomial exponent list must have length m");
        p.push_back(std::move(t));
    }
    return p;
}

ImplicitSubmanifold manifold_from_json(const nlohmann::json& j) {
    const std::string kind = j.value("kind", "");
    if (kind == "sphere")
        return ImplicitSubmanifold::sphere(j.at("m").get<int>(), j.at("R").get<double>());
    if (kind == "product_spheres")
        return ImplicitSubmanifold::product_spheres(
            j.at("p").get<int>(), j.at("r1").get<double>(), j.at("r2").get<double>());
    if (kind == "custom") {
        const int m = j.at("m").get<int>();
        std::vector<Polynomial> cs;
        for (const auto& c : j.at("constraints")) cs.push_back(polynomial_from_json(c, m));
        return ImplicitSubmanifold::custom(m, cs);
    }
    throw ConfigError("unknown manifold kind: " + kind);
}

GalleryExample gallery_from_json(const nlohmann::json& j) {
    const std::string id = j.at("id").get<std::string>();
    if (id == "ex1") return GalleryExample::ex1(j.value("p", 2), j.value("R", 1.0));
    if (id == "ex2")
        return GalleryExample::ex2(j.value("p", 2), j.value("r1", 0.6), j.value("r2", 0.8));
    if (id == "ex3") return GalleryExample::ex3(j.value("p", 2), j.value("R", 1.0));
    if (id == "ex4")
        return GalleryExample::ex4(j.value("p", 2), j.value("q", 3), j.value("R", 1.0));
    throw ConfigError("unknown gallery id: " + id);
}

} // namespace

Scenario Scenario::from_json(const nlohmann::json& j) {
    Scenario sc;
    try {
        if (j.contains("gallery")) {
            sc.gallery = gallery_from_json(j.at("gallery"));
            sc.ambient = sc.gallery->ambient;
            sc.manifold = sc.gallery->manifold;
        }
        if (j.contains("ambient")) sc.ambient = ambient_from_json(j.at("ambient"));
        if (j.contains("manifold")) sc.manifold = manifold_from_json(j.at("manifold"));
        if (!sc.ambient || !sc.manifold)
            throw ConfigError("scenario needs an ambient structure and a manifold");
        if (sc.ambient->dim() != sc.manifold->ambient_dim())
            throw ConfigError("ambient and manifold dimensions differ");

        sc.suites = j.value("suites", std::vector<std::string>{"all"});
        if (sc.suites.empty()) throw ConfigError("suite list is empty");
        for (const auto& s : sc.suites)
            if (!kSuiteNames.count(s)) throw ConfigError("unknown suite: " + s);

        if (j.contains("sampling")) {
            const auto& s = j.at("sampling");
            sc.count = s.value("count", 100);
            sc.seed = s.value("seed", std::uint64_t{1});
            if (s.contains("points")) {
                for (const auto& p : s.at("points"))
                    sc.explicit_points.push_back([&] {
                        Vec v(p.size());
                        for (std::size_t i = 0; i < p.size(); ++i) v[i] = p[i].get<double>();
                        return v;
                    }());
            }
        }
        if (sc.count < 1) throw ConfigError("sampling count must be >= 1");
        if (j.contains("tolerances")) {
            sc.tol_alg = j.at("tolerances").value("alg", kAlgTol);
            sc.tol_fd = j.at("tolerances").value("fd", kFdTol);
        }
        sc.fd_step = j.value("fd_step", 1e-5);
        if (sc.tol_alg <= 0 || sc.tol_fd <= 0 || sc.fd_step <= 0)
            throw ConfigError("tolerances and step must be positive");
        if (j.contains("output")) {
            sc.format = j.at("output").value("format", "text");
            sc.out_path = j.at("output").value("path", "");
        }
        if (sc.format != "text" && sc.format != "json" && sc.format != "csv")
            throw ConfigError("unknown output format: " + sc.format);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad scenario json: ") + e.what());
    }
    return sc;
}

Scenario Scenario::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scenario file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad scenario json: ") + e.what());
    }
    return from_json(j);
}

nlohmann::json Scenario::echo() const {
    nlohmann::json j;
    if (gallery) {
        j["gallery"] = {{"id", gallery->name()}, {"p", gallery->p}};
        if (gallery->id == GalleryId::Ex2ProductSpheres) {
            j["gallery"]["r1"] = gallery->r1;
            j["gallery"]["r2"] = gallery->r2;
        } else {
            j["gallery"]["R"] = gallery->R;
        }
        if (gallery->id == GalleryId::Ex4ReflectionSphere) j["gallery"]["q"] = gallery->q;
    }
    const char* ambient_kind = "custom";
    switch (ambient->kind()) {
        case AmbientKind::Swap: ambient_kind = "swap"; break;
        case AmbientKind::FixedAxisSwap: ambient_kind = "fixed_axis_swap"; break;
        case AmbientKind::Reflection: ambient_kind = "reflection"; break;
        case AmbientKind::Custom: break;
    }
    j["ambient"] = {{"kind", ambient_kind}, {"m", ambient->dim()},
                    {"epsilon", ambient->epsilon()}};
    const char* manifold_kind = "custom";
    switch (manifold->kind()) {
        case ManifoldKind::Sphere: manifold_kind = "sphere"; break;
        case ManifoldKind::ProductSpheres: manifold_kind = "product_spheres"; break;
        case ManifoldKind::CustomImplicit: break;
    }
    j["manifold"] = {{"kind", manifold_kind}, {"m", manifold->ambient_dim()},
                     {"r", manifold->codim()}};
    j["suites"] = suites;
    j["sampling"] = {{"count", count}, {"seed", seed},
                     {"explicit_points", explicit_points.size()}};
    j["tolerances"] = {{"alg", tol_alg}, {"fd", tol_fd}};
    j["fd_step"] = fd_step;
    return j;
}

const AmbientStructure& Scenario::resolved_ambient() const {
    if (!ambient) throw ConfigError("scenario has no ambient structure");
    return *ambient;
}

const ImplicitSubmanifold& Scenario::resolved_manifold() const {
    if (!manifold) throw ConfigError("scenario has no manifold");
    return *manifold;
}

namespace {

std::set<std::string> expand_suites(const Scenario& sc) {
    std::set<std::string> out;
    const int r = sc.resolved_manifold().codim();
    for (const auto& s : sc.suites) {
        if (s != "all") {
            if (s == "codim1" && r != 1)
                throw ConfigError("codim1 suite selected on a manifold of codimension " +
                                  std::to_string(r));
            if (s == "codim2" && r != 2)
                throw ConfigError("codim2 suite selected on a manifold of codimension " +
                                  std::to_string(r));
            if ((s == "crosscheck") && !sc.gallery)
                throw ConfigError("crosscheck suite needs a gallery scenario");
            if (s == "composition" &&
                (!sc.gallery || sc.gallery->id != GalleryId::Ex2ProductSpheres))
                throw ConfigError("composition suite needs an ex2 gallery scenario");
            out.insert(s);
            continue;
        }
        out.insert({"compat", "thm1_1", "thm2_1", "defect", "nijenhuis", "normality"});
        if (r == 1) out.insert("codim1");
        if (r == 2) out.insert("codim2");
        if (sc.gallery) out.insert("crosscheck");
        if (sc.gallery && sc.gallery->id == GalleryId::Ex2ProductSpheres)
            out.insert("composition");
    }
    return out;
}

} // namespace

RunResult run_scenario(const Scenario& sc) {
    const AmbientStructure& amb = sc.resolved_ambient();
    const ImplicitSubmanifold& M = sc.resolved_manifold();
    const std::set<std::string> suites = expand_suites(sc);

    std::vector<Vec> points;
    if (!sc.explicit_points.empty()) {
        for (const Vec& p : sc.explicit_points) points.push_back(retract(M, p));
    } else {
        points = sample_points(M, sc.count, sc.seed);
    }

    const bool need_fd = suites.count("thm2_1") || suites.count("defect") ||
                         suites.count("nijenhuis") || suites.count("normality") ||
                         suites.count("codim1") || suites.count("codim2");

    ResidualReport total;
    if (suites.count("compat")) {
        ResidualReport compat = amb.check_compatibility();
        for (auto& rec : compat.records) rec.tolerance = std::min(rec.tolerance, sc.tol_alg);
        total.append(compat);
    }

    for (std::size_t idx = 0; idx < points.size(); ++idx) {
        const Vec& x = points[idx];
        try {
            PointFrame f = frames_at(M, x);
            InducedStructureData ind = compute_induced(amb, f);
            ResidualReport point_rep;

            if (suites.count("thm1_1")) {
                point_rep.append(induced_identity_suite(ind, sc.tol_alg));
                point_rep.append(distribution_check(ind, sc.tol_alg));
                Classification cls = classify_structure(ind, sc.tol_alg);
                auto& rec = point_rep.add_gated("thm1_1", "classification", cls.name);
                rec.details.push_back({"a_norm", cls.a_norm});
                rec.details.push_back({"cubic_residual", cls.cubic_residual});
            }

            if (need_fd) {
                FdConfig cfg{sc.fd_step * std::max(1.0, norm(x))};
                FdBundle bundle = analyze_point(amb, M, f, ind, cfg);

                if (suites.count("thm2_1"))
                    point_rep.append(
                        covariant_identity_suite(ind, bundle.shape, bundle.cov, sc.tol_fd));
                if (suites.count("defect"))
                    point_rep.append(defect_suite(amb, M, f, ind, bundle.shape, bundle.cov,
                                                  cfg, sc.tol_fd));

                const bool need_nij = suites.count("nijenhuis") || suites.count("normality") ||
                                      suites.count("codim2");
                NijenhuisData nij;
                CommutatorData com;
                NormalityVerdict verdict;
                if (need_nij) {
                    nij = nijenhuis_at(ind, bundle.shape, bundle.cov);
                    com = commutators(ind, bundle.shape);
                    verdict = normality_and_commutativity(ind, bundle.shape, nij, sc.tol_fd);
                }
                if (suites.count("nijenhuis")) {
                    point_rep.append(nijenhuis_suite(ind, bundle.shape, com, nij, sc.tol_fd));
                    try {
                        point_rep.append(nijenhuis_component_suite(ind, bundle.shape, com, nij,
                                                                   sc.tol_fd));
                    } catch (const HypothesisError& e) {
                        for (const char* id : {"3.42.i", "3.42.ii", "3.42.iii", "3.42.iv"})
                            point_rep.add_gated("nijenhuis", id, e.what());
                    }
                }
                if (suites.count("normality")) {
                    auto& info = point_rep.add_gated("normality", "verdict", "diagnostic");
                    info.details.push_back({"is_normal", verdict.is_normal ? 1.0 : 0.0});
                    info.details.push_back({"commutes", verdict.commutes ? 1.0 : 0.0});
                    info.details.push_back({"n1_norm", verdict.n1_norm});
                    info.details.push_back({"commute_defect", verdict.commute_defect});
                    info.details.push_back({"det_gate", verdict.det_gate});
                    info.details.push_back({"margin", verdict.n1_norm / sc.tol_fd});
                    if (verdict.gate_ok) {
                        point_rep.add("normality", "4.5",
                                      verdict.is_normal == verdict.commutes ? 0.0 : 1.0, 0.5);
                    } else {
                        point_rep.add_gated("normality", "4.5",
                                            "determinant gate or normal connection fails");
                    }
                    IndependenceRecord indep = independence_test(ind);
                    auto& rec = point_rep.add("normality", "4.2-4.4",
                                              indep.consistent ? 0.0 : 1.0, 0.5);
                    rec.details.push_back({"det", indep.det});
                    rec.details.push_back({"rank", double(indep.rank)});
                }
                if (suites.count("codim1"))
                    point_rep.append(hypersurface_suite(ind, bundle.shape, bundle.cov,
                                                        sc.tol_alg, sc.tol_fd));
                if (suites.count("codim2")) {
                    point_rep.append(
                        codim2_suite(ind, bundle.shape, bundle.cov, sc.tol_alg, sc.tol_fd));
                    point_rep.append(codim2_commutation_suite(ind, bundle.shape, com, verdict,
                                                              sc.tol_fd));
                }
            }
            total.merge_point(point_rep, static_cast<int>(idx));
        } catch (const Error& e) {
            throw Error(std::string(e.what()) + " [point " + std::to_string(idx) + "]");
        }
    }

    if (suites.count("crosscheck"))
        total.append(oracle_crosscheck(*sc.gallery, points, sc.tol_alg));
    if (suites.count("composition"))
        total.append(composition_crosscheck(*sc.gallery, points, sc.tol_alg));

    total.sort_records();
    RunResult out{sc, std::move(total), 0};
    out.exit_code = out.report.all_passed() ? 0 : 1;
    return out;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

const char* status_of(const ResidualRecord& r) {
    if (r.gated) return "GATED";
    return r.max_residual <= r.tolerance ? "PASS" : "FAIL";
}

void emit_text(const RunResult& result, std::ostream& os) {
    char line[256];
    std::snprintf(line, sizeof(line), "%-6s %-12s %-14s %-18s %-10s %s\n", "STATUS", "SUITE",
                  "IDENTITY", "RESIDUAL", "TOL", "NOTE");
    os << line;
    for (const auto& r : result.report.records) {
        std::string note = r.note;
        if (r.gated_points > 0 && !r.gated)
            note += (note.empty() ? "" : "; ") + std::string("gated at ") +
                    std::to_string(r.gated_points) + " point(s)";
        std::snprintf(line, sizeof(line), "%-6s %-12s %-14s %-18s %-10s %s\n", status_of(r),
                      r.suite.c_str(), r.id.c_str(),
                      r.gated ? "-" : fmt_double(r.max_residual).c_str(),
                      r.gated ? "-" : fmt_double(r.tolerance).c_str(), note.c_str());
        os << line;
        for (const auto& d : r.details) {
            std::snprintf(line, sizeof(line), "       . %-20s %s\n", d.first.c_str(),
                          fmt_double(d.second).c_str());
            os << line;
        }
    }
    std::size_t passed = 0, failed = 0, gated = 0;
    for (const auto& r : result.report.records) {
        if (r.gated)
            ++gated;
        else if (r.passed())
            ++passed;
        else
            ++failed;
    }
    os << "summary: " << passed << " passed, " << failed << " failed, " << gated
       << " gated, exit " << result.exit_code << "\n";
}

nlohmann::json record_json(const ResidualRecord& r) {
    nlohmann::json j;
    j["suite"] = r.suite;
    j["id"] = r.id;
    j["status"] = status_of(r);
    j["gated"] = r.gated;
    if (!r.gated) {
        j["max_residual"] = r.max_residual;
        j["tolerance"] = r.tolerance;
        j["worst_point"] = r.worst_point;
    }
    if (!r.note.empty()) j["note"] = r.note;
    if (r.gated_points > 0) j["gated_points"] = r.gated_points;
    if (!r.details.empty()) {
        nlohmann::json d;
        for (const auto& kv : r.details) d[kv.first] = kv.second;
        j["details"] = d;
    }
    if (!r.per_point.empty()) {
        nlohmann::json pp = nlohmann::json::array();
        for (const auto& p : r.per_point) pp.push_back({p.point_index, p.value});
        j["per_point"] = pp;
    }
    return j;
}

void emit_json(const RunResult& result, std::ostream& os) {
    nlohmann::json j;
    j["scenario"] = result.scenario.echo();
    nlohmann::json recs = nlohmann::json::array();
    for (const auto& r : result.report.records) recs.push_back(record_json(r));
    j["records"] = recs;
    std::size_t passed = 0, failed = 0, gated = 0;
    for (const auto& r : result.report.records) {
        if (r.gated)
            ++gated;
        else if (r.passed())
            ++passed;
        else
            ++failed;
    }
    j["summary"] = {{"total", result.report.records.size()},
                    {"passed", passed},
                    {"failed", failed},
                    {"gated", gated},
                    {"exit_code", result.exit_code}};
    os << j.dump(2) << "\n";
}

void emit_csv(const RunResult& result, std::ostream& os) {
    os << "suite,id,point,residual,tolerance,status\n";
    char buf[40];
    for (const auto& r : result.report.records) {
        if (r.per_point.empty()) {
            os << r.suite << "," << r.id << ",-1,";
            if (r.gated) {
                os << ",,GATED\n";
            } else {
                std::snprintf(buf, sizeof(buf), "%.17g", r.max_residual);
                os << buf << ",";
                std::snprintf(buf, sizeof(buf), "%.17g", r.tolerance);
                os << buf << "," << (r.passed() ? "PASS" : "FAIL") << "\n";
            }
            continue;
        }
        for (const auto& p : r.per_point) {
            os << r.suite << "," << r.id << "," << p.point_index << ",";
            std::snprintf(buf, sizeof(buf), "%.17g", p.value);
            os << buf << ",";
            std::snprintf(buf, sizeof(buf), "%.17g", r.tolerance);
            os << buf << "," << (p.value <= r.tolerance ? "PASS" : "FAIL") << "\n";
        }
    }
}

} // namespace

void emit_report(const RunResult& result, const std::string& format, std::ostream& os) {
    if (format == "text")
        emit_text(result, os);
    else if (format == "json")
        emit_json(result, os);
    else if (format == "csv")
        emit_csv(result, os);
    else
        throw ConfigError("unknown output format: " + format);
}

void emit_report_file(const RunResult& result, const std::string& format,
                      const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write report to " + path);
    emit_report(result, format, out);
    if (!out) throw IoError("write failure on " + path);
}

std::vector<std::pair<std::string, std::string>> list_suites() {
    return {
        {"compat", "ambient structure invariants"},
        {"thm1_1", "induced structure identity suite, distribution and classification"},
        {"thm2_1", "covariant-derivative identities by finite differences"},
        {"defect", "ambient parallelism defect and generalized identities"},
        {"nijenhuis", "torsion routes, exterior derivative checks, component forms"},
        {"normality", "normality versus commutativity, independence criterion"},
        {"codim1", "hypersurface identity and diagnostic block"},
        {"codim2", "codimension-two identity block and commutation chain"},
        {"composition", "immersion-chain assembly against the direct computation"},
        {"crosscheck", "closed-form gallery oracle against the generic pipeline"},
        {"all", "every suite applicable to the scenario"},
    };
}

std::vector<std::pair<std::string, std::string>> list_gallery() {
    return {
        {"ex1", "even sphere in a block-swap ambient (p, R)"},
        {"ex2", "sphere product in the unit hypersphere, block-swap ambient (p, r1, r2)"},
        {"ex3", "odd sphere in a fixed-axis block-swap ambient (p, R)"},
        {"ex4", "sphere in a reflection ambient (p, q, R)"},
    };
}

} // namespace isl
