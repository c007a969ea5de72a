// qlens: command-line front end for the lens space normal surface toolkit.

#include <CLI11.hpp>
#include <json.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qlens/qlens.hpp"

using json = nlohmann::json;
using namespace qlens;

namespace {

enum ExitCode { kOk = 0, kInvalidInput = 1, kVerificationFailed = 2, kBudgetExceeded = 3 };

struct Options {
    int p = 0;
    int q = 0;
    std::string format = "table";
    std::string system = "q";
    bool raw_hilbert = false;
    double max_seconds = 60.0;
    double max_frontier = 1e7;
    unsigned threads = 1;
    bool fixtures = false;
    std::string vector;
};

struct Output {
    json params;
    json payload;
    std::string table;
    std::string csv;
    int code = kOk;
};

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::BudgetExceeded: return kBudgetExceeded;
    case ErrorKind::InconsistentPropagation:
    case ErrorKind::InconsistentWeights:
    case ErrorKind::ArityMismatch:
    case ErrorKind::IntegralityViolated:
    case ErrorKind::SingularSystem:
    case ErrorKind::Overflow: return kVerificationFailed;
    default: return kInvalidInput;
    }
}

std::string one_line(std::string s) {
    for (auto& c : s)
        if (c == '\n' || c == '\r') c = ' ';
    return s;
}

int fail(std::string_view kind, const std::string& detail, int code) {
    std::cerr << "qlens: error: " << kind << ": " << one_line(detail) << "\n";
    return code;
}

Budget budget_of(const Options& o) {
    if (!(o.max_seconds > 0)) throw Error(ErrorKind::InvalidParams, "--max-seconds must be positive");
    if (!(o.max_frontier >= 1)) throw Error(ErrorKind::InvalidParams, "--max-frontier must be at least 1");
    if (o.threads < 1) throw Error(ErrorKind::InvalidParams, "--threads must be at least 1");
    return Budget{o.max_seconds, static_cast<std::size_t>(o.max_frontier), o.threads};
}

LensTriangulation triangulation_of(const Options& o) {
    if (o.p == 0 && o.q == 0) throw Error(ErrorKind::InvalidParams, "--p and --q are required");
    return LensTriangulation(make_params(o.p, o.q));
}

json params_json(const LensParams& lp) { return json{{"p", lp.p}, {"q", lp.q}}; }

json rationals(const RatVector& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(x.str());
    return out;
}

std::string blocks_text(const QVector& v, char sep) {
    std::string out;
    for (int i = 1; i <= v.p(); ++i) {
        if (i > 1) out += '|';
        const auto b = v.block(i);
        out += std::to_string(b[0]) + sep + std::to_string(b[1]) + sep + std::to_string(b[2]);
    }
    return out;
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

std::string rpad(const std::string& s, std::size_t w) {
    return s.size() >= w ? s : std::string(w - s.size(), ' ') + s;
}

json surface_json(const LensTriangulation& tri, const QVector& v, const SurfaceReport& r) {
    json comps = json::array();
    for (const auto& c : r.components)
        comps.push_back({{"euler", c.euler}, {"orientable", c.orientable}, {"disks", c.disks},
                         {"name", surface_name(c.orientable, c.euler)}});
    json weights = json::object();
    for (const auto& e : tri.edge_classes()) weights[e.name()] = r.edge_weights[e.row(tri.p())];
    const auto coeffs = decompose(tri, v);
    const auto ic = integrality_class(coeffs, tri.p());
    json integrality = ic.p_even ? json{{"B_0", std::string(to_string(ic.even))}, {"B_1", std::string(to_string(ic.odd))}}
                                 : json{{"B", std::string(to_string(ic.all))}};
    return json{{"entries", v.entries()},
                {"blocks", v.str()},
                {"euler", r.euler},
                {"orientable", r.orientable},
                {"components", comps},
                {"name", surface_name(r)},
                {"edge_weights", weights},
                {"meets_cores_once", r.meets_cores_once},
                {"has_type23_quad", r.has_type23_quad},
                {"haken_criterion", r.meets_cores_once && r.has_type23_quad},
                {"coefficients", {{"a", rationals(coeffs.a)}, {"b", rationals(coeffs.b)}}},
                {"integrality", integrality}};
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// matrix ---------------------------------------------------------------------

Output cmd_matrix(const Options& o) {
    const LensTriangulation tri = triangulation_of(o);
    const int p = tri.p();
    IntMatrix m;
    std::vector<std::string> rows, cols;
    static const char* corner = "TBLR";
    if (o.system == "q") {
        m = q_matrix(tri);
        for (const auto& e : tri.edge_classes()) rows.push_back(e.name());
        for (int i = 1; i <= p; ++i)
            for (int t = 1; t <= 3; ++t) cols.push_back("x" + std::to_string(i) + "_" + std::to_string(t));
    } else if (o.system == "haken") {
        m = haken_matrix(tri);
        for (const auto& g : tri.gluings())
            for (int v : face_corners(g.first.opposite))
                rows.push_back(std::string(g.kind == FaceGluing::Kind::Vertical ? "V" : "H") + std::to_string(g.index) +
                               ":" + corner[v]);
        for (int i = 1; i <= p; ++i) {
            for (int v = 0; v < 4; ++v) cols.push_back("t" + std::to_string(i) + "_" + corner[v]);
            for (int t = 1; t <= 3; ++t) cols.push_back("x" + std::to_string(i) + "_" + std::to_string(t));
        }
    } else {
        throw Error(ErrorKind::InvalidParams, "--system must be q or haken");
    }

    Output out;
    out.params = params_json(tri.params());
    json entries = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) entries.push_back(std::vector<std::int64_t>(m.row(r).begin(), m.row(r).end()));
    out.payload = {{"system", o.system}, {"rows", m.rows()},  {"cols", m.cols()},
                   {"row_labels", rows}, {"col_labels", cols}, {"entries", entries}};

    std::size_t label_w = 0;
    for (const auto& r : rows) label_w = std::max(label_w, r.size());
    std::ostringstream t, c;
    t << pad("", label_w);
    for (const auto& col : cols) t << ' ' << rpad(col, 5);
    t << '\n';
    c << "row";
    for (const auto& col : cols) c << ',' << col;
    c << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        t << pad(rows[r], label_w);
        c << rows[r];
        for (std::size_t k = 0; k < m.cols(); ++k) {
            t << ' ' << rpad(std::to_string(m(r, k)), 5);
            c << ',' << m(r, k);
        }
        t << '\n';
        c << '\n';
    }
    out.table = t.str();
    out.csv = c.str();
    return out;
}

// enum -----------------------------------------------------------------------

Output cmd_enum(const Options& o) {
    const LensTriangulation tri = triangulation_of(o);
    const Budget budget = budget_of(o);
    Output out;
    out.params = params_json(tri.params());
    std::ostringstream t, c;
    if (o.raw_hilbert) {
        const auto hb = fundamental_solutions(tri, budget);
        json list = json::array();
        t << "Hilbert basis of the Q-system of T(" << tri.p() << "," << tri.q() << "): " << hb.size() << " vectors\n";
        c << "index,vector,square_condition\n";
        for (std::size_t k = 0; k < hb.size(); ++k) {
            const bool sq = square_condition(hb[k]);
            list.push_back({{"entries", hb[k].entries()}, {"blocks", hb[k].str()}, {"square_condition", sq}});
            t << rpad(std::to_string(k + 1), 5) << "  " << hb[k].str() << (sq ? "  square" : "") << '\n';
            c << k + 1 << ',' << blocks_text(hb[k], ' ') << ',' << (sq ? 1 : 0) << '\n';
        }
        out.payload = {{"count", hb.size()}, {"raw_hilbert", true}, {"vectors", list}};
    } else {
        const auto surfaces = enumerate_q_fundamental(tri.p(), tri.q(), budget);
        json list = json::array();
        t << "Q-fundamental surfaces of T(" << tri.p() << "," << tri.q() << "): " << surfaces.size() << "\n";
        c << "index,vector,euler,orientable,components,w_Eh,w_Ev,name\n";
        for (std::size_t k = 0; k < surfaces.size(); ++k) {
            const auto& [v, r] = surfaces[k];
            list.push_back(surface_json(tri, v, r));
            t << rpad(std::to_string(k + 1), 4) << "  " << v.str() << "  chi=" << r.euler
              << "  orientable=" << yes_no(r.orientable) << "  components=" << r.components.size() << "  "
              << surface_name(r) << '\n';
            c << k + 1 << ',' << blocks_text(v, ' ') << ',' << r.euler << ',' << (r.orientable ? 1 : 0) << ','
              << r.components.size() << ',' << r.weight(tri, Edge::horizontal()) << ','
              << r.weight(tri, Edge::vertical()) << ',' << surface_name(r) << '\n';
        }
        out.payload = {{"count", surfaces.size()}, {"raw_hilbert", false}, {"surfaces", list}};
    }
    out.table = t.str();
    out.csv = c.str();
    return out;
}

// classify -------------------------------------------------------------------

Output cmd_classify(Options o) {
    if (o.vector.empty()) throw Error(ErrorKind::InvalidParams, "a vector (comma-separated or @file) is required");
    const VectorSource src = read_vector_argument(o.vector);
    if (o.p == 0 && o.q == 0 && src.params) {
        o.p = src.params->p;
        o.q = src.params->q;
    }
    const LensTriangulation tri = triangulation_of(o);
    const QVector v(src.entries);
    if (v.p() != tri.p())
        throw Error(ErrorKind::DimensionMismatch, "vector has " + std::to_string(v.size()) + " entries, expected " +
                                                      std::to_string(3 * tri.p()));
    const SurfaceReport r = classify(tri, v);
    const bool vertex = is_vertex(q_cone(tri), v);

    Output out;
    out.params = params_json(tri.params());
    out.payload = surface_json(tri, v, r);
    out.payload["trigons_and_quads"] = r.full.entries();
    out.payload["vertex"] = vertex;

    std::ostringstream t, c;
    t << "vector          " << v.str() << '\n';
    t << "surface         " << surface_name(r) << '\n';
    t << "euler           " << r.euler << '\n';
    t << "orientable      " << yes_no(r.orientable) << '\n';
    t << "components      " << r.components.size() << '\n';
    for (std::size_t k = 0; k < r.components.size(); ++k)
        t << "  component " << k + 1 << "   chi=" << r.components[k].euler
          << " orientable=" << yes_no(r.components[k].orientable) << " disks=" << r.components[k].disks << '\n';
    t << "edge weights   ";
    for (const auto& e : tri.edge_classes()) t << ' ' << e.name() << '=' << r.weight(tri, e);
    t << '\n';
    t << "haken criterion " << yes_no(r.meets_cores_once && r.has_type23_quad) << '\n';
    t << "vertex          " << yes_no(vertex) << '\n';
    auto line = [](const json& xs) {
        std::string s;
        for (const auto& x : xs) s += (s.empty() ? "" : " ") + x.get<std::string>();
        return s;
    };
    t << "a               " << line(out.payload["coefficients"]["a"]) << '\n';
    t << "b               " << line(out.payload["coefficients"]["b"]) << '\n';
    c << "vector,euler,orientable,components,w_Eh,w_Ev,haken_criterion,vertex,name\n";
    c << blocks_text(v, ' ') << ',' << r.euler << ',' << (r.orientable ? 1 : 0) << ',' << r.components.size() << ','
      << r.weight(tri, Edge::horizontal()) << ',' << r.weight(tri, Edge::vertical()) << ','
      << (r.meets_cores_once && r.has_type23_quad ? 1 : 0) << ',' << (vertex ? 1 : 0) << ',' << surface_name(r)
      << '\n';
    out.table = t.str();
    out.csv = c.str();
    return out;
}

// verify ---------------------------------------------------------------------

Output cmd_verify(const Options& o) {
    const Budget budget = budget_of(o);
    std::vector<VerificationReport> reports;
    Output out;
    if (o.p != 0 || o.q != 0) {
        const LensTriangulation tri = triangulation_of(o);
        reports.push_back(verify_theorems(tri.p(), tri.q(), budget));
        out.params = params_json(tri.params());
    } else if (!o.fixtures) {
        throw Error(ErrorKind::InvalidParams, "give --p and --q, or --fixtures");
    }
    if (o.fixtures)
        for (const auto& f : fixtures()) reports.push_back(verify_fixture(f, budget));

    bool all = true;
    json list = json::array();
    std::ostringstream t, c;
    c << "subject,check,status,detail\n";
    for (const auto& rep : reports) {
        all = all && rep.passed();
        json checks = json::array();
        t << rep.subject << ": " << (rep.passed() ? "PASS" : "FAIL") << '\n';
        for (const auto& ch : rep.checks) {
            checks.push_back({{"name", ch.name}, {"status", std::string(to_string(ch.status))}, {"detail", ch.detail}});
            t << "  " << pad(ch.name, 24) << ' ' << pad(std::string(to_string(ch.status)), 5) << ' ' << ch.detail
              << '\n';
            c << rep.subject << ',' << ch.name << ',' << to_string(ch.status) << ",\"" << ch.detail << "\"\n";
        }
        list.push_back({{"subject", rep.subject},
                        {"params", params_json(rep.params)},
                        {"passed", rep.passed()},
                        {"checks", checks}});
    }
    out.payload = {{"passed", all}, {"reports", list}};
    out.table = t.str();
    out.csv = c.str();
    out.code = all ? kOk : kVerificationFailed;
    return out;
}

void add_common(CLI::App* sub, Options& o, bool budget) {
    sub->add_option("--p", o.p, "order of the lens space (p >= 2)");
    sub->add_option("--q", o.q, "twist (1 <= q < p, coprime to p)");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"table", "json", "csv"}));
    if (budget) {
        sub->add_option("--max-seconds", o.max_seconds, "wall-clock budget in seconds")->capture_default_str();
        sub->add_option("--max-frontier", o.max_frontier, "cap on stored vectors during enumeration")
            ->capture_default_str();
        sub->add_option("--threads", o.threads, "worker threads for Hilbert basis enumeration")->capture_default_str();
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Normal surfaces in the lens space triangulations T(p,q)"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);
    Options o;

    auto* matrix = app.add_subcommand("matrix", "print the Q-matching or Haken matching matrix");
    add_common(matrix, o, false);
    matrix->add_option("--system", o.system, "q or haken")->check(CLI::IsMember({"q", "haken"}));

    auto* enumerate = app.add_subcommand("enum", "enumerate Q-fundamental surfaces");
    add_common(enumerate, o, true);
    enumerate->add_flag("--raw-hilbert", o.raw_hilbert, "print the whole Hilbert basis instead");

    auto* classify_cmd = app.add_subcommand("classify", "classify the surface of a Q-coordinate");
    add_common(classify_cmd, o, false);
    classify_cmd->add_option("vector", o.vector, "comma-separated entries or @file");

    auto* verify = app.add_subcommand("verify", "check the known theorems and the fixture surfaces");
    add_common(verify, o, true);
    verify->add_flag("--fixtures", o.fixtures, "check every shipped fixture");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        return fail("ParseError", e.what(), kInvalidInput);
    }

    std::string command;
    Output out;
    try {
        if (*matrix) {
            command = "matrix";
            out = cmd_matrix(o);
        } else if (*enumerate) {
            command = "enum";
            out = cmd_enum(o);
        } else if (*classify_cmd) {
            command = "classify";
            out = cmd_classify(o);
        } else {
            command = "verify";
            out = cmd_verify(o);
        }
    } catch (const Error& e) {
        return fail(to_string(e.kind()), e.detail(), exit_code_for(e.kind()));
    } catch (const std::exception& e) {
        return fail("InternalError", e.what(), kVerificationFailed);
    }

    if (o.format == "json") {
        const json envelope{{"command", command},
                            {"params", out.params},
                            {"payload", out.payload},
                            {"tool_version", kToolVersion}};
        std::cout << envelope.dump(2) << '\n';
    } else if (o.format == "csv") {
        std::cout << out.csv;
    } else {
        std::cout << out.table;
    }
    if (out.code == kVerificationFailed) std::cerr << "qlens: error: VerificationFailed: some checks failed\n";
    return out.code;
}
