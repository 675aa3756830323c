#include "tropbasis/config.hpp"
#include "tropbasis/fan.hpp"
#include "tropbasis/formats.hpp"
#include "tropbasis/hyperarrange.hpp"
#include "tropbasis/hypersurface.hpp"
#include "tropbasis/json_io.hpp"
#include "tropbasis/lifts.hpp"
#include "tropbasis/refinement.hpp"
#include "tropbasis/symmetry.hpp"
#include "tropbasis/text_io.hpp"
#include "tropbasis/trop_core.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace tropbasis;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kParse = 2, kPrecondition = 3, kInternal = 4 };

struct Session {
    Config cfg;
    std::string output_path;

    bool json() const { return cfg.output_format == OutputFormat::json; }

    // Where the primary artifact goes: the output file when given, else stdout.
    void emit_artifact(const std::string& text) const {
        if (output_path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream f(output_path);
        if (!f) throw ArgumentError("cannot write '" + output_path + "'");
        f << text;
    }
};

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream s;
        s << std::cin.rdbuf();
        return s.str();
    }
    std::ifstream f(path);
    if (!f) throw ArgumentError("cannot open '" + path + "'");
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

TropicalMatrix load_matrix(const std::string& path) { return parse_matrix(slurp(path)); }

std::string join(const std::vector<std::size_t>& v, const char* sep = ", ") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

std::vector<std::size_t> plus_one(std::vector<std::size_t> v) {
    for (auto& x : v) ++x;
    return v;
}

void print_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

// --- rank -----------------------------------------------------------------

int cmd_rank(const Session& s, const std::string& path) {
    auto m = load_matrix(path);
    auto rep = tropical_rank_report(m);
    bool ok = rep.rank == 0 || !is_trop_singular(m.submatrix(rep.rows, rep.cols));
    if (s.json()) {
        print_json({{"tropical_rank", rep.rank},
                    {"submatrix", {{"rows", plus_one(rep.rows)}, {"cols", plus_one(rep.cols)}}},
                    {"verification", ok ? "PASS" : "FAIL"}});
    } else {
        std::cout << "tropical rank: " << rep.rank << '\n';
        if (std::min(m.rows(), m.cols()) <= 5 && rep.rank > 0)
            std::cout << "nonsingular submatrix: rows " << join(plus_one(rep.rows), " ") << " cols "
                      << join(plus_one(rep.cols), " ") << '\n';
        std::cout << "verification: " << (ok ? "PASS" : "FAIL") << '\n';
    }
    return ok ? kOk : kInternal;
}

// --- certify / lift ---------------------------------------------------------

int cmd_certify(const Session& s, const std::string& path) {
    auto a = load_matrix(path);
    Certificate cert = kapranov3_certify(a);
    bool ok = cert.verify(a).empty();
    if (s.json()) {
        s.emit_artifact(to_json(cert, a).dump(2) + "\n");
    } else {
        std::ostringstream o;
        write_certificate(o, cert, a);
        s.emit_artifact(o.str());
        if (!s.output_path.empty()) std::cout << "self-verification: " << (ok ? "PASS" : "FAIL") << '\n';
    }
    return ok ? kOk : kInternal;
}

int cmd_lift(const Session& s, const std::string& matrix_path, const std::string& cert_path) {
    auto a = load_matrix(matrix_path);
    std::istringstream cin_cert(slurp(cert_path));
    Certificate cert = read_certificate(cin_cert);
    auto lift = build_rank3_lift(a, cert, s.cfg.seed, s.cfg.retry_limit);
    std::size_t rk = rank_over_K(lift.matrix);
    bool vals = true;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) vals = vals && val(lift.matrix(i, j)) == a(i, j);
    bool ok = vals && rk <= 3;
    if (s.json()) {
        Json j = {{"lift", to_json(lift.matrix)},
                  {"rank_over_K", rk},
                  {"valuations_match", vals},
                  {"verification", ok ? "PASS" : "FAIL"}};
        s.emit_artifact(j.dump(2) + "\n");
    } else {
        std::ostringstream o;
        write_lift(o, lift.matrix);
        s.emit_artifact(o.str());
        std::cout << "rank over K: " << rk << '\n';
        std::cout << "valuations match: " << (vals ? "yes" : "no") << '\n';
        std::cout << "verification: " << (ok ? "PASS" : "FAIL") << '\n';
    }
    return ok ? kOk : kInternal;
}

// --- fans -------------------------------------------------------------------

void report_fan(const Session& s, const Fan& fan, Json extra, const std::vector<std::string>& text_lines) {
    auto fv = fan.f_vector();
    if (s.json()) {
        extra["f_vector"] = fv.counts;
        extra["lineality_dim"] = fv.lineality_dim;
        extra["maximal_cones"] = fan.maximal_cones().size();
        extra["fan"] = to_json(fan);
        if (!s.output_path.empty()) {
            s.emit_artifact(to_json(fan).dump(2) + "\n");
            extra.erase("fan");
        }
        print_json(extra);
        return;
    }
    if (!s.output_path.empty()) s.emit_artifact(format_fan(fan));
    for (const auto& l : text_lines) std::cout << l << '\n';
    std::cout << "lineality dimension: " << fv.lineality_dim << '\n';
    std::cout << "maximal cones: " << fan.maximal_cones().size() << '\n';
    std::cout << "f-vector: " << fv.str() << '\n';
}

int cmd_hypersurface(const Session& s, std::size_t d, std::size_t n, std::size_t k, std::size_t index,
                     bool orbits) {
    if (k == 0 || k > d || k > n) throw ArgumentError("minor size must satisfy 1 <= k <= min(d, n)");
    const std::size_t col_sets = binomial(n, k), total = binomial(d, k) * col_sets;
    if (index < 1 || index > total) throw ArgumentError("minor index must lie in 1.." + std::to_string(total));
    auto rows = subsets(d, k)[(index - 1) / col_sets];
    auto cols = subsets(n, k)[(index - 1) % col_sets];
    Fan fan = hypersurface_fan(minor_polynomial(d, n, rows, cols));
    bool pure = fan.is_pure() && fan.dim() + 1 == fan.ambient_dim();
    Json extra = {{"minor", {{"rows", plus_one(rows)}, {"cols", plus_one(cols)}}}};
    std::vector<std::string> lines{"minor: rows " + join(plus_one(rows), " ") + " cols " + join(plus_one(cols), " ")};
    if (orbits) {
        CoordPermGroup g = block_symmetry_group(d, n, rows, cols);
        std::vector<std::size_t> sizes;
        for (const auto& o : cone_orbits(fan.maximal_cones(), g)) sizes.push_back(o.members.size());
        std::sort(sizes.begin(), sizes.end());
        extra["group_order"] = g.order();
        extra["maximal_cone_orbits"] = sizes;
        lines.push_back("symmetry group order: " + std::to_string(g.order()));
        lines.push_back("maximal cone orbits: " + join(sizes));
    }
    extra["verification"] = pure ? "PASS" : "FAIL";
    report_fan(s, fan, extra, lines);
    if (!s.json()) std::cout << "verification: " << (pure ? "PASS" : "FAIL") << '\n';
    return pure ? kOk : kInternal;
}

int cmd_refine(const Session& s, const std::vector<std::string>& paths, const std::vector<std::size_t>& shape) {
    std::vector<Fan> fans;
    for (const auto& p : paths) fans.push_back(parse_fan(slurp(p)));
    Fan r;
    if (shape.empty()) {
        r = common_refinement(fans, std::nullopt, s.cfg.threads);
    } else {
        if (shape.size() != 2) throw ArgumentError("--symmetric expects two numbers: d n");
        CoordPermGroup g = matrix_symmetry_group(shape[0], shape[1]);
        if (g.degree() != fans.front().ambient_dim()) throw ArgumentError("group degree does not match the fans");
        r = symmetric_refinement(fans, g, s.cfg.threads);
    }
    report_fan(s, r, {{"input_fans", paths.size()}}, {"input fans: " + std::to_string(paths.size())});
    return kOk;
}

int cmd_prevariety(const Session& s, std::size_t d, std::size_t n, std::size_t k, bool unbounded) {
    std::cerr << "warning: the complete refinement of all " << k << "x" << k << " minor hypersurfaces of a " << d
              << "x" << n << " matrix is a computation measured in CPU-weeks at 5x5\n";
    if (!unbounded) throw PreconditionError("refusing to start without --unbounded-runtime");
    std::vector<Fan> fans;
    for (const auto& f : minors(d, n, k)) fans.push_back(hypersurface_fan(f));
    Fan r = symmetric_refinement(fans, matrix_symmetry_group(d, n), s.cfg.threads);
    report_fan(s, r, Json::object(), {});
    return kOk;
}

// --- orbits -------------------------------------------------------------------

int cmd_orbits(const Session& s, const std::string& path, std::optional<std::size_t> split) {
    std::istringstream in(slurp(path));
    auto mats = read_matrices(in);
    if (mats.empty()) throw ArgumentError("no matrices in '" + path + "'");
    const std::size_t d = mats.front().rows(), n = mats.front().cols();
    for (const auto& m : mats)
        if (m.rows() != d || m.cols() != n) throw ArgumentError("matrices of different shapes");
    CoordPermGroup g = matrix_symmetry_group(d, n);
    std::vector<std::size_t> sizes;
    Json list = Json::array();
    bool ok = true;
    for (const auto& m : mats) {
        Vector v = m.flatten();
        std::size_t size = orbit_size(v, g);
        ok = ok && size * stabilizer(v, g).size() == g.order();
        sizes.push_back(size);
        list.push_back({{"orbit_size", size}, {"canonical_representative", to_json(canonical_rep(v, g))}});
    }
    const std::size_t cut = split.value_or(sizes.size() > 1 ? sizes.size() - 1 : sizes.size());
    if (cut > sizes.size()) throw ArgumentError("--split exceeds the number of vectors");
    std::size_t head = 0, tail = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) (i < cut ? head : tail) += sizes[i];
    if (s.json()) {
        print_json({{"group_order", g.order()},
                    {"orbits", list},
                    {"sum_check", {head, tail}},
                    {"verification", ok ? "PASS" : "FAIL"}});
    } else {
        std::cout << "group order: " << g.order() << '\n';
        for (std::size_t i = 0; i < mats.size(); ++i)
            std::cout << "vector " << i + 1 << ": orbit size " << sizes[i] << ", canonical representative "
                      << to_string(canonical_rep(mats[i].flatten(), g)) << '\n';
        std::cout << "orbit sizes: " << join(sizes) << '\n';
        std::cout << "sum check: " << head << " + " << tail << '\n';
        std::cout << "verification: " << (ok ? "PASS" : "FAIL") << '\n';
    }
    return ok ? kOk : kInternal;
}

// --- hull / euler ---------------------------------------------------------------

std::string mask_string(unsigned mask, std::size_t d) {
    std::string s;
    for (std::size_t j = 0; j < d; ++j)
        if (mask >> j & 1u) s += (s.empty() ? "" : ",") + std::to_string(j + 1);
    return "{" + s + "}";
}

int cmd_hull(const Session& s, const std::string& path) {
    auto v = load_matrix(path);
    auto c = tropical_polytope_complex(v);
    bool ok = true;
    for (const auto& col : v.columns()) {
        Vector p = col;
        for (auto& x : p) x -= col[0];
        bool hit = false;
        for (const auto& cell : c.cells) hit = hit || (cell.dim == 0 && cell.point == p);
        ok = ok && hit;
    }
    auto fv = [](const std::vector<std::size_t>& x) {
        std::string s = "(" + join(x) + ")";
        return s;
    };
    if (s.json()) {
        Json cells = Json::array();
        for (const auto& group : c.coarse) {
            Json members = Json::array();
            for (auto i : group) {
                Json types = Json::array();
                for (auto t : c.cells[i].types) types.push_back(mask_string(t, v.rows()));
                members.push_back({{"dim", c.cells[i].dim}, {"types", types}, {"point", to_json(c.cells[i].point)}});
            }
            cells.push_back({{"dim", c.cells[group.front()].dim}, {"pieces", members}});
        }
        print_json({{"f_vector", c.f_vector},
                    {"fine_f_vector", c.fine_f_vector},
                    {"cells", cells},
                    {"verification", ok ? "PASS" : "FAIL"}});
    } else {
        std::cout << "f-vector: " << fv(c.f_vector) << '\n';
        std::cout << "fine f-vector: " << fv(c.fine_f_vector) << '\n';
        for (const auto& group : c.coarse) {
            std::cout << "cell dim " << c.cells[group.front()].dim << ":";
            for (auto i : group) {
                std::cout << " [";
                for (std::size_t g = 0; g < c.cells[i].types.size(); ++g)
                    std::cout << (g ? " " : "") << mask_string(c.cells[i].types[g], v.rows());
                std::cout << "]";
            }
            if (c.cells[group.front()].dim == 0) std::cout << " at " << to_string(c.cells[group.front()].point);
            std::cout << '\n';
        }
        std::cout << "verification: " << (ok ? "PASS" : "FAIL") << '\n';
    }
    return ok ? kOk : kInternal;
}

std::vector<long long> parse_counts(const std::string& text) {
    std::vector<long long> out;
    std::string cleaned;
    for (char ch : text) cleaned += (ch == ',' || ch == '(' || ch == ')') ? ' ' : ch;
    std::istringstream in(cleaned);
    std::string tok;
    std::size_t col = 1;
    while (in >> tok) {
        Token t{tok, 1, col};
        out.push_back(token_integer(t, 0));
        col += tok.size() + 1;
    }
    if (out.empty()) throw ParseError("empty f-vector", 1, 1);
    return out;
}

int cmd_euler(const Session& s, const std::string& fv_text, std::size_t lineality) {
    auto fv = parse_counts(fv_text);
    // The leading 1 for the lineality space may be omitted.
    if (fv.front() != 1) fv.insert(fv.begin(), 1);
    long long chi = euler_characteristic(fv, lineality);
    if (s.json())
        print_json({{"f_vector", fv}, {"lineality_dim", lineality}, {"euler_characteristic", chi}});
    else
        std::cout << chi << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact tropical rank, lifting and fan computations"};
    app.require_subcommand(1);
    app.fallthrough();

    Session session;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> threads;
    std::string backend = "fourier_motzkin", format = "text";
    app.add_option("--seed", seed, "Random seed (overrides TROPBASIS_SEED)");
    app.add_option("--threads", threads, "Worker threads (overrides TROPBASIS_THREADS)")->check(CLI::Range(1, 1024));
    app.add_option("--retry-limit", session.cfg.retry_limit, "Resamples for generic lifts")->check(CLI::Range(1, 1000));
    app.add_option("--lp-backend", backend, "fourier_motzkin or simplex")
        ->check(CLI::IsMember({"fourier_motzkin", "simplex"}));
    app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    app.add_option("-o,--output", session.output_path, "Write the main artifact to this file");

    std::string path, path2, fv_text;
    std::size_t d = 0, n = 0, k = 0, index = 1, lineality = 0;
    bool orbits = false, unbounded = false;
    std::vector<std::string> fan_paths;
    std::vector<std::size_t> shape;
    std::optional<std::size_t> split;

    auto* rank = app.add_subcommand("rank", "Tropical rank of a matrix");
    rank->add_option("matrix", path, "Matrix file")->required();
    auto* certify = app.add_subcommand("certify", "Certificate of Kapranov rank at most 3 for a 5 x n matrix");
    certify->add_option("matrix", path, "Matrix file")->required();
    auto* lift = app.add_subcommand("lift", "Rank-3 lift over Q(t) from a matrix and its certificate");
    lift->add_option("matrix", path, "Matrix file")->required();
    lift->add_option("certificate", path2, "Certificate file")->required();
    auto* hyp = app.add_subcommand("hypersurface", "Tropical hypersurface of one k x k minor of a d x n matrix");
    hyp->add_option("d", d)->required();
    hyp->add_option("n", n)->required();
    hyp->add_option("k", k)->required();
    hyp->add_option("index", index, "1-based minor index (row subsets outer, lexicographic)")->required();
    hyp->add_flag("--orbits", orbits, "Split maximal cones into orbits under the minor's symmetry group");
    auto* refine = app.add_subcommand("refine", "Common refinement of fans");
    refine->add_option("fans", fan_paths, "Fan files")->required();
    refine->add_option("--symmetric", shape, "Use the row/column symmetry group of d x n matrices")->expected(2);
    auto* orb = app.add_subcommand("orbits", "Orbit sizes of matrices under row, column and transpose symmetry");
    orb->add_option("vectors", path, "File with one or more matrices of equal shape")->required();
    orb->add_option("--split", split, "Report the sum of the first k orbit sizes and of the rest");
    auto* hull = app.add_subcommand("hull", "Tropical convex hull of the columns of a matrix");
    hull->add_option("matrix", path, "Matrix file")->required();
    auto* euler = app.add_subcommand("euler", "Euler characteristic of an f-vector");
    euler->add_option("f_vector", fv_text, "Cone counts by dimension, starting at the lineality space (leading 1 optional)")->required();
    euler->add_option("--lineality", lineality, "Lineality dimension")->required();
    auto* prev = app.add_subcommand("prevariety", "Refinement of all k x k minor hypersurfaces");
    prev->add_option("d", d)->required();
    prev->add_option("n", n)->required();
    prev->add_option("k", k)->required();
    prev->add_flag("--unbounded-runtime", unbounded, "Acknowledge that the run may not finish");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        session.cfg.apply_environment();
        if (seed) session.cfg.seed = *seed;
        if (threads) session.cfg.threads = *threads;
        session.cfg.lp_backend = parse_lp_backend(backend);
        session.cfg.output_format = format == "json" ? OutputFormat::json : OutputFormat::text;
        set_default_lp_backend(session.cfg.lp_backend);

        if (*rank) return cmd_rank(session, path);
        if (*certify) return cmd_certify(session, path);
        if (*lift) return cmd_lift(session, path, path2);
        if (*hyp) return cmd_hypersurface(session, d, n, k, index, orbits);
        if (*refine) return cmd_refine(session, fan_paths, shape);
        if (*orb) return cmd_orbits(session, path, split);
        if (*hull) return cmd_hull(session, path);
        if (*euler) return cmd_euler(session, fv_text, lineality);
        if (*prev) return cmd_prevariety(session, d, n, k, unbounded);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition violated: " << e.what() << '\n';
        return kPrecondition;
    } catch (const InternalInvariantError& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
