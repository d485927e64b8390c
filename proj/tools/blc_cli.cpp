// Command-line front end: enumeration, verification, complex construction,
// census, matrix classification and diagram rendering.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <thread>

#include "blc/ancestry.hpp"
#include "blc/cw.hpp"
#include "blc/io.hpp"
#include "blc/matrixlab.hpp"
#include "blc/order.hpp"

using namespace blc;
using nlohmann::json;

namespace {

struct CommonArgs {
    std::string perm;
    std::string word;
    int threads = int(std::thread::hardware_concurrency());
    std::string out;
};

Word resolve_word(const CommonArgs& c, Permutation& sigma) {
    sigma = Permutation::from_oneline(c.perm);
    if (c.word.empty()) return canonical_word(sigma);
    Word w = Word::parse(c.word, sigma.n());
    if (!is_reduced(w)) throw std::invalid_argument("word is not reduced: " + c.word);
    if (!(w.product() == sigma)) throw std::invalid_argument("word does not spell " + c.perm);
    return w;
}

void emit(const CommonArgs& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out);
    if (!f) throw std::runtime_error("cannot open " + c.out);
    f << text;
}

json group_elem_json(const GroupElem& z) {
    json j;
    j["clifford"] = clifford_str(z.z);
    j["matrix"] = z.so.matrix();
    return j;
}

int cmd_enumerate(const CommonArgs& c, const std::string& format) {
    Permutation sigma;
    Word w = resolve_word(c, sigma);
    auto all = ancestries(w, c.threads);
    CountTable tab = count_table(w, all);
    GroupElem asig = acute(w);

    std::cerr << "word " << w.str() << ": " << tab.pre.size() << " preancestries, "
              << all.size() << " ancestries\n";
    if (format == "csv") {
        std::ostringstream os;
        os << "word,preancestry,dim,z,count\n";
        for (size_t i = 0; i < tab.pre.size(); ++i)
            for (uint32_t code = 0; code < tab.counts[i].size(); ++code) {
                if (!tab.counts[i][code]) continue;
                os << '"' << w.str() << "\",\"" << tab.pre[i].str() << "\"," << tab.pre[i].dim
                   << ",\"" << clifford_str(asig.mul_mono(Mono::from_code(code)).z) << "\","
                   << tab.counts[i][code] << '\n';
            }
        emit(c, os.str());
    } else {
        json rows = json::array();
        for (size_t i = 0; i < tab.pre.size(); ++i)
            for (uint32_t code = 0; code < tab.counts[i].size(); ++code) {
                if (!tab.counts[i][code]) continue;
                rows.push_back({{"word", w.str()},
                                {"preancestry", tab.pre[i].str()},
                                {"dim", tab.pre[i].dim},
                                {"z", clifford_str(asig.mul_mono(Mono::from_code(code)).z)},
                                {"count", tab.counts[i][code]}});
            }
        emit(c, rows.dump(2) + "\n");
    }
    return 0;
}

int cmd_verify(const CommonArgs& c) {
    Permutation sigma;
    Word w = resolve_word(c, sigma);
    auto all = ancestries(w, c.threads);

    auto rep = verify_theorem2(w, all);
    if (!rep.ok) {
        std::cout << "FAIL: " << rep.first_violation << "\n";
        return 1;
    }
    std::cout << "Theorem-2 identities pass (" << rep.preancestries_checked << " preancestries, "
              << rep.identities_checked << " identities)\n";

    for (const auto& p : preancestries(w))
        if (!unmarked_factorization_check(w, p)) {
            std::cout << "FAIL: unmarked factorization at " << p.str() << "\n";
            return 1;
        }
    std::cout << "Unmarked-crossing factorization passes\n";

    if (blocks(sigma).empty()) {
        auto rows = component_census(w, all);
        long long total = 0;
        for (const auto& r : rows) total += r.components;
        std::cout << total << " components\n";
    } else {
        std::cout << "sigma blocks; census skipped (see decompose_blocks)\n";
    }
    return 0;
}

int cmd_complex(const CommonArgs& c, const std::string& zsel, const std::string& format) {
    Permutation sigma;
    Word w = resolve_word(c, sigma);
    auto all = ancestries(w, c.threads);
    ClosureCache cache;

    std::string collected;
    for (const Mono& u : parse_z_selector(zsel, sigma)) {
        CellComplex cx = build_complex(w, u, all, cache);
        std::cout << "z = " << clifford_str(cx.z.z) << ": ";
        for (size_t d = 0; d < cx.cells_per_dim.size(); ++d)
            std::cout << (d ? "+" : "") << cx.cells_per_dim[d];
        if (cx.cells.empty()) std::cout << "0";
        std::cout << " cells, chi = " << cx.euler() << ", " << cx.num_components << " components";
        auto hom = homology_low(cx);
        if (hom.exact) {
            std::cout << "; per component (H0,H1):";
            for (const auto& comp : hom.comps) {
                std::cout << " (Z,";
                if (comp.h1_rank == 0 && comp.h1_torsion.empty()) std::cout << "0)";
                else if (comp.h1_rank == 1 && comp.h1_torsion.empty()) std::cout << "Z)";
                else std::cout << "Z^" << comp.h1_rank << (comp.h1_torsion.empty() ? ")" : "+torsion)");
            }
        } else {
            std::cout << "; H1 not exact (wild or undetermined 2-cell present)";
        }
        auto col = collapse_evidence(cx);
        if (col.fully_collapsed) std::cout << "; collapses to points";
        std::cout << "\n";

        if (format == "dot") collected += complex_dot(cx);
        else if (format == "svg") collected += complex_svg(cx);
        else if (format == "json") {
            json j;
            j["word"] = w.str();
            j["z"] = clifford_str(cx.z.z);
            j["cells_per_dim"] = cx.cells_per_dim;
            j["euler"] = cx.euler();
            j["components"] = cx.num_components;
            json cells = json::array();
            for (int i = 0; i < int(cx.cells.size()); ++i) {
                json cj;
                cj["ancestry"] = cx.cells[i].str();
                cj["dim"] = cx.cells[i].dim;
                cj["component"] = cx.comp[i];
                cj["upper_set"] = cx.ustar[i];
                if (cx.cells[i].dim == 1) cj["endpoints"] = cx.edge_ends[i];
                if (cx.cells[i].dim >= 1) cj["tameness"] = tameness_str(cx.tameness[i]);
                if (!cx.boundary2[i].empty()) cj["boundary"] = cx.boundary2[i];
                cells.push_back(cj);
            }
            j["cells"] = cells;
            collected += j.dump(2) + "\n";
        }
    }
    if (!collected.empty()) emit(c, collected);
    return 0;
}

int cmd_census(const CommonArgs& c) {
    Permutation sigma;
    Word w = resolve_word(c, sigma);
    auto all = ancestries(w, c.threads);
    auto rows = component_census(w, all);
    int maxd = 0;
    for (const auto& r : rows) maxd = std::max(maxd, int(r.cells_per_dim.size()) - 1);
    emit(c, census_csv(w, rows, maxd));
    long long total = 0, thin = 0, thick = 0;
    for (const auto& r : rows) {
        total += r.components;
        thin += r.thin_components;
        thick += r.thick_components;
    }
    std::cerr << total << " components (" << thin << " thin, " << thick << " thick)\n";
    return 0;
}

int cmd_classify(const CommonArgs& c, const std::string& matrix_file, double tol) {
    Permutation sigma;
    Word w = resolve_word(c, sigma);
    std::ifstream f(matrix_file);
    if (!f) throw std::runtime_error("cannot open " + matrix_file);
    int m = sigma.size();
    Mat a(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (!(f >> a(i, j))) throw std::runtime_error("matrix file too short: " + matrix_file);
    LowerTriangular L(a);
    Classified cl = ancestry_of(L, w, tol);

    json j;
    j["matrix"] = matrix_file;
    j["word"] = w.str();
    j["ancestry"] = cl.anc.str();
    j["dim"] = cl.anc.dim;
    j["P"] = group_elem_json(cl.P);
    j["component"] = clifford_str(cl.P.z);
    emit(c, j.dump(2) + "\n");
    return 0;
}

int cmd_render(const CommonArgs& c, const std::string& what, const std::string& zsel,
               const std::string& anc, const std::string& format) {
    Permutation sigma;
    Word w = resolve_word(c, sigma);
    if (what == "wiring") {
        std::vector<int8_t> eps;
        if (!anc.empty()) {
            eps = Ancestry::parse_eps(anc);
            if (int(eps.size()) != w.length())
                throw std::invalid_argument("ancestry length does not match the word");
        }
        emit(c, wiring_svg(w, eps));
        return 0;
    }
    auto all = ancestries(w, c.threads);
    ClosureCache cache;
    std::string outstr;
    for (const Mono& u : parse_z_selector(zsel.empty() ? "acute" : zsel, sigma)) {
        if (what == "poset") {
            std::vector<Ancestry> bucket;
            for (const auto& a : all)
                if (a.u() == u) bucket.push_back(a);
            outstr += poset_dot(w, bucket, cache);
        } else if (what == "complex") {
            CellComplex cx = build_complex(w, u, all, cache);
            outstr += format == "svg" ? complex_svg(cx) : complex_dot(cx);
        } else {
            throw std::invalid_argument("render target must be wiring|poset|complex");
        }
    }
    emit(c, outstr);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ancestry stratification of intersections of real Bruhat cells"};
    app.require_subcommand(1);

    CommonArgs common;
    std::string zsel = "all", format = "json", matrix_file, what = "wiring", anc;
    double tol = 1e-9;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--perm", common.perm, "permutation in one-line notation, e.g. 54321")->required();
        sub->add_option("--word", common.word, "explicit reduced word, e.g. 'a1 a2 a1' (default: canonical)");
        sub->add_option("--threads", common.threads, "worker threads");
        sub->add_option("--out", common.out, "write results to a file instead of stdout");
    };

    auto* enumerate = app.add_subcommand("enumerate", "ancestry count tables N_{eps0}(z)");
    add_common(enumerate);
    enumerate->add_option("--format", format, "json|csv");

    auto* verify = app.add_subcommand("verify", "check the counting identities and census");
    add_common(verify);

    auto* complex = app.add_subcommand("complex", "build the CW complex for chosen z");
    add_common(complex);
    complex->add_option("--z", zsel, "z selector: 'all', 'orbits', 'q*acute', or a Clifford expression");
    complex->add_option("--format", format, "dot|json|svg");

    auto* census = app.add_subcommand("census", "per-z component census as CSV");
    add_common(census);

    auto* classify = app.add_subcommand("classify", "ancestry of a matrix from a file");
    add_common(classify);
    classify->add_option("--matrix", matrix_file, "whitespace-separated unit lower triangular matrix")->required();
    classify->add_option("--tol", tol, "zero tolerance for rank decisions");

    auto* render = app.add_subcommand("render", "SVG/DOT exports");
    add_common(render);
    render->add_option("--what", what, "wiring|poset|complex");
    render->add_option("--z", zsel, "z selector for poset/complex");
    render->add_option("--ancestry", anc, "marks for the wiring diagram, e.g. '(-2,+1,+2)'");
    render->add_option("--format", format, "svg|dot");

    CLI11_PARSE(app, argc, argv);

    try {
        if (enumerate->parsed()) return cmd_enumerate(common, format);
        if (verify->parsed()) return cmd_verify(common);
        if (complex->parsed()) return cmd_complex(common, zsel, format);
        if (census->parsed()) return cmd_census(common);
        if (classify->parsed()) return cmd_classify(common, matrix_file, tol);
        if (render->parsed()) return cmd_render(common, what, zsel, anc, format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
