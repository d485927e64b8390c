#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "blc/ancestry.hpp"
#include "blc/clifford.hpp"
#include "blc/cw.hpp"
#include "blc/order.hpp"

namespace blc {

// ---------------------------------------------------------------------------
// Monomial and Clifford-element strings: "a1a3", "-a2", "1";
// "(-1+a2+a1a3-a1a2a3)/2", "(1-a1a2)/sqrt2".
// ---------------------------------------------------------------------------

inline std::string mono_str(const Mono& m) {
    std::string s = m.sign < 0 ? "-" : "";
    if (m.mask == 0) return s + "1";
    for (int i = 0; i < 31; ++i)
        if (m.mask >> i & 1) s += "a" + std::to_string(i + 1);
    return s;
}

// parse "a1a3", "-a1", "+1", "1"; returns consumed length via pos
inline Mono parse_mono(const std::string& s, size_t& pos) {
    Mono m;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
        if (s[pos] == '-') m.sign = -1;
        ++pos;
    }
    if (pos < s.size() && s[pos] == '1' && (pos + 1 >= s.size() || s[pos + 1] < '0' || s[pos + 1] > '9')) {
        ++pos;
        return m;
    }
    bool any = false;
    while (pos < s.size() && s[pos] == 'a') {
        size_t j = pos + 1;
        int v = 0;
        while (j < s.size() && s[j] >= '0' && s[j] <= '9') v = v * 10 + (s[j++] - '0');
        if (v == 0) throw std::invalid_argument("bad monomial: " + s);
        m.mask |= Mask(1u) << (v - 1);
        pos = j;
        any = true;
    }
    if (!any) throw std::invalid_argument("bad monomial: " + s);
    return m;
}
inline Mono parse_mono(const std::string& s) {
    size_t pos = 0;
    Mono m = parse_mono(s, pos);
    if (pos != s.size()) throw std::invalid_argument("bad monomial: " + s);
    return m;
}

// denominator string for a magnitude 2^{-m/2}: "", "sqrt2", "2", "2sqrt2", ...
inline std::string half_power_denom(int m) {
    if (m <= 0) return "";
    if (m % 2 == 0) return std::to_string(1LL << (m / 2));
    int k = (m - 1) / 2;
    return (k ? std::to_string(1LL << k) : std::string()) + "sqrt2";
}

// Serialize; uniform-magnitude supports (the tilde-B+ case) print with a
// common denominator, anything else falls back to explicit per-term scalars.
inline std::string clifford_str(const CliffElem& z) {
    std::vector<Mask> support;
    for (Mask s = 0; s < z.c.size(); ++s)
        if (!z.c[s].is_zero()) support.push_back(s);
    if (support.empty()) return "0";

    // uniform magnitude 2^{-m/2}?
    bool uniform = true;
    int mexp = 0;
    for (size_t i = 0; i < support.size() && uniform; ++i) {
        const Scalar& c = z.c[support[i]];
        Scalar mag = c.sign() < 0 ? -c : c;
        int m = -1;
        for (int t = 0; t <= 2 * (c.f + 2); ++t)
            if (mag == Scalar::pow2_half(-t)) { m = t; break; }
        if (m < 0) uniform = false;
        else if (i == 0) mexp = m;
        else if (m != mexp) uniform = false;
    }
    std::string body;
    if (uniform) {
        for (size_t i = 0; i < support.size(); ++i) {
            bool neg = z.c[support[i]].sign() < 0;
            if (i == 0) body += neg ? "-" : "";
            else body += neg ? "-" : "+";
            body += mono_str(Mono{support[i], 1});
        }
        std::string denom = half_power_denom(mexp);
        if (denom.empty()) return support.size() == 1 ? body : "(" + body + ")";
        return "(" + body + ")/" + denom;
    }
    for (size_t i = 0; i < support.size(); ++i) {
        if (i) body += " + ";
        body += z.c[support[i]].str() + "*" + mono_str(Mono{support[i], 1});
    }
    return body;
}

// Parse "(t1+t2-...)/denom" or a bare signed monomial into an exact element.
inline CliffElem parse_clifford(const std::string& str, int n) {
    std::string s;
    for (char c : str)
        if (c != ' ') s += c;
    size_t pos = 0;
    bool paren = pos < s.size() && s[pos] == '(';
    if (paren) ++pos;
    CliffElem num = CliffElem::zero(n);
    while (pos < s.size() && s[pos] != ')') {
        Mono m = parse_mono(s, pos);
        if (m.mask >= num.c.size()) throw std::invalid_argument("monomial out of range: " + str);
        num.c[m.mask] += m.sign < 0 ? -Scalar::one() : Scalar::one();
    }
    if (paren) {
        if (pos >= s.size() || s[pos] != ')') throw std::invalid_argument("unbalanced parens: " + str);
        ++pos;
    }
    Scalar scale = Scalar::one();
    if (pos < s.size()) {
        if (s[pos] != '/') throw std::invalid_argument("bad clifford expression: " + str);
        std::string denom = s.substr(pos + 1);
        long long k = 0;
        size_t i = 0;
        while (i < denom.size() && denom[i] >= '0' && denom[i] <= '9') k = k * 10 + (denom[i++] - '0');
        bool root = denom.substr(i) == "sqrt2";
        if (!root && i != denom.size()) throw std::invalid_argument("bad denominator: " + denom);
        int m = 0;
        if (k > 0) {
            while ((1LL << m) < k) ++m;
            if ((1LL << m) != k) throw std::invalid_argument("denominator must be a power of 2: " + denom);
        }
        scale = Scalar::pow2_half(-(2 * m + (root ? 1 : 0)));
    }
    for (auto& c : num.c) c *= scale;
    return num;
}

// z selector for CLI and tests: "all" | "orbits" | "q*acute" | clifford expr.
// Returns the Quat translations u with z = acute(sigma) u.
inline std::vector<Mono> parse_z_selector(const std::string& sel, const Permutation& sigma) {
    int n = sigma.n();
    GroupElem asig = acute(sigma);
    std::vector<Mono> out;
    if (sel == "all") {
        for (uint32_t c = 0; c < (1u << (n + 1)); ++c) out.push_back(Mono::from_code(c));
        return out;
    }
    if (sel == "orbits") {
        std::vector<CliffElem> seen;
        for (uint32_t c = 0; c < (1u << (n + 1)); ++c) {
            GroupElem z = asig.mul_mono(Mono::from_code(c));
            bool fresh = true;
            for (const auto& o : seen)
                for (Mask e = 0; e < (Mask(1u) << n) && fresh; ++e)
                    if (o.act_E(e) == z.z) fresh = false;
            if (fresh) {
                seen.push_back(z.z);
                out.push_back(Mono::from_code(c));
            }
        }
        return out;
    }
    size_t star = sel.find("*acute");
    if (star != std::string::npos || sel == "acute") {
        Mono q = sel == "acute" ? Mono::unit() : parse_mono(sel.substr(0, star));
        // z = q * acute(sigma): u = acute(sigma)^{-1} q acute(sigma)
        CliffElem u = asig.inverse().z.mul_mono(q) * asig.z;
        out.push_back(u.as_mono());
        return out;
    }
    CliffElem z = parse_clifford(sel, n);
    CliffElem u = asig.inverse().z * z;
    out.push_back(u.as_mono());
    return out;
}

// ---------------------------------------------------------------------------
// Wiring-diagram SVG: wires as polylines, one crossing per letter; squares
// mark +-2 and disks +-1 (black negative, white positive).
// ---------------------------------------------------------------------------
inline std::string wiring_svg(const Word& w, const std::vector<int8_t>& eps = {}) {
    const int dx = 50, dy = 40, x0 = 40, y0 = 30;
    int m = w.n + 1, l = w.length();
    int width = x0 * 2 + dx * (l + 1), height = y0 * 2 + dy * (m - 1);
    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
        << "' viewBox='0 0 " << width << " " << height << "'>\n";
    // wire paths: track positions through the crossings
    std::vector<int> pos(m);  // wire -> row
    for (int i = 0; i < m; ++i) pos[i] = i;
    std::vector<std::string> path(m);
    auto pt = [&](int step, int row) {
        return std::to_string(x0 + step * dx) + "," + std::to_string(y0 + row * dy);
    };
    for (int i = 0; i < m; ++i) path[i] = "M" + pt(0, i);
    for (int k = 0; k < l; ++k) {
        int r = w.letters[k] - 1;  // rows r, r+1 cross
        int wa = -1, wb = -1;
        for (int i = 0; i < m; ++i) {
            if (pos[i] == r) wa = i;
            if (pos[i] == r + 1) wb = i;
        }
        for (int i = 0; i < m; ++i) {
            int row = pos[i];
            if (i == wa) row = r + 1;
            if (i == wb) row = r;
            path[i] += " L" + pt(k + 1, row);
            pos[i] = row;
        }
    }
    for (int i = 0; i < m; ++i) path[i] += " L" + pt(l + 1, pos[i]);
    for (int i = 0; i < m; ++i)
        svg << "  <path d='" << path[i] << "' fill='none' stroke='black' stroke-width='1.5'/>\n";
    // crossing marks
    for (int k = 0; k < l && k < int(eps.size()); ++k) {
        double cx = x0 + (k + 0.5) * dx, cy = y0 + (w.letters[k] - 0.5) * dy;
        int8_t e = eps[k];
        const char* fill = e < 0 ? "black" : "white";
        if (e == 2 || e == -2)
            svg << "  <rect x='" << cx - 6 << "' y='" << cy - 6
                << "' width='12' height='12' fill='" << fill << "' stroke='black'/>\n";
        else
            svg << "  <circle cx='" << cx << "' cy='" << cy << "' r='7' fill='" << fill
                << "' stroke='black'/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

// ---------------------------------------------------------------------------
// DOT exports: the ancestry poset (Hasse diagram, dimension-graded ranks)
// and the 1-skeleton of a cell complex.
// ---------------------------------------------------------------------------
inline std::string poset_dot(const Word& w, const std::vector<Ancestry>& bucket, ClosureCache& cache) {
    std::vector<std::vector<BElem>> chains;
    for (const auto& a : bucket) chains.push_back(belem_chain(w, a.eps));
    int N = int(bucket.size());
    std::vector<std::vector<char>> leq(N, std::vector<char>(N, 0));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            if (i != j) leq[i][j] = ancestry_leq(chains[i], chains[j], cache);
    std::ostringstream dot;
    dot << "digraph poset {\n  rankdir=BT;\n  node [shape=box];\n";
    int maxdim = 0;
    for (const auto& a : bucket) maxdim = std::max(maxdim, a.dim);
    for (int d = 0; d <= maxdim; ++d) {
        dot << "  { rank=same;";
        for (int i = 0; i < N; ++i)
            if (bucket[i].dim == d) dot << " \"" << bucket[i].str() << "\";";
        dot << " }\n";
    }
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (!leq[i][j]) continue;
            bool covering = true;
            for (int k = 0; k < N && covering; ++k)
                if (k != i && k != j && leq[i][k] && leq[k][j]) covering = false;
            if (covering)
                dot << "  \"" << bucket[i].str() << "\" -> \"" << bucket[j].str() << "\";\n";
        }
    dot << "}\n";
    return dot.str();
}

inline std::string complex_dot(const CellComplex& cx) {
    std::ostringstream dot;
    dot << "graph complex {\n  node [shape=box];\n";
    for (int i = 0; i < int(cx.cells.size()); ++i)
        if (cx.cells[i].dim == 0)
            dot << "  \"" << cx.cells[i].str() << "\" [label=\"" << cx.cells[i].str()
                << "\\ncomp " << cx.comp[i] << "\"];\n";
    for (int i = 0; i < int(cx.cells.size()); ++i) {
        if (cx.cells[i].dim != 1) continue;
        dot << "  \"" << cx.cells[cx.edge_ends[i][0]].str() << "\" -- \""
            << cx.cells[cx.edge_ends[i][1]].str() << "\" [label=\"" << cx.cells[i].str() << "\"];\n";
    }
    for (int i = 0; i < int(cx.cells.size()); ++i)
        if (cx.cells[i].dim >= 2)
            dot << "  // dim-" << cx.cells[i].dim << " cell " << cx.cells[i].str() << " ("
                << tameness_str(cx.tameness[i]) << ")\n";
    dot << "}\n";
    return dot.str();
}

// 1-skeleton of a complex as SVG: vertices on a circle per component,
// edges as chords, higher cells listed in a legend
inline std::string complex_svg(const CellComplex& cx) {
    const double pi = 3.14159265358979323846;
    int nv = 0;
    for (const auto& c : cx.cells) nv += c.dim == 0;
    int R = std::max(120, nv * 12), cxy = R + 60;
    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << 2 * cxy << "' height='"
        << 2 * cxy + 20 * (int(cx.cells.size()) - nv) << "'>\n";
    std::vector<std::pair<double, double>> at(cx.cells.size());
    int k = 0;
    for (int i = 0; i < int(cx.cells.size()); ++i) {
        if (cx.cells[i].dim != 0) continue;
        double a = 2 * pi * k++ / std::max(1, nv);
        at[i] = {cxy + R * std::cos(a), cxy + R * std::sin(a)};
    }
    for (int i = 0; i < int(cx.cells.size()); ++i) {
        if (cx.cells[i].dim != 1) continue;
        auto [x1, y1] = at[cx.edge_ends[i][0]];
        auto [x2, y2] = at[cx.edge_ends[i][1]];
        svg << "  <line x1='" << x1 << "' y1='" << y1 << "' x2='" << x2 << "' y2='" << y2
            << "' stroke='black'/>\n";
    }
    for (int i = 0; i < int(cx.cells.size()); ++i) {
        if (cx.cells[i].dim != 0) continue;
        auto [x, y] = at[i];
        svg << "  <circle cx='" << x << "' cy='" << y << "' r='4' fill='white' stroke='black'/>\n"
            << "  <text x='" << x + 6 << "' y='" << y << "' font-size='9'>" << cx.cells[i].str()
            << "</text>\n";
    }
    int line = 2 * cxy;
    for (int i = 0; i < int(cx.cells.size()); ++i) {
        if (cx.cells[i].dim < 2) continue;
        svg << "  <text x='10' y='" << line << "' font-size='10'>dim " << cx.cells[i].dim
            << " cell " << cx.cells[i].str() << " (" << tameness_str(cx.tameness[i]) << ")</text>\n";
        line += 20;
    }
    svg << "</svg>\n";
    return svg.str();
}

// census CSV: z, Re(z), cells per dimension, chi, component counts
inline std::string census_csv(const Word& w, const std::vector<CensusRow>& rows, int max_dim) {
    GroupElem asig = acute(w);
    std::ostringstream csv;
    csv << "z,re";
    for (int d = 0; d <= max_dim; ++d) csv << ",cells" << d;
    csv << ",chi,components,thin,thick\n";
    for (const auto& r : rows) {
        csv << '"' << clifford_str(asig.mul_mono(r.u).z) << '"' << ',' << r.re;
        for (int d = 0; d <= max_dim; ++d)
            csv << ',' << (d < int(r.cells_per_dim.size()) ? r.cells_per_dim[d] : 0);
        csv << ',' << r.euler_cells << ',' << r.components << ',' << r.thin_components << ','
            << r.thick_components << '\n';
    }
    return csv.str();
}

}  // namespace blc
