#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "blc/ancestry.hpp"
#include "blc/order.hpp"

namespace blc {

// ---------------------------------------------------------------------------
// The CW complex BLC_z for a fixed reduced word and z = acute(sigma) u.
// Cells are the ancestries with P(eps) = z; a cell of dimension d is glued
// into the subcomplex of its punctured upper set U*_eps.  Edges carry their
// two endpoint vertices, tame 2-cells their boundary cycle; higher cells are
// carried with face-poset data only.
// ---------------------------------------------------------------------------

enum class Tameness { tame, wild, undetermined, not_applicable };

inline const char* tameness_str(Tameness t) {
    switch (t) {
        case Tameness::tame: return "tame";
        case Tameness::wild: return "wild";
        case Tameness::undetermined: return "undetermined";
        default: return "n/a";
    }
}

// Endpoints of a dimension-1 cell by the boundary flip rule: endpoint A is
// sign(eps); endpoint B flips A at the two marked crossings k1 < k2 (both on
// row r) and at every position between them on rows r-1, r+1.
inline std::pair<std::vector<int8_t>, std::vector<int8_t>> edge_endpoint_rule(
    const Word& w, const std::vector<int8_t>& eps) {
    int k1 = -1, k2 = -1;
    for (int k = 0; k < int(eps.size()); ++k) {
        if (eps[k] == -2) k1 = k;
        else if (eps[k] == 2) k2 = k;
    }
    if (k1 < 0 || k2 < 0 || k1 > k2) throw std::invalid_argument("edge_endpoint_rule: not dimension 1");
    int r = w.letters[k1];
    if (w.letters[k2] != r) throw std::invalid_argument("edge_endpoint_rule: marks on different rows");
    std::vector<int8_t> A(eps.size()), B;
    for (size_t k = 0; k < eps.size(); ++k) A[k] = eps[k] > 0 ? 1 : -1;
    B = A;
    B[k1] = int8_t(-B[k1]);
    B[k2] = int8_t(-B[k2]);
    for (int k = k1 + 1; k < k2; ++k)
        if (w.letters[k] == r - 1 || w.letters[k] == r + 1) B[k] = int8_t(-B[k]);
    return {A, B};
}

struct CellComplex {
    Word word;
    Mono u;        // z = acute(sigma) u
    GroupElem z;

    std::vector<Ancestry> cells;                 // sorted by (dim, eps)
    std::vector<std::vector<int>> ustar;         // per cell: U*_eps as cell indices
    std::vector<std::array<int, 2>> edge_ends;   // per cell: {A,B} for dim 1, else {-1,-1}
    std::vector<Tameness> tameness;
    std::vector<std::vector<std::pair<int, int>>> boundary2;  // per cell (dim 2, tame): (edge, +-1)
    std::vector<int> comp;       // -1 when the assignment is ambiguous (see below)
    int num_components = 0;
    // Number of higher cells whose U*-vertices span several skeleton
    // components.  The upper set only bounds the closure data from above, so
    // such cells are assigned through U+- (whose strata approach the cell);
    // cells where even that is ambiguous keep comp = -1.
    int ambiguous_upper_sets = 0;
    std::vector<long long> cells_per_dim;

    int dim_of(int i) const { return cells[i].dim; }
    long long euler() const {
        long long e = 0;
        for (const auto& c : cells) e += (c.dim % 2 == 0) ? 1 : -1;
        return e;
    }
    std::vector<long long> euler_per_component() const {
        std::vector<long long> e(num_components, 0);
        for (size_t i = 0; i < cells.size(); ++i) {
            if (comp[i] < 0)
                throw std::runtime_error("euler_per_component: unassigned cell " + cells[i].str());
            e[comp[i]] += (cells[i].dim % 2 == 0) ? 1 : -1;
        }
        return e;
    }
};

// ---------------------------------------------------------------------------
// Tameness of a cell from its punctured upper set.
// ---------------------------------------------------------------------------
namespace detail {

// is the 1-complex (vertex/edge cells of `us`) a single simple cycle through
// all of them?  Returns the cyclic edge order if so.
struct CycleCheck {
    bool is_cycle = false;
    std::vector<int> edge_order;      // edges in traversal order
    std::vector<int> edge_dir;        // +1 if traversed A->B
};

inline CycleCheck trace_cycle(const CellComplex& cx, const std::vector<int>& us, int start_edge,
                              bool increasing_start) {
    CycleCheck out;
    std::vector<int> verts, edges;
    for (int j : us) {
        if (cx.cells[j].dim == 0) verts.push_back(j);
        else if (cx.cells[j].dim == 1) edges.push_back(j);
        else return out;
    }
    if (verts.size() != edges.size() || verts.empty()) return out;
    std::map<int, std::vector<int>> adj;  // vertex -> incident edges
    for (int e : edges) {
        auto [a, b] = cx.edge_ends[e];
        if (std::find(verts.begin(), verts.end(), a) == verts.end() ||
            std::find(verts.begin(), verts.end(), b) == verts.end())
            return out;  // endpoint outside the upper set
        adj[a].push_back(e);
        adj[b].push_back(e);
    }
    for (auto& [v, es] : adj)
        if (es.size() != 2) return out;
    if (adj.size() != verts.size()) return out;

    // walk
    int e0 = start_edge >= 0 ? start_edge : edges[0];
    auto [a0, b0] = cx.edge_ends[e0];
    int cur = increasing_start ? std::max(a0, b0) : std::min(a0, b0);
    int prev_edge = e0;
    out.edge_order.push_back(e0);
    out.edge_dir.push_back(cur == cx.edge_ends[e0][1] ? 1 : -1);
    while (int(out.edge_order.size()) < int(edges.size())) {
        auto& es = adj[cur];
        int nxt = (es[0] == prev_edge) ? es[1] : es[0];
        out.edge_order.push_back(nxt);
        auto [a, b] = cx.edge_ends[nxt];
        out.edge_dir.push_back(cur == a ? 1 : -1);
        cur = (cur == a) ? b : a;
        prev_edge = nxt;
    }
    // closed and covering
    auto [af, bf] = cx.edge_ends[e0];
    int start = increasing_start ? std::min(af, bf) : std::max(af, bf);
    out.is_cycle = (cur == start);
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// build_complex
// ---------------------------------------------------------------------------
struct BuildOptions {
    bool oracle_check = true;   // cross-check the edge flip rule against U*
    bool attach2 = true;        // compute tameness and 2-cell boundaries
};

inline CellComplex build_complex(const Word& w, const Mono& u, const std::vector<Ancestry>& all,
                                 ClosureCache& cache, const BuildOptions& opt = {}) {
    CellComplex cx;
    cx.word = w;
    cx.u = u;
    cx.z = acute(w).mul_mono(u);

    for (const auto& a : all)
        if (a.u() == u) cx.cells.push_back(a);
    std::sort(cx.cells.begin(), cx.cells.end(), [](const Ancestry& a, const Ancestry& b) {
        return a.dim != b.dim ? a.dim < b.dim : a.eps < b.eps;
    });
    int N = int(cx.cells.size());
    cx.ustar.assign(N, {});
    cx.edge_ends.assign(N, {-1, -1});
    cx.tameness.assign(N, Tameness::not_applicable);
    cx.boundary2.assign(N, {});

    std::map<std::vector<int8_t>, int> index;
    for (int i = 0; i < N; ++i) index[cx.cells[i].eps] = i;

    std::vector<std::vector<BElem>> chains(N);
    for (int i = 0; i < N; ++i) chains[i] = belem_chain(w, cx.cells[i].eps);

    int maxdim = 0;
    for (const auto& c : cx.cells) maxdim = std::max(maxdim, c.dim);
    cx.cells_per_dim.assign(maxdim + 1, 0);
    for (const auto& c : cx.cells) cx.cells_per_dim[c.dim]++;

    // upper sets (strict) for positive-dimensional cells
    for (int i = 0; i < N; ++i) {
        if (cx.cells[i].dim == 0) continue;
        cx.ustar[i] = upper_set_strict(chains[i], i, N,
                                       [&](int j) -> const std::vector<BElem>& { return chains[j]; }, cache);
    }

    // edges: endpoints from U* cross-checked against the flip rule
    for (int i = 0; i < N; ++i) {
        if (cx.cells[i].dim != 1) continue;
        auto [A, B] = edge_endpoint_rule(w, cx.cells[i].eps);
        auto ia = index.find(A), ib = index.find(B);
        if (ia == index.end() || ib == index.end())
            throw std::runtime_error("edge rule endpoint missing from complex at " + cx.cells[i].str());
        cx.edge_ends[i] = {ia->second, ib->second};
        if (opt.oracle_check) {
            std::vector<int> want{ia->second, ib->second};
            std::sort(want.begin(), want.end());
            std::vector<int> got = cx.ustar[i];
            std::sort(got.begin(), got.end());
            if (got != want)
                throw std::runtime_error("edge rule and order oracle disagree at " + cx.cells[i].str());
        }
        cx.tameness[i] = Tameness::tame;
    }

    // 2-cells and higher
    for (int i = 0; i < N; ++i) {
        int d = cx.cells[i].dim;
        if (d < 2) continue;
        if (!opt.attach2) { cx.tameness[i] = Tameness::undetermined; continue; }
        if (d == 2) {
            bool pure = true;
            for (int j : cx.ustar[i]) pure = pure && cx.cells[j].dim <= 1;
            if (!pure) { cx.tameness[i] = Tameness::undetermined; continue; }
            auto split = U_pm(w, cx.cells[i].eps, chains[i], cx.ustar[i], chains);
            // orientation: start from the least U^- edge, increasing vertex label
            int e0 = -1;
            for (int j : split.minus)
                if (cx.cells[j].dim == 1 && (e0 < 0 || cx.cells[j].eps < cx.cells[e0].eps)) e0 = j;
            auto cyc = detail::trace_cycle(cx, cx.ustar[i], e0, /*increasing_start=*/true);
            if (!cyc.is_cycle) {
                // a pure graph that is not one simple cycle: provably not S^1
                // when disconnected or chi != 0; stay conservative otherwise
                long long chi = 0;
                for (int j : cx.ustar[i]) chi += cx.cells[j].dim == 0 ? 1 : -1;
                cx.tameness[i] = (chi != 0) ? Tameness::wild : Tameness::undetermined;
                continue;
            }
            int minus_on = 0, plus_on = 0;
            for (size_t t = 0; t < cyc.edge_order.size(); ++t) {
                int e = cyc.edge_order[t];
                if (std::find(split.minus.begin(), split.minus.end(), e) != split.minus.end()) ++minus_on;
                if (std::find(split.plus.begin(), split.plus.end(), e) != split.plus.end()) ++plus_on;
            }
            if (minus_on % 2 == 1 && plus_on % 2 == 1) {
                cx.tameness[i] = Tameness::tame;
                for (size_t t = 0; t < cyc.edge_order.size(); ++t)
                    cx.boundary2[i].push_back({cyc.edge_order[t], cyc.edge_dir[t]});
            } else {
                cx.tameness[i] = Tameness::wild;
            }
        } else {
            // d >= 3: chi and 1-skeleton connectivity of U* as necessary
            // evidence; a failure is a provably non-spherical upper set
            long long chi = 0;
            for (int j : cx.ustar[i]) chi += (cx.cells[j].dim % 2 == 0) ? 1 : -1;
            long long chi_sphere = (d % 2 == 0) ? 0 : 2;  // chi(S^{d-1})
            std::map<int, int> uf;
            std::function<int(int)> root = [&](int x) { return uf[x] == x ? x : uf[x] = root(uf[x]); };
            for (int j : cx.ustar[i])
                if (cx.cells[j].dim == 0) uf[j] = j;
            for (int j : cx.ustar[i]) {
                if (cx.cells[j].dim != 1) continue;
                int a = cx.edge_ends[j][0], b = cx.edge_ends[j][1];
                if (!uf.count(a) || !uf.count(b)) continue;
                int ra = root(a), rb = root(b);
                if (ra != rb) uf[std::max(ra, rb)] = std::min(ra, rb);
            }
            int comps = 0;
            for (auto& [x, p] : uf) comps += root(x) == x;
            cx.tameness[i] = (chi == chi_sphere && comps == 1) ? Tameness::undetermined : Tameness::wild;
        }
    }

    // components of the complex are the components of the 1-skeleton
    std::vector<int> parent(N);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (int i = 0; i < N; ++i) {
        if (cx.cells[i].dim != 1) continue;
        for (int v : cx.edge_ends[i]) {
            int a = find(i), b = find(v);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    }
    cx.comp.assign(N, -1);
    std::map<int, int> remap;
    for (int i = 0; i < N; ++i) {
        if (cx.cells[i].dim > 1) continue;
        int r = find(i);
        auto it = remap.find(r);
        if (it == remap.end()) it = remap.emplace(r, int(remap.size())).first;
        cx.comp[i] = it->second;
    }
    cx.num_components = int(remap.size());

    // Higher cells inherit a component.  When the U*-vertices agree that is
    // the assignment; otherwise the strata of U+- approach the cell, so a
    // unanimous U+- component is sound.  The iteration resolves
    // same-dimension U+- members (type-II shapes).
    std::vector<char> ambiguous(N, 0);
    auto unanimous = [&](const std::vector<int>& members, bool verts_only) {
        int root = -2;
        for (int j : members) {
            if (verts_only && cx.cells[j].dim != 0) continue;
            int cj = cx.comp[j];
            if (cj < 0) return -1;  // member unresolved (yet)
            if (root == -2) root = cj;
            else if (root != cj) return -1;
        }
        return root == -2 ? -1 : root;
    };
    bool progress = true;
    while (progress) {
        progress = false;
        for (int i = 0; i < N; ++i) {
            if (cx.cells[i].dim < 2 || cx.comp[i] >= 0) continue;
            int byverts = unanimous(cx.ustar[i], /*verts_only=*/true);
            if (byverts >= 0) {
                cx.comp[i] = byverts;
                progress = true;
                continue;
            }
            if (!ambiguous[i]) {
                ambiguous[i] = 1;
                cx.ambiguous_upper_sets++;
            }
            auto split = U_pm(w, cx.cells[i].eps, chains[i], cx.ustar[i], chains);
            for (const auto& side : {split.minus, split.plus}) {
                int byside = unanimous(side, /*verts_only=*/false);
                if (byside >= 0) {
                    cx.comp[i] = byside;
                    progress = true;
                    break;
                }
            }
        }
    }
    return cx;
}

// ---------------------------------------------------------------------------
// Homology in degrees 0-1 per component (Smith normal form of boundary maps).
// ---------------------------------------------------------------------------
struct HomologyReport {
    bool exact = true;  // false when a 2-cell is wild/undetermined
    struct Component {
        int h0 = 1;
        int h1_rank = 0;
        std::vector<long long> h1_torsion;
    };
    std::vector<Component> comps;
};

namespace detail {

// Smith normal form diagonal of an integer matrix (destructive; small sizes)
inline std::vector<long long> smith_diagonal(std::vector<std::vector<long long>> m) {
    std::vector<long long> diag;
    size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    size_t r0 = 0, c0 = 0;
    while (r0 < rows && c0 < cols) {
        // find a nonzero pivot
        size_t pr = r0, pc = c0;
        bool found = false;
        for (size_t i = r0; i < rows && !found; ++i)
            for (size_t j = c0; j < cols && !found; ++j)
                if (m[i][j]) { pr = i; pc = j; found = true; }
        if (!found) break;
        std::swap(m[r0], m[pr]);
        for (size_t i = 0; i < rows; ++i) std::swap(m[i][c0], m[i][pc]);
        // reduce until pivot divides its row and column and they are cleared
        for (;;) {
            bool again = false;
            for (size_t i = r0 + 1; i < rows; ++i) {
                if (!m[i][c0]) continue;
                long long f = m[i][c0] / m[r0][c0];
                for (size_t j = c0; j < cols; ++j) m[i][j] -= f * m[r0][j];
                if (m[i][c0]) { std::swap(m[r0], m[i]); again = true; }
            }
            for (size_t j = c0 + 1; j < cols; ++j) {
                if (!m[r0][j]) continue;
                long long f = m[r0][j] / m[r0][c0];
                for (size_t i = r0; i < rows; ++i) m[i][j] -= f * m[i][c0];
                if (m[r0][j]) {
                    for (size_t i = 0; i < rows; ++i) std::swap(m[i][c0], m[i][j]);
                    again = true;
                }
            }
            if (!again) break;
        }
        diag.push_back(std::abs(m[r0][c0]));
        ++r0;
        ++c0;
    }
    return diag;
}

}  // namespace detail

inline HomologyReport homology_low(const CellComplex& cx) {
    HomologyReport rep;
    rep.comps.resize(cx.num_components);
    bool all2tame = true;
    for (size_t i = 0; i < cx.cells.size(); ++i)
        if (cx.cells[i].dim == 2 && cx.tameness[i] != Tameness::tame) all2tame = false;
    rep.exact = all2tame;

    for (int c = 0; c < cx.num_components; ++c) {
        std::vector<int> verts, edges, faces;
        for (int i = 0; i < int(cx.cells.size()); ++i) {
            if (cx.comp[i] != c) continue;
            if (cx.cells[i].dim == 0) verts.push_back(i);
            else if (cx.cells[i].dim == 1) edges.push_back(i);
            else if (cx.cells[i].dim == 2 && cx.tameness[i] == Tameness::tame) faces.push_back(i);
        }
        std::map<int, int> vidx, eidx;
        for (size_t k = 0; k < verts.size(); ++k) vidx[verts[k]] = int(k);
        for (size_t k = 0; k < edges.size(); ++k) eidx[edges[k]] = int(k);

        // rank of d1 = V - 1 on a connected component; compute anyway
        std::vector<std::vector<long long>> d1(edges.size(), std::vector<long long>(verts.size(), 0));
        for (size_t k = 0; k < edges.size(); ++k) {
            auto [a, b] = cx.edge_ends[edges[k]];
            d1[k][vidx[a]] -= 1;
            d1[k][vidx[b]] += 1;
        }
        std::vector<std::vector<long long>> d2(faces.size(), std::vector<long long>(edges.size(), 0));
        for (size_t k = 0; k < faces.size(); ++k)
            for (auto [e, s] : cx.boundary2[faces[k]]) d2[k][eidx[e]] += s;

        auto diag1 = detail::smith_diagonal(d1);
        auto diag2 = detail::smith_diagonal(d2);
        int rank1 = 0, rank2 = 0;
        for (long long v : diag1)
            if (v) ++rank1;
        std::vector<long long> torsion;
        for (long long v : diag2) {
            if (v) ++rank2;
            if (v > 1) torsion.push_back(v);
        }
        auto& out = rep.comps[c];
        out.h0 = int(verts.size()) - rank1;  // should be 1
        out.h1_rank = int(edges.size()) - rank1 - rank2;
        out.h1_torsion = torsion;
    }
    return rep;
}

// boundary-of-boundary sanity: d1(d2(face)) = 0 for every attached 2-cell
inline bool boundary_squares_to_zero(const CellComplex& cx) {
    for (size_t i = 0; i < cx.cells.size(); ++i) {
        if (cx.boundary2[i].empty()) continue;
        std::map<int, long long> vsum;
        for (auto [e, s] : cx.boundary2[i]) {
            auto [a, b] = cx.edge_ends[e];
            vsum[a] -= s;
            vsum[b] += s;
        }
        for (auto& [v, val] : vsum)
            if (val != 0) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Free-face collapsing on the face poset (closure data = upper sets).
// ---------------------------------------------------------------------------
struct CollapseReport {
    bool fully_collapsed = false;
    int pairs_removed = 0;
    std::vector<int> surviving;      // cell indices left after greedy collapse
    bool chi_one_per_component = true;
};

inline CollapseReport collapse_evidence(const CellComplex& cx) {
    CollapseReport rep;
    int N = int(cx.cells.size());
    std::vector<char> alive(N, 1);
    // coface lists: c such that tau in U*_c
    std::vector<std::vector<int>> cofaces(N);
    for (int c = 0; c < N; ++c)
        for (int t : cx.ustar[c]) cofaces[t].push_back(c);

    bool progress = true;
    while (progress) {
        progress = false;
        for (int t = 0; t < N; ++t) {
            if (!alive[t]) continue;
            int the_coface = -1, count = 0;
            for (int c : cofaces[t])
                if (alive[c]) { the_coface = c; ++count; }
            if (count != 1) continue;
            if (cx.cells[the_coface].dim != cx.cells[t].dim + 1) continue;
            alive[t] = alive[the_coface] = 0;
            rep.pairs_removed++;
            progress = true;
        }
    }
    for (int i = 0; i < N; ++i)
        if (alive[i]) rep.surviving.push_back(i);
    // fully collapsed = one vertex per component
    std::vector<int> per_comp(cx.num_components, 0);
    bool ok = true;
    for (int i : rep.surviving) {
        per_comp[cx.comp[i]]++;
        if (cx.cells[i].dim != 0) ok = false;
    }
    for (int c = 0; c < cx.num_components; ++c) ok = ok && per_comp[c] == 1;
    rep.fully_collapsed = ok;
    for (long long e : cx.euler_per_component())
        if (e != 1) rep.chi_one_per_component = false;
    return rep;
}

// ---------------------------------------------------------------------------
// Component census over all z in acute(sigma) Quat.  Components are read off
// the 1-skeleton: vertices are dimension-0 ancestries with P = z, edges the
// dimension-1 ones with flip-rule endpoints.  Thin vertices must be isolated.
// ---------------------------------------------------------------------------
struct CensusRow {
    Mono u;
    double re = 0;
    long long vertices = 0;
    std::vector<long long> cells_per_dim;
    long long euler_cells = 0;
    long long euler_formula = 0;
    int components = 0;
    int thin_components = 0;
    int thick_components = 0;
};

inline std::vector<CensusRow> component_census(const Word& w, const std::vector<Ancestry>& all) {
    Permutation sigma = w.product();
    if (!blocks(sigma).empty())
        throw std::invalid_argument("component_census: sigma blocks; apply decompose_blocks first");
    GroupElem asig = acute(w);
    size_t ncodes = size_t(1) << (w.n + 1);

    struct Bucket {
        std::vector<int> verts, edges;
        std::map<std::vector<int8_t>, int> vindex;
    };
    std::vector<Bucket> buckets(ncodes);
    for (int i = 0; i < int(all.size()); ++i) {
        const auto& a = all[i];
        uint32_t code = a.u().code();
        if (a.dim == 0) {
            buckets[code].vindex[a.eps] = int(buckets[code].verts.size());
            buckets[code].verts.push_back(i);
        } else if (a.dim == 1) {
            buckets[code].edges.push_back(i);
        }
    }

    std::vector<CensusRow> rows(ncodes);
    for (uint32_t code = 0; code < ncodes; ++code) {
        Bucket& b = buckets[code];
        CensusRow& row = rows[code];
        row.u = Mono::from_code(code);
        row.re = asig.mul_mono(row.u).re().to_double();
        row.vertices = (long long)b.verts.size();

        std::vector<int> parent(b.verts.size());
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
        std::vector<char> touched(b.verts.size(), 0);
        for (int ei : b.edges) {
            auto [A, B] = edge_endpoint_rule(w, all[ei].eps);
            auto ia = b.vindex.find(A), ib = b.vindex.find(B);
            if (ia == b.vindex.end() || ib == b.vindex.end())
                throw std::runtime_error("census: edge endpoint not in the same component bucket");
            touched[ia->second] = touched[ib->second] = 1;
            int x = find(ia->second), y = find(ib->second);
            if (x != y) parent[std::max(x, y)] = std::min(x, y);
        }
        std::map<int, int> comps;
        for (size_t v = 0; v < b.verts.size(); ++v) comps.emplace(find(int(v)), int(comps.size()));
        row.components = int(comps.size());
        for (size_t v = 0; v < b.verts.size(); ++v) {
            if (is_thin(w, all[b.verts[v]].eps)) {
                if (touched[v]) throw std::runtime_error("census: thin vertex is not isolated");
                row.thin_components++;
            }
        }
        row.thick_components = row.components - row.thin_components;
    }
    for (const auto& a : all) {
        CensusRow& row = rows[a.u().code()];
        if (int(row.cells_per_dim.size()) <= a.dim) row.cells_per_dim.resize(a.dim + 1, 0);
        row.cells_per_dim[a.dim]++;
        row.euler_cells += (a.dim % 2 == 0) ? 1 : -1;
    }
    // Euler characteristic by the counting formula
    CountTable tab = count_table(w, all);
    for (uint32_t code = 0; code < ncodes; ++code) {
        long long e = 0;
        for (size_t i = 0; i < tab.pre.size(); ++i) {
            long long v = tab.counts[i][code];
            e += (tab.pre[i].dim % 2 == 0) ? v : -v;
        }
        rows[code].euler_formula = e;
        if (rows[code].euler_formula != rows[code].euler_cells)
            throw std::runtime_error("census: euler mismatch between cells and formula");
    }
    return rows;
}

}  // namespace blc
