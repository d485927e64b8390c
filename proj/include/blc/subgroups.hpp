#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "blc/clifford.hpp"
#include "blc/perm.hpp"

namespace blc {

// Partition of {1..n+1}; blocks sorted by least element.
struct Partition {
    int m = 0;
    std::vector<std::vector<int>> blocks;  // 1-based members

    Partition() = default;
    Partition(int m_, std::vector<std::vector<int>> b) : m(m_), blocks(std::move(b)) { canonicalize(); }

    static Partition from_union_find(int m, std::vector<int> parent) {
        std::vector<std::vector<int>> bl(m);
        for (int i = 0; i < m; ++i) {
            int r = i;
            while (parent[r] != r) r = parent[r];
            bl[r].push_back(i + 1);
        }
        bl.erase(std::remove_if(bl.begin(), bl.end(), [](auto& v) { return v.empty(); }), bl.end());
        return Partition(m, std::move(bl));
    }
    static Partition cycles_of(const Permutation& s) { return Partition(s.size(), cycles(s)); }
    static Partition single_block(int m) {
        std::vector<int> b(m);
        std::iota(b.begin(), b.end(), 1);
        return Partition(m, {b});
    }
    static Partition singletons(int m) {
        std::vector<std::vector<int>> bl;
        for (int i = 1; i <= m; ++i) bl.push_back({i});
        return Partition(m, std::move(bl));
    }

    int num_blocks() const { return int(blocks.size()); }
    std::string str() const {  // "{1,5}{2,4}{3}"
        std::string s;
        for (const auto& b : blocks) {
            s += '{';
            for (size_t i = 0; i < b.size(); ++i) {
                if (i) s += ',';
                s += std::to_string(b[i]);
            }
            s += '}';
        }
        return s;
    }
    friend bool operator==(const Partition& x, const Partition& y) { return x.blocks == y.blocks; }

  private:
    void canonicalize() {
        for (auto& b : blocks) std::sort(b.begin(), b.end());
        std::sort(blocks.begin(), blocks.end());
        int cnt = 0;
        for (auto& b : blocks) cnt += int(b.size());
        std::vector<char> seen(m + 1, 0);
        for (auto& b : blocks)
            for (int x : b) {
                if (x < 1 || x > m || seen[x]) throw std::invalid_argument("bad partition");
                seen[x] = 1;
            }
        if (cnt != m) throw std::invalid_argument("partition does not cover");
    }
};

// Subgroup of Quat_{n+1} containing {+-1}: stored as the set of unsigned
// monomial masks (each mask stands for the pair +-e_S).  |H| = 2*masks.size().
struct QuatSubgroup {
    int n = 0;
    std::vector<Mask> masks;       // sorted
    std::vector<Mask> generators;  // F2 basis of the mask space (monomials; -1 implied)

    bool contains(Mask s) const { return std::binary_search(masks.begin(), masks.end(), s); }
    bool contains(const Mono& q) const { return contains(q.mask); }
    size_t order() const { return 2 * masks.size(); }
};

// Pi(e_S) is diagonal with entry j equal to -1 iff exactly one of j-1, j is
// in S.  e_S lies in H_X iff every block of X contains an even number of -1
// entries; this is F2-linear in the bits of S.
inline QuatSubgroup H_from_partition(int n, const Partition& X) {
    if (X.m != n + 1) throw std::invalid_argument("H_from_partition: partition size mismatch");
    QuatSubgroup H;
    H.n = n;
    // constraint rows over mask bits: for block A, sum_{j in A} (bit_{j-1} + bit_j) = 0
    std::vector<Mask> rows;
    for (const auto& b : X.blocks) {
        Mask row = 0;
        for (int j : b) {  // 1-based position j: bits j-1 and j as generator indices
            if (j >= 2) row ^= Mask(1u) << (j - 2);
            if (j <= n) row ^= Mask(1u) << (j - 1);
        }
        if (row) rows.push_back(row);
    }
    for (Mask s = 0; s < (Mask(1u) << n); ++s) {
        bool ok = true;
        for (Mask r : rows)
            if (__builtin_popcount(s & r) & 1) { ok = false; break; }
        if (ok) H.masks.push_back(s);
    }
    // F2 basis of the solution space (one pivot per leading bit)
    Mask pivot[32] = {0};
    for (Mask s : H.masks) {
        Mask x = s;
        for (int bit = 31; bit >= 0 && x; --bit) {
            if (!(x >> bit & 1)) continue;
            if (pivot[bit]) { x ^= pivot[bit]; continue; }
            pivot[bit] = x;
            H.generators.push_back(s);
            break;
        }
    }
    return H;
}

inline QuatSubgroup H_sigma(const Permutation& s) { return H_from_partition(s.n(), Partition::cycles_of(s)); }

// Isotropy of z under the E_n action: E with z^E = z, i.e. the F2 kernel of
// the support masks of z.  Returned as the list of E-masks (bit i-1 set means
// E_i = -1).
inline std::vector<Mask> isotropy_E(const CliffElem& z) {
    if (z.is_zero()) throw std::invalid_argument("isotropy_E: z = 0");
    std::vector<Mask> rows;
    for (Mask s = 0; s < z.c.size(); ++s)
        if (!z.c[s].is_zero() && s) rows.push_back(s);
    std::vector<Mask> out;
    for (Mask e = 0; e < (Mask(1u) << z.n); ++e) {
        bool ok = true;
        for (Mask r : rows)
            if (__builtin_popcount(e & r) & 1) { ok = false; break; }
        if (ok) out.push_back(e);
    }
    return out;
}

// Orbit of z under E_n, as exact elements (deduplicated).
inline std::vector<CliffElem> orbit_E(const CliffElem& z) {
    std::vector<CliffElem> orb;
    for (Mask e = 0; e < (Mask(1u) << z.n); ++e) {
        CliffElem w = z.act_E(e);
        bool fresh = true;
        for (const auto& u : orb)
            if (u == w) { fresh = false; break; }
        if (fresh) orb.push_back(std::move(w));
    }
    return orb;
}

}  // namespace blc
