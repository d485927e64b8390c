#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "blc/clifford.hpp"
#include "blc/perm.hpp"
#include "blc/subgroups.hpp"

namespace blc {

// ---------------------------------------------------------------------------
// Preancestries and ancestries for a fixed reduced word.
//
// A preancestry is the square marking eps0 in {0,-2,+2}^l whose rho-recursion
// returns to eta; an ancestry completes it with signs in {+-1} on unmarked
// crossings.  The working state of the enumeration is (rho_k, q_k) where
// q_k in Quat obeys the uniform update
//     q_k = q_{k-1}            if sign(eps(k)) = [ha_{i_k}, q_{k-1}]
//     q_k = q_{k-1} ha_{i_k}   otherwise,
// and P(eps) = acute(sigma) q_l^{-1}.
// ---------------------------------------------------------------------------

struct Preancestry {
    std::vector<int8_t> eps0;  // in {0,-2,+2}
    int dim = 0;

    std::string str() const {
        std::string s = "(";
        for (size_t k = 0; k < eps0.size(); ++k) {
            if (k) s += ',';
            s += eps0[k] == 0 ? "0" : (eps0[k] < 0 ? "-2" : "+2");
        }
        return s + ")";
    }
};

struct Ancestry {
    std::vector<int8_t> eps;  // in {-2,-1,+1,+2}
    Mono q;                   // q_l
    int dim = 0;

    // P(eps) as the Quat translation u with P = acute(sigma) * u
    Mono u() const { return q.inverse(); }

    std::string str() const { return eps_string(eps); }
    static std::string eps_string(const std::vector<int8_t>& e) {
        std::string s = "(";
        for (size_t k = 0; k < e.size(); ++k) {
            if (k) s += ',';
            if (e[k] > 0) s += '+';
            s += std::to_string(int(e[k]));
        }
        return s + ")";
    }
    static std::vector<int8_t> parse_eps(const std::string& str) {
        std::vector<int8_t> e;
        int i = 0, m = int(str.size());
        while (i < m) {
            char c = str[i];
            if (c == '(' || c == ')' || c == ',' || c == ' ') { ++i; continue; }
            int sg = 1;
            if (c == '+') { ++i; }
            else if (c == '-') { sg = -1; ++i; }
            if (i >= m || str[i] < '0' || str[i] > '9') throw std::invalid_argument("bad ancestry string: " + str);
            e.push_back(int8_t(sg * (str[i] - '0')));
            ++i;
        }
        return e;
    }
};

inline Mono q_step(const Mono& q, int letter, int eps_sign) {
    if (commutator_gen(letter, q.mask) == eps_sign) return q;
    return q * Mono::gen(letter);
}

// rho_k and q_k chains (k = 0..l) for a given eps; rho as full Permutation.
struct AncestryChain {
    std::vector<Permutation> rho;
    std::vector<Mono> q;
};

inline AncestryChain ancestry_chain(const Word& w, const std::vector<int8_t>& eps) {
    AncestryChain ch;
    PermState rho(Permutation::top(w.n + 1));
    Mono q = Mono::unit();
    ch.rho.push_back(rho.perm());
    ch.q.push_back(q);
    for (int k = 0; k < w.length(); ++k) {
        int i = w.letters[k];
        int8_t e = eps[k];
        bool asc = rho.ascent(i);
        if (asc != (e == 2))
            throw std::invalid_argument("ancestry: mark/ascent mismatch at position " + std::to_string(k + 1));
        if (e == 2 || e == -2) rho.right_mul_gen(i);
        q = q_step(q, i, e > 0 ? 1 : -1);
        ch.rho.push_back(rho.perm());
        ch.q.push_back(q);
    }
    if (!(ch.rho.back() == Permutation::top(w.n + 1)))
        throw std::invalid_argument("ancestry: rho_l != eta");
    return ch;
}

// validity check without throwing
inline bool ancestry_valid(const Word& w, const std::vector<int8_t>& eps) {
    if (int(eps.size()) != w.length()) return false;
    PermState rho(Permutation::top(w.n + 1));
    for (int k = 0; k < w.length(); ++k) {
        int i = w.letters[k];
        int8_t e = eps[k];
        if (e != 1 && e != -1 && e != 2 && e != -2) return false;
        if (rho.ascent(i) != (e == 2)) return false;  // ascent forces +2, +2 needs ascent
        if (e == 2 || e == -2) rho.right_mul_gen(i);
    }
    return rho.is(Permutation::top(w.n + 1));
}

// P(eps) via Lemma-P product of acute/grave generators (independent route).
inline GroupElem P_by_product(const Word& w, const std::vector<int8_t>& eps) {
    GroupElem g = GroupElem::unit(w.n);
    for (int k = 0; k < w.length(); ++k) {
        GroupElem a = GroupElem::acute_gen(w.n, w.letters[k]);
        g = g * (eps[k] > 0 ? a : a.inverse());
    }
    return g;
}

// P(eps) = acute(sigma) q_l^{-1}; asserts agreement with the Lemma-P product.
inline GroupElem P_of(const Word& w, const GroupElem& acute_sigma, const Ancestry& a, bool crosscheck = false) {
    GroupElem p = acute_sigma.mul_mono(a.u());
    if (crosscheck && !(p == P_by_product(w, a.eps)))
        throw std::runtime_error("P(eps): the two computations disagree");
    return p;
}

// ---------------------------------------------------------------------------
// Enumeration.  DFS over positions; at an ascent of rho the step is forced
// (+2); at a descent the three branches are -2 and the two signs +-1.
// Branches are pruned when inv(eta) - inv(rho_k) > l - k.
// ---------------------------------------------------------------------------

namespace detail {

template <typename Visit>
void enum_rec(const Word& w, int k, PermState& rho, Mono q, std::vector<int8_t>& eps, int dim,
              int inv_eta, Visit&& visit) {
    int l = w.length();
    if (inv_eta - rho.inv > l - k) return;
    if (k == l) {
        if (rho.inv == inv_eta) visit(eps, q, dim);
        return;
    }
    int i = w.letters[k];
    if (rho.ascent(i)) {
        eps.push_back(2);
        rho.right_mul_gen(i);
        enum_rec(w, k + 1, rho, q_step(q, i, 1), eps, dim, inv_eta, visit);
        rho.right_mul_gen(i);
        eps.pop_back();
        return;
    }
    // descent: square (-2)
    eps.push_back(-2);
    rho.right_mul_gen(i);
    enum_rec(w, k + 1, rho, q_step(q, i, -1), eps, dim + 1, inv_eta, visit);
    rho.right_mul_gen(i);
    eps.pop_back();
    // disks (+-1)
    for (int s : {1, -1}) {
        eps.push_back(int8_t(s));
        enum_rec(w, k + 1, rho, q_step(q, i, s), eps, dim, inv_eta, visit);
        eps.pop_back();
    }
}

template <typename Visit>
void enum_pre_rec(const Word& w, int k, PermState& rho, std::vector<int8_t>& eps0, int dim,
                  int inv_eta, Visit&& visit) {
    int l = w.length();
    if (inv_eta - rho.inv > l - k) return;
    if (k == l) {
        if (rho.inv == inv_eta) visit(eps0, dim);
        return;
    }
    int i = w.letters[k];
    if (rho.ascent(i)) {
        eps0.push_back(2);
        rho.right_mul_gen(i);
        enum_pre_rec(w, k + 1, rho, eps0, dim, inv_eta, visit);
        rho.right_mul_gen(i);
        eps0.pop_back();
        return;
    }
    eps0.push_back(-2);
    rho.right_mul_gen(i);
    enum_pre_rec(w, k + 1, rho, eps0, dim + 1, inv_eta, visit);
    rho.right_mul_gen(i);
    eps0.pop_back();
    eps0.push_back(0);
    enum_pre_rec(w, k + 1, rho, eps0, dim, inv_eta, visit);
    eps0.pop_back();
}

}  // namespace detail

inline std::vector<Preancestry> preancestries(const Word& w) {
    if (!is_reduced(w)) throw std::invalid_argument("preancestries: word is not reduced");
    std::vector<Preancestry> out;
    PermState rho(Permutation::top(w.n + 1));
    int inv_eta = rho.inv;
    std::vector<int8_t> eps0;
    detail::enum_pre_rec(w, 0, rho, eps0, 0, inv_eta,
                         [&](const std::vector<int8_t>& e, int d) { out.push_back(Preancestry{e, d}); });
    return out;
}

inline std::vector<int> preancestry_census(const Word& w) {
    std::vector<int> counts;
    for (const auto& p : preancestries(w)) {
        if (int(counts.size()) <= p.dim) counts.resize(p.dim + 1, 0);
        counts[p.dim]++;
    }
    return counts;
}

// All ancestries of the word.  With threads > 1 the DFS is split on the
// branch choices of a short prefix.
inline std::vector<Ancestry> ancestries(const Word& w, int threads = 1) {
    if (!is_reduced(w)) throw std::invalid_argument("ancestries: word is not reduced");
    int inv_eta = (w.n + 1) * w.n / 2;
    std::vector<Ancestry> out;

    if (threads <= 1 || w.length() < 8) {
        PermState rho(Permutation::top(w.n + 1));
        std::vector<int8_t> eps;
        detail::enum_rec(w, 0, rho, Mono::unit(), eps, 0, inv_eta,
                         [&](const std::vector<int8_t>& e, Mono q, int d) { out.push_back(Ancestry{e, q, d}); });
        return out;
    }

    // collect prefix states at a fixed depth, then run tasks over them
    struct Task { std::vector<int8_t> eps; Permutation rho; Mono q; int dim; };
    int depth = std::min(6, w.length() / 2);
    std::vector<Task> tasks;
    {
        std::function<void(int, PermState&, Mono, std::vector<int8_t>&, int)> rec =
            [&](int k, PermState& rho, Mono q, std::vector<int8_t>& eps, int dim) {
                if (inv_eta - rho.inv > w.length() - k) return;
                if (k == depth) {
                    tasks.push_back(Task{eps, rho.perm(), q, dim});
                    return;
                }
                int i = w.letters[k];
                if (rho.ascent(i)) {
                    eps.push_back(2);
                    rho.right_mul_gen(i);
                    rec(k + 1, rho, q_step(q, i, 1), eps, dim);
                    rho.right_mul_gen(i);
                    eps.pop_back();
                    return;
                }
                eps.push_back(-2);
                rho.right_mul_gen(i);
                rec(k + 1, rho, q_step(q, i, -1), eps, dim + 1);
                rho.right_mul_gen(i);
                eps.pop_back();
                for (int s : {1, -1}) {
                    eps.push_back(int8_t(s));
                    rec(k + 1, rho, q_step(q, i, s), eps, dim);
                    eps.pop_back();
                }
            };
        PermState rho(Permutation::top(w.n + 1));
        std::vector<int8_t> eps;
        rec(0, rho, Mono::unit(), eps, 0);
    }

    std::mutex mtx;
    std::vector<std::thread> pool;
    size_t next = 0;
    auto worker = [&]() {
        for (;;) {
            size_t idx;
            {
                std::lock_guard<std::mutex> lk(mtx);
                if (next >= tasks.size()) return;
                idx = next++;
            }
            const Task& t = tasks[idx];
            std::vector<Ancestry> local;
            PermState rho(t.rho);
            std::vector<int8_t> eps = t.eps;
            detail::enum_rec(w, depth, rho, t.q, eps, t.dim, inv_eta,
                             [&](const std::vector<int8_t>& e, Mono q, int d) { local.push_back(Ancestry{e, q, d}); });
            std::lock_guard<std::mutex> lk(mtx);
            out.insert(out.end(), local.begin(), local.end());
        }
    };
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    std::sort(out.begin(), out.end(), [](const Ancestry& a, const Ancestry& b) { return a.eps < b.eps; });
    return out;
}

// dimension-2 preancestries come in two shapes (marked positions k1<k2<k3<k4,
// always -2 at k1 and +2 at k4): type I has eps0(k2) = +2, or -2 with rows
// |i_k1 - i_k2| > 1; type II has -2 at k2 on an adjacent row.
enum class Dim2Type { I, II };
inline Dim2Type dim2_type(const Word& w, const std::vector<int8_t>& eps0) {
    std::vector<int> marked;
    for (int k = 0; k < int(eps0.size()); ++k)
        if (eps0[k] == 2 || eps0[k] == -2) marked.push_back(k);
    if (marked.size() != 4) throw std::invalid_argument("dim2_type: not a dimension-2 preancestry");
    if (eps0[marked[1]] == 2) return Dim2Type::I;
    return std::abs(w.letters[marked[0]] - w.letters[marked[1]]) > 1 ? Dim2Type::I : Dim2Type::II;
}

inline std::vector<int8_t> marks_of(const std::vector<int8_t>& eps) {
    std::vector<int8_t> m(eps.size());
    for (size_t k = 0; k < eps.size(); ++k) m[k] = (eps[k] == 2 || eps[k] == -2) ? eps[k] : 0;
    return m;
}

// ---------------------------------------------------------------------------
// Count tables N_{eps0}(z), keyed by the Quat translation u = q_l^{-1}
// (so z = acute(sigma) u).
// ---------------------------------------------------------------------------
struct CountTable {
    Word word;
    std::vector<Preancestry> pre;                     // index -> preancestry
    std::vector<std::vector<long long>> counts;      // [pre][u.code()]
    std::vector<long long> vertex_counts;            // empty-preancestry row, by u.code()

    long long N(int pre_idx, const Mono& u) const { return counts[pre_idx][u.code()]; }
};

inline CountTable count_table(const Word& w, const std::vector<Ancestry>& all) {
    CountTable t;
    t.word = w;
    t.pre = preancestries(w);
    std::map<std::vector<int8_t>, int> pre_index;
    for (size_t i = 0; i < t.pre.size(); ++i) pre_index[t.pre[i].eps0] = int(i);
    size_t ncodes = size_t(1) << (w.n + 1);
    t.counts.assign(t.pre.size(), std::vector<long long>(ncodes, 0));
    for (const auto& a : all) {
        auto it = pre_index.find(marks_of(a.eps));
        if (it == pre_index.end()) throw std::runtime_error("count_table: ancestry without preancestry");
        t.counts[it->second][a.u().code()]++;
    }
    for (size_t i = 0; i < t.pre.size(); ++i)
        if (t.pre[i].dim == 0) t.vertex_counts = t.counts[i];
    return t;
}

// partition X_{eps0}: merge the wire pair of every unmarked crossing
inline Partition X_of_preancestry(const Word& w, const std::vector<int8_t>& eps0) {
    auto cw = crossing_wires(w);
    std::vector<int> parent(w.n + 1);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (int k = 0; k < w.length(); ++k) {
        if (eps0[k] != 0) continue;
        int a = find(cw[k].first - 1), b = find(cw[k].second - 1);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    for (int i = 0; i <= w.n; ++i) find(i);
    return Partition::from_union_find(w.n + 1, parent);
}

inline QuatSubgroup H_preancestry(const Word& w, const std::vector<int8_t>& eps0) {
    return H_from_partition(w.n, X_of_preancestry(w, eps0));
}

// Lemma transpositions: the right-to-left product of the unmarked crossings'
// transpositions equals sigma, and 2d <= l + c - n - 1.
inline bool unmarked_factorization_check(const Word& w, const Preancestry& p) {
    auto cw = crossing_wires(w);
    Permutation sigma = w.product();
    Permutation prod = Permutation::identity(w.n + 1);
    for (int k = 0; k < w.length(); ++k) {
        if (p.eps0[k] != 0) continue;
        // left-multiply the running product by the transposition
        Permutation t = Permutation::identity(w.n + 1);
        std::swap(t.img[cw[k].first - 1], t.img[cw[k].second - 1]);
        prod = t * prod;
    }
    int c = num_cycles(sigma);
    return prod == sigma && 2 * p.dim <= w.length() + c - w.n - 1;
}

// ---------------------------------------------------------------------------
// Theorem-2 verification, in exact arithmetic.
// ---------------------------------------------------------------------------
struct Theorem2Report {
    bool ok = true;
    std::string first_violation;
    int preancestries_checked = 0;
    int identities_checked = 0;
};

inline Theorem2Report verify_theorem2(const Word& w, const std::vector<Ancestry>& all) {
    Theorem2Report rep;
    Permutation sigma = w.product();
    GroupElem asig = acute(w);
    GroupElem gsig = asig.inverse();
    CountTable tab = count_table(w, all);
    int l = w.length();
    size_t ncodes = size_t(1) << (w.n + 1);

    // z0 = acute(sigma) u0 with Re > 0
    Mono u0;
    bool found = false;
    for (uint32_t c = 0; c < ncodes && !found; ++c) {
        Mono u = Mono::from_code(c);
        if (asig.mul_mono(u).re().sign() > 0) { u0 = u; found = true; }
    }
    if (!found) { rep.ok = false; rep.first_violation = "no z0 with Re > 0"; return rep; }
    Mono u0inv = u0.inverse();

    // left translations q with z = q z0, i.e. q = acute(sigma) (u u0^-1) grave(sigma)
    std::vector<Mono> left_q(ncodes);
    for (uint32_t c = 0; c < ncodes; ++c) {
        Mono u = Mono::from_code(c);
        CliffElem conj = asig.z.mul_mono(u * u0inv) * gsig.z;
        left_q[c] = conj.as_mono();
    }

    for (size_t pi = 0; pi < tab.pre.size(); ++pi) {
        const Preancestry& p = tab.pre[pi];
        QuatSubgroup H = H_preancestry(w, p.eps0);
        int d = p.dim;
        Scalar lhs_scale = Scalar::pow2_half(l - 2 * d);
        long long plus_val = 0;
        {
            int e = (l - 2 * d + 1) - int(std::__lg(H.order()));
            if ((size_t(1) << std::__lg(H.order())) != H.order()) throw std::runtime_error("|H| not a power of 2");
            if (e < 0) throw std::runtime_error("theorem2: 2^{l-2d+1} < |H|");
            plus_val = 1LL << e;
        }
        for (uint32_t c = 0; c < ncodes; ++c) {
            Mono u = Mono::from_code(c);
            long long Nz = tab.counts[pi][c];
            long long Nmz = tab.counts[pi][(-u).code()];
            Scalar re_z = asig.mul_mono(u).re();
            // identity 1: N(z) - N(-z) = 2^{(l-2d)/2} Re(z)
            if (Scalar::integer(Nz - Nmz) != lhs_scale * re_z) {
                rep.ok = false;
                rep.first_violation = "preminus fails at preancestry " + p.str() + ", u=" + std::to_string(c);
                return rep;
            }
            // identity 2: N(z) + N(-z) = 2^{l-2d+1}/|H| if q in H else 0
            long long expect = H.contains(left_q[c]) ? plus_val : 0;
            if (Nz + Nmz != expect) {
                rep.ok = false;
                rep.first_violation = "preplus fails at preancestry " + p.str() + ", u=" + std::to_string(c);
                return rep;
            }
            rep.identities_checked += 2;
        }
        rep.preancestries_checked++;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Thin ancestries.
// ---------------------------------------------------------------------------
inline bool is_thin(const Word& w, const std::vector<int8_t>& eps) {
    std::vector<int8_t> row_sign(w.n + 1, 0);
    for (int k = 0; k < w.length(); ++k) {
        if (eps[k] != 1 && eps[k] != -1) return false;
        int i = w.letters[k];
        if (row_sign[i] == 0) row_sign[i] = eps[k];
        else if (row_sign[i] != eps[k]) return false;
    }
    return true;
}

inline std::vector<Ancestry> thin_ancestries(const Word& w, const std::vector<Ancestry>& all) {
    Permutation sigma = w.product();
    if (!blocks(sigma).empty())
        throw std::invalid_argument("thin_ancestries: sigma blocks; apply decompose_blocks first");
    std::vector<Ancestry> out;
    for (const auto& a : all)
        if (a.dim == 0 && is_thin(w, a.eps)) out.push_back(a);
    return out;
}

// N_thin(z) on the E-orbit of acute(sigma), 0 elsewhere.  Each E in E_n gives
// a distinct thin ancestry with P = acute(sigma)^E, so the count over an
// orbit element is the isotropy order |E_{acute sigma}|.  (The orbit size is
// 2^n / |E_{acute sigma}|; this matches every worked example.)
inline long long N_thin_predicted(const Word& w, const GroupElem& z) {
    Permutation sigma = w.product();
    if (!blocks(sigma).empty())
        throw std::invalid_argument("N_thin: sigma blocks; apply decompose_blocks first");
    GroupElem asig = acute(sigma);
    long long iso = (long long)isotropy_E(asig.z).size();
    for (const auto& orb : orbit_E(asig.z))
        if (orb == z.z) return iso;
    return 0;
}

}  // namespace blc
