#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace blc {

// Permutations of {1,...,m} with the composition convention i^(st) = (i^s)^t.
// One-line arrays are 0-indexed internally; the 1-indexed convention of the
// docs applies at the string boundary only ("43512").
struct Permutation {
    std::vector<uint8_t> img;  // img[i] = i^sigma, 0-based

    Permutation() = default;
    explicit Permutation(std::vector<uint8_t> v) : img(std::move(v)) {}

    static Permutation identity(int m) {
        std::vector<uint8_t> v(m);
        std::iota(v.begin(), v.end(), 0);
        return Permutation(std::move(v));
    }
    // top permutation eta: i -> m+1-i (1-based)
    static Permutation top(int m) {
        std::vector<uint8_t> v(m);
        for (int i = 0; i < m; ++i) v[i] = uint8_t(m - 1 - i);
        return Permutation(std::move(v));
    }
    static Permutation from_oneline(const std::string& s) {
        std::vector<uint8_t> v;
        for (char ch : s) {
            if (ch == '[' || ch == ']' || ch == ' ' || ch == ',') continue;
            if (ch < '1' || ch > '9') throw std::invalid_argument("bad one-line string: " + s);
            v.push_back(uint8_t(ch - '1'));
        }
        Permutation p(std::move(v));
        if (!p.valid()) throw std::invalid_argument("not a permutation: " + s);
        return p;
    }

    int size() const { return int(img.size()); }  // m = n+1
    int n() const { return size() - 1; }
    int apply(int i) const { return img[i]; }
    bool valid() const {
        std::vector<char> seen(img.size(), 0);
        for (uint8_t v : img) {
            if (v >= img.size() || seen[v]) return false;
            seen[v] = 1;
        }
        return true;
    }
    bool is_identity() const {
        for (int i = 0; i < size(); ++i)
            if (img[i] != i) return false;
        return true;
    }

    friend bool operator==(const Permutation& x, const Permutation& y) { return x.img == y.img; }
    friend bool operator!=(const Permutation& x, const Permutation& y) { return !(x == y); }
    friend bool operator<(const Permutation& x, const Permutation& y) { return x.img < y.img; }

    // left-to-right composition: i^(x*y) = (i^x)^y
    friend Permutation operator*(const Permutation& x, const Permutation& y) {
        std::vector<uint8_t> v(x.img.size());
        for (size_t i = 0; i < v.size(); ++i) v[i] = y.img[x.img[i]];
        return Permutation(std::move(v));
    }
    Permutation inverse() const {
        std::vector<uint8_t> v(img.size());
        for (size_t i = 0; i < img.size(); ++i) v[img[i]] = uint8_t(i);
        return Permutation(std::move(v));
    }

    // sigma * a_i for the generator a_i = (i,i+1), i in 1..n: swaps values i,i+1
    Permutation right_mul_gen(int i) const {
        Permutation r = *this;
        for (auto& v : r.img) {
            if (v == i - 1) v = uint8_t(i);
            else if (v == i) v = uint8_t(i - 1);
        }
        return r;
    }
    // a_i * sigma: swaps positions i,i+1
    Permutation left_mul_gen(int i) const {
        Permutation r = *this;
        std::swap(r.img[i - 1], r.img[i]);
        return r;
    }
    // sigma * a_i < sigma ?
    bool right_descent(int i) const {
        int p0 = -1, p1 = -1;
        for (int k = 0; k < size(); ++k) {
            if (img[k] == i - 1) p0 = k;
            else if (img[k] == i) p1 = k;
        }
        return p0 > p1;
    }
    // a_i * sigma < sigma ?
    bool left_descent(int i) const { return img[i - 1] > img[i]; }

    std::string oneline() const {
        std::string s;
        for (uint8_t v : img) s += char('1' + v);
        return s;
    }

    // rank in [0, m!) via the Lehmer code; m <= 12
    uint32_t rank() const {
        uint32_t r = 0;
        int m = size();
        for (int i = 0; i < m; ++i) {
            int c = 0;
            for (int j = i + 1; j < m; ++j)
                if (img[j] < img[i]) ++c;
            r = r * uint32_t(m - i) + uint32_t(c);
        }
        return r;
    }
};

// A word in the Coxeter generators a_1..a_n; letters are 1-based indices.
struct Word {
    std::vector<int> letters;
    int n = 0;  // generators a_1..a_n, acting on n+1 strands

    Word() = default;
    Word(std::vector<int> ls, int n_) : letters(std::move(ls)), n(n_) {
        for (int l : letters)
            if (l < 1 || l > n) throw std::invalid_argument("word letter out of range");
    }
    // "a2 a1 a3 a2"
    static Word parse(const std::string& s, int n) {
        std::vector<int> ls;
        size_t i = 0;
        while (i < s.size()) {
            if (s[i] == ' ' || s[i] == ',') { ++i; continue; }
            if (s[i] != 'a' || i + 1 >= s.size()) throw std::invalid_argument("bad word string: " + s);
            size_t j = i + 1;
            int v = 0;
            while (j < s.size() && s[j] >= '0' && s[j] <= '9') v = v * 10 + (s[j++] - '0');
            if (v == 0) throw std::invalid_argument("bad word string: " + s);
            ls.push_back(v);
            i = j;
        }
        return Word(std::move(ls), n);
    }
    int length() const { return int(letters.size()); }
    std::string str() const {
        std::string s;
        for (size_t k = 0; k < letters.size(); ++k) {
            if (k) s += ' ';
            s += "a" + std::to_string(letters[k]);
        }
        return s;
    }
    Permutation product() const {
        Permutation p = Permutation::identity(n + 1);
        for (int l : letters) p = p.right_mul_gen(l);
        return p;
    }
};

inline int inv_count(const Permutation& s) {
    int c = 0, m = s.size();
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (s.img[i] > s.img[j]) ++c;
    return c;
}

// Inv(sigma) as 1-based pairs (i,j), i<j, i^sigma > j^sigma, in lexicographic order.
inline std::vector<std::pair<int, int>> inversions(const Permutation& s) {
    std::vector<std::pair<int, int>> out;
    int m = s.size();
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (s.img[i] > s.img[j]) out.emplace_back(i + 1, j + 1);
    return out;
}

inline bool is_reduced(const Word& w) {
    return inv_count(w.product()) == w.length();
}

// For a reduced word, the inversion whose wires cross at each position, in
// word order.  Position k with letter a_i crosses the two wires currently at
// rows i, i+1; Equation-style, removing letter k and left-multiplying by the
// returned transposition reproduces sigma.
inline std::vector<std::pair<int, int>> crossing_wires(const Word& w) {
    if (!is_reduced(w)) throw std::invalid_argument("crossing_wires: word is not reduced");
    Permutation p = Permutation::identity(w.n + 1);  // prefix product
    Permutation q = p;                               // its inverse
    std::vector<std::pair<int, int>> out;
    out.reserve(w.letters.size());
    for (int l : w.letters) {
        int u = q.img[l - 1] + 1, v = q.img[l] + 1;  // wires at rows l, l+1
        out.emplace_back(std::min(u, v), std::max(u, v));
        p = p.right_mul_gen(l);
        q = p.inverse();
    }
    return out;
}

// All reduced words, by peeling right descents.
inline void reduced_words_rec(const Permutation& s, Word& acc, std::vector<Word>& out) {
    if (s.is_identity()) {
        Word w = acc;
        std::reverse(w.letters.begin(), w.letters.end());
        out.push_back(std::move(w));
        return;
    }
    for (int i = 1; i <= s.n(); ++i) {
        if (s.right_descent(i)) {
            acc.letters.push_back(i);
            reduced_words_rec(s.right_mul_gen(i), acc, out);
            acc.letters.pop_back();
        }
    }
}
inline std::vector<Word> reduced_words(const Permutation& s) {
    std::vector<Word> out;
    Word acc({}, s.n());
    acc.n = s.n();
    reduced_words_rec(s, acc, out);
    return out;
}

// Lexicographically smallest reduced word (greedy smallest left descent).
// For the top permutation this is the staircase a1 a2a1 a3a2a1 ... an...a1.
inline Word canonical_word(const Permutation& s) {
    Word w({}, s.n());
    Permutation cur = s;
    while (!cur.is_identity()) {
        for (int i = 1; i <= s.n(); ++i) {
            if (cur.left_descent(i)) {
                w.letters.push_back(i);
                cur = cur.left_mul_gen(i);
                break;
            }
        }
    }
    return w;
}

// Strong Bruhat order via rank-matrix dominance:
// s <= t  iff  for all i,j: #{a<=i : a^s <= j} >= #{a<=i : a^t <= j}.
inline bool bruhat_leq(const Permutation& s, const Permutation& t) {
    if (s.size() != t.size()) throw std::invalid_argument("bruhat_leq: size mismatch");
    int m = s.size();
    for (int i = 0; i < m; ++i) {
        std::vector<int> rs(m + 1, 0), rt(m + 1, 0);
        for (int a = 0; a <= i; ++a) { rs[s.img[a]]++; rt[t.img[a]]++; }
        int accs = 0, acct = 0;
        for (int j = 0; j < m; ++j) {
            accs += rs[j];
            acct += rt[j];
            if (accs < acct) return false;
        }
    }
    return true;
}

// Block(sigma) = { j in 1..n : i <= j implies i^sigma <= j }.
inline std::vector<int> blocks(const Permutation& s) {
    std::vector<int> out;
    int mx = -1;
    for (int j = 0; j + 1 < s.size(); ++j) {
        mx = std::max<int>(mx, s.img[j]);
        if (mx <= j) out.push_back(j + 1);
    }
    return out;
}

// Cycle partition X_sigma, blocks sorted by least element (1-based members).
inline std::vector<std::vector<int>> cycles(const Permutation& s) {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(s.size(), 0);
    for (int i = 0; i < s.size(); ++i) {
        if (seen[i]) continue;
        std::vector<int> cyc;
        int j = i;
        while (!seen[j]) {
            seen[j] = 1;
            cyc.push_back(j + 1);
            j = s.img[j];
        }
        out.push_back(std::move(cyc));
    }
    return out;
}
inline int num_cycles(const Permutation& s) { return int(cycles(s).size()); }

inline Permutation oplus(const Permutation& a, const Permutation& b) {
    std::vector<uint8_t> v;
    v.reserve(a.size() + b.size());
    for (uint8_t x : a.img) v.push_back(x);
    for (uint8_t x : b.img) v.push_back(uint8_t(x + a.size()));
    return Permutation(std::move(v));
}

// Maximal oplus-decomposition into block-free factors.
inline std::vector<Permutation> decompose_blocks(const Permutation& s) {
    std::vector<Permutation> out;
    int start = 0, mx = -1;
    for (int j = 0; j < s.size(); ++j) {
        mx = std::max<int>(mx, s.img[j]);
        if (mx == j) {
            std::vector<uint8_t> v(s.img.begin() + start, s.img.begin() + j + 1);
            for (auto& x : v) x = uint8_t(x - start);
            out.push_back(Permutation(std::move(v)));
            start = j + 1;
        }
    }
    return out;
}

// Mutable permutation state for enumeration loops: O(1) generator moves with
// maintained inverse and inversion count.
struct PermState {
    std::vector<uint8_t> img;  // i -> i^sigma
    std::vector<uint8_t> pos;  // value -> position (the inverse)
    int inv = 0;

    explicit PermState(const Permutation& p) : img(p.img), pos(p.inverse().img), inv(inv_count(p)) {}

    int size() const { return int(img.size()); }
    // sigma*a_i is an ascent iff value i occurs before value i+1 (0-based: i-1 before i)
    bool ascent(int i) const { return pos[i - 1] < pos[i]; }
    void right_mul_gen(int i) {
        int p0 = pos[i - 1], p1 = pos[i];
        inv += (p0 < p1) ? 1 : -1;
        std::swap(img[p0], img[p1]);
        std::swap(pos[i - 1], pos[i]);
    }
    Permutation perm() const { return Permutation(img); }
    bool is(const Permutation& p) const { return img == p.img; }
};

}  // namespace blc
