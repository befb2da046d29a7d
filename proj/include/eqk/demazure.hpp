#ifndef EQK_DEMAZURE_HPP
#define EQK_DEMAZURE_HPP

// Root data of finite type, their Weyl groups, and Demazure characters.
//
// Weights are written in the basis of fundamental weights, so a weight m is
// dominant iff every coordinate is >= 0, rho = (1, ..., 1), and the pairing
// <m, alpha_i^vee> is the i-th coordinate. The Cartan matrix is
// A_ij = <alpha_i^vee, alpha_j>; the simple root alpha_j is column j of A.
//
// Sign convention. Demazure characters are computed in the isobaric form
//
//     char(w, lambda) = e^{-rho} D_{i1} ... D_{ir} e^{lambda + rho},
//     D_i(u) = (u - s_i u) / (1 - e^{-alpha_i}),
//
// for a reduced word w = s_{i1} ... s_{ir}. With the opposite sign on alpha
// and rho, the operators annihilate e^{lambda + rho} already for A1 and
// lambda = omega. This choice is pinned by the A1 value e^omega + e^{-omega}
// and by agreement with the Weyl character formula at the longest element.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <eqk/error.hpp>
#include <eqk/laurent.hpp>
#include <eqk/linalg.hpp>
#include <eqk/weight.hpp>

namespace eqk
{

// Letters are 1-based simple reflection indices.
using weyl_word = std::vector<std::size_t>;

inline constexpr std::size_t max_weyl_rank = 4;

namespace detail
{

inline linalg::int_matrix cartan_of_type(char family, std::size_t n)
{
    linalg::int_matrix a(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        a[i][i] = 2;
    }
    auto link = [&](std::size_t i, std::size_t j) {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    switch (family) {
        case 'A':
            for (std::size_t i = 0; i + 1 < n; ++i) {
                link(i, i + 1);
            }
            break;
        case 'B':
        case 'C':
            for (std::size_t i = 0; i + 1 < n; ++i) {
                link(i, i + 1);
            }
            // B_n: alpha_n short, so <alpha_n^vee, alpha_{n-1}> = -2. C_n is the transpose.
            if (family == 'B') {
                a[n - 1][n - 2] = -2;
            } else {
                a[n - 2][n - 1] = -2;
            }
            break;
        case 'D':
            for (std::size_t i = 0; i + 2 < n; ++i) {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
            break;
        case 'G':
            a[0][1] = -1;
            a[1][0] = -3;
            break;
        case 'F':
            link(0, 1);
            link(2, 3);
            a[1][2] = -2;
            a[2][1] = -1;
            break;
        default:
            throw error(errc::invalid_cartan, std::string("unknown family ") + family);
    }
    return a;
}

// Connected Cartan matrices of finite type and rank <= 4.
inline const std::vector<linalg::int_matrix> &finite_type_table()
{
    static const std::vector<linalg::int_matrix> table = [] {
        std::vector<linalg::int_matrix> t;
        for (std::size_t n = 1; n <= 4; ++n) {
            t.push_back(cartan_of_type('A', n));
        }
        for (std::size_t n = 2; n <= 4; ++n) {
            t.push_back(cartan_of_type('B', n));
            t.push_back(cartan_of_type('C', n));
        }
        t.push_back(cartan_of_type('D', 4));
        t.push_back(cartan_of_type('G', 2));
        t.push_back(cartan_of_type('F', 4));
        return t;
    }();
    return table;
}

inline bool matches_up_to_relabeling(const linalg::int_matrix &a, const linalg::int_matrix &b)
{
    const auto n = a.size();
    if (b.size() != n) {
        return false;
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i) {
            for (std::size_t j = 0; j < n && ok; ++j) {
                ok = a[perm[i]][perm[j]] == b[i][j];
            }
        }
        if (ok) {
            return true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

inline void validate_cartan(const linalg::int_matrix &a)
{
    const auto n = a.size();
    if (n == 0) {
        throw error(errc::invalid_cartan, "empty Cartan matrix");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) {
            throw error(errc::invalid_cartan, "Cartan matrix is not square");
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j ? a[i][j] != 2 : (a[i][j] > 0 || ((a[i][j] == 0) != (a[j][i] == 0)))) {
                throw error(errc::invalid_cartan, "entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }
    if (n > max_weyl_rank) {
        return;
    }
    // Split into connected components of the Dynkin diagram and look each up.
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) {
            continue;
        }
        std::vector<std::size_t> stack{s};
        comp[s] = ncomp;
        while (!stack.empty()) {
            auto v = stack.back();
            stack.pop_back();
            for (std::size_t w = 0; w < n; ++w) {
                if (a[v][w] != 0 && comp[w] < 0) {
                    comp[w] = ncomp;
                    stack.push_back(w);
                }
            }
        }
        ++ncomp;
    }
    for (int c = 0; c < ncomp; ++c) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i) {
            if (comp[i] == c) {
                idx.push_back(i);
            }
        }
        linalg::int_matrix sub(idx.size(), std::vector<std::int64_t>(idx.size()));
        for (std::size_t i = 0; i < idx.size(); ++i) {
            for (std::size_t j = 0; j < idx.size(); ++j) {
                sub[i][j] = a[idx[i]][idx[j]];
            }
        }
        const auto &table = finite_type_table();
        if (std::none_of(table.begin(), table.end(),
                         [&](const linalg::int_matrix &t) { return matches_up_to_relabeling(sub, t); })) {
            throw error(errc::invalid_cartan, "component is not of finite type");
        }
    }
}

} // namespace detail

class root_datum
{
public:
    explicit root_datum(linalg::int_matrix cartan) : m_cartan(std::move(cartan))
    {
        detail::validate_cartan(m_cartan);
        const auto n = m_cartan.size();
        for (std::size_t j = 0; j < n; ++j) {
            weight alpha(n);
            for (std::size_t i = 0; i < n; ++i) {
                alpha[i] = m_cartan[i][j];
            }
            m_simple_roots.push_back(std::move(alpha));
        }
        m_rho = weight(n);
        for (std::size_t i = 0; i < n; ++i) {
            m_rho[i] = 1;
        }
    }

    // "A2", "B3", "C4", "D4", "G2", ...
    static root_datum of_type(const std::string &name)
    {
        if (name.size() < 2) {
            throw error(errc::invalid_cartan, "bad type '" + name + "'");
        }
        const char family = name[0];
        std::size_t n = 0;
        try {
            std::size_t used = 0;
            n = std::stoul(name.substr(1), &used);
            if (used != name.size() - 1) {
                throw std::invalid_argument(name);
            }
        } catch (const std::exception &) {
            throw error(errc::invalid_cartan, "bad type '" + name + "'");
        }
        const bool ok = (family == 'A' && n >= 1) || (family == 'B' && n >= 2) || (family == 'C' && n >= 2)
                        || (family == 'D' && n >= 4) || (family == 'G' && n == 2) || (family == 'F' && n == 4);
        if (!ok) {
            throw error(errc::invalid_cartan, "unsupported type '" + name + "'");
        }
        return root_datum(detail::cartan_of_type(family, n));
    }

    [[nodiscard]] std::size_t rank() const noexcept
    {
        return m_cartan.size();
    }
    [[nodiscard]] const linalg::int_matrix &cartan() const noexcept
    {
        return m_cartan;
    }
    [[nodiscard]] const std::vector<weight> &simple_roots() const noexcept
    {
        return m_simple_roots;
    }
    [[nodiscard]] const weight &rho() const noexcept
    {
        return m_rho;
    }

    [[nodiscard]] root_datum dual() const
    {
        linalg::int_matrix t(rank(), std::vector<std::int64_t>(rank()));
        for (std::size_t i = 0; i < rank(); ++i) {
            for (std::size_t j = 0; j < rank(); ++j) {
                t[i][j] = m_cartan[j][i];
            }
        }
        return root_datum(std::move(t));
    }

private:
    linalg::int_matrix m_cartan;
    std::vector<weight> m_simple_roots;
    weight m_rho;
};

namespace detail
{

inline void check_letter(const root_datum &rd, std::size_t i)
{
    if (i < 1 || i > rd.rank()) {
        throw error(errc::bad_index, "simple reflection " + std::to_string(i) + " in rank " + std::to_string(rd.rank()));
    }
}

inline void check_rank(const root_datum &rd, const weight &m)
{
    if (m.rank() != rd.rank()) {
        throw error(errc::rank_mismatch, "weight " + m.to_string() + " for a rank " + std::to_string(rd.rank())
                                             + " root datum");
    }
}

inline void check_weyl_rank(const root_datum &rd)
{
    if (rd.rank() > max_weyl_rank) {
        throw error(errc::rank_too_large, "Weyl group enumeration supports rank <= 4");
    }
}

} // namespace detail

// s_i(m) = m - <m, alpha_i^vee> alpha_i.
inline weight reflect(const root_datum &rd, std::size_t i, const weight &m)
{
    detail::check_letter(rd, i);
    detail::check_rank(rd, m);
    return m - m[i - 1] * rd.simple_roots()[i - 1];
}

// w(m) for w = s_{i1} ... s_{ir}: the rightmost letter acts first.
inline weight apply_word(const root_datum &rd, const weyl_word &w, weight m)
{
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        m = reflect(rd, *it, m);
    }
    return m;
}

inline laurent reflect(const root_datum &rd, std::size_t i, const laurent &u)
{
    laurent r(u.rank());
    for (const auto &[m, c] : u.terms()) {
        r.add_term(reflect(rd, i, m), c);
    }
    return r;
}

inline bool is_reduced(const root_datum &rd, const weyl_word &w)
{
    weight mu = rd.rho();
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        detail::check_letter(rd, *it);
        // Left multiplication by s_i raises the length iff <v rho, alpha_i^vee> > 0.
        if (mu[*it - 1] <= 0) {
            return false;
        }
        mu = reflect(rd, *it, mu);
    }
    return true;
}

inline bool is_dominant(const weight &m)
{
    return std::all_of(m.begin(), m.end(), [](auto v) { return v >= 0; });
}

// D_i(u) = (u - s_i u) / (1 - e^{-alpha_i}); the division is always exact.
inline laurent demazure_op(const root_datum &rd, std::size_t i, const laurent &u)
{
    detail::check_letter(rd, i);
    const auto n = rd.rank();
    const laurent den = laurent::constant(n, 1) - laurent::monomial(-rd.simple_roots()[i - 1]);
    return exact_quotient(u - reflect(rd, i, u), den);
}

inline laurent demazure_character(const root_datum &rd, const weyl_word &w, const weight &lambda)
{
    detail::check_rank(rd, lambda);
    if (!is_dominant(lambda)) {
        throw error(errc::not_dominant, lambda.to_string());
    }
    for (auto i : w) {
        detail::check_letter(rd, i);
    }
    if (!is_reduced(rd, w)) {
        throw error(errc::not_reduced_word, "word is not reduced");
    }
    laurent u = laurent::monomial(lambda + rd.rho());
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        u = demazure_op(rd, *it, u);
    }
    return u.shifted(-rd.rho());
}

struct weyl_element {
    weyl_word word;   // one reduced word
    weight rho_image; // w(rho); determines w since rho is regular
};

// All elements of W, by breadth-first search on the (free) orbit of rho, so
// elements come out in order of length and each word is reduced.
inline std::vector<weyl_element> weyl_group(const root_datum &rd)
{
    detail::check_weyl_rank(rd);
    std::vector<weyl_element> out{{{}, rd.rho()}};
    std::set<weight> seen{rd.rho()};
    for (std::size_t head = 0; head < out.size(); ++head) {
        for (std::size_t i = 1; i <= rd.rank(); ++i) {
            weight next = reflect(rd, i, out[head].rho_image);
            if (seen.insert(next).second) {
                weyl_word word{i};
                word.insert(word.end(), out[head].word.begin(), out[head].word.end());
                out.push_back({std::move(word), std::move(next)});
            }
        }
    }
    return out;
}

// The element of maximal length.
inline weyl_element longest_element(const root_datum &rd)
{
    return weyl_group(rd).back();
}

// Every reduced word of the element represented by w (which need not itself be
// reduced), in lexicographic order. A reduced word for v starts with i exactly
// when s_i is a left descent of v, i.e. <v rho, alpha_i^vee> < 0.
inline std::vector<weyl_word> reduced_words(const root_datum &rd, const weyl_word &w)
{
    detail::check_weyl_rank(rd);
    for (auto i : w) {
        detail::check_letter(rd, i);
    }
    std::map<weight, std::vector<weyl_word>> memo;
    auto rec = [&](auto &&self, const weight &mu) -> const std::vector<weyl_word> & {
        if (auto it = memo.find(mu); it != memo.end()) {
            return it->second;
        }
        std::vector<weyl_word> words;
        if (mu == rd.rho()) {
            words.push_back({});
        } else {
            for (std::size_t i = 1; i <= rd.rank(); ++i) {
                if (mu[i - 1] < 0) {
                    for (const auto &tail : self(self, reflect(rd, i, mu))) {
                        weyl_word word{i};
                        word.insert(word.end(), tail.begin(), tail.end());
                        words.push_back(std::move(word));
                    }
                }
            }
        }
        return memo.emplace(mu, std::move(words)).first->second;
    };
    return rec(rec, apply_word(rd, w, rd.rho()));
}

// sum_w (-1)^{l(w)} e^{w(mu)}
inline laurent alternant(const root_datum &rd, const std::vector<weyl_element> &group, const weight &mu)
{
    laurent r(rd.rank());
    for (const auto &g : group) {
        r.add_term(apply_word(rd, g.word, mu), g.word.size() % 2 == 0 ? 1 : -1);
    }
    return r;
}

// Irreducible character of highest weight lambda as a quotient of alternants.
inline laurent weyl_character_oracle(const root_datum &rd, const weight &lambda)
{
    detail::check_weyl_rank(rd);
    detail::check_rank(rd, lambda);
    if (!is_dominant(lambda)) {
        throw error(errc::not_dominant, lambda.to_string());
    }
    const auto group = weyl_group(rd);
    return exact_quotient(alternant(rd, group, lambda + rd.rho()), alternant(rd, group, rd.rho()));
}

// Positive roots in simple-root coordinates, closed under the simple
// reflections s_i(beta) = beta - <beta, alpha_i^vee> alpha_i.
inline std::vector<weight> positive_roots(const root_datum &rd)
{
    detail::check_weyl_rank(rd);
    const auto n = rd.rank();
    const auto &a = rd.cartan();
    std::set<weight> roots;
    std::deque<weight> queue;
    for (std::size_t i = 0; i < n; ++i) {
        queue.push_back(weight::unit(n, i));
        roots.insert(queue.back());
    }
    while (!queue.empty()) {
        const weight beta = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < n; ++i) {
            std::int64_t p = 0;
            for (std::size_t j = 0; j < n; ++j) {
                p += a[i][j] * beta[j];
            }
            weight next = beta;
            next[i] -= p;
            if (is_dominant(next) && !next.is_zero() && roots.insert(next).second) {
                queue.push_back(std::move(next));
            }
        }
    }
    return {roots.begin(), roots.end()};
}

// prod <lambda + rho, gamma> / prod <rho, gamma> over positive coroots gamma.
inline integer weyl_dim_oracle(const root_datum &rd, const weight &lambda)
{
    detail::check_weyl_rank(rd);
    detail::check_rank(rd, lambda);
    if (!is_dominant(lambda)) {
        throw error(errc::not_dominant, lambda.to_string());
    }
    integer num = 1, den = 1;
    const weight shifted = lambda + rd.rho();
    for (const auto &gamma : positive_roots(rd.dual())) {
        num *= pair(shifted, gamma);
        den *= pair(rd.rho(), gamma);
    }
    integer q, r;
    divide_qr(num, den, q, r);
    if (r != 0) {
        throw error(errc::not_divisible, "Weyl dimension formula is not integral");
    }
    return q;
}

} // namespace eqk

#endif
