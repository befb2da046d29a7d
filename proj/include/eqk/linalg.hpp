#ifndef EQK_LINALG_HPP
#define EQK_LINALG_HPP

// Small exact linear algebra over Z and Q. All matrices here are desk-sized
// (rank of the torus, or a handful of Cech cochains), so dense row-major
// vectors are used throughout.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <eqk/error.hpp>
#include <eqk/weight.hpp>

namespace eqk::linalg
{

using int_matrix = std::vector<std::vector<std::int64_t>>;
using rat_matrix = std::vector<std::vector<rational>>;

// Matrix whose rows are the given lattice vectors.
inline int_matrix rows_of(std::span<const weight> vs)
{
    int_matrix m;
    m.reserve(vs.size());
    for (const auto &v : vs) {
        m.emplace_back(v.begin(), v.end());
    }
    return m;
}

// Determinant of a square integer matrix via fraction-free (Bareiss) elimination.
inline integer det(const int_matrix &a)
{
    const auto n = a.size();
    if (n == 0) {
        return 1;
    }
    std::vector<std::vector<integer>> m(n, std::vector<integer>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) {
            throw error(errc::dimension_mismatch, "determinant of a non-square matrix");
        }
        for (std::size_t j = 0; j < n; ++j) {
            m[i][j] = a[i][j];
        }
    }
    integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) {
                ++p;
            }
            if (p == n) {
                return 0;
            }
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

// Rank over Q of a rectangular matrix with small integer entries. Bareiss
// keeps every intermediate entry a minor of the input, and the multiplications
// are overflow-checked, so the answer is exact or the call throws.
inline std::size_t rank(int_matrix m)
{
    const auto rows = m.size();
    if (rows == 0) {
        return 0;
    }
    const auto cols = m[0].size();
    std::size_t r = 0;
    std::int64_t prev = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) {
            ++p;
        }
        if (p == rows) {
            continue;
        }
        std::swap(m[r], m[p]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                std::int64_t x, y;
                if (__builtin_mul_overflow(m[i][j], m[r][c], &x) || __builtin_mul_overflow(m[i][c], m[r][j], &y)
                    || __builtin_sub_overflow(x, y, &x)) {
                    throw error(errc::dimension_mismatch, "integer overflow in rank computation");
                }
                if (x % prev != 0) {
                    throw error(errc::dimension_mismatch, "inexact fraction-free elimination step");
                }
                m[i][j] = x / prev;
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    return r;
}

// Solves A x = b for square nonsingular A over Q; nullopt if A is singular.
inline std::optional<std::vector<rational>> solve(const int_matrix &a, const std::vector<rational> &b)
{
    const auto n = a.size();
    rat_matrix m(n, std::vector<rational>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) {
            throw error(errc::dimension_mismatch, "solve with a non-square matrix");
        }
        for (std::size_t j = 0; j < n; ++j) {
            m[i][j] = a[i][j];
        }
        m[i][n] = b[i];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) {
            ++p;
        }
        if (p == n) {
            return std::nullopt;
        }
        std::swap(m[c], m[p]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m[i][c] == 0) {
                continue;
            }
            const rational f = m[i][c] / m[c][c];
            for (std::size_t j = c; j <= n; ++j) {
                m[i][j] -= f * m[c][j];
            }
        }
    }
    std::vector<rational> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = m[i][n] / m[i][i];
    }
    return x;
}

// Exact inverse over Q of a square integer matrix; nullopt if singular.
inline std::optional<rat_matrix> inverse(const int_matrix &a)
{
    const auto n = a.size();
    rat_matrix inv(n, std::vector<rational>(n));
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<rational> e(n, rational(0));
        e[j] = 1;
        auto col = solve(a, e);
        if (!col) {
            return std::nullopt;
        }
        for (std::size_t i = 0; i < n; ++i) {
            inv[i][j] = (*col)[i];
        }
    }
    return inv;
}

// Decides whether the homogeneous system
//     <h, e> = 0 for e in eqs,   <h, p> > 0 for p in pos
// has a rational solution h, by Gaussian elimination of the equalities
// followed by Fourier-Motzkin elimination of the strict inequalities.
// Integer arithmetic only; rows are divided by their content after each step.
inline bool strict_feasible(std::vector<std::vector<integer>> eqs, std::vector<std::vector<integer>> pos,
                            std::size_t nvars)
{
    auto normalize = [](std::vector<integer> &row) {
        integer g = 0;
        for (const auto &x : row) {
            g = gcd(g, abs(x));
        }
        if (g > 1) {
            for (auto &x : row) {
                x /= g;
            }
        }
    };

    for (std::size_t k = 0; k < nvars; ++k) {
        // Equalities first: any equality involving h_k eliminates it.
        auto it = std::find_if(eqs.begin(), eqs.end(), [k](const auto &e) { return e[k] != 0; });
        if (it != eqs.end()) {
            std::vector<integer> piv = *it;
            eqs.erase(it);
            if (piv[k] < 0) {
                for (auto &x : piv) {
                    x = -x;
                }
            }
            auto eliminate = [&](std::vector<integer> &row) {
                if (row[k] == 0) {
                    return;
                }
                const integer c = row[k];
                for (std::size_t j = 0; j < nvars; ++j) {
                    row[j] = piv[k] * row[j] - c * piv[j];
                }
                normalize(row);
            };
            for (auto &e : eqs) {
                eliminate(e);
            }
            for (auto &p : pos) {
                eliminate(p);
            }
            continue;
        }
        // Fourier-Motzkin on the strict inequalities.
        std::vector<std::vector<integer>> lower, upper, rest;
        for (auto &p : pos) {
            (p[k] > 0 ? lower : p[k] < 0 ? upper : rest).push_back(std::move(p));
        }
        for (const auto &l : lower) {
            for (const auto &u : upper) {
                std::vector<integer> row(nvars);
                for (std::size_t j = 0; j < nvars; ++j) {
                    row[j] = -u[k] * l[j] + l[k] * u[j];
                }
                normalize(row);
                rest.push_back(std::move(row));
            }
        }
        pos = std::move(rest);
    }
    // Every variable is gone: the remaining strict constraints read 0 > 0.
    return pos.empty();
}

} // namespace eqk::linalg

#endif
