#ifndef EQK_FAN_HPP
#define EQK_FAN_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <eqk/error.hpp>
#include <eqk/linalg.hpp>
#include <eqk/weight.hpp>

namespace eqk
{

// A simplicial cone, given by sorted indices into the owning fan's ray list.
struct cone {
    std::vector<std::size_t> rays;

    [[nodiscard]] std::size_t dim() const noexcept
    {
        return rays.size();
    }
    friend bool operator==(const cone &, const cone &) = default;
};

// Unchecked fan data as read from input.
struct raw_fan {
    std::int64_t rank = 0;
    std::vector<std::vector<std::int64_t>> rays;
    std::vector<std::vector<std::int64_t>> max_cones;
};

// A simplicial rational polyhedral fan in N = Z^rank. Only validate_fan()
// produces values of this type, so every fan in circulation satisfies the
// primitivity, simpliciality and face-intersection invariants.
class fan
{
public:
    [[nodiscard]] std::size_t rank() const noexcept
    {
        return m_rank;
    }
    [[nodiscard]] const std::vector<weight> &rays() const noexcept
    {
        return m_rays;
    }
    [[nodiscard]] const std::vector<cone> &max_cones() const noexcept
    {
        return m_cones;
    }
    [[nodiscard]] std::vector<weight> cone_rays(const cone &c) const
    {
        std::vector<weight> out;
        out.reserve(c.dim());
        for (auto i : c.rays) {
            out.push_back(m_rays.at(i));
        }
        return out;
    }

    [[nodiscard]] raw_fan to_raw() const
    {
        raw_fan r;
        r.rank = static_cast<std::int64_t>(m_rank);
        for (const auto &v : m_rays) {
            r.rays.emplace_back(v.begin(), v.end());
        }
        for (const auto &c : m_cones) {
            r.max_cones.emplace_back(c.rays.begin(), c.rays.end());
        }
        return r;
    }

    friend bool operator==(const fan &, const fan &) = default;

private:
    friend fan validate_fan(const raw_fan &);

    std::size_t m_rank = 0;
    std::vector<weight> m_rays;
    std::vector<cone> m_cones;
};

// Per-ray integer coefficients a_rho of a torus-invariant divisor
// D = sum a_rho D_rho. Rays without an explicit coefficient carry 0.
struct divisor {
    std::vector<std::int64_t> coeffs;

    static divisor zero(const fan &f)
    {
        return divisor{std::vector<std::int64_t>(f.rays().size(), 0)};
    }
    [[nodiscard]] std::int64_t operator[](std::size_t ray) const
    {
        return ray < coeffs.size() ? coeffs[ray] : 0;
    }
    friend bool operator==(const divisor &, const divisor &) = default;
};

namespace detail
{

inline std::string cone_str(const cone &c)
{
    std::string s = "{";
    for (std::size_t i = 0; i < c.rays.size(); ++i) {
        s += (i ? "," : "") + std::to_string(c.rays[i]);
    }
    return s + "}";
}

// Two simplicial cones meet in a common face iff some linear functional
// vanishes on their shared rays, is positive on the remaining rays of the
// first and negative on the remaining rays of the second (separation lemma).
inline bool meet_in_common_face(const std::vector<weight> &rays, const cone &a, const cone &b)
{
    const auto n = rays.front().rank();
    std::vector<std::vector<integer>> eqs, pos;
    auto row = [&](std::size_t ray, int sgn) {
        std::vector<integer> r(n);
        for (std::size_t j = 0; j < n; ++j) {
            r[j] = sgn * rays[ray][j];
        }
        return r;
    };
    for (auto i : a.rays) {
        if (std::binary_search(b.rays.begin(), b.rays.end(), i)) {
            eqs.push_back(row(i, 1));
        } else {
            pos.push_back(row(i, 1));
        }
    }
    for (auto i : b.rays) {
        if (!std::binary_search(a.rays.begin(), a.rays.end(), i)) {
            pos.push_back(row(i, -1));
        }
    }
    if (pos.empty()) {
        // Identical ray sets: a cone listed twice.
        return false;
    }
    return linalg::strict_feasible(std::move(eqs), std::move(pos), n);
}

} // namespace detail

inline fan validate_fan(const raw_fan &raw)
{
    if (raw.rank < 1) {
        throw error(errc::dimension_mismatch, "rank must be at least 1");
    }
    if (raw.rays.empty()) {
        throw error(errc::dimension_mismatch, "fan has no rays");
    }
    fan f;
    f.m_rank = static_cast<std::size_t>(raw.rank);
    for (std::size_t i = 0; i < raw.rays.size(); ++i) {
        const auto &r = raw.rays[i];
        if (r.size() != f.m_rank) {
            throw error(errc::dimension_mismatch, "ray " + std::to_string(i) + " has length "
                                                      + std::to_string(r.size()) + ", expected "
                                                      + std::to_string(f.m_rank));
        }
        weight w{std::span<const std::int64_t>(r)};
        if (content_gcd(w) != 1) {
            throw error(errc::non_primitive_ray, "ray " + std::to_string(i) + " = " + w.to_string());
        }
        f.m_rays.push_back(std::move(w));
    }
    for (const auto &rc : raw.max_cones) {
        cone c;
        for (auto idx : rc) {
            if (idx < 0 || static_cast<std::size_t>(idx) >= f.m_rays.size()) {
                throw error(errc::dimension_mismatch, "cone refers to missing ray " + std::to_string(idx));
            }
            c.rays.push_back(static_cast<std::size_t>(idx));
        }
        std::sort(c.rays.begin(), c.rays.end());
        if (std::adjacent_find(c.rays.begin(), c.rays.end()) != c.rays.end()) {
            throw error(errc::dimension_mismatch, "cone " + detail::cone_str(c) + " repeats a ray");
        }
        if (c.dim() == 0 || c.dim() > f.m_rank) {
            throw error(errc::dimension_mismatch, "cone " + detail::cone_str(c) + " has invalid dimension");
        }
        if (linalg::rank(linalg::rows_of(f.cone_rays(c))) != c.dim()) {
            throw error(errc::not_simplicial, "rays of cone " + detail::cone_str(c) + " are linearly dependent");
        }
        f.m_cones.push_back(std::move(c));
    }
    if (f.m_cones.empty()) {
        throw error(errc::dimension_mismatch, "fan has no maximal cones");
    }
    for (std::size_t i = 0; i < f.m_cones.size(); ++i) {
        for (std::size_t j = i + 1; j < f.m_cones.size(); ++j) {
            if (!detail::meet_in_common_face(f.m_rays, f.m_cones[i], f.m_cones[j])) {
                throw error(errc::bad_face_intersection, "cones " + detail::cone_str(f.m_cones[i]) + " and "
                                                             + detail::cone_str(f.m_cones[j]));
            }
        }
    }
    return f;
}

inline fan validate_fan(const fan &f)
{
    return validate_fan(f.to_raw());
}

// True iff the cone's rays extend to a Z-basis of Z^n, i.e. the gcd of the
// maximal minors of the ray matrix is 1.
inline bool is_smooth_cone(const fan &f, const cone &c)
{
    const auto rows = linalg::rows_of(f.cone_rays(c));
    const auto k = rows.size();
    const auto n = f.rank();
    integer g = 0;
    std::vector<std::size_t> cols(k);
    // Enumerate k-subsets of columns in lexicographic order.
    std::iota(cols.begin(), cols.end(), std::size_t{0});
    while (true) {
        linalg::int_matrix minor(k, std::vector<std::int64_t>(k));
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                minor[i][j] = rows[i][cols[j]];
            }
        }
        g = gcd(g, abs(linalg::det(minor)));
        std::size_t p = k;
        while (p > 0 && cols[p - 1] == n - k + p - 1) {
            --p;
        }
        if (p == 0) {
            break;
        }
        ++cols[p - 1];
        for (std::size_t q = p; q < k; ++q) {
            cols[q] = cols[q - 1] + 1;
        }
    }
    return g == 1;
}

namespace detail
{

inline void require_smooth_full_dim(const fan &f, const cone &c)
{
    if (c.dim() != f.rank()) {
        throw error(errc::not_full_dim, "cone " + cone_str(c) + " is not full-dimensional");
    }
    if (!is_smooth_cone(f, c)) {
        throw error(errc::not_smooth, "cone " + cone_str(c) + " is not smooth");
    }
}

// Integral solution u of <u, v_j> = rhs_j over the rays of a smooth
// full-dimensional cone.
inline weight solve_on_cone(const fan &f, const cone &c, const std::vector<rational> &rhs)
{
    auto x = linalg::solve(linalg::rows_of(f.cone_rays(c)), rhs);
    if (!x) {
        throw error(errc::not_simplicial, "singular ray matrix for cone " + cone_str(c));
    }
    weight u(f.rank());
    for (std::size_t i = 0; i < f.rank(); ++i) {
        if (denominator((*x)[i]) != 1) {
            throw error(errc::no_integral_solution, "cone " + cone_str(c));
        }
        u[i] = static_cast<std::int64_t>(numerator((*x)[i]));
    }
    return u;
}

} // namespace detail

// Dual basis u_1..u_n of a smooth full-dimensional cone: <u_i, v_j> = delta_ij.
inline std::vector<weight> dual_basis(const fan &f, const cone &c)
{
    detail::require_smooth_full_dim(f, c);
    const auto n = f.rank();
    const auto rays = f.cone_rays(c);
    std::vector<weight> dual;
    dual.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<rational> e(n, rational(0));
        e[i] = 1;
        dual.push_back(detail::solve_on_cone(f, c, e));
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (pair(dual[i], rays[j]) != (i == j ? 1 : 0)) {
                throw error(errc::no_integral_solution, "dual basis pairing check failed");
            }
        }
    }
    return dual;
}

// The character u_sigma with <u_sigma, v_i> = -a_i on every ray of the cone:
// the weight of the local generator of O(D) on the affine chart U_sigma.
inline weight vertex_weight(const fan &f, const divisor &d, const cone &c)
{
    detail::require_smooth_full_dim(f, c);
    std::vector<rational> rhs;
    for (auto i : c.rays) {
        rhs.emplace_back(-d[i]);
    }
    auto u = detail::solve_on_cone(f, c, rhs);
    for (auto i : c.rays) {
        if (pair(u, f.rays()[i]) != -d[i]) {
            throw error(errc::no_integral_solution, "vertex weight check failed");
        }
    }
    return u;
}

namespace detail
{

// Coordinates of p in the ray basis of a full-dimensional simplicial cone, or
// nullopt if p is not in the cone.
inline std::optional<std::vector<rational>> cone_coordinates(const fan &f, const cone &c, const weight &p)
{
    if (c.dim() != f.rank()) {
        return std::nullopt;
    }
    // Columns are the rays: solve sum_j c_j v_j = p.
    const auto n = f.rank();
    linalg::int_matrix m(n, std::vector<std::int64_t>(n));
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            m[i][j] = f.rays()[c.rays[j]][i];
        }
    }
    std::vector<rational> rhs(p.begin(), p.end());
    auto x = linalg::solve(m, rhs);
    if (!x || std::any_of(x->begin(), x->end(), [](const rational &r) { return r < 0; })) {
        return std::nullopt;
    }
    return x;
}

} // namespace detail

// Completeness of a fan of rank <= 3: every facet of every maximal cone lies
// in exactly two maximal cones, and every nonzero lattice point of the cube
// [-2,2]^n lies in some maximal cone.
inline bool is_complete(const fan &f)
{
    const auto n = f.rank();
    if (n > 3) {
        throw error(errc::rank_too_large, "completeness check supports rank <= 3, got " + std::to_string(n));
    }
    const auto &cones = f.max_cones();
    if (std::any_of(cones.begin(), cones.end(), [n](const cone &c) { return c.dim() != n; })) {
        return false;
    }
    for (const auto &c : cones) {
        for (std::size_t drop = 0; drop < c.dim(); ++drop) {
            std::vector<std::size_t> facet;
            for (std::size_t j = 0; j < c.dim(); ++j) {
                if (j != drop) {
                    facet.push_back(c.rays[j]);
                }
            }
            const auto count = std::count_if(cones.begin(), cones.end(), [&](const cone &o) {
                return std::includes(o.rays.begin(), o.rays.end(), facet.begin(), facet.end());
            });
            if (count != 2) {
                return false;
            }
        }
    }
    constexpr std::int64_t sweep = 2;
    weight p(n);
    for (std::size_t i = 0; i < n; ++i) {
        p[i] = -sweep;
    }
    while (true) {
        if (!p.is_zero()) {
            const bool covered = std::any_of(cones.begin(), cones.end(), [&](const cone &c) {
                return detail::cone_coordinates(f, c, p).has_value();
            });
            if (!covered) {
                return false;
            }
        }
        std::size_t k = n;
        while (k > 0 && p[k - 1] == sweep) {
            p[k - 1] = -sweep;
            --k;
        }
        if (k == 0) {
            break;
        }
        ++p[k - 1];
    }
    return true;
}

inline bool in_polytope(const fan &f, const divisor &d, const weight &m)
{
    for (std::size_t r = 0; r < f.rays().size(); ++r) {
        if (pair(m, f.rays()[r]) < -d[r]) {
            return false;
        }
    }
    return true;
}

// Closed integer box [lo, hi] containing P_D = { m : <m, v_rho> >= -a_rho }.
// Each of +-e_k is written as a nonnegative combination sum c_j v_j of the
// rays of some maximal cone; then +-m_k >= -sum c_j a_j.
inline std::pair<weight, weight> polytope_bounds(const fan &f, const divisor &d)
{
    const auto n = f.rank();
    weight lo(n), hi(n);
    for (std::size_t k = 0; k < n; ++k) {
        for (int s : {1, -1}) {
            const weight dir = static_cast<std::int64_t>(s) * weight::unit(n, k);
            bool found = false;
            for (const auto &c : f.max_cones()) {
                auto coords = detail::cone_coordinates(f, c, dir);
                if (!coords) {
                    continue;
                }
                rational bound = 0;
                for (std::size_t j = 0; j < c.dim(); ++j) {
                    bound -= (*coords)[j] * d[c.rays[j]];
                }
                // s * m_k >= bound
                if (s == 1) {
                    integer q = numerator(bound) / denominator(bound);
                    if (q * denominator(bound) < numerator(bound)) {
                        ++q; // ceil
                    }
                    lo[k] = static_cast<std::int64_t>(q);
                } else {
                    const rational ub = -bound;
                    integer q = numerator(ub) / denominator(ub);
                    if (q * denominator(ub) > numerator(ub)) {
                        --q; // floor
                    }
                    hi[k] = static_cast<std::int64_t>(q);
                }
                found = true;
                break;
            }
            if (!found) {
                throw error(errc::unbounded_polytope, "direction " + dir.to_string() + " lies in no maximal cone");
            }
        }
    }
    return {lo, hi};
}

// Lattice points of P_D in lexicographic order.
inline std::vector<weight> polytope_lattice_points(const fan &f, const divisor &d)
{
    const auto [lo, hi] = polytope_bounds(f, d);
    const auto n = f.rank();
    std::vector<weight> out;
    for (std::size_t k = 0; k < n; ++k) {
        if (lo[k] > hi[k]) {
            return out;
        }
    }
    weight m = lo;
    while (true) {
        if (in_polytope(f, d, m)) {
            out.push_back(m);
        }
        std::size_t k = n;
        while (k > 0 && m[k - 1] == hi[k - 1]) {
            m[k - 1] = lo[k - 1];
            --k;
        }
        if (k == 0) {
            break;
        }
        ++m[k - 1];
    }
    return out;
}

// D is nef iff every vertex weight u_sigma satisfies all the inequalities of P_D.
inline bool is_nef(const fan &f, const divisor &d)
{
    return std::all_of(f.max_cones().begin(), f.max_cones().end(),
                       [&](const cone &c) { return in_polytope(f, d, vertex_weight(f, d, c)); });
}

} // namespace eqk

#endif
