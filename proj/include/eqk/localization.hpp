#ifndef EQK_LOCALIZATION_HPP
#define EQK_LOCALIZATION_HPP

// Torus-fixed-point localization on smooth complete toric varieties.
//
// For a T-equivariant line bundle O(D) the fixed points are the maximal cones
// sigma; the restriction of O(D) to the fixed point has character u_sigma
// (vertex_weight) and the conormal characters are the dual basis u_{sigma,j}.
// The trace formula reads
//
//     chi_T(X, O(D)) = sum_sigma e^{u_sigma} / prod_j (1 - e^{u_{sigma,j}})
//
// in the fraction field of R(T), and the sum is a Laurent polynomial. Two
// oracles compute the same character without localization: a weight-by-weight
// Cech computation over the affine cover, and the lattice points of P_D when
// D is nef.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <eqk/error.hpp>
#include <eqk/fan.hpp>
#include <eqk/laurent.hpp>
#include <eqk/linalg.hpp>
#include <eqk/parallel.hpp>
#include <eqk/weight.hpp>

namespace eqk
{

struct fixed_point {
    std::size_t cone_index = 0;
    std::vector<weight> dual;
    weight vertex;
};

inline void require_complete_smooth(const fan &f)
{
    if (!is_complete(f)) {
        throw error(errc::not_complete, "fan is not complete");
    }
    for (const auto &c : f.max_cones()) {
        if (c.dim() != f.rank() || !is_smooth_cone(f, c)) {
            throw error(errc::not_smooth, "maximal cone " + detail::cone_str(c) + " is not smooth and full-dimensional");
        }
    }
}

// One fixed point per maximal cone, carrying its dual basis. The vertex is
// left at zero (the trivial bundle); with_vertices() fills it in for a divisor.
inline std::vector<fixed_point> fixed_points(const fan &f)
{
    require_complete_smooth(f);
    std::vector<fixed_point> out;
    for (std::size_t i = 0; i < f.max_cones().size(); ++i) {
        out.push_back({i, dual_basis(f, f.max_cones()[i]), weight(f.rank())});
    }
    return out;
}

inline std::vector<fixed_point> with_vertices(const fan &f, const divisor &d, std::vector<fixed_point> fps)
{
    for (auto &fp : fps) {
        fp.vertex = vertex_weight(f, d, f.max_cones()[fp.cone_index]);
    }
    return fps;
}

// Denominator lambda_{-1} of the conormal module at a fixed point.
inline laurent conormal_lambda(const fixed_point &fp)
{
    for (const auto &u : fp.dual) {
        if (u.is_zero()) {
            throw error(errc::zero_conormal_character, "fixed point " + std::to_string(fp.cone_index));
        }
    }
    return lambda_minus_one(fp.vertex.rank(), fp.dual);
}

// e^{u_sigma} / prod_j (1 - e^{u_{sigma,j}}).
inline rat_class trace_contribution(const fixed_point &fp)
{
    return rat_class(laurent::monomial(fp.vertex), conormal_lambda(fp));
}

// Sum of the trace contributions over the literal product of all fixed-point
// denominators, divided out exactly. A failed division means the localized
// class is not supported on the fixed locus, which cannot happen for valid
// input, and is reported as LocalizationLeak.
inline laurent localization_sum(std::span<const fixed_point> fps, std::size_t rank, std::size_t threads = 1)
{
    const auto n = fps.size();
    auto dens = parallel_map(n, threads, [&](std::size_t i) { return conormal_lambda(fps[i]); });
    // prefix[i] = prod_{j<i} dens[j], suffix[i] = prod_{j>=i} dens[j]
    std::vector<laurent> prefix(n + 1, laurent::constant(rank, 1)), suffix(n + 1, laurent::constant(rank, 1));
    for (std::size_t i = 0; i < n; ++i) {
        prefix[i + 1] = prefix[i] * dens[i];
    }
    for (std::size_t i = n; i-- > 0;) {
        suffix[i] = suffix[i + 1] * dens[i];
    }
    auto parts = parallel_map(n, threads, [&](std::size_t i) {
        return (prefix[i] * suffix[i + 1]).shifted(fps[i].vertex);
    });
    laurent num(rank);
    for (const auto &p : parts) {
        num += p;
    }
    auto q = try_exact_quotient(num, prefix[n]);
    if (!q) {
        throw error(errc::localization_leak, "fixed-point sum is not a Laurent polynomial");
    }
    return std::move(*q);
}

inline laurent equivariant_euler_char(const fan &f, const divisor &d, std::size_t threads = 1)
{
    const auto fps = with_vertices(f, d, fixed_points(f));
    return localization_sum(fps, f.rank(), threads);
}

// Characters of H^0, ..., H^n of O(D), computed weight by weight from the
// Cech complex of the cover by the affine charts U_sigma.
//
// For a weight m the graded piece of O(D)(U_tau) is one-dimensional exactly
// when <m, v_rho> >= -a_rho for every ray rho of tau, and restriction maps
// between nonzero pieces are the identity. Only weights in the convex hull of
// the vertex weights can carry cohomology: if m lies outside it, some n in N
// has <m - u_sigma, n> > 0 for all sigma, the function x -> psi_D(x) - <m, x>
// strictly decreases along n, and the negative region whose reduced cohomology
// computes H^*(X, O(D))_m is star-shaped about -n. The scan covers the
// bounding box of the vertex weights padded by one, and the padding layer is
// checked to be acyclic.
inline std::vector<laurent> cech_cohomology(const fan &f, const divisor &d)
{
    const auto n = f.rank();
    if (n > 3) {
        throw error(errc::rank_too_large, "Cech oracle supports rank <= 3, got " + std::to_string(n));
    }
    require_complete_smooth(f);
    const auto &cones = f.max_cones();
    const auto k = cones.size();
    if (k > 16) {
        throw error(errc::rank_too_large, "Cech oracle supports at most 16 maximal cones");
    }
    const auto nrays = f.rays().size();
    if (nrays > 63) {
        throw error(errc::rank_too_large, "Cech oracle supports at most 63 rays");
    }

    // Nerve of the cover: every nonempty subset S of maximal cones, with the
    // ray mask of the face tau_S = cap_{s in S} sigma_s.
    std::vector<std::uint64_t> cone_mask(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        for (auto r : cones[i].rays) {
            cone_mask[i] |= std::uint64_t{1} << r;
        }
    }
    // simplices[p] lists subsets of size p + 1 as bitmasks over cones.
    std::vector<std::vector<std::uint32_t>> simplices(k);
    std::vector<std::uint64_t> face_mask(std::size_t{1} << k, 0);
    for (std::uint32_t s = 1; s < (std::uint32_t{1} << k); ++s) {
        std::uint64_t m = ~std::uint64_t{0};
        for (std::size_t i = 0; i < k; ++i) {
            if (s & (1u << i)) {
                m &= cone_mask[i];
            }
        }
        face_mask[s] = m;
        simplices[static_cast<std::size_t>(__builtin_popcount(s)) - 1].push_back(s);
    }
    std::vector<std::map<std::uint32_t, std::size_t>> position(k);
    for (std::size_t p = 0; p < k; ++p) {
        for (std::size_t j = 0; j < simplices[p].size(); ++j) {
            position[p][simplices[p][j]] = j;
        }
    }

    // Cohomology dimensions depend on m only through the set of rays with
    // <m, v_rho> >= -a_rho.
    std::map<std::uint64_t, std::vector<std::int64_t>> memo;
    auto graded_dims = [&](std::uint64_t ok) -> const std::vector<std::int64_t> & {
        auto it = memo.find(ok);
        if (it != memo.end()) {
            return it->second;
        }
        auto active = [&](std::uint32_t s) { return (face_mask[s] & ~ok) == 0; };
        std::vector<std::vector<std::uint32_t>> basis(k);
        for (std::size_t p = 0; p < k; ++p) {
            for (auto s : simplices[p]) {
                if (active(s)) {
                    basis[p].push_back(s);
                }
            }
        }
        // rank of d^p : C^p -> C^{p+1}
        std::vector<std::size_t> drank(k, 0);
        for (std::size_t p = 0; p + 1 < k; ++p) {
            if (basis[p].empty() || basis[p + 1].empty()) {
                continue;
            }
            linalg::int_matrix mat(basis[p + 1].size(), std::vector<std::int64_t>(basis[p].size(), 0));
            std::map<std::uint32_t, std::size_t> col;
            for (std::size_t j = 0; j < basis[p].size(); ++j) {
                col[basis[p][j]] = j;
            }
            for (std::size_t r = 0; r < basis[p + 1].size(); ++r) {
                const auto t = basis[p + 1][r];
                // (dc)_{i0..i_{p+1}} = sum_l (-1)^l c_{i0..^il..i_{p+1}}
                int l = 0;
                for (std::size_t i = 0; i < k; ++i) {
                    if (!(t & (1u << i))) {
                        continue;
                    }
                    const auto face = t & ~(1u << i);
                    auto c = col.find(face);
                    if (c != col.end()) {
                        mat[r][c->second] = (l % 2 == 0) ? 1 : -1;
                    }
                    ++l;
                }
            }
            drank[p] = linalg::rank(std::move(mat));
        }
        std::vector<std::int64_t> dims(k, 0);
        for (std::size_t p = 0; p < k; ++p) {
            const auto in = p > 0 ? drank[p - 1] : 0;
            dims[p] = static_cast<std::int64_t>(basis[p].size() - drank[p] - in);
        }
        return memo.emplace(ok, std::move(dims)).first->second;
    };

    weight lo(n), hi(n);
    bool first = true;
    for (const auto &c : cones) {
        const auto u = vertex_weight(f, d, c);
        for (std::size_t i = 0; i < n; ++i) {
            lo[i] = first ? u[i] : std::min(lo[i], u[i]);
            hi[i] = first ? u[i] : std::max(hi[i], u[i]);
        }
        first = false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        --lo[i];
        ++hi[i];
    }

    std::vector<laurent> h(n + 1, laurent(n));
    weight m = lo;
    while (true) {
        std::uint64_t ok = 0;
        for (std::size_t r = 0; r < nrays; ++r) {
            if (pair(m, f.rays()[r]) >= -d[r]) {
                ok |= std::uint64_t{1} << r;
            }
        }
        const auto &dims = graded_dims(ok);
        bool on_pad = false;
        for (std::size_t i = 0; i < n; ++i) {
            on_pad = on_pad || m[i] == lo[i] || m[i] == hi[i];
        }
        for (std::size_t p = 0; p < k; ++p) {
            if (dims[p] == 0) {
                continue;
            }
            if (on_pad || p > n) {
                throw error(errc::localization_leak, "Cech cohomology at weight " + m.to_string()
                                                         + " outside the vertex hull or above degree n");
            }
            h[p].add_term(m, dims[p]);
        }
        std::size_t i = n;
        while (i > 0 && m[i - 1] == hi[i - 1]) {
            m[i - 1] = lo[i - 1];
            --i;
        }
        if (i == 0) {
            break;
        }
        ++m[i - 1];
    }
    return h;
}

// sum_p (-1)^p ch H^p(X, O(D)) from the Cech complex.
inline laurent cech_oracle(const fan &f, const divisor &d)
{
    const auto h = cech_cohomology(f, d);
    laurent chi(f.rank());
    for (std::size_t p = 0; p < h.size(); ++p) {
        if (p % 2 == 0) {
            chi += h[p];
        } else {
            chi -= h[p];
        }
    }
    return chi;
}

// For nef D the higher cohomology vanishes and H^0 has one weight per lattice point of P_D.
inline laurent nef_oracle(const fan &f, const divisor &d)
{
    if (!is_nef(f, d)) {
        throw error(errc::not_nef, "divisor is not nef");
    }
    laurent r(f.rank());
    for (const auto &m : polytope_lattice_points(f, d)) {
        r.add_term(m, 1);
    }
    return r;
}

} // namespace eqk

#endif
