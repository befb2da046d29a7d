#ifndef EQK_COMPLETION_HPP
#define EQK_COMPLETION_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <eqk/error.hpp>
#include <eqk/fan.hpp>
#include <eqk/laurent.hpp>
#include <eqk/localization.hpp>
#include <eqk/weight.hpp>

namespace eqk
{

// A power series in vars() variables with rational coefficients, known modulo
// the ideal of monomials of total degree > order(). Exponent vectors are
// stored as weights with nonnegative entries.
class trunc_series
{
public:
    using term_map = std::map<weight, rational>;

    trunc_series(std::size_t vars, std::size_t order) : m_vars(vars), m_order(order) {}

    [[nodiscard]] std::size_t vars() const noexcept
    {
        return m_vars;
    }
    [[nodiscard]] std::size_t order() const noexcept
    {
        return m_order;
    }
    [[nodiscard]] const term_map &terms() const noexcept
    {
        return m_terms;
    }
    [[nodiscard]] rational coeff(const weight &e) const
    {
        auto it = m_terms.find(e);
        return it == m_terms.end() ? rational(0) : it->second;
    }
    [[nodiscard]] rational constant_term() const
    {
        return coeff(weight(m_vars));
    }

    void add_term(const weight &e, const rational &c)
    {
        if (e.rank() != m_vars) {
            throw error(errc::rank_mismatch, "exponent " + e.to_string());
        }
        if (c == 0 || degree(e) > m_order) {
            return;
        }
        auto [it, inserted] = m_terms.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                m_terms.erase(it);
            }
        }
    }

    friend trunc_series operator+(const trunc_series &a, const trunc_series &b)
    {
        a.check(b);
        trunc_series r(a.m_vars, std::min(a.m_order, b.m_order));
        for (const auto &[e, c] : a.m_terms) {
            r.add_term(e, c);
        }
        for (const auto &[e, c] : b.m_terms) {
            r.add_term(e, c);
        }
        return r;
    }
    friend trunc_series operator*(const trunc_series &a, const trunc_series &b)
    {
        a.check(b);
        trunc_series r(a.m_vars, std::min(a.m_order, b.m_order));
        for (const auto &[ea, ca] : a.m_terms) {
            const auto da = degree(ea);
            for (const auto &[eb, cb] : b.m_terms) {
                if (da + degree(eb) <= r.m_order) {
                    r.add_term(ea + eb, ca * cb);
                }
            }
        }
        return r;
    }
    friend bool operator==(const trunc_series &a, const trunc_series &b)
    {
        return a.m_vars == b.m_vars && a.m_order == b.m_order && a.m_terms == b.m_terms;
    }

    static std::size_t degree(const weight &e)
    {
        std::int64_t s = 0;
        for (auto v : e) {
            s += v;
        }
        return static_cast<std::size_t>(s);
    }

private:
    void check(const trunc_series &o) const
    {
        if (o.m_vars != m_vars) {
            throw error(errc::rank_mismatch, "series in different numbers of variables");
        }
    }

    std::size_t m_vars;
    std::size_t m_order;
    term_map m_terms;
};

namespace detail
{

// Calls fn(e) for every exponent vector e in `vars` variables with |e| <= order.
template <typename Fn>
void for_each_exponent(std::size_t vars, std::size_t order, Fn &&fn)
{
    weight e(vars);
    auto rec = [&](auto &&self, std::size_t i, std::size_t budget) -> void {
        if (i == vars) {
            fn(std::as_const(e));
            return;
        }
        for (std::size_t k = 0; k <= budget; ++k) {
            e[i] = static_cast<std::int64_t>(k);
            self(self, i + 1, budget - k);
        }
        e[i] = 0;
    };
    rec(rec, 0, order);
}

// Generalized binomial coefficient C(k, j) for any integer k and j >= 0.
inline integer binomial(std::int64_t k, std::size_t j)
{
    integer num = 1, den = 1;
    for (std::size_t i = 0; i < j; ++i) {
        num *= k - static_cast<std::int64_t>(i);
        den *= static_cast<std::int64_t>(i + 1);
    }
    return num / den;
}

inline integer factorial(std::size_t n)
{
    integer f = 1;
    for (std::size_t i = 2; i <= n; ++i) {
        f *= static_cast<std::int64_t>(i);
    }
    return f;
}

} // namespace detail

// R(T) -> Z[T]^_{I_T} truncated at total degree N: e^m -> prod_i (1 + x_i)^{m_i},
// negative powers expanded as binomial series. The kernel of the augmentation
// lands in the ideal (x_1, ..., x_n).
inline trunc_series complete_at_identity(const laurent &a, std::size_t order)
{
    const auto n = a.rank();
    trunc_series r(n, order);
    for (const auto &[m, c] : a.terms()) {
        std::vector<std::vector<integer>> binoms(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j <= order; ++j) {
                binoms[i].push_back(detail::binomial(m[i], j));
            }
        }
        detail::for_each_exponent(n, order, [&](const weight &e) {
            integer coef = c;
            for (std::size_t i = 0; i < n && coef != 0; ++i) {
                coef *= binoms[i][static_cast<std::size_t>(e[i])];
            }
            r.add_term(e, rational(coef));
        });
    }
    return r;
}

// Chern character ch(e^m) = exp(<m, y>) = sum_e m^e / e! y^e, extended additively.
inline trunc_series chern_character(const laurent &a, std::size_t order)
{
    const auto n = a.rank();
    trunc_series r(n, order);
    for (const auto &[m, c] : a.terms()) {
        detail::for_each_exponent(n, order, [&](const weight &e) {
            integer num = c, den = 1;
            for (std::size_t i = 0; i < n; ++i) {
                num *= pow(integer(m[i]), static_cast<unsigned>(e[i]));
                den *= detail::factorial(static_cast<std::size_t>(e[i]));
            }
            r.add_term(e, rational(num, den));
        });
    }
    return r;
}

// A Laurent series in one variable s with rational coefficients, known for
// exponents below precision().
class one_var_laurent
{
public:
    using term_map = std::map<std::int64_t, rational>;

    explicit one_var_laurent(std::int64_t precision) : m_precision(precision) {}

    // sum_k coeffs[k] s^{shift + k}, known below shift + coeffs.size().
    static one_var_laurent from_coeffs(const std::vector<rational> &coeffs, std::int64_t shift)
    {
        one_var_laurent r(shift + static_cast<std::int64_t>(coeffs.size()));
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            r.add_term(shift + static_cast<std::int64_t>(k), coeffs[k]);
        }
        return r;
    }

    [[nodiscard]] std::int64_t precision() const noexcept
    {
        return m_precision;
    }
    [[nodiscard]] const term_map &terms() const noexcept
    {
        return m_terms;
    }
    [[nodiscard]] rational coeff(std::int64_t k) const
    {
        if (k >= m_precision) {
            throw error(errc::dimension_mismatch, "coefficient of s^" + std::to_string(k) + " is beyond precision");
        }
        auto it = m_terms.find(k);
        return it == m_terms.end() ? rational(0) : it->second;
    }
    // Lowest exponent that could carry a nonzero term.
    [[nodiscard]] std::int64_t valuation() const noexcept
    {
        return m_terms.empty() ? m_precision : m_terms.begin()->first;
    }

    void add_term(std::int64_t k, const rational &c)
    {
        if (c == 0 || k >= m_precision) {
            return;
        }
        auto [it, inserted] = m_terms.try_emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                m_terms.erase(it);
            }
        }
    }

    friend one_var_laurent operator+(const one_var_laurent &a, const one_var_laurent &b)
    {
        one_var_laurent r(std::min(a.m_precision, b.m_precision));
        for (const auto &[k, c] : a.m_terms) {
            r.add_term(k, c);
        }
        for (const auto &[k, c] : b.m_terms) {
            r.add_term(k, c);
        }
        return r;
    }
    friend one_var_laurent operator*(const one_var_laurent &a, const one_var_laurent &b)
    {
        one_var_laurent r(std::min(a.m_precision + b.valuation(), b.m_precision + a.valuation()));
        for (const auto &[ka, ca] : a.m_terms) {
            for (const auto &[kb, cb] : b.m_terms) {
                r.add_term(ka + kb, ca * cb);
            }
        }
        return r;
    }

private:
    std::int64_t m_precision;
    term_map m_terms;
};

namespace detail
{

// exp(c s) through s^order.
inline one_var_laurent exp_series_uncached(std::int64_t c, std::size_t order)
{
    std::vector<rational> coeffs;
    for (std::size_t k = 0; k <= order; ++k) {
        coeffs.emplace_back(pow(integer(c), static_cast<unsigned>(k)), factorial(k));
    }
    return one_var_laurent::from_coeffs(coeffs, 0);
}

// 1 / (1 - exp(w s)) = -(1 / (w s)) * 1 / E(w s), E(z) = (e^z - 1)/z = sum z^k/(k+1)!,
// expanded through s^(order - 1).
inline one_var_laurent inverse_one_minus_exp_uncached(std::int64_t w, std::size_t order)
{
    std::vector<rational> e;
    for (std::size_t k = 0; k <= order; ++k) {
        e.emplace_back(pow(integer(w), static_cast<unsigned>(k)), factorial(k + 1));
    }
    // Power series inverse of e (e[0] = 1).
    std::vector<rational> inv(order + 1, rational(0));
    inv[0] = 1;
    for (std::size_t k = 1; k <= order; ++k) {
        rational s = 0;
        for (std::size_t j = 1; j <= k; ++j) {
            s += e[j] * inv[k - j];
        }
        inv[k] = -s;
    }
    for (auto &c : inv) {
        c /= -w;
    }
    return one_var_laurent::from_coeffs(inv, -1);
}

// Both expansions depend only on (argument, order) and recur across fixed
// points and divisors, so they are memoized per thread.
inline const one_var_laurent &exp_series(std::int64_t c, std::size_t order)
{
    thread_local std::map<std::pair<std::int64_t, std::size_t>, one_var_laurent> cache;
    auto it = cache.find({c, order});
    if (it == cache.end()) {
        it = cache.emplace(std::pair{c, order}, exp_series_uncached(c, order)).first;
    }
    return it->second;
}

inline const one_var_laurent &inverse_one_minus_exp(std::int64_t w, std::size_t order)
{
    thread_local std::map<std::pair<std::int64_t, std::size_t>, one_var_laurent> cache;
    auto it = cache.find({w, order});
    if (it == cache.end()) {
        it = cache.emplace(std::pair{w, order}, inverse_one_minus_exp_uncached(w, order)).first;
    }
    return it->second;
}

// prod_j 1 / (1 - exp(w_j s)); independent of the line bundle.
inline const one_var_laurent &todd_denominator(std::vector<std::int64_t> ws, std::size_t order)
{
    thread_local std::map<std::pair<std::vector<std::int64_t>, std::size_t>, one_var_laurent> cache;
    std::sort(ws.begin(), ws.end());
    auto key = std::pair{ws, order};
    auto it = cache.find(key);
    if (it == cache.end()) {
        one_var_laurent prod(std::numeric_limits<std::int64_t>::max());
        prod.add_term(0, 1);
        for (auto w : ws) {
            prod = prod * inverse_one_minus_exp(w, order);
        }
        it = cache.emplace(std::move(key), std::move(prod)).first;
    }
    return it->second;
}

} // namespace detail

// The Chern character of the fixed-point sum along the line s * xi:
//     sum_sigma exp(<u_sigma, xi> s) / prod_j (1 - exp(<u_{sigma,j}, xi> s)),
// each factor written as -(1/(w s)) times the inverse of (e^{ws} - 1)/(ws), so
// that the Todd series ws/(1 - e^{-ws}) appears once per conormal direction.
inline one_var_laurent grr_series(std::span<const fixed_point> fps, const weight &xi, std::size_t order)
{
    if (fps.empty()) {
        throw error(errc::not_complete, "no fixed points");
    }
    const auto rank = fps.front().vertex.rank();
    if (xi.rank() != rank) {
        throw error(errc::rank_mismatch, "direction " + xi.to_string() + " in rank " + std::to_string(rank));
    }
    if (order < rank + 1) {
        throw error(errc::dimension_mismatch, "truncation order must be at least dim X + 1");
    }
    one_var_laurent total(std::numeric_limits<std::int64_t>::max());
    for (const auto &fp : fps) {
        std::vector<std::int64_t> ws;
        for (const auto &u : fp.dual) {
            ws.push_back(pair(u, xi));
            if (ws.back() == 0) {
                throw error(errc::non_generic_direction, "direction " + xi.to_string() + " is orthogonal to "
                                                             + u.to_string());
            }
        }
        total = total + detail::exp_series(pair(fp.vertex, xi), order) * detail::todd_denominator(ws, order);
    }
    return total;
}

inline one_var_laurent grr_series(const fan &f, const divisor &d, const weight &xi, std::size_t order)
{
    if (xi.rank() != f.rank()) {
        throw error(errc::rank_mismatch, "direction " + xi.to_string() + " for a rank " + std::to_string(f.rank())
                                             + " fan");
    }
    return grr_series(with_vertices(f, d, fixed_points(f)), xi, order);
}

// Constant term of grr_series, after checking that every negative power of s
// cancels and that the constant term is an integer.
inline integer todd_grr_check(std::span<const fixed_point> fps, const weight &xi, std::size_t order)
{
    const auto series = grr_series(fps, xi, order);
    for (const auto &[k, c] : series.terms()) {
        if (k < 0) {
            throw error(errc::negative_powers_survive, "coefficient of s^" + std::to_string(k) + " is nonzero");
        }
    }
    const rational c0 = series.coeff(0);
    if (denominator(c0) != 1) {
        std::ostringstream os;
        os << c0;
        throw error(errc::non_integral_constant_term, os.str());
    }
    return numerator(c0);
}

inline integer todd_grr_check(const fan &f, const divisor &d, const weight &xi, std::size_t order)
{
    if (xi.rank() != f.rank()) {
        throw error(errc::rank_mismatch, "direction " + xi.to_string() + " for a rank " + std::to_string(f.rank())
                                             + " fan");
    }
    return todd_grr_check(with_vertices(f, d, fixed_points(f)), xi, order);
}

} // namespace eqk

#endif
