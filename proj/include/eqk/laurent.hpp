#ifndef EQK_LAURENT_HPP
#define EQK_LAURENT_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>

#include <eqk/error.hpp>
#include <eqk/weight.hpp>

namespace eqk
{

// An element of the representation ring R(T) = Z[M]: a finite Z-linear
// combination of monomials e^m. Coefficients are arbitrary precision and zero
// coefficients are never stored. Iteration is in lexicographic weight order.
class laurent
{
public:
    using term_map = std::map<weight, integer>;

    explicit laurent(std::size_t rank = 0) : m_rank(rank) {}

    static laurent constant(std::size_t rank, const integer &c)
    {
        laurent r(rank);
        if (c != 0) {
            r.m_terms.emplace(weight(rank), c);
        }
        return r;
    }
    static laurent monomial(const weight &m, const integer &c = 1)
    {
        laurent r(m.rank());
        if (c != 0) {
            r.m_terms.emplace(m, c);
        }
        return r;
    }

    [[nodiscard]] std::size_t rank() const noexcept
    {
        return m_rank;
    }
    [[nodiscard]] bool is_zero() const noexcept
    {
        return m_terms.empty();
    }
    [[nodiscard]] std::size_t size() const noexcept
    {
        return m_terms.size();
    }
    [[nodiscard]] const term_map &terms() const noexcept
    {
        return m_terms;
    }
    [[nodiscard]] integer coeff(const weight &m) const
    {
        auto it = m_terms.find(m);
        return it == m_terms.end() ? integer(0) : it->second;
    }
    // Largest and smallest terms in the lexicographic order. Precondition: nonzero.
    [[nodiscard]] const term_map::value_type &leading() const
    {
        return *m_terms.rbegin();
    }
    [[nodiscard]] const term_map::value_type &trailing() const
    {
        return *m_terms.begin();
    }

    void add_term(const weight &m, const integer &c)
    {
        if (m.rank() != m_rank) {
            throw error(errc::rank_mismatch, "term " + m.to_string() + " in rank " + std::to_string(m_rank));
        }
        if (c == 0) {
            return;
        }
        auto [it, inserted] = m_terms.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                m_terms.erase(it);
            }
        }
    }

    laurent &operator+=(const laurent &o)
    {
        check_rank(o);
        for (const auto &[m, c] : o.m_terms) {
            add_term(m, c);
        }
        return *this;
    }
    laurent &operator-=(const laurent &o)
    {
        check_rank(o);
        for (const auto &[m, c] : o.m_terms) {
            add_term(m, -c);
        }
        return *this;
    }
    friend laurent operator+(laurent a, const laurent &b)
    {
        return a += b;
    }
    friend laurent operator-(laurent a, const laurent &b)
    {
        return a -= b;
    }
    friend laurent operator-(laurent a)
    {
        for (auto &t : a.m_terms) {
            t.second = -t.second;
        }
        return a;
    }
    friend laurent operator*(const laurent &a, const laurent &b)
    {
        a.check_rank(b);
        laurent r(a.m_rank);
        for (const auto &[ma, ca] : a.m_terms) {
            for (const auto &[mb, cb] : b.m_terms) {
                r.add_term(ma + mb, ca * cb);
            }
        }
        return r;
    }
    laurent &operator*=(const laurent &o)
    {
        return *this = *this * o;
    }
    friend laurent operator*(const integer &k, laurent a)
    {
        if (k == 0) {
            return laurent(a.m_rank);
        }
        for (auto &t : a.m_terms) {
            t.second *= k;
        }
        return a;
    }
    // Multiplication by the monomial e^m.
    [[nodiscard]] laurent shifted(const weight &m) const
    {
        laurent r(m_rank);
        for (const auto &[w, c] : m_terms) {
            r.m_terms.emplace_hint(r.m_terms.end(), w + m, c);
        }
        return r;
    }

    friend bool operator==(const laurent &a, const laurent &b)
    {
        return a.m_rank == b.m_rank && a.m_terms == b.m_terms;
    }

    // Canonical text: terms in ascending lexicographic weight order joined by
    // " + ". A term is "c * t^(w1,...,wn)", with "t^(w)" for c = 1, "-t^(w)"
    // for c = -1 and the bare coefficient for w = 0. The zero element is "0".
    [[nodiscard]] std::string to_text() const
    {
        if (m_terms.empty()) {
            return "0";
        }
        std::ostringstream os;
        bool first = true;
        for (const auto &[m, c] : m_terms) {
            if (!first) {
                os << " + ";
            }
            first = false;
            if (m.is_zero()) {
                os << c;
            } else if (c == 1) {
                os << "t^" << m.to_string();
            } else if (c == -1) {
                os << "-t^" << m.to_string();
            } else {
                os << c << " * t^" << m.to_string();
            }
        }
        return os.str();
    }

private:
    void check_rank(const laurent &o) const
    {
        if (o.m_rank != m_rank) {
            throw error(errc::rank_mismatch, "laurent elements of rank " + std::to_string(m_rank) + " and "
                                                 + std::to_string(o.m_rank));
        }
    }

    std::size_t m_rank;
    term_map m_terms;
};

// Augmentation R(T) -> Z, e^m -> 1.
inline integer augment(const laurent &a)
{
    integer s = 0;
    for (const auto &t : a.terms()) {
        s += t.second;
    }
    return s;
}

// lambda_{-1} of the T-module with characters chars: prod (1 - e^chi).
inline laurent lambda_minus_one(std::size_t rank, std::span<const weight> chars)
{
    laurent r = laurent::constant(rank, 1);
    for (const auto &chi : chars) {
        r *= laurent::constant(rank, 1) - laurent::monomial(chi);
    }
    return r;
}

// Z[M] is a domain, so every nonzero element becomes a unit in its fraction field.
inline bool is_unit_at_zero(const laurent &a) noexcept
{
    return !a.is_zero();
}

namespace detail
{

// Coordinatewise min and max over the support. Precondition: nonzero.
inline std::pair<weight, weight> support_box(const laurent &a)
{
    weight lo = a.trailing().first, hi = lo;
    for (const auto &[m, c] : a.terms()) {
        for (std::size_t i = 0; i < m.rank(); ++i) {
            lo[i] = std::min(lo[i], m[i]);
            hi[i] = std::max(hi[i], m[i]);
        }
    }
    return {lo, hi};
}

} // namespace detail

// Exact division in Z[M] by leading-term elimination under the lexicographic
// order. Z[M] is a domain, so the Newton polytope of q d is the Minkowski sum
// of those of q and d, and in particular every exponent of q lies in the box
// [min(num) - min(den), max(num) - max(den)] coordinatewise. A candidate term
// outside that box proves non-divisibility; inside it the candidates strictly
// decrease in a finite set, so the loop terminates. (The lexicographic order
// alone is not a well-order on M, so it cannot bound the loop.)
inline std::optional<laurent> try_exact_quotient(const laurent &num, const laurent &den)
{
    if (den.is_zero()) {
        throw error(errc::division_by_zero, "exact_quotient by zero");
    }
    if (num.rank() != den.rank()) {
        throw error(errc::rank_mismatch, "exact_quotient across ranks");
    }
    laurent q(num.rank());
    if (num.is_zero()) {
        return q;
    }
    const auto &[dlead_w, dlead_c] = den.leading();
    const auto [nlo, nhi] = detail::support_box(num);
    const auto [dlo, dhi] = detail::support_box(den);
    const weight qlo = nlo - dlo, qhi = nhi - dhi;
    laurent rem = num;
    while (!rem.is_zero()) {
        const auto &[rw, rc] = rem.leading();
        const weight qw = rw - dlead_w;
        for (std::size_t i = 0; i < qw.rank(); ++i) {
            if (qw[i] < qlo[i] || qw[i] > qhi[i]) {
                return std::nullopt;
            }
        }
        integer qc, r;
        divide_qr(rc, dlead_c, qc, r);
        if (r != 0) {
            return std::nullopt;
        }
        q.add_term(qw, qc);
        rem -= qc * den.shifted(qw);
    }
    return q;
}

inline laurent exact_quotient(const laurent &num, const laurent &den)
{
    auto q = try_exact_quotient(num, den);
    if (!q) {
        throw error(errc::not_divisible, num.to_text() + " by " + den.to_text());
    }
    return std::move(*q);
}

// An element of the fraction field of Z[M], kept as num/den with the integer
// contents reduced and den's leading coefficient positive. No polynomial gcd
// is taken, so equality is decided by cross-multiplication.
class rat_class
{
public:
    explicit rat_class(laurent num) : m_num(std::move(num)), m_den(laurent::constant(m_num.rank(), 1)) {}
    rat_class(laurent num, laurent den) : m_num(std::move(num)), m_den(std::move(den))
    {
        if (m_den.is_zero()) {
            throw error(errc::division_by_zero, "rat_class with zero denominator");
        }
        if (m_num.rank() != m_den.rank()) {
            throw error(errc::rank_mismatch, "rat_class across ranks");
        }
        canonicalize();
    }

    [[nodiscard]] const laurent &num() const noexcept
    {
        return m_num;
    }
    [[nodiscard]] const laurent &den() const noexcept
    {
        return m_den;
    }
    [[nodiscard]] std::size_t rank() const noexcept
    {
        return m_num.rank();
    }

    friend rat_class operator+(const rat_class &a, const rat_class &b)
    {
        return rat_class(a.m_num * b.m_den + b.m_num * a.m_den, a.m_den * b.m_den);
    }
    friend rat_class operator-(const rat_class &a)
    {
        return rat_class(-a.m_num, a.m_den);
    }
    friend rat_class operator*(const rat_class &a, const rat_class &b)
    {
        return rat_class(a.m_num * b.m_num, a.m_den * b.m_den);
    }
    [[nodiscard]] rat_class inverse() const
    {
        if (m_num.is_zero()) {
            throw error(errc::division_by_zero, "inverse of zero class");
        }
        return rat_class(m_den, m_num);
    }

    friend bool operator==(const rat_class &a, const rat_class &b)
    {
        return a.m_num * b.m_den == b.m_num * a.m_den;
    }

    // The Laurent polynomial this class equals, if it is one.
    [[nodiscard]] std::optional<laurent> to_laurent() const
    {
        return try_exact_quotient(m_num, m_den);
    }

private:
    static integer content(const laurent &a)
    {
        integer g = 0;
        for (const auto &t : a.terms()) {
            g = gcd(g, abs(t.second));
        }
        return g;
    }

    void canonicalize()
    {
        integer g = content(m_den);
        if (!m_num.is_zero()) {
            g = gcd(g, content(m_num));
        } else {
            // 0/d == 0/1.
            m_den = laurent::constant(m_den.rank(), 1);
            return;
        }
        if (m_den.leading().second < 0) {
            g = -g;
        }
        if (g != 1) {
            m_num = divide_all(m_num, g);
            m_den = divide_all(m_den, g);
        }
    }

    static laurent divide_all(const laurent &a, const integer &g)
    {
        laurent r(a.rank());
        for (const auto &[m, c] : a.terms()) {
            r.add_term(m, c / g);
        }
        return r;
    }

    laurent m_num;
    laurent m_den;
};

inline rat_class rat_inv(const rat_class &r)
{
    return r.inverse();
}

} // namespace eqk

#endif
