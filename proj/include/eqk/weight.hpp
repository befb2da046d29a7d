#ifndef EQK_WEIGHT_HPP
#define EQK_WEIGHT_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <sstream>
#include <string>

#include <boost/container/small_vector.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <eqk/error.hpp>

namespace eqk
{

using integer = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

// A point of a rank-n lattice: a character of the torus (M) or a cocharacter
// (N), depending on context. Comparison is lexicographic, which is the global
// term order used by every leading-term computation in the library.
class weight
{
public:
    using value_type = std::int64_t;
    using storage = boost::container::small_vector<value_type, 4>;

    weight() = default;
    explicit weight(std::size_t rank) : m_c(rank, 0) {}
    weight(std::initializer_list<value_type> il) : m_c(il.begin(), il.end()) {}
    explicit weight(std::span<const value_type> s) : m_c(s.begin(), s.end()) {}

    static weight unit(std::size_t rank, std::size_t i)
    {
        weight w(rank);
        w.m_c[i] = 1;
        return w;
    }

    [[nodiscard]] std::size_t rank() const noexcept
    {
        return m_c.size();
    }
    [[nodiscard]] value_type operator[](std::size_t i) const
    {
        return m_c[i];
    }
    value_type &operator[](std::size_t i)
    {
        return m_c[i];
    }
    [[nodiscard]] auto begin() const noexcept
    {
        return m_c.begin();
    }
    [[nodiscard]] auto end() const noexcept
    {
        return m_c.end();
    }

    [[nodiscard]] bool is_zero() const noexcept
    {
        return std::all_of(m_c.begin(), m_c.end(), [](value_type v) { return v == 0; });
    }

    weight &operator+=(const weight &o)
    {
        check_rank(o);
        for (std::size_t i = 0; i < m_c.size(); ++i) {
            m_c[i] += o.m_c[i];
        }
        return *this;
    }
    weight &operator-=(const weight &o)
    {
        check_rank(o);
        for (std::size_t i = 0; i < m_c.size(); ++i) {
            m_c[i] -= o.m_c[i];
        }
        return *this;
    }
    friend weight operator+(weight a, const weight &b)
    {
        return a += b;
    }
    friend weight operator-(weight a, const weight &b)
    {
        return a -= b;
    }
    friend weight operator-(weight a)
    {
        for (auto &v : a.m_c) {
            v = -v;
        }
        return a;
    }
    friend weight operator*(value_type k, weight a)
    {
        for (auto &v : a.m_c) {
            v *= k;
        }
        return a;
    }

    friend bool operator==(const weight &a, const weight &b) noexcept
    {
        return std::equal(a.m_c.begin(), a.m_c.end(), b.m_c.begin(), b.m_c.end());
    }
    friend std::strong_ordering operator<=>(const weight &a, const weight &b) noexcept
    {
        return std::lexicographical_compare_three_way(a.m_c.begin(), a.m_c.end(), b.m_c.begin(), b.m_c.end());
    }

    [[nodiscard]] std::string to_string() const
    {
        std::ostringstream os;
        os << '(';
        for (std::size_t i = 0; i < m_c.size(); ++i) {
            os << (i ? "," : "") << m_c[i];
        }
        os << ')';
        return os.str();
    }

private:
    void check_rank(const weight &o) const
    {
        if (o.rank() != rank()) {
            throw error(errc::rank_mismatch, "weights of rank " + std::to_string(rank()) + " and "
                                                 + std::to_string(o.rank()));
        }
    }

    storage m_c;
};

// Natural pairing <m, v> between M and N = Hom(M, Z).
inline std::int64_t pair(const weight &m, const weight &v)
{
    if (m.rank() != v.rank()) {
        throw error(errc::rank_mismatch, "pairing " + m.to_string() + " with " + v.to_string());
    }
    std::int64_t s = 0;
    for (std::size_t i = 0; i < m.rank(); ++i) {
        s += m[i] * v[i];
    }
    return s;
}

inline std::int64_t content_gcd(const weight &w)
{
    std::int64_t g = 0;
    for (auto v : w) {
        g = std::gcd(g, v);
    }
    return g;
}

} // namespace eqk

#endif
