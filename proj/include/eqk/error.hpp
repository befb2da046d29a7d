#ifndef EQK_ERROR_HPP
#define EQK_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace eqk
{

enum class errc {
    rank_mismatch,
    non_primitive_ray,
    bad_face_intersection,
    dimension_mismatch,
    not_simplicial,
    rank_too_large,
    unbounded_polytope,
    not_smooth,
    not_full_dim,
    not_complete,
    no_integral_solution,
    division_by_zero,
    not_divisible,
    zero_conormal_character,
    localization_leak,
    not_nef,
    invalid_cartan,
    bad_index,
    not_dominant,
    not_reduced_word,
    non_generic_direction,
    negative_powers_survive,
    non_integral_constant_term,
    parse_error,
};

inline constexpr std::string_view errc_name(errc e) noexcept
{
    switch (e) {
        case errc::rank_mismatch: return "RankMismatch";
        case errc::non_primitive_ray: return "NonPrimitiveRay";
        case errc::bad_face_intersection: return "BadFaceIntersection";
        case errc::dimension_mismatch: return "DimensionMismatch";
        case errc::not_simplicial: return "NotSimplicial";
        case errc::rank_too_large: return "RankTooLarge";
        case errc::unbounded_polytope: return "UnboundedPolytope";
        case errc::not_smooth: return "NotSmooth";
        case errc::not_full_dim: return "NotFullDim";
        case errc::not_complete: return "NotComplete";
        case errc::no_integral_solution: return "NoIntegralSolution";
        case errc::division_by_zero: return "DivisionByZero";
        case errc::not_divisible: return "NotDivisible";
        case errc::zero_conormal_character: return "ZeroConormalCharacter";
        case errc::localization_leak: return "LocalizationLeak";
        case errc::not_nef: return "NotNef";
        case errc::invalid_cartan: return "InvalidCartan";
        case errc::bad_index: return "BadIndex";
        case errc::not_dominant: return "NotDominant";
        case errc::not_reduced_word: return "NotReducedWord";
        case errc::non_generic_direction: return "NonGenericDirection";
        case errc::negative_powers_survive: return "NegativePowersSurvive";
        case errc::non_integral_constant_term: return "NonIntegralConstantTerm";
        case errc::parse_error: return "ParseError";
    }
    return "Unknown";
}

// All library failures are reported through this type; code() identifies the
// failure kind, what() carries "<Kind>: <detail>".
class error : public std::runtime_error
{
public:
    error(errc code, const std::string &detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), m_code(code)
    {
    }

    [[nodiscard]] errc code() const noexcept
    {
        return m_code;
    }

private:
    errc m_code;
};

} // namespace eqk

#endif
