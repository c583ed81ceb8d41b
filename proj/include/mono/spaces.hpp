#pragma once

#include <concepts>

#include "mono/abelian.hpp"
#include "mono/vector_space.hpp"

namespace mono {

// Coefficient categories the monodromy layer is written against: finitely
// generated abelian groups (Z, Z/n, torsion summands) and vector spaces over
// Q or F_p. Both expose the same free-function surface (compose, inverse,
// kernel, ...), found by argument-dependent lookup.

template <class Space>
struct space_traits;

template <>
struct space_traits<DiagonalGroup> {
    using map_type = ModuleHom;
    using group_type = FgAbelianGroup;
    using element_type = DiagonalGroup::element_type;
    using scalar_type = mpz_class;
    static constexpr bool is_field = false;
};

template <FieldRing F>
struct space_traits<VectorSpace<F>> {
    using map_type = LinearMap<F>;
    using group_type = Dimension;
    using element_type = typename VectorSpace<F>::element_type;
    using scalar_type = typename F::value_type;
    static constexpr bool is_field = true;
};

template <class Space>
using map_t = typename space_traits<Space>::map_type;
template <class Space>
using element_t = typename space_traits<Space>::element_type;
template <class Space>
using scalar_t = typename space_traits<Space>::scalar_type;
template <class Space>
using group_t = typename space_traits<Space>::group_type;

template <class Space>
concept CoefficientSpace = requires { typename space_traits<Space>::map_type; };

template <class Space>
concept FieldSpace = CoefficientSpace<Space> && space_traits<Space>::is_field;

template <CoefficientSpace Space>
map_t<Space> negate(const map_t<Space>& f) {
    return make_map(Space(source(f)), Space(target(f)), -f.matrix());
}

} // namespace mono
