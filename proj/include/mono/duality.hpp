#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mono/error.hpp"
#include "mono/reconstruction.hpp"
#include "mono/star.hpp"

namespace mono {

// Cohomology operators act on functionals so that <m* φ, m v> = <φ, v>; in
// the dual basis that is the inverse transpose (m^t)^-1. Only defined without
// torsion.

template <CoefficientSpace Space>
map_t<Space> dualize_operator(const map_t<Space>& m) {
    Space s(source(m)), t(target(m));
    if (s.has_torsion() || t.has_torsion())
        throw TorsionPresent("dual monodromy needs torsion-free homology");
    if (!(s == t))
        throw ShapeMismatch("only automorphisms can be dualised");
    return inverse(make_map(t, s, m.matrix().transpose()));
}

template <CoefficientSpace Space>
struct CohomologyTuple {
    std::vector<map_t<Space>> operators; ///< m_1^*, ..., m_t^*
    map_t<Space> at_infinity;            ///< dualize(M∞) == m_t^* ∘ ... ∘ m_1^*
};

template <CoefficientSpace Space>
CohomologyTuple<Space> dualize_tuple(const MonodromyTuple<Space>& tuple) {
    CohomologyTuple<Space> out{{}, dualize_operator<Space>(compose_tuple(tuple))};
    for (const auto& op : tuple.operators())
        out.operators.push_back(dualize_operator<Space>(op.full()));
    return out;
}

struct DimensionChain {
    std::size_t inv_homology = 0;          ///< dim ∩ Ker(m_j - 1)
    std::size_t ker_minf_homology = 0;     ///< dim Ker(M∞ - 1)
    std::size_t ker_minf_cohomology = 0;   ///< dim Ker(M∞^* - 1)
    std::size_t inv_cohomology = 0;        ///< dim ∩ Ker(m_j^* - 1)
    std::vector<std::size_t> ker_local_homology;
    std::vector<std::size_t> ker_local_cohomology;
    /// Diagnostic only: codim ∩ Ker(m_j^* - 1) == min(n, Σ codim Ker(m_j^* - 1)).
    bool cohomology_kernels_in_general_position = false;

    bool holds() const {
        return inv_homology == ker_minf_homology && ker_minf_homology == ker_minf_cohomology &&
               ker_minf_cohomology >= inv_cohomology && ker_local_homology == ker_local_cohomology;
    }
};

template <FieldSpace Space>
DimensionChain dimension_chain(const MonodromyTuple<Space>& tuple) {
    const Space& total = tuple.decomposition()->total();
    const std::size_t n = coordinate_count(total);
    auto id = identity_map(total);
    auto co = dualize_tuple(tuple);

    DimensionChain chain;
    chain.inv_homology = invariant_subspace(tuple).size();
    chain.ker_minf_homology = rank(kernel(subtract(compose_tuple(tuple), id)).group);
    chain.ker_minf_cohomology = rank(kernel(subtract(co.at_infinity, id)).group);

    std::vector<typename map_t<Space>::matrix_type> stacked;
    std::size_t codim_sum = 0;
    for (std::size_t k = 0; k < tuple.size(); ++k) {
        chain.ker_local_homology.push_back(rank(kernel(subtract(tuple[k].full(), id)).group));
        auto defect = subtract(co.operators[k], id);
        auto dim = rank(kernel(defect).group);
        chain.ker_local_cohomology.push_back(dim);
        codim_sum += n - dim;
        stacked.push_back(defect.matrix());
    }
    if (stacked.empty()) {
        chain.inv_cohomology = n;
    } else {
        auto all = vstack(stacked.front().ring(), n, std::span<const typename map_t<Space>::matrix_type>(stacked));
        chain.inv_cohomology = n - rank(all);
    }
    chain.cohomology_kernels_in_general_position = n - chain.inv_cohomology == std::min(n, codim_sum);
    return chain;
}

} // namespace mono
