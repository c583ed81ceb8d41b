#pragma once

#include <cassert>
#include <cstddef>
#include <utility>
#include <vector>

#include "mono/error.hpp"
#include "mono/star.hpp"

namespace mono {

/// Recovers the unique tuple (m_1, ..., m_t) with m_t ∘ ... ∘ m_1 == m.
///
/// Step k reads block row k of m ∘ (m_{k-1} ∘ ... ∘ m_1)^-1: the later
/// operators m_{k+1}, ..., m_t never touch the first k components, so that
/// row is exactly the row of m_k. Throws NotRealizable(k) (one-based) when the
/// k-th diagonal block is not an automorphism.
template <CoefficientSpace Space>
MonodromyTuple<Space> reconstruct_tuple(const map_t<Space>& m, const DecompositionPtr<Space>& dec) {
    const Space& total = dec->total();
    if (!(Space(source(m)) == total) || !(Space(target(m)) == total))
        throw ShapeMismatch("operator does not act on the decomposition's total group");

    std::vector<BlockRowOperator<Space>> ops;
    ops.reserve(dec->size());
    // Running (m_{k-1} ∘ ... ∘ m_1)^-1, updated by one block-row inverse per step.
    auto prefix_inverse = identity_map(total);
    for (std::size_t k = 0; k < dec->size(); ++k) {
        auto row = m.matrix().block(dec->offset(k), 0, dec->width(k), m.matrix().cols()) * prefix_inverse.matrix();
        std::vector<map_t<Space>> blocks;
        for (std::size_t i = 0; i < dec->size(); ++i)
            blocks.push_back(
                make_map(dec->summand(i), dec->summand(k), row.block(0, dec->offset(i), dec->width(k), dec->width(i))));
        try {
            ops.emplace_back(dec, k, std::move(blocks));
        } catch (const DiagonalBlockNotInvertible&) {
            throw NotRealizable(k + 1);
        }
        prefix_inverse = ops.back().inverse().compose_before(prefix_inverse);
    }
    MonodromyTuple<Space> tuple(dec, std::move(ops));
    // Every diagonal block was invertible, so the factorisation is exact.
    assert(compose_tuple(tuple) == m);
    return tuple;
}

/// [Id, m_1, m_2 ∘ m_1, ..., m_t ∘ ... ∘ m_1].
template <CoefficientSpace Space>
std::vector<map_t<Space>> partial_products(const MonodromyTuple<Space>& tuple) {
    std::vector<map_t<Space>> out{identity_map(tuple.decomposition()->total())};
    for (const auto& op : tuple.operators())
        out.push_back(op.compose_after(out.back()));
    return out;
}

struct EigenPartialCheck {
    bool lhs; ///< M∞(v) == a·v
    bool rhs; ///< every partial product scales exactly the first k components by a
};

/// Computes both sides of the eigenvector characterisation independently.
template <CoefficientSpace Space>
EigenPartialCheck eigen_partial_check(const MonodromyTuple<Space>& tuple, const element_t<Space>& v,
                                      const scalar_t<Space>& a) {
    const auto& dec = *tuple.decomposition();
    const Space& total = dec.total();
    auto w = total.reduced(v);
    auto av = scale(total, a, w);

    bool lhs = mono::apply(compose_tuple(tuple), w) == av;

    bool rhs = true;
    auto current = w;
    for (std::size_t k = 0; k < tuple.size() && rhs; ++k) {
        current = tuple[k].apply(current);
        // Expected: (a v_1, ..., a v_k, v_{k+1}, ..., v_t).
        const std::size_t boundary = dec.offset(k) + dec.width(k);
        for (std::size_t i = 0; i < current.size(); ++i)
            if (current[i] != (i < boundary ? av[i] : w[i])) {
                rhs = false;
                break;
            }
    }
    return {lhs, rhs};
}

/// Generators of ∩_j Ker(m_j - Id), the invariants of the whole representation.
template <CoefficientSpace Space>
std::vector<element_t<Space>> invariant_subspace(const MonodromyTuple<Space>& tuple) {
    const auto& dec = *tuple.decomposition();
    // Only block row j of m_j - Id is nonzero, so stacking those rows gives a
    // map total -> V_1 + ... + V_t whose kernel is the intersection.
    std::vector<typename map_t<Space>::matrix_type> rows;
    for (const auto& op : tuple.operators()) {
        auto r = op.row_matrix();
        const std::size_t off = dec.offset(op.row());
        for (std::size_t k = 0; k < dec.width(op.row()); ++k)
            r(k, off + k) = r.ring().sub(r(k, off + k), r.ring().one());
        rows.push_back(std::move(r));
    }
    auto stacked = make_map(dec.total(), dec.total(),
                            vstack(rows.front().ring(), coordinate_count(dec.total()),
                                   std::span<const typename map_t<Space>::matrix_type>(rows)));
    return kernel(stacked).generators();
}

/// Generators of Ker(M∞ - Id).
template <CoefficientSpace Space>
std::vector<element_t<Space>> fixed_space_at_infinity(const MonodromyTuple<Space>& tuple) {
    auto m = compose_tuple(tuple);
    return kernel(subtract(m, identity_map(tuple.decomposition()->total()))).generators();
}

} // namespace mono
