#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mono/error.hpp"
#include "mono/reconstruction.hpp"
#include "mono/star.hpp"

namespace mono {

// Exact sequence attached to the critical value b_j:
//
//   0 -> Im(m_{q,j} - 1) -> V_{q,j} -> H_c(F_{b_j}) -> Ker(m_{q-1,j} - 1) -> 0
//
// H_c(F_{b_j}) is the reduced compactly supported cohomology of the special
// fibre in degree 2n-q-1. It is never computed here: it enters as an
// abstract group and is checked against what the sequence forces.

template <CoefficientSpace Space>
struct CriticalValueDatum {
    BlockRowOperator<Space> local;      ///< m_{q,j}; its row is the index j
    group_t<Space> ker_previous;        ///< Ker(m_{q-1,j} - 1)
    group_t<Space> compact_cohomology;  ///< H_c(F_{b_j})

    std::size_t index() const { return local.row(); }
};

template <class Group>
struct SequenceEReport {
    Group coker;               ///< V_{q,j} / Im(m_{q,j} - 1)
    std::size_t rank_forced;   ///< rank(coker) + rank(ker_previous)
    bool consistent;
};

/// m_j - Id viewed as a map from the total group onto its only nonzero block row V_j.
template <CoefficientSpace Space>
map_t<Space> local_defect(const BlockRowOperator<Space>& op) {
    const auto& dec = *op.decomposition();
    auto r = op.row_matrix();
    const std::size_t off = dec.offset(op.row());
    for (std::size_t k = 0; k < dec.width(op.row()); ++k)
        r(k, off + k) = r.ring().sub(r(k, off + k), r.ring().one());
    return make_map(dec.total(), dec.summand(op.row()), std::move(r));
}

inline FgAbelianGroup split_extension(const FgAbelianGroup& a, const FgAbelianGroup& b) {
    DiagonalGroup parts[] = {DiagonalGroup(a), DiagonalGroup(b)};
    return direct_sum(std::span<const DiagonalGroup>(parts)).canonical();
}

inline Dimension split_extension(const Dimension& a, const Dimension& b) { return {a.value + b.value}; }

/// Over a field the sequence pins dim H_c exactly. Over Z the extension
/// 0 -> coker -> H_c -> ker -> 0 is not determined by ranks, so only the rank
/// and the triviality equivalence are checked.
template <CoefficientSpace Space>
SequenceEReport<group_t<Space>> sequence_e_constraints(const CriticalValueDatum<Space>& d) {
    auto coker = cokernel(local_defect(d.local)).group;
    const std::size_t forced = rank(coker) + rank(d.ker_previous);
    bool consistent = rank(d.compact_cohomology) == forced &&
                      is_trivial(d.compact_cohomology) == (is_trivial(coker) && is_trivial(d.ker_previous));
    return {std::move(coker), forced, consistent};
}

/// Builds the data list for a pair of tuples in degrees q and q-1, computing
/// each Ker(m_{q-1,j} - 1) from the degree q-1 tuple.
template <CoefficientSpace Space>
std::vector<CriticalValueDatum<Space>> make_critical_data(const MonodromyTuple<Space>& tuple_q,
                                                          const MonodromyTuple<Space>& tuple_qm1,
                                                          std::vector<group_t<Space>> compact_cohomology) {
    if (tuple_q.size() != tuple_qm1.size() || compact_cohomology.size() != tuple_q.size())
        throw InconsistentData("degree q and q-1 data must have one entry per critical value");
    std::vector<CriticalValueDatum<Space>> data;
    const auto& prev_total = tuple_qm1.decomposition()->total();
    for (std::size_t j = 0; j < tuple_q.size(); ++j)
        data.push_back({tuple_q[j], kernel(subtract(tuple_qm1[j].full(), identity_map(prev_total))).group,
                        std::move(compact_cohomology[j])});
    return data;
}

struct TrivialMonodromyReport {
    bool cond_i;     ///< M∞_q == Id and every H_c vanishes
    bool cond_ii;    ///< H_q == 0 and Ker(M∞_{q-1} - Id) == 0
    bool equivalent;
};

template <CoefficientSpace Space>
TrivialMonodromyReport trivial_monodromy_check(const MonodromyTuple<Space>& tuple_q, const MonodromyTuple<Space>& tuple_qm1,
                                   const std::vector<CriticalValueDatum<Space>>& data) {
    if (tuple_q.size() != tuple_qm1.size() || data.size() != tuple_q.size())
        throw InconsistentData("degree q and q-1 data must have one entry per critical value");
    const auto& prev_total = tuple_qm1.decomposition()->total();
    for (std::size_t j = 0; j < data.size(); ++j) {
        const auto& d = data[j];
        const std::string at = "critical value " + std::to_string(j + 1);
        if (d.index() != j || !(d.local == tuple_q[j]))
            throw InconsistentData(at + ": local operator differs from the degree q tuple");
        auto ker = kernel(subtract(tuple_qm1[j].full(), identity_map(prev_total))).group;
        if (!(ker == d.ker_previous))
            throw InconsistentData(at + ": declared Ker(m_{q-1,j} - 1) is " + d.ker_previous.to_string() +
                                   " but the degree q-1 tuple gives " + ker.to_string());
        if (!sequence_e_constraints(d).consistent)
            throw InconsistentData(at + ": H_c = " + d.compact_cohomology.to_string() +
                                   " violates the exact sequence");
    }

    bool h_c_vanish = true;
    for (const auto& d : data)
        h_c_vanish = h_c_vanish && is_trivial(d.compact_cohomology);
    const auto& total_q = tuple_q.decomposition()->total();
    bool cond_i = compose_tuple(tuple_q).is_identity() && h_c_vanish;
    bool cond_ii = coordinate_count(total_q) == 0 &&
                   is_trivial(kernel(subtract(compose_tuple(tuple_qm1), identity_map(prev_total))).group);
    return {cond_i, cond_ii, cond_i == cond_ii};
}

} // namespace mono
