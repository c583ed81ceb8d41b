#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mono/duality.hpp"
#include "mono/reconstruction.hpp"
#include "mono/seifert.hpp"
#include "mono/sequence_e.hpp"
#include "mono/star.hpp"

namespace mono {

enum class Provenance { stated, derived };

inline const char* to_string(Provenance p) { return p == Provenance::stated ? "stated" : "derived"; }

/// A checked statement attached to a fixture. `stated` facts are quoted from
/// the source example; `derived` ones are consequences or chosen witnesses.
struct Fact {
    std::string name;
    std::string statement;
    Provenance provenance;
    bool holds;
};

/// Three-cuspidal quartic x²y² + y²z² + x²z² - 2xyz(x+y+z) viewed as a map C^3 -> C.
struct QuarticExample {
    MonodromyTuple<DiagonalGroup> tuple;        ///< degree 1: V_{1,1} = H_1(F) = Z/3, m_{1,1} = -1
    std::vector<std::string> critical_values;   ///< {"0"}
    FgAbelianGroup compact_cohomology;          ///< H_c^4(F_0) = 0, F_0 irreducible
    FgAbelianGroup ker_previous;                ///< Ker(m_{0,1} - 1) on H̃_0(F) = 0, F connected
};

inline QuarticExample example_quartic() {
    auto z3 = DiagonalGroup::uniform(1, 3);
    auto dec = make_decomposition<DiagonalGroup>({z3}, 1);
    // The monodromy h = (ix, iy, iz) has order 4 and acts nontrivially on
    // Z/3; the only nontrivial automorphism of Z/3 is multiplication by -1.
    ModuleHom minus_one(z3, z3, IntMatrix::from_rows({}, {{-1}}));
    MonodromyTuple<DiagonalGroup> tuple(dec, {BlockRowOperator<DiagonalGroup>(dec, 0, {minus_one})});
    return {std::move(tuple), {"0"}, FgAbelianGroup{}, FgAbelianGroup{}};
}

/// Evaluates the fixture's attached statements through the generic modules.
inline std::vector<Fact> quartic_facts(const QuarticExample& ex) {
    std::vector<Fact> facts;
    const auto& dec = *ex.tuple.decomposition();
    const auto& op = ex.tuple[0];

    facts.push_back({"single_critical_value", "t = 1, b_1 = 0", Provenance::stated,
                     ex.tuple.size() == 1 && ex.critical_values == std::vector<std::string>{"0"}});
    facts.push_back({"homology_is_z3", "H_1(F) = Z/3", Provenance::stated,
                     dec.total().canonical() == FgAbelianGroup::cyclic(3)});
    facts.push_back({"local_monodromy_is_minus_one", "m_{1,1} acts as -1 = 2 on Z/3", Provenance::derived,
                     op.diagonal().matrix() == IntMatrix::from_rows({}, {{2}})});
    facts.push_back({"image_of_defect_is_z3", "Im(m_{1,1} - 1) = Z/3", Provenance::stated,
                     image(local_defect(op)).group == FgAbelianGroup::cyclic(3)});
    facts.push_back({"homology_monodromy_nontrivial", "M∞(f)_1 != Id", Provenance::stated,
                     !compose_tuple(ex.tuple).is_identity()});

    bool torsion_refused = false;
    try {
        (void)dualize_tuple(ex.tuple);
    } catch (const TorsionPresent&) {
        torsion_refused = true;
    }
    facts.push_back({"duality_refuses_torsion", "cohomology side is not the inverse transpose: torsion present",
                     Provenance::stated, torsion_refused});
    facts.push_back({"rational_shadow_trivial", "H_1(F; Q) = 0, so the rational (co)homology monodromy is Id",
                     Provenance::derived, dec.total().canonical().free_rank() == 0});

    CriticalValueDatum<DiagonalGroup> datum{op, ex.ker_previous, ex.compact_cohomology};
    auto report = sequence_e_constraints(datum);
    facts.push_back({"sequence_e_consistent", "H_c^4(F_0) = 0 is consistent with the exact sequence",
                     Provenance::stated, report.consistent && is_trivial(report.coker)});
    return facts;
}

/// Rank-2 witness that S = 0 does not force M∞ = Id when L is degenerate.
/// Only the qualitative facts come from the source example; L = 0 and the
/// particular unimodular M are a chosen witness.
inline SeifertDatum example_degenerate_seifert() {
    return make_seifert_datum(IntMatrix({}, 2, 2), IntMatrix::from_rows({}, {{1, 1}, {0, 1}}));
}

inline std::vector<Fact> degenerate_seifert_facts(const SeifertDatum& d) {
    std::vector<Fact> facts;
    facts.push_back({"intersection_form_zero", "S = 0", Provenance::stated, d.intersection.is_zero()});
    facts.push_back({"monodromy_nontrivial", "M∞(f)_1 != Id", Provenance::stated, !d.monodromy.is_identity()});
    bool degenerate = false;
    try {
        (void)monodromy_from_seifert(d.seifert, d.intersection);
    } catch (const DegenerateSeifertForm&) {
        degenerate = true;
    }
    facts.push_back({"seifert_form_degenerate", "L is degenerate, so M cannot be recovered from S",
                     Provenance::derived, degenerate});
    return facts;
}

} // namespace mono
