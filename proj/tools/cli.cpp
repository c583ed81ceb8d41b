#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "mono/corpus.hpp"
#include "mono/duality.hpp"
#include "mono/generator.hpp"
#include "mono/io.hpp"
#include "mono/reconstruction.hpp"
#include "mono/seifert.hpp"
#include "mono/sequence_e.hpp"
#include "mono/star.hpp"

namespace mono::cli {
namespace {

struct Options {
    std::string command;
    std::string input = "-";
    std::string ring;
    std::uint64_t seed = 1;
    bool json = false;
    bool pretty = false;

    // gen
    std::size_t t = 0;
    std::vector<std::size_t> sizes;
    std::vector<std::size_t> prev_sizes;
    unsigned degree = 1;
    bool torsion = false;
    std::string kind = "tuple";

    // example
    std::string example;
};

struct Io {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
    bool pretty;

    void emit(const Json& j) const { out << dump_json(j, pretty); }
};

/// Domain refusal: reported as JSON on stdout with exit code 3.
int refuse(const Io& io, const std::string& command, const char* kind, const std::string& message,
           std::optional<std::size_t> index = std::nullopt) {
    Json j{{"command", command}, {"error", kind}};
    if (index)
        j["index"] = *index;
    j["message"] = message;
    io.emit(j);
    io.err << "mono " << command << ": " << message << "\n";
    return refused;
}

template <class Fn>
int with_space(const RingDescriptor& ring, Fn&& fn) {
    switch (ring.kind()) {
    case RingDescriptor::Kind::integers:
    case RingDescriptor::Kind::integers_mod:
        return fn(make_codec<DiagonalGroup>(ring));
    case RingDescriptor::Kind::rationals:
        return fn(make_codec<VectorSpace<Rationals>>(ring));
    case RingDescriptor::Kind::prime_field:
        return fn(make_codec<VectorSpace<PrimeField>>(ring));
    }
    return malformed_input;
}

template <class Space, class Element>
Json elements_to_json(const Codec<Space>& codec, const std::vector<Element>& vs) {
    Json out = Json::array();
    for (const auto& v : vs)
        out.push_back(element_to_json(codec.ring(), v));
    return out;
}

template <class Space>
DecompositionPtr<Space> read_decomposition(const Codec<Space>& codec, const Json& j, unsigned degree) {
    return decomposition_from_json(codec, detail::field(j, "decomposition", "instance"), degree, "decomposition");
}

template <class Space>
map_t<Space> read_total_matrix(const Codec<Space>& codec, const Json& j, const StarDecomposition<Space>& dec) {
    const std::size_t n = coordinate_count(dec.total());
    return make_map(dec.total(), dec.total(), matrix_from_json(codec.ring(), j.at("matrix"), n, n, "matrix"));
}

/// The tuple of a "tuple" payload, or the reconstruction of a "matrix" payload.
template <class Space>
MonodromyTuple<Space> read_tuple(const Codec<Space>& codec, const Json& j, const InstanceHeader& h) {
    auto dec = read_decomposition(codec, j, h.degree);
    if (h.payload == "tuple")
        return tuple_from_json(codec, j.at("tuple"), dec, "tuple");
    if (h.payload == "matrix")
        return reconstruct_tuple(read_total_matrix(codec, j, *dec), dec);
    throw ParseError("this command needs a \"tuple\" or \"matrix\" payload, got \"" + h.payload + "\"");
}

template <class Space>
int cmd_compose(const Codec<Space>& codec, const Json& j, const InstanceHeader& h, const Io& io) {
    if (h.payload != "tuple")
        throw ParseError("compose needs a \"tuple\" payload");
    auto tuple = read_tuple(codec, j, h);
    io.emit(matrix_instance(codec, *tuple.decomposition(), compose_tuple(tuple)));
    return success;
}

template <class Space>
int cmd_reconstruct(const Codec<Space>& codec, const Json& j, const InstanceHeader& h, const Io& io) {
    io.emit(tuple_instance(codec, read_tuple(codec, j, h)));
    return success;
}

template <class Space>
bool eigen_checks_pass(const Codec<Space>& codec, const MonodromyTuple<Space>& tuple) {
    const Space& total = tuple.decomposition()->total();
    auto minf = compose_tuple(tuple);
    for (int a : {0, 1, -1}) {
        auto scalar = codec.ring().from_integer(a);
        auto shifted = subtract(minf, make_map(total, total, scalar * identity_map(total).matrix()));
        auto vectors = kernel(shifted).generators();
        for (std::size_t i = 0; i < coordinate_count(total); ++i)
            vectors.push_back(total.basis_vector(i));
        for (const auto& v : vectors) {
            auto c = eigen_partial_check(tuple, v, scalar);
            if (c.lhs != c.rhs)
                return false;
        }
        for (const auto& v : kernel(shifted).generators())
            if (!eigen_partial_check(tuple, v, scalar).lhs)
                return false;
    }
    return true;
}

Json chain_to_json(const DimensionChain& c) {
    return Json{{"inv_homology", c.inv_homology},
                {"ker_minf_homology", c.ker_minf_homology},
                {"ker_minf_cohomology", c.ker_minf_cohomology},
                {"inv_cohomology", c.inv_cohomology},
                {"ker_local_homology", c.ker_local_homology},
                {"ker_local_cohomology", c.ker_local_cohomology},
                {"cohomology_kernels_in_general_position", c.cohomology_kernels_in_general_position},
                {"holds", c.holds()}};
}

template <class Space>
int cmd_verify(const Codec<Space>& codec, const Json& j, const InstanceHeader& h, const Io& io) {
    auto tuple = read_tuple(codec, j, h);
    const auto& dec = tuple.decomposition();
    const Space& total = dec->total();
    auto minf = compose_tuple(tuple);

    Json checks = Json::array();
    bool all = true;
    auto check = [&](const char* name, bool pass) {
        checks.push_back(Json{{"name", name}, {"pass", pass}});
        all = all && pass;
    };

    check("reconstruct_roundtrip", reconstruct_tuple(minf, dec) == tuple);
    bool shape = true;
    for (std::size_t k = 0; k < tuple.size(); ++k)
        shape = shape && picard_defect(*dec, tuple[k].full(), k).is_blockrow;
    check("block_row_shape", shape);
    auto loop = loop_at_infinity(tuple.size());
    check("word_evaluation", evaluate_word(tuple, loop) == minf &&
                                 evaluate_word(tuple, loop * loop.inverse()).is_identity());
    check("invariant_identity", submodule_equal(invariant_subspace(tuple), fixed_space_at_infinity(tuple), total));
    check("eigen_partial", eigen_checks_pass(codec, tuple));

    Json notes{{"minf_is_identity", minf.is_identity()}};
    if constexpr (FieldSpace<Space>) {
        auto chain = dimension_chain(tuple);
        check("dimension_chain", chain.holds());
        notes["dimension_chain"] = chain_to_json(chain);
    } else {
        notes["total"] = group_to_json(total.canonical());
        notes["torsion"] = total.has_torsion();
    }

    io.emit(Json{{"command", "verify"}, {"checks", std::move(checks)}, {"notes", std::move(notes)}, {"pass", all}});
    return all ? success : verification_failed;
}

template <class Space>
int cmd_invariants(const Codec<Space>& codec, const Json& j, const InstanceHeader& h, const Io& io) {
    auto tuple = read_tuple(codec, j, h);
    const Space& total = tuple.decomposition()->total();
    auto id = identity_map(total);
    auto fixed = kernel(subtract(compose_tuple(tuple), id));
    auto inv = invariant_subspace(tuple);

    Json local = Json::array();
    for (const auto& op : tuple.operators())
        local.push_back(group_to_json(kernel(subtract(op.full(), id)).group));

    Json out{{"command", "invariants"},
             {"ker_minf_minus_one", Json{{"group", group_to_json(fixed.group)},
                                         {"generators", elements_to_json(codec, fixed.generators())}}},
             {"invariant_subspace", Json{{"generators", elements_to_json(codec, inv)}}},
             {"coincide", submodule_equal(inv, fixed.generators(), total)},
             {"ker_local_minus_one", std::move(local)}};
    if constexpr (FieldSpace<Space>)
        out["dimension_chain"] = chain_to_json(dimension_chain(tuple));
    io.emit(out);
    return success;
}

template <class Space>
int cmd_dualize(const Codec<Space>& codec, const Json& j, const InstanceHeader& h, const Io& io) {
    auto tuple = read_tuple(codec, j, h);
    auto co = dualize_tuple(tuple);
    Json ops = Json::array();
    auto product = identity_map(tuple.decomposition()->total());
    for (const auto& m : co.operators) {
        ops.push_back(matrix_to_json(m.matrix()));
        product = compose(m, product);
    }
    (void)codec;
    io.emit(Json{{"command", "dualize"},
                 {"cohomology", std::move(ops)},
                 {"at_infinity", matrix_to_json(co.at_infinity.matrix())},
                 {"composition_matches", product == co.at_infinity}});
    return success;
}

template <class Space>
MonodromyTuple<Space> read_degree_part(const Codec<Space>& codec, const Json& part, unsigned degree,
                                       const std::string& where) {
    detail::check_keys(part, {"decomposition", "tuple"}, where);
    auto dec = decomposition_from_json(codec, detail::field(part, "decomposition", where), degree,
                                       where + ": decomposition");
    return tuple_from_json(codec, detail::field(part, "tuple", where), dec, where + ": tuple");
}

template <class Space>
int cmd_seqcheck(const Codec<Space>& codec, const Json& j, const InstanceHeader& h, const Io& io) {
    if (h.payload != "sequence_e")
        throw ParseError("seqcheck needs a \"sequence_e\" payload");
    if (h.degree == 0)
        throw ParseError("seqcheck needs \"degree\" q >= 1");
    const Json& s = j.at("sequence_e");
    detail::check_keys(s, {"degree_q", "degree_qm1", "compact_cohomology"}, "sequence_e");
    auto tuple_q = read_degree_part(codec, detail::field(s, "degree_q", "sequence_e"), h.degree, "degree_q");
    auto tuple_qm1 =
        read_degree_part(codec, detail::field(s, "degree_qm1", "sequence_e"), h.degree - 1, "degree_qm1");
    const Json& hc = detail::array_field(s, "compact_cohomology", "sequence_e");
    std::vector<group_t<Space>> groups;
    for (std::size_t k = 0; k < hc.size(); ++k)
        groups.push_back(codec.group_from_json(hc[k], "compact_cohomology " + std::to_string(k + 1)));
    if (tuple_q.size() != tuple_qm1.size() || groups.size() != tuple_q.size())
        throw ParseError("sequence_e: degree q, degree q-1 and compact_cohomology must all have " +
                         std::to_string(tuple_q.size()) + " entries");

    auto data = make_critical_data(tuple_q, tuple_qm1, groups);
    Json rows = Json::array();
    bool consistent = true;
    for (const auto& d : data) {
        auto r = sequence_e_constraints(d);
        consistent = consistent && r.consistent;
        rows.push_back(Json{{"index", d.index() + 1},
                            {"coker", group_to_json(r.coker)},
                            {"ker_previous", group_to_json(d.ker_previous)},
                            {"compact_cohomology", group_to_json(d.compact_cohomology)},
                            {"rank_forced", r.rank_forced},
                            {"consistent", r.consistent}});
    }
    Json out{{"command", "seqcheck"}, {"data", std::move(rows)}, {"consistent", consistent}};
    bool pass = consistent;
    if (consistent) {
        auto b = trivial_monodromy_check(tuple_q, tuple_qm1, data);
        out["trivial_monodromy_criterion"] =
            Json{{"cond_i", b.cond_i}, {"cond_ii", b.cond_ii}, {"equivalent", b.equivalent}};
        pass = b.equivalent;
    }
    out["pass"] = pass;
    io.emit(out);
    return pass ? success : verification_failed;
}

int cmd_seifert(const RingDescriptor& ring, const Json& j, const InstanceHeader& h, const Io& io) {
    if (h.payload != "seifert")
        throw ParseError("seifert needs a \"seifert\" payload");
    if (ring.kind() != RingDescriptor::Kind::integers)
        throw ParseError("Seifert forms are integral: use ring Z");
    const Json& s = j.at("seifert");
    detail::check_keys(s, {"L", "M", "S"}, "seifert");
    Integers z;
    auto l = square_matrix_from_json(z, detail::field(s, "L", "seifert"), "seifert.L");
    if (s.contains("M") == s.contains("S"))
        throw ParseError("seifert: give exactly one of \"M\" and \"S\"");

    if (s.contains("M")) {
        auto m = matrix_from_json(z, s.at("M"), l.rows(), l.cols(), "seifert.M");
        SeifertDatum d = make_seifert_datum(l, m);
        auto sym = symmetry_report(d.intersection);
        bool degenerate = sgn(determinant(d.seifert)) == 0;
        io.emit(Json{{"command", "seifert"},
                     {"S", matrix_to_json(d.intersection)},
                     {"seifert_degenerate", degenerate},
                     {"monodromy_is_identity", d.monodromy.is_identity()},
                     {"intersection_zero", d.intersection.is_zero()},
                     {"zero_form_nontrivial_monodromy", d.intersection.is_zero() && !d.monodromy.is_identity()},
                     {"symmetry", Json{{"symmetric", sym.symmetric}, {"antisymmetric", sym.antisymmetric}}}});
        return success;
    }
    auto sm = matrix_from_json(z, s.at("S"), l.rows(), l.cols(), "seifert.S");
    auto r = monodromy_from_seifert(l, sm);
    io.emit(Json{{"command", "seifert"},
                 {"M", matrix_to_json(r.monodromy)},
                 {"integral", r.integral},
                 {"unimodular", r.unimodular}});
    return success;
}

std::vector<std::size_t> gen_sizes(const Options& o) {
    auto sizes = o.sizes;
    if (sizes.empty())
        sizes.assign(o.t ? o.t : 2, 2);
    if (o.t && sizes.size() != o.t)
        throw ParseError("--t " + std::to_string(o.t) + " disagrees with " + std::to_string(sizes.size()) +
                         " entries in --sizes");
    return sizes;
}

template <class Space>
DecompositionPtr<Space> gen_decomposition(const Codec<Space>& codec, Random& rng, const std::vector<std::size_t>& sizes,
                                          unsigned degree, bool torsion) {
    std::vector<Space> summands;
    for (auto s : sizes) {
        if constexpr (std::is_same_v<Space, DiagonalGroup>) {
            if (codec.modular())
                summands.push_back(DiagonalGroup::uniform(s, codec.descriptor.modulus()));
            else
                summands.push_back(torsion ? random_torsion_summand(rng, s) : DiagonalGroup::free(s));
        } else {
            summands.push_back(Space{codec.field, s});
        }
    }
    return make_decomposition<Space>(std::move(summands), degree);
}

template <class Space>
int cmd_gen(const Codec<Space>& codec, const Options& o, const Io& io) {
    if (o.torsion && codec.descriptor.kind() != RingDescriptor::Kind::integers)
        throw ParseError("--torsion only applies to ring Z");
    Random rng(o.seed);
    auto sizes = gen_sizes(o);
    if (o.kind == "tuple") {
        auto dec = gen_decomposition(codec, rng, sizes, o.degree, o.torsion);
        io.emit(tuple_instance(codec, random_tuple(rng, dec)));
        return success;
    }
    if (o.degree == 0)
        throw ParseError("--kind sequence_e needs --degree >= 1");
    auto prev = o.prev_sizes.empty() ? sizes : o.prev_sizes;
    if (prev.size() != sizes.size())
        throw ParseError("--prev-sizes must have as many entries as --sizes");
    auto tuple_q = random_tuple(rng, gen_decomposition(codec, rng, sizes, o.degree, o.torsion));
    auto tuple_qm1 = random_tuple(rng, gen_decomposition(codec, rng, prev, o.degree - 1, o.torsion));

    // Choose the split extension, which the sequence always permits.
    Json hc = Json::array();
    for (std::size_t k = 0; k < tuple_q.size(); ++k) {
        auto coker = cokernel(local_defect(tuple_q[k])).group;
        const Space& prev_total = tuple_qm1.decomposition()->total();
        auto ker = kernel(subtract(tuple_qm1[k].full(), identity_map(prev_total))).group;
        hc.push_back(group_to_json(split_extension(coker, ker)));
    }
    Json out = instance_skeleton(codec.descriptor, o.degree);
    out["sequence_e"] = Json{
        {"degree_q", Json{{"decomposition", decomposition_to_json(codec, *tuple_q.decomposition())},
                          {"tuple", tuple_to_json(tuple_q)}}},
        {"degree_qm1", Json{{"decomposition", decomposition_to_json(codec, *tuple_qm1.decomposition())},
                            {"tuple", tuple_to_json(tuple_qm1)}}},
        {"compact_cohomology", std::move(hc)}};
    io.emit(out);
    return success;
}

Json facts_to_json(const std::vector<Fact>& facts) {
    Json out = Json::array();
    for (const auto& f : facts)
        out.push_back(Json{{"name", f.name},
                           {"statement", f.statement},
                           {"provenance", to_string(f.provenance)},
                           {"holds", f.holds}});
    return out;
}

int cmd_example(const Options& o, const Io& io) {
    auto codec = make_codec<DiagonalGroup>(RingDescriptor::integers());
    if (o.example == "quartic" || o.example == "quartic-sequence") {
        auto ex = example_quartic();
        Json out;
        if (o.example == "quartic") {
            out = tuple_instance(codec, ex.tuple);
        } else {
            // Degree q-1 = 0: reduced H_0 of the connected generic fibre is 0.
            auto dec0 = make_decomposition<DiagonalGroup>({DiagonalGroup::free(0)}, 0);
            out = instance_skeleton(codec.descriptor, 1);
            out["sequence_e"] = Json{
                {"degree_q", Json{{"decomposition", decomposition_to_json(codec, *ex.tuple.decomposition())},
                                  {"tuple", tuple_to_json(ex.tuple)}}},
                {"degree_qm1", Json{{"decomposition", decomposition_to_json(codec, *dec0)},
                                    {"tuple", tuple_to_json(MonodromyTuple<DiagonalGroup>::identity(dec0))}}},
                {"compact_cohomology", Json::array({group_to_json(ex.compact_cohomology)})}};
        }
        out["notes"] = Json{{"critical_values", ex.critical_values}, {"facts", facts_to_json(quartic_facts(ex))}};
        io.emit(out);
        return success;
    }
    if (o.example == "degenerate-seifert") {
        auto d = example_degenerate_seifert();
        Json out = instance_skeleton(codec.descriptor, 1);
        out["seifert"] = Json{{"L", matrix_to_json(d.seifert)}, {"M", matrix_to_json(d.monodromy)}};
        out["notes"] = Json{{"facts", facts_to_json(degenerate_seifert_facts(d))}};
        io.emit(out);
        return success;
    }
    throw ParseError("unknown example '" + o.example + "' (quartic, quartic-sequence, degenerate-seifert)");
}

std::string read_input(const Options& o, std::istream& in) {
    std::ostringstream buf;
    if (o.input == "-") {
        buf << in.rdbuf();
    } else {
        std::ifstream f(o.input);
        if (!f)
            throw ParseError("cannot open " + o.input);
        buf << f.rdbuf();
    }
    return buf.str();
}

int dispatch(const Options& o, const Io& io) {
    if (o.command == "example")
        return cmd_example(o, io);
    if (o.command == "gen") {
        auto ring = o.ring.empty() ? RingDescriptor::rationals() : RingDescriptor::parse(o.ring);
        return with_space(ring, [&](const auto& codec) { return cmd_gen(codec, o, io); });
    }

    Json j = parse_json(read_input(o, io.in));
    auto h = read_header(j);
    if (!o.ring.empty())
        h.ring = RingDescriptor::parse(o.ring);
    if (o.command == "seifert")
        return cmd_seifert(h.ring, j, h, io);
    return with_space(h.ring, [&](const auto& codec) {
        if (o.command == "compose")
            return cmd_compose(codec, j, h, io);
        if (o.command == "reconstruct")
            return cmd_reconstruct(codec, j, h, io);
        if (o.command == "verify")
            return cmd_verify(codec, j, h, io);
        if (o.command == "invariants")
            return cmd_invariants(codec, j, h, io);
        if (o.command == "dualize")
            return cmd_dualize(codec, j, h, io);
        return cmd_seqcheck(codec, j, h, io);
    });
}

void add_output_flags(CLI::App* sub, Options& o) {
    auto* json = sub->add_flag("--json", o.json, "Compact JSON output (default)");
    sub->add_flag("--pretty", o.pretty, "Indented JSON output")->excludes(json);
}

void add_input_options(CLI::App* sub, Options& o) {
    sub->add_option("--in", o.input, "Instance file, '-' for stdin")->capture_default_str();
    sub->add_option("--ring", o.ring, "Reinterpret the instance over Q, Z, Fp:<p> or Zn:<n>");
    add_output_flags(sub, o);
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app("Exact monodromy representations over a star of generators", "mono");
    app.require_subcommand(1);

    struct Described {
        const char* name;
        const char* help;
    };
    for (auto [name, help] : {Described{"compose", "Monodromy at infinity of a tuple (prints an instance with a matrix)"},
                              Described{"reconstruct", "Recover the tuple from a matrix on the star decomposition"},
                              Described{"verify", "Check the structural identities of a tuple"},
                              Described{"invariants", "Invariants and fixed vectors of the representation"},
                              Described{"dualize", "Cohomology operators via the inverse transpose"},
                              Described{"seqcheck", "Check compactly supported cohomology against the local sequence"},
                              Described{"seifert", "Seifert form, monodromy and intersection form"}}) {
        auto* sub = app.add_subcommand(name, help);
        add_input_options(sub, o);
    }

    auto* gen = app.add_subcommand("gen", "Random instance from a seeded generator");
    gen->add_option("--ring", o.ring, "Q, Z, Fp:<p> or Zn:<n>")->default_str("Q");
    gen->add_option("--seed", o.seed, "Generator seed")->capture_default_str();
    gen->add_option("--t", o.t, "Number of summands");
    gen->add_option("--sizes", o.sizes, "Summand sizes, e.g. 2,2,1")->delimiter(',');
    gen->add_option("--prev-sizes", o.prev_sizes, "Degree q-1 summand sizes for --kind sequence_e")->delimiter(',');
    gen->add_option("--degree", o.degree, "Homological degree q")->capture_default_str();
    gen->add_flag("--torsion", o.torsion, "Z summands with torsion");
    gen->add_option("--kind", o.kind, "tuple or sequence_e")
        ->check(CLI::IsMember({"tuple", "sequence_e"}))
        ->capture_default_str();
    add_output_flags(gen, o);

    auto* example = app.add_subcommand("example", "Print a built-in fixture");
    example->add_option("name", o.example, "quartic, quartic-sequence or degenerate-seifert")->required();
    add_output_flags(example, o);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? success : malformed_input;
    }
    for (auto* sub : app.get_subcommands())
        o.command = sub->get_name();

    Io io{in, out, err, o.pretty};
    try {
        return dispatch(o, io);
    } catch (const NotRealizable& e) {
        return refuse(io, o.command, "NotRealizable", e.what(), e.index());
    } catch (const TorsionPresent& e) {
        return refuse(io, o.command, "TorsionPresent", e.what());
    } catch (const DegenerateSeifertForm& e) {
        return refuse(io, o.command, "DegenerateSeifertForm", e.what());
    } catch (const InconsistentData& e) {
        err << "mono " << o.command << ": " << e.what() << "\n";
        return verification_failed;
    } catch (const std::exception& e) {
        err << "mono " << o.command << ": " << e.what() << "\n";
        return malformed_input;
    }
}

} // namespace mono::cli
