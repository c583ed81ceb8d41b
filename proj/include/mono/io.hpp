#pragma once

#include <json.hpp>

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mono/abelian.hpp"
#include "mono/error.hpp"
#include "mono/ring.hpp"
#include "mono/spaces.hpp"
#include "mono/star.hpp"
#include "mono/vector_space.hpp"

namespace mono {

// Instance files are JSON objects:
//
//   {"schema": 1, "ring": "Q", "degree": 1,
//    "decomposition": [{"dim": 2}, {"dim": 1}],
//    "tuple": [{"row": 1, "blocks": [[["1","0"],["0","1"]], [["3"],["1/2"]]]}, ...]}
//
// Scalars are decimal strings ("-3", "2/5"); plain JSON integers are accepted
// on input. Exactly one payload key is present: "tuple", "matrix", "seifert"
// or "sequence_e". Row indices in files are 1-based.

using Json = nlohmann::ordered_json;

/// Malformed or ill-typed input.
class ParseError : public Error {
public:
    using Error::Error;
};

inline constexpr int schema_version = 1;

namespace detail {

inline const Json& field(const Json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key))
        throw ParseError(where + ": missing \"" + key + "\"");
    return obj.at(key);
}

inline const Json& array_field(const Json& obj, const char* key, const std::string& where) {
    const Json& v = field(obj, key, where);
    if (!v.is_array())
        throw ParseError(where + ": \"" + key + "\" must be an array");
    return v;
}

inline std::size_t count_field(const Json& obj, const char* key, const std::string& where) {
    const Json& v = field(obj, key, where);
    if (!v.is_number_unsigned())
        throw ParseError(where + ": \"" + key + "\" must be a nonnegative integer");
    return v.get<std::size_t>();
}

inline std::string scalar_text(const Json& v, const std::string& where) {
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_number_integer())
        return v.dump();
    throw ParseError(where + ": scalar must be a string or an integer");
}

inline void check_keys(const Json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!obj.is_object())
        throw ParseError(where + ": expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : obj.items())
        if (!ok.count(key))
            throw ParseError(where + ": unexpected key \"" + key + "\"");
}

template <CoefficientRing R>
typename R::value_type parse_scalar(const R& ring, const Json& v, const std::string& where) {
    auto text = scalar_text(v, where);
    try {
        return ring.parse(text);
    } catch (const InvalidArgument& e) {
        throw ParseError(where + ": " + e.what());
    } catch (const NotInvertible& e) {
        throw ParseError(where + ": " + e.what());
    }
}

} // namespace detail

template <CoefficientRing R>
Json matrix_to_json(const Matrix<R>& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(m.ring().format(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

/// Reads a rows x cols matrix. A 0 x k matrix is written [] and an n x 0
/// matrix as n empty rows.
template <CoefficientRing R>
Matrix<R> matrix_from_json(const R& ring, const Json& j, std::size_t rows, std::size_t cols, const std::string& where) {
    if (!j.is_array() || j.size() != rows)
        throw ParseError(where + ": expected a matrix with " + std::to_string(rows) + " rows");
    Matrix<R> m(ring, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const Json& row = j[i];
        if (!row.is_array() || row.size() != cols)
            throw ParseError(where + ": row " + std::to_string(i + 1) + " must have " + std::to_string(cols) +
                             " entries");
        for (std::size_t c = 0; c < cols; ++c)
            m.set(i, c, detail::parse_scalar(ring, row[c], where));
    }
    return m;
}

/// Square matrix whose size is read from the data.
template <CoefficientRing R>
Matrix<R> square_matrix_from_json(const R& ring, const Json& j, const std::string& where) {
    if (!j.is_array())
        throw ParseError(where + ": expected a matrix");
    return matrix_from_json(ring, j, j.size(), j.size(), where);
}

template <class Element, class Ring>
Json element_to_json(const Ring& ring, const Element& v) {
    Json out = Json::array();
    for (const auto& x : v)
        out.push_back(ring.format(x));
    return out;
}

inline Json group_to_json(const FgAbelianGroup& g) {
    Json torsion = Json::array();
    for (const auto& d : g.invariant_factors())
        torsion.push_back(d.get_str());
    return Json{{"free_rank", g.free_rank()}, {"torsion", std::move(torsion)}};
}

inline Json group_to_json(const Dimension& d) { return Json{{"dim", d.value}}; }

inline FgAbelianGroup fg_group_from_json(const Json& j, const std::string& where) {
    detail::check_keys(j, {"free_rank", "torsion"}, where);
    std::vector<mpz_class> factors;
    if (j.contains("torsion")) {
        for (const auto& d : detail::array_field(j, "torsion", where)) {
            try {
                factors.push_back(parse_integer(detail::scalar_text(d, where)));
            } catch (const InvalidArgument& e) {
                throw ParseError(where + ": " + e.what());
            }
        }
    }
    std::size_t free_rank = j.contains("free_rank") ? detail::count_field(j, "free_rank", where) : 0;
    try {
        return FgAbelianGroup(free_rank, std::move(factors));
    } catch (const InvalidArgument& e) {
        throw ParseError(where + ": " + e.what());
    }
}

/// Ring-specific reading and writing of summands, groups and scalars.
template <class Space>
struct Codec;

template <FieldRing F>
struct Codec<VectorSpace<F>> {
    using Space = VectorSpace<F>;
    using Ring = F;

    RingDescriptor descriptor;
    F field;

    const F& ring() const { return field; }

    Space summand_from_json(const Json& j, const std::string& where) const {
        detail::check_keys(j, {"dim"}, where);
        return Space{field, detail::count_field(j, "dim", where)};
    }
    Json summand_to_json(const Space& v) const { return Json{{"dim", v.dim}}; }

    Dimension group_from_json(const Json& j, const std::string& where) const {
        detail::check_keys(j, {"dim"}, where);
        return {detail::count_field(j, "dim", where)};
    }
};

/// Z summands are written in invariant-factor form; Z/n summands are free
/// (Z/n)-modules written by their rank.
template <>
struct Codec<DiagonalGroup> {
    using Space = DiagonalGroup;
    using Ring = Integers;

    RingDescriptor descriptor;

    Integers ring() const { return {}; }
    bool modular() const { return descriptor.kind() == RingDescriptor::Kind::integers_mod; }

    DiagonalGroup summand_from_json(const Json& j, const std::string& where) const {
        if (modular()) {
            detail::check_keys(j, {"dim"}, where);
            return DiagonalGroup::uniform(detail::count_field(j, "dim", where), descriptor.modulus());
        }
        return DiagonalGroup(fg_group_from_json(j, where));
    }

    Json summand_to_json(const DiagonalGroup& g) const {
        if (modular())
            return Json{{"dim", g.size()}};
        auto canonical = g.canonical();
        if (!(DiagonalGroup(canonical) == g))
            throw InvalidArgument("summand " + canonical.to_string() + " is not in invariant-factor coordinates");
        return group_to_json(canonical);
    }

    FgAbelianGroup group_from_json(const Json& j, const std::string& where) const {
        return fg_group_from_json(j, where);
    }
};

template <class Space>
Codec<Space> make_codec(const RingDescriptor& ring);

template <>
inline Codec<DiagonalGroup> make_codec<DiagonalGroup>(const RingDescriptor& ring) {
    return {ring};
}

template <>
inline Codec<VectorSpace<Rationals>> make_codec<VectorSpace<Rationals>>(const RingDescriptor& ring) {
    return {ring, Rationals{}};
}

template <>
inline Codec<VectorSpace<PrimeField>> make_codec<VectorSpace<PrimeField>>(const RingDescriptor& ring) {
    return {ring, PrimeField(ring.modulus())};
}

template <class Space>
Json decomposition_to_json(const Codec<Space>& codec, const StarDecomposition<Space>& dec) {
    Json out = Json::array();
    for (std::size_t i = 0; i < dec.size(); ++i)
        out.push_back(codec.summand_to_json(dec.summand(i)));
    return out;
}

template <class Space>
DecompositionPtr<Space> decomposition_from_json(const Codec<Space>& codec, const Json& j, unsigned degree,
                                                const std::string& where) {
    if (!j.is_array())
        throw ParseError(where + ": decomposition must be an array of summands");
    std::vector<Space> summands;
    for (std::size_t i = 0; i < j.size(); ++i)
        summands.push_back(codec.summand_from_json(j[i], where + ": summand " + std::to_string(i + 1)));
    return make_decomposition<Space>(std::move(summands), degree);
}

template <class Space>
Json tuple_to_json(const MonodromyTuple<Space>& tuple) {
    Json out = Json::array();
    for (const auto& op : tuple.operators()) {
        Json blocks = Json::array();
        for (const auto& b : op.blocks())
            blocks.push_back(matrix_to_json(b.matrix()));
        out.push_back(Json{{"row", op.row() + 1}, {"blocks", std::move(blocks)}});
    }
    return out;
}

template <class Space>
MonodromyTuple<Space> tuple_from_json(const Codec<Space>& codec, const Json& j, const DecompositionPtr<Space>& dec,
                                      const std::string& where) {
    if (!j.is_array() || j.size() != dec->size())
        throw ParseError(where + ": tuple must list one operator per summand (" + std::to_string(dec->size()) + ")");
    std::vector<BlockRowOperator<Space>> ops;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string at = where + ": operator " + std::to_string(k + 1);
        detail::check_keys(j[k], {"row", "blocks"}, at);
        if (detail::count_field(j[k], "row", at) != k + 1)
            throw ParseError(at + ": operators must be listed in star order with \"row\": " + std::to_string(k + 1));
        const Json& blocks = detail::array_field(j[k], "blocks", at);
        if (blocks.size() != dec->size())
            throw ParseError(at + ": expected " + std::to_string(dec->size()) + " blocks");
        std::vector<map_t<Space>> maps;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            auto m = matrix_from_json(codec.ring(), blocks[i], dec->width(k), dec->width(i),
                                      at + ", block " + std::to_string(i + 1));
            maps.push_back(make_map(dec->summand(i), dec->summand(k), std::move(m)));
        }
        ops.emplace_back(dec, k, std::move(maps));
    }
    return MonodromyTuple<Space>(dec, std::move(ops));
}

/// Top-level fields shared by every instance.
struct InstanceHeader {
    RingDescriptor ring;
    unsigned degree;
    std::string payload; ///< "tuple", "matrix", "seifert" or "sequence_e"
};

inline InstanceHeader read_header(const Json& j) {
    detail::check_keys(j, {"schema", "ring", "degree", "decomposition", "tuple", "matrix", "seifert", "sequence_e",
                           "notes"},
                       "instance");
    if (detail::field(j, "schema", "instance") != schema_version)
        throw ParseError("instance: unsupported schema (expected " + std::to_string(schema_version) + ")");
    const Json& ring = detail::field(j, "ring", "instance");
    if (!ring.is_string())
        throw ParseError("instance: \"ring\" must be a string");
    InstanceHeader h{RingDescriptor::integers(), 0, {}};
    try {
        h.ring = RingDescriptor::parse(ring.get<std::string>());
    } catch (const InvalidArgument& e) {
        throw ParseError(std::string("instance: ") + e.what());
    }
    if (j.contains("degree"))
        h.degree = static_cast<unsigned>(detail::count_field(j, "degree", "instance"));
    for (const char* key : {"tuple", "matrix", "seifert", "sequence_e"}) {
        if (!j.contains(key))
            continue;
        if (!h.payload.empty())
            throw ParseError("instance: more than one payload (\"" + h.payload + "\" and \"" + key + "\")");
        h.payload = key;
    }
    if (h.payload.empty())
        throw ParseError("instance: no payload (one of tuple, matrix, seifert, sequence_e)");
    return h;
}

inline Json instance_skeleton(const RingDescriptor& ring, unsigned degree) {
    return Json{{"schema", schema_version}, {"ring", ring.to_string()}, {"degree", degree}};
}

template <class Space>
Json tuple_instance(const Codec<Space>& codec, const MonodromyTuple<Space>& tuple) {
    const auto& dec = *tuple.decomposition();
    Json out = instance_skeleton(codec.descriptor, dec.degree());
    out["decomposition"] = decomposition_to_json(codec, dec);
    out["tuple"] = tuple_to_json(tuple);
    return out;
}

template <class Space>
Json matrix_instance(const Codec<Space>& codec, const StarDecomposition<Space>& dec, const map_t<Space>& m) {
    Json out = instance_skeleton(codec.descriptor, dec.degree());
    out["decomposition"] = decomposition_to_json(codec, dec);
    out["matrix"] = matrix_to_json(m.matrix());
    return out;
}

/// Parses a JSON document, mapping syntax errors to ParseError.
inline Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

/// Compact or two-space indented output, always newline-terminated.
inline std::string dump_json(const Json& j, bool pretty) { return (pretty ? j.dump(2) : j.dump()) + "\n"; }

} // namespace mono
