#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mono/error.hpp"
#include "mono/spaces.hpp"

namespace mono {

/// Ordered direct-sum decomposition V_1 + ... + V_t of the homology group,
/// one summand per critical value in counterclockwise star order.
///
/// Elements of the total group are concatenated coordinate vectors in summand
/// order, so the projection to V_k is a slice.
template <CoefficientSpace Space>
class StarDecomposition {
public:
    StarDecomposition(std::vector<Space> summands, unsigned degree = 0)
        : summands_(nonempty(std::move(summands))), degree_(degree),
          total_(direct_sum(std::span<const Space>(summands_))) {
        std::size_t offset = 0;
        for (const auto& s : summands_) {
            offsets_.push_back(offset);
            offset += coordinate_count(s);
        }
    }

    std::size_t size() const { return summands_.size(); }
    unsigned degree() const { return degree_; }
    const Space& summand(std::size_t i) const { return summands_.at(i); }
    const std::vector<Space>& summands() const { return summands_; }
    const Space& total() const { return total_; }
    std::size_t offset(std::size_t i) const { return offsets_.at(i); }
    std::size_t width(std::size_t i) const { return coordinate_count(summands_.at(i)); }

    element_t<Space> project(const element_t<Space>& v, std::size_t i) const {
        auto first = v.begin() + static_cast<std::ptrdiff_t>(offset(i));
        return {first, first + static_cast<std::ptrdiff_t>(width(i))};
    }

    element_t<Space> include(std::size_t i, const element_t<Space>& a) const {
        auto v = total_.zero();
        for (std::size_t k = 0; k < a.size(); ++k)
            v[offset(i) + k] = a[k];
        return total_.reduced(std::move(v));
    }

    friend bool operator==(const StarDecomposition& a, const StarDecomposition& b) {
        return a.degree_ == b.degree_ && a.summands_ == b.summands_;
    }

private:
    static std::vector<Space> nonempty(std::vector<Space> summands) {
        if (summands.empty())
            throw InvalidArgument("a star decomposition needs at least one summand");
        return summands;
    }

    std::vector<Space> summands_;
    unsigned degree_;
    Space total_;
    std::vector<std::size_t> offsets_;
};

template <CoefficientSpace Space>
using DecompositionPtr = std::shared_ptr<const StarDecomposition<Space>>;

template <CoefficientSpace Space>
DecompositionPtr<Space> make_decomposition(std::vector<Space> summands, unsigned degree = 0) {
    return std::make_shared<const StarDecomposition<Space>>(std::move(summands), degree);
}

/// Automorphism of the total group that is the identity off block row `row`:
///
///     [ 1                          ]
///     [ m_j1 ... m_jj ... m_jt     ]   <- row j
///     [                          1 ]
///
/// For i != j the block m_ji : V_i -> V_j records m_j(a_i) - a_i; the diagonal
/// block m_jj is an automorphism of V_j.
template <CoefficientSpace Space>
class BlockRowOperator {
public:
    using Map = map_t<Space>;
    using Element = element_t<Space>;

    /// `row` is zero-based. Throws ShapeMismatch or DiagonalBlockNotInvertible.
    BlockRowOperator(DecompositionPtr<Space> decomposition, std::size_t row, std::vector<Map> blocks)
        : dec_(std::move(decomposition)), row_(row), blocks_(std::move(blocks)) {
        if (!dec_)
            throw InvalidArgument("block-row operator without a decomposition");
        if (row_ >= dec_->size())
            throw ShapeMismatch("row index " + std::to_string(row_ + 1) + " outside 1.." +
                                std::to_string(dec_->size()));
        if (blocks_.size() != dec_->size())
            throw ShapeMismatch("expected " + std::to_string(dec_->size()) + " blocks, got " +
                                std::to_string(blocks_.size()));
        for (std::size_t i = 0; i < blocks_.size(); ++i)
            if (!(Space(source(blocks_[i])) == dec_->summand(i)) || !(Space(target(blocks_[i])) == dec_->summand(row_)))
                throw ShapeMismatch("block " + std::to_string(i + 1) + " of row " + std::to_string(row_ + 1) +
                                    " does not map V_" + std::to_string(i + 1) + " to V_" +
                                    std::to_string(row_ + 1));
        if (!is_automorphism(blocks_[row_]))
            throw DiagonalBlockNotInvertible(row_ + 1);
    }

    static BlockRowOperator identity(DecompositionPtr<Space> dec, std::size_t row) {
        std::vector<Map> blocks;
        for (std::size_t i = 0; i < dec->size(); ++i)
            blocks.push_back(i == row ? identity_map(dec->summand(i)) : zero_map(dec->summand(i), dec->summand(row)));
        return BlockRowOperator(std::move(dec), row, std::move(blocks));
    }

    const DecompositionPtr<Space>& decomposition() const { return dec_; }
    std::size_t row() const { return row_; }
    const std::vector<Map>& blocks() const { return blocks_; }
    const Map& block(std::size_t i) const { return blocks_.at(i); }
    const Map& diagonal() const { return blocks_[row_]; }

    /// The j-th block row [m_j1 ... m_jt] as a single matrix V_j x (total).
    typename Map::matrix_type row_matrix() const {
        auto m = zero_map(dec_->total(), dec_->summand(row_)).matrix();
        for (std::size_t i = 0; i < blocks_.size(); ++i)
            m.set_block(0, dec_->offset(i), blocks_[i].matrix());
        return m;
    }

    /// The operator as a map on the whole group.
    Map full() const {
        auto m = identity_map(dec_->total()).matrix();
        m.set_block(dec_->offset(row_), 0, row_matrix());
        return make_map(dec_->total(), dec_->total(), std::move(m));
    }

    Element apply(const Element& v) const {
        Element w = dec_->total().reduced(v);
        auto vj = dec_->summand(row_).zero();
        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            auto part = mono::apply(blocks_[i], dec_->project(w, i));
            for (std::size_t k = 0; k < vj.size(); ++k)
                vj[k] += part[k];
        }
        vj = dec_->summand(row_).reduced(std::move(vj));
        for (std::size_t k = 0; k < vj.size(); ++k)
            w[dec_->offset(row_) + k] = vj[k];
        return w;
    }

    /// The inverse is again block-row: diagonal m_jj^-1, off-diagonal -m_jj^-1 m_ji.
    BlockRowOperator inverse() const {
        Map d = mono::inverse(diagonal());
        std::vector<Map> blocks;
        for (std::size_t i = 0; i < blocks_.size(); ++i)
            blocks.push_back(i == row_ ? d : negate<Space>(compose(d, blocks_[i])));
        return BlockRowOperator(dec_, row_, std::move(blocks));
    }

    /// this ∘ y for a map y into the total group; only block row j changes.
    Map compose_after(const Map& y) const {
        auto rows = row_matrix() * y.matrix();
        auto m = y.matrix();
        m.set_block(dec_->offset(row_), 0, rows);
        return make_map(Space(source(y)), dec_->total(), std::move(m));
    }

    /// x ∘ this for a map x out of the total group.
    Map compose_before(const Map& x) const {
        auto delta = row_matrix();
        const std::size_t off = dec_->offset(row_);
        for (std::size_t k = 0; k < dec_->width(row_); ++k)
            delta(k, off + k) = delta.ring().sub(delta(k, off + k), delta.ring().one());
        auto cols = x.matrix().block(0, off, x.matrix().rows(), dec_->width(row_));
        return make_map(dec_->total(), Space(target(x)), x.matrix() + cols * delta);
    }

    friend bool operator==(const BlockRowOperator& a, const BlockRowOperator& b) {
        return a.row_ == b.row_ && *a.dec_ == *b.dec_ && a.blocks_ == b.blocks_;
    }

private:
    DecompositionPtr<Space> dec_;
    std::size_t row_;
    std::vector<Map> blocks_;
};

template <CoefficientSpace Space>
BlockRowOperator<Space> make_block_operator(DecompositionPtr<Space> dec, std::size_t row,
                                            std::vector<map_t<Space>> blocks) {
    return BlockRowOperator<Space>(std::move(dec), row, std::move(blocks));
}

template <CoefficientSpace Space>
map_t<Space> to_full_operator(const BlockRowOperator<Space>& op) {
    return op.full();
}

/// The local monodromies (m_1, ..., m_t) on the star generators, in star order.
template <CoefficientSpace Space>
class MonodromyTuple {
public:
    using Operator = BlockRowOperator<Space>;

    MonodromyTuple(DecompositionPtr<Space> dec, std::vector<Operator> operators)
        : dec_(std::move(dec)), ops_(std::move(operators)) {
        if (ops_.size() != dec_->size())
            throw ShapeMismatch("a monodromy tuple needs exactly one operator per summand");
        for (std::size_t k = 0; k < ops_.size(); ++k) {
            if (ops_[k].row() != k)
                throw ShapeMismatch("operator " + std::to_string(k + 1) + " acts on row " +
                                    std::to_string(ops_[k].row() + 1));
            if (!(*ops_[k].decomposition() == *dec_))
                throw ShapeMismatch("operator " + std::to_string(k + 1) + " uses a different decomposition");
        }
    }

    static MonodromyTuple identity(DecompositionPtr<Space> dec) {
        std::vector<Operator> ops;
        for (std::size_t k = 0; k < dec->size(); ++k)
            ops.push_back(Operator::identity(dec, k));
        return MonodromyTuple(std::move(dec), std::move(ops));
    }

    const DecompositionPtr<Space>& decomposition() const { return dec_; }
    std::size_t size() const { return ops_.size(); }
    const Operator& operator[](std::size_t k) const { return ops_.at(k); }
    const std::vector<Operator>& operators() const { return ops_; }

    friend bool operator==(const MonodromyTuple& a, const MonodromyTuple& b) {
        return *a.dec_ == *b.dec_ && a.ops_ == b.ops_;
    }

private:
    DecompositionPtr<Space> dec_;
    std::vector<Operator> ops_;
};

/// Monodromy at infinity m_t ∘ ... ∘ m_1 (m_1 applied first).
template <CoefficientSpace Space>
map_t<Space> compose_tuple(const MonodromyTuple<Space>& tuple) {
    auto m = identity_map(tuple.decomposition()->total());
    for (const auto& op : tuple.operators())
        m = op.compose_after(m);
    return m;
}

/// A word in the star generators γ_1..γ_t. The product a·b traverses b first,
/// so the word l_1 l_2 ... l_n evaluates to ρ(l_1) ∘ ρ(l_2) ∘ ... ∘ ρ(l_n).
struct FreeGroupWord {
    struct Letter {
        std::size_t generator; ///< zero-based
        int exponent;          ///< +1 or -1
        friend bool operator==(const Letter&, const Letter&) = default;
    };

    std::vector<Letter> letters;

    FreeGroupWord inverse() const {
        FreeGroupWord w;
        for (auto it = letters.rbegin(); it != letters.rend(); ++it)
            w.letters.push_back({it->generator, -it->exponent});
        return w;
    }

    friend FreeGroupWord operator*(const FreeGroupWord& a, const FreeGroupWord& b) {
        FreeGroupWord w = a;
        w.letters.insert(w.letters.end(), b.letters.begin(), b.letters.end());
        return w;
    }

    /// Space-separated letters "g2 g1^-1" (one-based generators).
    std::string to_string() const {
        std::string s;
        for (const auto& l : letters) {
            if (!s.empty())
                s += ' ';
            s += "g" + std::to_string(l.generator + 1) + (l.exponent < 0 ? "^-1" : "");
        }
        return s;
    }

    friend bool operator==(const FreeGroupWord&, const FreeGroupWord&) = default;
};

/// γ_t ... γ_1, the loop around all critical values.
inline FreeGroupWord loop_at_infinity(std::size_t t) {
    FreeGroupWord w;
    for (std::size_t k = t; k-- > 0;)
        w.letters.push_back({k, 1});
    return w;
}

/// The full representation evaluated on a word.
template <CoefficientSpace Space>
map_t<Space> evaluate_word(const MonodromyTuple<Space>& tuple, const FreeGroupWord& word) {
    std::vector<std::optional<BlockRowOperator<Space>>> inverses(tuple.size());
    auto m = identity_map(tuple.decomposition()->total());
    for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it) {
        if (it->generator >= tuple.size() || (it->exponent != 1 && it->exponent != -1))
            throw InvalidArgument("word letter out of range: " + word.to_string());
        if (it->exponent > 0) {
            m = tuple[it->generator].compose_after(m);
        } else {
            auto& inv = inverses[it->generator];
            if (!inv)
                inv = tuple[it->generator].inverse();
            m = inv->compose_after(m);
        }
    }
    return m;
}

template <CoefficientSpace Space>
struct PicardDefect {
    map_t<Space> defect;
    bool is_blockrow;
};

/// M - Id and whether its image lies in the summand V_row (zero-based row).
template <CoefficientSpace Space>
PicardDefect<Space> picard_defect(const StarDecomposition<Space>& dec, const map_t<Space>& m, std::size_t row) {
    if (!(Space(source(m)) == dec.total()) || !(Space(target(m)) == dec.total()))
        throw ShapeMismatch("operator does not act on the decomposition's total group");
    if (row >= dec.size())
        throw ShapeMismatch("row index outside the decomposition");
    auto defect = subtract(m, identity_map(dec.total()));
    const auto& d = defect.matrix();
    const std::size_t lo = dec.offset(row), hi = lo + dec.width(row);
    bool inside = true;
    for (std::size_t i = 0; i < d.rows() && inside; ++i) {
        if (i >= lo && i < hi)
            continue;
        for (std::size_t j = 0; j < d.cols(); ++j)
            if (!d.ring().is_zero(d(i, j))) {
                inside = false;
                break;
            }
    }
    return {std::move(defect), inside};
}

} // namespace mono
