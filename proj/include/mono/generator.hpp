#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "mono/star.hpp"

namespace mono {

/// Seeded source of small integers.
///
/// Draws are raw std::mt19937_64 outputs x (a fully specified engine) mapped
/// to [lo, hi] as lo + x mod (hi - lo + 1), so a seed reproduces the same
/// stream in any implementation of that engine.
class Random {
public:
    explicit Random(std::uint64_t seed) : engine_(seed) {}

    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(engine_() % span);
    }

    /// True with probability percent / 100.
    bool chance(int percent) { return uniform(0, 99) < percent; }

    std::int64_t nonzero(std::int64_t bound) {
        auto v = uniform(1, bound);
        return chance(50) ? v : -v;
    }

private:
    std::mt19937_64 engine_;
};

struct GeneratorOptions {
    std::int64_t entry_bound = 3;      ///< off-diagonal entries drawn from [-bound, bound]
    int identity_diagonal_percent = 0; ///< chance that a diagonal block is the identity
    int zero_block_percent = 0;        ///< chance that an off-diagonal block is zero
};

namespace detail {

inline mpz_class gcd(const mpz_class& a, const mpz_class& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

// Smallest positive c such that c * (generator of order `from`) may map to
// the coordinate of order `to`; 0 when only the zero map is allowed.
inline mpz_class hom_step(const mpz_class& from, const mpz_class& to) {
    if (sgn(to) == 0)
        return sgn(from) == 0 ? 1 : 0;
    if (sgn(from) == 0)
        return 1;
    return to / gcd(from, to);
}

inline mpz_class random_unit(Random& rng, const mpz_class& order) {
    if (sgn(order) == 0)
        return rng.chance(50) ? 1 : -1;
    if (order <= 1000) {
        auto o = order.get_si();
        for (;;) {
            auto u = rng.uniform(1, o - 1);
            if (std::gcd(u, o) == 1)
                return u;
        }
    }
    return rng.chance(50) ? 1 : -1;
}

template <FieldRing F>
typename F::value_type random_scalar(Random& rng, const F& field, std::int64_t bound, bool nonzero) {
    auto v = nonzero ? rng.nonzero(bound) : rng.uniform(-bound, bound);
    if constexpr (std::is_same_v<F, Rationals>) {
        if (rng.chance(25)) {
            mpq_class q(v, rng.uniform(2, 3));
            q.canonicalize();
            return q;
        }
    }
    auto x = field.from_integer(v);
    if (nonzero && field.is_zero(x))
        return field.one();
    return x;
}

} // namespace detail

/// Automorphism built as a product of elementary moves (row additions and
/// unit scalings), so invertibility holds by construction.
inline ModuleHom random_automorphism(Random& rng, const DiagonalGroup& g) {
    const std::size_t n = g.size();
    IntMatrix a = IntMatrix::identity({}, n);
    const std::size_t moves = 2 * n + 1;
    for (std::size_t step = 0; step < moves && n > 0; ++step) {
        auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
        if (n > 1 && rng.chance(70)) {
            auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 2));
            if (j >= i)
                ++j;
            // E = I + c e_i e_j^t must be well defined: c * o_j == 0 in Z/o_i.
            mpz_class c = detail::hom_step(g.order(j), g.order(i)) * rng.nonzero(2);
            if (sgn(c) == 0)
                continue;
            for (std::size_t k = 0; k < n; ++k)
                a(i, k) += c * a(j, k);
        } else {
            mpz_class u = detail::random_unit(rng, g.order(i));
            for (std::size_t k = 0; k < n; ++k)
                a(i, k) *= u;
        }
    }
    return ModuleHom(g, g, std::move(a));
}

template <FieldRing F>
LinearMap<F> random_automorphism(Random& rng, const VectorSpace<F>& v) {
    const std::size_t n = v.dim;
    const F& f = v.field;
    auto a = Matrix<F>::identity(f, n);
    const std::size_t moves = 2 * n + 1;
    for (std::size_t step = 0; step < moves && n > 0; ++step) {
        auto i = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 1));
        if (n > 1 && rng.chance(70)) {
            auto j = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(n) - 2));
            if (j >= i)
                ++j;
            auto c = detail::random_scalar(rng, f, 2, true);
            for (std::size_t k = 0; k < n; ++k)
                a(i, k) = f.add(a(i, k), f.mul(c, a(j, k)));
        } else {
            auto u = detail::random_scalar(rng, f, 3, true);
            for (std::size_t k = 0; k < n; ++k)
                a(i, k) = f.mul(u, a(i, k));
        }
    }
    return LinearMap<F>(std::move(a));
}

inline ModuleHom random_map(Random& rng, const DiagonalGroup& s, const DiagonalGroup& t, std::int64_t bound) {
    IntMatrix a({}, t.size(), s.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j)
            a(i, j) = detail::hom_step(s.order(j), t.order(i)) * rng.uniform(-bound, bound);
    return ModuleHom(s, t, std::move(a));
}

template <FieldRing F>
LinearMap<F> random_map(Random& rng, const VectorSpace<F>& s, const VectorSpace<F>& t, std::int64_t bound) {
    Matrix<F> a(s.field, t.dim, s.dim);
    for (std::size_t i = 0; i < t.dim; ++i)
        for (std::size_t j = 0; j < s.dim; ++j)
            a(i, j) = detail::random_scalar(rng, s.field, bound, false);
    return LinearMap<F>(std::move(a));
}

template <CoefficientSpace Space>
BlockRowOperator<Space> random_block_operator(Random& rng, const DecompositionPtr<Space>& dec, std::size_t row,
                                              const GeneratorOptions& opts = {}) {
    std::vector<map_t<Space>> blocks;
    for (std::size_t i = 0; i < dec->size(); ++i) {
        const auto& vi = dec->summand(i);
        const auto& vj = dec->summand(row);
        if (i == row)
            blocks.push_back(rng.chance(opts.identity_diagonal_percent) ? identity_map(vj)
                                                                        : random_automorphism(rng, vj));
        else
            blocks.push_back(rng.chance(opts.zero_block_percent) ? zero_map(vi, vj)
                                                                 : random_map(rng, vi, vj, opts.entry_bound));
    }
    return BlockRowOperator<Space>(dec, row, std::move(blocks));
}

template <CoefficientSpace Space>
MonodromyTuple<Space> random_tuple(Random& rng, const DecompositionPtr<Space>& dec, const GeneratorOptions& opts = {}) {
    std::vector<BlockRowOperator<Space>> ops;
    for (std::size_t k = 0; k < dec->size(); ++k)
        ops.push_back(random_block_operator(rng, dec, k, opts));
    return MonodromyTuple<Space>(dec, std::move(ops));
}

/// Summand with `size` generators mixing torsion and free parts; torsion
/// factors follow a divisibility chain d_1 | d_2 | ... starting at 2 or 3.
inline DiagonalGroup random_torsion_summand(Random& rng, std::size_t size) {
    auto torsion = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(size)));
    std::vector<mpz_class> factors;
    mpz_class d = rng.uniform(2, 3);
    for (std::size_t k = 0; k < torsion; ++k) {
        factors.push_back(d);
        d *= rng.uniform(1, 3);
    }
    return DiagonalGroup(FgAbelianGroup(size - torsion, std::move(factors)));
}

} // namespace mono
