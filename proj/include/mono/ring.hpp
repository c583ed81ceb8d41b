#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <concepts>
#include <string>
#include <string_view>
#include <utility>

#include "mono/error.hpp"

namespace mono {

/// Parses a decimal integer with an optional leading sign.
inline mpz_class parse_integer(std::string_view text) {
    std::string_view digits = text;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+'))
        digits.remove_prefix(1);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw InvalidArgument("not an integer: '" + std::string(text) + "'");
    std::string owned(text.front() == '+' ? text.substr(1) : text);
    return mpz_class(owned, 10);
}

/// Least nonnegative residue of `value` modulo a positive `modulus`.
inline mpz_class reduce_mod(const mpz_class& value, const mpz_class& modulus) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), value.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

inline bool is_prime(const mpz_class& p) { return p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 50) > 0; }

// Coefficient rings. Each policy owns the canonical representative of its
// scalars; matrices call through the policy so residues and fractions never
// leave canonical form.

struct Integers {
    using value_type = mpz_class;
    static constexpr bool is_field = false;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_integer(const mpz_class& v) const { return v; }
    void normalize(value_type&) const {}

    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    bool is_zero(const value_type& a) const { return sgn(a) == 0; }

    std::string format(const value_type& a) const { return a.get_str(); }
    value_type parse(std::string_view text) const { return parse_integer(text); }

    bool operator==(const Integers&) const = default;
};

struct Rationals {
    using value_type = mpq_class;
    static constexpr bool is_field = true;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_integer(const mpz_class& v) const { return mpq_class(v); }
    void normalize(value_type& a) const { a.canonicalize(); }

    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type inverse(const value_type& a) const {
        if (sgn(a) == 0)
            throw NotInvertible("division by zero in Q");
        return 1 / a;
    }
    bool is_zero(const value_type& a) const { return sgn(a) == 0; }

    /// "p" or "p/q" with q > 0 and the fraction reduced.
    std::string format(const value_type& a) const { return a.get_str(); }
    value_type parse(std::string_view text) const {
        auto slash = text.find('/');
        if (slash == std::string_view::npos)
            return mpq_class(parse_integer(text));
        mpz_class num = parse_integer(text.substr(0, slash));
        mpz_class den = parse_integer(text.substr(slash + 1));
        if (sgn(den) == 0)
            throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    }

    bool operator==(const Rationals&) const = default;
};

class PrimeField {
public:
    using value_type = mpz_class;
    static constexpr bool is_field = true;

    explicit PrimeField(mpz_class p) : p_(std::move(p)) {
        if (!is_prime(p_))
            throw InvalidArgument("field characteristic must be prime, got " + p_.get_str());
    }

    const mpz_class& characteristic() const { return p_; }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_integer(const mpz_class& v) const { return reduce_mod(v, p_); }
    void normalize(value_type& a) const { a = reduce_mod(a, p_); }

    value_type add(const value_type& a, const value_type& b) const { return reduce_mod(a + b, p_); }
    value_type sub(const value_type& a, const value_type& b) const { return reduce_mod(a - b, p_); }
    value_type mul(const value_type& a, const value_type& b) const { return reduce_mod(a * b, p_); }
    value_type neg(const value_type& a) const { return reduce_mod(-a, p_); }
    value_type inverse(const value_type& a) const {
        mpz_class r;
        if (sgn(a) == 0 || mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p_.get_mpz_t()) == 0)
            throw NotInvertible("division by zero in F_" + p_.get_str());
        return r;
    }
    bool is_zero(const value_type& a) const { return sgn(a) == 0; }

    std::string format(const value_type& a) const { return a.get_str(); }
    value_type parse(std::string_view text) const { return from_integer(parse_integer(text)); }

    bool operator==(const PrimeField&) const = default;

private:
    mpz_class p_;
};

template <class R>
concept CoefficientRing = std::equality_comparable<R> && requires(const R& r, const typename R::value_type& a) {
    { r.zero() } -> std::same_as<typename R::value_type>;
    { r.one() } -> std::same_as<typename R::value_type>;
    { r.add(a, a) } -> std::same_as<typename R::value_type>;
    { r.mul(a, a) } -> std::same_as<typename R::value_type>;
    { r.is_zero(a) } -> std::same_as<bool>;
};

template <class R>
concept FieldRing = CoefficientRing<R> && R::is_field && requires(const R& r, const typename R::value_type& a) {
    { r.inverse(a) } -> std::same_as<typename R::value_type>;
};

/// Runtime description of the coefficient ring of an instance.
///
/// `Z/n` is handled as the abelian group (Z/n)^d, so composite moduli are
/// fine; division there only ever happens through modular inverses.
class RingDescriptor {
public:
    enum class Kind { integers, rationals, integers_mod, prime_field };

    static RingDescriptor integers() { return RingDescriptor(Kind::integers, 0); }
    static RingDescriptor rationals() { return RingDescriptor(Kind::rationals, 0); }
    static RingDescriptor integers_mod(mpz_class n) {
        if (n < 2)
            throw InvalidArgument("Z/n requires n >= 2, got " + n.get_str());
        return RingDescriptor(Kind::integers_mod, std::move(n));
    }
    static RingDescriptor prime_field(mpz_class p) {
        if (!is_prime(p))
            throw InvalidArgument("F_p requires p prime, got " + p.get_str());
        return RingDescriptor(Kind::prime_field, std::move(p));
    }

    /// Accepts "Z", "Q", "Zn:<n>" and "Fp:<p>".
    static RingDescriptor parse(std::string_view text) {
        if (text == "Z")
            return integers();
        if (text == "Q")
            return rationals();
        if (text.starts_with("Zn:"))
            return integers_mod(parse_integer(text.substr(3)));
        if (text.starts_with("Fp:"))
            return prime_field(parse_integer(text.substr(3)));
        throw InvalidArgument("unknown ring '" + std::string(text) + "'");
    }

    Kind kind() const { return kind_; }
    const mpz_class& modulus() const { return modulus_; }
    bool is_field() const { return kind_ == Kind::rationals || kind_ == Kind::prime_field; }

    std::string to_string() const {
        switch (kind_) {
        case Kind::integers: return "Z";
        case Kind::rationals: return "Q";
        case Kind::integers_mod: return "Zn:" + modulus_.get_str();
        case Kind::prime_field: return "Fp:" + modulus_.get_str();
        }
        return {};
    }

    bool operator==(const RingDescriptor& other) const { return kind_ == other.kind_ && modulus_ == other.modulus_; }

private:
    RingDescriptor(Kind kind, mpz_class modulus) : kind_(kind), modulus_(std::move(modulus)) {}

    Kind kind_;
    mpz_class modulus_;
};

} // namespace mono
