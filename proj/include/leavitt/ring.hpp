#ifndef LEAVITT_RING_HPP
#define LEAVITT_RING_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <utility>

#include "leavitt/errors.hpp"

namespace leavitt {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

enum class RingKind { Integers, Rationals, IntegersMod };

/// Which coefficient ring we compute over: Z, Q, or Z/n (n >= 2).
/// Immutable once constructed.
class RingSpec {
public:
    static RingSpec integers() { return RingSpec(RingKind::Integers, 0); }
    static RingSpec rationals() { return RingSpec(RingKind::Rationals, 0); }

    static RingSpec integers_mod(Int n) {
        if (n < 2)
            throw precondition_error("integers_mod requires modulus >= 2");
        return RingSpec(RingKind::IntegersMod, std::move(n));
    }

    RingKind kind() const { return kind_; }

    /// Only meaningful for IntegersMod.
    const Int& modulus() const { return modulus_; }

    bool operator==(const RingSpec& other) const {
        return kind_ == other.kind_ && modulus_ == other.modulus_;
    }
    bool operator!=(const RingSpec& other) const { return !(*this == other); }

    /// Selection string: "z", "q", or "zmod:<n>".
    std::string name() const {
        switch (kind_) {
        case RingKind::Integers: return "z";
        case RingKind::Rationals: return "q";
        default: return "zmod:" + modulus_.str();
        }
    }

    static RingSpec parse(const std::string& s) {
        if (s == "z" || s == "Z") return integers();
        if (s == "q" || s == "Q") return rationals();
        const std::string prefix = "zmod:";
        if (s.rfind(prefix, 0) == 0) {
            const std::string digits = s.substr(prefix.size());
            if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
                throw parse_error("bad modulus in ring spec '" + s + "'");
            Int n(digits);
            if (n < 2)
                throw parse_error("modulus must be >= 2 in ring spec '" + s + "'");
            return integers_mod(n);
        }
        throw parse_error("unknown ring spec '" + s + "' (expected z, q, or zmod:<n>)");
    }

private:
    RingSpec(RingKind kind, Int modulus) : kind_(kind), modulus_(std::move(modulus)) {}

    RingKind kind_;
    Int modulus_; // 0 unless IntegersMod
};

/// One exact element of the coefficient ring. Values are stored reduced:
/// residues in [0, n), fractions in lowest terms with positive denominator
/// (cpp_rational maintains the latter automatically).
class RingElem {
public:
    RingElem(RingSpec spec, const Int& value) : spec_(std::move(spec)), value_(value) {
        if (spec_.kind() == RingKind::IntegersMod) value_ = reduce_mod(value, spec_.modulus());
    }

    RingElem(RingSpec spec, Rat value) : spec_(std::move(spec)), value_(std::move(value)) {
        if (spec_.kind() != RingKind::Rationals) {
            if (denominator(value_) != 1)
                throw precondition_error("non-integer value in ring " + spec_.name());
            if (spec_.kind() == RingKind::IntegersMod)
                value_ = Rat(reduce_mod(numerator(value_), spec_.modulus()));
        }
    }

    static RingElem zero(const RingSpec& spec) { return RingElem(spec, Int(0)); }
    static RingElem one(const RingSpec& spec) { return RingElem(spec, Int(1)); }

    const RingSpec& spec() const { return spec_; }

    /// Exact value; for Z/n this is the canonical representative in [0, n).
    const Rat& value() const { return value_; }

    /// Integer value; valid for Z and Z/n only.
    Int integer_value() const {
        if (spec_.kind() == RingKind::Rationals && denominator(value_) != 1)
            throw precondition_error("integer_value of a non-integer rational");
        return numerator(value_);
    }

    bool is_zero() const { return value_ == 0; }
    bool is_one() const { return value_ == 1; }

    /// True iff the element has a multiplicative inverse: |x| = 1 over Z,
    /// x != 0 over Q, gcd(x, n) = 1 over Z/n.
    bool is_unit() const {
        switch (spec_.kind()) {
        case RingKind::Integers: return value_ == 1 || value_ == -1;
        case RingKind::Rationals: return value_ != 0;
        default: return gcd(numerator(value_), spec_.modulus()) == 1;
        }
    }

    RingElem inverse() const {
        if (!is_unit())
            throw precondition_error("inverse of a non-unit in " + spec_.name());
        switch (spec_.kind()) {
        case RingKind::Integers: return *this; // +-1 are self-inverse
        case RingKind::Rationals: return RingElem(spec_, Rat(1) / value_);
        default: return RingElem(spec_, mod_inverse(numerator(value_), spec_.modulus()));
        }
    }

    RingElem operator+(const RingElem& other) const {
        check_spec(other);
        return RingElem(spec_, value_ + other.value_);
    }
    RingElem operator-(const RingElem& other) const {
        check_spec(other);
        return RingElem(spec_, value_ - other.value_);
    }
    RingElem operator*(const RingElem& other) const {
        check_spec(other);
        return RingElem(spec_, value_ * other.value_);
    }
    RingElem operator-() const { return RingElem(spec_, -value_); }

    bool operator==(const RingElem& other) const {
        return spec_ == other.spec_ && value_ == other.value_;
    }
    bool operator!=(const RingElem& other) const { return !(*this == other); }

    /// True when rendering should pull the sign out front ("x - 2*y").
    bool is_negative() const { return value_ < 0; }

    std::string str() const {
        if (denominator(value_) == 1) return numerator(value_).str();
        return numerator(value_).str() + "/" + denominator(value_).str();
    }

private:
    void check_spec(const RingElem& other) const {
        if (spec_ != other.spec_)
            throw precondition_error("ring mismatch: " + spec_.name() + " vs " + other.spec_.name());
    }

    static Int reduce_mod(const Int& x, const Int& n) {
        Int r = x % n;
        if (r < 0) r += n;
        return r;
    }

    static Int mod_inverse(const Int& a, const Int& n) {
        // extended Euclid
        Int old_r = a, r = n, old_s = 1, s = 0;
        while (r != 0) {
            Int q = old_r / r;
            Int tmp = old_r - q * r;
            old_r = r;
            r = tmp;
            tmp = old_s - q * s;
            old_s = s;
            s = tmp;
        }
        return reduce_mod(old_s, n);
    }

    RingSpec spec_;
    Rat value_;
};

inline RingElem ring_int(const RingSpec& spec, long v) { return RingElem(spec, Int(v)); }

} // namespace leavitt

#endif
