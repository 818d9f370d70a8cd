#pragma once

#include "towerlab/error.hpp"
#include "towerlab/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

/// Exact arithmetic in small finite fields GF(p^e).
///
/// Elements are stored as the integer sum c_i p^i of their coordinates in the
/// power basis of the field modulus, so the natural integer order coincides
/// with lexicographic order of the big-endian coefficient string. Fields are
/// interned: make_field(p, e) always returns the same object, and elements
/// carry a plain pointer to it.

namespace towerlab {

/// Largest field cardinality the library will construct.
inline constexpr std::uint64_t kEnumerationCap = std::uint64_t{1} << 20;

namespace detail {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

/// base^exp, or nullopt once the value exceeds `limit`.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t base, std::uint64_t exp,
                                                std::uint64_t limit) {
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (base != 0 && result > limit / base) {
            return std::nullopt;
        }
        result *= base;
    }
    if (result > limit) {
        return std::nullopt;
    }
    return result;
}

inline std::uint64_t upow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t result = 1;
    while (exp != 0) {
        if (exp & 1u) {
            result *= base;
        }
        exp >>= 1u;
        if (exp != 0) {
            base *= base;
        }
    }
    return result;
}

/// If q = p^t for some t >= 1, returns t.
inline std::optional<unsigned> prime_power_exponent(std::uint64_t p, std::uint64_t q) {
    if (p < 2 || q < p) {
        return std::nullopt;
    }
    unsigned t = 0;
    while (q % p == 0) {
        q /= p;
        ++t;
    }
    if (q != 1) {
        return std::nullopt;
    }
    return t;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) {
                n /= d;
            }
        }
    }
    if (n > 1) {
        out.push_back(n);
    }
    return out;
}

/// Polynomials over GF(p) as coefficient vectors, low degree first.
using Digits = std::vector<std::uint32_t>;

inline void trim(Digits& a) {
    while (!a.empty() && a.back() == 0) {
        a.pop_back();
    }
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    // p is prime; Fermat.
    std::uint64_t result = 1;
    std::uint64_t base = a % p;
    std::uint64_t e = p - 2;
    while (e != 0) {
        if (e & 1u) {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1u;
    }
    return static_cast<std::uint32_t>(result);
}

/// Remainder of a modulo the nonzero polynomial m over GF(p).
inline Digits poly_rem(Digits a, const Digits& m, std::uint32_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint32_t lead_inv = inv_mod(m.back(), p);
    while (a.size() >= m.size()) {
        const std::uint64_t c = std::uint64_t{a.back()} * lead_inv % p;
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) {
            const std::uint64_t sub = c * m[i] % p;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

inline Digits digits_of(std::uint64_t value, std::uint32_t p, unsigned count) {
    Digits d(count, 0);
    for (unsigned i = 0; i < count; ++i) {
        d[i] = static_cast<std::uint32_t>(value % p);
        value /= p;
    }
    return d;
}

/// Irreducibility of a monic polynomial by trial division against every monic
/// polynomial of degree 1..deg/2.
inline bool is_irreducible(const Digits& monic, std::uint32_t p) {
    const unsigned deg = static_cast<unsigned>(monic.size() - 1);
    for (unsigned d = 1; d <= deg / 2; ++d) {
        const std::uint64_t count = upow(p, d);
        for (std::uint64_t v = 0; v < count; ++v) {
            Digits divisor = digits_of(v, p, d);
            divisor.push_back(1);
            if (poly_rem(monic, divisor, p).empty()) {
                return false;
            }
        }
    }
    return true;
}

/// The monic irreducible of degree e whose lower coefficients have the least
/// value sum c_i p^i.
inline Digits least_irreducible(std::uint32_t p, unsigned e) {
    const std::uint64_t count = upow(p, e);
    for (std::uint64_t v = 0; v < count; ++v) {
        Digits candidate = digits_of(v, p, e);
        candidate.push_back(1);
        if (is_irreducible(candidate, p)) {
            return candidate;
        }
    }
    throw Error(ErrorCode::InvalidParameter, "no irreducible polynomial found");
}

} // namespace detail

class Field;

/// An element of an interned finite field.
class Felt {
public:
    Felt() = default;
    Felt(const Field& field, std::uint32_t index) : field_(&field), value_(index) {}

    const Field& field() const;
    const Field* field_ptr() const noexcept { return field_; }
    std::uint32_t index() const noexcept { return value_; }
    bool is_zero() const noexcept { return value_ == 0; }
    bool is_one() const noexcept { return value_ == 1; }

    /// Coordinates in the power basis, low degree first.
    std::vector<std::uint32_t> coeffs() const;

    Felt operator-() const;
    Felt& operator+=(const Felt& rhs);
    Felt& operator-=(const Felt& rhs);
    Felt& operator*=(const Felt& rhs);
    Felt& operator/=(const Felt& rhs);

    Felt inv() const;
    Felt pow(std::uint64_t exponent) const;
    Felt pow(const BigInt& exponent) const;

    friend bool operator==(const Felt& a, const Felt& b) noexcept {
        return a.field_ == b.field_ && a.value_ == b.value_;
    }
    friend std::strong_ordering operator<=>(const Felt& a, const Felt& b) noexcept {
        if (a.field_ != b.field_) {
            return std::compare_three_way{}(a.field_, b.field_);
        }
        return a.value_ <=> b.value_;
    }

private:
    const Field& same_field(const Felt& other) const;

    const Field* field_ = nullptr;
    std::uint32_t value_ = 0;
};

inline Felt operator+(Felt a, const Felt& b) { return a += b; }
inline Felt operator-(Felt a, const Felt& b) { return a -= b; }
inline Felt operator*(Felt a, const Felt& b) { return a *= b; }
inline Felt operator/(Felt a, const Felt& b) { return a /= b; }

/// GF(p^e) with log/antilog tables over a primitive element. Immutable after
/// construction and safe to share across threads.
class Field {
public:
    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

    std::uint32_t characteristic() const noexcept { return p_; }
    unsigned degree() const noexcept { return e_; }
    std::uint32_t size() const noexcept { return size_; }
    /// Monic modulus, low degree first (length degree()+1).
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
    /// "GF(p^e)"
    std::string tag() const { return "GF(" + std::to_string(p_) + "^" + std::to_string(e_) + ")"; }

    Felt zero() const { return Felt(*this, 0); }
    Felt one() const { return Felt(*this, 1); }
    Felt element(std::uint32_t index) const {
        if (index >= size_) {
            throw Error(ErrorCode::InvalidParameter, "element index out of range for " + tag());
        }
        return Felt(*this, index);
    }
    /// Image of the integer c in the prime subfield.
    Felt constant(std::int64_t c) const {
        const std::int64_t p = p_;
        return Felt(*this, static_cast<std::uint32_t>(((c % p) + p) % p));
    }
    Felt from_coeffs(std::span<const std::uint32_t> coeffs) const {
        if (coeffs.size() > e_) {
            throw Error(ErrorCode::InvalidParameter, "too many coefficients for " + tag());
        }
        std::uint32_t index = 0;
        for (std::size_t i = coeffs.size(); i-- > 0;) {
            if (coeffs[i] >= p_) {
                throw Error(ErrorCode::InvalidParameter, "coefficient out of range");
            }
            index = index * p_ + coeffs[i];
        }
        return Felt(*this, index);
    }
    /// Element of multiplicative order size()-1 used for the tables.
    Felt generator() const { return Felt(*this, generator_); }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
        if (p_ == 2) {
            return a ^ b;
        }
        std::uint32_t result = 0;
        std::uint32_t place = 1;
        while (a != 0 || b != 0) {
            std::uint32_t s = a % p_ + b % p_;
            if (s >= p_) {
                s -= p_;
            }
            result += s * place;
            place *= p_;
            a /= p_;
            b /= p_;
        }
        return result;
    }
    std::uint32_t neg(std::uint32_t a) const noexcept {
        if (p_ == 2) {
            return a;
        }
        std::uint32_t result = 0;
        std::uint32_t place = 1;
        while (a != 0) {
            const std::uint32_t d = a % p_;
            result += (d == 0 ? 0 : p_ - d) * place;
            place *= p_;
            a /= p_;
        }
        return result;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept { return add(a, neg(b)); }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
        if (a == 0 || b == 0) {
            return 0;
        }
        return exp_[log_[a] + log_[b]];
    }
    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) {
            throw Error(ErrorCode::DivisionByZero, "inverse of zero in " + tag());
        }
        return exp_[(size_ - 1 - log_[a]) % (size_ - 1)];
    }
    /// a^k for nonzero a, with k already reduced modulo size()-1.
    std::uint32_t pow_by_log(std::uint32_t a, std::uint64_t reduced_exponent) const noexcept {
        const std::uint64_t order = size_ - 1;
        return exp_[static_cast<std::uint32_t>((std::uint64_t{log_[a]} * reduced_exponent) % order)];
    }

    /// Schoolbook multiply-and-reduce on coefficient vectors. Independent of
    /// the log tables; used to build them and as a cross-check.
    std::uint32_t mul_schoolbook(std::uint32_t a, std::uint32_t b) const {
        const detail::Digits da = detail::digits_of(a, p_, e_);
        const detail::Digits db = detail::digits_of(b, p_, e_);
        detail::Digits prod(2 * e_, 0);
        for (unsigned i = 0; i < e_; ++i) {
            for (unsigned k = 0; k < e_; ++k) {
                prod[i + k] = static_cast<std::uint32_t>((prod[i + k] + std::uint64_t{da[i]} * db[k]) % p_);
            }
        }
        const detail::Digits rem = detail::poly_rem(prod, modulus_, p_);
        std::uint32_t index = 0;
        for (std::size_t i = rem.size(); i-- > 0;) {
            index = index * p_ + rem[i];
        }
        return index;
    }

private:
    friend const Field& make_field(std::uint32_t p, unsigned e);

    Field(std::uint32_t p, unsigned e, std::uint32_t size)
        : p_(p), e_(e), size_(size), modulus_(detail::least_irreducible(p, e)) {
        build_tables();
    }

    std::uint32_t pow_schoolbook(std::uint32_t a, std::uint64_t exponent) const {
        std::uint32_t result = 1;
        while (exponent != 0) {
            if (exponent & 1u) {
                result = mul_schoolbook(result, a);
            }
            exponent >>= 1u;
            if (exponent != 0) {
                a = mul_schoolbook(a, a);
            }
        }
        return result;
    }

    void build_tables() {
        const std::uint32_t order = size_ - 1;
        const auto factors = detail::prime_factors(order);
        generator_ = 0;
        for (std::uint32_t candidate = 1; candidate < size_; ++candidate) {
            bool primitive = true;
            for (std::uint64_t r : factors) {
                if (pow_schoolbook(candidate, order / r) == 1) {
                    primitive = false;
                    break;
                }
            }
            if (primitive) {
                generator_ = candidate;
                break;
            }
        }
        exp_.assign(2 * static_cast<std::size_t>(order), 0);
        log_.assign(size_, 0);
        std::uint32_t current = 1;
        for (std::uint32_t k = 0; k < order; ++k) {
            exp_[k] = current;
            exp_[k + order] = current;
            log_[current] = k;
            current = mul_schoolbook(current, generator_);
        }
    }

    std::uint32_t p_;
    unsigned e_;
    std::uint32_t size_;
    std::vector<std::uint32_t> modulus_;
    std::uint32_t generator_ = 1;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
};

/// The interned field GF(p^e). Deterministic: the same (p, e) always yields
/// the same object and the same modulus.
inline const Field& make_field(std::uint32_t p, unsigned e) {
    if (!detail::is_prime(p)) {
        throw Error(ErrorCode::NonPrime, std::to_string(p) + " is not prime");
    }
    if (e == 0) {
        throw Error(ErrorCode::DegreeZero, "extension degree must be positive");
    }
    const auto size = detail::checked_pow(p, e, kEnumerationCap);
    if (!size) {
        throw Error(ErrorCode::CapExceeded, "GF(" + std::to_string(p) + "^" + std::to_string(e) +
                                                ") exceeds the enumeration cap of 2^20 elements");
    }
    static std::mutex mutex;
    static std::map<std::pair<std::uint32_t, unsigned>, std::unique_ptr<Field>> registry;
    std::lock_guard lock(mutex);
    auto& slot = registry[{p, e}];
    if (!slot) {
        slot.reset(new Field(p, e, static_cast<std::uint32_t>(*size)));
    }
    return *slot;
}

// --- Felt members -----------------------------------------------------------

inline const Field& Felt::field() const {
    if (field_ == nullptr) {
        throw Error(ErrorCode::SpecMismatch, "element has no field");
    }
    return *field_;
}

inline const Field& Felt::same_field(const Felt& other) const {
    if (field_ == nullptr || field_ != other.field_) {
        throw Error(ErrorCode::SpecMismatch, "operands belong to different fields");
    }
    return *field_;
}

inline std::vector<std::uint32_t> Felt::coeffs() const {
    const Field& f = field();
    return detail::digits_of(value_, f.characteristic(), f.degree());
}

inline Felt Felt::operator-() const {
    const Field& f = field();
    return Felt(f, f.neg(value_));
}

inline Felt& Felt::operator+=(const Felt& rhs) {
    value_ = same_field(rhs).add(value_, rhs.value_);
    return *this;
}

inline Felt& Felt::operator-=(const Felt& rhs) {
    value_ = same_field(rhs).sub(value_, rhs.value_);
    return *this;
}

inline Felt& Felt::operator*=(const Felt& rhs) {
    value_ = same_field(rhs).mul(value_, rhs.value_);
    return *this;
}

inline Felt& Felt::operator/=(const Felt& rhs) {
    const Field& f = same_field(rhs);
    value_ = f.mul(value_, f.inv(rhs.value_));
    return *this;
}

inline Felt Felt::inv() const {
    const Field& f = field();
    return Felt(f, f.inv(value_));
}

/// Square-and-multiply after reducing the exponent modulo the group order.
inline Felt Felt::pow(std::uint64_t exponent) const {
    const Field& f = field();
    if (value_ == 0) {
        return exponent == 0 ? f.one() : f.zero();
    }
    std::uint64_t e = exponent % (f.size() - 1);
    std::uint32_t result = 1;
    std::uint32_t base = value_;
    while (e != 0) {
        if (e & 1u) {
            result = f.mul(result, base);
        }
        e >>= 1u;
        if (e != 0) {
            base = f.mul(base, base);
        }
    }
    return Felt(f, result);
}

inline Felt Felt::pow(const BigInt& exponent) const {
    if (exponent < 0) {
        return inv().pow(BigInt(-exponent));
    }
    const Field& f = field();
    if (value_ == 0) {
        return exponent == 0 ? f.one() : f.zero();
    }
    const BigInt reduced = exponent % (f.size() - 1);
    return pow(reduced.convert_to<std::uint64_t>());
}

// --- Frobenius, traces, subfields -------------------------------------------

/// x^q for q a power of the characteristic.
inline Felt frobenius_q(const Felt& x, std::uint64_t q) {
    const Field& f = x.field();
    if (!detail::prime_power_exponent(f.characteristic(), q)) {
        throw Error(ErrorCode::SpecMismatch,
                    std::to_string(q) + " is not a power of the characteristic of " + f.tag());
    }
    if (x.is_zero()) {
        return x;
    }
    return Felt(f, f.pow_by_log(x.index(), q % (f.size() - 1)));
}

/// Tr_a(x) = x + x^q + ... + x^(q^(a-1)).
inline Felt trace_q(const Felt& x, std::uint64_t q, unsigned a) {
    if (a == 0) {
        throw Error(ErrorCode::InvalidParameter, "trace length must be positive");
    }
    Felt term = x;
    Felt sum = x;
    for (unsigned i = 1; i < a; ++i) {
        term = frobenius_q(term, q);
        sum += term;
    }
    return sum;
}

/// Every element of the field, in canonical (coefficient-lexicographic) order.
inline std::vector<Felt> enumerate(const Field& f) {
    if (f.size() > kEnumerationCap) {
        throw Error(ErrorCode::CapExceeded, f.tag() + " exceeds the enumeration cap");
    }
    std::vector<Felt> out;
    out.reserve(f.size());
    for (std::uint32_t i = 0; i < f.size(); ++i) {
        out.emplace_back(f, i);
    }
    return out;
}

/// The copy of GF(q^a) inside f, located as the fixed points of x -> x^(q^a).
inline std::vector<Felt> subfield_elements(const Field& f, std::uint64_t q, unsigned a) {
    const auto e0 = detail::prime_power_exponent(f.characteristic(), q);
    if (!e0) {
        throw Error(ErrorCode::SpecMismatch,
                    std::to_string(q) + " is not a power of the characteristic of " + f.tag());
    }
    if (a == 0 || f.degree() % (*e0 * a) != 0) {
        throw Error(ErrorCode::NoSuchSubfield, "GF(" + std::to_string(q) + "^" + std::to_string(a) +
                                                   ") does not embed in " + f.tag());
    }
    const std::uint64_t qa = detail::upow(q, a);
    std::vector<Felt> out;
    for (const Felt& x : enumerate(f)) {
        if (frobenius_q(x, qa) == x) {
            out.push_back(x);
        }
    }
    return out;
}

/// Canonical text form: field tag, ':', coefficients from the highest degree
/// down. Digits are concatenated for p <= 10 and '.'-separated otherwise.
inline std::string encode(const Felt& x) {
    const Field& f = x.field();
    const auto c = x.coeffs();
    std::string out = f.tag() + ":";
    for (std::size_t i = c.size(); i-- > 0;) {
        if (f.characteristic() > 10 && i + 1 != c.size()) {
            out += '.';
        }
        out += std::to_string(c[i]);
    }
    return out;
}

} // namespace towerlab
