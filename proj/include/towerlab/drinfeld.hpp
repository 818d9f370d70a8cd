#pragma once

#include "towerlab/error.hpp"
#include "towerlab/finite_field.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

/// Twisted polynomials L{tau} with tau c = c^q tau, normalized Drinfeld
/// modules phi_T = -tau^n + g tau^j + 1 of rank n, and isogenies tau^k - a.

namespace towerlab {

class OrePoly {
public:
    OrePoly(const Field& field, std::uint64_t q) : field_(&field), q_(q) {
        if (!detail::prime_power_exponent(field.characteristic(), q)) {
            throw Error(ErrorCode::SpecMismatch, std::to_string(q) + " is not a power of the characteristic");
        }
    }
    OrePoly(const Field& field, std::uint64_t q, std::vector<Felt> coeffs) : OrePoly(field, q) {
        for (const Felt& c : coeffs) {
            if (c.field_ptr() != field_) {
                throw Error(ErrorCode::SpecMismatch, "coefficient outside " + field.tag());
            }
        }
        coeffs_ = std::move(coeffs);
        trim();
    }

    static OrePoly constant(const Field& field, std::uint64_t q, const Felt& c) { return OrePoly(field, q, {c}); }

    /// c tau^i
    static OrePoly monomial(const Field& field, std::uint64_t q, unsigned i, const Felt& c) {
        std::vector<Felt> coeffs(i + 1, field.zero());
        coeffs[i] = c;
        return OrePoly(field, q, std::move(coeffs));
    }

    const Field& field() const { return *field_; }
    std::uint64_t twist() const noexcept { return q_; }
    const std::vector<Felt>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    Felt coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : field_->zero(); }
    Felt leading() const { return is_zero() ? field_->zero() : coeffs_.back(); }
    /// Constant term; multiplicative on products.
    Felt D() const { return coeff(0); }

    friend bool operator==(const OrePoly& a, const OrePoly& b) {
        return a.field_ == b.field_ && a.q_ == b.q_ && a.coeffs_ == b.coeffs_;
    }

    void require_compatible(const OrePoly& other) const {
        if (field_ != other.field_ || q_ != other.q_) {
            throw Error(ErrorCode::SpecMismatch, "twisted polynomials over different rings");
        }
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) {
            coeffs_.pop_back();
        }
    }

    const Field* field_;
    std::uint64_t q_;
    std::vector<Felt> coeffs_;
};

inline OrePoly operator+(const OrePoly& a, const OrePoly& b) {
    a.require_compatible(b);
    const std::size_t len = std::max(a.coeffs().size(), b.coeffs().size());
    std::vector<Felt> out;
    out.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
        out.push_back(a.coeff(i) + b.coeff(i));
    }
    return OrePoly(a.field(), a.twist(), std::move(out));
}

inline OrePoly operator-(const OrePoly& a) {
    std::vector<Felt> out;
    for (const Felt& c : a.coeffs()) {
        out.push_back(-c);
    }
    return OrePoly(a.field(), a.twist(), std::move(out));
}

inline OrePoly operator-(const OrePoly& a, const OrePoly& b) { return a + (-b); }

/// (sum a_i tau^i)(sum b_j tau^j) = sum a_i b_j^(q^i) tau^(i+j)
inline OrePoly ore_mul(const OrePoly& f, const OrePoly& g) {
    f.require_compatible(g);
    if (f.is_zero() || g.is_zero()) {
        return OrePoly(f.field(), f.twist());
    }
    const Field& L = f.field();
    std::vector<Felt> out(f.coeffs().size() + g.coeffs().size() - 1, L.zero());
    std::vector<Felt> twisted = g.coeffs();
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        if (i > 0) {
            for (Felt& b : twisted) {
                b = frobenius_q(b, f.twist());
            }
        }
        const Felt& a = f.coeffs()[i];
        if (a.is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < twisted.size(); ++j) {
            out[i + j] += a * twisted[j];
        }
    }
    return OrePoly(L, f.twist(), std::move(out));
}

inline OrePoly operator*(const OrePoly& f, const OrePoly& g) { return ore_mul(f, g); }

struct OreDivision {
    OrePoly quotient;
    OrePoly remainder;
};

/// f = quotient * d + remainder with deg remainder < deg d.
inline OreDivision ore_right_divmod(const OrePoly& f, const OrePoly& d) {
    f.require_compatible(d);
    if (d.is_zero()) {
        throw Error(ErrorCode::ZeroDivisor, "right division by the zero twisted polynomial");
    }
    const Field& L = f.field();
    const std::uint64_t q = f.twist();
    const int t = d.degree();
    OrePoly rem = f;
    std::vector<Felt> quot(rem.degree() >= t ? static_cast<std::size_t>(rem.degree() - t + 1) : 0, L.zero());
    while (rem.degree() >= t) {
        const int shift = rem.degree() - t;
        // c tau^shift * d_t tau^t = c d_t^(q^shift) tau^(shift+t)
        Felt lead_twisted = d.leading();
        for (int s = 0; s < shift; ++s) {
            lead_twisted = frobenius_q(lead_twisted, q);
        }
        const Felt c = rem.leading() / lead_twisted;
        quot[static_cast<std::size_t>(shift)] = c;
        rem = rem - ore_mul(OrePoly::monomial(L, q, static_cast<unsigned>(shift), c), d);
    }
    return {OrePoly(L, q, std::move(quot)), rem};
}

/// sum a_i x^(q^i)
inline Felt apply(const OrePoly& f, const Felt& x) {
    if (x.field_ptr() != &f.field()) {
        throw Error(ErrorCode::SpecMismatch, "argument outside " + f.field().tag());
    }
    Felt acc = f.field().zero();
    Felt power = x;
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        if (i > 0) {
            power = frobenius_q(power, f.twist());
        }
        acc += f.coeffs()[i] * power;
    }
    return acc;
}

/// Ordinary polynomial in T with coefficients stored in the working field;
/// the coefficients are expected to lie in GF(q).
class TPoly {
public:
    explicit TPoly(const Field& field) : field_(&field) {}
    TPoly(const Field& field, std::vector<Felt> coeffs) : field_(&field), coeffs_(std::move(coeffs)) { trim(); }

    static TPoly T(const Field& field) { return TPoly(field, {field.zero(), field.one()}); }
    static TPoly constant(const Field& field, const Felt& c) { return TPoly(field, {c}); }

    const Field& field() const { return *field_; }
    const std::vector<Felt>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    Felt coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : field_->zero(); }
    bool is_monic() const { return !is_zero() && coeffs_.back().is_one(); }

    friend bool operator==(const TPoly& a, const TPoly& b) { return a.field_ == b.field_ && a.coeffs_ == b.coeffs_; }

    friend TPoly operator+(const TPoly& a, const TPoly& b) {
        std::vector<Felt> out;
        for (std::size_t i = 0; i < std::max(a.coeffs_.size(), b.coeffs_.size()); ++i) {
            out.push_back(a.coeff(i) + b.coeff(i));
        }
        return TPoly(*a.field_, std::move(out));
    }
    friend TPoly operator-(const TPoly& a, const TPoly& b) {
        std::vector<Felt> out;
        for (std::size_t i = 0; i < std::max(a.coeffs_.size(), b.coeffs_.size()); ++i) {
            out.push_back(a.coeff(i) - b.coeff(i));
        }
        return TPoly(*a.field_, std::move(out));
    }
    friend TPoly operator*(const TPoly& a, const TPoly& b) {
        if (a.is_zero() || b.is_zero()) {
            return TPoly(*a.field_);
        }
        std::vector<Felt> out(a.coeffs_.size() + b.coeffs_.size() - 1, a.field_->zero());
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return TPoly(*a.field_, std::move(out));
    }

    TPoly pow(std::uint64_t e) const {
        TPoly result = constant(*field_, field_->one());
        TPoly base = *this;
        while (e != 0) {
            if (e & 1u) {
                result = result * base;
            }
            e >>= 1u;
            if (e != 0) {
                base = base * base;
            }
        }
        return result;
    }

    /// Remainder of division by a nonzero polynomial.
    TPoly mod(const TPoly& d) const {
        if (d.is_zero()) {
            throw Error(ErrorCode::ZeroDivisor, "polynomial division by zero");
        }
        std::vector<Felt> r = coeffs_;
        const Felt lead_inv = d.coeffs_.back().inv();
        while (r.size() >= d.coeffs_.size()) {
            const Felt c = r.back() * lead_inv;
            const std::size_t shift = r.size() - d.coeffs_.size();
            for (std::size_t i = 0; i < d.coeffs_.size(); ++i) {
                r[shift + i] -= c * d.coeffs_[i];
            }
            while (!r.empty() && r.back().is_zero()) {
                r.pop_back();
            }
        }
        return TPoly(*field_, std::move(r));
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) {
            coeffs_.pop_back();
        }
    }

    const Field* field_;
    std::vector<Felt> coeffs_;
};

inline std::string to_string(const TPoly& f) {
    if (f.is_zero()) {
        return "0";
    }
    std::string out;
    for (int i = f.degree(); i >= 0; --i) {
        const Felt c = f.coeff(static_cast<std::size_t>(i));
        if (c.is_zero()) {
            continue;
        }
        if (!out.empty()) {
            out += " + ";
        }
        const bool show_coeff = !c.is_one() || i == 0;
        if (show_coeff) {
            // Prime-field constants are the indices below p.
            out += c.index() < c.field().characteristic() ? std::to_string(c.index()) : encode(c);
        }
        if (i > 0) {
            out += show_coeff ? "*T" : "T";
            if (i > 1) {
                out += "^" + std::to_string(i);
            }
        }
    }
    return out;
}

/// q = p^q_exp, rank n, phi_T = -tau^n + g tau^j + 1, k = n - j.
struct DrinfeldParams {
    std::uint32_t p = 0;
    unsigned q_exp = 0;
    std::uint64_t q = 0;
    unsigned n = 0;
    unsigned j = 0;
    unsigned k = 0;

    std::uint64_t qpow(std::uint64_t r) const { return detail::upow(q, r); }
    std::uint64_t N(std::uint64_t r) const { return (qpow(r) - 1) / (q - 1); }
    /// GF(q^(nk)) contains both GF(q^n) and GF(q^k).
    const Field& working_field() const { return make_field(p, q_exp * n * k); }
    std::string label() const {
        return "(q=" + std::to_string(q) + ",n=" + std::to_string(n) + ",j=" + std::to_string(j) + ",k=" +
               std::to_string(k) + ")";
    }
    friend bool operator==(const DrinfeldParams&, const DrinfeldParams&) = default;
};

inline DrinfeldParams make_drinfeld_params(std::uint32_t p, unsigned q_exp, unsigned n, unsigned j) {
    if (!detail::is_prime(p)) {
        throw Error(ErrorCode::NonPrime, std::to_string(p) + " is not prime");
    }
    if (q_exp == 0 || n < 2 || j == 0 || j >= n) {
        throw Error(ErrorCode::InvalidParameter, "need q_exp >= 1 and 1 <= j < n");
    }
    if (std::gcd(n, j) != 1) {
        throw Error(ErrorCode::InvalidParameter, "gcd(n, j) must be 1");
    }
    DrinfeldParams d{p, q_exp, detail::upow(p, q_exp), n, j, n - j};
    if (!detail::checked_pow(p, std::uint64_t{q_exp} * n * d.k, kEnumerationCap)) {
        throw Error(ErrorCode::CapExceeded, "working field for " + d.label() + " exceeds the cap");
    }
    return d;
}

struct DrinfeldModule {
    DrinfeldParams params;
    Felt g;

    const Field& field() const { return g.field(); }
    bool supersingular() const { return g.is_zero(); }

    OrePoly phi_T() const {
        const Field& L = field();
        std::vector<Felt> c(params.n + 1, L.zero());
        c[0] = L.one();
        c[params.j] = g;
        c[params.n] = -L.one();
        return OrePoly(L, params.q, std::move(c));
    }
};

/// Image of P(T) under T -> phi_T, by Horner's rule.
inline OrePoly phi_of(const DrinfeldModule& m, const TPoly& P) {
    const Field& L = m.field();
    if (&P.field() != &L) {
        throw Error(ErrorCode::SpecMismatch, "polynomial and module over different fields");
    }
    const OrePoly phi = m.phi_T();
    OrePoly acc(L, m.params.q);
    for (int i = P.degree(); i >= 0; --i) {
        acc = ore_mul(acc, phi) + OrePoly::constant(L, m.params.q, P.coeff(static_cast<std::size_t>(i)));
    }
    return acc;
}

/// tau^k - a
inline OrePoly isogeny_lambda(const DrinfeldParams& d, const Felt& a) {
    const Field& L = a.field();
    return OrePoly::monomial(L, d.q, d.k, L.one()) - OrePoly::constant(L, d.q, a);
}

/// g^(q^k)/a - g/a^(q^j) - a^(q^n-1) + 1; zero exactly when tau^k - a is an
/// isogeny out of phi.
inline Felt isogeny_defect(const DrinfeldParams& d, const Felt& g, const Felt& a) {
    if (a.is_zero()) {
        throw Error(ErrorCode::ZeroArgument, "isogeny constant a must be nonzero");
    }
    const Felt one = a.field().one();
    return g.pow(d.qpow(d.k)) / a - g / a.pow(d.qpow(d.j)) - a.pow(d.qpow(d.n) - 1) + one;
}

inline Felt isogenous_h(const DrinfeldParams& d, const Felt& g, const Felt& a) {
    if (!isogeny_defect(d, g, a).is_zero()) {
        throw Error(ErrorCode::DefectNonzero, "tau^k - a is not an isogeny for this g");
    }
    return -a.pow(d.qpow(d.n)) + a + g.pow(d.qpow(d.k));
}

/// lambda * phi_T == psi_T * lambda
inline bool verify_intertwine(const DrinfeldModule& phi, const DrinfeldModule& psi, const OrePoly& lambda) {
    if (&phi.field() != &psi.field() || &phi.field() != &lambda.field()) {
        throw Error(ErrorCode::SpecMismatch, "modules and isogeny over different fields");
    }
    return ore_mul(lambda, phi.phi_T()) == ore_mul(psi.phi_T(), lambda);
}

namespace detail {

inline void require_nonzero_x(const Felt& x) {
    if (x.is_zero()) {
        throw Error(ErrorCode::ZeroArgument, "X must be nonzero");
    }
}

} // namespace detail

/// g = (X^(q^n-1) + c) / X^(q^j-1)
inline Felt g_of(const DrinfeldParams& d, const Felt& x, const Felt& c) {
    detail::require_nonzero_x(x);
    return (x.pow(d.qpow(d.n) - 1) + c) / x.pow(d.qpow(d.j) - 1);
}

/// h = (X^(q^n-1) + c) / X^(q^n-q^k)
inline Felt h_of(const DrinfeldParams& d, const Felt& x, const Felt& c) {
    detail::require_nonzero_x(x);
    return (x.pow(d.qpow(d.n) - 1) + c) / x.pow(d.qpow(d.n) - d.qpow(d.k));
}

/// a = X^(q^k-1), the isogeny constant whose kernel is GF(q^k) X.
inline Felt a_of(const DrinfeldParams& d, const Felt& x) {
    detail::require_nonzero_x(x);
    return x.pow(d.qpow(d.k) - 1);
}

struct TorsionReport {
    bool torsion = false;          // phi_T(X) = 0
    std::uint64_t kernel_size = 0;  // |ker(tau^k - X^(q^k-1))| in the working field
    bool kernel_is_line = false;   // kernel == GF(q^k) X

    bool ok() const { return torsion && kernel_is_line; }
};

inline TorsionReport torsion_check(const DrinfeldModule& m, const Felt& x) {
    detail::require_nonzero_x(x);
    const DrinfeldParams& d = m.params;
    const Field& L = m.field();
    TorsionReport r;
    r.torsion = apply(m.phi_T(), x).is_zero();
    const OrePoly lambda = isogeny_lambda(d, a_of(d, x));
    std::set<Felt> kernel;
    for (std::uint32_t i = 0; i < L.size(); ++i) {
        const Felt y(L, i);
        if (apply(lambda, y).is_zero()) {
            kernel.insert(y);
        }
    }
    std::set<Felt> line;
    for (const Felt& c : subfield_elements(L, d.q, d.k)) {
        line.insert(c * x);
    }
    r.kernel_size = kernel.size();
    r.kernel_is_line = kernel == line;
    return r;
}

/// P_k(T) = (T-1)^(N_k) - (-1)^k
inline TPoly pk_poly(const Field& L, std::uint64_t q, unsigned k) {
    if (k == 0) {
        throw Error(ErrorCode::InvalidParameter, "k must be positive");
    }
    const std::uint64_t nk = (detail::upow(q, k) - 1) / (q - 1);
    const TPoly t_minus_1 = TPoly::T(L) - TPoly::constant(L, L.one());
    const Felt sign = k % 2 == 0 ? L.one() : -L.one();
    return t_minus_1.pow(nk) - TPoly::constant(L, sign);
}

/// prod (T - 1 + beta) over the distinct (q-1)-th powers beta of GF(q^k)^x.
inline TPoly pk_product(const Field& L, std::uint64_t q, unsigned k) {
    std::set<Felt> betas;
    for (const Felt& x : subfield_elements(L, q, k)) {
        if (!x.is_zero()) {
            betas.insert(x.pow(q - 1));
        }
    }
    TPoly acc = TPoly::constant(L, L.one());
    for (const Felt& beta : betas) {
        acc = acc * TPoly(L, {beta - L.one(), L.one()});
    }
    return acc;
}

/// (T - 1)^k - (-1)^k. T - 1 acts on GF(q^k) X as minus a generator of
/// Gal(GF(q^k)/GF(q)), so this is the minimal annihilator of the kernel.
inline TPoly galois_annihilator(const Field& L, unsigned k) {
    if (k == 0) {
        throw Error(ErrorCode::InvalidParameter, "k must be positive");
    }
    const TPoly t_minus_1 = TPoly::T(L) - TPoly::constant(L, L.one());
    const Felt sign = k % 2 == 0 ? L.one() : -L.one();
    return t_minus_1.pow(k) - TPoly::constant(L, sign);
}

struct AnnihilationReport {
    bool annihilates = false;
    std::uint64_t proper_divisors_tested = 0;
    std::vector<std::string> annihilating_proper_divisors;
    std::string minimal;  // least-degree monic annihilator over GF(q), first in enumeration order
    bool galois_annihilates = false;

    bool minimal_witness() const { return annihilating_proper_divisors.empty(); }
    bool ok() const { return annihilates && minimal_witness(); }
};

namespace detail {

inline bool right_divides(const OrePoly& f, const OrePoly& lambda) {
    return ore_right_divmod(f, lambda).remainder.is_zero();
}

/// The monic polynomial of degree `deg` over GF(q) whose lower coefficients are the base-q digits of idx.
inline TPoly monic_from_index(const Field& L, const std::vector<Felt>& base, int deg, std::uint64_t idx) {
    std::vector<Felt> c(static_cast<std::size_t>(deg) + 1, L.zero());
    for (int i = 0; i < deg; ++i) {
        c[static_cast<std::size_t>(i)] = base[idx % base.size()];
        idx /= base.size();
    }
    c[static_cast<std::size_t>(deg)] = L.one();
    return TPoly(L, std::move(c));
}

} // namespace detail

/// Checks that lambda right-divides phi_{P_k}, that no proper monic divisor
/// D of P_k over GF(q) has phi_D right-divisible by lambda, and finds the
/// least-degree monic annihilator of ker lambda.
inline AnnihilationReport annihilation_check(const DrinfeldModule& m, const OrePoly& lambda) {
    const DrinfeldParams& d = m.params;
    const Field& L = m.field();
    const TPoly pk = pk_poly(L, d.q, d.k);
    AnnihilationReport r;
    r.annihilates = detail::right_divides(phi_of(m, pk), lambda);
    r.galois_annihilates = detail::right_divides(phi_of(m, galois_annihilator(L, d.k)), lambda);

    const std::vector<Felt> base = subfield_elements(L, d.q, 1);
    const auto budget = detail::checked_pow(d.q, static_cast<std::uint64_t>(pk.degree()), kEnumerationCap / 64);
    if (!budget) {
        throw Error(ErrorCode::CapExceeded, "too many candidate divisors of P_k for " + d.label());
    }
    for (int deg = 0; deg < pk.degree(); ++deg) {
        const std::uint64_t count = detail::upow(d.q, static_cast<std::uint64_t>(deg));
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            const TPoly D = detail::monic_from_index(L, base, deg, idx);
            if (!pk.mod(D).is_zero()) {
                continue;
            }
            ++r.proper_divisors_tested;
            if (detail::right_divides(phi_of(m, D), lambda)) {
                r.annihilating_proper_divisors.push_back(to_string(D));
            }
        }
    }

    // The Galois annihilator bounds the search degree.
    for (int deg = 1; deg <= static_cast<int>(d.k) && r.minimal.empty(); ++deg) {
        const std::uint64_t count = detail::upow(d.q, static_cast<std::uint64_t>(deg));
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            const TPoly D = detail::monic_from_index(L, base, deg, idx);
            if (detail::right_divides(phi_of(m, D), lambda)) {
                r.minimal = to_string(D);
                break;
            }
        }
    }
    return r;
}

/// J(phi) = g^(N_n)
inline Felt j_invariant(const DrinfeldParams& d, const Felt& g) { return g.pow(d.N(d.n)); }

struct JRecursion {
    Felt z;         // -X^(q^n-1)
    Felt j_phi;     // g^(N_n)
    Felt j_psi;     // h^(N_n)
    Felt closed_phi;  // (-1)^k (Z+1)^(N_n) / Z^(N_j)
    Felt closed_psi;  // (-1)^k (Z+1)^(N_n) / Z^(q^k N_j)

    bool degenerate() const { return (z + z.field().one()).is_zero(); }
    bool ok() const { return j_phi == closed_phi && j_psi == closed_psi; }
};

/// J-invariants of the torsion pair (g, h) at X against their closed forms in Z.
inline JRecursion j_recursion_check(const DrinfeldParams& d, const Felt& x) {
    detail::require_nonzero_x(x);
    const Field& L = x.field();
    const Felt minus_one = -L.one();
    JRecursion r;
    r.z = -x.pow(d.qpow(d.n) - 1);
    r.j_phi = j_invariant(d, g_of(d, x, minus_one));
    r.j_psi = j_invariant(d, h_of(d, x, minus_one));
    const Felt sign = d.k % 2 == 0 ? L.one() : minus_one;
    const Felt num = sign * (r.z + L.one()).pow(d.N(d.n));
    r.closed_phi = num / r.z.pow(d.N(d.j));
    r.closed_psi = num / r.z.pow(d.qpow(d.k) * d.N(d.j));
    return r;
}

/// Every nonzero X' in the field of X with g(X') = h(X), torsion parametrization.
inline std::vector<Felt> psi_partners(const DrinfeldParams& d, const Felt& x) {
    const Field& L = x.field();
    const Felt minus_one = -L.one();
    const Felt target = h_of(d, x, minus_one);
    std::vector<Felt> out;
    for (std::uint32_t i = 1; i < L.size(); ++i) {
        const Felt y(L, i);
        if (g_of(d, y, minus_one) == target) {
            out.push_back(y);
        }
    }
    return out;
}

} // namespace towerlab
