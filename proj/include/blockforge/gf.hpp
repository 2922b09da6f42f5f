#pragma once

// Arithmetic in GF(p^m).
//
// Elements are plain integers in [0, q) encoding a_0 + a_1 x + ... + a_{m-1} x^{m-1}
// as sum a_i p^i. Multiplication and inversion go through log/exp tables built
// once per field; a Field is a cheap shared handle to those immutable tables.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace blockforge::gf {

using Scalar = std::uint32_t;

inline constexpr std::uint32_t kMaxOrder = 1u << 16;

namespace detail {

inline bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

using Poly = std::vector<std::uint32_t>;  // coefficients low-to-high over GF(p)

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod_p(std::uint32_t a, std::uint32_t p) {
    std::uint64_t result = 1, base = a % p, e = p - 2;
    while (e) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(result);
}

/// Remainder of a modulo b over GF(p); b must be nonzero.
inline Poly poly_mod(Poly a, Poly b, std::uint32_t p) {
    trim(a);
    trim(b);
    const std::uint32_t lead_inv = inv_mod_p(b.back(), p);
    while (a.size() >= b.size()) {
        const std::uint64_t factor = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            std::uint64_t sub = factor * b[i] % p;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

/// Trial division by every monic polynomial of degree 1..deg/2.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
    const std::size_t deg = f.size() - 1;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t v = 0; v < count; ++v) {
            Poly g(d + 1);
            std::uint64_t x = v;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(x % p);
                x /= p;
            }
            g[d] = 1;
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

struct Tables {
    std::uint32_t p = 0, m = 0, q = 0;
    Poly modulus;
    std::vector<std::uint16_t> log;     // log[a] for a != 0
    std::vector<std::uint16_t> exp;     // length 2(q-1), exp[i] = g^i
    std::vector<std::uint16_t> add_tab; // q*q, only for small extension fields with p odd
    std::vector<std::uint16_t> neg_tab; // q
};

inline Scalar digit_add(Scalar a, Scalar b, std::uint32_t p, std::uint32_t m) {
    Scalar out = 0, scale = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        out += ((a % p + b % p) % p) * scale;
        a /= p;
        b /= p;
        scale *= p;
    }
    return out;
}

inline Scalar digit_neg(Scalar a, std::uint32_t p, std::uint32_t m) {
    Scalar out = 0, scale = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        out += ((p - a % p) % p) * scale;
        a /= p;
        scale *= p;
    }
    return out;
}

/// Schoolbook multiply mod the modulus; only used while building tables.
inline Scalar slow_mul(const Tables& t, Scalar a, Scalar b) {
    Poly pa(t.m), pb(t.m);
    for (std::uint32_t i = 0; i < t.m; ++i) {
        pa[i] = a % t.p;
        a /= t.p;
        pb[i] = b % t.p;
        b /= t.p;
    }
    Poly prod(2 * t.m, 0);
    for (std::uint32_t i = 0; i < t.m; ++i)
        for (std::uint32_t j = 0; j < t.m; ++j)
            prod[i + j] = static_cast<std::uint32_t>(
                (prod[i + j] + static_cast<std::uint64_t>(pa[i]) * pb[j]) % t.p);
    Poly r = poly_mod(prod, t.modulus, t.p);
    Scalar out = 0, scale = 1;
    for (std::size_t i = 0; i < r.size(); ++i) {
        out += r[i] * scale;
        scale *= t.p;
    }
    return out;
}

}  // namespace detail

/// Handle to an immutable finite field GF(p^m). Copies share the same tables.
class Field {
public:
    Field() = default;

    /// Builds GF(p^m). Without a modulus the least monic irreducible of degree m is
    /// chosen, ordering candidates by sum c_i p^i over the non-leading coefficients.
    static Field create(std::uint32_t p, std::uint32_t m,
                        std::optional<std::vector<std::uint32_t>> modulus = std::nullopt) {
        if (!detail::is_prime(p)) throw std::invalid_argument("field: p = " + std::to_string(p) + " is not prime");
        if (m < 1) throw std::invalid_argument("field: extension degree must be >= 1");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < m; ++i) {
            q *= p;
            if (q > kMaxOrder) throw std::invalid_argument("field: order exceeds 2^16");
        }
        auto t = std::make_shared<detail::Tables>();
        t->p = p;
        t->m = m;
        t->q = static_cast<std::uint32_t>(q);

        if (modulus) {
            const auto& f = *modulus;
            if (f.size() != m + 1) throw std::invalid_argument("field: modulus must have degree m");
            if (f.back() != 1) throw std::invalid_argument("field: modulus must be monic");
            for (auto c : f)
                if (c >= p) throw std::invalid_argument("field: modulus coefficient out of range");
            if (!detail::is_irreducible(f, p)) throw std::invalid_argument("field: modulus is reducible");
            t->modulus = f;
        } else {
            std::uint64_t count = q;  // p^m candidates for the low coefficients
            for (std::uint64_t v = 0; v < count; ++v) {
                detail::Poly f(m + 1);
                std::uint64_t x = v;
                for (std::uint32_t i = 0; i < m; ++i) {
                    f[i] = static_cast<std::uint32_t>(x % p);
                    x /= p;
                }
                f[m] = 1;
                if (detail::is_irreducible(f, p)) {
                    t->modulus = std::move(f);
                    break;
                }
            }
        }
        build_tables(*t);
        Field out;
        out.t_ = std::move(t);
        return out;
    }

    bool valid() const noexcept { return t_ != nullptr; }
    std::uint32_t p() const noexcept { return t_->p; }
    std::uint32_t m() const noexcept { return t_->m; }
    std::uint32_t q() const noexcept { return t_->q; }
    const std::vector<std::uint32_t>& modulus() const noexcept { return t_->modulus; }

    Scalar add(Scalar a, Scalar b) const noexcept {
        if (t_->p == 2) return a ^ b;
        if (t_->m == 1) {
            Scalar s = a + b;
            return s >= t_->p ? s - t_->p : s;
        }
        if (!t_->add_tab.empty()) return t_->add_tab[a * t_->q + b];
        return detail::digit_add(a, b, t_->p, t_->m);
    }
    Scalar neg(Scalar a) const noexcept {
        if (t_->p == 2) return a;
        if (t_->m == 1) return a == 0 ? 0 : t_->p - a;
        return t_->neg_tab[a];
    }
    Scalar sub(Scalar a, Scalar b) const noexcept { return add(a, neg(b)); }
    Scalar mul(Scalar a, Scalar b) const noexcept {
        if (a == 0 || b == 0) return 0;
        return t_->exp[t_->log[a] + t_->log[b]];
    }
    Scalar inv(Scalar a) const {
        if (a == 0) throw std::domain_error("field: inverse of zero");
        return t_->exp[(t_->q - 1 - t_->log[a]) % (t_->q - 1)];
    }
    Scalar div(Scalar a, Scalar b) const { return mul(a, inv(b)); }
    Scalar pow(Scalar a, std::uint64_t e) const noexcept {
        if (e == 0) return 1;
        if (a == 0) return 0;
        return t_->exp[(static_cast<std::uint64_t>(t_->log[a]) * (e % (t_->q - 1))) % (t_->q - 1)];
    }
    /// a * x + y, the elimination kernel.
    Scalar fma(Scalar a, Scalar x, Scalar y) const noexcept { return add(mul(a, x), y); }

    /// Image of an integer in the prime subfield.
    Scalar from_int(std::int64_t v) const noexcept {
        std::int64_t r = v % static_cast<std::int64_t>(t_->p);
        if (r < 0) r += t_->p;
        return static_cast<Scalar>(r);
    }

    Scalar encode(const std::vector<std::uint32_t>& coeffs) const {
        if (coeffs.size() > t_->m) throw std::invalid_argument("field: too many coefficients");
        Scalar out = 0, scale = 1;
        for (auto c : coeffs) {
            if (c >= t_->p) throw std::invalid_argument("field: coefficient out of range");
            out += c * scale;
            scale *= t_->p;
        }
        return out;
    }
    std::vector<std::uint32_t> decode(Scalar a) const {
        std::vector<std::uint32_t> out(t_->m);
        for (auto& c : out) {
            c = a % t_->p;
            a /= t_->p;
        }
        return out;
    }

    bool contains(Scalar a) const noexcept { return a < t_->q; }

    /// Fields are equal when they have the same characteristic, degree and modulus.
    friend bool operator==(const Field& a, const Field& b) noexcept {
        if (a.t_ == b.t_) return true;
        if (!a.t_ || !b.t_) return false;
        return a.t_->p == b.t_->p && a.t_->m == b.t_->m && a.t_->modulus == b.t_->modulus;
    }

    std::string name() const {
        return t_->m == 1 ? "GF(" + std::to_string(t_->p) + ")"
                          : "GF(" + std::to_string(t_->p) + "^" + std::to_string(t_->m) + ")";
    }

private:
    static void build_tables(detail::Tables& t) {
        const std::uint32_t q = t.q;
        if (t.p != 2 && t.m > 1) {
            t.neg_tab.resize(q);
            for (Scalar a = 0; a < q; ++a) t.neg_tab[a] = static_cast<std::uint16_t>(detail::digit_neg(a, t.p, t.m));
            if (q <= 256) {
                t.add_tab.resize(static_cast<std::size_t>(q) * q);
                for (Scalar a = 0; a < q; ++a)
                    for (Scalar b = 0; b < q; ++b)
                        t.add_tab[a * q + b] = static_cast<std::uint16_t>(detail::digit_add(a, b, t.p, t.m));
            }
        }
        t.log.assign(q, 0);
        t.exp.assign(2 * static_cast<std::size_t>(q - 1), 0);
        if (q == 2) {
            t.exp[0] = t.exp[1] = 1;
            return;
        }
        std::vector<std::uint32_t> prime_factors;
        for (std::uint32_t n = q - 1, d = 2; n > 1; ++d) {
            if (d * d > n) d = n;
            if (n % d == 0) {
                prime_factors.push_back(d);
                while (n % d == 0) n /= d;
            }
        }
        auto slow_pow = [&t](Scalar a, std::uint32_t e) {
            Scalar r = 1;
            while (e) {
                if (e & 1) r = detail::slow_mul(t, r, a);
                a = detail::slow_mul(t, a, a);
                e >>= 1;
            }
            return r;
        };
        for (Scalar g = 2; g < q; ++g) {
            bool primitive = true;
            for (auto r : prime_factors)
                if (slow_pow(g, (q - 1) / r) == 1) {
                    primitive = false;
                    break;
                }
            if (!primitive) continue;
            Scalar x = 1;
            for (std::uint32_t i = 0; i < q - 1; ++i) {
                t.exp[i] = t.exp[i + q - 1] = static_cast<std::uint16_t>(x);
                t.log[x] = static_cast<std::uint16_t>(i);
                x = detail::slow_mul(t, x, g);
            }
            return;
        }
        throw std::logic_error("field: no primitive element found");
    }

    std::shared_ptr<const detail::Tables> t_;
};

/// A field element bound to its field. Arithmetic across different fields throws.
class Element {
public:
    Element(Field f, Scalar v) : field_(std::move(f)), value_(v) {
        if (!field_.contains(v)) throw std::invalid_argument("element: value outside field");
    }

    const Field& field() const noexcept { return field_; }
    Scalar value() const noexcept { return value_; }

    Element inv() const { return {field_, field_.inv(value_)}; }
    Element pow(std::uint64_t e) const { return {field_, field_.pow(value_, e)}; }

    friend Element operator+(const Element& a, const Element& b) { return {same(a, b), a.field_.add(a.value_, b.value_)}; }
    friend Element operator-(const Element& a, const Element& b) { return {same(a, b), a.field_.sub(a.value_, b.value_)}; }
    friend Element operator*(const Element& a, const Element& b) { return {same(a, b), a.field_.mul(a.value_, b.value_)}; }
    friend Element operator/(const Element& a, const Element& b) { return {same(a, b), a.field_.div(a.value_, b.value_)}; }
    friend bool operator==(const Element& a, const Element& b) { return a.field_ == b.field_ && a.value_ == b.value_; }

private:
    static const Field& same(const Element& a, const Element& b) {
        if (!(a.field_ == b.field_)) throw std::invalid_argument("element: operands from different fields");
        return a.field_;
    }

    Field field_;
    Scalar value_;
};

}  // namespace blockforge::gf
