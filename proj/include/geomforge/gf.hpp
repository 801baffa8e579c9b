#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace geomforge {

/// A finite field GF(p^k). Elements are integer codes in [0, p^k): the code
/// is the modulus-reduced polynomial evaluated at p (digits base p are the
/// coefficients, lowest degree first). The modulus is the lexicographically
/// smallest monic irreducible polynomial of degree k, comparing coefficient
/// tuples (c_0, c_1, ..., c_{k-1}) as integers, so element codes are
/// reproducible across runs without external tables.
///
/// Instances are interned: Gf::get(p, k) returns the same object for the
/// same parameters. All tables are built once; afterwards the object is
/// immutable and safe to share between threads.
class Gf {
public:
    static constexpr std::uint32_t kMaxSize = 4096;

    static const Gf& get(unsigned p, unsigned k) {
        static std::mutex mu;
        static std::map<std::pair<unsigned, unsigned>, std::unique_ptr<Gf>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto key = std::make_pair(p, k);
        auto it = cache.find(key);
        if (it == cache.end())
            it = cache.emplace(key, std::unique_ptr<Gf>(new Gf(p, k))).first;
        return *it->second;
    }

    unsigned p() const { return p_; }
    unsigned k() const { return k_; }
    std::uint32_t q() const { return q_; }

    /// Modulus coefficients c_0..c_k (monic, c_k = 1).
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        if (p_ == 2) return a ^ b;
        return addt_[a * q_ + b];
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
    std::uint32_t neg(std::uint32_t a) const { return negt_[a]; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mult_[a * q_ + b]; }
    std::uint32_t inv(std::uint32_t a) const {
        if (a == 0) throw std::domain_error("division by zero in GF(" + std::to_string(q_) + ")");
        return invt_[a];
    }
    std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }
    std::uint32_t one() const { return 1; }
    /// -1 as an element (equals 1 in characteristic 2).
    std::uint32_t minus_one() const { return neg(1); }

    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
        std::uint32_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    /// Frobenius x -> x^p.
    std::uint32_t frobenius(std::uint32_t a) const { return frobt_[a]; }

    /// Smallest-code generator of the multiplicative group.
    std::uint32_t primitive_element() const { return primitive_; }

    /// Embeds an integer via the prime subfield (n mod p).
    std::uint32_t from_int(long long n) const {
        long long r = n % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return static_cast<std::uint32_t>(r);
    }

    std::string literal(std::uint32_t a) const { return std::to_string(a); }

    bool operator==(const Gf& other) const { return this == &other; }

private:
    Gf(unsigned p, unsigned k) : p_(p), k_(k) {
        if (k < 1) throw std::invalid_argument("extension degree must be >= 1");
        if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
        std::uint64_t q = 1;
        for (unsigned i = 0; i < k; ++i) {
            q *= p;
            if (q > kMaxSize) throw std::invalid_argument("field size exceeds desk-scale limit");
        }
        q_ = static_cast<std::uint32_t>(q);
        modulus_ = smallest_irreducible();
        build_tables();
    }

    static bool is_prime(unsigned n) {
        if (n < 2) return false;
        for (unsigned d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    // --- polynomial helpers over GF(p), coefficients low degree first ---

    std::vector<std::uint32_t> poly_of_code(std::uint32_t code) const {
        std::vector<std::uint32_t> c(k_, 0);
        for (unsigned i = 0; i < k_; ++i) {
            c[i] = code % p_;
            code /= p_;
        }
        return c;
    }
    std::uint32_t code_of_poly(const std::vector<std::uint32_t>& c) const {
        std::uint32_t code = 0, w = 1;
        for (unsigned i = 0; i < k_; ++i) {
            code += (i < c.size() ? c[i] : 0) * w;
            w *= p_;
        }
        return code;
    }

    // Remainder of a by b over GF(p); b monic-led (leading coeff invertible).
    static std::vector<std::uint32_t> poly_mod(std::vector<std::uint32_t> a,
                                               const std::vector<std::uint32_t>& b, unsigned p) {
        auto deg = [](const std::vector<std::uint32_t>& v) -> int {
            for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
                if (v[i]) return i;
            return -1;
        };
        int db = deg(b);
        std::uint32_t lead = b[db];
        std::uint32_t lead_inv = 1;
        for (std::uint32_t x = 1; x < p; ++x)
            if (x * lead % p == 1) { lead_inv = x; break; }
        int da = deg(a);
        while (da >= db) {
            std::uint32_t f = a[da] * lead_inv % p;
            for (int i = 0; i <= db; ++i) {
                std::uint32_t s = f * b[i] % p;
                std::uint32_t& t = a[da - db + i];
                t = (t + p - s) % p;
            }
            da = deg(a);
        }
        a.resize(db > 0 ? db : 1, 0);
        return a;
    }

    static std::vector<std::uint32_t> poly_mul_mod(const std::vector<std::uint32_t>& a,
                                                   const std::vector<std::uint32_t>& b,
                                                   const std::vector<std::uint32_t>& m, unsigned p) {
        std::vector<std::uint32_t> prod(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
        return poly_mod(std::move(prod), m, p);
    }

    bool is_irreducible(const std::vector<std::uint32_t>& m) const {
        // Trial division by all monic polynomials of degree 1..k/2.
        for (unsigned d = 1; 2 * d <= k_; ++d) {
            std::uint64_t count = 1;
            for (unsigned i = 0; i < d; ++i) count *= p_;
            for (std::uint64_t code = 0; code < count; ++code) {
                std::vector<std::uint32_t> div(d + 1, 0);
                std::uint64_t c = code;
                for (unsigned i = 0; i < d; ++i) { div[i] = c % p_; c /= p_; }
                div[d] = 1;
                auto rem = poly_mod(m, div, p_);
                bool zero = true;
                for (auto x : rem) if (x) { zero = false; break; }
                if (zero) return false;
            }
        }
        return true;
    }

    std::vector<std::uint32_t> smallest_irreducible() const {
        if (k_ == 1) return {0, 1}; // x, unused: reduction is mod p directly
        std::uint64_t count = q_;
        for (std::uint64_t code = 0; code < count; ++code) {
            std::vector<std::uint32_t> m(k_ + 1, 0);
            std::uint64_t c = code;
            for (unsigned i = 0; i < k_; ++i) { m[i] = c % p_; c /= p_; }
            m[k_] = 1;
            if (is_irreducible(m)) return m;
        }
        throw std::logic_error("no irreducible polynomial found");
    }

    void build_tables() {
        if (p_ != 2) addt_.resize(static_cast<std::size_t>(q_) * q_);
        mult_.resize(static_cast<std::size_t>(q_) * q_);
        negt_.resize(q_);
        invt_.resize(q_, 0);
        frobt_.resize(q_);
        for (std::uint32_t a = 0; a < q_; ++a) {
            auto pa = poly_of_code(a);
            // negation
            std::vector<std::uint32_t> na(k_);
            for (unsigned i = 0; i < k_; ++i) na[i] = (p_ - pa[i]) % p_;
            negt_[a] = code_of_poly(na);
            for (std::uint32_t b = 0; b < q_; ++b) {
                auto pb = poly_of_code(b);
                if (p_ != 2) {
                    std::vector<std::uint32_t> s(k_);
                    for (unsigned i = 0; i < k_; ++i) s[i] = (pa[i] + pb[i]) % p_;
                    addt_[static_cast<std::size_t>(a) * q_ + b] = code_of_poly(s);
                }
                std::vector<std::uint32_t> m;
                if (k_ == 1)
                    m = {a * b % p_};
                else
                    m = poly_mul_mod(pa, pb, modulus_, p_);
                mult_[static_cast<std::size_t>(a) * q_ + b] = code_of_poly(m);
            }
        }
        for (std::uint32_t a = 1; a < q_; ++a)
            for (std::uint32_t b = 1; b < q_; ++b)
                if (mult_[static_cast<std::size_t>(a) * q_ + b] == 1) { invt_[a] = b; break; }
        for (std::uint32_t a = 0; a < q_; ++a) frobt_[a] = pow(a, p_);
        primitive_ = 0;
        for (std::uint32_t g = 1; g < q_; ++g) {
            std::uint32_t x = g;
            std::uint32_t ord = 1;
            while (x != 1) { x = mul(x, g); ++ord; }
            if (ord == q_ - 1) { primitive_ = g; break; }
        }
    }

    unsigned p_, k_;
    std::uint32_t q_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::vector<std::uint32_t> addt_, mult_, negt_, invt_, frobt_;
    std::uint32_t primitive_ = 0;
};

/// p prime, k >= 1, p^k within the desk-scale limit.
inline const Gf& field_make(unsigned p, unsigned k) { return Gf::get(p, k); }

/// Field automorphism x -> x^(p^e). Composing k Frobenius maps is the
/// identity, so e is kept mod k. Over a commutative field this is also the
/// anti-automorphism descriptor used by the form machinery.
class FieldAuto {
public:
    FieldAuto() : F_(nullptr), e_(0) {}
    FieldAuto(const Gf& F, unsigned e) : F_(&F), e_(e % F.k()) {}

    static FieldAuto identity(const Gf& F) { return FieldAuto(F, 0); }
    static FieldAuto frobenius(const Gf& F) { return FieldAuto(F, 1); }

    const Gf& field() const { return *F_; }
    unsigned exponent() const { return e_; }
    bool is_identity() const { return e_ == 0; }

    std::uint32_t operator()(std::uint32_t a) const {
        std::uint64_t pe = 1;
        for (unsigned i = 0; i < e_; ++i) pe *= F_->p();
        return F_->pow(a, pe);
    }

    FieldAuto compose(const FieldAuto& other) const {
        if (F_ != other.F_) throw std::invalid_argument("automorphism field mismatch");
        return FieldAuto(*F_, e_ + other.e_);
    }
    FieldAuto inverse() const { return FieldAuto(*F_, (F_->k() - e_) % F_->k()); }

    bool operator==(const FieldAuto& o) const { return F_ == o.F_ && e_ == o.e_; }

private:
    const Gf* F_;
    unsigned e_;
};

} // namespace geomforge
