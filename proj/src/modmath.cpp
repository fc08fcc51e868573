#include "algreach/modmath.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>

namespace algreach {

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e > 0) {
        if (e & 1) r = mul_mod(r, a, m);
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
    a %= m;
    if (a == 0) throw std::domain_error("inv_mod: not invertible");
    // extended Euclid on (a, m); coefficients tracked for a only
    std::int64_t t0 = 0, t1 = 1;
    std::uint64_t r0 = m, r1 = a;
    while (r1 != 0) {
        std::uint64_t q = r0 / r1;
        std::uint64_t r2 = r0 - q * r1;
        std::int64_t t2 = t0 - static_cast<std::int64_t>(q) * t1;
        r0 = r1; r1 = r2;
        t0 = t1; t1 = t2;
    }
    if (r0 != 1) throw std::domain_error("inv_mod: not invertible");
    return t0 < 0 ? static_cast<std::uint64_t>(t0 + static_cast<std::int64_t>(m)) : static_cast<std::uint64_t>(t0);
}

namespace {

bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, int s) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < s; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;  // a witnesses compositeness
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // this witness set is deterministic for all 64-bit inputs
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (miller_rabin_witness(n, a, d, s)) return false;
    }
    return true;
}

std::uint64_t next_prime(std::uint64_t n) {
    if (n <= 2) return 2;
    std::uint64_t c = n | 1;
    while (!is_prime(c)) c += 2;
    return c;
}

Residue mod_inv(Residue a) {
    if (a.value % a.modulus == 0) throw std::domain_error("mod_inv: not invertible");
    return Residue{inv_mod(a.value, a.modulus), a.modulus};
}

std::size_t PrimePool::valid_count() const {
    std::size_t c = 0;
    for (bool v : valid) c += v ? 1 : 0;
    return c;
}

long long PrimePool::valid_product_bits() const {
    long long bits = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (valid[i]) bits += std::bit_width(primes[i]) - 1;  // p >= 2^(w-1)
    }
    return bits;
}

void PrimePool::reset_flags() {
    valid.assign(primes.size(), true);
}

PrimePool gen_primes(std::size_t count, std::uint64_t min_value) {
    PrimePool pool;
    pool.primes.reserve(count);
    std::uint64_t c = min_value < 2 ? 2 : min_value;
    while (pool.primes.size() < count) {
        c = next_prime(c);
        pool.primes.push_back(c);
        ++c;
    }
    pool.valid.assign(pool.primes.size(), true);
    return pool;
}

PrimePool random_prime_pool(std::size_t count, int bits, std::uint64_t seed) {
    if (bits < 3 || bits > 62) throw std::invalid_argument("random_prime_pool: bits out of range");
    std::mt19937_64 rng(seed);
    PrimePool pool;
    pool.primes.reserve(count);
    const std::uint64_t lo = 1ULL << (bits - 1);
    const std::uint64_t span = (1ULL << (bits - 1)) - 1;
    while (pool.primes.size() < count) {
        std::uint64_t p = next_prime(lo + rng() % span);
        bool dup = false;
        for (std::uint64_t q : pool.primes) dup = dup || q == p;
        if (!dup && p < (1ULL << bits)) pool.primes.push_back(p);
    }
    pool.valid.assign(pool.primes.size(), true);
    return pool;
}

namespace {

BigInt valid_product(const PrimePool& pool) {
    BigInt n = 1;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (pool.is_valid(i)) n *= pool.primes[i];
    }
    return n;
}

}  // namespace

CrrNumber crr_encode(const BigInt& x, const PrimePool& pool) {
    if (pool.empty()) throw std::domain_error("crr_encode: empty pool");
    const BigInt n = valid_product(pool);
    if (x >= 0) {
        if (x >= n) throw std::domain_error("crr_encode: value out of range");
    } else {
        if (2 * (-x) >= n) throw std::domain_error("crr_encode: value out of range");
    }
    CrrNumber out;
    out.residues.reserve(pool.size());
    for (std::uint64_t p : pool.primes) {
        BigInt r = x % p;
        if (r < 0) r += p;
        out.residues.push_back(Residue{r.convert_to<std::uint64_t>(), p});
    }
    BigInt mag = x < 0 ? BigInt(-x) : x;
    out.bound = mag == 0 ? 0 : static_cast<unsigned>(boost::multiprecision::msb(mag)) + 1;
    return out;
}

BigInt crr_decode(const CrrNumber& c, const PrimePool& pool) {
    if (pool.empty() || pool.valid_count() == 0) throw std::domain_error("crr_decode: no valid primes");
    if (c.residues.size() != pool.size()) throw std::invalid_argument("crr_decode: residues do not match pool");
    const BigInt n = valid_product(pool);
    BigInt acc = 0;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (!pool.is_valid(i)) continue;
        const std::uint64_t p = pool.primes[i];
        if (c.residues[i].modulus != p) throw std::invalid_argument("crr_decode: modulus mismatch");
        const BigInt ci = n / p;
        const std::uint64_t hi = inv_mod((ci % p).convert_to<std::uint64_t>(), p);
        acc += BigInt(c.residues[i].value) * hi * ci;
    }
    return acc % n;
}

BigInt crr_decode_balanced(const CrrNumber& c, const PrimePool& pool) {
    const BigInt n = valid_product(pool);
    BigInt x = crr_decode(c, pool);
    if (2 * x >= n) x -= n;
    return x;
}

NewtonInterpolator::NewtonInterpolator(std::vector<std::uint64_t> points, std::uint64_t p)
    : points_(std::move(points)), modulus_(p) {
    std::uint64_t max_diff = 0;
    for (std::size_t i = 0; i < points_.size(); ++i) {
        for (std::size_t j = i + 1; j < points_.size(); ++j) {
            std::uint64_t d = points_[j] > points_[i] ? points_[j] - points_[i] : points_[i] - points_[j];
            if (d == 0 || d % p == 0) throw std::invalid_argument("NewtonInterpolator: points not distinct mod p");
            max_diff = std::max(max_diff, d);
        }
    }
    inv_diff_.assign(max_diff + 1, 0);
    for (std::uint64_t d = 1; d <= max_diff; ++d) inv_diff_[d] = inv_mod(d % p, p);

    // N_j(x) = prod_{i<j} (x - points[i]), expanded to monomial coefficients
    const std::size_t m = points_.size();
    basis_offset_.resize(m);
    std::size_t total = 0;
    for (std::size_t j = 0; j < m; ++j) {
        basis_offset_[j] = total;
        total += j + 1;
    }
    basis_.assign(total, 0);
    basis_[0] = 1;
    for (std::size_t j = 1; j < m; ++j) {
        const std::uint64_t* prev = &basis_[basis_offset_[j - 1]];
        std::uint64_t* cur = &basis_[basis_offset_[j]];
        const std::uint64_t root = points_[j - 1] % p;
        for (std::size_t i = 0; i < j; ++i) {
            // multiply by (x - root)
            cur[i + 1] = add_mod(cur[i + 1], prev[i], p);
            cur[i] = sub_mod(cur[i], mul_mod(root, prev[i], p), p);
        }
    }
}

std::vector<std::uint64_t> NewtonInterpolator::coefficients(const std::vector<std::uint64_t>& values) const {
    const std::size_t m = points_.size();
    if (values.size() != m) throw std::invalid_argument("NewtonInterpolator: value count mismatch");
    const std::uint64_t p = modulus_;

    // divided differences in place: after level l, dd[i] = f[x_i..x_{i+l}]
    std::vector<std::uint64_t> dd(values);
    for (std::uint64_t& v : dd) v %= p;
    std::vector<std::uint64_t> newton(m);
    newton[0] = dd[0];
    for (std::size_t l = 1; l < m; ++l) {
        for (std::size_t i = 0; i + l < m; ++i) {
            std::uint64_t num = sub_mod(dd[i + 1], dd[i], p);
            std::uint64_t xj = points_[i + l], xi = points_[i];
            std::uint64_t inv = xj > xi ? inv_diff_[xj - xi] : p - inv_diff_[xi - xj];
            dd[i] = mul_mod(num, inv, p);
        }
        newton[l] = dd[0];
    }

    std::vector<std::uint64_t> coeffs(m, 0);
    for (std::size_t j = 0; j < m; ++j) {
        if (newton[j] == 0) continue;
        const std::uint64_t* nb = &basis_[basis_offset_[j]];
        for (std::size_t i = 0; i <= j; ++i) {
            coeffs[i] = add_mod(coeffs[i], mul_mod(newton[j], nb[i], p), p);
        }
    }
    return coeffs;
}

}  // namespace algreach
