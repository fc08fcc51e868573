#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace algreach {

using BigInt = boost::multiprecision::cpp_int;

// ---- word-size modular arithmetic; moduli must fit in 62 bits ----

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    std::uint64_t s = a + b;
    return s >= m ? s - m : s;
}

inline std::uint64_t sub_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return a >= b ? a - b : a + (m - b);
}

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m);

/// Inverse of a modulo m via extended Euclid. Throws std::domain_error if
/// gcd(a, m) != 1 (in particular for a == 0).
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime(std::uint64_t n);

/// Smallest prime >= n.
std::uint64_t next_prime(std::uint64_t n);

// ---- prime-field scalar ----

struct Residue {
    std::uint64_t value = 0;
    std::uint64_t modulus = 0;

    friend bool operator==(const Residue&, const Residue&) = default;
};

/// Multiplicative inverse in Z_p. Throws std::domain_error on zero input.
Residue mod_inv(Residue a);

// ---- prime pools ----

// Ordered set of distinct primes with per-prime validity flags. Flags only
// ever go from set to cleared between rebuilds.
struct PrimePool {
    std::vector<std::uint64_t> primes;
    std::vector<bool> valid;

    std::size_t size() const { return primes.size(); }
    bool empty() const { return primes.empty(); }
    bool is_valid(std::size_t i) const { return valid[i]; }
    void invalidate(std::size_t i) { valid[i] = false; }
    std::size_t valid_count() const;

    /// Lower bound on log2 of the product of currently valid primes.
    long long valid_product_bits() const;

    void reset_flags();
};

/// The `count` smallest primes >= min_value, all flags set.
PrimePool gen_primes(std::size_t count, std::uint64_t min_value);

/// `count` distinct pseudo-random primes of the given bit width (<= 62),
/// deterministic in the seed.
PrimePool random_prime_pool(std::size_t count, int bits, std::uint64_t seed);

// ---- Chinese remainder representation ----

struct CrrNumber {
    std::vector<Residue> residues;  // one per pool prime, pool order
    unsigned bound = 0;             // bit length of the encoded magnitude
};

/// Encode x against the pool's valid primes. Accepts x in [0, N) or, for
/// negative x, |x| < N/2 (balanced convention); throws std::domain_error
/// outside that range. Residues for invalid primes are still filled so the
/// number stays aligned with the pool.
CrrNumber crr_encode(const BigInt& x, const PrimePool& pool);

/// The unique x in [0, N) matching the residues at every valid prime, where
/// N is the product of the valid primes. Throws if no prime is valid.
BigInt crr_decode(const CrrNumber& c, const PrimePool& pool);

/// Balanced representative in [-N/2, N/2).
BigInt crr_decode_balanced(const CrrNumber& c, const PrimePool& pool);

// ---- polynomial interpolation over Z_p ----

// Newton-form interpolation through fixed integer sample points. The basis
// expansion is precomputed once so repeated interpolations against the same
// points cost O(D^2) each. Points must be distinct mod p and nonzero
// pairwise differences must fit the inverse table (true for points drawn
// from {1..S} with p > S).
class NewtonInterpolator {
public:
    NewtonInterpolator(std::vector<std::uint64_t> points, std::uint64_t p);

    /// Monomial coefficients (size = #points) of the unique interpolating
    /// polynomial through (points[i], values[i]).
    std::vector<std::uint64_t> coefficients(const std::vector<std::uint64_t>& values) const;

    std::size_t point_count() const { return points_.size(); }

private:
    std::vector<std::uint64_t> points_;
    std::uint64_t modulus_;
    std::vector<std::uint64_t> inv_diff_;    // inverse of d for d = 1..max diff
    std::vector<std::uint64_t> basis_;       // packed triangular Newton basis
    std::vector<std::size_t> basis_offset_;  // basis_[offset[j]..offset[j]+j] = N_j
};

}  // namespace algreach
