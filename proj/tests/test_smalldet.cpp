#include <doctest.h>

#include <random>

#include "algreach/oracles.hpp"
#include "algreach/smalldet.hpp"
#include "support/testutil.hpp"

using namespace algreach;

namespace {

ModMatrix from_rows(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t p) {
    ModMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()), p);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j] % p;
    return m;
}

}  // namespace

TEST_CASE("det_elimination examples") {
    for (int k : {1, 2, 5}) CHECK(det_elimination(ModMatrix::identity(k, 11)).value == 1);
    CHECK(det_elimination(from_rows({{2, 1}, {1, 3}}, 7)).value == 5);  // 2*3 - 1*1
    CHECK(det_elimination(from_rows({{1, 1}, {1, 1}}, 13)).value == 0);
    ModMatrix rect(2, 3, 5);
    CHECK_THROWS_AS(det_elimination(rect), std::invalid_argument);
}

TEST_CASE("column swap negates the determinant") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t p = trial % 2 == 0 ? 101 : 65521;
        const int k = 2 + static_cast<int>(rng() % 4);
        ModMatrix m = testutil::random_mod_matrix(k, p, rng);
        const std::uint64_t before = det_elimination(m).value;
        const int a = static_cast<int>(rng() % k);
        int b = static_cast<int>(rng() % k);
        if (a == b) b = (b + 1) % k;
        for (int i = 0; i < k; ++i) std::swap(m.at(i, a), m.at(i, b));
        CHECK(det_elimination(m).value == (p - before) % p);
    }
}

TEST_CASE("pivot_permutation examples") {
    const PivotPermutation id_perm = pivot_permutation(ModMatrix::identity(3, 5));
    CHECK(id_perm.mapping == std::vector<int>{0, 1, 2});
    CHECK(id_perm.sign == 1);

    const PivotPermutation swap = pivot_permutation(from_rows({{0, 1}, {1, 0}}, 5));
    CHECK(swap.mapping == std::vector<int>{1, 0});
    CHECK(swap.sign == -1);

    CHECK_THROWS_AS(pivot_permutation(from_rows({{1, 1}, {1, 1}}, 3)), std::domain_error);
}

TEST_CASE("pivot_permutation yields nonzero leading minors") {
    std::mt19937_64 rng(3);
    int done = 0;
    while (done < 100) {
        const std::uint64_t p = 17;
        const int k = 1 + static_cast<int>(rng() % 5);
        const ModMatrix m = testutil::random_mod_matrix(k, p, rng);
        if (det_elimination(m).value == 0) continue;
        const PivotPermutation perm = pivot_permutation(m);
        const ModMatrix a = apply_column_permutation(m, perm);
        for (int i = 1; i <= k; ++i) {
            CHECK(a.at(i - 1, i - 1) != 0);
            ModMatrix leading(i, i, p);
            for (int r = 0; r < i; ++r)
                for (int c = 0; c < i; ++c) leading.at(r, c) = a.at(r, c);
            CHECK(det_elimination(leading).value != 0);
        }
        ++done;
    }
}

TEST_CASE("det_self_reducible examples") {
    CHECK(det_self_reducible(ModMatrix::identity(4, 13)).value == 1);
    CHECK(det_self_reducible(from_rows({{2, 1}, {1, 3}}, 7)).value == 5);
    CHECK(det_self_reducible(from_rows({{1, 1}, {1, 1}}, 5)).value == 0);
    // permuted case exercises the sign bookkeeping
    CHECK(det_self_reducible(from_rows({{0, 1}, {1, 0}}, 5)).value == 4);
}

TEST_CASE("det_self_reducible guard") {
    const ModMatrix m = ModMatrix::identity(2, 65537);  // just past the modulus guard
    CHECK_THROWS_AS(det_self_reducible(m), std::domain_error);
    const ModMatrix big = ModMatrix::identity(9, 5);
    CHECK_THROWS_AS(det_self_reducible(big), std::domain_error);
    SelfReducibleGuard loose{1ULL << 17, 9};
    CHECK(det_self_reducible(m, loose).value == 1);
    CHECK(det_self_reducible(big, loose).value == 1);
}

TEST_CASE("det_self_reducible equals det_elimination") {
    std::mt19937_64 rng(8);
    const std::vector<std::uint64_t> primes{2, 3, 5, 13, 97, 251};
    for (int trial = 0; trial < 300; ++trial) {
        const std::uint64_t p = primes[rng() % primes.size()];
        const int k = 1 + static_cast<int>(rng() % 5);
        ModMatrix m = testutil::random_mod_matrix(k, p, rng);
        if (trial % 4 == 0 && k >= 2) {
            // force singularity: duplicate a row
            for (int j = 0; j < k; ++j) m.at(k - 1, j) = m.at(0, j);
        }
        CHECK(det_self_reducible(m) == det_elimination(m));
    }
}

TEST_CASE("adjugate_inverse examples") {
    CHECK(adjugate_inverse(ModMatrix::identity(3, 7)) == ModMatrix::identity(3, 7));
    CHECK(adjugate_inverse(from_rows({{2, 1}, {1, 3}}, 7)) == from_rows({{2, 4}, {4, 6}}, 7));
    CHECK_THROWS_AS(adjugate_inverse(from_rows({{1, 1}, {1, 1}}, 5)), std::domain_error);
}

TEST_CASE("adjugate_inverse multiplies back to identity") {
    std::mt19937_64 rng(77);
    int done = 0;
    while (done < 100) {
        const std::uint64_t p = done % 2 == 0 ? 31 : 4099;
        const int k = 1 + static_cast<int>(rng() % 4);
        const ModMatrix m = testutil::random_mod_matrix(k, p, rng);
        if (det_elimination(m).value == 0) continue;
        const DetRoutine routine = done % 3 == 0 ? DetRoutine::SelfReducible : DetRoutine::Elimination;
        CHECK(mat_mul(m, adjugate_inverse(m, routine)) == ModMatrix::identity(k, p));
        ++done;
    }
}

TEST_CASE("invert_elimination inverts or reports singular") {
    std::mt19937_64 rng(15);
    const std::uint64_t p = 1009;
    for (int trial = 0; trial < 100; ++trial) {
        const int k = 1 + static_cast<int>(rng() % 8);
        const ModMatrix m = testutil::random_mod_matrix(k, p, rng);
        const auto inv = invert_elimination(m);
        if (det_elimination(m).value == 0) {
            CHECK_FALSE(inv.has_value());
        } else {
            REQUIRE(inv.has_value());
            CHECK(mat_mul(m, *inv) == ModMatrix::identity(k, p));
            CHECK(mat_mul(*inv, m) == ModMatrix::identity(k, p));
        }
    }
}

TEST_CASE("determinant via small primes and CRR reconstruction") {
    // det commutes with reduction mod q: compute it modulo small primes and
    // decode against a pool sized by the Hadamard bound k^{k/2} (p-1)^k
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 40; ++trial) {
        const int k = 1 + static_cast<int>(rng() % 4);
        const std::uint64_t p = 97;
        IntMatrix exact(k, std::vector<BigInt>(k));
        for (auto& row : exact)
            for (auto& v : row) v = rng() % p;

        BigInt hadamard = 1;
        for (int i = 0; i < (k + 1) / 2; ++i) hadamard *= k;
        for (int i = 0; i < k; ++i) hadamard *= p - 1;
        PrimePool pool;
        BigInt product = 1;
        std::uint64_t q = 1;
        while (product <= 2 * hadamard) {
            q = next_prime(q + 1);
            pool.primes.push_back(q);
            product *= q;
        }
        pool.valid.assign(pool.primes.size(), true);

        CrrNumber det_crr;
        det_crr.residues.reserve(pool.size());
        for (std::uint64_t prime : pool.primes) {
            ModMatrix m(k, k, prime);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    m.at(i, j) = exact[i][j].convert_to<std::uint64_t>() % prime;
            const DetRoutine routine =
                trial % 2 == 0 ? DetRoutine::Elimination : DetRoutine::SelfReducible;
            det_crr.residues.push_back(det_by(m, routine));
        }
        CHECK(crr_decode_balanced(det_crr, pool) == det_exact(exact));
    }
}

TEST_CASE("cofactor_adjugate satisfies adj(m) * m = det * I") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        const std::uint64_t p = 97;
        const int k = 1 + static_cast<int>(rng() % 4);
        const ModMatrix m = testutil::random_mod_matrix(k, p, rng);
        const std::uint64_t det = det_elimination(m).value;
        ModMatrix scaled = ModMatrix::identity(k, p);
        for (auto& v : scaled.entries) v = mul_mod(v, det, p);
        CHECK(mat_mul(cofactor_adjugate(m), m) == scaled);
        CHECK(mat_mul(m, cofactor_adjugate(m)) == scaled);
    }
}
