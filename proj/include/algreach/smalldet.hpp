#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "algreach/modmath.hpp"

namespace algreach {

// Dense matrix over Z_p, row-major, entries kept in [0, p).
struct ModMatrix {
    int rows = 0;
    int cols = 0;
    std::uint64_t modulus = 0;
    std::vector<std::uint64_t> entries;

    ModMatrix() = default;
    ModMatrix(int r, int c, std::uint64_t p)
        : rows(r), cols(c), modulus(p), entries(static_cast<std::size_t>(r) * c, 0) {}

    static ModMatrix identity(int k, std::uint64_t p);

    std::uint64_t& at(int i, int j) { return entries[static_cast<std::size_t>(i) * cols + j]; }
    std::uint64_t at(int i, int j) const { return entries[static_cast<std::size_t>(i) * cols + j]; }
    bool square() const { return rows == cols; }

    friend bool operator==(const ModMatrix&, const ModMatrix&) = default;
};

ModMatrix mat_mul(const ModMatrix& a, const ModMatrix& b);
ModMatrix mat_add(const ModMatrix& a, const ModMatrix& b);
ModMatrix mat_sub(const ModMatrix& a, const ModMatrix& b);

/// Determinant by Gaussian elimination with partial pivoting over Z_p.
Residue det_elimination(const ModMatrix& m);

/// Full inverse by Gauss-Jordan; empty optional when singular mod p.
std::optional<ModMatrix> invert_elimination(const ModMatrix& m);

// Column permutation that makes every diagonal entry and every leading
// principal minor nonzero, plus the permutation's sign.
struct PivotPermutation {
    std::vector<int> mapping;  // position j holds the original column mapping[j]
    int sign = 1;
};

/// Greedy construction working from the bottom row up; each level picks a
/// column whose entry and complementary minor are both nonzero. Throws
/// std::domain_error on singular input.
PivotPermutation pivot_permutation(const ModMatrix& m);

ModMatrix apply_column_permutation(const ModMatrix& m, const PivotPermutation& perm);

struct SelfReducibleGuard {
    std::uint64_t max_modulus = 1ULL << 16;
    int max_dim = 8;
};

/// Determinant via the pivoted diagonal recurrence d_i = (a_ii - b_i) d_{i-1},
/// where each b_i is the unique diagonal replacement making the leading
/// submatrix singular, located by exhaustive search over Z_p with an
/// elimination zero-test per candidate. Returns 0 for singular input.
/// Throws std::domain_error when the guard is exceeded.
Residue det_self_reducible(const ModMatrix& m, SelfReducibleGuard guard = {});

enum class DetRoutine { Elimination, SelfReducible };

Residue det_by(const ModMatrix& m, DetRoutine routine, SelfReducibleGuard guard = {});

/// Adjugate matrix: adj(m) * m = det(m) * I. Minors evaluated by the chosen
/// determinant routine. Defined for singular input as well.
ModMatrix cofactor_adjugate(const ModMatrix& m, DetRoutine routine = DetRoutine::Elimination);

/// Inverse with entry (i,j) = (-1)^{i+j} det(m_ji) / det(m). Throws
/// std::domain_error on singular input.
ModMatrix adjugate_inverse(const ModMatrix& m, DetRoutine routine = DetRoutine::Elimination);

namespace detail {
// Destructive determinant of the k x k row-major buffer `a`.
std::uint64_t det_destructive(std::uint64_t* a, int k, std::uint64_t p);
}  // namespace detail

}  // namespace algreach
