#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "algreach/change.hpp"
#include "algreach/modmath.hpp"

namespace algreach {

// Implicit representation of a quotient n-approximation of (I - xA_G)^{-1}:
// only the evaluations of numerators and denominators at integer points a,
// modulo per-point prime pools, are stored. Updates run the SMW quotient
// rule entirely on field values (evaluation commutes with every ring
// operation involved); distances are recovered by interpolating numerators
// per prime.
//
// Fractions are never reduced. All entries share one denominator polynomial:
// starting from denominator 1, one update step produces
//   C'_st = (g_st * h * det(fE) - h^{r^2} * Y_st) / (h^2 * det(fE))
// with f = h^{r^2} the product of the core's r^2 entry denominators, so a
// single shared denominator is maintained by construction and only one value
// per (a, p) cell is stored.
//
// Cells of the (a, p) grid are mutually independent during an update; the
// state as a whole is single-writer, multiple-reader.

struct QuotientConfig {
    int k = 0;                    // 0: ceil(log2 n / log2 log2 n)
    int epoch_len = 2;            // degree growth is multiplicative per step
    std::size_t point_count = 0;  // 0: sized from the epoch projection
    std::size_t prime_count = 0;  // 0: sized from the epoch projection
    std::uint64_t seed = 1;
};

// ---- degree / coefficient-magnitude accounting ----

// Upper bounds on an integer polynomial: degree and coefficient bit size
// (magnitude < 2^bits).
struct PolyBound {
    long long deg = 0;
    long long bits = 0;

    friend bool operator==(const PolyBound&, const PolyBound&) = default;
};

PolyBound pb_add(PolyBound a, PolyBound b);
PolyBound pb_mul(PolyBound a, PolyBound b);
PolyBound pb_sum(PolyBound term, long long count);
PolyBound pb_pow(PolyBound a, long long e);
PolyBound pb_det(PolyBound entry, int k);

struct QuotientBounds {
    PolyBound num;
    PolyBound den;

    long long deg_bound() const { return std::max(num.deg, den.deg); }
    long long coeff_bits() const { return std::max(num.bits, den.bits); }

    friend bool operator==(const QuotientBounds&, const QuotientBounds&) = default;
};

/// Numerators are degree-n truncations with walk-count coefficients (< n^{n-1});
/// the denominator is 1.
QuotientBounds quotient_initial_bounds(int n);

/// One update step's growth, mirroring the implementation op for op: core
/// assembly, f = h^{r^2}, det(fE) and its minors, the correction product,
/// and the final combination over the common denominator.
QuotientBounds quotient_advance_bounds(const QuotientBounds& b, int r, int c);

/// Worst-case bounds after epoch_len steps with r = c = k.
QuotientBounds quotient_project_epoch(int n, int k, int epoch_len);

// ---- engine state ----

struct QuotientState {
    int n = 0;
    EdgeSet edges;
    QuotientConfig cfg;
    std::vector<std::uint64_t> points;  // S = {1..point_count}
    PrimePool pool;
    std::vector<char> point_valid;              // per point
    std::vector<char> cell_valid;               // per (point, prime)
    std::vector<std::vector<std::uint64_t>> numer;  // per cell: n*n values g_st(a) mod p
    std::vector<std::uint64_t> denom;               // per cell: shared h(a) mod p
    QuotientBounds bounds;
    int step_count = 0;

    std::size_t cell(std::size_t ai, std::size_t pi) const { return ai * pool.size() + pi; }
    bool is_cell_valid(std::size_t ai, std::size_t pi) const {
        return point_valid[ai] && cell_valid[cell(ai, pi)];
    }
    std::uint64_t numer_value(std::size_t ai, std::size_t pi, NodeId s, NodeId t) const {
        return numer[cell(ai, pi)][static_cast<std::size_t>(s - 1) * n + (t - 1)];
    }
    std::uint64_t denom_value(std::size_t ai, std::size_t pi) const { return denom[cell(ai, pi)]; }
};

struct QuotientStepStats {
    int cells_invalidated = 0;
    int points_invalidated = 0;
    bool rebuilt = false;
};

QuotientState init_quotient(int n, const EdgeSet& graph, std::size_t point_count, PrimePool pool,
                            QuotientConfig cfg = {});
QuotientState init_quotient(int n, const EdgeSet& graph, QuotientConfig cfg = {});

/// True iff some set of primes each holding deg_bound+1 valid points has a
/// product exceeding 2^coeff_bits (the extraction precondition).
bool extraction_ready(const QuotientState& state);

/// Applies one batch: every valid (a, p) cell is updated on values, cells
/// with a vanishing new denominator are invalidated, points whose prime set
/// empties are dropped, and the tracked bounds advance by the explicit
/// accounting. Rolls the epoch lazily (a step submitted after epoch_len
/// first rebuilds) and forces a rebuild if extraction readiness is lost.
QuotientStepStats quotient_update(QuotientState& state, const ChangeBatch& batch);

struct QuotientExtraction {
    std::vector<std::optional<int>> dist;  // n*n row-major, 0-based offsets
    long long max_numerator_degree = 0;
    std::vector<std::uint64_t> primes_used;

    std::optional<int> at(NodeId s, NodeId t, int n) const {
        return dist[static_cast<std::size_t>(s - 1) * n + (t - 1)];
    }
};

/// Interpolates every entry's numerator per qualifying prime and reads off
/// the smallest nonzero coefficient index. Throws std::domain_error
/// ("insufficient valid data") when the precondition fails and
/// std::logic_error if an interpolated degree exceeds the tracked bound.
QuotientExtraction extract_all(const QuotientState& state);

std::optional<int> extract_distance(const QuotientState& state, NodeId s, NodeId t);

void rebuild(QuotientState& state);

}  // namespace algreach
