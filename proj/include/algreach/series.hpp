#pragma once

#include <cstdint>
#include <vector>

#include "algreach/modmath.hpp"

namespace algreach {

// Formal power series over Z_p truncated at a fixed degree bound m; exactly
// m+1 coefficients are stored. Two series agree as m-approximations iff they
// compare equal.
struct TruncatedSeries {
    std::vector<std::uint64_t> coeffs;  // c_0..c_m
    std::uint64_t modulus = 0;

    TruncatedSeries() = default;
    TruncatedSeries(int m, std::uint64_t p)
        : coeffs(static_cast<std::size_t>(m) + 1, 0), modulus(p) {}

    static TruncatedSeries constant(std::uint64_t c, int m, std::uint64_t p);

    int bound() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const;

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;
};

TruncatedSeries series_add(const TruncatedSeries& g, const TruncatedSeries& h);
TruncatedSeries series_sub(const TruncatedSeries& g, const TruncatedSeries& h);

/// Convolution truncated at the shared degree bound.
TruncatedSeries series_mul(const TruncatedSeries& g, const TruncatedSeries& h);

/// The unique d with g*d = 1 up to the bound, via d_0 = c_0^{-1},
/// d_j = -c_0^{-1} sum_{i=1..j} c_i d_{j-i}. Requires c_0 invertible mod p;
/// throws std::domain_error otherwise.
TruncatedSeries series_recip(const TruncatedSeries& g);

struct SeriesMatrix {
    int rows = 0;
    int cols = 0;
    int bound = 0;
    std::uint64_t modulus = 0;
    std::vector<TruncatedSeries> entries;

    SeriesMatrix() = default;
    SeriesMatrix(int r, int c, int m, std::uint64_t p);

    static SeriesMatrix identity(int k, int m, std::uint64_t p);

    TruncatedSeries& at(int i, int j) { return entries[static_cast<std::size_t>(i) * cols + j]; }
    const TruncatedSeries& at(int i, int j) const { return entries[static_cast<std::size_t>(i) * cols + j]; }

    friend bool operator==(const SeriesMatrix&, const SeriesMatrix&) = default;
};

SeriesMatrix polymat_add(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix polymat_sub(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix polymat_mul(const SeriesMatrix& a, const SeriesMatrix& b);

/// True iff the constant-coefficient matrix of e is the identity.
bool has_identity_constant_term(const SeriesMatrix& e);

/// Inverse of a normalized matrix E = I + x*F over the truncated-series
/// ring, by Gauss-Jordan elimination with series reciprocals on the pivots
/// (the normalized form keeps every pivot's constant term 1). Throws
/// std::domain_error("not normalized") when the precondition fails.
SeriesMatrix polymat_inverse_normalized(const SeriesMatrix& e);

}  // namespace algreach
