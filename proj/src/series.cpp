#include "algreach/series.hpp"

#include <stdexcept>

namespace algreach {

TruncatedSeries TruncatedSeries::constant(std::uint64_t c, int m, std::uint64_t p) {
    TruncatedSeries s(m, p);
    s.coeffs[0] = c % p;
    return s;
}

bool TruncatedSeries::is_zero() const {
    for (std::uint64_t c : coeffs)
        if (c != 0) return false;
    return true;
}

namespace {

void check_compatible(const TruncatedSeries& g, const TruncatedSeries& h) {
    if (g.coeffs.size() != h.coeffs.size() || g.modulus != h.modulus)
        throw std::invalid_argument("series degree bound or modulus mismatch");
}

}  // namespace

TruncatedSeries series_add(const TruncatedSeries& g, const TruncatedSeries& h) {
    check_compatible(g, h);
    TruncatedSeries out = g;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i)
        out.coeffs[i] = add_mod(out.coeffs[i], h.coeffs[i], g.modulus);
    return out;
}

TruncatedSeries series_sub(const TruncatedSeries& g, const TruncatedSeries& h) {
    check_compatible(g, h);
    TruncatedSeries out = g;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i)
        out.coeffs[i] = sub_mod(out.coeffs[i], h.coeffs[i], g.modulus);
    return out;
}

TruncatedSeries series_mul(const TruncatedSeries& g, const TruncatedSeries& h) {
    check_compatible(g, h);
    const std::uint64_t p = g.modulus;
    TruncatedSeries out(g.bound(), p);
    for (std::size_t i = 0; i < g.coeffs.size(); ++i) {
        if (g.coeffs[i] == 0) continue;
        for (std::size_t j = 0; i + j < h.coeffs.size(); ++j) {
            out.coeffs[i + j] = add_mod(out.coeffs[i + j], mul_mod(g.coeffs[i], h.coeffs[j], p), p);
        }
    }
    return out;
}

TruncatedSeries series_recip(const TruncatedSeries& g) {
    const std::uint64_t p = g.modulus;
    if (g.coeffs[0] % p == 0) throw std::domain_error("series_recip: constant term not invertible");
    const std::uint64_t c0inv = inv_mod(g.coeffs[0], p);
    TruncatedSeries d(g.bound(), p);
    d.coeffs[0] = c0inv;
    for (std::size_t j = 1; j < g.coeffs.size(); ++j) {
        std::uint64_t acc = 0;
        for (std::size_t i = 1; i <= j; ++i)
            acc = add_mod(acc, mul_mod(g.coeffs[i], d.coeffs[j - i], p), p);
        d.coeffs[j] = mul_mod(sub_mod(0, acc, p), c0inv, p);
    }
    return d;
}

SeriesMatrix::SeriesMatrix(int r, int c, int m, std::uint64_t p)
    : rows(r), cols(c), bound(m), modulus(p),
      entries(static_cast<std::size_t>(r) * c, TruncatedSeries(m, p)) {}

SeriesMatrix SeriesMatrix::identity(int k, int m, std::uint64_t p) {
    SeriesMatrix out(k, k, m, p);
    for (int i = 0; i < k; ++i) out.at(i, i).coeffs[0] = 1 % p;
    return out;
}

namespace {

void check_same_shape(const SeriesMatrix& a, const SeriesMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols || a.bound != b.bound || a.modulus != b.modulus)
        throw std::invalid_argument("series matrix shape mismatch");
}

}  // namespace

SeriesMatrix polymat_add(const SeriesMatrix& a, const SeriesMatrix& b) {
    check_same_shape(a, b);
    SeriesMatrix out = a;
    for (std::size_t i = 0; i < out.entries.size(); ++i)
        out.entries[i] = series_add(out.entries[i], b.entries[i]);
    return out;
}

SeriesMatrix polymat_sub(const SeriesMatrix& a, const SeriesMatrix& b) {
    check_same_shape(a, b);
    SeriesMatrix out = a;
    for (std::size_t i = 0; i < out.entries.size(); ++i)
        out.entries[i] = series_sub(out.entries[i], b.entries[i]);
    return out;
}

SeriesMatrix polymat_mul(const SeriesMatrix& a, const SeriesMatrix& b) {
    if (a.cols != b.rows || a.bound != b.bound || a.modulus != b.modulus)
        throw std::invalid_argument("polymat_mul: dimension mismatch");
    SeriesMatrix out(a.rows, b.cols, a.bound, a.modulus);
    for (int i = 0; i < a.rows; ++i) {
        for (int k = 0; k < a.cols; ++k) {
            const TruncatedSeries& v = a.at(i, k);
            if (v.is_zero()) continue;
            for (int j = 0; j < b.cols; ++j) {
                out.at(i, j) = series_add(out.at(i, j), series_mul(v, b.at(k, j)));
            }
        }
    }
    return out;
}

bool has_identity_constant_term(const SeriesMatrix& e) {
    if (e.rows != e.cols) return false;
    for (int i = 0; i < e.rows; ++i) {
        for (int j = 0; j < e.cols; ++j) {
            const std::uint64_t want = i == j ? 1 % e.modulus : 0;
            if (e.at(i, j).coeffs[0] != want) return false;
        }
    }
    return true;
}

SeriesMatrix polymat_inverse_normalized(const SeriesMatrix& e) {
    if (e.rows != e.cols) throw std::invalid_argument("polymat_inverse_normalized: matrix not square");
    if (!has_identity_constant_term(e)) throw std::domain_error("polymat_inverse_normalized: not normalized");
    const int k = e.rows;
    SeriesMatrix a = e;
    SeriesMatrix inv = SeriesMatrix::identity(k, e.bound, e.modulus);
    // elimination keeps the constant-coefficient matrix equal to I, so each
    // pivot stays invertible in the series ring
    for (int col = 0; col < k; ++col) {
        const TruncatedSeries pivot_inv = series_recip(a.at(col, col));
        for (int j = 0; j < k; ++j) {
            a.at(col, j) = series_mul(a.at(col, j), pivot_inv);
            inv.at(col, j) = series_mul(inv.at(col, j), pivot_inv);
        }
        for (int r = 0; r < k; ++r) {
            if (r == col) continue;
            const TruncatedSeries f = a.at(r, col);
            if (f.is_zero()) continue;
            for (int j = 0; j < k; ++j) {
                a.at(r, j) = series_sub(a.at(r, j), series_mul(f, a.at(col, j)));
                inv.at(r, j) = series_sub(inv.at(r, j), series_mul(f, inv.at(col, j)));
            }
        }
    }
    return inv;
}

}  // namespace algreach
