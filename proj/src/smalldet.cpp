#include "algreach/smalldet.hpp"

#include <optional>
#include <stdexcept>

namespace algreach {

ModMatrix ModMatrix::identity(int k, std::uint64_t p) {
    ModMatrix m(k, k, p);
    for (int i = 0; i < k; ++i) m.at(i, i) = 1 % p;
    return m;
}

namespace {

void check_same_shape(const ModMatrix& a, const ModMatrix& b) {
    if (a.rows != b.rows || a.cols != b.cols || a.modulus != b.modulus)
        throw std::invalid_argument("matrix shape/modulus mismatch");
}

}  // namespace

ModMatrix mat_mul(const ModMatrix& a, const ModMatrix& b) {
    if (a.cols != b.rows || a.modulus != b.modulus)
        throw std::invalid_argument("mat_mul: dimension/modulus mismatch");
    const std::uint64_t p = a.modulus;
    ModMatrix out(a.rows, b.cols, p);
    for (int i = 0; i < a.rows; ++i) {
        for (int k = 0; k < a.cols; ++k) {
            const std::uint64_t v = a.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < b.cols; ++j) {
                out.at(i, j) = add_mod(out.at(i, j), mul_mod(v, b.at(k, j), p), p);
            }
        }
    }
    return out;
}

ModMatrix mat_add(const ModMatrix& a, const ModMatrix& b) {
    check_same_shape(a, b);
    ModMatrix out = a;
    for (std::size_t i = 0; i < out.entries.size(); ++i)
        out.entries[i] = add_mod(out.entries[i], b.entries[i], a.modulus);
    return out;
}

ModMatrix mat_sub(const ModMatrix& a, const ModMatrix& b) {
    check_same_shape(a, b);
    ModMatrix out = a;
    for (std::size_t i = 0; i < out.entries.size(); ++i)
        out.entries[i] = sub_mod(out.entries[i], b.entries[i], a.modulus);
    return out;
}

namespace detail {

std::uint64_t det_destructive(std::uint64_t* a, int k, std::uint64_t p) {
    if (k == 0) return 1 % p;
    bool negate = false;
    std::uint64_t det = 1 % p;
    for (int col = 0; col < k; ++col) {
        int pivot = -1;
        for (int r = col; r < k; ++r) {
            if (a[static_cast<std::size_t>(r) * k + col] % p != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) return 0;
        if (pivot != col) {
            for (int j = col; j < k; ++j)
                std::swap(a[static_cast<std::size_t>(pivot) * k + j], a[static_cast<std::size_t>(col) * k + j]);
            negate = !negate;
        }
        std::uint64_t* prow = a + static_cast<std::size_t>(col) * k;
        const std::uint64_t pv = prow[col] % p;
        det = mul_mod(det, pv, p);
        const std::uint64_t pinv = inv_mod(pv, p);
        for (int r = col + 1; r < k; ++r) {
            std::uint64_t* row = a + static_cast<std::size_t>(r) * k;
            const std::uint64_t f = mul_mod(row[col] % p, pinv, p);
            if (f == 0) continue;
            for (int j = col; j < k; ++j) row[j] = sub_mod(row[j] % p, mul_mod(f, prow[j], p), p);
        }
    }
    return negate ? (p - det) % p : det;
}

}  // namespace detail

Residue det_elimination(const ModMatrix& m) {
    if (!m.square()) throw std::invalid_argument("det_elimination: matrix not square");
    std::vector<std::uint64_t> scratch(m.entries);
    return Residue{detail::det_destructive(scratch.data(), m.rows, m.modulus), m.modulus};
}

std::optional<ModMatrix> invert_elimination(const ModMatrix& m) {
    if (!m.square()) throw std::invalid_argument("invert_elimination: matrix not square");
    const int k = m.rows;
    const std::uint64_t p = m.modulus;
    ModMatrix a = m;
    ModMatrix inv = ModMatrix::identity(k, p);
    for (int col = 0; col < k; ++col) {
        int pivot = -1;
        for (int r = col; r < k; ++r) {
            if (a.at(r, col) != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot < 0) return std::nullopt;
        if (pivot != col) {
            for (int j = 0; j < k; ++j) {
                std::swap(a.at(pivot, j), a.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
        }
        const std::uint64_t pinv = inv_mod(a.at(col, col), p);
        for (int j = 0; j < k; ++j) {
            a.at(col, j) = mul_mod(a.at(col, j), pinv, p);
            inv.at(col, j) = mul_mod(inv.at(col, j), pinv, p);
        }
        for (int r = 0; r < k; ++r) {
            if (r == col) continue;
            const std::uint64_t f = a.at(r, col);
            if (f == 0) continue;
            for (int j = 0; j < k; ++j) {
                a.at(r, j) = sub_mod(a.at(r, j), mul_mod(f, a.at(col, j), p), p);
                inv.at(r, j) = sub_mod(inv.at(r, j), mul_mod(f, inv.at(col, j), p), p);
            }
        }
    }
    return inv;
}

namespace {

// det of the leading (dim x dim) submatrix of w with row `drop_row` and
// column `drop_col` removed
std::uint64_t leading_minor_det(const ModMatrix& w, int dim, int drop_row, int drop_col,
                                std::vector<std::uint64_t>& scratch) {
    const int k = dim - 1;
    scratch.resize(static_cast<std::size_t>(k) * k);
    int si = 0;
    for (int i = 0; i < dim; ++i) {
        if (i == drop_row) continue;
        for (int j = 0; j < dim; ++j) {
            if (j == drop_col) continue;
            scratch[si++] = w.at(i, j);
        }
    }
    return detail::det_destructive(scratch.data(), k, w.modulus);
}

}  // namespace

PivotPermutation pivot_permutation(const ModMatrix& m) {
    if (!m.square()) throw std::invalid_argument("pivot_permutation: matrix not square");
    if (det_elimination(m).value == 0) throw std::domain_error("pivot_permutation: singular matrix");
    const int k = m.rows;
    ModMatrix w = m;
    PivotPermutation perm;
    perm.mapping.resize(k);
    for (int j = 0; j < k; ++j) perm.mapping[j] = j;
    std::vector<std::uint64_t> scratch;
    // Laplace expansion along row i of the current leading submatrix: some
    // column has nonzero entry and nonzero complementary minor.
    for (int i = k - 1; i >= 0; --i) {
        int chosen = -1;
        for (int l = 0; l <= i; ++l) {
            if (w.at(i, l) == 0) continue;
            if (i == 0 || leading_minor_det(w, i + 1, i, l, scratch) != 0) {
                chosen = l;
                break;
            }
        }
        if (chosen < 0) throw std::domain_error("pivot_permutation: singular matrix");
        if (chosen != i) {
            for (int r = 0; r < k; ++r) std::swap(w.at(r, chosen), w.at(r, i));
            std::swap(perm.mapping[chosen], perm.mapping[i]);
            perm.sign = -perm.sign;
        }
    }
    return perm;
}

ModMatrix apply_column_permutation(const ModMatrix& m, const PivotPermutation& perm) {
    ModMatrix out(m.rows, m.cols, m.modulus);
    for (int j = 0; j < m.cols; ++j) {
        for (int i = 0; i < m.rows; ++i) out.at(i, j) = m.at(i, perm.mapping[j]);
    }
    return out;
}

Residue det_self_reducible(const ModMatrix& m, SelfReducibleGuard guard) {
    if (!m.square()) throw std::invalid_argument("det_self_reducible: matrix not square");
    const int k = m.rows;
    const std::uint64_t p = m.modulus;
    if (det_elimination(m).value == 0) return Residue{0, p};  // rank witness
    if (p > guard.max_modulus || k > guard.max_dim)
        throw std::domain_error("det_self_reducible: too large for self-reducible path");

    const PivotPermutation perm = pivot_permutation(m);
    const ModMatrix a = apply_column_permutation(m, perm);

    std::uint64_t d = a.at(0, 0);
    std::vector<std::uint64_t> scratch;
    for (int i = 1; i < k; ++i) {
        const int dim = i + 1;
        scratch.resize(static_cast<std::size_t>(dim) * dim);
        bool found = false;
        std::uint64_t bi = 0;
        for (std::uint64_t b = 0; b < p && !found; ++b) {
            for (int r = 0; r < dim; ++r)
                for (int c = 0; c < dim; ++c) scratch[static_cast<std::size_t>(r) * dim + c] = a.at(r, c);
            scratch[static_cast<std::size_t>(i) * dim + i] = b;
            if (detail::det_destructive(scratch.data(), dim, p) == 0) {
                bi = b;
                found = true;
            }
        }
        if (!found) throw std::logic_error("det_self_reducible: no singularizing value found");
        d = mul_mod(sub_mod(a.at(i, i), bi, p), d, p);
    }
    return Residue{perm.sign == 1 ? d : (p - d) % p, p};
}

Residue det_by(const ModMatrix& m, DetRoutine routine, SelfReducibleGuard guard) {
    return routine == DetRoutine::Elimination ? det_elimination(m) : det_self_reducible(m, guard);
}

ModMatrix cofactor_adjugate(const ModMatrix& m, DetRoutine routine) {
    if (!m.square()) throw std::invalid_argument("cofactor_adjugate: matrix not square");
    const int k = m.rows;
    const std::uint64_t p = m.modulus;
    if (k == 1) {
        ModMatrix out(1, 1, p);
        out.at(0, 0) = 1 % p;
        return out;
    }
    ModMatrix out(k, k, p);
    ModMatrix minor(k - 1, k - 1, p);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            int mi = 0;
            for (int r = 0; r < k; ++r) {
                if (r == j) continue;  // drop row j
                int mj = 0;
                for (int c = 0; c < k; ++c) {
                    if (c == i) continue;  // drop column i
                    minor.at(mi, mj++) = m.at(r, c);
                }
                ++mi;
            }
            const std::uint64_t d = det_by(minor, routine).value;
            out.at(i, j) = ((i + j) % 2 == 0) ? d : (p - d) % p;
        }
    }
    return out;
}

ModMatrix adjugate_inverse(const ModMatrix& m, DetRoutine routine) {
    const std::uint64_t det = det_by(m, routine).value;
    if (det == 0) throw std::domain_error("adjugate_inverse: singular matrix");
    const std::uint64_t dinv = inv_mod(det, m.modulus);
    ModMatrix out = cofactor_adjugate(m, routine);
    for (std::uint64_t& v : out.entries) v = mul_mod(v, dinv, m.modulus);
    return out;
}

}  // namespace algreach
