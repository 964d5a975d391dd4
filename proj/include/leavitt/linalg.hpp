#ifndef LEAVITT_LINALG_HPP
#define LEAVITT_LINALG_HPP

#include <algorithm>
#include <utility>
#include <vector>

#include "leavitt/ring.hpp"

namespace leavitt {

/// Dense matrix of exact ring elements, all sharing one RingSpec.
class ExactMatrix {
public:
    ExactMatrix(int rows, int cols, RingSpec spec)
        : rows_(rows), cols_(cols), spec_(std::move(spec)),
          data_(check_dims(rows, cols), RingElem::zero(spec_)) {}

    ExactMatrix(RingSpec spec, const std::vector<std::vector<Int>>& entries)
        : ExactMatrix(static_cast<int>(entries.size()),
                      entries.empty() ? 0 : static_cast<int>(entries[0].size()), std::move(spec)) {
        for (int i = 0; i < rows_; ++i) {
            if (static_cast<int>(entries[i].size()) != cols_)
                throw precondition_error("ragged matrix rows");
            for (int j = 0; j < cols_; ++j) set(i, j, RingElem(spec_, entries[i][j]));
        }
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const RingSpec& spec() const { return spec_; }

    const RingElem& at(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    void set(int i, int j, RingElem value) {
        if (value.spec() != spec_)
            throw precondition_error("matrix entry from a different ring");
        data_[static_cast<size_t>(i) * cols_ + j] = std::move(value);
    }

private:
    static size_t check_dims(int rows, int cols) {
        if (rows <= 0 || cols <= 0)
            throw precondition_error("matrix dimensions must be positive");
        return static_cast<size_t>(rows) * static_cast<size_t>(cols);
    }

    int rows_;
    int cols_;
    RingSpec spec_;
    std::vector<RingElem> data_;
};

namespace detail {

/// Diagonal of the Smith normal form of an integer matrix, nonnegative,
/// with d_i | d_{i+1}. Length = min(rows, cols), zeros padding the tail.
/// Pivots are chosen with smallest |entry| to bound coefficient growth.
inline std::vector<Int> smith_diagonal(std::vector<std::vector<Int>> a) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    const int m = std::min(rows, cols);
    std::vector<Int> diag(static_cast<size_t>(m), Int(0));

    for (int t = 0; t < m; ++t) {
        for (;;) {
            int pi = -1, pj = -1;
            for (int i = t; i < rows; ++i)
                for (int j = t; j < cols; ++j)
                    if (a[i][j] != 0 && (pi < 0 || abs(a[i][j]) < abs(a[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) return diag; // trailing submatrix is zero
            std::swap(a[t], a[pi]);
            for (int i = 0; i < rows; ++i) std::swap(a[i][t], a[i][pj]);

            bool stable = true;
            // clear column t below the pivot
            for (int i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                Int q = a[i][t] / a[t][t];
                for (int j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) {
                    std::swap(a[t], a[i]); // strictly smaller remainder becomes the pivot
                    stable = false;
                }
            }
            // clear row t right of the pivot
            for (int j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                Int q = a[t][j] / a[t][t];
                for (int i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) {
                    for (int i = t; i < rows; ++i) std::swap(a[i][t], a[i][j]);
                    stable = false;
                }
            }
            if (!stable) continue;

            // pivot must divide the rest of the submatrix for the chain d_t | d_{t+1}
            bool fixed = false;
            for (int i = t + 1; i < rows && !fixed; ++i)
                for (int j = t + 1; j < cols && !fixed; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        for (int k = t; k < cols; ++k) a[t][k] += a[i][k];
                        fixed = true;
                    }
            if (!fixed) break;
        }
        diag[static_cast<size_t>(t)] = abs(a[t][t]);
    }
    return diag;
}

inline int rational_rank(std::vector<std::vector<Rat>> a) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int i = rank; i < rows; ++i)
            if (a[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[rank], a[piv]);
        for (int i = rank + 1; i < rows; ++i) {
            if (a[i][col] == 0) continue;
            Rat f = a[i][col] / a[rank][col];
            for (int j = col; j < cols; ++j) a[i][j] -= f * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

inline std::vector<std::vector<Int>> integer_lift(const ExactMatrix& m) {
    std::vector<std::vector<Int>> a(static_cast<size_t>(m.rows()),
                                    std::vector<Int>(static_cast<size_t>(m.cols())));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) a[i][j] = m.at(i, j).integer_value();
    return a;
}

} // namespace detail

/// Smith normal form diagonal of an integer matrix.
inline std::vector<Int> smith_normal_form(const ExactMatrix& m) {
    if (m.spec().kind() != RingKind::Integers)
        throw precondition_error("smith_normal_form requires integer entries");
    return detail::smith_diagonal(detail::integer_lift(m));
}

/// True iff m x = 0 has only the zero solution over the matrix's ring.
/// Over Z and Q this is a rational rank test (an integer kernel vector
/// exists iff a rational one does). Over Z/n we take the Smith form of the
/// integer lift: the kernel is trivial iff all cols carry a nonzero
/// invariant factor coprime to n.
inline bool kernel_is_trivial(const ExactMatrix& m) {
    if (m.spec().kind() == RingKind::IntegersMod) {
        if (m.rows() < m.cols()) return false;
        const std::vector<Int> diag = detail::smith_diagonal(detail::integer_lift(m));
        const Int& n = m.spec().modulus();
        for (int j = 0; j < m.cols(); ++j) {
            const Int& d = diag[static_cast<size_t>(j)];
            if (d == 0 || gcd(d, n) != 1) return false;
        }
        return true;
    }
    std::vector<std::vector<Rat>> a(static_cast<size_t>(m.rows()),
                                    std::vector<Rat>(static_cast<size_t>(m.cols())));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) a[i][j] = m.at(i, j).value();
    return detail::rational_rank(std::move(a)) == m.cols();
}

} // namespace leavitt

#endif
