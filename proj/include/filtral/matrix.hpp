#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "filtral/field.hpp"

namespace filtral {

/// Dense matrix over a prime field, row-major. Vectors of a module are rows;
/// a linear map X -> Y is a dim(X) x dim(Y) matrix applied as v |-> v*A.
struct Mat {
    int rows = 0;
    int cols = 0;
    std::vector<int> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

    int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    int at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

    static Mat identity(int n)
    {
        Mat m(n, n);
        for (int i = 0; i < n; ++i)
            m.at(i, i) = 1;
        return m;
    }

    static Mat row_vector(const std::vector<int>& v)
    {
        Mat m(1, static_cast<int>(v.size()));
        m.a = v;
        return m;
    }

    std::vector<int> row(int r) const { return {a.begin() + static_cast<size_t>(r) * cols, a.begin() + static_cast<size_t>(r + 1) * cols}; }

    bool is_zero() const
    {
        for (int x : a)
            if (x)
                return false;
        return true;
    }

    bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    /// Total order used for canonical tie-breaking (shape, then entries).
    bool operator<(const Mat& o) const
    {
        if (rows != o.rows)
            return rows < o.rows;
        if (cols != o.cols)
            return cols < o.cols;
        return a < o.a;
    }

    std::string key() const
    {
        std::string k;
        k.reserve(a.size() + 8);
        k += static_cast<char>(rows & 0xff);
        k += static_cast<char>((rows >> 8) & 0xff);
        k += static_cast<char>(cols & 0xff);
        k += static_cast<char>((cols >> 8) & 0xff);
        for (int x : a)
            k += static_cast<char>(x);
        return k;
    }
};

inline Mat transpose(const Mat& m)
{
    Mat t(m.cols, m.rows);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c)
            t.at(c, r) = m.at(r, c);
    return t;
}

inline Mat mul(const PrimeField& F, const Mat& x, const Mat& y)
{
    require(x.cols == y.rows, ErrorCode::Internal, "matrix product shape mismatch");
    Mat z(x.rows, y.cols);
    for (int r = 0; r < x.rows; ++r)
        for (int k = 0; k < x.cols; ++k) {
            int v = x.at(r, k);
            if (!v)
                continue;
            for (int c = 0; c < y.cols; ++c)
                z.at(r, c) = F.normalize(z.at(r, c) + static_cast<long long>(v) * y.at(k, c));
        }
    return z;
}

inline Mat add(const PrimeField& F, const Mat& x, const Mat& y)
{
    require(x.rows == y.rows && x.cols == y.cols, ErrorCode::Internal, "matrix sum shape mismatch");
    Mat z(x.rows, x.cols);
    for (size_t i = 0; i < x.a.size(); ++i)
        z.a[i] = F.add(x.a[i], y.a[i]);
    return z;
}

inline Mat sub(const PrimeField& F, const Mat& x, const Mat& y)
{
    require(x.rows == y.rows && x.cols == y.cols, ErrorCode::Internal, "matrix difference shape mismatch");
    Mat z(x.rows, x.cols);
    for (size_t i = 0; i < x.a.size(); ++i)
        z.a[i] = F.sub(x.a[i], y.a[i]);
    return z;
}

inline Mat scale(const PrimeField& F, int c, const Mat& x)
{
    Mat z(x.rows, x.cols);
    for (size_t i = 0; i < x.a.size(); ++i)
        z.a[i] = F.mul(c, x.a[i]);
    return z;
}

inline Mat vstack(const Mat& x, const Mat& y)
{
    if (x.rows == 0)
        return y.rows == 0 ? Mat(0, std::max(x.cols, y.cols)) : y;
    if (y.rows == 0)
        return x;
    require(x.cols == y.cols, ErrorCode::Internal, "vstack width mismatch");
    Mat z(x.rows + y.rows, x.cols);
    std::copy(x.a.begin(), x.a.end(), z.a.begin());
    std::copy(y.a.begin(), y.a.end(), z.a.begin() + x.a.size());
    return z;
}

inline Mat hstack(const Mat& x, const Mat& y)
{
    require(x.rows == y.rows, ErrorCode::Internal, "hstack height mismatch");
    Mat z(x.rows, x.cols + y.cols);
    for (int r = 0; r < x.rows; ++r) {
        for (int c = 0; c < x.cols; ++c)
            z.at(r, c) = x.at(r, c);
        for (int c = 0; c < y.cols; ++c)
            z.at(r, x.cols + c) = y.at(r, c);
    }
    return z;
}

/// In-place reduced row echelon form; returns the pivot column of each
/// surviving row. Deterministic: pivots are chosen left to right, top row
/// first.
inline std::vector<int> rref(const PrimeField& F, Mat& m)
{
    std::vector<int> pivots;
    int lead = 0;
    for (int c = 0; c < m.cols && lead < m.rows; ++c) {
        int sel = -1;
        for (int r = lead; r < m.rows; ++r)
            if (m.at(r, c)) {
                sel = r;
                break;
            }
        if (sel < 0)
            continue;
        if (sel != lead)
            for (int k = 0; k < m.cols; ++k)
                std::swap(m.at(sel, k), m.at(lead, k));
        int piv = F.inv(m.at(lead, c));
        for (int k = 0; k < m.cols; ++k)
            m.at(lead, k) = F.mul(m.at(lead, k), piv);
        for (int r = 0; r < m.rows; ++r) {
            if (r == lead)
                continue;
            int f = m.at(r, c);
            if (!f)
                continue;
            for (int k = 0; k < m.cols; ++k)
                m.at(r, k) = F.sub(m.at(r, k), F.mul(f, m.at(lead, k)));
        }
        pivots.push_back(c);
        ++lead;
    }
    return pivots;
}

/// Canonical basis of the row space: rref with zero rows dropped.
inline Mat row_space_basis(const PrimeField& F, Mat m)
{
    auto piv = rref(F, m);
    Mat b(static_cast<int>(piv.size()), m.cols);
    std::copy(m.a.begin(), m.a.begin() + b.a.size(), b.a.begin());
    return b;
}

inline int rank(const PrimeField& F, Mat m) { return static_cast<int>(rref(F, m).size()); }

/// Basis of { x : m * x^T = 0 }, one solution per row, in canonical (rref) form.
inline Mat null_space(const PrimeField& F, Mat m)
{
    auto piv = rref(F, m);
    std::vector<bool> is_piv(m.cols, false);
    for (int c : piv)
        is_piv[c] = true;
    Mat out(m.cols - static_cast<int>(piv.size()), m.cols);
    int row = 0;
    for (int c = 0; c < m.cols; ++c) {
        if (is_piv[c])
            continue;
        out.at(row, c) = 1;
        for (size_t r = 0; r < piv.size(); ++r)
            out.at(row, piv[r]) = F.neg(m.at(static_cast<int>(r), c));
        ++row;
    }
    return row_space_basis(F, out);
}

/// Basis of { v : v * m = 0 } as rows, canonical.
inline Mat left_kernel(const PrimeField& F, const Mat& m) { return null_space(F, transpose(m)); }

/// Expresses v over a canonical rref basis. Returns coordinates iff v lies in
/// the row space.
inline std::optional<std::vector<int>> coords_in_rref(const PrimeField& F, const Mat& basis,
                                                      const std::vector<int>& pivots, const std::vector<int>& v)
{
    std::vector<int> coords(basis.rows, 0);
    std::vector<int> rem = v;
    for (int r = 0; r < basis.rows; ++r) {
        int c = pivots[r];
        int f = rem[c];
        if (!f)
            continue;
        coords[r] = f;
        for (int k = 0; k < basis.cols; ++k)
            rem[k] = F.sub(rem[k], F.mul(f, basis.at(r, k)));
    }
    for (int x : rem)
        if (x)
            return std::nullopt;
    return coords;
}

inline std::vector<int> rref_pivots(const Mat& basis)
{
    // Recovers pivot columns of an already-reduced basis (first nonzero per row).
    std::vector<int> piv(basis.rows, -1);
    for (int r = 0; r < basis.rows; ++r)
        for (int c = 0; c < basis.cols; ++c)
            if (basis.at(r, c)) {
                piv[r] = c;
                break;
            }
    return piv;
}

/// Solves X * a = b rowwise; each row of b must lie in the row space of a.
inline std::optional<Mat> solve_left(const PrimeField& F, const Mat& a, const Mat& b)
{
    // Track row operations: reduce [a | I].
    Mat aug = hstack(a, Mat::identity(a.rows));
    auto piv = rref(F, aug);
    // Split back.
    Mat basis(a.rows, a.cols), ops(a.rows, a.rows);
    for (int r = 0; r < a.rows; ++r) {
        for (int c = 0; c < a.cols; ++c)
            basis.at(r, c) = aug.at(r, c);
        for (int c = 0; c < a.rows; ++c)
            ops.at(r, c) = aug.at(r, a.cols + c);
    }
    // Keep only rows whose pivot lies in the a-part.
    std::vector<int> apiv;
    int nrows = 0;
    for (size_t r = 0; r < piv.size(); ++r) {
        if (piv[r] < a.cols) {
            apiv.push_back(piv[r]);
            ++nrows;
        }
    }
    Mat x(b.rows, a.rows);
    for (int r = 0; r < b.rows; ++r) {
        std::vector<int> rem = b.row(r);
        std::vector<int> coef(a.rows, 0);
        for (int i = 0; i < nrows; ++i) {
            int c = apiv[i];
            int f = rem[c];
            if (!f)
                continue;
            for (int k = 0; k < a.cols; ++k)
                rem[k] = F.sub(rem[k], F.mul(f, basis.at(i, k)));
            for (int k = 0; k < a.rows; ++k)
                coef[k] = F.add(coef[k], F.mul(f, ops.at(i, k)));
        }
        for (int v : rem)
            if (v)
                return std::nullopt;
        for (int k = 0; k < a.rows; ++k)
            x.at(r, k) = coef[k];
    }
    return x;
}

/// Intersection of two row spaces, canonical basis.
inline Mat intersect_rows(const PrimeField& F, const Mat& u, const Mat& v)
{
    if (u.rows == 0 || v.rows == 0)
        return Mat(0, std::max(u.cols, v.cols));
    Mat stacked = vstack(u, v);
    Mat k = left_kernel(F, stacked); // rows (lambda | mu) with lambda*u = -mu*v
    Mat lam(k.rows, u.rows);
    for (int r = 0; r < k.rows; ++r)
        for (int c = 0; c < u.rows; ++c)
            lam.at(r, c) = k.at(r, c);
    return row_space_basis(F, mul(F, lam, u));
}

/// True iff the row space of x contains the one of y.
inline bool row_space_contains(const PrimeField& F, const Mat& x, const Mat& y)
{
    Mat bx = row_space_basis(F, x);
    return rank(F, vstack(bx, y)) == bx.rows;
}

inline bool is_invertible(const PrimeField& F, const Mat& m) { return m.rows == m.cols && rank(F, m) == m.rows; }

/// Flattens a matrix into a single row (row-major), used when a space of
/// matrices is treated as a vector space.
inline std::vector<int> flatten(const Mat& m) { return m.a; }

inline Mat unflatten(const std::vector<int>& v, int rows, int cols)
{
    Mat m(rows, cols);
    m.a = v;
    return m;
}

} // namespace filtral
