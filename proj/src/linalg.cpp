#include "pvilab/linalg.hpp"

#include <cmath>

namespace pvi {

Mat operator*(const Mat& x, const Mat& y) {
    Mat r(x.n);
    for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.n; ++k) {
            const cplx xik = x.at(i, k);
            if (xik == cplx(0.0)) continue;
            for (int j = 0; j < x.n; ++j) r.at(i, j) += xik * y.at(k, j);
        }
    return r;
}

Mat operator+(const Mat& x, const Mat& y) {
    Mat r(x.n);
    for (int i = 0; i < x.n * x.n; ++i) r.a[i] = x.a[i] + y.a[i];
    return r;
}

Mat operator-(const Mat& x, const Mat& y) {
    Mat r(x.n);
    for (int i = 0; i < x.n * x.n; ++i) r.a[i] = x.a[i] - y.a[i];
    return r;
}

Mat operator*(cplx s, const Mat& x) {
    Mat r(x.n);
    for (int i = 0; i < x.n * x.n; ++i) r.a[i] = s * x.a[i];
    return r;
}

namespace {

// LU with partial pivoting; returns permutation sign, factors in place.
int lu_decompose(Mat& m, std::array<int, 4>& perm) {
    const int n = m.n;
    int sign = 1;
    for (int i = 0; i < n; ++i) perm[i] = i;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::abs(m.at(col, col));
        for (int r = col + 1; r < n; ++r) {
            double v = std::abs(m.at(r, col));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) return 0;
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
            std::swap(perm[piv], perm[col]);
            sign = -sign;
        }
        for (int r = col + 1; r < n; ++r) {
            cplx f = m.at(r, col) / m.at(col, col);
            m.at(r, col) = f;
            for (int j = col + 1; j < n; ++j) m.at(r, j) -= f * m.at(col, j);
        }
    }
    return sign;
}

}  // namespace

cplx det(const Mat& m) {
    Mat lu = m;
    std::array<int, 4> perm{};
    int sign = lu_decompose(lu, perm);
    if (sign == 0) return 0.0;
    cplx d = static_cast<double>(sign);
    for (int i = 0; i < m.n; ++i) d *= lu.at(i, i);
    return d;
}

Mat inverse(const Mat& m) {
    const int n = m.n;
    Mat lu = m;
    std::array<int, 4> perm{};
    if (lu_decompose(lu, perm) == 0) throw NumericError("inverse: singular matrix");
    Mat inv(n);
    for (int rhs = 0; rhs < n; ++rhs) {
        std::array<cplx, 4> x{};
        for (int i = 0; i < n; ++i) {
            cplx b = (perm[i] == rhs) ? cplx(1.0) : cplx(0.0);
            for (int j = 0; j < i; ++j) b -= lu.at(i, j) * x[j];
            x[i] = b;
        }
        for (int i = n - 1; i >= 0; --i) {
            cplx b = x[i];
            for (int j = i + 1; j < n; ++j) b -= lu.at(i, j) * x[j];
            x[i] = b / lu.at(i, i);
        }
        for (int i = 0; i < n; ++i) inv.at(i, rhs) = x[i];
    }
    return inv;
}

double max_abs(const Mat& m) {
    double v = 0.0;
    for (int i = 0; i < m.n * m.n; ++i) v = std::max(v, std::abs(m.a[i]));
    return v;
}

double max_abs_diff(const Mat& x, const Mat& y) {
    double v = 0.0;
    for (int i = 0; i < x.n * x.n; ++i) v = std::max(v, std::abs(x.a[i] - y.a[i]));
    return v;
}

double deviation_from_identity(const Mat& m) {
    return max_abs_diff(m, Mat::identity(m.n));
}

cplx trace(const Mat& m) {
    cplx t = 0.0;
    for (int i = 0; i < m.n; ++i) t += m.at(i, i);
    return t;
}

}  // namespace pvi
