#pragma once

#include <array>
#include <complex>
#include <initializer_list>

#include "pvilab/errors.hpp"

namespace pvi {

using cplx = std::complex<double>;

constexpr double kPi = 3.141592653589793238462643383279502884;

// Dense complex matrix of small runtime order (2 or 4 here).
struct Mat {
    int n = 0;
    std::array<cplx, 16> a{};

    Mat() = default;
    explicit Mat(int order) : n(order) {}
    Mat(int order, std::initializer_list<cplx> entries) : n(order) {
        int i = 0;
        for (cplx v : entries) a[i++] = v;
    }

    cplx& at(int i, int j) { return a[i * n + j]; }
    const cplx& at(int i, int j) const { return a[i * n + j]; }

    static Mat identity(int order) {
        Mat m(order);
        for (int i = 0; i < order; ++i) m.at(i, i) = 1.0;
        return m;
    }
};

Mat operator*(const Mat& x, const Mat& y);
Mat operator+(const Mat& x, const Mat& y);
Mat operator-(const Mat& x, const Mat& y);
Mat operator*(cplx s, const Mat& x);

cplx det(const Mat& m);
Mat inverse(const Mat& m);

double max_abs(const Mat& m);
double max_abs_diff(const Mat& x, const Mat& y);
// Deviation from the identity: max absolute entry difference.
double deviation_from_identity(const Mat& m);

cplx trace(const Mat& m);

}  // namespace pvi
