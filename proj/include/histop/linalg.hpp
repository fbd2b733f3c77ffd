#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "histop/errors.hpp"

namespace histop {

using Vec = std::vector<double>;

/// Dense row-major matrix. Everything in this project is tiny
/// (largest system is the quadratic moment matrix, 6x6 for d=3),
/// so no effort is spent on blocking or views.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, fill) {}

    static Mat identity(int n);
    static Mat diagonal(const Vec& d);
    static Mat from_rows(std::initializer_list<std::initializer_list<double>> rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    Mat transposed() const;

    Mat& operator+=(const Mat& o);
    Mat& operator-=(const Mat& o);
    Mat& operator*=(double s);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> a_;
};

Mat operator+(Mat a, const Mat& b);
Mat operator-(Mat a, const Mat& b);
Mat operator*(const Mat& a, const Mat& b);
Mat operator*(double s, Mat a);
Vec operator*(const Mat& a, const Vec& x);

double frobenius_norm(const Mat& a);

/// Max relative symmetry defect ||A - A^T|| / ||A|| (Frobenius); 0 for empty.
double symmetry_defect(const Mat& a);

/// Solve A x = b by LU with partial pivoting. Throws NumericalError on
/// (numerically) singular A.
Vec lu_solve(const Mat& a, const Vec& b);

/// Solve A X = B column-by-column.
Mat lu_solve(const Mat& a, const Mat& b);

/// Determinant by LU with partial pivoting. Empty matrix has det 1.
double determinant(const Mat& a);

Mat inverse(const Mat& a);

struct EigDecomposition {
    Vec values;   // ascending
    Mat vectors;  // column k is the eigenvector of values[k]
};

/// Cyclic Jacobi rotations for a symmetric matrix. Input must satisfy
/// ||A - A^T|| <= 1e-9 ||A||; iterates until the off-diagonal Frobenius
/// norm drops below 1e-13 ||A||.
EigDecomposition sym_eig(const Mat& a);

/// Symmetric inverse square root of an SPD matrix via its eigensystem.
/// Throws NumericalError when min eigenvalue <= 1e-13 * max eigenvalue.
Mat inv_sqrt_spd(const Mat& g);

/// Smallest eigenvalue of a symmetric matrix (convenience wrapper).
double min_eigenvalue(const Mat& a);

/// 2-norm condition number from singular values (eigenvalues of A^T A).
double cond2(const Mat& a);

} // namespace histop
