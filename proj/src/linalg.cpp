#include "histop/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace histop {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::diagonal(const Vec& d) {
    Mat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

Mat Mat::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
    Mat m(r, c);
    int i = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != c)
            throw NumericalError("Mat::from_rows: ragged initializer");
        int j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

Mat Mat::transposed() const {
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Mat& Mat::operator+=(const Mat& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw NumericalError("Mat +=: shape mismatch");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

Mat& Mat::operator-=(const Mat& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw NumericalError("Mat -=: shape mismatch");
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

Mat& Mat::operator*=(double s) {
    for (double& v : a_) v *= s;
    return *this;
}

Mat operator+(Mat a, const Mat& b) { return a += b; }
Mat operator-(Mat a, const Mat& b) { return a -= b; }

Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols() != b.rows()) throw NumericalError("Mat *: shape mismatch");
    Mat c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Mat operator*(double s, Mat a) { return a *= s; }

Vec operator*(const Mat& a, const Vec& x) {
    if (a.cols() != static_cast<int>(x.size())) throw NumericalError("Mat * Vec: shape mismatch");
    Vec y(a.rows(), 0.0);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

double frobenius_norm(const Mat& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

double symmetry_defect(const Mat& a) {
    if (a.empty()) return 0.0;
    const double na = frobenius_norm(a);
    if (na == 0.0) return 0.0;
    return frobenius_norm(a - a.transposed()) / na;
}

namespace {

struct Lu {
    Mat lu;
    std::vector<int> perm;
    int sign = 1;
    bool singular = false;
};

Lu lu_factor(const Mat& a) {
    if (a.rows() != a.cols()) throw NumericalError("lu_factor: matrix not square");
    const int n = a.rows();
    Lu f{a, std::vector<int>(n), 1, false};
    std::iota(f.perm.begin(), f.perm.end(), 0);
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(f.lu(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::abs(f.lu(i, k));
            if (v > best) { best = v; piv = i; }
        }
        if (best == 0.0) { f.singular = true; continue; }
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
            std::swap(f.perm[k], f.perm[piv]);
            f.sign = -f.sign;
        }
        for (int i = k + 1; i < n; ++i) {
            f.lu(i, k) /= f.lu(k, k);
            const double lik = f.lu(i, k);
            for (int j = k + 1; j < n; ++j) f.lu(i, j) -= lik * f.lu(k, j);
        }
    }
    return f;
}

Vec lu_apply(const Lu& f, const Vec& b) {
    const int n = f.lu.rows();
    Vec x(n);
    for (int i = 0; i < n; ++i) x[i] = b[f.perm[i]];
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
        x[i] /= f.lu(i, i);
    }
    return x;
}

} // namespace

Vec lu_solve(const Mat& a, const Vec& b) {
    if (a.rows() != static_cast<int>(b.size())) throw NumericalError("lu_solve: shape mismatch");
    const Lu f = lu_factor(a);
    if (f.singular) throw NumericalError("lu_solve: singular matrix");
    return lu_apply(f, b);
}

Mat lu_solve(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw NumericalError("lu_solve: shape mismatch");
    const Lu f = lu_factor(a);
    if (f.singular) throw NumericalError("lu_solve: singular matrix");
    Mat x(b.rows(), b.cols());
    Vec col(b.rows());
    for (int j = 0; j < b.cols(); ++j) {
        for (int i = 0; i < b.rows(); ++i) col[i] = b(i, j);
        const Vec sol = lu_apply(f, col);
        for (int i = 0; i < b.rows(); ++i) x(i, j) = sol[i];
    }
    return x;
}

double determinant(const Mat& a) {
    if (a.empty()) return 1.0;
    const Lu f = lu_factor(a);
    if (f.singular) return 0.0;
    double det = f.sign;
    for (int i = 0; i < a.rows(); ++i) det *= f.lu(i, i);
    return det;
}

Mat inverse(const Mat& a) { return lu_solve(a, Mat::identity(a.rows())); }

EigDecomposition sym_eig(const Mat& a) {
    if (a.rows() != a.cols()) throw NumericalError("sym_eig: matrix not square");
    if (symmetry_defect(a) > 1e-9) throw NumericalError("sym_eig: input not symmetric");
    const int n = a.rows();
    EigDecomposition out;
    if (n == 0) { out.vectors = Mat(0, 0); return out; }

    // Work on the symmetrized copy so the rotations see an exactly
    // symmetric matrix.
    Mat m = 0.5 * (a + a.transposed());
    Mat q = Mat::identity(n);
    const double scale = frobenius_norm(m);
    const double target = 1e-13 * (scale > 0.0 ? scale : 1.0);

    auto offdiag = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += 2.0 * m(i, j) * m(i, j);
        return std::sqrt(s);
    };

    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps && offdiag() > target; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int qq = p + 1; qq < n; ++qq) {
                const double apq = m(p, qq);
                if (std::abs(apq) <= 1e-300) continue;
                const double theta = (m(qq, qq) - m(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double mkp = m(k, p), mkq = m(k, qq);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, qq) = s * mkp + c * mkq;
                }
                for (int k = 0; k < n; ++k) {
                    const double mpk = m(p, k), mqk = m(qq, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(qq, k) = s * mpk + c * mqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double qkp = q(k, p), qkq = q(k, qq);
                    q(k, p) = c * qkp - s * qkq;
                    q(k, qq) = s * qkp + c * qkq;
                }
            }
        }
    }

    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int i, int j) { return m(i, i) < m(j, j); });

    out.values.resize(n);
    out.vectors = Mat(n, n);
    for (int k = 0; k < n; ++k) {
        out.values[k] = m(idx[k], idx[k]);
        for (int i = 0; i < n; ++i) out.vectors(i, k) = q(i, idx[k]);
    }
    return out;
}

Mat inv_sqrt_spd(const Mat& g) {
    if (g.empty()) return Mat(0, 0);
    const EigDecomposition e = sym_eig(g);
    const double emax = e.values.back();
    if (e.values.front() <= 1e-13 * emax || emax <= 0.0)
        throw NumericalError("inv_sqrt_spd: numerically singular Gram");
    const int n = g.rows();
    Mat r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k)
                s += e.vectors(i, k) * e.vectors(j, k) / std::sqrt(e.values[k]);
            r(i, j) = s;
        }
    // The formula is symmetric; round once so downstream symmetry checks
    // see an exactly symmetric matrix.
    return 0.5 * (r + r.transposed());
}

double min_eigenvalue(const Mat& a) {
    const EigDecomposition e = sym_eig(a);
    if (e.values.empty()) throw NumericalError("min_eigenvalue: empty matrix");
    return e.values.front();
}

double cond2(const Mat& a) {
    if (a.empty()) return 1.0;
    const EigDecomposition e = sym_eig(a.transposed() * a);
    const double lo = std::max(e.values.front(), 0.0);
    const double hi = std::max(e.values.back(), 0.0);
    if (lo <= 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(hi / lo);
}

} // namespace histop
