#include "qutrit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qutrit {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (rows_ < 1 || cols_ < 1 || data_.size() != rows_ * cols_)
        throw std::invalid_argument("ComplexMatrix: entry count does not match dimensions");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::unit(std::size_t n, std::size_t i, std::size_t j) {
    ComplexMatrix m(n, n);
    m(i, j) = 1.0;
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("ComplexMatrix: dimension mismatch in +=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("ComplexMatrix: dimension mismatch in -=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
    for (auto& z : data_) z *= scale;
    return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

ComplexMatrix ComplexMatrix::conj() const {
    ComplexMatrix m(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) m.data_[k] = std::conj(data_[k]);
    return m;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

double ComplexMatrix::hermiticity_defect() const {
    if (rows_ != cols_) return std::numeric_limits<double>::infinity();
    double d = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return d;
}

bool ComplexMatrix::all_finite() const {
    for (const auto& z : data_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex scale, ComplexMatrix a) { return a *= scale; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("ComplexMatrix: dimension mismatch in product");
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

ComplexMatrix outer(const ComplexVector& u, const ComplexVector& v) {
    ComplexMatrix m(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
    return m;
}

ComplexVector matvec(const ComplexMatrix& m, const ComplexVector& v) {
    if (m.cols() != v.size())
        throw std::invalid_argument("matvec: dimension mismatch");
    ComplexVector out(m.rows(), Complex{});
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
    return out;
}

BasisIndex BasisIndex::from_flat(int flat) {
    if (flat < 1 || flat > 9) throw std::out_of_range("BasisIndex: flat index out of 1..9");
    return BasisIndex{(flat - 1) / 3 + 1, (flat - 1) % 3 + 1};
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.all_finite() || !b.all_finite())
        throw std::invalid_argument("kron: non-finite input");
    const std::size_t limit = 1 << 15;
    if (a.rows() * b.rows() > limit || a.cols() * b.cols() > limit)
        throw std::invalid_argument("kron: result dimension too large");
    ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex{}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    c(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return c;
}

ComplexMatrix partial_transpose_A(const ComplexMatrix& rho) {
    if (rho.rows() != 9 || rho.cols() != 9)
        throw std::invalid_argument("partial_transpose_A: expected 9x9 matrix");
    ComplexMatrix out(9, 9);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d)
                    out(3 * a + b, 3 * c + d) = rho(3 * c + b, 3 * a + d);
    return out;
}

namespace {

// One cyclic Jacobi sweep target: annihilate the (p,q) entry with the
// unitary G = [[c, -s*u],[s*conj(u), c]], u = a_pq/|a_pq|.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const Complex apq = a(p, q);
    const double r = std::abs(apq);
    if (r == 0.0) return;
    const Complex u = apq / r;
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double tau = (app - aqq) / (2.0 * r);
    double t;
    if (std::isinf(tau)) {
        t = 0.0;
    } else if (tau >= 0.0) {
        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
    } else {
        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    }
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const std::size_t n = a.rows();
    // columns: A <- A G
    for (std::size_t k = 0; k < n; ++k) {
        const Complex akp = a(k, p);
        const Complex akq = a(k, q);
        a(k, p) = c * akp + s * std::conj(u) * akq;
        a(k, q) = -s * u * akp + c * akq;
    }
    // rows: A <- G† A
    for (std::size_t k = 0; k < n; ++k) {
        const Complex apk = a(p, k);
        const Complex aqk = a(q, k);
        a(p, k) = c * apk + s * u * aqk;
        a(q, k) = -s * std::conj(u) * apk + c * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const Complex vkp = v(k, p);
        const Complex vkq = v(k, q);
        v(k, p) = c * vkp + s * std::conj(u) * vkq;
        v(k, q) = -s * u * vkp + c * vkq;
    }
}

double offdiag_norm(const ComplexMatrix& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) sum += std::norm(a(i, j));
    return std::sqrt(sum);
}

}  // namespace

HermitianEigen hermitian_eigen(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("hermitian_eigen: matrix not square");
    const double defect = m.hermiticity_defect();
    if (defect > tol)
        throw std::invalid_argument("hermitian_eigen: non-Hermitian input, asymmetry " +
                                    std::to_string(defect));
    const std::size_t n = m.rows();
    // symmetrize before iterating
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = std::max(a.max_abs(), 1e-300);
    const double stop = 1e-15 * scale * static_cast<double>(n);
    for (int sweep = 0; sweep < 100; ++sweep) {
        if (offdiag_norm(a) <= stop) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                jacobi_rotate(a, v, p, q);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    HermitianEigen result;
    result.eigenvalues.resize(n);
    result.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        result.eigenvalues[j] = a(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) result.eigenvectors(i, j) = v(i, order[j]);
    }
    return result;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double tol) {
    return hermitian_eigen(m, tol).eigenvalues;
}

double trace_norm_hermitian(const ComplexMatrix& m, double tol) {
    double sum = 0.0;
    for (double lambda : hermitian_eigenvalues(m, tol)) sum += std::abs(lambda);
    return sum;
}

}  // namespace qutrit
