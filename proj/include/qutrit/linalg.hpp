#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qutrit {

using Complex = std::complex<double>;

// Dense complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() : rows_(0), cols_(0) {}
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t n) { return ComplexMatrix(n, n); }
    // E_ij: single 1 at (i, j).
    static ComplexMatrix unit(std::size_t n, std::size_t i, std::size_t j);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scale);

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conj() const;
    Complex trace() const;

    // max_ij |entry|
    double max_abs() const;
    // max_ij |M - M†|_ij
    double hermiticity_defect() const;
    bool all_finite() const;

    const std::vector<Complex>& data() const { return data_; }

private:
    std::size_t rows_, cols_;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scale, ComplexMatrix a);

using ComplexVector = std::vector<Complex>;

ComplexMatrix outer(const ComplexVector& u, const ComplexVector& v);
ComplexVector matvec(const ComplexMatrix& m, const ComplexVector& v);

// Product-basis index for two qutrits: levels a, b in {1,2,3},
// flat in {1..9} with flat = 3(a-1) + b.
struct BasisIndex {
    int a;
    int b;

    static BasisIndex from_flat(int flat);
    int flat() const { return 3 * (a - 1) + b; }
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Transpose on the first tensor factor of a 9x9 two-qutrit matrix:
// (rho^{T_A})_{(a,b),(c,d)} = rho_{(c,b),(a,d)}.
ComplexMatrix partial_transpose_A(const ComplexMatrix& rho);

struct HermitianEigen {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // columns, same order
};

// Cyclic Jacobi on a Hermitian matrix. Inputs are symmetrized
// ((M + M†)/2) after the hermiticity gate; non-Hermitian input
// beyond tol throws with the measured asymmetry.
HermitianEigen hermitian_eigen(const ComplexMatrix& m, double tol = 1e-9);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double tol = 1e-9);

double trace_norm_hermitian(const ComplexMatrix& m, double tol = 1e-9);

}  // namespace qutrit
