#ifndef CQSC_HERMITIAN_HPP
#define CQSC_HERMITIAN_HPP

#include <complex>
#include <functional>
#include <vector>

#include "cqsc/error.hpp"

namespace cqsc {

using Complex = std::complex<double>;

/// Hermiticity tolerance enforced at construction (symmetrize (A + A^H)/2).
inline constexpr double kHermTol = 1e-12;
/// Eigenvalues in [-kPsdTol, 0) are treated as roundoff and clamped to 0.
inline constexpr double kPsdTol = 1e-10;
/// Composite dimension cap for tensor products.
inline constexpr int kMaxTensorDim = 4096;

/// Dense general complex matrix, row-major. Minimal support type for
/// eigenvector storage, Gram constructions and contraction conjugation;
/// all spectral work happens on HermitianMatrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

    static ComplexMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Complex& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Complex& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

    ComplexMatrix adjoint() const;
    ComplexMatrix operator*(const ComplexMatrix& rhs) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Complex> a_;
};

/// Dense complex Hermitian matrix. Construction symmetrizes, so the
/// invariant entries[j][k] == conj(entries[k][j]) holds exactly afterwards.
/// Immutable once built; all arithmetic returns new values.
class HermitianMatrix {
public:
    explicit HermitianMatrix(int dim);

    static HermitianMatrix identity(int dim);
    static HermitianMatrix diagonal(const std::vector<double>& d);
    /// Builds from row-major entries, symmetrizing A <- (A + A^H)/2.
    static HermitianMatrix from_entries(int dim, const std::vector<Complex>& row_major);
    /// g g^H  (PSD by construction; g need not be square).
    static HermitianMatrix gram(const ComplexMatrix& g);
    /// Rank-one projector v v^H / <v,v>.
    static HermitianMatrix pure_state(const std::vector<Complex>& v);

    int dim() const { return dim_; }
    const Complex& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * dim_ + c]; }
    const std::vector<Complex>& entries() const { return a_; }

    double trace() const;
    double frobenius_norm() const;
    double max_abs_entry() const;

    HermitianMatrix scaled(double s) const;

    friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
    friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);

private:
    HermitianMatrix() = default;
    static HermitianMatrix raw(int dim, std::vector<Complex> a);

    int dim_ = 0;
    std::vector<Complex> a_;

    friend HermitianMatrix tensor(const HermitianMatrix&, const HermitianMatrix&, int);
    friend HermitianMatrix conjugate_with(const ComplexMatrix&, const HermitianMatrix&);
};

/// Tr(A B); real for a Hermitian pair.
double trace_product(const HermitianMatrix& a, const HermitianMatrix& b);

struct SpectralDecomposition {
    std::vector<double> eigenvalues; ///< ascending
    ComplexMatrix eigenvectors;      ///< unitary, eigenvectors in columns

    /// V diag(f(lambda)) V^H.
    HermitianMatrix apply(const std::function<double(double)>& f) const;
};

/// Full eigendecomposition by cyclic Jacobi rotations. Converges when the
/// off-diagonal Frobenius norm drops below 1e-12 * ||A||_F; throws
/// NumericError after 100 sweeps without convergence.
SpectralDecomposition eig_hermitian(const HermitianMatrix& a);

/// Eigenvalues only (ascending); skips eigenvector accumulation.
std::vector<double> eigenvalues_of(const HermitianMatrix& a);

/// Eigendecomposition of S = G^H G from the factor G (m x d, m >= 1), by
/// one-sided Jacobi on G's columns. Unlike eig_hermitian on the assembled
/// product, small eigenvalues keep high relative accuracy: they are squared
/// column norms after orthogonalization, never differences of O(||S||)
/// entries. This is what makes fractional powers with exponents near 0
/// (rho^{1/beta}, beta small) computable for mixed states.
SpectralDecomposition eig_hermitian_from_factor(const ComplexMatrix& g);

/// Same, with G given as diag(scales) * unit_rows. Column rotations never
/// touch the row scales, so spectra spanning hundreds of orders of magnitude
/// (scales like mu^{1/(2 beta)}) survive exactly; assembling G in entry
/// space would truncate them at the entry roundoff floor.
SpectralDecomposition eig_hermitian_from_scaled_factor(const std::vector<double>& scales,
                                                       const ComplexMatrix& unit_rows);

/// Eigenvalues only (ascending) of G^H G from the scaled factor.
std::vector<double> eigenvalues_from_scaled_factor(const std::vector<double>& scales,
                                                   const ComplexMatrix& unit_rows);

/// A^p for PSD A and p > 0, with 0^p := 0 on the kernel. Roundoff negatives
/// inside -kPsdTol * max(1, spectral radius) are clamped; anything below
/// throws NumericError. p == 1 returns A unchanged when no clamping is needed.
HermitianMatrix mat_power(const HermitianMatrix& a, double p);

/// A^p on the support of A, for any real p (pseudo-inverse convention:
/// eigenvalues at or below the relative support floor map to 0; p == 0
/// yields the support projector). PSD precondition as in mat_power.
HermitianMatrix mat_power_support(const HermitianMatrix& a, double p);

/// Natural log on the support; eigenvalues <= eig_floor (1e-300) map to 0.
/// Callers must pair the result only with operators supported inside supp(A).
HermitianMatrix mat_log(const HermitianMatrix& a);

/// Kronecker product with row-major composite indexing j = j1*dim_B + j2.
/// Throws ValidationError when the composite dimension exceeds dim_cap.
HermitianMatrix tensor(const HermitianMatrix& a, const HermitianMatrix& b,
                       int dim_cap = kMaxTensorDim);

/// Sum of |eigenvalue|.
double trace_norm(const HermitianMatrix& a);

double min_eigenvalue(const HermitianMatrix& a);

/// C^H A C (Hermitian for any C).
HermitianMatrix conjugate_with(const ComplexMatrix& c, const HermitianMatrix& a);

/// B A B for Hermitian B (Hermitian again).
HermitianMatrix sandwich(const HermitianMatrix& b, const HermitianMatrix& a);

/// Largest singular value of C.
double operator_norm(const ComplexMatrix& c);

} // namespace cqsc

#endif
