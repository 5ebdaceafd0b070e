#include "cqsc/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cqsc {

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) m.at(c, r) = std::conj(at(r, c));
    return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw ValidationError("ComplexMatrix multiply: shape mismatch");
    ComplexMatrix out(rows_, rhs.cols_);
    for (int r = 0; r < rows_; ++r) {
        for (int k = 0; k < cols_; ++k) {
            const Complex v = at(r, k);
            if (v == Complex{}) continue;
            for (int c = 0; c < rhs.cols_; ++c) out.at(r, c) += v * rhs.at(k, c);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// HermitianMatrix

HermitianMatrix::HermitianMatrix(int dim) : dim_(dim) {
    if (dim < 1) throw ValidationError("HermitianMatrix: dim must be >= 1");
    a_.assign(static_cast<std::size_t>(dim) * dim, Complex{});
}

HermitianMatrix HermitianMatrix::raw(int dim, std::vector<Complex> a) {
    HermitianMatrix m;
    m.dim_ = dim;
    m.a_ = std::move(a);
    return m;
}

HermitianMatrix HermitianMatrix::identity(int dim) {
    HermitianMatrix m(dim);
    for (int i = 0; i < dim; ++i) m.a_[static_cast<std::size_t>(i) * dim + i] = 1.0;
    return m;
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<double>& d) {
    HermitianMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.dim_; ++i) m.a_[static_cast<std::size_t>(i) * m.dim_ + i] = d[i];
    return m;
}

HermitianMatrix HermitianMatrix::from_entries(int dim, const std::vector<Complex>& row_major) {
    if (static_cast<std::size_t>(dim) * dim != row_major.size())
        throw ValidationError("HermitianMatrix::from_entries: entry count does not match dim");
    HermitianMatrix m(dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            const Complex v = row_major[static_cast<std::size_t>(r) * dim + c];
            const Complex w = std::conj(row_major[static_cast<std::size_t>(c) * dim + r]);
            m.a_[static_cast<std::size_t>(r) * dim + c] = 0.5 * (v + w);
        }
    for (int i = 0; i < dim; ++i)
        m.a_[static_cast<std::size_t>(i) * dim + i] =
            Complex(m.a_[static_cast<std::size_t>(i) * dim + i].real(), 0.0);
    return m;
}

HermitianMatrix HermitianMatrix::gram(const ComplexMatrix& g) {
    const int n = g.rows();
    HermitianMatrix m(n);
    for (int r = 0; r < n; ++r)
        for (int c = r; c < n; ++c) {
            Complex s{};
            for (int k = 0; k < g.cols(); ++k) s += g.at(r, k) * std::conj(g.at(c, k));
            m.a_[static_cast<std::size_t>(r) * n + c] = s;
            m.a_[static_cast<std::size_t>(c) * n + r] = std::conj(s);
        }
    for (int i = 0; i < n; ++i)
        m.a_[static_cast<std::size_t>(i) * n + i] =
            Complex(m.a_[static_cast<std::size_t>(i) * n + i].real(), 0.0);
    return m;
}

HermitianMatrix HermitianMatrix::pure_state(const std::vector<Complex>& v) {
    const int n = static_cast<int>(v.size());
    double nrm2 = 0.0;
    for (const Complex& x : v) nrm2 += std::norm(x);
    if (nrm2 <= 0.0) throw ValidationError("pure_state: zero vector");
    HermitianMatrix m(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            m.a_[static_cast<std::size_t>(r) * n + c] = v[r] * std::conj(v[c]) / nrm2;
    return m;
}

double HermitianMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < dim_; ++i) t += a_[static_cast<std::size_t>(i) * dim_ + i].real();
    return t;
}

double HermitianMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const Complex& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double HermitianMatrix::max_abs_entry() const {
    double m = 0.0;
    for (const Complex& v : a_) m = std::max(m, std::abs(v));
    return m;
}

HermitianMatrix HermitianMatrix::scaled(double s) const {
    std::vector<Complex> a = a_;
    for (Complex& v : a) v *= s;
    return raw(dim_, std::move(a));
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.dim_ != b.dim_) throw ValidationError("HermitianMatrix add: dim mismatch");
    std::vector<Complex> out = a.a_;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.a_[i];
    return HermitianMatrix::raw(a.dim_, std::move(out));
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.dim_ != b.dim_) throw ValidationError("HermitianMatrix sub: dim mismatch");
    std::vector<Complex> out = a.a_;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b.a_[i];
    return HermitianMatrix::raw(a.dim_, std::move(out));
}

double trace_product(const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.dim() != b.dim()) throw ValidationError("trace_product: dim mismatch");
    const int d = a.dim();
    double s = 0.0;
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) s += (a.at(r, c) * b.at(c, r)).real();
    return s;
}

// ---------------------------------------------------------------------------
// Jacobi eigensolver

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagRel = 1e-12;

double offdiag_frobenius(const std::vector<Complex>& a, int n) {
    double s = 0.0;
    for (int r = 0; r < n; ++r)
        for (int c = r + 1; c < n; ++c) s += std::norm(a[static_cast<std::size_t>(r) * n + c]);
    return std::sqrt(2.0 * s);
}

// One cyclic Jacobi pass over the strict upper triangle of A (row-major,
// Hermitian); accumulates rotations into V when V != nullptr.
void jacobi_sweep(std::vector<Complex>& a, std::vector<Complex>* v, int n, double skip_tol) {
    auto A = [&](int r, int c) -> Complex& { return a[static_cast<std::size_t>(r) * n + c]; };
    for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
            const Complex apq = A(p, q);
            const double m = std::abs(apq);
            if (m <= skip_tol) continue;

            const double app = A(p, p).real();
            const double aqq = A(q, q).real();
            const Complex phase = apq / m;

            // Real Jacobi angle for [[app, m], [m, aqq]].
            const double tau = (aqq - app) / (2.0 * m);
            double t;
            if (tau >= 0.0)
                t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
            else
                t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double s = t * c;
            const Complex s_ph = s * phase;        // J[p][q]
            const Complex s_phc = s * std::conj(phase);

            // Columns: A <- A J with J = [[c, s*phase], [-s*conj(phase), c]].
            for (int r = 0; r < n; ++r) {
                const Complex arp = A(r, p);
                const Complex arq = A(r, q);
                A(r, p) = c * arp - s_phc * arq;
                A(r, q) = s_ph * arp + c * arq;
            }
            // Rows: A <- J^H A.
            for (int col = 0; col < n; ++col) {
                const Complex apc = A(p, col);
                const Complex aqc = A(q, col);
                A(p, col) = c * apc - s_ph * aqc;
                A(q, col) = s_phc * apc + c * aqc;
            }
            // Clean roundoff in the rotated 2x2 block.
            A(p, q) = Complex{};
            A(q, p) = Complex{};
            A(p, p) = Complex(A(p, p).real(), 0.0);
            A(q, q) = Complex(A(q, q).real(), 0.0);

            if (v) {
                auto& V = *v;
                for (int r = 0; r < n; ++r) {
                    const Complex vrp = V[static_cast<std::size_t>(r) * n + p];
                    const Complex vrq = V[static_cast<std::size_t>(r) * n + q];
                    V[static_cast<std::size_t>(r) * n + p] = c * vrp - s_phc * vrq;
                    V[static_cast<std::size_t>(r) * n + q] = s_ph * vrp + c * vrq;
                }
            }
        }
    }
}

// Diagonalizes in place; returns eigenvalues ascending plus the permutation
// applied to the accumulated basis.
std::vector<double> jacobi_diagonalize(std::vector<Complex>& a, std::vector<Complex>* v, int n,
                                       double norm) {
    const double target = kOffDiagRel * norm;
    double off = offdiag_frobenius(a, n);
    int sweep = 0;
    while (off > target) {
        if (sweep >= kMaxSweeps) {
            std::ostringstream msg;
            msg << "eig_hermitian: no convergence after " << kMaxSweeps << " sweeps (dim=" << n
                << ", off-diagonal residual=" << off << ", target=" << target << ")";
            throw NumericError(msg.str());
        }
        jacobi_sweep(a, v, n, 0.1 * target / n);
        off = offdiag_frobenius(a, n);
        ++sweep;
    }
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = a[static_cast<std::size_t>(i) * n + i].real();
    return eig;
}

} // namespace

SpectralDecomposition eig_hermitian(const HermitianMatrix& m) {
    const int n = m.dim();
    std::vector<Complex> a = m.entries();
    std::vector<Complex> v(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * n + i] = 1.0;

    std::vector<double> eig = jacobi_diagonalize(a, &v, n, m.frobenius_norm());

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return eig[i] < eig[j]; });

    SpectralDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (int k = 0; k < n; ++k) {
        out.eigenvalues[k] = eig[order[k]];
        for (int r = 0; r < n; ++r)
            out.eigenvectors.at(r, k) = v[static_cast<std::size_t>(r) * n + order[k]];
    }
    return out;
}

std::vector<double> eigenvalues_of(const HermitianMatrix& m) {
    const int n = m.dim();
    std::vector<Complex> a = m.entries();
    std::vector<double> eig = jacobi_diagonalize(a, nullptr, n, m.frobenius_norm());
    std::sort(eig.begin(), eig.end());
    return eig;
}

namespace {

// One-sided Jacobi on the columns of diag(scales)*U; orthogonalizes U's
// columns in place (scales never change: column rotations act within rows).
// Returns the squared column norms, unsorted. Accumulates rotations into
// *v (d x d, row-major) when given.
std::vector<double> scaled_factor_diagonalize(const std::vector<double>& scales,
                                              ComplexMatrix& u, std::vector<Complex>* v) {
    const int rows = u.rows(), d = u.cols();
    std::vector<double> s2(rows);
    for (int r = 0; r < rows; ++r) s2[r] = scales[r] * scales[r];

    constexpr double rel_tol = 1e-13;
    constexpr int max_sweeps = 100;
    auto dot = [&](int p, int q) { // <g_p, g_q> with g = diag(scales) u
        Complex acc{};
        for (int r = 0; r < rows; ++r)
            if (s2[r] != 0.0) acc += s2[r] * std::conj(u.at(r, p)) * u.at(r, q);
        return acc;
    };

    int sweep = 0;
    bool dirty = true;
    while (dirty) {
        if (sweep++ >= max_sweeps)
            throw NumericError("eig_hermitian_from_scaled_factor: no convergence after 100 sweeps");
        dirty = false;
        for (int p = 0; p < d - 1; ++p) {
            for (int q = p + 1; q < d; ++q) {
                const double app = dot(p, p).real();
                const double aqq = dot(q, q).real();
                if (app == 0.0 || aqq == 0.0) continue;
                const Complex apq = dot(p, q);
                const double m = std::abs(apq);
                if (m <= rel_tol * std::sqrt(app) * std::sqrt(aqq)) continue;
                dirty = true;

                const Complex phase = apq / m;
                const double tau = (aqq - app) / (2.0 * m);
                double t;
                if (tau >= 0.0)
                    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
                else
                    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const Complex s_ph = s * phase;
                const Complex s_phc = s * std::conj(phase);

                for (int r = 0; r < rows; ++r) {
                    const Complex up = u.at(r, p);
                    const Complex uq = u.at(r, q);
                    u.at(r, p) = c * up - s_phc * uq;
                    u.at(r, q) = s_ph * up + c * uq;
                }
                if (v) {
                    for (int r = 0; r < d; ++r) {
                        const Complex vp = (*v)[static_cast<std::size_t>(r) * d + p];
                        const Complex vq = (*v)[static_cast<std::size_t>(r) * d + q];
                        (*v)[static_cast<std::size_t>(r) * d + p] = c * vp - s_phc * vq;
                        (*v)[static_cast<std::size_t>(r) * d + q] = s_ph * vp + c * vq;
                    }
                }
            }
        }
    }

    std::vector<double> eig(d);
    for (int k = 0; k < d; ++k) eig[k] = dot(k, k).real();
    return eig;
}

void check_scaled_factor_args(const std::vector<double>& scales, const ComplexMatrix& unit_rows) {
    if (unit_rows.rows() < 1 || unit_rows.cols() < 1)
        throw ValidationError("eig_hermitian_from_scaled_factor: empty factor");
    if (static_cast<int>(scales.size()) != unit_rows.rows())
        throw ValidationError("eig_hermitian_from_scaled_factor: scale count mismatch");
}

} // namespace

SpectralDecomposition eig_hermitian_from_scaled_factor(const std::vector<double>& scales,
                                                       const ComplexMatrix& unit_rows) {
    check_scaled_factor_args(scales, unit_rows);
    const int d = unit_rows.cols();
    ComplexMatrix u = unit_rows;
    std::vector<Complex> v(static_cast<std::size_t>(d) * d);
    for (int i = 0; i < d; ++i) v[static_cast<std::size_t>(i) * d + i] = 1.0;

    const std::vector<double> eig = scaled_factor_diagonalize(scales, u, &v);

    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return eig[i] < eig[j]; });

    SpectralDecomposition out;
    out.eigenvalues.resize(d);
    out.eigenvectors = ComplexMatrix(d, d);
    for (int k = 0; k < d; ++k) {
        out.eigenvalues[k] = eig[order[k]];
        for (int r = 0; r < d; ++r)
            out.eigenvectors.at(r, k) = v[static_cast<std::size_t>(r) * d + order[k]];
    }
    return out;
}

std::vector<double> eigenvalues_from_scaled_factor(const std::vector<double>& scales,
                                                   const ComplexMatrix& unit_rows) {
    check_scaled_factor_args(scales, unit_rows);
    ComplexMatrix u = unit_rows;
    std::vector<double> eig = scaled_factor_diagonalize(scales, u, nullptr);
    std::sort(eig.begin(), eig.end());
    return eig;
}

SpectralDecomposition eig_hermitian_from_factor(const ComplexMatrix& g) {
    const int rows = g.rows(), d = g.cols();
    if (rows < 1 || d < 1) throw ValidationError("eig_hermitian_from_factor: empty factor");
    std::vector<double> scales(rows, 0.0);
    ComplexMatrix u(rows, d);
    for (int r = 0; r < rows; ++r) {
        double nrm2 = 0.0;
        for (int c = 0; c < d; ++c) nrm2 += std::norm(g.at(r, c));
        const double nrm = std::sqrt(nrm2);
        scales[r] = nrm;
        if (nrm > 0.0)
            for (int c = 0; c < d; ++c) u.at(r, c) = g.at(r, c) / nrm;
    }
    return eig_hermitian_from_scaled_factor(scales, u);
}

HermitianMatrix SpectralDecomposition::apply(const std::function<double(double)>& f) const {
    const int n = static_cast<int>(eigenvalues.size());
    std::vector<double> fx(n);
    for (int k = 0; k < n; ++k) fx[k] = f(eigenvalues[k]);
    HermitianMatrix out(n);
    std::vector<Complex> buf(static_cast<std::size_t>(n) * n);
    // buf = V diag(fx)
    for (int r = 0; r < n; ++r)
        for (int k = 0; k < n; ++k)
            buf[static_cast<std::size_t>(r) * n + k] = eigenvectors.at(r, k) * fx[k];
    std::vector<Complex> res(static_cast<std::size_t>(n) * n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            Complex s{};
            for (int k = 0; k < n; ++k)
                s += buf[static_cast<std::size_t>(r) * n + k] * std::conj(eigenvectors.at(c, k));
            res[static_cast<std::size_t>(r) * n + c] = s;
        }
    return HermitianMatrix::from_entries(n, res);
}

namespace {

// PSD gate shared by the fractional-power family: clamps roundoff negatives
// to 0, rejects anything below the tolerance window. The window is
// -kPsdTol * max(1, spectral radius): absolute for state-sized operators,
// relative for the large intermediates that high powers produce.
std::pair<SpectralDecomposition, bool> psd_spectrum(const HermitianMatrix& a, const char* who) {
    SpectralDecomposition sd = eig_hermitian(a);
    const double radius =
        std::max(std::abs(sd.eigenvalues.front()), std::abs(sd.eigenvalues.back()));
    const double window = kPsdTol * std::max(1.0, radius);
    bool clamped = false;
    for (double& lam : sd.eigenvalues) {
        if (lam < -window) {
            std::ostringstream msg;
            msg << who << ": matrix is not PSD (eigenvalue " << lam << " < -" << window << ")";
            throw NumericError(msg.str());
        }
        if (lam < 0.0) {
            lam = 0.0;
            clamped = true;
        }
    }
    return {std::move(sd), clamped};
}

} // namespace

HermitianMatrix mat_power(const HermitianMatrix& a, double p) {
    if (!(p > 0.0)) throw ValidationError("mat_power: exponent must be > 0");
    auto [sd, clamped] = psd_spectrum(a, "mat_power");
    if (p == 1.0 && !clamped) return a;
    return sd.apply([p](double lam) { return lam > 0.0 ? std::pow(lam, p) : 0.0; });
}

HermitianMatrix mat_power_support(const HermitianMatrix& a, double p) {
    auto [sd, clamped] = psd_spectrum(a, "mat_power_support");
    (void)clamped;
    const double lam_max = sd.eigenvalues.empty() ? 0.0 : sd.eigenvalues.back();
    const double floor = 1e-12 * std::max(1.0, lam_max);
    return sd.apply([p, floor](double lam) { return lam > floor ? std::pow(lam, p) : 0.0; });
}

HermitianMatrix mat_log(const HermitianMatrix& a) {
    auto [sd, clamped] = psd_spectrum(a, "mat_log");
    (void)clamped;
    constexpr double eig_floor = 1e-300;
    return sd.apply([](double lam) { return lam > eig_floor ? std::log(lam) : 0.0; });
}

HermitianMatrix tensor(const HermitianMatrix& a, const HermitianMatrix& b, int dim_cap) {
    const long long nd = static_cast<long long>(a.dim()) * b.dim();
    if (nd > dim_cap) {
        std::ostringstream msg;
        msg << "tensor: composite dimension " << nd << " exceeds cap " << dim_cap;
        throw ValidationError(msg.str());
    }
    const int da = a.dim(), db = b.dim(), n = static_cast<int>(nd);
    std::vector<Complex> out(static_cast<std::size_t>(n) * n);
    for (int r1 = 0; r1 < da; ++r1)
        for (int c1 = 0; c1 < da; ++c1) {
            const Complex v = a.at(r1, c1);
            if (v == Complex{}) continue;
            for (int r2 = 0; r2 < db; ++r2)
                for (int c2 = 0; c2 < db; ++c2)
                    out[static_cast<std::size_t>(r1 * db + r2) * n + (c1 * db + c2)] =
                        v * b.at(r2, c2);
        }
    return HermitianMatrix::raw(n, std::move(out));
}

double trace_norm(const HermitianMatrix& a) {
    double s = 0.0;
    for (double lam : eigenvalues_of(a)) s += std::abs(lam);
    return s;
}

double min_eigenvalue(const HermitianMatrix& a) {
    return eigenvalues_of(a).front();
}

HermitianMatrix conjugate_with(const ComplexMatrix& c, const HermitianMatrix& a) {
    if (c.rows() != a.dim()) throw ValidationError("conjugate_with: shape mismatch");
    const int n = a.dim(), m = c.cols();
    // tmp = A C
    ComplexMatrix tmp(n, m);
    for (int r = 0; r < n; ++r)
        for (int j = 0; j < m; ++j) {
            Complex s{};
            for (int k = 0; k < n; ++k) s += a.at(r, k) * c.at(k, j);
            tmp.at(r, j) = s;
        }
    std::vector<Complex> out(static_cast<std::size_t>(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            Complex s{};
            for (int k = 0; k < n; ++k) s += std::conj(c.at(k, i)) * tmp.at(k, j);
            out[static_cast<std::size_t>(i) * m + j] = s;
        }
    return HermitianMatrix::from_entries(m, out);
}

HermitianMatrix sandwich(const HermitianMatrix& b, const HermitianMatrix& a) {
    if (b.dim() != a.dim()) throw ValidationError("sandwich: dim mismatch");
    const int n = a.dim();
    std::vector<Complex> ba(static_cast<std::size_t>(n) * n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            Complex s{};
            for (int k = 0; k < n; ++k) s += b.at(r, k) * a.at(k, c);
            ba[static_cast<std::size_t>(r) * n + c] = s;
        }
    std::vector<Complex> bab(static_cast<std::size_t>(n) * n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            Complex s{};
            for (int k = 0; k < n; ++k) s += ba[static_cast<std::size_t>(r) * n + k] * b.at(k, c);
            bab[static_cast<std::size_t>(r) * n + c] = s;
        }
    return HermitianMatrix::from_entries(n, bab);
}

double operator_norm(const ComplexMatrix& c) {
    const HermitianMatrix g = HermitianMatrix::gram(c.adjoint());
    const double lam = eigenvalues_of(g).back();
    return std::sqrt(std::max(0.0, lam));
}

} // namespace cqsc
