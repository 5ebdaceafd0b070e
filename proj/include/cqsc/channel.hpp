#ifndef CQSC_CHANNEL_HPP
#define CQSC_CHANNEL_HPP

#include <vector>

#include "cqsc/hermitian.hpp"

namespace cqsc {

/// PSD, unit-trace Hermitian matrix. Validates min eigenvalue >= -1e-10 and
/// |Tr - 1| <= 1e-10 at construction.
class DensityOperator {
public:
    explicit DensityOperator(HermitianMatrix m);

    const HermitianMatrix& mat() const { return mat_; }
    int dim() const { return mat_.dim(); }

    /// True when the state is rank one within tolerance (detected, never assumed).
    bool is_pure() const;

private:
    HermitianMatrix mat_;
};

/// Probability distribution on the input alphabet. Entries below -1e-12 are
/// rejected; tiny negatives clamp to 0 and the vector is renormalized so the
/// sum is 1 up to roundoff.
class Prior {
public:
    explicit Prior(std::vector<double> probs);

    static Prior uniform(int a);
    static Prior point_mass(int a, int letter); ///< letter is 1-based

    int size() const { return static_cast<int>(p_.size()); }
    double operator[](int i) const { return p_[i]; }
    const std::vector<double>& probs() const { return p_; }

private:
    std::vector<double> p_;
};

/// Classical-quantum channel: input letter i (1-based) -> density operator
/// on a fixed d-dimensional carrier.
class CqChannel {
public:
    explicit CqChannel(std::vector<DensityOperator> states);

    int dim() const { return dim_; }
    int alphabet_size() const { return static_cast<int>(states_.size()); }
    /// 0-based access.
    const DensityOperator& state(int i) const { return states_[i]; }

private:
    int dim_;
    std::vector<DensityOperator> states_;
};

/// M codewords of block length n; letters are 1-based. Repeats are allowed.
class Codebook {
public:
    Codebook(int n, std::vector<std::vector<int>> words);

    int block_length() const { return n_; }
    int size() const { return static_cast<int>(words_.size()); } ///< M
    const std::vector<int>& word(int k) const { return words_[k]; }
    /// log M / n, nats per symbol.
    double rate() const;

private:
    int n_;
    std::vector<std::vector<int>> words_;
};

/// Resolution of identity {X_0, ..., X_M}; X_0 is the evasion outcome and is
/// always present (possibly zero). Validates each element PSD within 1e-9 and
/// the sum equal to identity within 1e-9 per entry.
class Povm {
public:
    explicit Povm(std::vector<HermitianMatrix> elements);

    int outcomes() const { return static_cast<int>(elements_.size()); } ///< M + 1
    int dim() const { return elements_.front().dim(); }
    const HermitianMatrix& element(int k) const { return elements_[k]; }

private:
    std::vector<HermitianMatrix> elements_;
};

/// n-fold tensor product of the letter states, in sequence order.
DensityOperator codeword_state(const CqChannel& ch, const std::vector<int>& word,
                               int dim_cap = kMaxTensorDim);

/// Sum_i pi_i rho_i.
DensityOperator average_state(const CqChannel& ch, const Prior& pi);

/// 1 - (1/M) Sum_k Tr(rho_{u^k} X_k); X_0 is never credited as a correct
/// decode. Returned raw (never clamped).
double average_error(const CqChannel& ch, const Codebook& cb, const Povm& povm);

} // namespace cqsc

#endif
