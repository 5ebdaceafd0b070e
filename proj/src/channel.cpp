#include "cqsc/channel.hpp"

#include <cmath>
#include <sstream>

namespace cqsc {

namespace {
constexpr double kTraceTol = 1e-10;
constexpr double kPovmTol = 1e-9;
} // namespace

DensityOperator::DensityOperator(HermitianMatrix m) : mat_(std::move(m)) {
    const double tr = mat_.trace();
    if (std::abs(tr - 1.0) > kTraceTol) {
        std::ostringstream msg;
        msg << "DensityOperator: trace " << tr << " is not 1 within " << kTraceTol;
        throw ValidationError(msg.str());
    }
    const double lam = min_eigenvalue(mat_);
    if (lam < -kPsdTol) {
        std::ostringstream msg;
        msg << "DensityOperator: not PSD (min eigenvalue " << lam << ")";
        throw ValidationError(msg.str());
    }
}

bool DensityOperator::is_pure() const {
    // rank 1 with unit trace <=> Tr rho^2 = 1
    return std::abs(trace_product(mat_, mat_) - 1.0) < 1e-9;
}

Prior::Prior(std::vector<double> probs) : p_(std::move(probs)) {
    if (p_.empty()) throw ValidationError("Prior: empty probability vector");
    double sum = 0.0;
    for (double& v : p_) {
        if (v < -1e-12) throw ValidationError("Prior: negative probability");
        if (v < 0.0) v = 0.0;
        sum += v;
    }
    if (sum <= 0.0) throw ValidationError("Prior: probabilities sum to zero");
    for (double& v : p_) v /= sum;
}

Prior Prior::uniform(int a) {
    return Prior(std::vector<double>(a, 1.0 / a));
}

Prior Prior::point_mass(int a, int letter) {
    if (letter < 1 || letter > a) throw ValidationError("Prior::point_mass: letter out of range");
    std::vector<double> p(a, 0.0);
    p[letter - 1] = 1.0;
    return Prior(std::move(p));
}

CqChannel::CqChannel(std::vector<DensityOperator> states) : states_(std::move(states)) {
    if (states_.empty()) throw ValidationError("CqChannel: alphabet must be non-empty");
    dim_ = states_.front().dim();
    for (const DensityOperator& s : states_)
        if (s.dim() != dim_) throw ValidationError("CqChannel: states have mixed dimensions");
}

Codebook::Codebook(int n, std::vector<std::vector<int>> words) : n_(n), words_(std::move(words)) {
    if (n_ < 1) throw ValidationError("Codebook: block length must be >= 1");
    if (words_.empty()) throw ValidationError("Codebook: must contain at least one codeword");
    for (const auto& w : words_) {
        if (static_cast<int>(w.size()) != n_)
            throw ValidationError("Codebook: codeword length differs from block length");
        for (int letter : w)
            if (letter < 1) throw ValidationError("Codebook: letters are 1-based positive");
    }
}

double Codebook::rate() const {
    return std::log(static_cast<double>(size())) / n_;
}

Povm::Povm(std::vector<HermitianMatrix> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw ValidationError("Povm: needs at least the evasion outcome");
    const int d = elements_.front().dim();
    HermitianMatrix sum(d);
    for (std::size_t k = 0; k < elements_.size(); ++k) {
        if (elements_[k].dim() != d) throw ValidationError("Povm: elements have mixed dimensions");
        const double lam = min_eigenvalue(elements_[k]);
        if (lam < -kPovmTol) {
            std::ostringstream msg;
            msg << "Povm: element " << k << " not PSD (min eigenvalue " << lam << ")";
            throw ValidationError(msg.str());
        }
        sum = sum + elements_[k];
    }
    const HermitianMatrix resid = sum - HermitianMatrix::identity(d);
    if (resid.max_abs_entry() > kPovmTol) {
        std::ostringstream msg;
        msg << "Povm: elements sum to identity only within " << resid.max_abs_entry()
            << " (tolerance " << kPovmTol << ")";
        throw ValidationError(msg.str());
    }
}

DensityOperator codeword_state(const CqChannel& ch, const std::vector<int>& word, int dim_cap) {
    if (word.empty()) throw ValidationError("codeword_state: empty word");
    const int a = ch.alphabet_size();
    for (int letter : word)
        if (letter < 1 || letter > a) {
            std::ostringstream msg;
            msg << "codeword_state: letter " << letter << " outside alphabet {1,...," << a << "}";
            throw ValidationError(msg.str());
        }
    HermitianMatrix out = ch.state(word[0] - 1).mat();
    for (std::size_t i = 1; i < word.size(); ++i)
        out = tensor(out, ch.state(word[i] - 1).mat(), dim_cap);
    return DensityOperator(std::move(out));
}

DensityOperator average_state(const CqChannel& ch, const Prior& pi) {
    if (pi.size() != ch.alphabet_size())
        throw ValidationError("average_state: prior length does not match alphabet");
    HermitianMatrix acc(ch.dim());
    for (int i = 0; i < pi.size(); ++i) acc = acc + ch.state(i).mat().scaled(pi[i]);
    return DensityOperator(std::move(acc));
}

double average_error(const CqChannel& ch, const Codebook& cb, const Povm& povm) {
    const int m = cb.size();
    if (povm.outcomes() != m + 1)
        throw ValidationError("average_error: POVM must have M+1 outcomes (including evasion)");
    double success = 0.0;
    for (int k = 0; k < m; ++k) {
        const DensityOperator rho = codeword_state(ch, cb.word(k));
        if (rho.dim() != povm.dim())
            throw ValidationError("average_error: POVM dimension does not match codeword states");
        success += trace_product(rho.mat(), povm.element(k + 1));
    }
    return 1.0 - success / m;
}

} // namespace cqsc
