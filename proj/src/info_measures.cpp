#include "cqsc/info_measures.hpp"

#include <cmath>
#include <sstream>

namespace cqsc {

namespace {

void require_beta(double beta, const char* who) {
    if (!(beta > 0.0) || beta > 1.0) {
        std::ostringstream msg;
        msg << who << ": beta must lie in (0, 1], got " << beta;
        throw ValidationError(msg.str());
    }
}

void require_weights(std::span<const double> w, int a, const char* who) {
    if (static_cast<int>(w.size()) != a) {
        std::ostringstream msg;
        msg << who << ": weight count " << w.size() << " does not match alphabet " << a;
        throw ValidationError(msg.str());
    }
}

} // namespace

double von_neumann_entropy(const DensityOperator& rho) {
    double h = 0.0;
    for (double lam : eigenvalues_of(rho.mat()))
        if (lam > 0.0) h -= lam * std::log(lam);
    return h;
}

double mutual_info(const CqChannel& ch, const Prior& pi) {
    if (pi.size() != ch.alphabet_size())
        throw ValidationError("mutual_info: prior length does not match alphabet");
    double h_cond = 0.0;
    for (int i = 0; i < pi.size(); ++i)
        if (pi[i] > 0.0) h_cond += pi[i] * von_neumann_entropy(ch.state(i));
    return von_neumann_entropy(average_state(ch, pi)) - h_cond;
}

PoweredChannel::PoweredChannel(const CqChannel& ch, double beta) : beta_(beta), dim_(ch.dim()) {
    require_beta(beta, "PoweredChannel");
    states_.reserve(ch.alphabet_size());
    for (int i = 0; i < ch.alphabet_size(); ++i) {
        SpectralDecomposition sd = eig_hermitian(ch.state(i).mat());
        StateSpec spec;
        spec.eig.reserve(sd.eigenvalues.size());
        spec.half_pow.reserve(sd.eigenvalues.size());
        for (double lam : sd.eigenvalues) {
            const double mu = std::max(0.0, lam); // states are validated PSD
            spec.eig.push_back(mu);
            spec.half_pow.push_back(mu > 0.0 ? std::pow(mu, 0.5 / beta) : 0.0);
        }
        spec.vec = std::move(sd.eigenvectors);
        states_.push_back(std::move(spec));
    }

    int rows = 0;
    for (const StateSpec& st : states_)
        for (double hp : st.half_pow)
            if (hp > 0.0) ++rows;
    unit_rows_ = ComplexMatrix(rows, dim_);
    row_state_.resize(rows);
    row_half_pow_.resize(rows);
    int r = 0;
    for (int i = 0; i < alphabet_size(); ++i) {
        const StateSpec& st = states_[i];
        for (int j = 0; j < dim_; ++j) {
            if (!(st.half_pow[j] > 0.0)) continue;
            row_state_[r] = i;
            row_half_pow_[r] = st.half_pow[j];
            for (int c = 0; c < dim_; ++c) unit_rows_.at(r, c) = std::conj(st.vec.at(c, j));
            ++r;
        }
    }
}

HermitianMatrix PoweredChannel::powered_state(int i) const {
    const StateSpec& st = states_[i];
    SpectralDecomposition sd;
    sd.eigenvalues = st.eig;
    sd.eigenvectors = st.vec;
    const double p = 1.0 / beta_;
    return sd.apply([p](double lam) { return lam > 0.0 ? std::pow(lam, p) : 0.0; });
}

HermitianMatrix PoweredChannel::weighted_sum(std::span<const double> w) const {
    require_weights(w, alphabet_size(), "PoweredChannel");
    HermitianMatrix s(dim_);
    for (int i = 0; i < alphabet_size(); ++i)
        if (w[i] != 0.0) s = s + powered_state(i).scaled(w[i]);
    return s;
}

std::vector<double> PoweredChannel::factor_scales(std::span<const double> w) const {
    std::vector<double> root_w(alphabet_size());
    bool any = false;
    for (int i = 0; i < alphabet_size(); ++i) {
        root_w[i] = w[i] > 0.0 ? std::sqrt(w[i]) : 0.0;
        any = any || w[i] > 0.0;
    }
    if (!any) throw NumericError("PoweredChannel: all weights vanish");
    std::vector<double> scales(row_state_.size());
    for (std::size_t r = 0; r < row_state_.size(); ++r)
        scales[r] = root_w[row_state_[r]] * row_half_pow_[r];
    return scales;
}

SpectralDecomposition PoweredChannel::factored_spectrum(std::span<const double> w) const {
    return eig_hermitian_from_scaled_factor(factor_scales(w), unit_rows_);
}

double PoweredChannel::value(std::span<const double> w) const {
    require_weights(w, alphabet_size(), "PoweredChannel");
    if (beta_ == 1.0) {
        // Tr S = Sum_i w_i Tr rho_i, exact
        double f = 0.0;
        for (int i = 0; i < alphabet_size(); ++i) {
            double tr = 0.0;
            for (double mu : states_[i].eig) tr += mu;
            f += w[i] * tr;
        }
        return f;
    }
    if (alphabet_size() == 1) {
        // Tr (w rho^{1/beta})^beta = w^beta Tr rho on the support, exact
        if (!(w[0] > 0.0)) return 0.0;
        double tr = 0.0;
        for (double mu : states_[0].eig) tr += mu;
        return std::pow(w[0], beta_) * tr;
    }
    double f = 0.0;
    for (double lam : eigenvalues_from_scaled_factor(factor_scales(w), unit_rows_))
        if (lam > 0.0) f += std::exp(beta_ * std::log(lam));
    return f;
}

PoweredChannel::ValueGrad PoweredChannel::value_and_grad(std::span<const double> w) const {
    require_weights(w, alphabet_size(), "PoweredChannel");
    const int a = alphabet_size();
    const SpectralDecomposition sd = factored_spectrum(w);

    ValueGrad out;
    out.value = value(w);
    out.pairings.assign(a, 0.0);
    for (int k = 0; k < dim_; ++k) {
        const double lam = sd.eigenvalues[k];
        if (!(lam > 0.0)) continue;
        const double log_lam = std::log(lam);
        for (int i = 0; i < a; ++i) {
            // quad = v_k^H rho_i^{1/beta} v_k as a positive sum over the
            // state's spectrum; w_i quad <= lam bounds off noise-dominated
            // directions (sum_i w_i quad_ik = lam_k).
            double quad = 0.0;
            const StateSpec& st = states_[i];
            for (int j = 0; j < dim_; ++j) {
                if (!(st.half_pow[j] > 0.0)) continue;
                Complex inner{};
                for (int c = 0; c < dim_; ++c)
                    inner += std::conj(st.vec.at(c, j)) * sd.eigenvectors.at(c, k);
                const double t = st.half_pow[j] * std::abs(inner);
                quad += t * t;
            }
            if (w[i] > 0.0) quad = std::min(quad, lam / w[i]);
            if (!(quad > 0.0)) continue;
            out.pairings[i] += std::exp((beta_ - 1.0) * log_lam + std::log(quad));
        }
    }
    return out;
}

double trace_functional(const CqChannel& ch, const Prior& pi, double beta) {
    require_beta(beta, "trace_functional");
    return PoweredChannel(ch, beta).value(pi.probs());
}

double trace_functional_weights(const CqChannel& ch, std::span<const double> w, double beta) {
    require_beta(beta, "trace_functional_weights");
    return PoweredChannel(ch, beta).value(w);
}

std::vector<double> trace_functional_grad(const CqChannel& ch, const Prior& pi, double beta) {
    require_beta(beta, "trace_functional_grad");
    std::vector<double> g = PoweredChannel(ch, beta).value_and_grad(pi.probs()).pairings;
    for (double& v : g) v *= beta;
    return g;
}

E0Point e0(const CqChannel& ch, const Prior& pi, double s) {
    if (!(s > -1.0) || s > 0.0) {
        std::ostringstream msg;
        msg << "e0: s must lie in (-1, 0], got " << s;
        throw ValidationError(msg.str());
    }
    const double beta = s + 1.0;
    double value = -std::log(trace_functional(ch, pi, beta));
    if (value == 0.0) value = 0.0; // normalize -0
    return E0Point{s, value, beta};
}

double e0_slope_at_zero(const CqChannel& ch, const Prior& pi) {
    return mutual_info(ch, pi);
}

} // namespace cqsc
