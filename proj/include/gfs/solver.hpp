#pragma once

#include <vector>

#include "gfs/fft.hpp"
#include "gfs/tensor.hpp"

namespace gfs {

using FeatureTensor = RealTensor3;
using FilterTensor = RealTensor3;

// Weights of the regularisation terms. Names follow the term each weight
// multiplies (spatial group l2, channel group Frobenius, temporal quadratic);
// ridge_lambda belongs to the classical closed-form learner only. The group
// weights default to a 10:1 channel:spatial ratio scaled to this pipeline's
// feature normalisation (filter group norms are O(1e-2) at the default grid).
struct RegularisationConfig {
    double lambda_spatial = 0.005;
    double lambda_channel = 0.05;
    double lambda_temporal = 16.0;
    double ridge_lambda = 1e-4;

    void validate() const {
        if (lambda_spatial < 0 || lambda_channel < 0 || lambda_temporal < 0 || ridge_lambda < 0)
            throw ConfigError("RegularisationConfig: lambdas must be nonnegative");
    }
};

struct SelectionConfig {
    double channel_ratio = 0.9;
    double spatial_ratio = 0.1;
    bool per_block = true;

    void validate() const {
        if (channel_ratio <= 0 || channel_ratio > 1 || spatial_ratio <= 0 || spatial_ratio > 1)
            throw ConfigError("SelectionConfig: ratios must lie in (0, 1]");
    }
};

struct AdmmConfig {
    double mu_init = 1.0;
    double mu_growth = 1.05;
    double mu_max = 100.0;
    int max_iters = 50;
    double tol_primal = 1e-5;
    double tol_change = 1e-5;

    void validate() const {
        if (mu_init <= 0 || mu_max <= 0 || mu_init > mu_max)
            throw ConfigError("AdmmConfig: need 0 < mu_init <= mu_max");
        if (mu_growth < 1) throw ConfigError("AdmmConfig: mu_growth must be >= 1");
        if (max_iters < 1) throw ConfigError("AdmmConfig: max_iters must be positive");
        if (tol_primal <= 0 || tol_change <= 0) throw ConfigError("AdmmConfig: tolerances must be positive");
    }
};

// Half-open channel interval of one feature block inside the concatenated tensor.
struct ChannelRange {
    int begin = 0;
    int end = 0;
    int count() const { return end - begin; }
};

struct SelectionMask {
    std::vector<bool> channel_keep;     // length C
    std::vector<bool> spatial_keep;     // N*N, row major
    int side = 0;

    bool keeps(int i, int j, int k) const {
        return channel_keep[k] && spatial_keep[static_cast<std::size_t>(i) * side + j];
    }
};

// Desired response: circularly shifted Gaussian peaking at the grid origin,
// kept together with its DFT.
struct ResponseLabel {
    RealMatrix values;
    std::vector<cplx> spectrum;
    int side() const { return values.side(); }
};

struct GfsSolution {
    FilterTensor filter;
    SelectionMask mask;
    int iterations_used = 0;
    double primal_residual = 0.0;
    std::vector<double> objective_trace;
};

// sigma = sigma_factor * sqrt(target_w_cells * target_h_cells), peak value 1 at (0,0).
ResponseLabel gaussian_label(Grid2D grid, double sigma_factor,
                             double target_w_cells, double target_h_cells);

// Classical single-frame ridge learner, solved per frequency bin through the
// rank-one inversion identity. With ridge_lambda == 0 a zero-energy bin raises
// SingularError; otherwise the minimum-norm solution is returned.
FilterTensor dcf_closed_form(const FeatureTensor& x, const ResponseLabel& y, double ridge_lambda);

// A[i,j] = l2 norm across channels at spatial location (i,j).
RealMatrix spatial_group_attributes(const RealTensor3& w);

// a[k] = Frobenius norm of channel slice k.
std::vector<double> channel_group_attributes(const RealTensor3& w);

// Keeps exactly round(ratio * len) entries with the largest attributes;
// ties keep the lower flat index first.
std::vector<bool> prune_by_ratio(const std::vector<double>& attrs, double ratio);

// Joint channel/spatial group shrinkage applied to p = w + Gamma/mu:
//   w'[i,j,k] = max(0, 1 - lambda_channel/(mu*||P^k||_F)
//                     - lambda_spatial/(mu*||p_ij:||_2)) * p[i,j,k],
// with zero-norm groups mapping to zero.
RealTensor3 group_shrink(const RealTensor3& p, double mu,
                         double lambda_channel, double lambda_spatial);

// Full objective evaluated in the spatial domain:
//   ||corr(x, w) - Y||_F^2 + lambda_spatial * sum_ij ||w_ij:||_2
//   + lambda_channel * sum_k ||W^k||_F + lambda_temporal * sum_k ||W^k - W^k_prev||_F^2.
double objective_value(const FilterTensor& w, const FeatureTensor& x, const ResponseLabel& y,
                       const FilterTensor& w_prev, const RegularisationConfig& reg);

// True when the tail of the trace rose for 10 consecutive iterations by more
// than 1e-6 relative, the condition admm_solve treats as divergence.
bool trace_diverged(const std::vector<double>& trace);

// ADMM solver for the group-selection objective. Returns the converged
// consensus filter with the ratio masks applied (masked-out entries are
// exactly zero). `blocks` lists the channel ranges selection applies to when
// sel.per_block is set; an empty list means one block spanning all channels.
GfsSolution admm_solve(const FeatureTensor& x, const ResponseLabel& y, const FilterTensor& w_prev,
                       const RegularisationConfig& reg, const SelectionConfig& sel,
                       const AdmmConfig& admm, const std::vector<ChannelRange>& blocks);

// alpha * w_new + (1 - alpha) * w_model
FilterTensor model_update(const FilterTensor& w_new, const FilterTensor& w_model, double alpha);

} // namespace gfs
