#ifndef IMPLODE_KEMPF_NESS_HPP
#define IMPLODE_KEMPF_NESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "implode/moment.hpp"
#include "implode/quiver.hpp"

namespace implode {

// Which subgroup of the gauge group the flow moves in: the product of
// special unitary factors (H), its maximal torus (H_T), the full unitary
// product (tilde H) or its torus (tilde H_T). The flow itself moves in the
// complexification, along exponentials of hermitian directions.
enum class GaugeSubgroup { special_unitary, special_torus, full_unitary, full_torus };

struct SolveOptions {
    int max_iters = 500;
    double tol = 1e-10;
    double complex_pre_tol = 1e-8;   // admissible complex residual on entry
    double step_init = 1.0;
    double step_shrink = 0.5;
    double armijo_c = 1e-4;
    GaugeSubgroup subgroup = GaugeSubgroup::full_unitary;
    std::uint64_t seed = 0;          // used by the stability sampler
    int stability_samples = 8;
    double rank_rel_tol = kRankRelTol;
    double rank_band = kRankBand;
    double replay_tol = 1e-6;        // certificate replay threshold (relative)
};

struct SolveReport {
    bool converged = false;
    int iterations = 0;
    double residual = 0.0;           // sqrt(sum ||mu_i - t_i I||_F^2)
    std::vector<double> objective_trace;
    std::string message;
};

struct SolveResult {
    Quiver quiver;
    GaugeElement gauge;
    SolveReport report;
};

// Gradient flow along the gauge orbit driving the real moment values to
// target_levels * I. In hyperkahler mode the complex moment equations must
// already hold at some level; the flow conjugates and therefore preserves
// them. Non-convergence is reported, not thrown.
SolveResult solve_real_moment(const Quiver& q, const std::vector<double>& target_levels,
                              const SolveOptions& opts = {});

enum class Stability { stable, polystable, not_polystable };

// One-parameter subgroup g_i(t) = U_i diag(t^{w_i}) U_i^*; for null-cone
// configurations it drives the whole quiver to zero as t -> 0.
struct DestabilizingCertificate {
    std::vector<Matrix> node_bases;
    std::vector<std::vector<int>> weights;

    GaugeElement at(double t) const;
};

// Per-node bases [W | Z] splitting each V_i into the injective-summand part
// W (dim w_i) and the zero-summand part Z = ker alpha_i.
struct SplittingData {
    std::vector<int> injective_dims;
    std::vector<int> zero_dims;
    std::vector<Matrix> node_bases;
};

struct StabilityVerdict {
    Stability status = Stability::not_polystable;
    std::optional<DestabilizingCertificate> certificate;
    std::optional<SplittingData> splitting;
    std::string details;
};

// Symplectic mode: stable iff every alpha_i is injective; polystable iff the
// quiver is a direct sum of a zero quiver and an injective quiver (kernels
// meet incoming images trivially and ranks only jump to full). Hyperkahler
// mode: stable iff for a generic rotation of the complex structure all alpha
// are injective and all beta surjective, sampled opts.stability_samples
// times; the all-zero quiver is polystable.
StabilityVerdict polystable_test(const Quiver& q, const SolveOptions& opts = {});

// Smallest quiver norm seen while replaying the certificate over a decade
// sweep of parameters, relative to the input norm.
double replay_certificate(const Quiver& q, const DestabilizingCertificate& cert);

}  // namespace implode

#endif
