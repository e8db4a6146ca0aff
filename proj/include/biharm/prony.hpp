#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "biharm/model.hpp"
#include "biharm/report.hpp"
#include "biharm/sampling.hpp"

namespace biharm::prony {

/// v_j = 8 pi k_j^2 u^s(x, k_j) at k_j = j k0, j = 1..J (values[j-1] = v_j).
struct HarmonicData {
    double k0 = 0.0;
    std::vector<Complex> values;
    int count() const { return static_cast<int>(values.size()); }
};

/// Harmonic data of one sensor. Throws PreconditionError unless the
/// frequencies are k0, 2 k0, ..., J k0.
HarmonicData harmonic_data(const MeasurementSet& measurements, std::size_t sensor);

/// (J - 2M) x (2M + 1) Hankel matrix U[p, q] = v_{p+q+1}. Needs J > 4M.
Eigen::MatrixXcd build_data_matrix(const HarmonicData& data, int M);

/// Number of singular values above rel_tol * sigma_1 (0 for a zero matrix).
int numerical_rank(const Eigen::MatrixXcd& matrix, double rel_tol = 1e-8);

/// Distance of Theta(theta) = (1, theta, ..., theta^{rows-1}) from the span of
/// the leading `rank` left singular vectors of U, relative to |Theta|.
double range_residual(const Eigen::MatrixXcd& matrix, int rank, Complex theta);

struct NodeOptions {
    /// Singular values below rank_tol * sigma_1 count as zero.
    double rank_tol = 1e-8;
    /// Roots within tol_mod of the unit circle are xi nodes; real positive
    /// roots with modulus <= 1 - tol_mod are eta nodes. Eta roots whose
    /// imaginary part is at most tol_mod are projected to the real axis.
    double tol_mod = 1e-3;
    /// Allowed |d_eta - d_xi| / max(1, d_eta) when pairing the two node kinds.
    double match_tol = 1e-4;
    /// Refine the root-based distances by Gauss-Newton on all J samples of
    /// v_j = sum_m a_m (e^{i k0 d_m j} - e^{-k0 d_m j}).
    bool polish = true;

    /// Defaults widened for a relative noise level.
    static NodeOptions for_noise(double noise_level);
};

/// Nodes xi_m = e^{i k0 d_m}, eta_m = e^{-k0 d_m} and distances d_m, sorted by
/// distance. M* = size() may be smaller than the bound when terms cancel.
struct NodeSet {
    std::vector<Complex> xi;
    std::vector<Complex> eta;
    std::vector<double> distances;
    std::size_t size() const { return distances.size(); }
};

/// Annihilating-filter recovery. The numerical rank of U gives 2 M*; the null
/// vector of the (J - 2M*) x (2M* + 1) block holds the coefficients of a
/// polynomial whose roots are the nodes. Odd rank or inconsistent roots raise
/// DegenerateDataError; a xi/eta mismatch with k0 d > pi raises AmbiguityError.
/// The paired distances are then optionally polished (NodeOptions::polish).
NodeSet recover_nodes(const HarmonicData& data, int M, const NodeOptions& options = {});

/// Least-squares solve of V_{J+1} T = (0, v_1, ..., v_J) with node columns
/// xi_m^j then eta_m^j, j = 0..J. Returns tau_m = d_m (T_m - T_{M+m}) / 2.
/// Raises ConditioningError when cond(V) > 1e12.
std::vector<Complex> recover_strengths_vandermonde(const HarmonicData& data,
                                                   const std::vector<double>& distances);

struct SensorNodes {
    std::size_t sensor = 0;
    NodeSet nodes;
    std::vector<Complex> strengths;
    /// Empty on success; otherwise the reason this sensor was dropped.
    std::string failure;
};

struct FiniteFreqOptions {
    int M_bound = 1;
    NodeOptions nodes;
    /// When set, positions come from the 3D sampling indicator on this grid
    /// and each peak takes the Vandermonde strength of the nearest recovered
    /// distance at its best-separated sensor.
    std::optional<sampling::SamplingGrid> grid;
    sampling::PeakParams peaks;
};

struct FiniteFreqResult {
    std::vector<SensorNodes> per_sensor;
    /// max M* over the sensors.
    std::size_t estimated_count = 0;
    /// Sensor with M* = estimated_count and the widest distance gaps; its
    /// strengths are the grid-free strength estimate.
    std::optional<std::size_t> best_sensor;
    std::vector<Complex> strengths;
    std::vector<std::string> warnings;
    /// Present only in grid mode.
    std::optional<ReconstructionReport> located;
};

/// Per-sensor node and strength recovery on harmonic 3D data. Requires no four
/// sensors coplanar and J > 4 M_bound. Warns when k0 > pi / (2R).
FiniteFreqResult run_finite_freq_3d(const MeasurementSet& measurements,
                                    const FiniteFreqOptions& options,
                                    sampling::IndicatorField* field_out = nullptr);

/// CSV "sensor_index,node_type,value_re,value_im,distance", one row per node.
void write_nodes_csv(const std::vector<SensorNodes>& nodes, std::ostream& out);

}  // namespace biharm::prony
