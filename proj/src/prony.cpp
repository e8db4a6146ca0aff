#include "biharm/prony.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <fmt/format.h>

#include "biharm/errors.hpp"
#include "biharm/geometry.hpp"
#include "biharm/multi3d.hpp"

namespace biharm::prony {

using std::numbers::pi;

HarmonicData harmonic_data(const MeasurementSet& m, std::size_t sensor)
{
    if (sensor >= m.sensors.size()) {
        throw DomainError("harmonic_data: sensor index out of range");
    }
    const auto& k = m.frequencies.values();
    HarmonicData d;
    d.k0 = k.front();
    d.values.reserve(k.size());
    for (std::size_t j = 0; j < k.size(); ++j) {
        const double expected = static_cast<double>(j + 1) * d.k0;
        if (std::fabs(k[j] - expected) > 1e-9 * expected) {
            throw PreconditionError(fmt::format(
                "finite-frequency data needs k_j = j k0; frequency {} is {} instead of {}", j + 1,
                k[j], expected));
        }
        d.values.push_back(8.0 * pi * k[j] * k[j] *
                           m.samples(static_cast<Eigen::Index>(sensor), static_cast<Eigen::Index>(j)));
    }
    return d;
}

Eigen::MatrixXcd build_data_matrix(const HarmonicData& data, int M)
{
    const int J = data.count();
    if (M < 0 || J <= 4 * M) {
        throw ShapeError(fmt::format("data matrix needs J > 4M (J = {}, M = {})", J, M));
    }
    Eigen::MatrixXcd U(J - 2 * M, 2 * M + 1);
    for (int p = 0; p < U.rows(); ++p) {
        for (int q = 0; q < U.cols(); ++q) {
            U(p, q) = data.values[static_cast<std::size_t>(p + q)];
        }
    }
    return U;
}

int numerical_rank(const Eigen::MatrixXcd& matrix, double rel_tol)
{
    if (matrix.size() == 0) {
        return 0;
    }
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(matrix);
    const auto& s = svd.singularValues();
    if (!(s(0) > 0.0)) {
        return 0;
    }
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > rel_tol * s(0)) {
            ++rank;
        }
    }
    return rank;
}

double range_residual(const Eigen::MatrixXcd& matrix, int rank, Complex theta)
{
    const Eigen::Index n = matrix.rows();
    Eigen::VectorXcd v(n);
    Complex p{1.0, 0.0};
    for (Eigen::Index i = 0; i < n; ++i) {
        v(i) = p;
        p *= theta;
    }
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(matrix, Eigen::ComputeThinU);
    const Eigen::MatrixXcd q = svd.matrixU().leftCols(rank);
    return (v - q * (q.adjoint() * v)).norm() / v.norm();
}

NodeOptions NodeOptions::for_noise(double noise_level)
{
    NodeOptions o;
    o.rank_tol = std::max(o.rank_tol, 0.5 * noise_level);
    o.tol_mod = std::max(o.tol_mod, 2.0 * noise_level);
    o.match_tol = std::max(o.match_tol, 4.0 * noise_level);
    return o;
}

namespace {

// Residual v_j - sum_m a_m (xi_m^j - eta_m^j) with a solved by least squares.
struct FitState {
    Eigen::VectorXcd a;
    Eigen::VectorXcd residual;
    Eigen::MatrixXcd basis;  // J x M, column m = xi_m^j - eta_m^j
};

FitState fit(const HarmonicData& data, const std::vector<double>& d)
{
    const int J = data.count();
    const auto M = static_cast<Eigen::Index>(d.size());
    FitState s;
    s.basis.resize(J, M);
    Eigen::VectorXcd v(J);
    for (int j = 0; j < J; ++j) {
        v(j) = data.values[static_cast<std::size_t>(j)];
        for (Eigen::Index m = 0; m < M; ++m) {
            const double kd = data.k0 * d[static_cast<std::size_t>(m)] * (j + 1);
            s.basis(j, m) = std::polar(1.0, kd) - std::exp(-kd);
        }
    }
    s.a = s.basis.colPivHouseholderQr().solve(v);
    s.residual = v - s.basis * s.a;
    return s;
}

std::vector<double> polish_distances(const HarmonicData& data, std::vector<double> d)
{
    const int J = data.count();
    const auto M = static_cast<Eigen::Index>(d.size());
    FitState cur = fit(data, d);
    for (int it = 0; it < 20; ++it) {
        // real Jacobian of the stacked (Re, Im) residual in (d, Re a, Im a)
        Eigen::MatrixXd jac(2 * J, 3 * M);
        for (int j = 0; j < J; ++j) {
            const double kj = data.k0 * (j + 1);
            for (Eigen::Index m = 0; m < M; ++m) {
                const double kd = kj * d[static_cast<std::size_t>(m)];
                const Complex dd = cur.a(m) * kj *
                                   (Complex(0.0, 1.0) * std::polar(1.0, kd) + std::exp(-kd));
                const Complex b = cur.basis(j, m);
                jac(j, m) = dd.real();
                jac(J + j, m) = dd.imag();
                jac(j, M + m) = b.real();
                jac(J + j, M + m) = b.imag();
                jac(j, 2 * M + m) = -b.imag();
                jac(J + j, 2 * M + m) = b.real();
            }
        }
        Eigen::VectorXd r(2 * J);
        r << cur.residual.real(), cur.residual.imag();
        const Eigen::VectorXd step = jac.colPivHouseholderQr().solve(r);
        std::vector<double> trial = d;
        for (Eigen::Index m = 0; m < M; ++m) {
            trial[static_cast<std::size_t>(m)] += step(m);
        }
        const FitState next = fit(data, trial);
        if (!(next.residual.norm() < cur.residual.norm())) {
            break;
        }
        d = std::move(trial);
        cur = next;
    }
    return d;
}

}  // namespace

NodeSet recover_nodes(const HarmonicData& data, int M, const NodeOptions& options)
{
    if (!(data.k0 > 0.0)) {
        throw DomainError("recover_nodes: k0 must be positive");
    }
    const int rank = numerical_rank(build_data_matrix(data, M), options.rank_tol);
    if (rank == 0) {
        return {};
    }
    if (rank % 2 != 0) {
        throw DegenerateDataError(
            fmt::format("recover_nodes: numerical rank {} of the data matrix is odd", rank));
    }
    const int m_star = rank / 2;
    const Eigen::MatrixXcd H = build_data_matrix(data, m_star);
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(H, Eigen::ComputeFullV);
    const Eigen::VectorXcd c = svd.matrixV().col(H.cols() - 1);

    const int degree = 2 * m_star;
    if (std::abs(c(degree)) < 1e-12 * c.norm()) {
        throw DegenerateDataError("recover_nodes: annihilating polynomial loses its leading term");
    }
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(degree, degree);
    for (int i = 1; i < degree; ++i) {
        companion(i, i - 1) = 1.0;
    }
    for (int i = 0; i < degree; ++i) {
        companion(i, degree - 1) = -c(i) / c(degree);
    }
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(companion, false);
    if (eig.info() != Eigen::Success) {
        throw DegenerateDataError("recover_nodes: root finding did not converge");
    }

    std::vector<std::pair<double, Complex>> xi;
    std::vector<std::pair<double, Complex>> eta;
    for (Eigen::Index i = 0; i < degree; ++i) {
        const Complex root = eig.eigenvalues()(i);
        const double mod = std::abs(root);
        if (std::fabs(mod - 1.0) <= options.tol_mod) {
            // principal phase: only k0 d in (0, pi] is read back unambiguously
            xi.emplace_back(std::arg(root) / data.k0, root);
        } else if (mod <= 1.0 - options.tol_mod && root.real() > 0.0 &&
                   std::fabs(root.imag()) <= options.tol_mod) {
            const double e = root.real();
            eta.emplace_back(-std::log(e) / data.k0, Complex(e, 0.0));
        }
    }
    if (xi.size() != static_cast<std::size_t>(m_star) ||
        eta.size() != static_cast<std::size_t>(m_star)) {
        throw DegenerateDataError(fmt::format(
            "recover_nodes: expected {} unit-modulus and {} interior roots, found {} and {}",
            m_star, m_star, xi.size(), eta.size()));
    }
    std::sort(xi.begin(), xi.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::sort(eta.begin(), eta.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    NodeSet nodes;
    for (std::size_t m = 0; m < eta.size(); ++m) {
        const double d = eta[m].first;
        if (std::fabs(d - xi[m].first) > options.match_tol * std::max(1.0, d)) {
            const bool wraps = std::any_of(eta.begin(), eta.end(),
                                           [&](const auto& e) { return data.k0 * e.first > pi; });
            if (wraps) {
                throw AmbiguityError(fmt::format(
                    "recover_nodes: k0 d exceeds pi (distance {} from eta), the phase of xi is "
                    "ambiguous; lower k0",
                    d));
            }
            throw DegenerateDataError(fmt::format(
                "recover_nodes: distance {} from eta disagrees with {} from xi", d, xi[m].first));
        }
        if (!(d > 0.0) || (m > 0 && !(d > nodes.distances.back()))) {
            throw DegenerateDataError("recover_nodes: distances are not positive and distinct");
        }
        nodes.xi.push_back(xi[m].second);
        nodes.eta.push_back(eta[m].second);
        nodes.distances.push_back(d);
    }
    if (options.polish) {
        const auto refined = polish_distances(data, nodes.distances);
        bool keep = true;
        for (std::size_t m = 0; m < refined.size(); ++m) {
            keep &= refined[m] > 0.0 && (m == 0 || refined[m] > refined[m - 1]) &&
                    std::fabs(refined[m] - nodes.distances[m]) <=
                        options.match_tol * std::max(1.0, nodes.distances[m]) + 1e-6;
        }
        if (keep) {
            for (std::size_t m = 0; m < refined.size(); ++m) {
                nodes.distances[m] = refined[m];
                nodes.xi[m] = std::polar(1.0, data.k0 * refined[m]);
                nodes.eta[m] = std::exp(-data.k0 * refined[m]);
            }
        }
    }
    return nodes;
}

std::vector<Complex> recover_strengths_vandermonde(const HarmonicData& data,
                                                   const std::vector<double>& distances)
{
    const std::size_t M = distances.size();
    if (M == 0) {
        return {};
    }
    const int J = data.count();
    if (static_cast<int>(2 * M) > J + 1) {
        throw ShapeError("recover_strengths_vandermonde: more unknowns than data");
    }
    for (std::size_t a = 0; a < M; ++a) {
        if (!(distances[a] > 0.0)) {
            throw DomainError("recover_strengths_vandermonde: distances must be positive");
        }
        for (std::size_t b = a + 1; b < M; ++b) {
            if (distances[a] == distances[b]) {
                throw DomainError("recover_strengths_vandermonde: distances must be distinct");
            }
        }
    }
    const auto m = static_cast<Eigen::Index>(M);
    Eigen::MatrixXcd V(J + 1, 2 * m);
    for (Eigen::Index c = 0; c < m; ++c) {
        const Complex xi = std::polar(1.0, data.k0 * distances[static_cast<std::size_t>(c)]);
        const Complex eta = std::exp(-data.k0 * distances[static_cast<std::size_t>(c)]);
        Complex px{1.0, 0.0};
        Complex pe{1.0, 0.0};
        for (int j = 0; j <= J; ++j) {
            V(j, c) = px;
            V(j, m + c) = pe;
            px *= xi;
            pe *= eta;
        }
    }
    Eigen::VectorXcd rhs(J + 1);
    rhs(0) = 0.0;
    for (int j = 1; j <= J; ++j) {
        rhs(j) = data.values[static_cast<std::size_t>(j - 1)];
    }
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(V, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    const double cond = s(0) / s(s.size() - 1);
    if (!(cond <= 1e12)) {
        throw ConditioningError(
            fmt::format("recover_strengths_vandermonde: condition number {:.3g} exceeds 1e12", cond));
    }
    const Eigen::VectorXcd t = svd.solve(rhs);
    std::vector<Complex> tau(M);
    for (std::size_t c = 0; c < M; ++c) {
        const auto i = static_cast<Eigen::Index>(c);
        tau[c] = distances[c] * 0.5 * (t(i) - t(m + i));
    }
    return tau;
}

namespace {

double min_gap(const std::vector<double>& d)
{
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < d.size(); ++i) {
        g = std::min(g, d[i] - d[i - 1]);
    }
    return g;
}

}  // namespace

FiniteFreqResult run_finite_freq_3d(const MeasurementSet& m, const FiniteFreqOptions& options,
                                    sampling::IndicatorField* field_out)
{
    const auto t0 = std::chrono::steady_clock::now();
    if (m.dimension() != Dimension::Three) {
        throw PreconditionError("finite-frequency inversion needs 3D measurements");
    }
    if (!geometry::no_four_coplanar(m.sensors)) {
        throw PreconditionError("finite-frequency inversion: four of the sensors are coplanar");
    }
    const int J = static_cast<int>(m.frequencies.size());
    if (options.M_bound < 1 || J <= 4 * options.M_bound) {
        throw ShapeError(fmt::format("finite-frequency inversion needs J > 4 M_bound (J = {}, M_bound = {})",
                                     J, options.M_bound));
    }

    FiniteFreqResult result;
    geometry::Box box;
    if (options.grid) {
        box = {options.grid->lower(), options.grid->upper()};
    }
    const double R = geometry::enclosing_radius(m.sensors, box);
    const double k0 = m.frequencies.front();
    if (k0 > pi / (2.0 * R)) {
        result.warnings.push_back(fmt::format(
            "k0 = {:.4g} exceeds pi/(2R) = {:.4g} (R = {:.4g}); distances may be ambiguous", k0,
            pi / (2.0 * R), R));
    }

    std::string first_failure;
    for (std::size_t l = 0; l < m.sensors.size(); ++l) {
        SensorNodes s;
        s.sensor = l;
        try {
            const auto data = harmonic_data(m, l);
            s.nodes = recover_nodes(data, options.M_bound, options.nodes);
            s.strengths = recover_strengths_vandermonde(data, s.nodes.distances);
        } catch (const PreconditionError&) {
            throw;
        } catch (const Error& e) {
            s.failure = e.what();
            s.nodes = {};
            s.strengths.clear();
            result.warnings.push_back(fmt::format("sensor {} dropped: {}", l, e.what()));
            if (first_failure.empty()) {
                first_failure = e.what();
            }
        }
        result.per_sensor.push_back(std::move(s));
    }
    const bool any_ok = std::any_of(result.per_sensor.begin(), result.per_sensor.end(),
                                    [](const SensorNodes& s) { return s.failure.empty(); });
    if (!any_ok) {
        throw InversionError("finite-frequency inversion failed at every sensor; first: " +
                             first_failure);
    }

    for (const auto& s : result.per_sensor) {
        result.estimated_count = std::max(result.estimated_count, s.nodes.size());
    }
    double best_gap = -1.0;
    for (const auto& s : result.per_sensor) {
        if (!s.failure.empty() || s.nodes.size() != result.estimated_count) {
            continue;
        }
        const double gap = min_gap(s.nodes.distances);
        if (gap > best_gap) {
            best_gap = gap;
            result.best_sensor = s.sensor;
        }
    }
    if (result.best_sensor) {
        result.strengths = result.per_sensor[*result.best_sensor].strengths;
    }
    for (const auto& s : result.per_sensor) {
        if (s.failure.empty() && s.nodes.size() < result.estimated_count) {
            result.warnings.push_back(fmt::format(
                "sensor {} sees {} of {} distances (cancelling terms)", s.sensor, s.nodes.size(),
                result.estimated_count));
        }
    }

    if (options.grid) {
        auto field = multi3d::evaluate_indicator_3d(m, *options.grid);
        const auto found = sampling::extract_peaks(field, options.peaks);
        ReconstructionReport report;
        report.estimated_count = found.size();
        report.positions = found.positions;
        for (const auto& z : found.positions) {
            // best-separated sensor among those with recovered nodes
            const SensorNodes* pick = nullptr;
            double pick_sep = -1.0;
            for (const auto& s : result.per_sensor) {
                if (!s.failure.empty() || s.nodes.size() == 0) {
                    continue;
                }
                const Point& x = m.sensors[s.sensor];
                double sep = std::numeric_limits<double>::infinity();
                for (const auto& other : found.positions) {
                    if (distance(other, z) > 0.0) {
                        sep = std::min(sep, std::fabs(distance(x, z) - distance(x, other)));
                    }
                }
                if (sep > pick_sep) {
                    pick_sep = sep;
                    pick = &s;
                }
            }
            if (!pick) {
                report.strengths.push_back(Complex{});
                report.warnings.push_back("no sensor with recovered nodes for a peak");
                continue;
            }
            const double r = distance(m.sensors[pick->sensor], z);
            std::size_t best = 0;
            for (std::size_t i = 1; i < pick->nodes.size(); ++i) {
                if (std::fabs(pick->nodes.distances[i] - r) <
                    std::fabs(pick->nodes.distances[best] - r)) {
                    best = i;
                }
            }
            const double mismatch = std::fabs(pick->nodes.distances[best] - r);
            if (mismatch > options.grid->spacing() * std::sqrt(3.0)) {
                report.warnings.push_back(fmt::format(
                    "peak ({:.4g}, {:.4g}, {:.4g}): nearest recovered distance at sensor {} is "
                    "{:.3g} away",
                    z.x(), z.y(), z.z(), pick->sensor, mismatch));
            }
            report.strengths.push_back(pick->strengths[best]);
        }
        report.warnings.insert(report.warnings.begin(), result.warnings.begin(),
                               result.warnings.end());
        report.runtime_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        result.located = std::move(report);
        if (field_out) {
            *field_out = std::move(field);
        }
    }
    return result;
}

void write_nodes_csv(const std::vector<SensorNodes>& nodes, std::ostream& out)
{
    out << "sensor_index,node_type,value_re,value_im,distance\n";
    for (const auto& s : nodes) {
        for (std::size_t i = 0; i < s.nodes.size(); ++i) {
            out << fmt::format("{},xi,{:.17g},{:.17g},{:.17g}\n", s.sensor, s.nodes.xi[i].real(),
                               s.nodes.xi[i].imag(), s.nodes.distances[i]);
            out << fmt::format("{},eta,{:.17g},{:.17g},{:.17g}\n", s.sensor, s.nodes.eta[i].real(),
                               s.nodes.eta[i].imag(), s.nodes.distances[i]);
        }
    }
}

}  // namespace biharm::prony
