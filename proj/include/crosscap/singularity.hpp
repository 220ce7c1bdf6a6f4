#pragma once
#include <optional>
#include <string>
#include <vector>

#include "crosscap/metric.hpp"

namespace crosscap {

enum class Classification { Regular, IntrinsicCrossCap, DegenerateSingular };

std::string to_string(Classification c);

// Everything classify() knows about one point: the degeneracy data of
// lambda = EG - F^2, the null space of the metric, the admissibility of the
// pseudo-connection, and the intrinsic invariants Delta, alpha, alpha02
// (the latter evaluated in an adjusted chart).
struct SingularityReport {
    Vec2 p;
    double lambda_value = 0.0;
    double grad_lambda[2] = {0.0, 0.0};
    double hessian[3] = {0.0, 0.0, 0.0}; // uu, uv, vv
    double H_lambda = 0.0;
    Vec2 null_dir;
    int null_dim = 0;
    double admissibility_residual = 0.0;
    double Delta = 0.0;
    double alpha = 0.0;
    std::optional<double> alpha02;
    Classification classification = Classification::Regular;
    // |H_lambda - 4 E(0,0) Delta(0,0)| / (1 + |H_lambda|) in the adjusted chart.
    double relation_residual = 0.0;
};

// Degree-2 coefficients of a West-type chart, with the residual of the full
// overdetermined coefficient match.
struct WestCoefficients {
    double alpha02 = 0.0;
    double alpha11 = 0.0;
    double alpha20 = 0.0;
    double fit_residual = 0.0;
};

struct SingularityOptions {
    int grid_n = 21;
    int max_iterations = 50;
    double gradient_tol = 1e-12;
    double merge_radius = 1e-6;
};

// Multi-start Newton on grad(lambda) = 0 over the chart box; converged
// critical points are kept iff lambda is at its singular tolerance there.
// Output is deduplicated and sorted lexicographically.
std::vector<Vec2> find_singular_points(const MetricField& m,
                                       const SingularityOptions& opts = {});

// Scale-aware threshold below which lambda counts as zero on this chart.
double singular_lambda_tol(const MetricField& m, int grid_n = 21);

struct NullSpace {
    int dim = 0;
    Vec2 dir;  // unit eigenvector of the smallest eigenvalue when dim == 1
    double eigen_small = 0.0;
    double eigen_large = 0.0;
};

NullSpace null_space(const MetricField& m, Vec2 p);

// Max over i,j of |Gamma(d_i, d_j, Z)| with Z the unit null direction; the
// Koszul brackets vanish for coordinate fields.
double admissibility_residual(const MetricField& m, Vec2 p);

struct AdjustedChart {
    AffineMap2 map;      // old = p + A * new, A rotates e2 onto the null direction
    MetricField metric;  // the metric in the adjusted chart
};

AdjustedChart adjusted_chart(const MetricField& m, Vec2 p);

SingularityReport classify(const MetricField& m, Vec2 p,
                           const SingularityOptions& opts = {});

// Reads (alpha02, alpha11, alpha20) off the degree-2 Taylor coefficients of
// E, F, G at the origin of an adjusted chart; throws NotWestChartError when
// the full coefficient system does not fit.
WestCoefficients west_extract(const MetricField& adjusted_metric, double tolerance = 1e-8);

} // namespace crosscap
