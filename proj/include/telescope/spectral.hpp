#pragma once

// Double-precision experiments on weighted truncations: operator norms,
// the Fredholm threshold 1/||h||, sigma_min scans of I - zh, lambda-circle
// homology scans, and the finite-window index experiment.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "telescope/certificates.hpp"

namespace telescope {

struct NumericalRankPolicy {
  double relative_tolerance = 1e-9;
  int min_depth = 1;
};

/// Largest singular value of regular_representation(h).
double operator_norm(const GroupAlgebraMatrix& h);

struct FredholmThreshold {
  double norm = 0.0;
  double threshold = 0.0;  // k* = 1/||h||
  std::pair<double, double> certified;  // (0, k*)
};

/// Throws ZeroMap for h = 0.
FredholmThreshold fredholm_threshold(const GroupAlgebraMatrix& h);

/// I - zh as a Laurent matrix.
LaurentMatrix one_minus_zh(const GroupAlgebraMatrix& h);

/// k values spaced geometrically over [lo, hi].
std::vector<double> geometric_grid(double lo, double hi, std::size_t count);

struct SigmaScanPoint {
  double k = 0.0;
  std::vector<double> sigma_min;  // one per depth
  double relative_change = 0.0;   // between the two largest depths
  bool stable = true;
};

struct SigmaScanReport {
  std::vector<int> depths;  // sorted
  double stability_tolerance = 0.05;
  std::vector<SigmaScanPoint> points;  // sorted by k
};

/// sigma_min of the weighted truncation of M on the domain window [-N, N].
/// The codomain window keeps every degree M can reach from there, so the
/// section is the restriction of the bi-infinite operator.
SigmaScanReport sigma_min_scan(const LaurentMatrix& m, std::vector<double> k_grid, std::vector<int> depths,
                               double stability_tolerance = 0.05);

struct LambdaSample {
  std::complex<double> lambda;
  std::vector<std::size_t> homology_dims;  // per degree of the cone
  bool vanishes = true;
  double distance_to_singular = 0.0;       // to the nearest root of det(I - lambda h), if known
};

struct SingularRadius {
  double radius = 0.0;
  std::optional<BigRational> exact;  // set when the eigenvalue is rational
};

struct LambdaScanReport {
  double radius = 0.0;
  std::size_t samples = 0;
  double relative_tolerance = 1e-9;
  int d_min = 0;
  std::vector<LambdaSample> points;
  /// Present when P sits in a single degree.
  std::optional<std::vector<SingularRadius>> singular_radii;
  std::vector<BigRational> characteristic_polynomial;  // det(xI - R(h)), constant term first
  std::vector<std::complex<double>> singular_lambdas;  // 1/mu for eigenvalues mu != 0
};

/// Coefficients of det(xI - a), constant term first (Faddeev-LeVerrier).
std::vector<BigRational> characteristic_polynomial(const RationalMatrix& a);

LambdaScanReport lambda_circle_scan(const ChainMap& h, double radius, std::size_t samples,
                                    const NumericalRankPolicy& policy = {});

/// Numerical homology dimensions of specialize(torus, lambda).
std::vector<std::size_t> numerical_homology(const ChainComplex& laurent, std::complex<double> lambda,
                                            const NumericalRankPolicy& policy = {});

// ---------------------------------------------------------------- index window

/// A Laurent complex whose basis summands are either windowed in z
/// (telescope parts) or concentrated in z-degree 0 (compact parts).
struct WindowedModel {
  struct Summand {
    std::size_t rank = 0;
    bool point = false;
  };
  std::string name;
  ChainComplex complex;
  std::map<int, std::vector<Summand>> summands;
  bool two_sided = false;
  int dimension = 1;  // n in the duality law
  long chi = 0;
  long chi_lf = 0;
};

/// Gluing of a compact complex F into T+ of mapping_torus(h) along f,
/// realized as the mapping cylinder cone(F -> T + F, x -> (f x, -x)).
/// With F empty the model is the two-sided telescope T itself.
WindowedModel glued_model(const ChainComplex& f_complex, const ChainMap& h, const std::map<int, LaurentMatrix>& f);

/// F = Q in degree 0, P = Q in degree 0, h = 1, glued at z^0.
WindowedModel ray_model();

/// dual_complex of the model (which also interchanges z and z^-1).
WindowedModel dual_model(const WindowedModel& m, int n);

struct IndexDepth {
  int depth = 0;
  std::size_t rows = 0, cols = 0;
  std::size_t kernel = 0, cokernel = 0;
  std::size_t interior_kernel = 0, interior_cokernel = 0;
  long index = 0;
  std::vector<int> overflow;
};

struct IndexPoint {
  double k = 0.0;
  std::string regime;  // "small", "large" or "threshold"
  std::vector<IndexDepth> depths;
  bool stable = false;
  std::optional<long> stabilized_index;
  std::optional<long> expected;
  std::optional<bool> matches;  // only for stable runs with an expectation
};

struct IndexReport {
  std::string model;
  long chi = 0;
  long chi_lf = 0;
  double threshold = 0.0;
  double relative_tolerance = 1e-9;
  bool exploratory = true;
  std::vector<IndexPoint> points;
};

/// D = d + d* from even to odd degrees on the window [0, N] (or [-N, N]
/// for a two-sided model), free boundary. Null vectors whose mass-weighted
/// mean |z-degree| is at least N/2 are attributed to the window boundary
/// and excluded from the reported index.
IndexDepth index_at(const WindowedModel& m, double k, int depth, const NumericalRankPolicy& policy = {});

IndexReport index_window_experiment(const WindowedModel& m, double threshold, std::vector<double> k_grid,
                                    std::vector<int> depths, const NumericalRankPolicy& policy = {});

}  // namespace telescope
