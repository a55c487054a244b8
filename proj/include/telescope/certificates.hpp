#pragma once

// Mapping-telescope certificates: truncated geometric inverses of I - zh,
// the plus- and minus-side contractions of the algebraic mapping torus,
// Novikov-side vanishing, and Wall's idempotent complexes.

#include <optional>
#include <string>
#include <vector>

#include "telescope/complex.hpp"

namespace telescope {

/// A complex over Q[pi][z, z^-1] generated by C0 = generating_ranks, with
/// side markers for the subcomplexes C0[z] (plus) and C0[z^-1] (minus).
struct ExtendedComplex {
  ChainComplex base;
  std::vector<std::size_t> generating_ranks;
  bool plus = false;
  bool minus = false;
};

/// True when every boundary is a polynomial in z (resp. z^-1), i.e. the
/// marked side is closed under the boundary.
bool plus_side_closed(const ChainComplex& c);
bool minus_side_closed(const ChainComplex& c);

/// Throws DimensionMismatch if a marker is set but the side is not closed.
ExtendedComplex make_extended(ChainComplex base, bool plus, bool minus);

/// Block diagonal sum of the components h_j over all degrees of the source.
GroupAlgebraMatrix total_matrix(const ChainMap& h);

struct GeometricInverse {
  int depth = 0;
  LaurentMatrix series;     // sum_{n=0}^N (zh)^n
  LaurentMatrix remainder;  // (zh)^(N+1)
  bool verified = false;    // (I - zh) series == I - remainder
  bool remainder_zero = false;
};

/// Throws DepthTooSmall for N < 0.
GeometricInverse geometric_inverse(const GroupAlgebraMatrix& h, int depth);

struct ContractionCertificate {
  std::string identity;  // "plus" or "minus"
  int depth = 0;
  int slack = 0;
  std::pair<int, int> window;
  std::pair<int, int> interior;
  std::pair<int, int> overflow_band;
  bool verified = false;
  /// Individual checks, e.g. "laurent_remainder", "window_band",
  /// "correction_three_cases", "identity_with_ell".
  std::vector<std::pair<std::string, bool>> checks;

  BigRational k;
  double h_norm = 0.0;
  std::optional<double> margin_k;  // 1/||h|| - k; absent when h = 0
  double norm_bound = 0.0;         // k ||h||
  bool series_converges = false;

  ChainComplex torus;
  /// H_j : T_j -> T_(j+1) as Laurent matrices (plus side), keyed by j.
  std::map<int, LaurentMatrix> homotopy;
  /// Window matrices in the weighted basis, keyed by chain degree j.
  std::map<int, RationalMatrix> boundary_window;   // d_j on the window
  std::map<int, RationalMatrix> homotopy_window;   // H_j (or H^-_j)
  std::map<int, RationalMatrix> ell_window;        // minus side only
};

/// Contraction of T+ = cone(I - zh on P[z]) built from the depth-N
/// series. The identity dH + Hd = I is checked exactly both as Laurent
/// matrices (defect = -(zh)^(N+1) on the diagonal) and on the truncated
/// window [0, N+1], where rows of degree <= N - slack must vanish.
ContractionCertificate plus_contraction(const ChainMap& h, const Weight& k, int depth);

/// H^- = q^- H i^- on the window [-N, 0] of T^-, with the correction
/// dq^- - q^-d assembled both from the three-case analysis and directly
/// from the window matrices. Checks dH^- + H^-d = I - ell exactly.
ContractionCertificate minus_contraction(const ChainMap& h, const Weight& k, int depth);

enum class NovikovSide { Z, ZInverse };

struct NovikovCertificate {
  NovikovSide side = NovikovSide::Z;
  int depth = 0;
  int remainder_exponent = 0;  // N+1 on the z side, -(N+1) on the z^-1 side
  LaurentMatrix series;
  LaurentMatrix remainder;
  bool verified = false;
  bool remainder_zero = false;
  std::optional<bool> factorization_verified;  // z^-1 side only
};

/// Certificate that I - zh is invertible over the Novikov completion on
/// the chosen side. On the z^-1 side the inverse of h must be supplied
/// (MissingInverse otherwise).
NovikovCertificate novikov_vanishing(const ChainMap& h, NovikovSide side, int depth,
                                     const std::optional<ChainMap>& h_inverse = std::nullopt);

struct WallComplex {
  ExtendedComplex extended;
  GroupRingElement p;
  BigRational ell;
  bool transpose = false;
};

/// Two-term complex C_1 -> C_0 of rank one with boundary ell(I - zp), or
/// ell(I - z^-1 p-bar) for the transpose. ell defaults to the lcm of the
/// denominators of p. Throws NotIdempotent or BadScale.
WallComplex wall_complex(const GroupRingElement& p, std::optional<BigRational> ell = std::nullopt);
WallComplex wall_complex_transpose(const GroupRingElement& p, std::optional<BigRational> ell = std::nullopt);

struct WallEulerReport {
  VirtualCharacter character;
  VirtualCharacter character_next;  // same computation at depth N+1
  std::optional<VirtualCharacter> image_of_p;  // plus side only
  bool injective = false;
  bool stable = false;
  bool matches_image_of_p = false;
  bool reduced_zero = false;
  int depth = 0;
};

/// Truncates the boundary to z-degrees [0,N] -> [0,N+1] and returns the
/// character of the stable cokernel (V_N + im) / im, V_N the codomain
/// degrees [0,N]. Throws TruncationUnstable if depths N and N+1 disagree.
WallEulerReport wall_euler_class(const WallComplex& w, int depth);

struct TransposeInverse {
  int depth = 0;
  LaurentMatrix inverse;     // ell^-1 (I + p-bar sum_{n=1}^N z^-n)
  LaurentMatrix remainder;   // p-bar z^-(N+1)
  bool exact_identity = false;   // d r = I - remainder
  bool window_identity = false;  // truncations on [0,N] are inverse both ways
};

TransposeInverse transpose_inverse(const WallComplex& transpose, int depth);

}  // namespace telescope
