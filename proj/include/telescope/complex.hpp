#pragma once

// Finite chain complexes of based free modules over Q, Q[pi],
// Q[pi][z, z^-1] or Q(i)[pi], with homology, cones, mapping tori,
// duals and specialization z -> lambda.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "telescope/laurent.hpp"

namespace telescope {

enum class RingTag { Rational, GroupRing, Laurent, GaussianGroupRing };

std::string to_string(RingTag tag);
RingTag ring_tag_from_string(const std::string& s);

/// Differentials are stored as Laurent matrices in every case; outside the
/// Laurent ring they are concentrated in z-degree 0. Over Q(i)[pi] the
/// imaginary parts live in `imag`.
///
/// differentials[i] is the boundary C_(d_min+i+1) -> C_(d_min+i), a
/// rank(d_min+i) x rank(d_min+i+1) matrix.
struct ChainComplex {
  RingTag ring = RingTag::Rational;
  GroupPtr group = FiniteGroup::trivial();
  int d_min = 0;
  std::vector<std::size_t> ranks;
  std::vector<LaurentMatrix> differentials;
  std::vector<LaurentMatrix> imag;

  /// Checks shapes and ring consistency (not d^2 = 0).
  static ChainComplex make(RingTag ring, GroupPtr group, int d_min, std::vector<std::size_t> ranks,
                           std::vector<LaurentMatrix> differentials, std::vector<LaurentMatrix> imag = {});

  bool empty() const { return ranks.empty(); }
  int d_max() const { return d_min + static_cast<int>(ranks.size()) - 1; }
  std::size_t rank(int j) const;
  /// Boundary out of degree j; a correctly shaped zero matrix when absent.
  LaurentMatrix boundary(int j) const;
  LaurentMatrix boundary_imag(int j) const;
};

/// Throws NotAComplex naming the degree and a nonzero entry of d o d.
const ChainComplex& validate_complex(const ChainComplex& c);

struct ChainMap {
  ChainComplex source;
  ChainComplex target;
  std::map<int, LaurentMatrix> components;

  LaurentMatrix component(int j) const;
};

/// Throws NotAChainMap naming the first degree where f d != d f.
const ChainMap& validate_chain_map(const ChainMap& f);
ChainMap identity_map(const ChainComplex& c);

struct HomologyDegree {
  int degree = 0;
  std::size_t chain_dim = 0;
  std::size_t kernel_dim = 0;
  std::size_t image_dim = 0;  // image of the incoming boundary
  std::size_t dim = 0;
  std::optional<VirtualCharacter> character;
  /// Columns: cycles whose classes form a basis of H_j (over Q or Q(i)).
  std::optional<RationalMatrix> witnesses;
};

struct HomologyReport {
  RingTag ring = RingTag::Rational;
  std::vector<HomologyDegree> degrees;

  std::size_t dim(int j) const;
  bool vanishes() const;
};

/// Dimensions are over Q (over Q(i) for Gaussian complexes). Throws
/// LaurentRing for complexes over Q[pi][z, z^-1].
HomologyReport homology(const ChainComplex& c);

/// sum_j (-1)^j dim_Q C_j (rank times |pi|).
long euler_characteristic(const ChainComplex& c);

struct EquivariantEuler {
  VirtualCharacter from_chains;
  VirtualCharacter from_homology;
  bool agree = false;
};

EquivariantEuler equivariant_euler(const ChainComplex& c);

/// cone(f)_j = D_j + C_(j-1) with boundary [[dD, (-1)^j f], [0, dC]].
ChainComplex mapping_cone(const ChainMap& f);

/// cone(I - z h) on P[z, z^-1]; T_j = P_j + P_(j-1).
ChainComplex mapping_torus(const ChainMap& h);

/// z -> z^-1 in every boundary.
ChainComplex reverse_complex(const ChainComplex& c);

/// C'_j = C_(n-j), boundary d'_j = conjugate transpose of d_(n-j+1).
ChainComplex dual_complex(const ChainComplex& c, int n);

/// z -> lambda. Rational lambda gives Q[pi] (Q for trivial pi); a lambda
/// with nonzero imaginary part gives Q(i)[pi]. Throws ZeroLambda.
ChainComplex specialize(const ChainComplex& c, const GaussianRational& lambda);

/// Upgrades a Q or Q[pi] complex (or chain map) to the Laurent ring.
ChainComplex extend_to_laurent(const ChainComplex& c);

}  // namespace telescope
