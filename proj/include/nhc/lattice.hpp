#pragma once

#include <iosfwd>
#include <vector>

#include "nhc/types.hpp"

namespace nhc {

enum class Boundary { open, periodic };

/// Geometry and hopping scale of the 2D square lattice.
/// The single-particle basis is (site x spin), dimension 2*nx*ny.
struct LatticeSpec {
  int nx = 2;
  int ny = 2;
  Boundary boundary_x = Boundary::open;
  Boundary boundary_y = Boundary::open;
  double gamma0 = 1.0;  // nearest-neighbour hopping energy, > 0

  int sites() const { return nx * ny; }
  int dimension() const { return 2 * nx * ny; }
  int site(int x, int y) const { return x + nx * y; }
  bool inside(double x, double y) const {
    return x >= 0.0 && x <= nx - 1 && y >= 0.0 && y <= ny - 1;
  }
  void validate() const;  // throws std::invalid_argument on bad geometry
};

/// Rectangular patch with asymmetric hopping along x: inside the patch a
/// rightward hop carries gamma0*e^{+g}, a leftward hop gamma0*e^{-g}.
/// g = 0 reproduces the Hermitian hopping exactly.
struct HatanoRegion {
  int x0 = 0, x1 = 0;  // inclusive site-index interval along x
  int y0 = 0, y1 = 0;  // inclusive site-index interval along y
  double g = 0.0;      // dimensionless asymmetry strength, may be negative

  bool contains(int x, int y) const {
    return x >= x0 && x <= x1 && y >= y0 && y <= y1;
  }
  bool overlaps(const HatanoRegion& o) const {
    return x0 <= o.x1 && o.x0 <= x1 && y0 <= o.y1 && o.y0 <= y1;
  }
};

enum class GainProfile { gaussian, exponential };

/// Diagonal imaginary gain z*phi(r, r0) with a localized weight profile
/// peaking at 1 on the centre. z must be purely imaginary.
struct LocalizedGain {
  double cx = 0.0, cy = 0.0;  // centre, lattice coordinates (may be fractional)
  double width = 1.0;         // localization length in lattice constants, > 0
  Complex z{0.0, 0.0};        // purely imaginary strength, energy units
  GainProfile profile = GainProfile::gaussian;

  double weight(double x, double y) const;
};

/// Sparse one-particle operator over the (site x spin) basis. The Hamiltonian
/// carries no spin-flip term, so it is stored as a single spatial block that
/// acts identically on both spin sectors. Immutable after construction and
/// safe to share across threads for matrix-vector products.
class HamiltonianOperator {
 public:
  HamiltonianOperator(LatticeSpec spec, SparseCd spatial);

  int dimension() const { return 2 * spatial_.rows(); }
  const LatticeSpec& lattice() const { return spec_; }

  /// N x N spatial block (N = nx*ny); the full operator is diag(block, block).
  const SparseCd& spatial() const { return spatial_; }

  SparseCd full() const;               // 2N x 2N block-diagonal matrix
  SparseCd hermitian_part() const;     // (H + H^dagger)/2, full dimension
  SparseCd antihermitian_part() const; // (H - H^dagger)/2, full dimension
  double hermiticity_defect() const;   // Frobenius norm of H - H^dagger

  /// Upper bound on the operator inf-norm (used to size exp-action substeps).
  double norm_bound() const { return norm_bound_; }

  /// out = spatial block applied to a single spin component.
  void apply_block(const VectorXcd& in, VectorXcd& out) const;

  /// Sparse triplet text dump "row col re im" over the full (site x spin)
  /// index space; spin-up sites occupy [0, N), spin-down [N, 2N).
  void dump_triplets(std::ostream& os) const;

 private:
  LatticeSpec spec_;
  SparseCd spatial_;
  double norm_bound_ = 0.0;
};

/// Assemble hopping plus Hatano regions plus localized gains.
/// Throws std::invalid_argument for out-of-bounds regions or gains,
/// overlapping regions with conflicting g, or gains with Re(z) != 0.
HamiltonianOperator build_hamiltonian(const LatticeSpec& spec,
                                      const std::vector<HatanoRegion>& regions,
                                      const std::vector<LocalizedGain>& gains);

}  // namespace nhc
