#pragma once

#include <iosfwd>

#include "nhc/lattice.hpp"
#include "nhc/types.hpp"

namespace nhc {

/// Gaussian wavepacket parameters. Positions and momenta are in lattice
/// coordinates; k is in radians per lattice constant.
struct PacketSpec {
  double x = 0.0, y = 0.0;    // centre r0 (may be fractional)
  double kx = 0.0, ky = 0.0;  // central wavevector k0
  double sigma_r = 1.0;       // positional spread, >= 1 lattice constant
};

/// Complex scalar field over all sites, unit-normalized on the grid.
/// boundary_warning is set when the packet tail at the nearest boundary
/// exceeds 1e-6 of the peak amplitude.
struct PacketField {
  VectorXcd amp;
  bool boundary_warning = false;
};

/// amp(r) ~ exp(-|r-r0|^2/(4 sigma^2)) * exp(+i k0.(r-r0)), grid-normalized.
PacketField gaussian_packet(const PacketSpec& spec, const LatticeSpec& lattice);

/// Two-component spinor state over the lattice; the evolving object.
struct SpinorField {
  VectorXcd up;
  VectorXcd down;

  int sites() const { return static_cast<int>(up.size()); }
  bool boundary_warning = false;
};

double norm(const SpinorField& s);
SpinorField normalize(const SpinorField& s);  // throws on zero norm
Complex overlap(const SpinorField& a, const SpinorField& b);

/// (w_up * psi_up (x) |up> + w_down * psi_down (x) |down>), unit norm.
/// Default weights give the equal superposition of the two branches.
SpinorField entangled_initial_state(const PacketSpec& up_packet,
                                    const PacketSpec& down_packet,
                                    const LatticeSpec& lattice,
                                    double weight_up = 1.0,
                                    double weight_down = 1.0);

/// Reflect both components about the lattice midline y -> ny-1-y.
SpinorField mirror_y(const SpinorField& s, const LatticeSpec& lattice);
SpinorField swap_spin(const SpinorField& s);

/// CSV rows (site_x, site_y, re_up, im_up, re_down, im_down).
void dump_state_csv(const SpinorField& s, const LatticeSpec& lattice,
                    std::ostream& os);

}  // namespace nhc
