#include "nhc/state.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace nhc {

PacketField gaussian_packet(const PacketSpec& spec, const LatticeSpec& lattice) {
  lattice.validate();
  if (!lattice.inside(spec.x, spec.y))
    throw std::invalid_argument("packet centre outside lattice");
  if (spec.sigma_r < 1.0)
    throw std::invalid_argument("packet sigma_r must be >= 1 lattice constant");

  const double s4 = 4.0 * spec.sigma_r * spec.sigma_r;
  PacketField out;
  out.amp.resize(lattice.sites());
  for (int y = 0; y < lattice.ny; ++y) {
    for (int x = 0; x < lattice.nx; ++x) {
      const double dx = x - spec.x;
      const double dy = y - spec.y;
      const double env = std::exp(-(dx * dx + dy * dy) / s4);
      // phase referenced to the packet centre; a mirrored packet pair then
      // maps onto itself without a relative phase
      const double ph = spec.kx * dx + spec.ky * dy;
      out.amp[lattice.site(x, y)] = env * Complex(std::cos(ph), std::sin(ph));
    }
  }
  out.amp /= out.amp.norm();

  // tail diagnostic: envelope amplitude at the nearest boundary vs peak
  double edge = std::min(std::min(spec.x, lattice.nx - 1 - spec.x),
                         std::min(spec.y, lattice.ny - 1 - spec.y));
  if (lattice.ny == 1) edge = std::min(spec.x, lattice.nx - 1 - spec.x);
  out.boundary_warning = std::exp(-edge * edge / s4) > 1e-6;
  return out;
}

double norm(const SpinorField& s) {
  return std::sqrt(s.up.squaredNorm() + s.down.squaredNorm());
}

SpinorField normalize(const SpinorField& s) {
  const double n = norm(s);
  if (!(n > 0.0))
    throw std::runtime_error("cannot normalize a zero-norm state");
  SpinorField out = s;
  out.up /= n;
  out.down /= n;
  return out;
}

Complex overlap(const SpinorField& a, const SpinorField& b) {
  return a.up.dot(b.up) + a.down.dot(b.down);
}

SpinorField entangled_initial_state(const PacketSpec& up_packet,
                                    const PacketSpec& down_packet,
                                    const LatticeSpec& lattice,
                                    double weight_up, double weight_down) {
  if (weight_up < 0.0 || weight_down < 0.0 || weight_up + weight_down <= 0.0)
    throw std::invalid_argument("packet weights must be nonnegative, not both zero");

  const double wn = std::sqrt(weight_up * weight_up + weight_down * weight_down);
  SpinorField out;
  if (weight_up > 0.0) {
    PacketField p = gaussian_packet(up_packet, lattice);
    out.up = (weight_up / wn) * p.amp;
    out.boundary_warning = out.boundary_warning || p.boundary_warning;
  } else {
    out.up = VectorXcd::Zero(lattice.sites());
  }
  if (weight_down > 0.0) {
    PacketField p = gaussian_packet(down_packet, lattice);
    out.down = (weight_down / wn) * p.amp;
    out.boundary_warning = out.boundary_warning || p.boundary_warning;
  } else {
    out.down = VectorXcd::Zero(lattice.sites());
  }
  return out;
}

SpinorField mirror_y(const SpinorField& s, const LatticeSpec& lattice) {
  SpinorField out;
  out.up.resize(s.up.size());
  out.down.resize(s.down.size());
  out.boundary_warning = s.boundary_warning;
  for (int y = 0; y < lattice.ny; ++y) {
    const int ym = lattice.ny - 1 - y;
    for (int x = 0; x < lattice.nx; ++x) {
      out.up[lattice.site(x, y)] = s.up[lattice.site(x, ym)];
      out.down[lattice.site(x, y)] = s.down[lattice.site(x, ym)];
    }
  }
  return out;
}

SpinorField swap_spin(const SpinorField& s) {
  SpinorField out;
  out.up = s.down;
  out.down = s.up;
  out.boundary_warning = s.boundary_warning;
  return out;
}

void dump_state_csv(const SpinorField& s, const LatticeSpec& lattice,
                    std::ostream& os) {
  os << "site_x,site_y,re_up,im_up,re_down,im_down\n";
  char buf[192];
  for (int y = 0; y < lattice.ny; ++y)
    for (int x = 0; x < lattice.nx; ++x) {
      const int i = lattice.site(x, y);
      std::snprintf(buf, sizeof(buf), "%d,%d,%.17g,%.17g,%.17g,%.17g\n", x, y,
                    s.up[i].real(), s.up[i].imag(), s.down[i].real(),
                    s.down[i].imag());
      os << buf;
    }
}

}  // namespace nhc
