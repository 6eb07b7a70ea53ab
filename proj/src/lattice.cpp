#include "nhc/lattice.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nhc {

void LatticeSpec::validate() const {
  if (nx < 2 || ny < 1 || sites() < 4)
    throw std::invalid_argument("lattice: need nx >= 2, ny >= 1 and nx*ny >= 4");
  if (!(gamma0 > 0.0))
    throw std::invalid_argument("lattice: gamma0 must be positive");
  // a periodic axis with fewer than 3 sites would duplicate a bond
  if (boundary_x == Boundary::periodic && nx < 3)
    throw std::invalid_argument("lattice: periodic x axis needs nx >= 3");
  if (boundary_y == Boundary::periodic && ny > 1 && ny < 3)
    throw std::invalid_argument("lattice: periodic y axis needs ny >= 3");
}

double LocalizedGain::weight(double x, double y) const {
  const double dx = x - cx;
  const double dy = y - cy;
  const double r2 = dx * dx + dy * dy;
  if (profile == GainProfile::gaussian)
    return std::exp(-r2 / (2.0 * width * width));
  return std::exp(-std::sqrt(r2) / width);
}

HamiltonianOperator::HamiltonianOperator(LatticeSpec spec, SparseCd spatial)
    : spec_(spec), spatial_(std::move(spatial)) {
  // inf-norm of the spatial block; identical for the full operator.
  std::vector<double> row_sum(spatial_.rows(), 0.0);
  for (int r = 0; r < spatial_.outerSize(); ++r)
    for (SparseCd::InnerIterator it(spatial_, r); it; ++it)
      row_sum[r] += std::abs(it.value());
  for (double s : row_sum) norm_bound_ = std::max(norm_bound_, s);
}

SparseCd HamiltonianOperator::full() const {
  const int n = spatial_.rows();
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(2 * spatial_.nonZeros());
  for (int r = 0; r < spatial_.outerSize(); ++r)
    for (SparseCd::InnerIterator it(spatial_, r); it; ++it) {
      trips.emplace_back(r, it.col(), it.value());
      trips.emplace_back(r + n, it.col() + n, it.value());
    }
  SparseCd out(2 * n, 2 * n);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SparseCd HamiltonianOperator::hermitian_part() const {
  SparseCd h = full();
  SparseCd ht = SparseCd(h.adjoint());
  return ((h + ht) * Complex(0.5, 0.0)).pruned();
}

SparseCd HamiltonianOperator::antihermitian_part() const {
  SparseCd h = full();
  SparseCd ht = SparseCd(h.adjoint());
  return ((h - ht) * Complex(0.5, 0.0)).pruned();
}

double HamiltonianOperator::hermiticity_defect() const {
  SparseCd d = spatial_ - SparseCd(spatial_.adjoint());
  double sq = 0.0;
  for (int r = 0; r < d.outerSize(); ++r)
    for (SparseCd::InnerIterator it(d, r); it; ++it) sq += std::norm(it.value());
  return std::sqrt(2.0 * sq);  // two identical spin blocks
}

void HamiltonianOperator::apply_block(const VectorXcd& in, VectorXcd& out) const {
  out.noalias() = spatial_ * in;
}

void HamiltonianOperator::dump_triplets(std::ostream& os) const {
  const int n = spatial_.rows();
  char buf[128];
  for (int block = 0; block < 2; ++block) {
    const int off = block * n;
    for (int r = 0; r < spatial_.outerSize(); ++r)
      for (SparseCd::InnerIterator it(spatial_, r); it; ++it) {
        std::snprintf(buf, sizeof(buf), "%d %d %.17g %.17g\n", r + off,
                      static_cast<int>(it.col()) + off, it.value().real(),
                      it.value().imag());
        os << buf;
      }
  }
}

namespace {

// The asymmetric bond weights of a region containing both endpoints of an
// x bond, or g = 0 when no region applies. Conflicting overlaps are rejected
// up front, so the first match wins.
double bond_asymmetry(const std::vector<HatanoRegion>& regions, int x, int xr,
                      int y) {
  for (const auto& reg : regions)
    if (reg.contains(x, y) && reg.contains(xr, y)) return reg.g;
  return 0.0;
}

}  // namespace

HamiltonianOperator build_hamiltonian(const LatticeSpec& spec,
                                      const std::vector<HatanoRegion>& regions,
                                      const std::vector<LocalizedGain>& gains) {
  spec.validate();

  for (const auto& reg : regions) {
    if (reg.x0 > reg.x1 || reg.y0 > reg.y1 || reg.x0 < 0 || reg.x1 >= spec.nx ||
        reg.y0 < 0 || reg.y1 >= spec.ny)
      throw std::invalid_argument("hatano region out of lattice bounds");
  }
  for (size_t i = 0; i < regions.size(); ++i)
    for (size_t j = i + 1; j < regions.size(); ++j)
      if (regions[i].overlaps(regions[j]) && regions[i].g != regions[j].g)
        throw std::invalid_argument("overlapping hatano regions with conflicting g");

  for (const auto& gain : gains) {
    if (!spec.inside(gain.cx, gain.cy))
      throw std::invalid_argument("localized gain centre outside lattice");
    if (!(gain.width > 0.0))
      throw std::invalid_argument("localized gain width must be positive");
    if (gain.z.real() != 0.0)
      throw std::invalid_argument("localized gain z must be purely imaginary");
  }

  // Hopping sign convention: matrix element -gamma0, so that a packet with
  // phase e^{+i k.r} drifts with group velocity +2*gamma0*sin(k) per axis.
  const double t = -spec.gamma0;
  const int n = spec.sites();
  std::vector<Eigen::Triplet<Complex>> trips;
  trips.reserve(static_cast<size_t>(5) * n);

  for (int y = 0; y < spec.ny; ++y) {
    for (int x = 0; x < spec.nx; ++x) {
      // x bonds, rightward neighbour (wraps when periodic)
      const bool xwrap = (x == spec.nx - 1);
      if (!xwrap || spec.boundary_x == Boundary::periodic) {
        const int xr = xwrap ? 0 : x + 1;
        const double g = bond_asymmetry(regions, x, xr, y);
        const int a = spec.site(x, y), b = spec.site(xr, y);
        // b <- a is the rightward hop, carries e^{+g}
        trips.emplace_back(b, a, Complex(t * std::exp(+g), 0.0));
        trips.emplace_back(a, b, Complex(t * std::exp(-g), 0.0));
      }
      // y bonds, always reciprocal
      const bool ywrap = (y == spec.ny - 1);
      if (spec.ny > 1 && (!ywrap || spec.boundary_y == Boundary::periodic)) {
        const int yu = ywrap ? 0 : y + 1;
        const int a = spec.site(x, y), b = spec.site(x, yu);
        trips.emplace_back(b, a, Complex(t, 0.0));
        trips.emplace_back(a, b, Complex(t, 0.0));
      }
    }
  }

  for (const auto& gain : gains)
    for (int y = 0; y < spec.ny; ++y)
      for (int x = 0; x < spec.nx; ++x)
        trips.emplace_back(spec.site(x, y), spec.site(x, y),
                           gain.z * gain.weight(x, y));

  SparseCd spatial(n, n);
  spatial.setFromTriplets(trips.begin(), trips.end());
  spatial.makeCompressed();
  return HamiltonianOperator(spec, std::move(spatial));
}

}  // namespace nhc
