#include "beamsim/antenna.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace beamsim {
namespace {

constexpr double kSpeedOfLight = 299792458.0;

// Mean over phi of |AF|^2 / m^2 for relative phase kd*(cos(phi) - cos(steer)).
// Each element pair at separation s contributes J0(kd*s) cos(kd*s*cos(steer)).
double mean_power_uncached(int m, double steer, double kd) {
  double sum = m;
  for (int s = 1; s < m; ++s)
    sum += 2.0 * (m - s) * std::cyl_bessel_j(0.0, kd * s) *
           std::cos(kd * s * std::cos(steer));
  return sum / (static_cast<double>(m) * m);
}

double mean_power(int m, double steer, double kd) {
  struct Entry {
    int m = 0;
    double steer = 0.0, kd = 0.0, value = 0.0;
  };
  thread_local Entry last;
  if (last.m != m || last.steer != steer || last.kd != kd)
    last = {m, steer, kd, mean_power_uncached(m, steer, kd)};
  return last.value;
}

double array_power(double psi, int m) {
  const double half = 0.5 * psi;
  const double den = std::sin(half);
  if (std::abs(den) < 1e-12) return 1.0;
  const double ratio = std::sin(m * half) / (m * den);
  return ratio * ratio;
}

}  // namespace

double AntennaConfig::wavelength() const { return kSpeedOfLight / frequency; }

double AntennaConfig::effective_spacing() const {
  return element_spacing > 0.0 ? element_spacing : 0.5 * wavelength();
}

double AntennaConfig::electrical_spacing() const {
  return kTwoPi * effective_spacing() / wavelength();
}

void AntennaConfig::validate() const {
  if (M < 2) throw std::invalid_argument("antenna: M must be >= 2");
  if (!(frequency > 0.0)) throw std::invalid_argument("antenna: frequency must be > 0");
  if (!(path_loss_exponent > 0.0))
    throw std::invalid_argument("antenna: path_loss_exponent must be > 0");
}

Beam Beam::omni(const Position& origin, double r) {
  return Beam{BeamKind::Omni, origin, 0.0, 1, r, kTwoPi};
}

Beam Beam::sector(const Position& origin, double boresight, int m, double r) {
  const auto geo = sector_geometry(m, r);
  return Beam{BeamKind::Sector, origin, wrap_angle(boresight), m, r, geo.width};
}

Beam Beam::ula(const Position& origin, double boresight, int m, double r) {
  if (m < 2) throw std::invalid_argument("ula beam needs m >= 2");
  return Beam{BeamKind::Ula, origin, wrap_angle(boresight), m, r,
              sector_geometry(m, r).width};
}

Beam make_beam(BeamKind kind, const Position& origin, double boresight, int m,
               double r) {
  if (kind == BeamKind::Omni || m == 1) return Beam::omni(origin, r);
  return kind == BeamKind::Sector ? Beam::sector(origin, boresight, m, r)
                                  : Beam::ula(origin, boresight, m, r);
}

SectorGeometry sector_geometry(int m, double r) {
  if (m < 2) throw std::invalid_argument("sector_geometry: m must be >= 2");
  if (!(r > 0.0)) throw std::invalid_argument("sector_geometry: r must be > 0");
  const double length = m * r;
  return {length, kTwoPi * r * r / (length * length)};
}

int sector_count(int m) {
  if (m < 2) throw std::invalid_argument("sector_count: m must be >= 2");
  return m * m;
}

double ula_steered_gain(double phi, int m, double steer, double kd) {
  if (m < 1) throw std::invalid_argument("ula gain: m must be >= 1");
  if (m == 1) return 1.0;
  const double psi = kd * (std::cos(phi) - std::cos(steer));
  return array_power(psi, m) / mean_power(m, steer, kd);
}

double ula_gain(double offset, int m, double kd) {
  // Axis perpendicular to boresight: angle from the axis is offset + pi/2.
  return ula_steered_gain(offset + 0.5 * kPi, m, 0.5 * kPi, kd);
}

double ula_peak_gain(int m, double kd) { return ula_gain(0.0, m, kd); }

double reach(const Beam& beam, double phi, const AntennaConfig& cfg) {
  switch (beam.kind) {
    case BeamKind::Omni:
      return beam.base_radius;
    case BeamKind::Sector: {
      const double offset = std::abs(angle_offset(phi, beam.boresight));
      return offset <= 0.5 * beam.width + 1e-12 ? beam.m * beam.base_radius : 0.0;
    }
    case BeamKind::Ula: {
      const double g =
          ula_gain(angle_offset(phi, beam.boresight), beam.m, cfg.electrical_spacing());
      return beam.base_radius * std::pow(g, 1.0 / cfg.path_loss_exponent);
    }
  }
  return 0.0;
}

bool covers(const Beam& beam, const Position& target, const AntennaConfig& cfg) {
  const double d = (target - beam.origin).norm();
  if (d == 0.0) return true;
  if (beam.kind == BeamKind::Omni) return d <= beam.base_radius;
  return d <= reach(beam, bearing(beam.origin, target), cfg);
}

void write_gain_table(std::ostream& os, const Beam& beam,
                      const AntennaConfig& cfg, int points) {
  os << "phi,gain,reach\n";
  const auto old_precision = os.precision(10);
  for (int i = 0; i < points; ++i) {
    const double phi = kTwoPi * i / points;
    const double offset = angle_offset(phi, beam.boresight);
    double g = 1.0;
    if (beam.kind == BeamKind::Ula) g = ula_gain(offset, beam.m, cfg.electrical_spacing());
    if (beam.kind == BeamKind::Sector)
      g = std::abs(offset) <= 0.5 * beam.width + 1e-12 ? beam.m * beam.m : 0.0;
    os << phi << ',' << g << ',' << reach(beam, phi, cfg) << '\n';
  }
  os.precision(old_precision);
}

}  // namespace beamsim
