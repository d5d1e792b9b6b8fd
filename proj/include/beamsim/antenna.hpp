#pragma once

#include "beamsim/types.hpp"

#include <iosfwd>
#include <utility>

namespace beamsim {

struct AntennaConfig {
  int M = 6;
  double frequency = 2.4e9;
  // Non-positive means half a wavelength at `frequency`.
  double element_spacing = 0.0;
  double path_loss_exponent = 2.0;

  double wavelength() const;
  double effective_spacing() const;
  // Electrical spacing k*d in radians.
  double electrical_spacing() const;
  void validate() const;
};

enum class BeamKind { Omni, Sector, Ula };

struct Beam {
  BeamKind kind = BeamKind::Omni;
  Position origin = Position::Zero();
  double boresight = 0.0;
  int m = 1;
  double base_radius = 30.0;
  // Angular width of a sector beam; 2pi for omni.
  double width = kTwoPi;

  static Beam omni(const Position& origin, double r);
  static Beam sector(const Position& origin, double boresight, int m, double r);
  static Beam ula(const Position& origin, double boresight, int m, double r);
};

struct SectorGeometry {
  double length;  // meters
  double width;   // radians
};

// Beam length m*r and width 2 pi r^2 / length^2.
SectorGeometry sector_geometry(int m, double r);

// Number of sectors a sweep visits: ceil(2 pi / width) = m^2.
int sector_count(int m);

// Planar gain of an m-element uniform linear array, normalized so its
// circular mean is 1. `phi` is measured from the array axis and the array is
// phase-steered toward `steer` (also from the axis). `kd` is the electrical
// element spacing; pi is half a wavelength.
double ula_steered_gain(double phi, int m, double steer, double kd = kPi);

// Broadside pattern as a function of the offset from boresight. This is the
// shape used for simulated beams: the array axis is laid perpendicular to
// the boresight, so the pattern does not depend on the pointing direction.
double ula_gain(double offset, int m, double kd = kPi);

// Largest gain of ula_gain(., m), reached at boresight.
double ula_peak_gain(int m, double kd = kPi);

// Distance the beam reaches in absolute direction phi.
double reach(const Beam& beam, double phi, const AntennaConfig& cfg);

bool covers(const Beam& beam, const Position& target, const AntennaConfig& cfg);

// Beam of the requested kind for m elements (m = 1 gives omni).
Beam make_beam(BeamKind kind, const Position& origin, double boresight, int m,
               double r);

// Writes `phi,gain,reach` rows over [0, 2pi) for plotting.
void write_gain_table(std::ostream& os, const Beam& beam,
                      const AntennaConfig& cfg, int points);

}  // namespace beamsim
