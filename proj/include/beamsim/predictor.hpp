#pragma once

#include "beamsim/mobility.hpp"
#include "beamsim/quadrature.hpp"
#include "beamsim/types.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace beamsim {

// A remembered in-neighbor and where it was when the link was observed.
struct NeighborRecord {
  NodeId neighbor_id = -1;
  Position last_position = Position::Zero();
};

// Everything a node knows when predicting: its own post-jump position and
// jump, plus the last known positions of its previous neighbors. Neighbors'
// new positions are not part of the input.
struct PredictionInput {
  Position own_new_position = Position::Zero();
  double own_jump = 0.0;
  std::span<const NeighborRecord> records;
  double r = 30.0;
};

class DegenerateGeometry : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Half-angle of the arc of directions a neighbor can take, after a jump of
// length a, to land within r of a point at distance l from its start.
double connection_angle(double a, double l, double r);

// theta / pi.
double connection_prob_given_jump(double a, double l, double r);

// Probability that a neighbor last seen at distance l is still within r
// after its next jump, marginalized over the jump law.
double connection_prob(double l, double r, const JumpLaw& law,
                       const QuadratureConfig& q = {});

// Mean connection probability over the records; 0 with no records.
double predict_node_stability(const PredictionInput& input, const JumpLaw& law,
                              const QuadratureConfig& q = {});

}  // namespace beamsim
