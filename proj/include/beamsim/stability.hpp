#pragma once

#include "beamsim/types.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace beamsim {

// A timestamped graph over nodes 0..n-1. adjacency(i, j) = 1 means a link
// from i to j. Omni links are symmetric; beam links may not be.
struct Snapshot {
  int t = 0;
  Eigen::MatrixXd adjacency;
  Positions positions;

  Eigen::Index size() const { return adjacency.rows(); }
};

// Unit-disk snapshot: symmetric links between nodes at most r apart.
Snapshot disk_snapshot(const Positions& positions, double r, int t = 0);

// Sum over nodes of common neighbors, divided by |V|^2.
double cosine_similarity(const Snapshot& g1, const Snapshot& g2);

// Adjacency-spectrum distance. Directed inputs are symmetrized first.
double spectral_distance(const Snapshot& g1, const Snapshot& g2);

// Fraction of ordered pairs whose link state is unchanged.
double hanneke_stability(const Snapshot& g1, const Snapshot& g2);

// Mean per-node temporal correlation over a snapshot sequence.
double tang_stability(const std::vector<Snapshot>& snapshots);

// |top-nu(g1) ∩ top-nu(g2)| / |V| by out-degree rank; ties go to the lower id.
double rank_overlap(const Snapshot& g1, const Snapshot& g2, int nu);

// The nu highest-degree nodes of g.
std::vector<NodeId> top_degree_nodes(const Snapshot& g, int nu);

// --- link entropy -----------------------------------------------------------

class InsufficientHistory : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct LinkHistory {
  std::vector<std::uint8_t> bits;

  // Parses a string of '0'/'1' characters.
  static LinkHistory parse(std::string_view text);
  std::string str() const;
  std::size_t length() const { return bits.size(); }
};

// Left-to-right parse into shortest words not seen before; a trailing
// incomplete word counts once.
int lz_word_count(const LinkHistory& h);

// n ln(n) / T. Throws InsufficientHistory for T < 3.
double link_entropy(const LinkHistory& h);

// Length of the worst-case sequence whose longest word has length ell.
long long worst_case_T(int ell, long long Z);
// Length of the all-equal sequence whose longest word has length ell.
long long best_case_T(int ell, long long Z);

// Concatenation of all words of length 1..ell in lexicographic order:
// 0 1 00 01 10 11 000 ...
LinkHistory worst_case_sequence(int ell);
LinkHistory best_case_sequence(int ell, long long Z = 0, bool ones = true);

enum class EntropyCase { Worst, Best };

// Closed forms for the longest word length given T. These are reported as
// published and are not exact inverses of worst_case_T / best_case_T.
double closed_form_ell(long long T, EntropyCase c, bool nonzero_remainder = false);
// Closed-form word count for the worst case.
double closed_form_n_worst(long long T, bool nonzero_remainder = false);

// --- graph entropy ----------------------------------------------------------

struct GraphEntropy {
  double exact = 0.0;        // sum (l/2) ln(l/2), with 0 ln 0 = 0
  double approximate = 0.0;  // sum (l/2)(1 - l/2)
};

// Laplacian eigenvalues of the symmetrized graph, ascending.
Eigen::VectorXd laplacian_spectrum(const Snapshot& g);
GraphEntropy graph_entropy(const Snapshot& g);

// --- node stability ---------------------------------------------------------

// |old ∩ new| / |old|, 0 when old is empty.
double neighborhood_stability(const std::set<NodeId>& old_neighbors,
                              const std::set<NodeId>& new_neighbors);

// In-neighbors of node v (nodes u with a link u -> v).
std::set<NodeId> in_neighbors(const Snapshot& g, NodeId v);

// --- report -----------------------------------------------------------------

struct MetricRow {
  int t = 0;
  double cosine = 0.0;
  double spectral = 0.0;
  double hanneke = 0.0;
  double tang = 0.0;
  double rank_overlap = 0.0;
  double graph_entropy = 0.0;
};

// One row per consecutive pair (t-1, t); rank overlap uses the top
// ceil(nu_fraction * |V|) nodes.
std::vector<MetricRow> metric_report(const std::vector<Snapshot>& snapshots,
                                     double nu_fraction = 0.5);

void write_metric_report(std::ostream& os, const std::vector<MetricRow>& rows);

}  // namespace beamsim
