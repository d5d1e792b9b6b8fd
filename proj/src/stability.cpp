#include "beamsim/stability.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/lambert_w.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <unordered_set>

namespace beamsim {
namespace {

void require_same_size(const Snapshot& g1, const Snapshot& g2, const char* what) {
  if (g1.size() != g2.size())
    throw std::invalid_argument(std::string(what) + ": node sets differ");
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& a) {
  return 0.5 * (a + a.transpose());
}

Eigen::VectorXd adjacency_spectrum(const Snapshot& g) {
  if (g.size() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      symmetrized(g.adjacency), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace

Snapshot disk_snapshot(const Positions& positions, double r, int t) {
  const Eigen::Index n = positions.cols();
  Snapshot g;
  g.t = t;
  g.positions = positions;
  g.adjacency = Eigen::MatrixXd::Zero(n, n);
  const double r2 = r * r;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j)
      if ((positions.col(i) - positions.col(j)).squaredNorm() <= r2)
        g.adjacency(i, j) = g.adjacency(j, i) = 1.0;
  return g;
}

double cosine_similarity(const Snapshot& g1, const Snapshot& g2) {
  require_same_size(g1, g2, "cosine_similarity");
  const auto n = static_cast<double>(g1.size());
  if (n == 0) return 0.0;
  return g1.adjacency.cwiseProduct(g2.adjacency).sum() / (n * n);
}

double spectral_distance(const Snapshot& g1, const Snapshot& g2) {
  require_same_size(g1, g2, "spectral_distance");
  const Eigen::VectorXd lambda = adjacency_spectrum(g1);
  const Eigen::VectorXd mu = adjacency_spectrum(g2);
  const double denom = std::max(lambda.squaredNorm(), mu.squaredNorm());
  if (denom == 0.0) return 0.0;
  return std::sqrt((lambda - mu).squaredNorm() / denom);
}

double hanneke_stability(const Snapshot& g1, const Snapshot& g2) {
  require_same_size(g1, g2, "hanneke_stability");
  const Eigen::Index n = g1.size();
  if (n < 2) throw std::invalid_argument("hanneke_stability: need |V| >= 2");
  const Eigen::MatrixXd& x = g1.adjacency;
  const Eigen::MatrixXd& y = g2.adjacency;
  const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(n, n);
  const Eigen::MatrixXd same =
      x.cwiseProduct(y) + (ones - x).cwiseProduct(ones - y);
  const double off_diagonal = same.sum() - same.diagonal().sum();
  return off_diagonal / static_cast<double>(n * (n - 1));
}

double tang_stability(const std::vector<Snapshot>& snapshots) {
  if (snapshots.size() < 2)
    throw std::invalid_argument("tang_stability: need >= 2 snapshots");
  const Eigen::Index n = snapshots.front().size();
  for (const auto& s : snapshots) require_same_size(snapshots.front(), s, "tang_stability");
  if (n == 0) return 0.0;

  Eigen::VectorXd per_node = Eigen::VectorXd::Zero(n);
  for (std::size_t t = 0; t + 1 < snapshots.size(); ++t) {
    const Eigen::MatrixXd& x0 = snapshots[t].adjacency;
    const Eigen::MatrixXd& x1 = snapshots[t + 1].adjacency;
    const Eigen::VectorXd kept = x0.cwiseProduct(x1).rowwise().sum();
    const Eigen::VectorXd d0 = x0.rowwise().sum();
    const Eigen::VectorXd d1 = x1.rowwise().sum();
    for (Eigen::Index i = 0; i < n; ++i) {
      // Vanished neighborhood: no retained links.
      if (d0(i) == 0.0 || d1(i) == 0.0) continue;
      per_node(i) += kept(i) / std::sqrt(d0(i) * d1(i));
    }
  }
  per_node /= static_cast<double>(snapshots.size() - 1);
  return per_node.mean();
}

std::vector<NodeId> top_degree_nodes(const Snapshot& g, int nu) {
  const Eigen::VectorXd degree = g.adjacency.rowwise().sum();
  std::vector<NodeId> order(static_cast<std::size_t>(g.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return degree(a) > degree(b);
  });
  order.resize(static_cast<std::size_t>(nu));
  return order;
}

double rank_overlap(const Snapshot& g1, const Snapshot& g2, int nu) {
  require_same_size(g1, g2, "rank_overlap");
  if (nu < 0 || nu > g1.size())
    throw std::invalid_argument("rank_overlap: nu must lie in [0, |V|]");
  if (g1.size() == 0) return 0.0;
  auto a = top_degree_nodes(g1, nu);
  auto b = top_degree_nodes(g2, nu);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<NodeId> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(common));
  return static_cast<double>(common.size()) / static_cast<double>(g1.size());
}

LinkHistory LinkHistory::parse(std::string_view text) {
  LinkHistory h;
  h.bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("link history must contain only 0 and 1");
    h.bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return h;
}

std::string LinkHistory::str() const {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(static_cast<char>('0' + b));
  return s;
}

int lz_word_count(const LinkHistory& h) {
  if (h.bits.empty()) throw std::invalid_argument("lz_word_count: empty history");
  const std::string s = h.str();
  std::unordered_set<std::string> dictionary;
  int words = 0;
  std::size_t start = 0;
  while (start < s.size()) {
    std::size_t len = 1;
    while (start + len <= s.size() && dictionary.count(s.substr(start, len)))
      ++len;
    if (start + len > s.size()) {
      ++words;  // trailing word already in the dictionary
      break;
    }
    dictionary.insert(s.substr(start, len));
    ++words;
    start += len;
  }
  return words;
}

double link_entropy(const LinkHistory& h) {
  if (h.length() < 3)
    throw InsufficientHistory("link_entropy: need T >= 3");
  const double n = lz_word_count(h);
  return n * std::log(n) / static_cast<double>(h.length());
}

long long worst_case_T(int ell, long long Z) {
  if (ell < 1 || Z < 0) throw std::invalid_argument("worst_case_T: ell >= 1, Z >= 0");
  return (1LL << (ell + 1)) * (ell - 1) + 2 + Z;
}

long long best_case_T(int ell, long long Z) {
  if (ell < 1) throw std::invalid_argument("best_case_T: ell >= 1");
  if (Z < 0 || Z > ell) throw std::invalid_argument("best_case_T: Z must lie in [0, ell]");
  return static_cast<long long>(ell) * (ell + 1) / 2 + Z;
}

LinkHistory worst_case_sequence(int ell) {
  if (ell < 1) throw std::invalid_argument("worst_case_sequence: ell >= 1");
  LinkHistory h;
  for (int len = 1; len <= ell; ++len)
    for (unsigned w = 0; w < (1u << len); ++w)
      for (int b = len - 1; b >= 0; --b)
        h.bits.push_back(static_cast<std::uint8_t>((w >> b) & 1u));
  return h;
}

LinkHistory best_case_sequence(int ell, long long Z, bool ones) {
  LinkHistory h;
  h.bits.assign(static_cast<std::size_t>(best_case_T(ell, Z)),
                static_cast<std::uint8_t>(ones ? 1 : 0));
  return h;
}

double closed_form_ell(long long T, EntropyCase c, bool nonzero_remainder) {
  if (T < 3) throw InsufficientHistory("closed_form_ell: need T >= 3");
  const double ln2 = std::log(2.0);
  if (c == EntropyCase::Best)
    return 0.5 * (std::sqrt(8.0 * static_cast<double>(T)) - 1.0);
  const double y = (static_cast<double>(T) / 2.0 - 1.0) * ln2;
  const double ell = (boost::math::lambert_w0(y) + ln2) / ln2;
  return nonzero_remainder ? ell + 1.0 : ell;
}

double closed_form_n_worst(long long T, bool nonzero_remainder) {
  if (T < 3) throw InsufficientHistory("closed_form_n_worst: need T >= 3");
  const double ln2 = std::log(2.0);
  const double w = boost::math::lambert_w0((static_cast<double>(T) / 2.0 - 1.0) * ln2);
  if (!nonzero_remainder) return std::pow(2.0, (w + 2.0 * ln2) / ln2) - 2.0;
  return (ln2 * std::pow(2.0, (w + 3.0 * ln2) / ln2) - 2.0 * (w + 3.0 * ln2) +
          static_cast<double>(T) * ln2) /
         (w + 2.0 * ln2);
}

Eigen::VectorXd laplacian_spectrum(const Snapshot& g) {
  if (g.size() == 0) return {};
  const Eigen::MatrixXd a = symmetrized(g.adjacency);
  Eigen::MatrixXd lap = -a;
  lap.diagonal() += a.rowwise().sum();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
  // Round-off can leave the zero eigenvalues slightly negative.
  return solver.eigenvalues().cwiseMax(0.0);
}

GraphEntropy graph_entropy(const Snapshot& g) {
  GraphEntropy out;
  const Eigen::VectorXd half = laplacian_spectrum(g) / 2.0;
  for (Eigen::Index i = 0; i < half.size(); ++i) {
    const double x = half(i);
    if (x > 0.0) out.exact += x * std::log(x);
    out.approximate += x * (1.0 - x);
  }
  return out;
}

double neighborhood_stability(const std::set<NodeId>& old_neighbors,
                              const std::set<NodeId>& new_neighbors) {
  if (old_neighbors.empty()) return 0.0;
  std::size_t kept = 0;
  for (NodeId v : old_neighbors) kept += new_neighbors.count(v);
  return static_cast<double>(kept) / static_cast<double>(old_neighbors.size());
}

std::set<NodeId> in_neighbors(const Snapshot& g, NodeId v) {
  std::set<NodeId> out;
  for (Eigen::Index u = 0; u < g.size(); ++u)
    if (u != v && g.adjacency(u, v) != 0.0) out.insert(static_cast<NodeId>(u));
  return out;
}

std::vector<MetricRow> metric_report(const std::vector<Snapshot>& snapshots,
                                     double nu_fraction) {
  std::vector<MetricRow> rows;
  for (std::size_t k = 1; k < snapshots.size(); ++k) {
    const Snapshot& a = snapshots[k - 1];
    const Snapshot& b = snapshots[k];
    const int nu = static_cast<int>(std::ceil(nu_fraction * static_cast<double>(a.size())));
    MetricRow row;
    row.t = b.t;
    row.cosine = cosine_similarity(a, b);
    row.spectral = spectral_distance(a, b);
    row.hanneke = hanneke_stability(a, b);
    row.tang = tang_stability({a, b});
    row.rank_overlap = rank_overlap(a, b, std::min<int>(nu, static_cast<int>(a.size())));
    row.graph_entropy = graph_entropy(b).exact;
    rows.push_back(row);
  }
  return rows;
}

void write_metric_report(std::ostream& os, const std::vector<MetricRow>& rows) {
  os << "t,cosine,spectral,hanneke,tang,rank_overlap,graph_entropy\n";
  const auto old_precision = os.precision(10);
  for (const auto& r : rows)
    os << r.t << ',' << r.cosine << ',' << r.spectral << ',' << r.hanneke << ','
       << r.tang << ',' << r.rank_overlap << ',' << r.graph_entropy << '\n';
  os.precision(old_precision);
}

}  // namespace beamsim
