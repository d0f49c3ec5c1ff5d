#include "complasso/cluster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "complasso/errors.hpp"

namespace complasso {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

/// Canonicalize arbitrary labels into ids 1..K ordered by smallest member.
Partition canonicalize(const std::vector<int>& labels) {
  const int p = static_cast<int>(labels.size());
  Partition part;
  part.assignment.assign(p, 0);
  std::vector<int> id_of_label;
  std::vector<int> seen_labels;
  for (int j = 0; j < p; ++j) {
    auto it = std::find(seen_labels.begin(), seen_labels.end(), labels[j]);
    int id;
    if (it == seen_labels.end()) {
      seen_labels.push_back(labels[j]);
      id = static_cast<int>(seen_labels.size());
    } else {
      id = static_cast<int>(it - seen_labels.begin()) + 1;
    }
    part.assignment[j] = id;
  }
  part.K = static_cast<int>(seen_labels.size());
  return part;
}

}  // namespace

IndexVec Partition::members(int k) const {
  IndexVec out;
  for (int j = 0; j < p(); ++j) {
    if (assignment[j] == k) out.push_back(j);
  }
  return out;
}

bool Partition::same_sets(const Partition& other) const {
  if (p() != other.p() || K != other.K) return false;
  // Canonical labels agree because both use smallest-member ordering.
  return assignment == other.assignment;
}

std::string to_string(Linkage l) {
  switch (l) {
    case Linkage::single: return "single";
    case Linkage::average: return "average";
    case Linkage::complete: return "complete";
  }
  return "average";
}

Linkage linkage_from_string(const std::string& s) {
  if (s == "single") return Linkage::single;
  if (s == "average") return Linkage::average;
  if (s == "complete") return Linkage::complete;
  throw Error("unknown linkage: " + s);
}

Partition threshold_components(const Covariance& S, double tau) {
  const int p = S.p();
  UnionFind uf(p);
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      if (std::abs(S.S(i, j)) > tau) uf.unite(i, j);
    }
  }
  std::vector<int> labels(p);
  for (int j = 0; j < p; ++j) labels[j] = uf.find(j);
  Partition part = canonicalize(labels);
  part.tau = tau;
  return part;
}

Dendrogram build_dendrogram(const Covariance& S, Linkage linkage) {
  const int p = S.p();
  Dendrogram dend;
  dend.linkage = linkage;
  dend.n_leaves = p;
  if (p < 2) return dend;

  // Working distance matrix over active cluster slots.
  Matrix D(p, p);
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) {
      D(i, j) = (i == j) ? 0.0 : 1.0 - std::abs(S.S(i, j));
    }
  }
  std::vector<bool> active(p, true);
  std::vector<int> size(p, 1);
  std::vector<int> min_leaf(p);      // smallest leaf index in the cluster
  std::vector<int> cluster_id(p);    // scipy-style id of the cluster in this slot
  std::iota(min_leaf.begin(), min_leaf.end(), 0);
  std::iota(cluster_id.begin(), cluster_id.end(), 0);

  dend.merges.reserve(p - 1);
  for (int step = 0; step < p - 1; ++step) {
    // Find the closest active pair; ties by smallest (min_leaf_i, min_leaf_j).
    double best = std::numeric_limits<double>::infinity();
    int bi = -1, bj = -1;
    for (int i = 0; i < p; ++i) {
      if (!active[i]) continue;
      for (int j = i + 1; j < p; ++j) {
        if (!active[j]) continue;
        const double d = D(i, j);
        int lo = std::min(min_leaf[i], min_leaf[j]);
        int hi = std::max(min_leaf[i], min_leaf[j]);
        int blo = (bi >= 0) ? std::min(min_leaf[bi], min_leaf[bj]) : 0;
        int bhi = (bi >= 0) ? std::max(min_leaf[bi], min_leaf[bj]) : 0;
        if (d < best || (d == best && (lo < blo || (lo == blo && hi < bhi)))) {
          best = d;
          bi = i;
          bj = j;
        }
      }
    }
    // Report (a, b) with the smaller min-leaf first.
    int a = cluster_id[bi], b = cluster_id[bj];
    if (min_leaf[bj] < min_leaf[bi]) std::swap(a, b);
    dend.merges.push_back({a, b, best});

    // Lance-Williams update into slot bi; deactivate bj.
    for (int k = 0; k < p; ++k) {
      if (!active[k] || k == bi || k == bj) continue;
      double d;
      switch (linkage) {
        case Linkage::single:
          d = std::min(D(bi, k), D(bj, k));
          break;
        case Linkage::complete:
          d = std::max(D(bi, k), D(bj, k));
          break;
        case Linkage::average:
        default:
          d = (size[bi] * D(bi, k) + size[bj] * D(bj, k)) /
              static_cast<double>(size[bi] + size[bj]);
          break;
      }
      D(bi, k) = D(k, bi) = d;
    }
    size[bi] += size[bj];
    min_leaf[bi] = std::min(min_leaf[bi], min_leaf[bj]);
    cluster_id[bi] = p + step;
    active[bj] = false;
  }
  return dend;
}

namespace {

Partition cut_merges(const Dendrogram& dend, int n_merges, std::optional<double> tau) {
  const int p = dend.n_leaves;
  UnionFind uf(p);
  // Track which leaf represents each scipy-style cluster id.
  std::vector<int> repr(p + static_cast<int>(dend.merges.size()));
  std::iota(repr.begin(), repr.begin() + p, 0);
  for (int m = 0; m < static_cast<int>(dend.merges.size()); ++m) {
    repr[p + m] = repr[dend.merges[m].a];
    if (m < n_merges) uf.unite(repr[dend.merges[m].a], repr[dend.merges[m].b]);
  }
  std::vector<int> labels(p);
  for (int j = 0; j < p; ++j) labels[j] = uf.find(j);
  Partition part = canonicalize(labels);
  part.tau = tau;
  return part;
}

}  // namespace

Partition cut_at_height(const Dendrogram& dend, double h) {
  int n_merges = 0;
  // Heights are non-decreasing for the supported linkages.
  while (n_merges < static_cast<int>(dend.merges.size()) &&
         dend.merges[n_merges].height <= h) {
    ++n_merges;
  }
  return cut_merges(dend, n_merges, 1.0 - h);
}

Partition cut_into_k(const Dendrogram& dend, int K) {
  const int p = dend.n_leaves;
  if (K < 1 || K > p) throw BadKError(K, p);
  return cut_merges(dend, p - K, std::nullopt);
}

double misclassification(const Partition& C, const Partition& T, const IndexVec& signal_idx) {
  if (signal_idx.size() < 2) throw TooFewSignalsError();
  const auto m = signal_idx.size();
  long disagreements = 0;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      const int i = signal_idx[a], j = signal_idx[b];
      const bool in_c = C.assignment[i] == C.assignment[j];
      const bool in_t = T.assignment[i] == T.assignment[j];
      if (in_c != in_t) ++disagreements;
    }
  }
  const double pairs = static_cast<double>(m) * (m - 1) / 2.0;
  return disagreements / pairs;
}

}  // namespace complasso
