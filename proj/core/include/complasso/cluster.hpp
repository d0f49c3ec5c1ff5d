#pragma once

#include <optional>
#include <string>
#include <vector>

#include "complasso/data.hpp"

namespace complasso {

/// Assignment of predictors to K connected components. Component ids are
/// 1..K, assigned in order of each component's smallest member index.
struct Partition {
  std::vector<int> assignment;  // length p, values in 1..K
  int K = 0;
  std::optional<double> tau;  // cut level that produced it, when known

  int p() const { return static_cast<int>(assignment.size()); }

  /// Members of component k (1-based), in increasing index order.
  IndexVec members(int k) const;

  bool same_sets(const Partition& other) const;
};

enum class Linkage { single, average, complete };

std::string to_string(Linkage l);
Linkage linkage_from_string(const std::string& s);

/// Agglomerative merge tree over dissimilarity d = 1 - |S|.
/// Leaves are 0..p-1; the cluster formed by merge i has id p+i
/// (scipy convention). Exactly p-1 merges.
struct Dendrogram {
  struct Merge {
    int a;
    int b;
    double height;
  };
  std::vector<Merge> merges;
  Linkage linkage = Linkage::average;
  int n_leaves = 0;
};

/// Connected components of the graph with edges {(i,i'): |S_ii'| > tau}.
Partition threshold_components(const Covariance& S, double tau);

/// Agglomerative clustering on d = 1 - |S| with the named linkage update.
/// Ties are broken by the lexicographically smallest pair of cluster
/// representatives (smallest leaf index), so results are reproducible.
Dendrogram build_dendrogram(const Covariance& S, Linkage linkage);

/// Keep merges with height <= h; records tau = 1 - h.
Partition cut_at_height(const Dendrogram& dend, double h);

/// Undo the last K-1 merges.
Partition cut_into_k(const Dendrogram& dend, int K);

/// Pairwise disagreement rate between partitions C and T over pairs of
/// signal indices only; denominator is C(|signal_idx|, 2).
double misclassification(const Partition& C, const Partition& T, const IndexVec& signal_idx);

}  // namespace complasso
