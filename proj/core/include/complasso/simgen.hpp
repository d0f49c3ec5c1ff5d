#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "complasso/cluster.hpp"
#include "complasso/data.hpp"

namespace complasso {

enum class SimName { orthogonal, ex1, ex2a, ex2b, ex3, ex4 };

std::string to_string(SimName name);
SimName sim_name_from_string(const std::string& s);

struct SimSpec {
  SimName name = SimName::ex1;
  int n_train = 20;
  int n_val = 20;
  int n_test = 200;
  int p = 8;
  double sigma = 3.0;
  Vector beta_true;
  std::uint64_t seed = 0;
};

/// Published parameters for the named design.
SimSpec make_spec(SimName name, std::uint64_t seed);

struct SimData {
  RawDataset raw;       // all rows: train, then validation, then test
  Split split;
  Vector beta_true;
  Partition true_partition;  // the generating block structure
};

SimData generate(const SimSpec& spec);

/// Monte Carlo average of Var(X beta*) / sigma^2 over n_reps replicates;
/// replicate r uses seed + r.
double empirical_snr(const SimSpec& spec, int n_reps, std::uint64_t seed);

/// Sherman-Morrison-Woodbury check for S = A + rho e e^T with block-diagonal
/// A: identity_residual is ||S^{-1} - (A^{-1} - rho A^{-1}ee^TA^{-1} /
/// (1 + rho e^T A^{-1} e))||_inf, bias_norm is the max-norm of the rank-one
/// correction term.
struct SmwResult {
  double identity_residual;
  double bias_norm;
};

SmwResult smw_check(const std::vector<Matrix>& A_blocks, double rho);

}  // namespace complasso
