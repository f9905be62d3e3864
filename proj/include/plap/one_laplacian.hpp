#pragma once

#include <cstdint>
#include <vector>

#include "plap/cheeger.hpp"
#include "plap/graph.hpp"

namespace plap {

/// u = sum_n coefficients[n] * 1_{sets[n]}, with sets[0] ⊋ sets[1] ⊋ ... and
/// levels = 0 = a_0 < a_1 < ... < a_M (coefficients[n] = a_{n+1} - a_n).
struct Decomposition {
  std::vector<double> coefficients;
  std::vector<VertexSet> sets;
  std::vector<double> levels;
};

/// {x in Omega : u(x) > sigma}. Requires u >= 0.
VertexSet superlevel_set(const Domain& d, const DirichletFunction& u, double sigma);

/// sum_i (a_{i+1} - a_i) |d Omega_{a_i}|_w over the distinct values 0 = a_0 < ... < a_M of u;
/// the finite form of the integral of sigma -> |d Omega_sigma|_w. Requires u >= 0.
double coarea_total(const Domain& d, const DirichletFunction& u);

struct Lambda11Check {
  bool ok = false;
  double h = 0.0;
  double min_indicator_quotient = 0.0;  // min over nonempty D of E~1(1_D)
  double min_sample_quotient = 0.0;     // min of E~1 over the random samples
  bool indicator_min_equals_h = false;
  bool samples_above_h = false;
};

/// Checks lambda_{1,1} = h(Omega): the minimum of E~1 over indicator functions equals h exactly,
/// and E~1(u) >= h - 1e-12 for `samples` random nonzero signed u (sample i seeded with seed + i).
Lambda11Check check_lambda11_equals_h(const Domain& d, int samples, std::uint64_t seed = 0);
bool verify_lambda11_equals_h(const Domain& d, int samples, std::uint64_t seed = 0);

/// Groups the values of u (>= 0, not identically 0) into levels: a value joins the current level
/// while it is within delta * max(u) of the level's smallest member, and values within that band
/// of 0 join the zero level. Levels are the member means. delta = 0 groups exact ties only.
Decomposition decompose_limit(const Domain& d, const DirichletFunction& u, double delta);

/// sum_n c_n 1_{A_n}.
DirichletFunction reconstruct(const Domain& d, const Decomposition& dec);

struct StructureReport {
  bool ok = false;
  double h = 0.0;
  double quotient = 0.0;  // E~1(u)
  bool quotient_matches_h = false;
  Decomposition decomposition;
  std::vector<bool> set_is_cheeger_cut;
  bool nested = false;
};

/// Full structure check for a candidate nonnegative first 1-eigenfunction: E~1(u) = h within
/// max(delta, 1e-12), every decomposition set is a Cheeger cut (exact), and the sets are nested.
StructureReport check_eigenfunction_structure(const Domain& d, const CheegerReport& cheeger,
                                              const DirichletFunction& u, double delta);
bool verify_eigenfunction_structure(const Domain& d, const DirichletFunction& u, double delta);

}  // namespace plap
