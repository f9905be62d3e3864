#pragma once

#include <cstddef>
#include <vector>

#include "plap/graph.hpp"

namespace plap {

inline constexpr std::size_t kDefaultEnumerationLimit = 25;

struct CutRecord {
  VertexSet subset;
  double cut_weight = 0.0;  // |dD|_w
  double volume = 0.0;      // |D|_mu
  double ratio = 0.0;       // cut_weight / volume
};

struct CheegerReport {
  double h = 0.0;
  /// All minimizers, sorted by (cardinality, canonical vertex order).
  std::vector<CutRecord> cuts;
  std::size_t domain_size = 0;
};

/// Builds the record for s from boundary_weight and volume. s must be a nonempty subset of Omega.
CutRecord make_cut_record(const Domain& d, const VertexSet& s);

/// Exact Cheeger constant of Omega by exhaustive search over every nonempty D ⊆ Omega
/// (D = Omega and disconnected D included).
///
/// Ratios are screened in floating point, then every near-minimal subset is rechecked with
/// exact rational arithmetic so ties survive rounding. Throws domain_too_large when
/// |Omega| exceeds `limit`.
CheegerReport cheeger_constant(const Domain& d, std::size_t limit = kDefaultEnumerationLimit);

/// True iff |ratio(s) - h| <= tol. With tol == 0 the comparison is exact (rational).
bool is_cheeger_cut(const Domain& d, const CheegerReport& report, const VertexSet& s, double tol);
bool is_cheeger_cut(const Domain& d, const VertexSet& s, double tol);

/// True iff sets[0] ⊋ sets[1] ⊋ ... (strict nesting in the given order).
bool nested_chain_check(const std::vector<VertexSet>& sets);

}  // namespace plap
