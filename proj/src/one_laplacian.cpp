#include "plap/one_laplacian.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "plap/error.hpp"
#include "plap/spectral.hpp"

namespace plap {
namespace {

void require_nonnegative(const DirichletFunction& u) {
  for (double v : u.values) {
    if (v < 0.0 || std::isnan(v)) throw Error(ErrorKind::negative_values, "function takes negative values");
  }
}

}  // namespace

VertexSet superlevel_set(const Domain& d, const DirichletFunction& u, double sigma) {
  check_shape(d, u);
  require_nonnegative(u);
  VertexSet out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (u[i] > sigma) out.push_back(d.omega()[i]);
  }
  return out;
}

double coarea_total(const Domain& d, const DirichletFunction& u) {
  check_shape(d, u);
  require_nonnegative(u);
  std::vector<double> levels = u.values;
  levels.push_back(0.0);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    total += (levels[i + 1] - levels[i]) * boundary_weight(d.graph(), superlevel_set(d, u, levels[i]));
  }
  return total;
}

Lambda11Check check_lambda11_equals_h(const Domain& d, int samples, std::uint64_t seed) {
  if (samples < 0) throw Error(ErrorKind::invalid_argument, "samples must be >= 0");
  const auto report = cheeger_constant(d);
  Lambda11Check out;
  out.h = report.h;

  const std::size_t n = d.size();
  out.min_indicator_quotient = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    DirichletFunction u = zero_function(d);
    for (std::size_t i = 0; i < n; ++i) u[i] = static_cast<double>((mask >> i) & 1u);
    out.min_indicator_quotient = std::min(out.min_indicator_quotient, rayleigh_quotient(d, u, 1.0));
  }
  out.indicator_min_equals_h = out.min_indicator_quotient == report.h;

  out.min_sample_quotient = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(s));
    std::uniform_real_distribution<double> value(-1.0, 1.0);
    std::bernoulli_distribution zero(0.25);
    DirichletFunction u = zero_function(d);
    while (std::all_of(u.values.begin(), u.values.end(), [](double v) { return v == 0.0; })) {
      for (double& v : u.values) v = zero(rng) ? 0.0 : value(rng);
    }
    out.min_sample_quotient = std::min(out.min_sample_quotient, rayleigh_quotient(d, u, 1.0));
  }
  out.samples_above_h = samples == 0 || out.min_sample_quotient >= report.h - 1e-12;
  out.ok = out.indicator_min_equals_h && out.samples_above_h;
  return out;
}

bool verify_lambda11_equals_h(const Domain& d, int samples, std::uint64_t seed) {
  return check_lambda11_equals_h(d, samples, seed).ok;
}

Decomposition decompose_limit(const Domain& d, const DirichletFunction& u, double delta) {
  check_shape(d, u);
  require_nonnegative(u);
  if (!(delta >= 0.0)) throw Error(ErrorKind::invalid_argument, "delta must be >= 0");
  const double top = *std::max_element(u.values.begin(), u.values.end());
  if (top == 0.0) throw Error(ErrorKind::zero_function, "cannot decompose the zero function");
  const double band = delta * top;

  std::vector<std::size_t> order(d.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return u[a] < u[b]; });

  // level_of[i] indexes into `levels`; level 0 is the fixed zero level.
  std::vector<std::size_t> level_of(d.size(), 0);
  std::vector<double> levels{0.0};
  std::vector<double> sums{0.0};
  std::vector<std::size_t> counts{0};
  double start = 0.0;
  for (std::size_t i : order) {
    if (u[i] - start > band) {
      start = u[i];
      levels.push_back(0.0);
      sums.push_back(0.0);
      counts.push_back(0);
    }
    level_of[i] = levels.size() - 1;
    sums.back() += u[i];
    ++counts.back();
  }
  for (std::size_t k = 1; k < levels.size(); ++k) levels[k] = sums[k] / static_cast<double>(counts[k]);

  Decomposition dec;
  dec.levels = levels;
  for (std::size_t k = 1; k < levels.size(); ++k) {
    VertexSet set;
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (level_of[i] >= k) set.push_back(d.omega()[i]);
    }
    dec.coefficients.push_back(levels[k] - levels[k - 1]);
    dec.sets.push_back(std::move(set));
  }
  return dec;
}

DirichletFunction reconstruct(const Domain& d, const Decomposition& dec) {
  if (dec.coefficients.size() != dec.sets.size()) {
    throw Error(ErrorKind::invalid_argument, "decomposition has mismatched coefficients and sets");
  }
  DirichletFunction u = zero_function(d);
  for (std::size_t n = 0; n < dec.sets.size(); ++n) {
    for (Vertex v : dec.sets[n]) {
      auto i = d.local_index(v);
      if (!i) throw Error(ErrorKind::subset_not_in_omega, "decomposition set leaves omega");
      u[*i] += dec.coefficients[n];
    }
  }
  return u;
}

StructureReport check_eigenfunction_structure(const Domain& d, const CheegerReport& cheeger,
                                              const DirichletFunction& u, double delta) {
  StructureReport out;
  out.h = cheeger.h;
  out.quotient = rayleigh_quotient(d, u, 1.0);
  out.quotient_matches_h = std::abs(out.quotient - cheeger.h) <= std::max(delta, 1e-12);
  out.decomposition = decompose_limit(d, u, delta);
  bool all_cuts = true;
  for (const auto& set : out.decomposition.sets) {
    const bool cut = is_cheeger_cut(d, cheeger, set, 0.0);
    out.set_is_cheeger_cut.push_back(cut);
    all_cuts = all_cuts && cut;
  }
  out.nested = nested_chain_check(out.decomposition.sets);
  out.ok = out.quotient_matches_h && all_cuts && out.nested;
  return out;
}

bool verify_eigenfunction_structure(const Domain& d, const DirichletFunction& u, double delta) {
  return check_eigenfunction_structure(d, cheeger_constant(d), u, delta).ok;
}

}  // namespace plap
