#include "plap/cheeger.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <future>
#include <thread>

#include "plap/error.hpp"

namespace plap {
namespace {

using Rational = boost::multiprecision::cpp_rational;

// Relative window used to collect floating-point near-minimizers for the exact recheck.
constexpr double kTieWindow = 1e-9;

struct LocalEdge {
  std::uint32_t a;  // local index in Omega
  std::uint32_t b;  // local index, or kOutside
  double w;
};
constexpr std::uint32_t kOutside = 0xffffffffu;

struct ChunkResult {
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::uint64_t, double>> candidates;
};

ChunkResult scan(std::uint64_t begin, std::uint64_t end, const std::vector<LocalEdge>& edges,
                 const std::vector<double>& mu) {
  ChunkResult out;
  for (std::uint64_t mask = begin; mask < end; ++mask) {
    double cut = 0.0;
    for (const auto& e : edges) {
      const bool in_a = (mask >> e.a) & 1u;
      const bool in_b = e.b != kOutside && ((mask >> e.b) & 1u);
      if (in_a != in_b) cut += e.w;
    }
    double vol = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      if ((mask >> i) & 1u) vol += mu[i];
    }
    const double ratio = cut / vol;
    if (ratio < out.best) {
      out.best = ratio;
      const double cutoff = out.best * (1.0 + kTieWindow);
      std::erase_if(out.candidates, [&](const auto& c) { return c.second > cutoff; });
    }
    if (ratio <= out.best * (1.0 + kTieWindow)) out.candidates.emplace_back(mask, ratio);
  }
  return out;
}

Rational exact_ratio(const Domain& d, const VertexSet& s) {
  const auto& g = d.graph();
  std::vector<char> in(g.num_vertices(), 0);
  for (Vertex v : s) in[v] = 1;
  Rational cut = 0;
  for (const auto& e : g.edges()) {
    if (in[e.u] != in[e.v]) cut += Rational(e.w);
  }
  Rational vol = 0;
  for (Vertex v : s) vol += Rational(g.mu(v));
  return cut / vol;
}

void check_subset(const Domain& d, const VertexSet& s) {
  if (s.empty()) throw Error(ErrorKind::invalid_argument, "cut subset must be nonempty");
  for (Vertex v : s) {
    if (v >= d.graph().num_vertices() || !d.contains(v)) {
      throw Error(ErrorKind::subset_not_in_omega, "subset is not contained in omega");
    }
  }
}

}  // namespace

CutRecord make_cut_record(const Domain& d, const VertexSet& s) {
  check_subset(d, s);
  CutRecord r;
  r.subset = s;
  r.cut_weight = boundary_weight(d.graph(), s);
  r.volume = volume(d, s);
  r.ratio = r.cut_weight / r.volume;
  return r;
}

CheegerReport cheeger_constant(const Domain& d, std::size_t limit) {
  const std::size_t n = d.size();
  if (n > limit || n > 62) {
    throw Error(ErrorKind::domain_too_large, "omega has " + std::to_string(n) +
                                                 " vertices; exhaustive enumeration limit is " +
                                                 std::to_string(limit));
  }
  const auto& g = d.graph();
  std::vector<LocalEdge> edges;
  for (const auto& e : g.edges()) {
    auto a = d.local_index(e.u);
    auto b = d.local_index(e.v);
    if (!a && !b) continue;
    if (!a) std::swap(a, b);
    edges.push_back({static_cast<std::uint32_t>(*a), b ? static_cast<std::uint32_t>(*b) : kOutside, e.w});
  }
  std::vector<double> mu;
  for (Vertex v : d.omega()) mu.push_back(g.mu(v));

  const std::uint64_t total = std::uint64_t{1} << n;
  const std::uint64_t work = total - 1;
  const std::uint64_t threads =
      std::clamp<std::uint64_t>(std::thread::hardware_concurrency(), 1, std::max<std::uint64_t>(1, work / 4096));
  std::vector<std::future<ChunkResult>> jobs;
  for (std::uint64_t t = 0; t < threads; ++t) {
    const std::uint64_t begin = 1 + work * t / threads;
    const std::uint64_t end = 1 + work * (t + 1) / threads;
    jobs.push_back(std::async(threads == 1 ? std::launch::deferred : std::launch::async, scan, begin,
                              end, std::cref(edges), std::cref(mu)));
  }
  // Ordered merge keeps the result independent of scheduling.
  std::vector<ChunkResult> parts;
  for (auto& j : jobs) parts.push_back(j.get());
  double best = std::numeric_limits<double>::infinity();
  for (const auto& p : parts) best = std::min(best, p.best);
  const double cutoff = best * (1.0 + kTieWindow);

  std::vector<VertexSet> candidates;
  for (const auto& p : parts) {
    for (const auto& [mask, ratio] : p.candidates) {
      if (ratio > cutoff) continue;
      VertexSet s;
      for (std::size_t i = 0; i < n; ++i) {
        if ((mask >> i) & 1u) s.push_back(d.omega()[i]);
      }
      candidates.push_back(std::move(s));
    }
  }

  std::vector<Rational> exact;
  exact.reserve(candidates.size());
  for (const auto& s : candidates) exact.push_back(exact_ratio(d, s));
  const Rational h_exact = *std::min_element(exact.begin(), exact.end());

  CheegerReport report;
  report.domain_size = n;
  report.h = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (exact[i] != h_exact) continue;
    report.cuts.push_back(make_cut_record(d, candidates[i]));
    report.h = std::min(report.h, report.cuts.back().ratio);
  }
  std::sort(report.cuts.begin(), report.cuts.end(), [](const CutRecord& a, const CutRecord& b) {
    if (a.subset.size() != b.subset.size()) return a.subset.size() < b.subset.size();
    return a.subset < b.subset;
  });
  return report;
}

bool is_cheeger_cut(const Domain& d, const CheegerReport& report, const VertexSet& s, double tol) {
  check_subset(d, s);
  if (tol == 0.0) {
    if (report.cuts.empty()) return false;
    return exact_ratio(d, s) == exact_ratio(d, report.cuts.front().subset);
  }
  return std::abs(make_cut_record(d, s).ratio - report.h) <= tol;
}

bool is_cheeger_cut(const Domain& d, const VertexSet& s, double tol) {
  check_subset(d, s);
  return is_cheeger_cut(d, cheeger_constant(d), s, tol);
}

bool nested_chain_check(const std::vector<VertexSet>& sets) {
  for (std::size_t i = 1; i < sets.size(); ++i) {
    const auto& outer = sets[i - 1];
    const auto& inner = sets[i];
    if (inner.size() >= outer.size()) return false;
    if (!std::includes(outer.begin(), outer.end(), inner.begin(), inner.end())) return false;
  }
  return !sets.empty();
}

}  // namespace plap
