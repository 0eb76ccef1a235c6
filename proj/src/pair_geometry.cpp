#include "proxilab/pair_geometry.hpp"

#include <algorithm>
#include <cmath>

namespace proxilab {

namespace {

// points of `from` whose distance to `to` equals dist at tolerance
std::vector<Point> core_filter(const Region& from, const Region& to, double dist,
                               double tol, int budget) {
  std::vector<Point> kept;
  auto candidates = (from.kind == Region::Kind::Cloud)
                        ? from.points
                        : sample_region(from, budget);
  for (const auto& p : candidates) {
    if (point_set_distance(p, to).dist <= dist + tol) kept.push_back(p);
  }
  return kept;
}

}  // namespace

PairGeometry extract_proximinal_core(const Region& A, const Region& B, double tol,
                                     int budget) {
  if (tol <= 0.0) throw InputError("extract_proximinal_core needs tol > 0");
  PairGeometry out;
  auto pd = set_pair_distance(A, B, tol);
  out.dist_ab = pd.dist;

  auto a0 = core_filter(A, B, pd.dist, tol, budget);
  auto b0 = core_filter(B, A, pd.dist, tol, budget);
  if (a0.empty() || b0.empty()) {
    // legitimate for open approach directions; flagged, not thrown
    out.empty_core = true;
    out.core_a = A;
    out.core_b = B;
    return out;
  }
  out.core_a = Region::cloud(A.space, std::move(a0));
  out.core_b = Region::cloud(B.space, std::move(b0));
  out.core_a.approximate = A.kind != Region::Kind::Cloud;
  out.core_b.approximate = B.kind != Region::Kind::Cloud;

  out.sharp = true;
  for (const auto& p : out.core_a.points) {
    auto proj = metric_projection(p, B, tol);
    if (!proj.singleton) {
      out.sharp = false;
      break;
    }
  }
  if (out.sharp)
    for (const auto& p : out.core_b.points) {
      auto proj = metric_projection(p, A, tol);
      if (!proj.singleton) {
        out.sharp = false;
        break;
      }
    }
  return out;
}

std::optional<Point> detect_parallel_translation(PairGeometry& core, double tol) {
  if (core.empty_core) return std::nullopt;
  const Region& a0 = core.core_a;
  const Region& b0 = core.core_b;
  if (!a0.space.is_linear())
    throw UnsupportedError("parallel translation is defined in linear spaces only");

  // candidate h averaged over matched witness pairs
  Point h(a0.space.dim, 0.0);
  int count = 0;
  for (const auto& b : b0.points) {
    auto w = point_set_distance(b, a0);
    h = add(h, sub(b, w.witness));
    ++count;
  }
  if (count == 0) return std::nullopt;
  h = scale(h, 1.0 / count);

  if (std::fabs(p_norm(h, a0.space.p) - core.dist_ab) > tol) return std::nullopt;

  // two-sided Hausdorff check of B0 against A0 + h
  double hausdorff = 0.0;
  Region shifted = translate(a0, h);
  for (const auto& b : b0.points)
    hausdorff = std::max(hausdorff, point_set_distance(b, shifted).dist);
  for (const auto& a : shifted.points)
    hausdorff = std::max(hausdorff, point_set_distance(a, b0).dist);
  if (hausdorff > tol) return std::nullopt;

  core.translation = h;
  core.parallel = true;
  return h;
}

ChebyshevReport chebyshev_for_proximinal(const Region& A, const Region& B, double tol,
                                         int budget) {
  if (tol <= 0.0) throw InputError("chebyshev_for_proximinal needs tol > 0");
  ChebyshevReport rep;
  auto pd = set_pair_distance(A, B, tol);
  auto candidates = (B.kind == Region::Kind::Cloud) ? B.points : sample_region(B, budget);
  candidates.push_back(pd.witness_b);  // the realizing point itself is proximinal
  for (const auto& x : candidates) {
    if (point_set_distance(x, A).dist > pd.dist + tol) continue;
    ++rep.probed;
    auto proj = metric_projection(x, A, tol);
    if (!proj.singleton) {
      rep.verdict = ChebyshevReport::Verdict::Fail;
      rep.witness = x;
      // pick the two most separated minimizers as evidence
      double best = -1.0;
      for (size_t i = 0; i < proj.points.size(); ++i)
        for (size_t j = i + 1; j < proj.points.size(); ++j) {
          double d = distance(A.space, proj.points[i], proj.points[j]);
          if (d > best) {
            best = d;
            rep.projections = {proj.points[i], proj.points[j]};
          }
        }
      return rep;
    }
  }
  rep.verdict = rep.probed ? ChebyshevReport::Verdict::Pass
                           : ChebyshevReport::Verdict::VacuousPass;
  return rep;
}

}  // namespace proxilab
