#pragma once

#include <map>
#include <string>

#include "proxilab/region.hpp"

namespace proxilab {

enum class Verdict { Pass, Fail, Inconclusive };

std::string to_string(Verdict v);

struct PropertyConfig {
  double tol = 1e-9;
  int anchor_budget = 100;   // sampled anchors y in B
  int set_budget = 256;      // sampled points of A per diameter evaluation
  double delta_floor = 1e-9; // bisection floor for the UC delta search
  double cluster_gap = 1e-2; // separation defining distinct accumulation clusters
  double escape_extent = 1e4;  // beyond this the budget cannot certify W-WUC
  std::uint64_t seed = 1;
};

struct PropertyReport {
  std::string property;  // "UC" | "WUC" | "W-WUC"
  Verdict verdict = Verdict::Inconclusive;
  // UC: bisected delta per epsilon (monotone); empty on FAIL
  std::vector<double> eps_grid;
  std::vector<double> delta_table;
  // FAIL witnesses
  Point witness_anchor;
  std::vector<Point> witness_points;
  double witness_value = 0.0;
  std::string note;
};

// Property UC via the diameter characterization: for each eps a delta is
// bisected with sup_y diam(A n B(y, dist+delta)) <= eps over sampled anchors.
PropertyReport uc_check(const Region& A, const Region& B,
                        const std::vector<double>& eps_grid,
                        const PropertyConfig& cfg);

// diam(A n B(y, dist+eps)) for each eps of a decreasing sequence.
struct DiamLimitTable {
  std::vector<double> eps;
  std::vector<double> diam;  // -1 marks an empty sampled intersection
};
DiamLimitTable nonuniform_diam_limit(const Region& A, const Region& B, const Point& y,
                                     const std::vector<double>& eps_seq,
                                     const PropertyConfig& cfg);

// Adversarial search for a non-convergent near-optimal sequence: a separated
// pair (x, x') in A admitting anchors y with max(d(x,y), d(x',y)) ~ dist(A,B).
PropertyReport wuc_check(const Region& A, const Region& B, const PropertyConfig& cfg);

// As wuc_check, but failure needs a sequence with no convergent subsequence;
// within bounded regions this reduces to an escape/budget question.
PropertyReport wwuc_check(const Region& A, const Region& B, const PropertyConfig& cfg);

}  // namespace proxilab
