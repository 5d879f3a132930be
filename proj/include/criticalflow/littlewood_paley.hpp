#pragma once

#include <map>
#include <utility>
#include <vector>

#include "criticalflow/field.hpp"

namespace criticalflow {

/// Smooth radial cutoff: 1 on [0, 3/4], 0 on [4/3, inf), non-increasing.
double chi(double r);
/// Annular profile chi(r/2) - chi(r), supported in [3/4, 8/3].
double phi(double r);

struct DyadicPartition {
  Grid grid;
  int j_min = 0;
  int j_max = 0;
  // weights[j - j_min][m] = phi(2^-j |k_m|); zero at the zero mode.
  std::vector<std::vector<double>> weights;

  int blocks() const { return j_max - j_min + 1; }
  bool contains(int j) const { return j >= j_min && j <= j_max; }
  const std::vector<double>& weight(int j) const;
};

DyadicPartition build_partition(const Grid& grid);

/// Delta_j f. Throws std::out_of_range outside [j_min, j_max].
SpectralField dyadic_block(const DyadicPartition& p, const SpectralField& f, int j);
/// S_k f = chi(2^-k D) f, zero mode kept.
SpectralField low_cutoff(const DyadicPartition& p, const SpectralField& f, int k);

struct BesovNorm {
  double s = 0.0;
  double value = 0.0;
  std::map<int, double> per_block;  // j -> 2^{js} ||Delta_j f||_{L2}
};

/// Homogeneous B^s_{2,1} norm, summed over components. With grad_order p
/// the blocks measure ||grad^p Delta_j f||_{L2} (Frobenius over the tensor).
BesovNorm besov_norm(const DyadicPartition& p, const SpectralField& f, double s,
                     int grad_order = 0);
/// Shortcut for besov_norm(...).value.
double besov(const DyadicPartition& p, const SpectralField& f, double s, int grad_order = 0);

/// ||grad^p Delta_j f||_{L2} for every j, indexed by j - j_min.
std::vector<double> block_l2(const DyadicPartition& p, const SpectralField& f, int grad_order = 0);

/// Blocks with 2^k nu <= 1 go to the first field, the rest to the second.
/// The mean is in neither.
std::pair<SpectralField, SpectralField> split_low_high(const DyadicPartition& p,
                                                       const SpectralField& f, double nu);
/// Largest block index counted as low frequency for a given nu.
int low_frequency_limit(double nu);

struct BernsteinRatios {
  double direct = 0.0;   // ||grad Delta_j f|| / (2^j ||Delta_j f||)
  double reverse = 0.0;  // 2^j ||Delta_j f|| / ||grad Delta_j f||
};
BernsteinRatios audit_bernstein(const DyadicPartition& p, const SpectralField& f, int j);

/// ||gh||_{B^{s1+s2-d/2}} / (||g||_{B^{s1}} ||h||_{B^{s2}}), product dealiased.
double audit_product_law(const DyadicPartition& p, const SpectralField& g, const SpectralField& h,
                         double s1, double s2);

/// sum_j 2^{js} ||w . grad Delta_j f - Delta_j (w . grad f)||_{L2}
double commutator_sum(const DyadicPartition& p, const SpectralField& w, const SpectralField& f,
                      double s);
/// commutator_sum divided by ||grad w||_{B^{d/2}} ||f||_{B^s}.
double audit_commutator(const DyadicPartition& p, const SpectralField& w, const SpectralField& f,
                        double s);

}  // namespace criticalflow
