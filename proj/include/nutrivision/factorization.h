/* Copyright 2026 The NutriVision Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef NUTRIVISION_FACTORIZATION_H_
#define NUTRIVISION_FACTORIZATION_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace nutrivision {

struct Rating {
  std::string user_id;
  std::string item_id;
  double value = 0.0;
};

struct FactorOptions {
  int rank = 8;
  double lambda = 0.1;
  int iterations = 25;
  uint64_t seed = 42;
  double min_rating = 1.0;
  double max_rating = 5.0;

  void Validate() const;
};

// Objective and fit history recorded during training.
struct TrainingTrace {
  // objective[0] is the initial value; one entry follows every half-step
  // (user solve, then item solve).
  std::vector<double> objective;
  // Training RMSE after each full iteration.
  std::vector<double> rmse;
};

// Low-rank model of mean-centered ratings: r(u, i) ~ mu + P_u . Q_i.
class FactorModel {
 public:
  double global_mean() const { return mu_; }
  int rank() const { return static_cast<int>(P_.cols()); }
  double lambda() const { return lambda_; }
  int iterations() const { return iterations_; }
  const Eigen::MatrixXd& user_factors() const { return P_; }
  const Eigen::MatrixXd& item_factors() const { return Q_; }
  const TrainingTrace& trace() const { return trace_; }

  bool HasUser(std::string_view user_id) const;
  bool HasItem(std::string_view item_id) const;
  // Number of observed ratings for `user_id` used in training.
  int RatingCount(std::string_view user_id) const;

  // mu + P_u . Q_i without clamping. Unknown users or items contribute a
  // zero factor, so the estimate falls back to mu.
  double RawPredict(std::string_view user_id, std::string_view item_id) const;
  // RawPredict clamped to [min_rating, max_rating].
  double Predict(std::string_view user_id, std::string_view item_id) const;

 private:
  friend FactorModel FitFactors(std::span<const Rating>, const FactorOptions&);

  double mu_ = 0.0;
  double lambda_ = 0.0;
  int iterations_ = 0;
  double min_rating_ = 1.0;
  double max_rating_ = 5.0;
  Eigen::MatrixXd P_;
  Eigen::MatrixXd Q_;
  std::map<std::string, int, std::less<>> user_index_;
  std::map<std::string, int, std::less<>> item_index_;
  std::vector<int> user_counts_;
  TrainingTrace trace_;
};

// Alternating least squares on the observed entries, minimizing
//   sum (r - mu - P_u . Q_i)^2 + lambda (|P|^2 + |Q|^2).
// Each half-step solves its block exactly, so the objective never increases.
// The rank is capped at min(#users, #items). Later duplicates of a
// (user, item) pair replace earlier ones. Throws Error(kEmptyRatings).
FactorModel FitFactors(std::span<const Rating> ratings,
                       const FactorOptions& options = {});

}  // namespace nutrivision

#endif  // NUTRIVISION_FACTORIZATION_H_
