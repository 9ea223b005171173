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

#include "nutrivision/factorization.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "nutrivision/error.h"

namespace nutrivision {

void FactorOptions::Validate() const {
  if (rank < 1) throw Error(ErrorCode::kSchemaError, "rank must be >= 1");
  if (!(lambda > 0.0)) {
    throw Error(ErrorCode::kSchemaError, "lambda must be positive");
  }
  if (iterations < 0) {
    throw Error(ErrorCode::kSchemaError, "iterations must be >= 0");
  }
  if (!(min_rating < max_rating)) {
    throw Error(ErrorCode::kSchemaError, "min_rating must be < max_rating");
  }
}

bool FactorModel::HasUser(std::string_view user_id) const {
  return user_index_.find(user_id) != user_index_.end();
}

bool FactorModel::HasItem(std::string_view item_id) const {
  return item_index_.find(item_id) != item_index_.end();
}

int FactorModel::RatingCount(std::string_view user_id) const {
  auto it = user_index_.find(user_id);
  return it == user_index_.end() ? 0 : user_counts_[it->second];
}

double FactorModel::RawPredict(std::string_view user_id,
                               std::string_view item_id) const {
  auto u = user_index_.find(user_id);
  auto i = item_index_.find(item_id);
  if (u == user_index_.end() || i == item_index_.end()) return mu_;
  return mu_ + P_.row(u->second).dot(Q_.row(i->second));
}

double FactorModel::Predict(std::string_view user_id,
                            std::string_view item_id) const {
  return std::clamp(RawPredict(user_id, item_id), min_rating_, max_rating_);
}

namespace {

struct Entry {
  int user;
  int item;
  double residual;  // rating - mu
};

// Solves every row of `target` given the fixed `other` factors.
// `by_row[r]` lists entries whose row index (user or item) is r.
void SolveBlock(const std::vector<std::vector<const Entry*>>& by_row,
                bool rows_are_users, const Eigen::MatrixXd& other,
                double lambda, Eigen::MatrixXd& target) {
  const int k = static_cast<int>(target.cols());
  Eigen::MatrixXd a(k, k);
  Eigen::VectorXd b(k);
  for (size_t r = 0; r < by_row.size(); ++r) {
    a.setIdentity();
    a *= lambda;
    b.setZero();
    for (const Entry* e : by_row[r]) {
      const auto q = other.row(rows_are_users ? e->item : e->user).transpose();
      a.noalias() += q * q.transpose();
      b.noalias() += e->residual * q;
    }
    target.row(r) = a.llt().solve(b).transpose();
  }
}

double Objective(const std::vector<Entry>& entries, const Eigen::MatrixXd& p,
                 const Eigen::MatrixXd& q, double lambda) {
  double sse = 0.0;
  for (const Entry& e : entries) {
    const double err = e.residual - p.row(e.user).dot(q.row(e.item));
    sse += err * err;
  }
  return sse + lambda * (p.squaredNorm() + q.squaredNorm());
}

double Rmse(const std::vector<Entry>& entries, const Eigen::MatrixXd& p,
            const Eigen::MatrixXd& q) {
  double sse = 0.0;
  for (const Entry& e : entries) {
    const double err = e.residual - p.row(e.user).dot(q.row(e.item));
    sse += err * err;
  }
  return std::sqrt(sse / static_cast<double>(entries.size()));
}

}  // namespace

FactorModel FitFactors(std::span<const Rating> ratings,
                       const FactorOptions& options) {
  options.Validate();
  if (ratings.empty()) {
    throw Error(ErrorCode::kEmptyRatings, "no observed ratings to factorize");
  }

  FactorModel model;
  model.lambda_ = options.lambda;
  model.iterations_ = options.iterations;
  model.min_rating_ = options.min_rating;
  model.max_rating_ = options.max_rating;

  // Index users and items in sorted id order so results do not depend on the
  // input order.
  for (const Rating& r : ratings) {
    model.user_index_.emplace(r.user_id, 0);
    model.item_index_.emplace(r.item_id, 0);
  }
  int next = 0;
  for (auto& [id, idx] : model.user_index_) idx = next++;
  next = 0;
  for (auto& [id, idx] : model.item_index_) idx = next++;
  const int n_users = static_cast<int>(model.user_index_.size());
  const int n_items = static_cast<int>(model.item_index_.size());

  std::map<std::pair<int, int>, double> observed;
  for (const Rating& r : ratings) {
    if (!std::isfinite(r.value)) {
      throw Error(ErrorCode::kSchemaError, "rating value is not finite");
    }
    observed[{model.user_index_.find(r.user_id)->second,
              model.item_index_.find(r.item_id)->second}] = r.value;
  }

  double sum = 0.0;
  for (const auto& [key, value] : observed) sum += value;
  model.mu_ = sum / static_cast<double>(observed.size());

  std::vector<Entry> entries;
  entries.reserve(observed.size());
  model.user_counts_.assign(n_users, 0);
  for (const auto& [key, value] : observed) {
    entries.push_back({key.first, key.second, value - model.mu_});
    ++model.user_counts_[key.first];
  }
  std::vector<std::vector<const Entry*>> by_user(n_users);
  std::vector<std::vector<const Entry*>> by_item(n_items);
  for (const Entry& e : entries) {
    by_user[e.user].push_back(&e);
    by_item[e.item].push_back(&e);
  }

  const int k = std::min({options.rank, n_users, n_items});
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> init(-0.1, 0.1);
  model.P_.resize(n_users, k);
  model.Q_.resize(n_items, k);
  for (int r = 0; r < n_users; ++r)
    for (int c = 0; c < k; ++c) model.P_(r, c) = init(rng);
  for (int r = 0; r < n_items; ++r)
    for (int c = 0; c < k; ++c) model.Q_(r, c) = init(rng);

  TrainingTrace& trace = model.trace_;
  trace.objective.push_back(
      Objective(entries, model.P_, model.Q_, options.lambda));
  for (int it = 0; it < options.iterations; ++it) {
    SolveBlock(by_user, true, model.Q_, options.lambda, model.P_);
    trace.objective.push_back(
        Objective(entries, model.P_, model.Q_, options.lambda));
    SolveBlock(by_item, false, model.P_, options.lambda, model.Q_);
    trace.objective.push_back(
        Objective(entries, model.P_, model.Q_, options.lambda));
    trace.rmse.push_back(Rmse(entries, model.P_, model.Q_));
  }
  return model;
}

}  // namespace nutrivision
