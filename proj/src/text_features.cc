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

#include "nutrivision/text_features.h"

#include <algorithm>
#include <cmath>

#include "nutrivision/error.h"

namespace nutrivision {

namespace {

bool IsWordByte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c >= 0x80;
}

}  // namespace

std::vector<std::string> Tokenize(std::string_view text,
                                  const StopWords& stop_words) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (current.size() >= 2 && !stop_words.contains(current)) {
      tokens.push_back(current);
    }
    current.clear();
  };
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (IsWordByte(c)) {
      current.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a')
                                             : ch);
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

double Norm(const SparseVector& v) {
  double s = 0.0;
  for (const auto& [i, w] : v) s += w * w;
  return std::sqrt(s);
}

double Dot(const SparseVector& a, const SparseVector& b) {
  double s = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      s += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return s;
}

double Cosine(const SparseVector& a, const SparseVector& b) {
  const double na = Norm(a);
  const double nb = Norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(Dot(a, b) / (na * nb), -1.0, 1.0);
}

double Cosine(std::span<const double> a, std::span<const double> b) {
  const size_t n = std::min(a.size(), b.size());
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t i = 0; i < n; ++i) dot += a[i] * b[i];
  for (double x : a) na += x * x;
  for (double x : b) nb += x * x;
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

int TfIdfModel::IndexOf(std::string_view term) const {
  auto it = vocabulary_.find(term);
  return it == vocabulary_.end() ? -1 : it->second;
}

SparseVector TfIdfModel::Weigh(const std::vector<std::string>& tokens) const {
  std::map<int, int> counts;
  for (const std::string& t : tokens) {
    const int idx = IndexOf(t);
    if (idx >= 0) ++counts[idx];
  }
  SparseVector v;
  v.reserve(counts.size());
  for (const auto& [idx, count] : counts) {
    v.emplace_back(idx, count * idf_[idx]);
  }
  const double norm = Norm(v);
  if (norm > 0.0) {
    for (auto& entry : v) entry.second /= norm;
  }
  return v;
}

SparseVector TfIdfModel::Vectorize(std::string_view text) const {
  return Weigh(Tokenize(text, stop_words_));
}

TfIdfModel FitTfIdf(std::span<const std::string> documents,
                    const StopWords& stop_words) {
  if (documents.empty()) {
    throw Error(ErrorCode::kEmptyCorpus, "TF-IDF needs at least one document");
  }
  TfIdfModel model;
  model.stop_words_ = stop_words;
  model.n_docs_ = documents.size();

  std::vector<std::vector<std::string>> tokenized;
  tokenized.reserve(documents.size());
  std::map<std::string, int> df;
  for (const std::string& doc : documents) {
    tokenized.push_back(Tokenize(doc, stop_words));
    std::set<std::string> unique(tokenized.back().begin(),
                                 tokenized.back().end());
    for (const std::string& t : unique) ++df[t];
  }

  const double n = static_cast<double>(model.n_docs_);
  for (const auto& [term, count] : df) {
    model.vocabulary_.emplace(term, static_cast<int>(model.terms_.size()));
    model.terms_.push_back(term);
    model.df_.push_back(count);
    model.idf_.push_back(std::log((1.0 + n) / (1.0 + count)) + 1.0);
  }
  model.doc_vectors_.reserve(tokenized.size());
  for (const auto& tokens : tokenized) {
    model.doc_vectors_.push_back(model.Weigh(tokens));
  }
  return model;
}

}  // namespace nutrivision
