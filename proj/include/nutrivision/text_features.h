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

#ifndef NUTRIVISION_TEXT_FEATURES_H_
#define NUTRIVISION_TEXT_FEATURES_H_

#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nutrivision {

using StopWords = std::set<std::string, std::less<>>;

// Lowercases ASCII, splits on anything that is not an ASCII letter or digit
// (bytes >= 0x80 stay inside words), and drops terms shorter than two bytes
// or listed in `stop_words`.
std::vector<std::string> Tokenize(std::string_view text,
                                  const StopWords& stop_words = {});

// (term index, weight) pairs sorted by index.
using SparseVector = std::vector<std::pair<int, double>>;

double Norm(const SparseVector& v);
double Dot(const SparseVector& a, const SparseVector& b);

// a.b / (|a||b|); 0 when either vector is zero.
double Cosine(const SparseVector& a, const SparseVector& b);
double Cosine(std::span<const double> a, std::span<const double> b);

class TfIdfModel {
 public:
  // Term index for `term`, or -1.
  int IndexOf(std::string_view term) const;

  // Raw-count tf times idf over known terms, L2-normalized. Unknown terms are
  // ignored; text without known terms maps to the zero vector.
  SparseVector Vectorize(std::string_view text) const;

  size_t document_count() const { return n_docs_; }
  const std::vector<std::string>& terms() const { return terms_; }
  const std::vector<double>& idf() const { return idf_; }
  const std::vector<int>& document_frequency() const { return df_; }
  const std::vector<SparseVector>& doc_vectors() const { return doc_vectors_; }
  const StopWords& stop_words() const { return stop_words_; }

 private:
  friend TfIdfModel FitTfIdf(std::span<const std::string>, const StopWords&);

  SparseVector Weigh(const std::vector<std::string>& tokens) const;

  std::map<std::string, int, std::less<>> vocabulary_;
  std::vector<std::string> terms_;  // sorted; index = position
  std::vector<double> idf_;
  std::vector<int> df_;
  std::vector<SparseVector> doc_vectors_;
  size_t n_docs_ = 0;
  StopWords stop_words_;
};

// Smooth idf: ln((1 + N) / (1 + df)) + 1. Throws Error(kEmptyCorpus) when
// `documents` is empty.
TfIdfModel FitTfIdf(std::span<const std::string> documents,
                    const StopWords& stop_words = {});

}  // namespace nutrivision

#endif  // NUTRIVISION_TEXT_FEATURES_H_
