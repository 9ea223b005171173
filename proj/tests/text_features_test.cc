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

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include "nutrivision/error.h"
#include "oracles.h"

namespace nutrivision {
namespace {

using Tokens = std::vector<std::string>;

TEST(TokenizeTest, Examples) {
  EXPECT_EQ(Tokenize("Low-sugar, diabetic-friendly!"),
            (Tokens{"low", "sugar", "diabetic", "friendly"}));
  EXPECT_TRUE(Tokenize("").empty());
  EXPECT_TRUE(Tokenize("A a b").empty());
}

TEST(TokenizeTest, DigitsStopWordsAndUtf8) {
  EXPECT_EQ(Tokenize("Omega3 and B12 vitamins"),
            (Tokens{"omega3", "and", "b12", "vitamins"}));
  EXPECT_EQ(Tokenize("Omega3 and B12 vitamins", {"and"}),
            (Tokens{"omega3", "b12", "vitamins"}));
  // Non-ASCII bytes stay inside words.
  EXPECT_EQ(Tokenize("crème brûlée"), (Tokens{"crème", "brûlée"}));
}

TEST(TokenizeTest, MatchesOracleWordSplitter) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> ch(32, 126);
  std::uniform_int_distribution<int> len(0, 60);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string text;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) text.push_back(static_cast<char>(ch(rng)));
    ASSERT_EQ(Tokenize(text), oracle::Words(text)) << text;
  }
}

TEST(FitTfIdfTest, SmoothIdfExample) {
  const std::vector<std::string> docs = {"diabetes sugar", "protein gym"};
  const TfIdfModel model = FitTfIdf(docs);
  const int idx = model.IndexOf("diabetes");
  ASSERT_GE(idx, 0);
  EXPECT_EQ(model.document_frequency()[idx], 1);
  EXPECT_NEAR(model.idf()[idx], 1.405465, 1e-6);
  EXPECT_DOUBLE_EQ(model.idf()[idx], std::log(1.5) + 1.0);
  EXPECT_EQ(model.document_count(), 2u);
  EXPECT_EQ(model.terms(), (Tokens{"diabetes", "gym", "protein", "sugar"}));
}

TEST(FitTfIdfTest, TermInEveryDocumentHasUnitIdf) {
  const std::vector<std::string> docs = {"salt fiber", "salt iron", "salt"};
  const TfIdfModel model = FitTfIdf(docs);
  EXPECT_EQ(model.idf()[model.IndexOf("salt")], 1.0);
}

TEST(FitTfIdfTest, SingleDocumentHasUnitNorm) {
  const std::vector<std::string> docs = {"iron rich spinach iron lentils"};
  const TfIdfModel model = FitTfIdf(docs);
  EXPECT_NEAR(Norm(model.doc_vectors()[0]), 1.0, 1e-15);
}

TEST(FitTfIdfTest, EmptyDocumentIsZeroVector) {
  const std::vector<std::string> docs = {"", "fiber"};
  const TfIdfModel model = FitTfIdf(docs);
  EXPECT_TRUE(model.doc_vectors()[0].empty());
  EXPECT_NEAR(Norm(model.doc_vectors()[1]), 1.0, 1e-15);
}

TEST(FitTfIdfTest, EmptyCorpus) {
  try {
    FitTfIdf(std::vector<std::string>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyCorpus);
  }
}

TEST(FitTfIdfTest, StopWordsLeaveVocabulary) {
  const std::vector<std::string> docs = {"rice and beans", "beans with salt"};
  const TfIdfModel model = FitTfIdf(docs, {"and", "with"});
  EXPECT_EQ(model.IndexOf("and"), -1);
  EXPECT_EQ(model.terms(), (Tokens{"beans", "rice", "salt"}));
  EXPECT_EQ(model.Vectorize("and with"), SparseVector{});
}

TEST(FitTfIdfTest, MatchesBruteForceCounter) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<std::string> corpus = oracle::RandomCorpus(rng, 6);
    const TfIdfModel model = FitTfIdf(corpus);
    const oracle::TfIdfCounts want = oracle::BruteForceTfIdf(corpus);
    ASSERT_EQ(model.terms().size(), want.idf.size());
    for (const auto& [term, idf] : want.idf) {
      const int idx = model.IndexOf(term);
      ASSERT_GE(idx, 0) << term;
      ASSERT_EQ(model.document_frequency()[idx], want.df.at(term));
      ASSERT_NEAR(model.idf()[idx], idf, 1e-12);
    }
    for (size_t d = 0; d < corpus.size(); ++d) {
      const SparseVector& got = model.doc_vectors()[d];
      ASSERT_EQ(got.size(), want.vectors[d].size());
      for (const auto& [idx, w] : got) {
        ASSERT_NEAR(w, want.vectors[d].at(model.terms()[idx]), 1e-12);
      }
    }
  }
}

TEST(FitTfIdfTest, PairwiseSimilaritiesInUnitInterval) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<std::string> corpus = oracle::RandomCorpus(rng, 6);
    const TfIdfModel model = FitTfIdf(corpus);
    for (const auto& a : model.doc_vectors()) {
      for (const auto& b : model.doc_vectors()) {
        const double c = Cosine(a, b);
        ASSERT_GE(c, 0.0);
        ASSERT_LE(c, 1.0);
      }
    }
  }
}

TEST(VectorizeTest, UnknownTermsIgnored) {
  const std::vector<std::string> docs = {"diabetes sugar", "protein gym"};
  const TfIdfModel model = FitTfIdf(docs);
  EXPECT_TRUE(model.Vectorize("pizza pasta").empty());
  const SparseVector v = model.Vectorize("sugar pizza");
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].first, model.IndexOf("sugar"));
  EXPECT_DOUBLE_EQ(v[0].second, 1.0);
}

TEST(CosineTest, Examples) {
  const std::vector<double> a = {1, 1}, x = {1, 0}, y = {0, 1}, z = {0, 0};
  EXPECT_DOUBLE_EQ(Cosine(a, a), 1.0);
  EXPECT_DOUBLE_EQ(Cosine(x, y), 0.0);
  EXPECT_NEAR(Cosine(a, x), 0.707107, 1e-6);
  EXPECT_DOUBLE_EQ(Cosine(a, x), 1.0 / std::sqrt(2.0));
  EXPECT_EQ(Cosine(a, z), 0.0);
  const SparseVector sa = {{0, 1.0}, {1, 1.0}}, sx = {{0, 1.0}};
  EXPECT_DOUBLE_EQ(Cosine(sa, sx), 1.0 / std::sqrt(2.0));
  EXPECT_EQ(Cosine(sa, SparseVector{}), 0.0);
}

TEST(CosineTest, DenseAndSparseAgree) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> v(-1.0, 1.0);
  std::bernoulli_distribution keep(0.6);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> a(8, 0.0), b(8, 0.0);
    SparseVector sa, sb;
    for (int i = 0; i < 8; ++i) {
      if (keep(rng)) sa.emplace_back(i, a[i] = v(rng));
      if (keep(rng)) sb.emplace_back(i, b[i] = v(rng));
    }
    const double dense = Cosine(a, b);
    ASSERT_NEAR(dense, Cosine(sa, sb), 1e-12);
    ASSERT_GE(dense, -1.0);
    ASSERT_LE(dense, 1.0);
  }
}

}  // namespace
}  // namespace nutrivision
