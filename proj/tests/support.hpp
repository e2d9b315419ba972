// Copyright (C) 2026 The vcot authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "vcot/gateway.hpp"
#include "vcot/mock_backend.hpp"
#include "vcot/png.hpp"
#include "vcot/templates.hpp"
#include "vcot/types.hpp"

namespace vcot::testing {

inline const std::filesystem::path kSourceDir = VCOT_SOURCE_DIR;
inline const std::filesystem::path kFixtureDir = kSourceDir / "data" / "fixtures";
inline const std::filesystem::path kGoldenDir = kSourceDir / "tests" / "golden";

inline Bytes solid_png(std::uint8_t r, std::uint8_t g, std::uint8_t b) { return png::encode_solid(8, 8, {r, g, b}); }

inline VisualAsset dataset_asset(int k) {
  return VisualAsset::from_dataset(solid_png(static_cast<std::uint8_t>(17 * k + 3), static_cast<std::uint8_t>(101 + k),
                                             static_cast<std::uint8_t>(250 - 7 * k)));
}

inline const std::vector<std::string>& story_texts() {
  static const std::vector<std::string> texts{
      "The family packed the car for the beach.", "The kids ran into the cold waves.",
      "Dad built a sandcastle with a tall tower.", "Dark clouds rolled over the water.",
      "Everyone drove home tired and sandy."};
  return texts;
}

inline Sequence make_sequence(std::size_t n, TaskKind task = TaskKind::storytelling, std::string id = "seq") {
  Sequence s;
  s.id = std::move(id);
  s.task = task;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& texts = story_texts();
    std::string text = i < texts.size() ? texts[i] : "Extra step number " + std::to_string(i) + ".";
    s.elements.emplace_back(std::move(text), dataset_asset(static_cast<int>(i)));
  }
  return s;
}

inline std::shared_ptr<ResponseCache> memory_cache() { return std::make_shared<ResponseCache>(); }

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() / "vcot-test-XXXXXX").string();
    if (!::mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
    path_ = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Reference arithmetic for the mock backend, written from its description
/// and sharing no code with the library.
namespace oracle {

inline std::uint32_t fnv1a(const std::string& s) {
  std::uint32_t h = 2166136261u;
  for (unsigned char c : s) {
    h ^= c;
    h *= 16777619u;
  }
  return h;
}

using Vec = std::vector<long double>;

inline Vec embed(const std::string& text) {
  Vec v(64, 0.0L);
  std::string word;
  auto emit = [&] {
    if (!word.empty()) v[fnv1a(word) % 64] += 1.0L;
    word.clear();
  };
  for (char ch : text) {
    const bool alnum = (ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9') || (ch >= 'A' && ch <= 'Z');
    if (alnum)
      word.push_back(ch >= 'A' && ch <= 'Z' ? static_cast<char>(ch - 'A' + 'a') : ch);
    else
      emit();
  }
  emit();
  return v;
}

inline long double cosine(const Vec& a, const Vec& b) {
  long double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return dot / std::sqrt(na * nb);
}

/// First index within 1e-12 of the maximum; NaN entries are skipped.
inline std::size_t argmax(const std::vector<long double>& s) {
  long double best = -std::numeric_limits<long double>::infinity();
  for (auto x : s)
    if (!std::isnan(x) && x > best) best = x;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!std::isnan(s[i]) && s[i] >= best - 1e-12L) return i;
  return s.size();
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r\n") - b + 1);
}

}  // namespace oracle

/// Random bag-of-words sentences over a small vocabulary so overlaps are common.
class WordSource {
 public:
  explicit WordSource(std::uint64_t seed) : rng_(seed) {}

  std::string sentence(int min_words = 1, int max_words = 6) {
    static const std::vector<std::string> vocab{"red",  "kite", "beach", "wave", "dog",   "cake",
                                                "sand", "tower", "storm", "car",  "happy", "night"};
    std::uniform_int_distribution<int> len(min_words, max_words);
    std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
    std::string out;
    for (int i = len(rng_); i > 0; --i) {
      if (!out.empty()) out += ' ';
      out += vocab[pick(rng_)];
    }
    return out;
  }

 private:
  std::mt19937_64 rng_;
};

/// Deterministic hash of a tuple of strings, for seeding per-call randomness.
inline std::uint64_t mix(const std::string& a, double b, int c, std::uint64_t salt) {
  std::uint64_t h = salt * 0x9E3779B97F4A7C15ull;
  for (unsigned char ch : a) h = (h ^ ch) * 0x100000001B3ull;
  h ^= static_cast<std::uint64_t>(b * 1000.0) * 0xC2B2AE3D27D4EB4Full;
  h ^= static_cast<std::uint64_t>(c + 1) * 0x165667B19E3779F9ull;
  return h;
}

}  // namespace vcot::testing
