// Copyright 2026 The tagforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TAGFORGE_FOLKSONOMY_HPP_
#define TAGFORGE_FOLKSONOMY_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tagforge/errors.hpp"
#include "tagforge/rng.hpp"

namespace tagforge {

// Ordered, fixed set of interest categories. The position of a label is
// the component index of every Profile built over this set.
class CategorySet {
 public:
  explicit CategorySet(std::vector<std::string> labels)
      : labels_(std::move(labels)) {
    if (labels_.size() < 2) {
      throw ValidationError("a category set needs at least 2 labels, got " +
                            std::to_string(labels_.size()));
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i].empty()) {
        throw ValidationError("empty category label at position " +
                              std::to_string(i));
      }
      if (!index_.emplace(labels_[i], i).second) {
        throw ValidationError("duplicate category label '" + labels_[i] + "'");
      }
    }
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t index) const { return labels_[index]; }

  std::optional<std::size_t> Find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool operator==(const CategorySet& other) const {
    return labels_ == other.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::map<std::string, std::size_t> index_;
};

using CategorySetPtr = std::shared_ptr<const CategorySet>;

inline CategorySetPtr MakeCategorySet(std::vector<std::string> labels) {
  return std::make_shared<const CategorySet>(std::move(labels));
}

// One tagging event. `category` is a 0-based index into the CategorySet.
struct Annotation {
  std::string user;
  std::string item;
  std::size_t category = 0;

  friend auto operator<=>(const Annotation&, const Annotation&) = default;
};

// Interned form used internally; indices refer to Folksonomy::users()
// and Folksonomy::items(), which are sorted by identifier.
struct IndexedAnnotation {
  std::uint32_t user;
  std::uint32_t item;
  std::uint32_t category;
};

// The annotation multiset of a folksonomy together with its derived user
// and item sets. Immutable after construction.
class Folksonomy {
 public:
  Folksonomy(CategorySetPtr categories, std::span<const Annotation> annotations)
      : categories_(std::move(categories)) {
    if (!categories_) throw ValidationError("folksonomy without categories");
    if (annotations.empty()) {
      throw ValidationError("a folksonomy needs at least one annotation");
    }
    const std::size_t num_categories = categories_->size();
    std::set<std::string_view> users;
    std::set<std::string_view> items;
    for (const Annotation& a : annotations) {
      if (a.category >= num_categories) {
        throw ValidationError("category index " + std::to_string(a.category) +
                              " out of range for " +
                              std::to_string(num_categories) + " categories");
      }
      users.insert(a.user);
      items.insert(a.item);
    }
    users_.assign(users.begin(), users.end());
    items_.assign(items.begin(), items.end());

    user_counts_.assign(users_.size() * num_categories, 0);
    item_counts_.assign(items_.size() * num_categories, 0);
    annotations_.reserve(annotations.size());
    for (const Annotation& a : annotations) {
      const auto u = static_cast<std::uint32_t>(*FindUser(a.user));
      const auto i = static_cast<std::uint32_t>(*FindItem(a.item));
      const auto c = static_cast<std::uint32_t>(a.category);
      annotations_.push_back({u, i, c});
      ++user_counts_[u * num_categories + c];
      ++item_counts_[i * num_categories + c];
    }
  }

  const CategorySet& categories() const { return *categories_; }
  const CategorySetPtr& category_set() const { return categories_; }
  std::size_t num_categories() const { return categories_->size(); }

  const std::vector<std::string>& users() const { return users_; }
  const std::vector<std::string>& items() const { return items_; }
  std::span<const IndexedAnnotation> annotations() const {
    return annotations_;
  }
  std::size_t num_annotations() const { return annotations_.size(); }

  std::optional<std::size_t> FindUser(std::string_view user) const {
    return FindSorted(users_, user);
  }
  std::optional<std::size_t> FindItem(std::string_view item) const {
    return FindSorted(items_, item);
  }

  // Per-category annotation counts of a user / item (by index).
  std::span<const std::uint64_t> UserCounts(std::size_t user) const {
    return {user_counts_.data() + user * num_categories(), num_categories()};
  }
  std::span<const std::uint64_t> ItemCounts(std::size_t item) const {
    return {item_counts_.data() + item * num_categories(), num_categories()};
  }

  Annotation Expand(const IndexedAnnotation& a) const {
    return {users_[a.user], items_[a.item], a.category};
  }

  std::vector<Annotation> ToAnnotations() const {
    std::vector<Annotation> out;
    out.reserve(annotations_.size());
    for (const IndexedAnnotation& a : annotations_) out.push_back(Expand(a));
    return out;
  }

 private:
  static std::optional<std::size_t> FindSorted(
      const std::vector<std::string>& sorted, std::string_view key) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), key);
    if (it == sorted.end() || *it != key) return std::nullopt;
    return static_cast<std::size_t>(it - sorted.begin());
  }

  CategorySetPtr categories_;
  std::vector<std::string> users_;
  std::vector<std::string> items_;
  std::vector<IndexedAnnotation> annotations_;
  std::vector<std::uint64_t> user_counts_;
  std::vector<std::uint64_t> item_counts_;
};

namespace internal {

inline std::vector<std::string> SplitTabs(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      return fields;
    }
    fields.emplace_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

inline void StripCarriageReturn(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

inline std::ifstream OpenForRead(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

inline std::ofstream OpenForWrite(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace internal

// Reads a category file: one label per line, order significant. Blank
// lines are skipped.
inline CategorySetPtr LoadCategories(const std::string& path) {
  std::ifstream in = internal::OpenForRead(path);
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    internal::StripCarriageReturn(line);
    if (!line.empty()) labels.push_back(line);
  }
  return MakeCategorySet(std::move(labels));
}

inline void WriteCategories(const CategorySet& categories,
                            const std::string& path) {
  std::ofstream out = internal::OpenForWrite(path);
  for (const std::string& label : categories.labels()) out << label << '\n';
  if (!out) throw IoError("failed writing '" + path + "'");
}

// Parses the annotation TSV. The header must start with the columns
// user, item, category; further columns (timestamps and the like) are
// accepted and ignored, but every row must have the header's column count.
inline Folksonomy ParseAnnotations(std::istream& in, CategorySetPtr categories,
                                   const std::string& source = "<stream>") {
  std::string line;
  if (!std::getline(in, line)) {
    throw ValidationError("annotation file '" + source + "' is empty");
  }
  internal::StripCarriageReturn(line);
  const std::vector<std::string> header = internal::SplitTabs(line);
  if (header.size() < 3 || header[0] != "user" || header[1] != "item" ||
      header[2] != "category") {
    throw ParseError("expected header 'user<TAB>item<TAB>category' in '" +
                         source + "'",
                     1);
  }
  std::vector<Annotation> annotations;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    internal::StripCarriageReturn(line);
    if (line.empty()) continue;
    std::vector<std::string> fields = internal::SplitTabs(line);
    if (fields.size() != header.size()) {
      throw ParseError("expected " + std::to_string(header.size()) +
                           " tab-separated columns, found " +
                           std::to_string(fields.size()),
                       line_number);
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw ParseError("empty user or item identifier", line_number);
    }
    const std::optional<std::size_t> category = categories->Find(fields[2]);
    if (!category) {
      throw ValidationError("line " + std::to_string(line_number) +
                            ": unknown category '" + fields[2] + "'");
    }
    annotations.push_back(
        {std::move(fields[0]), std::move(fields[1]), *category});
  }
  if (annotations.empty()) {
    throw ValidationError("annotation file '" + source +
                          "' contains no annotations");
  }
  return Folksonomy(std::move(categories), annotations);
}

inline Folksonomy LoadAnnotations(const std::string& path,
                                  CategorySetPtr categories) {
  std::ifstream in = internal::OpenForRead(path);
  return ParseAnnotations(in, std::move(categories), path);
}

inline void WriteAnnotations(const Folksonomy& f, const std::string& path) {
  std::ofstream out = internal::OpenForWrite(path);
  out << "user\titem\tcategory\n";
  for (const IndexedAnnotation& a : f.annotations()) {
    out << f.users()[a.user] << '\t' << f.items()[a.item] << '\t'
        << f.categories().label(a.category) << '\n';
  }
  if (!out) throw IoError("failed writing '" + path + "'");
}

// FNV-1a over the sorted annotation rows: identifies the annotation
// multiset independent of row order.
inline std::uint64_t DatasetFingerprint(const Folksonomy& f) {
  std::vector<Annotation> rows = f.ToAnnotations();
  std::sort(rows.begin(), rows.end());
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto mix = [&hash](std::string_view bytes) {
    for (unsigned char c : bytes) {
      hash ^= c;
      hash *= 0x100000001b3ULL;
    }
  };
  for (const std::string& label : f.categories().labels()) {
    mix(label);
    mix("\n");
  }
  for (const Annotation& a : rows) {
    mix(a.user);
    mix("\t");
    mix(a.item);
    mix("\t");
    mix(f.categories().label(a.category));
    mix("\n");
  }
  return hash;
}

// Parameters of the synthetic folksonomy generator.
//
// Each user draws a latent preference PMF from Dirichlet(alpha) with
// alpha_l = concentration * L * m_l, where m is the base measure
// m_l ∝ (l + 1)^-skew. skew = 0 is the symmetric Dirichlet with every
// alpha_l = concentration; a positive skew makes some categories
// globally more popular, which gives a non-uniform population profile.
struct SynthSpec {
  std::size_t num_users = 200;
  std::size_t num_items = 2000;
  std::size_t num_categories = 11;
  std::size_t annotations_per_user = 100;
  double concentration = 0.3;
  double skew = 0.0;
  std::uint64_t seed = 1;
};

namespace internal {

inline std::string PaddedId(char prefix, std::size_t value,
                            std::size_t count) {
  const std::size_t width = std::to_string(count > 0 ? count - 1 : 0).size();
  std::string digits = std::to_string(value);
  return std::string(1, prefix) + std::string(width - digits.size(), '0') +
         digits;
}

// Probability that a synthetic annotation is tagged with the category
// the item was chosen for, rather than a fresh draw from the user's PMF.
inline constexpr double kSynthHomeTagProbability = 0.7;

}  // namespace internal

inline Folksonomy Synthesize(const SynthSpec& spec) {
  if (spec.num_users == 0 || spec.num_items == 0 ||
      spec.annotations_per_user == 0) {
    throw ValidationError("synthesis counts must be positive");
  }
  if (spec.num_categories < 2) {
    throw ValidationError("synthesis needs at least 2 categories");
  }
  if (!(spec.concentration > 0.0) || !std::isfinite(spec.concentration)) {
    throw ValidationError("synthesis concentration must be positive");
  }
  if (!(spec.skew >= 0.0) || !std::isfinite(spec.skew)) {
    throw ValidationError("synthesis skew must be non-negative");
  }
  const std::size_t L = spec.num_categories;
  std::vector<std::string> labels;
  for (std::size_t l = 0; l < L; ++l) {
    labels.push_back(internal::PaddedId('c', l, L));
  }
  CategorySetPtr categories = MakeCategorySet(std::move(labels));

  std::vector<double> alpha(L);
  double base_sum = 0.0;
  for (std::size_t l = 0; l < L; ++l) {
    alpha[l] = std::pow(static_cast<double>(l + 1), -spec.skew);
    base_sum += alpha[l];
  }
  for (double& a : alpha) {
    a = spec.concentration * static_cast<double>(L) * a / base_sum;
  }

  // Item j is homed in category j mod L.
  std::vector<std::vector<std::size_t>> items_by_category(L);
  for (std::size_t j = 0; j < spec.num_items; ++j) {
    items_by_category[j % L].push_back(j);
  }

  SplitMix64 rng(spec.seed);
  std::vector<Annotation> annotations;
  annotations.reserve(spec.num_users * spec.annotations_per_user);
  for (std::size_t u = 0; u < spec.num_users; ++u) {
    const std::string user = internal::PaddedId('u', u, spec.num_users);
    const std::vector<double> preference = SampleDirichlet(alpha, rng);
    for (std::size_t k = 0; k < spec.annotations_per_user; ++k) {
      const std::size_t home = SampleCategorical(preference, rng);
      const std::vector<std::size_t>& pool = items_by_category[home];
      const std::size_t item =
          pool.empty() ? static_cast<std::size_t>(rng.NextBelow(spec.num_items))
                       : pool[rng.NextBelow(pool.size())];
      std::size_t category = home;
      if (rng.NextDouble() >= internal::kSynthHomeTagProbability) {
        category = SampleCategorical(preference, rng);
      }
      annotations.push_back(
          {user, internal::PaddedId('i', item, spec.num_items), category});
    }
  }
  return Folksonomy(std::move(categories), annotations);
}

// Table-1 style summary of a folksonomy.
struct StatsReport {
  std::size_t num_users = 0;
  std::size_t num_items = 0;
  std::size_t num_categories = 0;
  std::size_t num_annotations = 0;
  // Distinct (item, category) pairs.
  std::size_t num_item_category_tuples = 0;
  double avg_tags_per_user = 0.0;
  double avg_categories_per_item = 0.0;
};

inline StatsReport DatasetStats(const Folksonomy& f) {
  StatsReport report;
  report.num_users = f.users().size();
  report.num_items = f.items().size();
  report.num_categories = f.num_categories();
  report.num_annotations = f.num_annotations();
  for (std::size_t i = 0; i < f.items().size(); ++i) {
    for (std::uint64_t count : f.ItemCounts(i)) {
      if (count > 0) ++report.num_item_category_tuples;
    }
  }
  report.avg_tags_per_user = static_cast<double>(report.num_annotations) /
                             static_cast<double>(report.num_users);
  report.avg_categories_per_item =
      static_cast<double>(report.num_item_category_tuples) /
      static_cast<double>(report.num_items);
  return report;
}

inline nlohmann::json ToJson(const StatsReport& s) {
  return {{"num_users", s.num_users},
          {"num_items", s.num_items},
          {"num_categories", s.num_categories},
          {"num_annotations", s.num_annotations},
          {"num_item_category_tuples", s.num_item_category_tuples},
          {"avg_tags_per_user", s.avg_tags_per_user},
          {"avg_categories_per_item", s.avg_categories_per_item}};
}

}  // namespace tagforge

#endif  // TAGFORGE_FOLKSONOMY_HPP_
