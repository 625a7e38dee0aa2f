// Copyright 2026 The subpar Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SUBPAR_SUBSET_H_
#define SUBPAR_SUBSET_H_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "subpar/error.h"

namespace subpar {

using ElementId = int;

inline constexpr int kWordBits = 64;

inline std::size_t WordsFor(int n) {
  return static_cast<std::size_t>((n + kWordBits - 1) / kWordBits);
}

// Mask of the bits of the last word that correspond to real elements.
inline std::uint64_t TailMask(int n) {
  const int rem = n % kWordBits;
  return rem == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << rem) - 1;
}

// Read-only view of a subset of the ground set {0, ..., n-1} stored as
// packed 64-bit words. Views are what set functions consume, so a batch of
// queries can live in one contiguous buffer.
class SubsetView {
 public:
  SubsetView(std::span<const std::uint64_t> words, int n)
      : words_(words), n_(n) {}

  int n() const { return n_; }
  std::span<const std::uint64_t> words() const { return words_; }

  bool Contains(ElementId u) const {
    return (words_[static_cast<std::size_t>(u / kWordBits)] >>
            (u % kWordBits)) & 1U;
  }

  int Count() const {
    int count = 0;
    for (std::uint64_t w : words_) count += std::popcount(w);
    return count;
  }

  bool Empty() const {
    for (std::uint64_t w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  // True when no bit at or above n is set.
  bool IsValid() const {
    if (words_.size() != WordsFor(n_)) return false;
    if (words_.empty()) return true;
    return (words_.back() & ~TailMask(n_)) == 0;
  }

  std::vector<ElementId> Members() const {
    std::vector<ElementId> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int b = std::countr_zero(bits);
        out.push_back(static_cast<ElementId>(w * kWordBits + b));
        bits &= bits - 1;
      }
    }
    return out;
  }

  bool IsSubsetOf(SubsetView other) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if ((words_[w] & ~other.words_[w]) != 0) return false;
    }
    return true;
  }

  friend bool operator==(SubsetView a, SubsetView b) {
    if (a.n_ != b.n_) return false;
    for (std::size_t w = 0; w < a.words_.size(); ++w) {
      if (a.words_[w] != b.words_[w]) return false;
    }
    return true;
  }

 private:
  std::span<const std::uint64_t> words_;
  int n_;
};

// Owning subset of {0, ..., n-1}.
class Subset {
 public:
  Subset() = default;
  explicit Subset(int n) : n_(n), words_(WordsFor(n), 0) {
    if (n < 0) throw Error(ErrorCode::kInvalidArgument, "negative n");
  }

  static Subset Full(int n) {
    Subset s(n);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    if (!s.words_.empty()) s.words_.back() &= TailMask(n);
    return s;
  }

  static Subset FromMembers(int n, std::span<const ElementId> members) {
    Subset s(n);
    for (ElementId u : members) s.Insert(u);
    return s;
  }
  static Subset FromMembers(int n, std::initializer_list<ElementId> members) {
    return FromMembers(n, std::span<const ElementId>(members.begin(),
                                                     members.size()));
  }

  // Bit u of `mask` selects element u. Requires n <= 64.
  static Subset FromMask(int n, std::uint64_t mask) {
    if (n > kWordBits) {
      throw Error(ErrorCode::kInvalidArgument, "FromMask requires n <= 64");
    }
    Subset s(n);
    if (n > 0) s.words_[0] = mask;
    if (!s.view().IsValid()) {
      throw Error(ErrorCode::kInvalidElement,
                  "mask references an element >= n=" + std::to_string(n));
    }
    return s;
  }

  static Subset FromView(SubsetView v) {
    Subset s;
    s.n_ = v.n();
    s.words_.assign(v.words().begin(), v.words().end());
    return s;
  }

  int n() const { return n_; }
  SubsetView view() const { return SubsetView(words_, n_); }
  operator SubsetView() const { return view(); }  // NOLINT
  std::span<const std::uint64_t> words() const { return words_; }

  bool Contains(ElementId u) const {
    CheckElement(u);
    return view().Contains(u);
  }
  void Insert(ElementId u) {
    CheckElement(u);
    words_[static_cast<std::size_t>(u / kWordBits)] |= std::uint64_t{1}
                                                       << (u % kWordBits);
  }
  void Erase(ElementId u) {
    CheckElement(u);
    words_[static_cast<std::size_t>(u / kWordBits)] &=
        ~(std::uint64_t{1} << (u % kWordBits));
  }
  Subset With(ElementId u) const {
    Subset s = *this;
    s.Insert(u);
    return s;
  }
  Subset Without(ElementId u) const {
    Subset s = *this;
    s.Erase(u);
    return s;
  }

  int Count() const { return view().Count(); }
  bool Empty() const { return view().Empty(); }
  std::vector<ElementId> Members() const { return view().Members(); }
  bool IsSubsetOf(const Subset& other) const {
    return view().IsSubsetOf(other.view());
  }

  // Elements of *this that are not in `other`.
  Subset Minus(const Subset& other) const {
    Subset s = *this;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      s.words_[w] &= ~other.words_[w];
    }
    return s;
  }

  std::string ToString() const {
    std::string out = "{";
    bool first = true;
    for (ElementId u : Members()) {
      if (!first) out += ",";
      out += std::to_string(u);
      first = false;
    }
    return out + "}";
  }

  friend bool operator==(const Subset& a, const Subset& b) {
    return a.n_ == b.n_ && a.words_ == b.words_;
  }

 private:
  void CheckElement(ElementId u) const {
    if (u < 0 || u >= n_) {
      throw Error(ErrorCode::kInvalidElement,
                  "element " + std::to_string(u) + " outside ground set of size " +
                      std::to_string(n_));
    }
  }

  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

// A batch of subset queries packed into one buffer; one batch is one
// adaptive round when handed to a SetOracle.
class QueryBatch {
 public:
  explicit QueryBatch(int n) : n_(n), stride_(WordsFor(n)) {}

  int n() const { return n_; }
  std::size_t size() const { return count_; }
  bool empty() const { return size() == 0; }

  void Reserve(std::size_t queries) { data_.reserve(queries * stride_); }

  // Appends the empty set and returns its index.
  std::size_t AppendEmpty() {
    data_.resize(data_.size() + stride_, 0);
    ++count_;
    return size() - 1;
  }

  std::size_t Append(SubsetView s) {
    if (s.n() != n_) {
      throw Error(ErrorCode::kInvalidElement,
                  "query over ground set of size " + std::to_string(s.n()) +
                      " in batch for n=" + std::to_string(n_));
    }
    data_.insert(data_.end(), s.words().begin(), s.words().end());
    ++count_;
    return size() - 1;
  }

  // Appends the subset encoded by `mask`; requires n <= 64. No range check,
  // IsValid() on the view reports stray bits.
  std::size_t AppendMask(std::uint64_t mask) {
    const std::size_t idx = AppendEmpty();
    if (stride_ > 0) data_[idx * stride_] = mask;
    return idx;
  }

  void Insert(std::size_t query, ElementId u) {
    data_[query * stride_ + static_cast<std::size_t>(u / kWordBits)] |=
        std::uint64_t{1} << (u % kWordBits);
  }
  void Erase(std::size_t query, ElementId u) {
    data_[query * stride_ + static_cast<std::size_t>(u / kWordBits)] &=
        ~(std::uint64_t{1} << (u % kWordBits));
  }

  SubsetView operator[](std::size_t i) const {
    return SubsetView(
        std::span<const std::uint64_t>(data_.data() + i * stride_, stride_),
        n_);
  }

 private:
  int n_;
  std::size_t stride_;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> data_;
};

}  // namespace subpar

#endif  // SUBPAR_SUBSET_H_
