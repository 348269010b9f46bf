#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "shiftlab/core/alphabet.hpp"

namespace shiftlab {

inline std::int64_t floor_mod(std::int64_t a, std::int64_t k) {
  const std::int64_t r = a % k;
  return r < 0 ? r + k : r;
}

/// Deterministic generator of the coordinates of one point of X.
/// Implementations must be immutable: at(n) is a pure function of n.
class SequenceSource {
 public:
  virtual ~SequenceSource() = default;
  virtual double at(std::int64_t n) const = 0;
  virtual std::optional<std::int64_t> period() const { return std::nullopt; }

  /// out[i] = at(first + i).
  virtual void fill(std::int64_t first, std::span<double> out) const {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(first + static_cast<std::int64_t>(i));
  }
};

class FunctionSource final : public SequenceSource {
 public:
  FunctionSource(std::function<double(std::int64_t)> fn, std::optional<std::int64_t> period)
      : fn_(std::move(fn)), period_(period) {}
  double at(std::int64_t n) const override { return fn_(n); }
  std::optional<std::int64_t> period() const override { return period_; }

 private:
  std::function<double(std::int64_t)> fn_;
  std::optional<std::int64_t> period_;
};

/// x_n = block[(n - phase) mod k], i.e. T^phase of the periodic point whose
/// coordinate n is block[n mod k].
class PeriodicSource final : public SequenceSource {
 public:
  PeriodicSource(std::vector<double> block, std::int64_t phase)
      : block_(std::move(block)), phase_(phase) {
    if (block_.empty()) throw DomainError("periodic block must be non-empty");
  }
  double at(std::int64_t n) const override {
    return block_[static_cast<std::size_t>(floor_mod(n - phase_, static_cast<std::int64_t>(block_.size())))];
  }
  std::optional<std::int64_t> period() const override {
    return static_cast<std::int64_t>(block_.size());
  }
  void fill(std::int64_t first, std::span<double> out) const override {
    const auto k = static_cast<std::int64_t>(block_.size());
    std::int64_t idx = floor_mod(first - phase_, k);
    for (double& v : out) {
      v = block_[static_cast<std::size_t>(idx)];
      if (++idx == k) idx = 0;
    }
  }

 private:
  std::vector<double> block_;
  std::int64_t phase_;
};

/// A base sequence with finitely many coordinates overridden.
class PatchedSource final : public SequenceSource {
 public:
  PatchedSource(std::shared_ptr<const SequenceSource> base, std::int64_t base_offset,
                std::map<std::int64_t, double> patches)
      : base_(std::move(base)), base_offset_(base_offset), patches_(std::move(patches)) {}
  double at(std::int64_t n) const override {
    if (auto it = patches_.find(n); it != patches_.end()) return it->second;
    return base_->at(n - base_offset_);
  }

 private:
  std::shared_ptr<const SequenceSource> base_;
  std::int64_t base_offset_;
  std::map<std::int64_t, double> patches_;
};

/// A point x = (..., x_{-1}, x_0, x_1, ...) of the bilateral product space.
/// Coordinates are generated lazily and deterministically; copies share the
/// immutable generator, and shifting only moves an index offset.
class BilateralSequence {
 public:
  BilateralSequence() = default;
  BilateralSequence(AlphabetSpec alphabet, std::shared_ptr<const SequenceSource> source,
                    std::int64_t offset = 0)
      : alphabet_(alphabet), source_(std::move(source)), offset_(offset) {}

  static BilateralSequence from_function(AlphabetSpec alphabet,
                                         std::function<double(std::int64_t)> fn,
                                         std::optional<std::int64_t> period = std::nullopt) {
    return {alphabet, std::make_shared<FunctionSource>(std::move(fn), period)};
  }

  static BilateralSequence periodic(AlphabetSpec alphabet, std::vector<double> block,
                                    std::int64_t phase = 0) {
    for (double s : block)
      if (!alphabet.contains(s)) throw DomainError("block symbol outside " + alphabet.describe());
    return {alphabet, std::make_shared<PeriodicSource>(std::move(block), phase)};
  }

  static BilateralSequence constant(AlphabetSpec alphabet, double symbol) {
    return periodic(alphabet, {symbol});
  }

  const AlphabetSpec& alphabet() const { return alphabet_; }
  bool valid() const { return static_cast<bool>(source_); }

  double coordinate(std::int64_t n) const { return source_->at(n - offset_); }
  double operator[](std::int64_t n) const { return coordinate(n); }

  /// out[i] = coordinate(first + i).
  void realize(std::int64_t first, std::span<double> out) const {
    source_->fill(first - offset_, out);
  }

  std::optional<std::int64_t> period() const { return source_->period(); }

  /// T^k x, with (T^k x)_n = x_{n-k}.
  BilateralSequence shifted(std::int64_t k) const { return {alphabet_, source_, offset_ + k}; }

  BilateralSequence with_coordinate(std::int64_t n, double value) const {
    return with_coordinates({{n, value}});
  }

  BilateralSequence with_coordinates(std::map<std::int64_t, double> patches) const {
    for (const auto& [n, v] : patches)
      if (!alphabet_.contains(v)) throw DomainError("patched symbol outside " + alphabet_.describe());
    return {alphabet_, std::make_shared<PatchedSource>(source_, offset_, std::move(patches))};
  }

 private:
  AlphabetSpec alphabet_;
  std::shared_ptr<const SequenceSource> source_;
  std::int64_t offset_ = 0;
};

/// Realised coordinates of one sequence over the index range [lo, hi].
class CoordinateWindow {
 public:
  CoordinateWindow() = default;
  CoordinateWindow(const BilateralSequence& x, std::int64_t lo, std::int64_t hi)
      : lo_(lo), values_(static_cast<std::size_t>(hi - lo + 1)) {
    x.realize(lo, values_);
  }

  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return lo_ + static_cast<std::int64_t>(values_.size()) - 1; }
  double operator()(std::int64_t n) const { return values_[static_cast<std::size_t>(n - lo_)]; }
  const double* data_at(std::int64_t n) const { return values_.data() + (n - lo_); }

 private:
  std::int64_t lo_ = 0;
  std::vector<double> values_;
};

}  // namespace shiftlab
