#pragma once

#include <nyprox/dataio.hpp>

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>

namespace nyprox {

/// Row oracle over a symmetric proximity matrix that may never be materialized.
class ProximitySource {
public:
  virtual ~ProximitySource() = default;

  virtual Index size() const = 0;
  virtual ProximityKind kind() const = 0;
  /// Writes entries (i, cols[k]) into out[k].
  virtual void row(Index i, std::span<const Index> cols, std::span<double> out) const = 0;
};

class DenseSource final : public ProximitySource {
public:
  explicit DenseSource(const ProximityMatrix& m) : m_(&m) {}

  Index size() const override { return m_->size(); }
  ProximityKind kind() const override { return m_->kind; }
  void row(Index i, std::span<const Index> cols, std::span<double> out) const override;

private:
  const ProximityMatrix* m_;
};

/// Entries computed on demand by an element function.
class FunctionSource final : public ProximitySource {
public:
  using Element = std::function<double(Index, Index)>;

  FunctionSource(Index n, ProximityKind kind, Element element)
      : n_(n), kind_(kind), element_(std::move(element)) {}

  Index size() const override { return n_; }
  ProximityKind kind() const override { return kind_; }
  void row(Index i, std::span<const Index> cols, std::span<double> out) const override;

private:
  Index n_;
  ProximityKind kind_;
  Element element_;
};

/// Squared surface distances of a ball geometry, computed on demand.
class BallSource final : public ProximitySource {
public:
  explicit BallSource(std::shared_ptr<const BallGeometry> geometry) : geometry_(std::move(geometry)) {}

  Index size() const override { return geometry_->size(); }
  ProximityKind kind() const override { return ProximityKind::SquaredDissimilarity; }
  void row(Index i, std::span<const Index> cols, std::span<double> out) const override;

private:
  std::shared_ptr<const BallGeometry> geometry_;
};

/// Decorator counting every entry handed out by the wrapped source.
class CountingSource final : public ProximitySource {
public:
  explicit CountingSource(const ProximitySource& inner) : inner_(&inner) {}

  Index size() const override { return inner_->size(); }
  ProximityKind kind() const override { return inner_->kind(); }
  void row(Index i, std::span<const Index> cols, std::span<double> out) const override;

  std::uint64_t entries() const { return entries_.load(); }
  void reset() { entries_ = 0; }

private:
  const ProximitySource* inner_;
  mutable std::atomic<std::uint64_t> entries_{0};
};

/// Gathers the rows x cols block of a source.
Matrix gather_block(const ProximitySource& source, std::span<const Index> rows, std::span<const Index> cols);

/// Materializes the whole matrix; O(N^2) memory, meant for small inputs and oracles.
ProximityMatrix materialize(const ProximitySource& source);

}  // namespace nyprox
