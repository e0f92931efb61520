#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <cstddef>
#include <span>
#include <vector>

#include "stegolab/error.hpp"

namespace stegolab {

enum class Label { Cover, Stego };

/// Two-class Fisher linear discriminant. A positive score means stego.
template <typename Scalar>
struct FisherDiscriminant {
  Eigen::Vector<Scalar, Eigen::Dynamic> weights;
  Scalar bias = 0;

  template <typename Derived>
  [[nodiscard]] Scalar score(const Eigen::MatrixBase<Derived>& x) const {
    return weights.dot(x) + bias;
  }

  template <typename Derived>
  [[nodiscard]] Label predict(const Eigen::MatrixBase<Derived>& x) const {
    return score(x) > Scalar(0) ? Label::Stego : Label::Cover;
  }
};

/// Trains on the rows of `samples`. The pooled within-class scatter is
/// regularized with eps * I, eps = 1e-6 * trace / dim, whenever it is
/// numerically singular; the threshold sits at the projected midpoint of
/// the two class means.
template <typename Derived>
FisherDiscriminant<typename Derived::Scalar> train_fld(const Eigen::MatrixBase<Derived>& samples,
                                                       std::span<const Label> labels) {
  using Scalar = typename Derived::Scalar;
  using Vec = Eigen::Vector<Scalar, Eigen::Dynamic>;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  const Eigen::Index n = samples.rows();
  const Eigen::Index dim = samples.cols();
  if (static_cast<std::size_t>(n) != labels.size()) {
    throw Error(ErrorCategory::Training, "fld: sample and label counts differ");
  }

  Vec mean[2] = {Vec::Zero(dim), Vec::Zero(dim)};
  Eigen::Index count[2] = {0, 0};
  for (Eigen::Index i = 0; i < n; ++i) {
    const int c = labels[static_cast<std::size_t>(i)] == Label::Stego;
    mean[c] += samples.row(i).transpose();
    ++count[c];
  }
  if (count[0] == 0 || count[1] == 0) {
    throw Error(ErrorCategory::Training, "fld: both classes must be present");
  }
  mean[0] /= Scalar(count[0]);
  mean[1] /= Scalar(count[1]);

  Mat scatter = Mat::Zero(dim, dim);
  for (Eigen::Index i = 0; i < n; ++i) {
    const int c = labels[static_cast<std::size_t>(i)] == Label::Stego;
    const Vec d = samples.row(i).transpose() - mean[c];
    scatter.noalias() += d * d.transpose();
  }
  if (n > 2) scatter /= Scalar(n - 2);

  const Vec diff = mean[1] - mean[0];
  Eigen::LDLT<Mat> ldlt(scatter);
  const Vec pivots = ldlt.vectorD().cwiseAbs();
  const bool degenerate = pivots.minCoeff() <= Scalar(1e-12) * pivots.maxCoeff();
  if (ldlt.info() != Eigen::Success || degenerate || ldlt.rcond() < Scalar(1e-12)) {
    Scalar eps = Scalar(1e-6) * scatter.trace() / Scalar(dim);
    if (!(eps > Scalar(0))) eps = Scalar(1e-12);
    ldlt.compute(scatter + eps * Mat::Identity(dim, dim));
  }

  FisherDiscriminant<Scalar> fld;
  fld.weights = ldlt.solve(diff);
  fld.bias = -fld.weights.dot((mean[0] + mean[1]) / Scalar(2));
  return fld;
}

/// Percentage of rows whose predicted label matches.
template <typename Scalar, typename Derived>
double accuracy_pct(const FisherDiscriminant<Scalar>& fld, const Eigen::MatrixBase<Derived>& samples,
                    std::span<const Label> labels) {
  if (labels.empty()) return 0.0;
  std::size_t correct = 0;
  for (Eigen::Index i = 0; i < samples.rows(); ++i) {
    correct += fld.predict(samples.row(i).transpose()) == labels[static_cast<std::size_t>(i)];
  }
  return 100.0 * static_cast<double>(correct) / static_cast<double>(labels.size());
}

}  // namespace stegolab
