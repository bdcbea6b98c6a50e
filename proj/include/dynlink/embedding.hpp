#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "dynlink/temporal_graph.hpp"

namespace dynlink {

/// Read-only view of a d-dimensional complex vector stored as split
/// real/imaginary parts.
struct ComplexView {
  std::span<const double> re;
  std::span<const double> im;

  std::size_t dim() const noexcept { return re.size(); }
};

/// Mutable counterpart of ComplexView.
struct ComplexSpan {
  std::span<double> re;
  std::span<double> im;

  std::size_t dim() const noexcept { return re.size(); }
  operator ComplexView() const noexcept { return {re, im}; }
};

/// Owning complex vector.
struct ComplexVec {
  std::vector<double> re;
  std::vector<double> im;

  ComplexVec() = default;
  explicit ComplexVec(std::size_t d) : re(d, 0.0), im(d, 0.0) {}
  ComplexVec(std::vector<double> r, std::vector<double> i) : re(std::move(r)), im(std::move(i)) {}

  std::size_t dim() const noexcept { return re.size(); }
  ComplexView view() const noexcept { return {re, im}; }
  ComplexSpan span() noexcept { return {re, im}; }
};

/// Diagonal unit-modulus matrix W with W(k,k) = cos(theta_k) + i sin(theta_k).
/// Only the angles are stored, so |W(k,k)| = 1 holds by construction.
struct DiagonalPhase {
  std::vector<double> theta;

  DiagonalPhase() = default;
  explicit DiagonalPhase(std::size_t d, double angle = 0.0) : theta(d, angle) {}
  explicit DiagonalPhase(std::vector<double> angles) : theta(std::move(angles)) {}

  std::size_t dim() const noexcept { return theta.size(); }
  double modulus(std::size_t k) const { return std::hypot(std::cos(theta[k]), std::sin(theta[k])); }

  friend bool operator==(const DiagonalPhase&, const DiagonalPhase&) = default;
};

/// |V| x d complex matrix; row i holds d real parts followed by d imaginary parts.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t d) : rows_(rows), d_(d), data_(rows * d * 2, 0.0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t dim() const noexcept { return d_; }

  ComplexView row(std::size_t i) const noexcept {
    const double* p = data_.data() + i * d_ * 2;
    return {{p, d_}, {p + d_, d_}};
  }
  ComplexSpan row(std::size_t i) noexcept {
    double* p = data_.data() + i * d_ * 2;
    return {{p, d_}, {p + d_, d_}};
  }

  std::span<double> raw() noexcept { return data_; }
  std::span<const double> raw() const noexcept { return data_; }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t d_ = 0;
  std::vector<double> data_;
};

/// All learned parameters. Formation (v_f, u_f, theta_f) and dissolution
/// (v_d, u_d, theta_d) blocks are disjoint.
struct EmbeddingState {
  std::size_t d = 0;
  std::size_t num_nodes = 0;
  ComplexMatrix v_f, v_d, u_f, u_d;
  DiagonalPhase theta_f, theta_d;
  std::uint64_t seed = 0;

  bool all_finite() const noexcept;
  double max_abs() const noexcept;

  friend bool operator==(const EmbeddingState&, const EmbeddingState&) = default;
};

/// Re( conj(vi)^T W vj ) for diagonal W = diag(exp(i theta)).
double hermitian_score(ComplexView vi, const DiagonalPhase& phase, ComplexView vj);

/// Re( conj(vi)^T uc ); hermitian_score with every angle at zero.
double context_score(ComplexView vi, ComplexView uc);

/// Logistic function, stable over the whole double range.
inline double sigmoid(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

/// log(sigmoid(x)) = -log(1 + exp(-x)), without overflow for large |x|.
inline double log_sigmoid(double x) noexcept {
  if (x >= 0.0) return -std::log1p(std::exp(-x));
  return x - std::log1p(std::exp(x));
}

/// sigmoid(-x) and log(sigmoid(x)) from a single exponential; the pair every
/// gradient step needs.
struct LogisticPair {
  double sigmoid_neg;  // sigmoid(-x)
  double log_sigmoid;  // log(sigmoid(x))
};

inline LogisticPair logistic_pair(double x) noexcept {
  if (x >= 0.0) {
    const double e = std::exp(-x);
    return {e / (1.0 + e), -std::log1p(e)};
  }
  const double e = std::exp(x);
  return {1.0 / (1.0 + e), x - std::log1p(e)};
}

/// Vectors uniform on [-0.5/d, 0.5/d] (both parts), angles uniform on [0, 2pi).
EmbeddingState init_state(std::size_t num_nodes, std::size_t d, std::uint64_t seed);

// Model file: text, versioned, exact round trip of every double.
void write_model(std::ostream& out, const EmbeddingState& state);
EmbeddingState read_model(std::istream& in);
void save_model(const std::string& path, const EmbeddingState& state);
EmbeddingState load_model(const std::string& path);

}  // namespace dynlink
