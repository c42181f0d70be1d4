#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "ghzsim/ghz.hpp"
#include "ghzsim/rng.hpp"

namespace ghzsim {

enum class Representation { su2q, pp_number, pp_schwinger };

Representation parse_representation(std::string_view name);
std::string_view to_string(Representation rep);

/// Row-major n x M block of complex coordinates.
class ComplexRows {
 public:
  ComplexRows() = default;
  explicit ComplexRows(int cols) : cols_(cols) {}

  int cols() const { return cols_; }
  std::size_t rows() const { return cols_ == 0 ? 0 : data_.size() / static_cast<std::size_t>(cols_); }
  std::span<const Complex> row(std::size_t i) const {
    return {data_.data() + i * static_cast<std::size_t>(cols_), static_cast<std::size_t>(cols_)};
  }
  std::span<const Complex> data() const { return data_; }
  void reserve(std::size_t rows) { data_.reserve(rows * static_cast<std::size_t>(cols_)); }
  void append(std::span<const Complex> row) { data_.insert(data_.end(), row.begin(), row.end()); }
  void append(const ComplexRows& other) { data_.insert(data_.end(), other.data_.begin(), other.data_.end()); }

 private:
  int cols_ = 0;
  std::vector<Complex> data_;
};

/// Stereographic SU(2) coordinates z_j drawn from the GHZ Q-function.
struct SampleBatchQ {
  int qubits = 0;
  ComplexRows z;
  std::uint64_t proposals = 0;

  std::size_t size() const { return z.rows(); }
  double acceptance_rate() const;
};

/// Number-state positive-P sample in sum/difference variables:
/// alpha = mu + nu, beta = conj(mu - nu).
struct SampleBatchP {
  int qubits = 0;
  ComplexRows mu;
  ComplexRows nu;
  std::uint64_t proposals = 0;

  std::size_t size() const { return mu.rows(); }
  double acceptance_rate() const;
};

/// Schwinger two-mode positive-P sample; mode 1 carries up, mode 2 carries down.
struct SampleBatchSchwinger {
  int qubits = 0;
  ComplexRows mu1, mu2, nu1, nu2;
  std::uint64_t proposals = 0;

  std::size_t size() const { return mu1.rows(); }
  double acceptance_rate() const;
};

/// Inverse CDF of the radial density 4r/(1+r^2)^3, F(r) = 1 - (1+r^2)^{-2}.
double radial_inverse_f1(double u);

/// Inverse CDF of the radial density 4r^3/(1+r^2)^3, F(r) = (r^2/(1+r^2))^2.
double radial_inverse_f2(double u);

/// Von Neumann rejection from the equal-weight mixture of the all-down
/// (f1 radii) and all-up (f2 radii) product envelopes. Mean acceptance is 1/2.
SampleBatchQ sample_q(const GhzSpec& spec, std::size_t n, RngStream& rng);

SampleBatchP sample_pp_number(const GhzSpec& spec, std::size_t n, RngStream& rng);

SampleBatchSchwinger sample_pp_schwinger(const GhzSpec& spec, std::size_t n, RngStream& rng);

/// Raw coordinate dump: sample,qubit,coordinate,re,im (17 significant digits).
void write_batch_csv(std::ostream& out, const SampleBatchQ& batch);
void write_batch_csv(std::ostream& out, const SampleBatchP& batch);
void write_batch_csv(std::ostream& out, const SampleBatchSchwinger& batch);

}  // namespace ghzsim
