#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "osarr/integer.hpp"

namespace osarr {

/// Dense row-major matrix of exact integers.
class IntegerMatrix {
 public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<long long>> rows);

  static IntegerMatrix identity(std::size_t n);
  /// Builds from explicit rows; every row must have `cols` entries.
  static IntegerMatrix from_rows(const std::vector<std::vector<Integer>>& rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Integer> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Integer> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void append_row(std::span<const Integer> values);
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

  IntegerMatrix transpose() const;
  bool is_zero() const;

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
  friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Sparse vector: (column, value) pairs, strictly increasing columns, no zeros.
using SparseVector = std::vector<std::pair<std::uint32_t, Integer>>;

SparseVector to_sparse(std::span<const Integer> dense);
std::vector<Integer> to_dense(const SparseVector& v, std::size_t size);

/// Structure of a finitely generated abelian group Z^free + (+) Z/d_i.
struct AbelianInvariants {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;  // invariant factors >= 2, each dividing the next

  bool torsion_free() const noexcept { return torsion.empty(); }
  std::string to_string() const;
  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

/// Coefficient field: the rationals (characteristic 0) or a prime field F_p.
class FieldSpec {
 public:
  constexpr FieldSpec() = default;
  static constexpr FieldSpec rationals() { return FieldSpec(); }
  /// Throws InputError unless p is a prime below 2^31.
  static FieldSpec prime(std::uint64_t p);
  /// 0 selects the rationals, anything else must be a prime.
  static FieldSpec from_characteristic(std::uint64_t c);

  constexpr std::uint64_t characteristic() const noexcept { return characteristic_; }
  constexpr bool is_rational() const noexcept { return characteristic_ == 0; }
  std::string name() const;

  friend constexpr auto operator<=>(const FieldSpec&, const FieldSpec&) = default;

 private:
  std::uint64_t characteristic_ = 0;
};

bool is_prime(std::uint64_t n);

}  // namespace osarr
