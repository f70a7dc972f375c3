#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace effana::detail {

/// Overflow-checked int64 fraction, normalized with a positive denominator.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n) {}  // NOLINT: implicit from integers
  Rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_wide(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                     static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + Rational(-b.num_, b.den_); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_wide(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return from_wide(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
  }
  friend bool operator==(const Rational&, const Rational&) = default;

 private:
  void assign(std::int64_t n, std::int64_t d) { *this = from_wide(n, d); }

  static Rational from_wide(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    constexpr __int128 lim = INT64_MAX;
    if (n > lim || n < -lim || d > lim) throw std::overflow_error("rational overflow");
    Rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Null space of a homogeneous system, built incrementally: rows are reduced
/// against the current echelon basis as they arrive, so redundant
/// constraints cost one reduction and are dropped.
class NullSpace {
 public:
  explicit NullSpace(std::size_t columns) : cols_(columns), pivot_row_(columns, npos) {}

  void add_row(std::vector<Rational> row) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (row[c].is_zero() || pivot_row_[c] == npos) continue;
      const auto& p = rows_[pivot_row_[c]];
      const Rational f = row[c];
      for (std::size_t j = 0; j < cols_; ++j)
        if (!p[j].is_zero()) row[j] = row[j] - f * p[j];
    }
    std::size_t lead = npos;
    for (std::size_t c = 0; c < cols_; ++c)
      if (!row[c].is_zero()) { lead = c; break; }
    if (lead == npos) return;
    const Rational inv = Rational(1) / row[lead];
    for (auto& v : row) v = v * inv;
    // keep the basis fully reduced
    for (auto& r : rows_) {
      if (r[lead].is_zero()) continue;
      const Rational f = r[lead];
      for (std::size_t j = 0; j < cols_; ++j)
        if (!row[j].is_zero()) r[j] = r[j] - f * row[j];
    }
    pivot_row_[lead] = rows_.size();
    rows_.push_back(std::move(row));
  }

  /// One basis vector per free column: x_free = 1, other free columns 0.
  std::vector<std::vector<Rational>> basis() const {
    std::vector<std::vector<Rational>> out;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (pivot_row_[f] != npos) continue;
      std::vector<Rational> v(cols_);
      v[f] = 1;
      for (std::size_t c = 0; c < cols_; ++c)
        if (pivot_row_[c] != npos) v[c] = Rational(0) - rows_[pivot_row_[c]][f];
      out.push_back(std::move(v));
    }
    return out;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t cols_;
  std::vector<std::size_t> pivot_row_;
  std::vector<std::vector<Rational>> rows_;
};

}  // namespace effana::detail
