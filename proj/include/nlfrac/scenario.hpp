#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nlfrac {

/// Marks a party that does not take part in a correlator term.
inline constexpr int kAbsent = -1;

inline constexpr int kMaxParties = 6;
inline constexpr int kMaxSettings = 4;

/// Per-party setting choice of one correlator term, kAbsent where the party
/// does not appear. The all-absent key is the constant term.
using TermKey = std::vector<int>;

/// An m_1 x ... x m_N Bell scenario with two-outcome measurements.
///
/// Correlator terms are addressed by a flat mixed-radix index: party i
/// contributes digit (j_i + 1) in base (m_i + 1), with digit 0 meaning
/// absent. Party 0 is the most significant digit, so index 0 is always the
/// constant term. Setting tuples (k_1..k_N) use the same ordering in base m_i.
class Scenario {
 public:
  /// Throws std::invalid_argument unless 2 <= N <= 6 and 1 <= m_i <= 4.
  explicit Scenario(std::vector<int> settings);

  /// Parses "2x2x2" (also accepts "2*2*2" and spaces).
  static Scenario parse(std::string_view text);

  int parties() const { return static_cast<int>(settings_.size()); }
  int settings(int party) const { return settings_[static_cast<std::size_t>(party)]; }
  std::span<const int> settings() const { return settings_; }
  int total_settings() const;

  /// prod (m_i + 1): number of correlator terms including the constant.
  std::size_t term_count() const { return term_count_; }
  /// prod m_i: number of joint setting choices.
  std::size_t setting_tuple_count() const { return tuple_count_; }
  std::size_t outcome_count() const { return std::size_t{1} << settings_.size(); }

  std::size_t term_index(std::span<const int> key) const;
  TermKey term_key(std::size_t index) const;
  /// Setting of `party` in the term at `index` (kAbsent if not present).
  int term_setting(std::size_t index, int party) const;
  std::size_t term_stride(int party) const { return term_strides_[static_cast<std::size_t>(party)]; }

  std::vector<int> setting_tuple(std::size_t index) const;
  std::size_t setting_tuple_index(std::span<const int> tuple) const;

  std::string to_string() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;

 private:
  std::vector<int> settings_;
  std::vector<std::size_t> term_strides_;
  std::vector<std::size_t> tuple_strides_;
  std::size_t term_count_ = 1;
  std::size_t tuple_count_ = 1;
};

}  // namespace nlfrac
