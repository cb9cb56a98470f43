#include "nlfrac/scenario.hpp"

#include <cctype>
#include <numeric>
#include <stdexcept>

namespace nlfrac {

Scenario::Scenario(std::vector<int> settings) : settings_(std::move(settings)) {
  const auto n = settings_.size();
  if (n < 2 || n > static_cast<std::size_t>(kMaxParties)) {
    throw std::invalid_argument("scenario must have between 2 and 6 parties, got " +
                                std::to_string(n));
  }
  for (int m : settings_) {
    if (m < 1 || m > kMaxSettings) {
      throw std::invalid_argument("settings per party must be in [1, 4], got " +
                                  std::to_string(m));
    }
  }
  term_strides_.assign(n, 1);
  tuple_strides_.assign(n, 1);
  for (std::size_t i = n; i-- > 0;) {
    term_strides_[i] = term_count_;
    tuple_strides_[i] = tuple_count_;
    term_count_ *= static_cast<std::size_t>(settings_[i] + 1);
    tuple_count_ *= static_cast<std::size_t>(settings_[i]);
  }
}

Scenario Scenario::parse(std::string_view text) {
  std::vector<int> settings;
  std::string digits;
  auto flush = [&] {
    if (digits.empty()) throw std::invalid_argument("malformed scenario '" + std::string(text) + "'");
    if (digits.size() > 2) throw std::invalid_argument("setting count too large in '" + std::string(text) + "'");
    settings.push_back(std::stoi(digits));
    digits.clear();
  };
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
    } else if (c == 'x' || c == 'X' || c == '*') {
      flush();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("unexpected character in scenario '" + std::string(text) + "'");
    }
  }
  flush();
  return Scenario(std::move(settings));
}

int Scenario::total_settings() const {
  return std::accumulate(settings_.begin(), settings_.end(), 0);
}

std::size_t Scenario::term_index(std::span<const int> key) const {
  if (key.size() != settings_.size()) throw std::invalid_argument("term key has wrong number of parties");
  std::size_t index = 0;
  for (std::size_t i = 0; i < key.size(); ++i) {
    const int j = key[i];
    if (j != kAbsent && (j < 0 || j >= settings_[i])) {
      throw std::out_of_range("setting " + std::to_string(j) + " out of range for party " +
                              std::to_string(i + 1));
    }
    index += static_cast<std::size_t>(j + 1) * term_strides_[i];
  }
  return index;
}

TermKey Scenario::term_key(std::size_t index) const {
  TermKey key(settings_.size());
  for (std::size_t i = 0; i < settings_.size(); ++i) {
    key[i] = static_cast<int>((index / term_strides_[i]) % static_cast<std::size_t>(settings_[i] + 1)) - 1;
  }
  return key;
}

int Scenario::term_setting(std::size_t index, int party) const {
  const auto p = static_cast<std::size_t>(party);
  return static_cast<int>((index / term_strides_[p]) % static_cast<std::size_t>(settings_[p] + 1)) - 1;
}

std::vector<int> Scenario::setting_tuple(std::size_t index) const {
  std::vector<int> tuple(settings_.size());
  for (std::size_t i = 0; i < settings_.size(); ++i) {
    tuple[i] = static_cast<int>((index / tuple_strides_[i]) % static_cast<std::size_t>(settings_[i]));
  }
  return tuple;
}

std::size_t Scenario::setting_tuple_index(std::span<const int> tuple) const {
  std::size_t index = 0;
  for (std::size_t i = 0; i < settings_.size(); ++i) {
    index += static_cast<std::size_t>(tuple[i]) * tuple_strides_[i];
  }
  return index;
}

std::string Scenario::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < settings_.size(); ++i) {
    if (i) out += 'x';
    out += std::to_string(settings_[i]);
  }
  return out;
}

}  // namespace nlfrac
