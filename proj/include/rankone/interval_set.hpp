#pragma once

// Half-open rational intervals and finite disjoint unions of them.

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "rankone/rational.hpp"

namespace rankone {

struct RationalInterval {
  Rational lo = 0;
  Rational hi = 0;

  RationalInterval() = default;
  RationalInterval(Rational lo_, Rational hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {}

  Rational length() const { return hi - lo; }
  bool empty() const { return !(lo < hi); }
  bool contains(const Rational& x) const { return lo <= x && x < hi; }
  RationalInterval shifted(const Rational& by) const { return {lo + by, hi + by}; }

  friend bool operator==(const RationalInterval&, const RationalInterval&) = default;
  std::string str() const { return "[" + to_string(lo) + "," + to_string(hi) + ")"; }
};

/// Sorted, pairwise disjoint, adjacent pieces merged.
class IntervalSet {
 public:
  IntervalSet() = default;
  IntervalSet(RationalInterval iv) { add(std::move(iv)); }  // NOLINT
  IntervalSet(std::initializer_list<RationalInterval> ivs) {
    for (const auto& iv : ivs) add(iv);
  }
  static IntervalSet from_unsorted(std::vector<RationalInterval> ivs) {
    IntervalSet s;
    s.parts_ = std::move(ivs);
    s.normalize();
    return s;
  }

  const std::vector<RationalInterval>& intervals() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  std::size_t size() const { return parts_.size(); }

  Rational measure() const {
    Rational m = 0;
    for (const auto& iv : parts_) m += iv.length();
    return m;
  }

  void add(RationalInterval iv) {
    if (iv.empty()) return;
    parts_.push_back(std::move(iv));
    normalize();
  }

  IntervalSet shifted(const Rational& by) const {
    IntervalSet s;
    s.parts_.reserve(parts_.size());
    for (const auto& iv : parts_) s.parts_.push_back(iv.shifted(by));
    return s;
  }

  friend IntervalSet operator|(const IntervalSet& a, const IntervalSet& b) {
    std::vector<RationalInterval> all = a.parts_;
    all.insert(all.end(), b.parts_.begin(), b.parts_.end());
    return from_unsorted(std::move(all));
  }

  friend IntervalSet operator&(const IntervalSet& a, const IntervalSet& b) {
    IntervalSet out;
    std::size_t i = 0, j = 0;
    while (i < a.parts_.size() && j < b.parts_.size()) {
      const auto &x = a.parts_[i], &y = b.parts_[j];
      const Rational& lo = std::max(x.lo, y.lo);
      const Rational& hi = std::min(x.hi, y.hi);
      if (lo < hi) out.parts_.emplace_back(lo, hi);
      if (x.hi < y.hi) ++i; else ++j;
    }
    return out;
  }

  friend IntervalSet operator-(const IntervalSet& a, const IntervalSet& b) {
    IntervalSet out;
    std::size_t j = 0;
    for (const auto& x : a.parts_) {
      Rational cur = x.lo;
      while (j < b.parts_.size() && b.parts_[j].hi <= cur) ++j;
      std::size_t k = j;
      while (k < b.parts_.size() && b.parts_[k].lo < x.hi) {
        if (b.parts_[k].lo > cur) out.parts_.emplace_back(cur, b.parts_[k].lo);
        cur = std::max(cur, b.parts_[k].hi);
        if (cur >= x.hi) break;
        ++k;
      }
      if (cur < x.hi) out.parts_.emplace_back(cur, x.hi);
    }
    return out;
  }

  friend IntervalSet symmetric_difference(const IntervalSet& a, const IntervalSet& b) { return (a - b) | (b - a); }

  bool subset_of(const IntervalSet& other) const { return (*this - other).empty(); }
  bool disjoint_from(const IntervalSet& other) const { return (*this & other).empty(); }
  bool contains(const Rational& x) const {
    auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                               [](const Rational& v, const RationalInterval& iv) { return v < iv.lo; });
    return it != parts_.begin() && std::prev(it)->contains(x);
  }

  std::string str() const {
    if (parts_.empty()) return "{}";
    std::string s;
    for (const auto& iv : parts_) s += (s.empty() ? "" : " ") + iv.str();
    return s;
  }

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;
  friend std::ostream& operator<<(std::ostream& os, const IntervalSet& s) { return os << s.str(); }

 private:
  void normalize() {
    std::erase_if(parts_, [](const RationalInterval& iv) { return iv.empty(); });
    std::sort(parts_.begin(), parts_.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
    std::vector<RationalInterval> merged;
    merged.reserve(parts_.size());
    for (auto& iv : parts_) {
      if (!merged.empty() && iv.lo <= merged.back().hi) {
        if (iv.hi > merged.back().hi) merged.back().hi = iv.hi;
      } else {
        merged.push_back(std::move(iv));
      }
    }
    parts_ = std::move(merged);
  }

  std::vector<RationalInterval> parts_;
};

/// Parses "[lo,hi) [lo,hi) ..." (whitespace separated, "∅" or "{}" for empty).
inline IntervalSet parse_interval_set(std::string_view text) {
  std::vector<RationalInterval> ivs;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == 'U') { ++i; continue; }
    if (text.substr(i, 2) == "{}") { i += 2; continue; }
    if (c != '[') fail(Errc::parse_error, "interval must start with '[': " + std::string(text));
    auto close = text.find(')', i);
    if (close == std::string_view::npos) fail(Errc::parse_error, "interval must end with ')': " + std::string(text));
    std::string_view body = text.substr(i + 1, close - i - 1);
    auto comma = body.find(',');
    if (comma == std::string_view::npos) fail(Errc::parse_error, "interval needs two endpoints: " + std::string(body));
    RationalInterval iv(parse_rational(body.substr(0, comma)), parse_rational(body.substr(comma + 1)));
    if (!(iv.lo < iv.hi)) fail(Errc::parse_error, "interval with lo >= hi: " + std::string(body));
    ivs.push_back(std::move(iv));
    i = close + 1;
  }
  return IntervalSet::from_unsorted(std::move(ivs));
}

}  // namespace rankone
