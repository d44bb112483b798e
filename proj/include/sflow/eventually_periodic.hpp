#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <numeric>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "sflow/checked.hpp"
#include "sflow/error.hpp"

namespace sflow {

namespace detail {

template <typename Symbol, typename Pred>
struct PredicateSearch {
  Pred pred;

  const Symbol* forward(const Symbol* b, const Symbol* e) const { return std::find_if(b, e, pred); }

  const Symbol* backward(const Symbol* b, const Symbol* e) const {
    for (const Symbol* p = e; p != b;) {
      --p;
      if (pred(*p)) return p;
    }
    return nullptr;
  }
};

template <typename Symbol>
struct ValueSearch {
  Symbol value;

  static constexpr bool kBytes = sizeof(Symbol) == 1 && std::is_integral_v<Symbol>;

  const Symbol* forward(const Symbol* b, const Symbol* e) const {
    if constexpr (kBytes) {
      if (b == e) return e;
      const void* hit = std::memchr(b, static_cast<unsigned char>(value), static_cast<std::size_t>(e - b));
      return hit ? static_cast<const Symbol*>(hit) : e;
    } else {
      return std::find(b, e, value);
    }
  }

  const Symbol* backward(const Symbol* b, const Symbol* e) const {
    if constexpr (kBytes) {
      if (b == e) return nullptr;
      const void* hit = ::memrchr(b, static_cast<unsigned char>(value), static_cast<std::size_t>(e - b));
      return static_cast<const Symbol*>(hit);
    } else {
      for (const Symbol* p = e; p != b;) {
        --p;
        if (*p == value) return p;
      }
      return nullptr;
    }
  }
};

template <typename Symbol>
void reduce_to_primitive(std::vector<Symbol>& w) {
  const std::size_t n = w.size();
  std::vector<std::size_t> pi(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t k = pi[i - 1];
    while (k > 0 && !(w[i] == w[k])) k = pi[k - 1];
    if (w[i] == w[k]) ++k;
    pi[i] = k;
  }
  const std::size_t per = n - pi[n - 1];
  if (n % per == 0) w.resize(per);
}

template <typename Symbol>
void rotate_left(std::vector<Symbol>& w, std::size_t k) {
  if (w.empty()) return;
  k %= w.size();
  std::rotate(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
}

}  // namespace detail

/// A bi-infinite sequence given by a finite window and two periodic tails.
///
/// Coordinate n is stored at window index n + origin_offset(). Right of the
/// window the symbols repeat right_period() starting with its first entry; left
/// of the window they repeat left_period(), whose last entry is the symbol just
/// before the window. Instances are kept canonical (primitive tail words,
/// shortest window, fixed boundary placement), so equal sequences compare equal.
template <typename Symbol>
class EventuallyPeriodic {
 public:
  using Word = std::vector<Symbol>;
  using symbol_type = Symbol;

  EventuallyPeriodic(Word left_period, Word window, std::int64_t origin_offset, Word right_period)
      : left_(std::move(left_period)),
        window_(std::move(window)),
        offset_(origin_offset),
        right_(std::move(right_period)) {
    if (left_.empty() || right_.empty()) throw DomainError("tail period words must be nonempty");
    canonicalize();
  }

  /// x_n = period[(n + phase) mod |period|].
  static EventuallyPeriodic periodic(const Word& period, std::int64_t phase = 0) {
    if (period.empty()) throw DomainError("period word must be nonempty");
    const auto p = static_cast<std::int64_t>(period.size());
    Word rotated(period.size());
    for (std::int64_t j = 0; j < p; ++j) rotated[j] = period[floor_mod(floor_mod(phase, p) + j, p)];
    return EventuallyPeriodic(rotated, {}, 0, rotated);
  }

  static EventuallyPeriodic constant(Symbol s) { return EventuallyPeriodic({s}, {}, 0, {s}); }

  const Word& left_period() const noexcept { return left_; }
  const Word& window() const noexcept { return window_; }
  const Word& right_period() const noexcept { return right_; }
  std::int64_t origin_offset() const noexcept { return offset_; }

  /// Coordinate of window()[0] (or of the tail boundary when the window is empty).
  std::int64_t window_begin() const { return -offset_; }
  std::int64_t window_end() const { return checked_add(-offset_, static_cast<std::int64_t>(window_.size())); }

  bool is_periodic() const { return window_.empty() && left_ == right_; }

  Symbol at(std::int64_t n) const {
    const std::int64_t i = checked_add(n, offset_);
    const auto len = static_cast<std::int64_t>(window_.size());
    if (i >= 0 && i < len) return window_[static_cast<std::size_t>(i)];
    if (i >= len) return right_[static_cast<std::size_t>(floor_mod(i - len, static_cast<std::int64_t>(right_.size())))];
    return left_[static_cast<std::size_t>(floor_mod(i, static_cast<std::int64_t>(left_.size())))];
  }

  /// Coordinates [first, first + count) as a word.
  Word slice(std::int64_t first, std::int64_t count) const {
    Word out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) out.push_back(at(checked_add(first, i)));
    return out;
  }

  /// Result y satisfies y_m = x_{m+n}.
  EventuallyPeriodic shifted(std::int64_t n) const {
    return EventuallyPeriodic(left_, window_, checked_add(offset_, n), right_);
  }

  /// Result y satisfies y_m = x_{-m}.
  EventuallyPeriodic mirrored() const {
    Word lw(right_.rbegin(), right_.rend());
    Word rw(left_.rbegin(), left_.rend());
    Word w(window_.rbegin(), window_.rend());
    const std::int64_t off = checked_sub(static_cast<std::int64_t>(window_.size()) - 1, offset_);
    return EventuallyPeriodic(std::move(lw), std::move(w), off, std::move(rw));
  }

  std::optional<std::int64_t> find_forward(std::int64_t from, Symbol s) const {
    return forward_impl(from, detail::ValueSearch<Symbol>{s});
  }
  std::optional<std::int64_t> find_backward(std::int64_t from, Symbol s) const {
    return backward_impl(from, detail::ValueSearch<Symbol>{s});
  }
  /// Smallest n >= from with pred(x_n), if any.
  template <typename Pred>
  std::optional<std::int64_t> find_forward_if(std::int64_t from, Pred pred) const {
    return forward_impl(from, detail::PredicateSearch<Symbol, Pred>{pred});
  }
  /// Largest n <= from with pred(x_n), if any.
  template <typename Pred>
  std::optional<std::int64_t> find_backward_if(std::int64_t from, Pred pred) const {
    return backward_impl(from, detail::PredicateSearch<Symbol, Pred>{pred});
  }

  template <typename Pred>
  bool any_of(Pred pred) const {
    return std::any_of(left_.begin(), left_.end(), pred) || std::any_of(window_.begin(), window_.end(), pred) ||
           std::any_of(right_.begin(), right_.end(), pred);
  }

  friend bool operator==(const EventuallyPeriodic&, const EventuallyPeriodic&) = default;

 private:
  template <typename Search>
  static std::optional<std::int64_t> scan_period_forward(const Word& w, std::int64_t phase, const Search& s) {
    const Symbol* b = w.data();
    const auto n = static_cast<std::int64_t>(w.size());
    const Symbol* hit = s.forward(b + phase, b + n);
    if (hit != b + n) return hit - (b + phase);
    hit = s.forward(b, b + phase);
    if (hit != b + phase) return (n - phase) + (hit - b);
    return std::nullopt;
  }

  template <typename Search>
  static std::optional<std::int64_t> scan_period_backward(const Word& w, std::int64_t phase, const Search& s) {
    const Symbol* b = w.data();
    const auto n = static_cast<std::int64_t>(w.size());
    const Symbol* hit = s.backward(b, b + phase + 1);
    if (hit) return phase - (hit - b);
    hit = s.backward(b + phase + 1, b + n);
    if (hit) return phase + (n - (hit - b));
    return std::nullopt;
  }

  template <typename Search>
  std::optional<std::int64_t> forward_impl(std::int64_t from, const Search& s) const {
    const std::int64_t wb = window_begin();
    const std::int64_t we = window_end();
    std::int64_t c = from;
    if (c < wb) {
      auto step = scan_period_forward(left_, floor_mod(c - wb, static_cast<std::int64_t>(left_.size())), s);
      if (step && c + *step < wb) return c + *step;
      c = wb;
    }
    if (c < we) {
      const Symbol* base = window_.data();
      const Symbol* end = base + window_.size();
      const Symbol* hit = s.forward(base + (c - wb), end);
      if (hit != end) return wb + (hit - base);
      c = we;
    }
    auto step = scan_period_forward(right_, floor_mod(c - we, static_cast<std::int64_t>(right_.size())), s);
    if (step) return checked_add(c, *step);
    return std::nullopt;
  }

  template <typename Search>
  std::optional<std::int64_t> backward_impl(std::int64_t from, const Search& s) const {
    const std::int64_t wb = window_begin();
    const std::int64_t we = window_end();
    std::int64_t c = from;
    if (c >= we) {
      auto step = scan_period_backward(right_, floor_mod(c - we, static_cast<std::int64_t>(right_.size())), s);
      if (step && c - *step >= we) return c - *step;
      c = we - 1;
    }
    if (c >= wb) {
      const Symbol* base = window_.data();
      const Symbol* hit = s.backward(base, base + (c - wb) + 1);
      if (hit) return wb + (hit - base);
      c = wb - 1;
    }
    auto step = scan_period_backward(left_, floor_mod(c - wb, static_cast<std::int64_t>(left_.size())), s);
    if (step) return checked_sub(c, *step);
    return std::nullopt;
  }

  void canonicalize() {
    detail::reduce_to_primitive(left_);
    detail::reduce_to_primitive(right_);
    const std::size_t pl = left_.size();
    const std::size_t pr = right_.size();

    std::size_t lo = 0;
    while (lo < window_.size() && window_[lo] == left_[lo % pl]) ++lo;
    std::size_t hi = 0;
    while (hi < window_.size() - lo && window_[window_.size() - 1 - hi] == right_[(pr - 1 - hi % pr) % pr]) ++hi;
    detail::rotate_left(left_, lo % pl);
    detail::rotate_left(right_, (pr - hi % pr) % pr);
    window_ = Word(window_.begin() + static_cast<std::ptrdiff_t>(lo),
                   window_.end() - static_cast<std::ptrdiff_t>(hi));
    offset_ = checked_sub(offset_, static_cast<std::int64_t>(lo));

    if (!window_.empty()) return;
    if (left_ == right_) {
      // Fully periodic: pin the phase so that right_[j] = x_j.
      detail::rotate_left(right_, static_cast<std::size_t>(floor_mod(offset_, static_cast<std::int64_t>(pr))));
      left_ = right_;
      offset_ = 0;
      return;
    }
    // Move an empty window's boundary as far right as the left tail extends.
    std::size_t steps = 0;
    while (right_[steps % pr] == left_[steps % pl]) ++steps;
    detail::rotate_left(left_, steps % pl);
    detail::rotate_left(right_, steps % pr);
    offset_ = checked_sub(offset_, static_cast<std::int64_t>(steps));
  }

  Word left_;
  Word window_;
  std::int64_t offset_;
  Word right_;
};

/// Smallest n >= from with a_n != b_n, if any.
template <typename Symbol>
std::optional<std::int64_t> first_mismatch_forward(const EventuallyPeriodic<Symbol>& a,
                                                   const EventuallyPeriodic<Symbol>& b, std::int64_t from) {
  const std::int64_t bps[4] = {a.window_begin(), a.window_end(), b.window_begin(), b.window_end()};
  std::int64_t c = from;
  for (;;) {
    std::optional<std::int64_t> next;
    for (std::int64_t bp : bps)
      if (bp > c && (!next || bp < *next)) next = bp;
    const bool a_tail = c < a.window_begin() || c >= a.window_end();
    const bool b_tail = c < b.window_begin() || c >= b.window_end();
    std::int64_t count;
    if (a_tail && b_tail) {
      const auto pa = static_cast<std::int64_t>(c < a.window_begin() ? a.left_period().size() : a.right_period().size());
      const auto pb = static_cast<std::int64_t>(c < b.window_begin() ? b.left_period().size() : b.right_period().size());
      const std::int64_t span = std::lcm(pa, pb);
      count = next ? std::min(span, *next - c) : span;
    } else {
      count = *next - c;
    }
    for (std::int64_t i = 0; i < count; ++i)
      if (!(a.at(c + i) == b.at(c + i))) return c + i;
    if (!next) return std::nullopt;
    c = *next;
  }
}

}  // namespace sflow
