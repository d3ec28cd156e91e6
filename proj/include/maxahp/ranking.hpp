#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "maxahp/matrix.hpp"

namespace maxahp {

/// Ordered tie classes of zero-based alternative indices, best first.
struct Ranking {
  std::vector<std::vector<std::size_t>> classes;

  /// One-based rendering, e.g. "4>1>2=3".
  std::string to_string() const {
    std::string s;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (c) s += '>';
      for (std::size_t k = 0; k < classes[c].size(); ++k) {
        if (k) s += '=';
        s += std::to_string(classes[c][k] + 1);
      }
    }
    return s;
  }

  /// True iff the strict order `order` (one-based string like "1>3>2>4") is
  /// obtained from this ranking by ordering the members of each tie class.
  bool admits(const Ranking& order) const {
    std::vector<std::size_t> flat;
    for (const auto& c : order.classes) {
      if (c.size() != 1) return false;
      flat.push_back(c.front());
    }
    std::size_t pos = 0;
    for (const auto& c : classes) {
      if (pos + c.size() > flat.size()) return false;
      std::vector<std::size_t> a(c), b(flat.begin() + static_cast<std::ptrdiff_t>(pos),
                                       flat.begin() + static_cast<std::ptrdiff_t>(pos + c.size()));
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (a != b) return false;
      pos += c.size();
    }
    return pos == flat.size();
  }

  bool is_strict() const {
    return std::all_of(classes.begin(), classes.end(), [](const auto& c) { return c.size() == 1; });
  }

  bool operator==(const Ranking&) const = default;
};

/// Parses the one-based "a>b=c" notation produced by Ranking::to_string.
inline Ranking parse_ranking(const std::string& text) {
  Ranking r;
  std::vector<std::size_t> cls;
  std::string num;
  auto flush_num = [&] {
    if (num.empty()) throw Error(ErrorCode::MalformedNumber, "malformed ranking '" + text + "'");
    const unsigned long v = std::stoul(num);
    if (v == 0) throw Error(ErrorCode::MalformedNumber, "ranking indices are one-based: '" + text + "'");
    cls.push_back(v - 1);
    num.clear();
  };
  for (char ch : text) {
    if (ch >= '0' && ch <= '9') {
      num += ch;
    } else if (ch == '=') {
      flush_num();
    } else if (ch == '>') {
      flush_num();
      std::sort(cls.begin(), cls.end());
      r.classes.push_back(std::move(cls));
      cls.clear();
    } else if (ch != ' ') {
      throw Error(ErrorCode::MalformedNumber, "malformed ranking '" + text + "'");
    }
  }
  flush_num();
  std::sort(cls.begin(), cls.end());
  r.classes.push_back(std::move(cls));
  return r;
}

/// Orders alternatives by decreasing weight. Neighbours whose weights differ by
/// at most `tie_tol` relative to the larger one share a class.
inline Ranking rank_alternatives(std::span<const double> w, double tie_tol = Tolerances{}.tie) {
  std::vector<std::size_t> idx(w.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });
  Ranking r;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const std::size_t i = idx[k];
    if (k > 0) {
      const std::size_t prev = idx[k - 1];
      const double hi = std::max(w[prev], w[i]);
      if (std::abs(w[prev] - w[i]) <= tie_tol * hi) {
        r.classes.back().push_back(i);
        continue;
      }
    }
    r.classes.push_back({i});
  }
  for (auto& c : r.classes) std::sort(c.begin(), c.end());
  return r;
}

inline Ranking rank_alternatives(const PositiveVector& w, double tie_tol = Tolerances{}.tie) {
  return rank_alternatives(w.span(), tie_tol);
}

}  // namespace maxahp
