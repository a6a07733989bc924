// Int64 kernels for monotone progression detection.
//
// pair_kernel: for every pair of positions p < q take d = s[q] - s[p] and
// walk the chain s[q] + d, s[q] + 2d, ... through a value -> position index.
//
// sweep_kernel: for every position q (the second term of a progression) keep
// a bitset of the values seen before q and a reversed bitset of the values
// seen after q. A 3-term progression x, m, y with m = s[q] is a bit set in
// both "before[x]" and "after[2m - x]"; in the reversed layout that is
// before[ix] & after_rev[ix + c] for a shift c fixed per q, so whole words
// are tested at once. Each hit is then extended forward like the pair kernel.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <queue>
#include <unordered_map>

#include <omp.h>

#include "apfree/apcheck.hpp"

namespace apfree::detail {

namespace {

constexpr std::int64_t kDenseMaxRange = std::int64_t{1} << 26;

// Value -> position lookup. Dense array when the value range is small enough,
// hash map otherwise. find() returns -1 for absent values.
class PosIndex {
 public:
  explicit PosIndex(std::span<const std::int64_t> seq) {
    if (seq.empty()) return;
    auto [mn, mx] = std::minmax_element(seq.begin(), seq.end());
    lo_ = *mn;
    hi_ = *mx;
    const std::int64_t range = hi_ - lo_ + 1;
    const auto n = static_cast<std::int64_t>(seq.size());
    dense_ = range <= kDenseMaxRange && range <= 64 * n + 1024;
    if (dense_) {
      table_.assign(static_cast<std::size_t>(range), -1);
      for (std::size_t p = 0; p < seq.size(); ++p)
        table_[static_cast<std::size_t>(seq[p] - lo_)] = static_cast<std::int32_t>(p);
    } else {
      map_.reserve(seq.size());
      for (std::size_t p = 0; p < seq.size(); ++p) map_.emplace(seq[p], static_cast<std::int64_t>(p));
    }
  }

  std::int64_t find(std::int64_t v) const {
    if (v < lo_ || v > hi_) return -1;
    if (dense_) return table_[static_cast<std::size_t>(v - lo_)];
    auto it = map_.find(v);
    return it == map_.end() ? -1 : it->second;
  }

 private:
  std::int64_t lo_ = 0;
  std::int64_t hi_ = -1;
  bool dense_ = true;
  std::vector<std::int32_t> table_;
  std::unordered_map<std::int64_t, std::int64_t> map_;
};

struct Hit {
  std::int64_t first;  // position of the first term
  std::int64_t d;
  friend bool operator<(const Hit& a, const Hit& b) {
    return a.first != b.first ? a.first < b.first : a.d < b.d;
  }
};

// True when v + d, v + 2d, ... (`remaining` terms) appear after position
// `last`, each after the previous one.
inline bool extends(const PosIndex& idx, std::int64_t v, std::int64_t last, std::int64_t d,
                    int remaining) {
  for (; remaining > 0; --remaining) {
    v += d;
    const std::int64_t p = idx.find(v);
    if (p <= last) return false;
    last = p;
  }
  return true;
}

std::vector<Witness> materialize(std::span<const std::int64_t> seq, const PosIndex& idx, int k,
                                 std::span<const Hit> hits) {
  std::vector<Witness> out;
  out.reserve(hits.size());
  for (const Hit& h : hits) {
    Witness w;
    std::int64_t v = seq[static_cast<std::size_t>(h.first)];
    for (int t = 0; t < k; ++t, v += h.d) {
      w.values.emplace_back(v);
      w.positions.push_back(static_cast<std::size_t>(idx.find(v)));
    }
    w.difference = h.d;
    out.push_back(std::move(w));
  }
  return out;
}

void scan_row(std::span<const std::int64_t> seq, const PosIndex& idx, int k,
              const DiffFilter& filter, std::int64_t p, std::vector<Hit>& row) {
  const auto n = static_cast<std::int64_t>(seq.size());
  const std::int64_t x = seq[static_cast<std::size_t>(p)];
  const bool plain = filter.mode == DiffFilter::Mode::any;
  for (std::int64_t q = p + 1; q < n; ++q) {
    const std::int64_t y = seq[static_cast<std::size_t>(q)];
    const std::int64_t d = y - x;
    if (!plain && !filter.accepts(d)) continue;
    if (extends(idx, y, q, d, k - 2)) row.push_back({p, d});
  }
  std::sort(row.begin(), row.end());
}

}  // namespace

std::vector<Witness> pair_kernel(std::span<const std::int64_t> seq, int k, const DiffFilter& filter,
                                 std::optional<std::size_t> limit, bool parallel) {
  const PosIndex idx(seq);
  const auto n = static_cast<std::int64_t>(seq.size());
  std::vector<Hit> hits;

  if (!parallel) {
    std::vector<Hit> row;
    for (std::int64_t p = 0; p < n; ++p) {
      row.clear();
      scan_row(seq, idx, k, filter, p, row);
      hits.insert(hits.end(), row.begin(), row.end());
      if (limit && hits.size() >= *limit) break;
    }
  } else {
    // Rows are processed in chunks so a limit can stop the scan early; rows
    // get shorter with p, hence the dynamic schedule.
    const std::int64_t chunk = limit ? std::max<std::int64_t>(64, 16 * omp_get_max_threads()) : n;
    std::vector<std::vector<Hit>> rows;
    for (std::int64_t start = 0; start < n; start += chunk) {
      const std::int64_t stop = std::min(n, start + chunk);
      rows.assign(static_cast<std::size_t>(stop - start), {});
#pragma omp parallel for schedule(dynamic, 16)
      for (std::int64_t p = start; p < stop; ++p)
        scan_row(seq, idx, k, filter, p, rows[static_cast<std::size_t>(p - start)]);
      for (auto& r : rows) hits.insert(hits.end(), r.begin(), r.end());
      if (limit && hits.size() >= *limit) break;
    }
  }
  if (limit && hits.size() > *limit) hits.resize(*limit);
  return materialize(seq, idx, k, hits);
}

namespace {

// Keeps the `cap` smallest hits seen so far.
class HitSink {
 public:
  explicit HitSink(std::optional<std::size_t> cap) : cap_(cap) {}

  void push(const Hit& h) {
    if (!cap_) {
      all_.push_back(h);
      return;
    }
    if (heap_.size() < *cap_) {
      heap_.push(h);
    } else if (h < heap_.top()) {
      heap_.pop();
      heap_.push(h);
    }
  }

  std::vector<Hit> take() {
    if (!cap_) return std::move(all_);
    std::vector<Hit> out;
    out.reserve(heap_.size());
    while (!heap_.empty()) {
      out.push_back(heap_.top());
      heap_.pop();
    }
    return out;
  }

 private:
  std::optional<std::size_t> cap_;
  std::vector<Hit> all_;
  std::priority_queue<Hit> heap_;
};

}  // namespace

std::vector<Witness> sweep_kernel(std::span<const std::int64_t> seq, int k,
                                  const DiffFilter& filter, std::optional<std::size_t> limit) {
  const auto n = static_cast<std::int64_t>(seq.size());
  if (n < 3) return {};
  const PosIndex idx(seq);
  auto [mn, mx] = std::minmax_element(seq.begin(), seq.end());
  const std::int64_t vmin = *mn;
  const std::int64_t range = *mx - vmin + 1;
  const std::int64_t words = (range + 63) / 64;

  std::vector<std::int32_t> pos(static_cast<std::size_t>(range), -1);
  for (std::int64_t p = 0; p < n; ++p) pos[static_cast<std::size_t>(seq[p] - vmin)] = static_cast<std::int32_t>(p);

  const bool plain = filter.mode == DiffFilter::Mode::any;
  const int threads = std::max(1, std::min<int>(omp_get_max_threads(), static_cast<int>(n / 1024) + 1));
  std::vector<std::vector<Hit>> found(static_cast<std::size_t>(threads));

#pragma omp parallel num_threads(threads)
  {
    const int tid = omp_get_thread_num();
    const int nt = omp_get_num_threads();
    const std::int64_t q_begin = n * tid / nt;
    const std::int64_t q_end = n * (tid + 1) / nt;

    // before: bit i set when value vmin + i sits at a position < q.
    // after:  reversed layout, bit (range - 1 - i) set when value vmin + i
    //         sits at a position > q; one zero word of padding on each side.
    std::vector<std::uint64_t> before(static_cast<std::size_t>(words + 1), 0);
    std::vector<std::uint64_t> after(static_cast<std::size_t>(words + 3), 0);
    auto set_after = [&](std::int64_t i, bool on) {
      const std::int64_t j = range - 1 - i + 64;
      const std::uint64_t bit = std::uint64_t{1} << (j & 63);
      if (on)
        after[static_cast<std::size_t>(j >> 6)] |= bit;
      else
        after[static_cast<std::size_t>(j >> 6)] &= ~bit;
    };
    for (std::int64_t p = 0; p < q_begin; ++p) {
      const std::int64_t i = seq[p] - vmin;
      before[static_cast<std::size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63);
    }
    for (std::int64_t p = q_begin; p < n; ++p) set_after(seq[p] - vmin, true);

    HitSink sink(limit);
    for (std::int64_t q = q_begin; q < q_end; ++q) {
      const std::int64_t im = seq[q] - vmin;
      set_after(im, false);
      const std::int64_t c = range - 1 - 2 * im;
      const std::int64_t lo = std::max<std::int64_t>(0, -c);
      const std::int64_t hi = std::min<std::int64_t>(range - 1, range - 1 - c);
      if (lo <= hi) {
        const std::int64_t shifted = c + 64;  // padded index of bit 0 of word 0
        const int off = static_cast<int>(((shifted % 64) + 64) % 64);
        const std::int64_t base = (shifted - off) / 64;
        for (std::int64_t w = lo >> 6; w <= hi >> 6; ++w) {
          const std::uint64_t b = before[static_cast<std::size_t>(w)];
          if (!b) continue;
          const std::size_t aw = static_cast<std::size_t>(w + base);
          const std::uint64_t a =
              off ? (after[aw] >> off) | (after[aw + 1] << (64 - off)) : after[aw];
          std::uint64_t hitbits = b & a;
          while (hitbits) {
            const int bit = std::countr_zero(hitbits);
            hitbits &= hitbits - 1;
            const std::int64_t ix = 64 * w + bit;
            const std::int64_t d = im - ix;
            if (!plain && !filter.accepts(d)) continue;
            const std::int64_t iy = im + d;
            bool ok = true;
            std::int64_t last = pos[static_cast<std::size_t>(iy)];
            std::int64_t iv = iy;
            for (int t = 3; t < k && ok; ++t) {
              iv += d;
              ok = iv >= 0 && iv < range && pos[static_cast<std::size_t>(iv)] > last;
              if (ok) last = pos[static_cast<std::size_t>(iv)];
            }
            if (ok) sink.push({pos[static_cast<std::size_t>(ix)], d});
          }
        }
      }
      before[static_cast<std::size_t>(im >> 6)] |= std::uint64_t{1} << (im & 63);
    }
    found[static_cast<std::size_t>(tid)] = sink.take();
  }

  std::vector<Hit> hits;
  for (auto& f : found) hits.insert(hits.end(), f.begin(), f.end());
  std::sort(hits.begin(), hits.end());
  if (limit && hits.size() > *limit) hits.resize(*limit);
  return materialize(seq, idx, k, hits);
}

}  // namespace apfree::detail
