#include "cadyn/kernels.hpp"

#include <algorithm>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cadyn::kernels {

namespace {

int thread_count(Exec exec) {
#ifdef _OPENMP
  return exec == Exec::Parallel ? omp_get_max_threads() : 1;
#else
  (void)exec;
  return 1;
#endif
}

int thread_id() {
#ifdef _OPENMP
  return omp_get_thread_num();
#else
  return 0;
#endif
}

// Sorts fixed-stride records lexicographically and drops duplicates.
void sort_unique_flat(std::vector<State>& flat, std::size_t stride) {
  if (stride == 0) {
    flat.clear();
    return;
  }
  const std::size_t count = flat.size() / stride;
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  auto record = [&](std::size_t i) { return flat.begin() + static_cast<std::ptrdiff_t>(i * stride); };
  auto less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(record(a), record(a) + stride, record(b), record(b) + stride);
  };
  auto same = [&](std::size_t a, std::size_t b) { return std::equal(record(a), record(a) + stride, record(b)); };
  std::sort(order.begin(), order.end(), less);
  order.erase(std::unique(order.begin(), order.end(), same), order.end());
  std::vector<State> out;
  out.reserve(order.size() * stride);
  for (std::size_t i : order) out.insert(out.end(), record(i), record(i) + stride);
  flat = std::move(out);
}

void merge_buffers(std::vector<std::vector<State>>& buffers, std::vector<State>& out,
                   std::size_t stride) {
  out.clear();
  for (auto& b : buffers) out.insert(out.end(), b.begin(), b.end());
  sort_unique_flat(out, stride);
}

std::vector<int> offsets_1d(const RuleTable& rule) {
  std::vector<int> xs;
  for (const Offset& o : rule.neighborhood()) xs.push_back(o.x);
  return xs;
}

}  // namespace

void decode_word(std::uint64_t index, std::uint32_t base, std::span<State> digits) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    digits[i] = static_cast<State>(index % base);
    index /= base;
  }
}

void next_word(std::uint32_t base, std::span<State> digits) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < base) return;
    digits[i] = 0;
  }
}

void fill_table(std::uint32_t base, int length, std::span<State> table,
                const std::function<State(std::span<const State>)>& fn, Exec exec) {
  const auto total = static_cast<std::int64_t>(table.size());
  const int threads = thread_count(exec);
  const std::int64_t chunk = (total + threads - 1) / std::max(threads, 1);
#pragma omp parallel num_threads(threads) if (threads > 1)
  {
    const std::int64_t begin = std::min<std::int64_t>(total, thread_id() * chunk);
    const std::int64_t end = std::min<std::int64_t>(total, begin + chunk);
    std::vector<State> digits(static_cast<std::size_t>(length));
    if (begin < end) decode_word(static_cast<std::uint64_t>(begin), base, digits);
    for (std::int64_t i = begin; i < end; ++i) {
      table[static_cast<std::size_t>(i)] = fn(digits);
      next_word(base, digits);
    }
  }
}

bool all_words(std::uint32_t base, int length,
               const std::function<bool(std::span<const State>)>& pred, Exec exec) {
  const auto total = static_cast<std::int64_t>(saturating_pow(base, static_cast<std::uint64_t>(length)));
  const int threads = thread_count(exec);
  const std::int64_t chunk = (total + threads - 1) / std::max(threads, 1);
  bool ok = true;
#pragma omp parallel num_threads(threads) if (threads > 1) reduction(&& : ok)
  {
    const std::int64_t begin = std::min<std::int64_t>(total, thread_id() * chunk);
    const std::int64_t end = std::min<std::int64_t>(total, begin + chunk);
    std::vector<State> digits(static_cast<std::size_t>(length));
    if (begin < end) decode_word(static_cast<std::uint64_t>(begin), base, digits);
    for (std::int64_t i = begin; i < end && ok; ++i) {
      ok = pred(digits);
      next_word(base, digits);
    }
  }
  return ok;
}

std::vector<State> enumerate_blocks_bruteforce(const RuleTable& rule, int n, int t,
                                               const Budget& budget, Exec exec) {
  if (rule.dimension() != 1) throw MismatchError("block enumeration needs a 1D rule");
  if (n < 1 || t < 1) throw Error("block enumeration needs n >= 1 and t >= 1");
  int left = 0;
  int right = 0;
  for (int x : offsets_1d(rule)) {
    left = std::max(left, -x);
    right = std::max(right, x);
  }
  const int length = n + (left + right) * (t - 1);
  const std::uint32_t k = rule.alphabet_size();
  const std::uint64_t total = saturating_pow(k, static_cast<std::uint64_t>(length));
  budget.require(total, "block enumeration");

  const std::size_t stride = static_cast<std::size_t>(n) * t;
  const int threads = thread_count(exec);
  const auto total_i = static_cast<std::int64_t>(total);
  const std::int64_t chunk = (total_i + threads - 1) / std::max(threads, 1);
  std::vector<std::vector<State>> buffers(static_cast<std::size_t>(threads));

#pragma omp parallel num_threads(threads) if (threads > 1)
  {
    auto& local = buffers[static_cast<std::size_t>(thread_id())];
    const std::int64_t begin = std::min<std::int64_t>(total_i, thread_id() * chunk);
    const std::int64_t end = std::min<std::int64_t>(total_i, begin + chunk);
    std::vector<State> row(static_cast<std::size_t>(length));
    std::vector<State> next(static_cast<std::size_t>(length));
    std::vector<State> block(stride);
    const int anchor = left * (t - 1);
    if (begin < end) decode_word(static_cast<std::uint64_t>(begin), k, row);
    std::vector<State> word = row;
    for (std::int64_t idx = begin; idx < end; ++idx) {
      row = word;
      for (int i = 0; i < t; ++i) {
        for (int j = 0; j < n; ++j) block[static_cast<std::size_t>(i * n + j)] = row[anchor + j];
        if (i + 1 == t) break;
        const int lo = left * (i + 1);
        const int hi = length - right * (i + 1);
        for (int p = lo; p < hi; ++p) next[p] = rule.eval_word(row, p);
        std::swap(row, next);
      }
      local.insert(local.end(), block.begin(), block.end());
      if (local.size() > (std::size_t{1} << 22)) sort_unique_flat(local, stride);
      next_word(k, word);
    }
    sort_unique_flat(local, stride);
  }
  std::vector<State> out;
  merge_buffers(buffers, out, stride);
  return out;
}

std::vector<State> enumerate_blocks_sweep(const RuleTable& rule, int n, int t,
                                          const Budget& budget, Exec exec,
                                          const ColumnFilter& filter, std::uint64_t* work) {
  if (rule.dimension() != 1 || rule.sidedness() != Sidedness::One)
    throw MismatchError("column sweep needs a one-sided 1D rule");
  if (n < 1 || t < 1) throw Error("block enumeration needs n >= 1 and t >= 1");
  const std::vector<int> xs = offsets_1d(rule);
  const int r = rule.radius();
  const int length = n + r * (t - 1);
  const std::uint32_t k = rule.alphabet_size();

  auto column_length = [&](int j) { return r > 0 ? std::min(t, (length - 1 - j) / r + 1) : t; };
  auto width = [&](int j) { return std::min(std::max(r, n - j), length - j); };
  auto stride_of = [&](int j) {
    std::size_t s = 0;
    for (int c = 0; c < width(j); ++c) s += static_cast<std::size_t>(column_length(j + c));
    return s;
  };

  // states at column j + 1, flattened with stride_of(j + 1)
  std::vector<State> states;
  std::size_t state_count = 1;  // the single empty state right of the word
  std::uint64_t spent = 0;
  const int threads = thread_count(exec);
  const std::size_t m = xs.size();

  for (int j = length - 1; j >= 0; --j) {
    spent = std::min<std::uint64_t>(UINT64_MAX - 1, spent + saturating_mul(state_count, k));
    budget.require(spent, "column sweep");

    const std::size_t old_stride = stride_of(j + 1);
    const int len = column_length(j);
    const int keep = width(j) - 1;
    std::size_t keep_len = 0;
    for (int c = 0; c < keep; ++c) keep_len += static_cast<std::size_t>(column_length(j + 1 + c));
    const std::size_t new_stride = static_cast<std::size_t>(len) + keep_len;
    std::vector<std::size_t> old_start(static_cast<std::size_t>(std::max(width(j + 1), 0)) + 1, 0);
    for (int c = 0; c < width(j + 1); ++c)
      old_start[static_cast<std::size_t>(c) + 1] =
          old_start[static_cast<std::size_t>(c)] + static_cast<std::size_t>(column_length(j + 1 + c));

    std::vector<std::vector<State>> buffers(static_cast<std::size_t>(threads));
    const auto count_i = static_cast<std::int64_t>(state_count);
#pragma omp parallel num_threads(threads) if (threads > 1)
    {
      auto& local = buffers[static_cast<std::size_t>(thread_id())];
      std::vector<State> column(static_cast<std::size_t>(len));
      std::vector<State> pattern(m);
#pragma omp for schedule(static)
      for (std::int64_t s = 0; s < count_i; ++s) {
        const State* old = states.data() + static_cast<std::size_t>(s) * old_stride;
        for (std::uint32_t x = 0; x < k; ++x) {
          column[0] = static_cast<State>(x);
          for (int i = 0; i + 1 < len; ++i) {
            for (std::size_t q = 0; q < m; ++q) {
              const int o = xs[q];
              pattern[q] = o == 0 ? column[static_cast<std::size_t>(i)]
                                  : old[old_start[static_cast<std::size_t>(o - 1)] + static_cast<std::size_t>(i)];
            }
            column[static_cast<std::size_t>(i) + 1] = rule(pattern);
          }
          if (filter && !filter(j, column)) continue;
          local.insert(local.end(), column.begin(), column.end());
          local.insert(local.end(), old, old + keep_len);
        }
      }
      sort_unique_flat(local, new_stride);
    }
    merge_buffers(buffers, states, new_stride);
    state_count = states.size() / new_stride;
  }
  if (work) *work = spent;

  // columns 0..n-1 all have length t; transpose into time-major blocks
  const std::size_t stride0 = stride_of(0);
  const std::size_t block = static_cast<std::size_t>(n) * t;
  std::vector<State> out;
  out.reserve(state_count * block);
  for (std::size_t s = 0; s < state_count; ++s) {
    const State* cols = states.data() + s * stride0;
    for (int i = 0; i < t; ++i)
      for (int c = 0; c < n; ++c) out.push_back(cols[static_cast<std::size_t>(c * t + i)]);
  }
  sort_unique_flat(out, block);
  return out;
}

}  // namespace cadyn::kernels
