#include "siri/slicing.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "siri/error.hpp"

namespace siri {
namespace {

void finish(SlicingScheme& s) {
  const int n = s.n();
  s.counts.assign(static_cast<std::size_t>(s.slices), 0);
  s.index.assign(static_cast<std::size_t>(s.slices), {});
  for (int i = 0; i < n; ++i) {
    const auto h = static_cast<std::size_t>(s.membership[static_cast<std::size_t>(i)]);
    ++s.counts[h];
    s.index[h].push_back(i);
  }
  s.weights.resize(s.counts.size());
  for (std::size_t h = 0; h < s.counts.size(); ++h)
    s.weights[h] = static_cast<double>(s.counts[h]) / n;
}

}  // namespace

int SlicingScheme::min_count() const {
  return counts.empty() ? 0 : *std::min_element(counts.begin(), counts.end());
}

SlicingScheme build_slices(std::span<const double> y, int slices) {
  const int n = static_cast<int>(y.size());
  if (slices < 1) throw std::invalid_argument("slice count must be at least 1");
  if (slices > n)
    throw std::invalid_argument("slice count " + std::to_string(slices) + " exceeds sample size " +
                                std::to_string(n));

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return y[a] < y[b]; });

  SlicingScheme s;
  s.kind = SlicingScheme::Kind::continuous;
  s.slices = slices;
  s.membership.assign(static_cast<std::size_t>(n), 0);
  const int base = n / slices;
  const int extra = n % slices;
  int pos = 0;
  for (int h = 0; h < slices; ++h) {
    const int size = base + (h < extra ? 1 : 0);
    for (int k = 0; k < size; ++k) s.membership[static_cast<std::size_t>(order[pos + k])] = h;
    pos += size;
    if (h + 1 < slices) {
      const double last = y[order[pos - 1]];
      const double first_next = y[order[pos]];
      s.boundaries.push_back(0.5 * (last + first_next));
    }
  }
  finish(s);
  return s;
}

SlicingScheme build_slices_discrete(std::span<const double> y) {
  if (y.empty()) throw DataError("empty sample");
  SlicingScheme s;
  s.kind = SlicingScheme::Kind::discrete;
  s.membership.reserve(y.size());
  for (double v : y) {
    auto it = std::find(s.labels.begin(), s.labels.end(), v);
    if (it == s.labels.end()) {
      s.labels.push_back(v);
      it = std::prev(s.labels.end());
    }
    s.membership.push_back(static_cast<int>(it - s.labels.begin()));
  }
  s.slices = static_cast<int>(s.labels.size());
  finish(s);
  return s;
}

int assign_slice(const SlicingScheme& scheme, double y_new) {
  if (scheme.kind == SlicingScheme::Kind::discrete) {
    const auto it = std::find(scheme.labels.begin(), scheme.labels.end(), y_new);
    if (it == scheme.labels.end()) throw DataError("unknown class");
    return static_cast<int>(it - scheme.labels.begin());
  }
  const auto it = std::upper_bound(scheme.boundaries.begin(), scheme.boundaries.end(), y_new);
  return static_cast<int>(it - scheme.boundaries.begin());
}

bool slice_size_warning(const SlicingScheme& scheme) {
  return scheme.min_count() < kRecommendedSliceSize;
}

}  // namespace siri
