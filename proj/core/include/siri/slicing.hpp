#pragma once

#include <span>
#include <vector>

namespace siri {

// Partition of n observations into H slices of the response. Slice ids are
// 0-based here; the continuous scheme keeps H - 1 cut points, the discrete
// scheme keeps one label per slice.
struct SlicingScheme {
  enum class Kind { continuous, discrete };

  Kind kind = Kind::continuous;
  int slices = 0;
  std::vector<int> membership;          // slice id per observation
  std::vector<int> counts;              // n_h
  std::vector<double> weights;          // n_h / n
  std::vector<double> boundaries;       // continuous: ascending cut points
  std::vector<double> labels;           // discrete: label of each slice
  std::vector<std::vector<int>> index;  // observations of each slice, ascending

  int n() const { return static_cast<int>(membership.size()); }
  int min_count() const;
};

// Observations per slice below which estimates get unreliable; build_slices
// reports it through slice_size_warning but never rejects it.
inline constexpr int kRecommendedSliceSize = 40;

// Equal-count slices in response order. The first n mod H slices get one
// extra observation; ties in y keep their original order. Cut points sit
// halfway between neighbouring slices.
SlicingScheme build_slices(std::span<const double> y, int slices);

// One slice per distinct label, in order of first appearance.
SlicingScheme build_slices_discrete(std::span<const double> y);

// Slice of a new response value. Continuous: left-closed, right-open
// intervals, values beyond the extreme cut points go to the end slices.
// Discrete: exact label lookup, DataError("unknown class") otherwise.
int assign_slice(const SlicingScheme& scheme, double y_new);

// True when some slice holds fewer than kRecommendedSliceSize observations.
bool slice_size_warning(const SlicingScheme& scheme);

}  // namespace siri
