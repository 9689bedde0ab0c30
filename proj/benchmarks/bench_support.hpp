#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cfaug/dataset.hpp"
#include "cfaug/random.hpp"

namespace bench {

/// Two Gaussian blobs with a 10:1 class ratio; `n` total rows.
inline cfaug::Dataset blobs(std::size_t n, std::uint64_t seed = 1) {
  const std::size_t n_min = n / 11;
  const std::size_t n_maj = n - n_min;
  cfaug::Rng rng(cfaug::splitmix64(seed));
  std::normal_distribution<double> unit(0.0, 1.0);

  cfaug::Dataset ds(4, {"f1", "f2", "f3", "f4"}, {"neg", "pos"});
  for (std::size_t i = 0; i < n_maj; ++i) {
    const std::vector<double> row{unit(rng), unit(rng), unit(rng), unit(rng)};
    ds.append_row(row, 0);
  }
  for (std::size_t i = 0; i < n_min; ++i) {
    const std::vector<double> row{2.0 + unit(rng), unit(rng), unit(rng), unit(rng)};
    ds.append_row(row, 1);
  }
  ds.mark_binary();
  return ds;
}

}  // namespace bench
