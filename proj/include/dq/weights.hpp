#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>

#include "dq/chart.hpp"
#include "dq/graph.hpp"
#include "dq/meas.hpp"

namespace dq {

struct Weight {
  double value = 0.0;
  double err = 0.0;  // standard error; 0 for exact values
  long samples = 0;
  unsigned long long seed = 0;

  Meas meas() const { return Meas(value, err * err); }
};

// Append-only cache of computed weights, keyed by (canonical graph text,
// u-powers). One line per entry:
//   <graph-canon> ; upows=j1,j2,... ; value ; stderr ; samples ; seed
class WeightCache {
 public:
  WeightCache() = default;
  explicit WeightCache(std::string path);  // loads if the file exists

  static std::string key(const ExtGraph& g, const std::vector<int>& upows);

  std::optional<Weight> lookup(const std::string& key) const;
  void store(const std::string& key, const Weight& w);
  size_t size() const { return entries_.size(); }

 private:
  std::string path_;
  std::map<std::string, Weight> entries_;
};

struct WeightParams {
  long samples = 2000000;
  unsigned long long seed = 0xC0FFEE;
  int batches = 64;
  std::complex<double> base{0.0, 0.0};  // pinned position of z_1
};

// Computes graph weights w_Gamma(j_1,...,j_m): structural zeros and the
// interior-free convention are exact; everything else is integrated over
// the gauge-fixed chart with randomized quasi-Monte Carlo. Weights are
// looked up and stored under the sorted-star representative; the star
// reordering only contributes the permutation sign.
class WeightEngine {
 public:
  explicit WeightEngine(WeightParams params, WeightCache* cache = nullptr)
      : params_(params), cache_(cache) {}

  Weight weight(const ExtGraph& g, const std::vector<int>& upows);
  Meas meas(const ExtGraph& g, const std::vector<int>& upows) { return weight(g, upows).meas(); }
  const WeightParams& params() const { return params_; }

 private:
  WeightParams params_;
  WeightCache* cache_ = nullptr;
};

// The bare chart integral including the orientation sign and calibration;
// no cache, no structural shortcuts. Throws if more than 0.1% of the
// samples produce a non-finite integrand.
Weight integrate_weight(const ExtGraph& g, const std::vector<int>& upows,
                        const WeightParams& params);

}  // namespace dq
