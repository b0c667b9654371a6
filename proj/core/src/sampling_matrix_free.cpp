#include "mfcma/sampling_matrix_free.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mfcma {

Archive::Archive(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw std::invalid_argument("archive capacity must be positive");
}

void Archive::push(ArchiveEntry entry) {
  if (!entries_.empty() && entry.gen <= entries_.back().gen) {
    throw std::invalid_argument("archive push out of order: gen " + std::to_string(entry.gen) +
                                " after gen " + std::to_string(entries_.back().gen));
  }
  entries_.push_back(std::move(entry));
  if (entries_.size() > capacity_) entries_.pop_front();
}

Vector sample_delta_mf(const Archive& archive, std::size_t t, const StrategyParams& params,
                       Rng& rng) {
  if (t < 1) throw std::invalid_argument("sample_delta_mf: t must be at least 1");
  if (!archive.empty() && archive.entries().back().gen >= t) {
    throw std::invalid_argument("sample_delta_mf: archive holds generation >= t");
  }
  const auto n = static_cast<Eigen::Index>(params.n);
  const double keep = 1.0 - params.c_cov;
  const double sqrt_c_mu = std::sqrt(params.c_mu);
  const double sqrt_c_1 = std::sqrt(params.c_1);
  const double completed = static_cast<double>(t - 1);
  std::vector<double> sqrt_w(params.weights.size());
  std::transform(params.weights.begin(), params.weights.end(), sqrt_w.begin(),
                 [](double w) { return std::sqrt(w); });

  Vector delta = Vector::Zero(n);
  for (const ArchiveEntry& entry : archive.entries()) {
    const double decay = std::pow(keep, 0.5 * (completed - static_cast<double>(entry.gen)));
    const double scale_d = decay * sqrt_c_mu;
    if (entry.d.size() != sqrt_w.size()) {
      throw std::invalid_argument("sample_delta_mf: archive entry does not hold mu vectors");
    }
    for (std::size_t j = 0; j < entry.d.size(); ++j) {
      const double r = rng.normal();
      delta.noalias() += (scale_d * sqrt_w[j] * r) * entry.d[j];
    }
    const double s = rng.normal();
    delta.noalias() += (decay * sqrt_c_1 * s) * entry.p_c;
  }

  double iso_exponent = completed;
  if (params.cap_isotropic_exponent) iso_exponent = std::min(iso_exponent, static_cast<double>(params.h));
  const double iso = std::pow(keep, 0.5 * iso_exponent);
  for (Eigen::Index i = 0; i < n; ++i) delta[i] += iso * rng.normal();
  return delta;
}

Population sample_population_mf(const Archive& archive, std::size_t t, const Vector& m,
                                double sigma, const StrategyParams& params, Rng& rng) {
  Population pop;
  pop.members.reserve(params.lambda);
  for (std::size_t i = 0; i < params.lambda; ++i) {
    Member member;
    member.d = sample_delta_mf(archive, t, params, rng);
    member.x = m + sigma * member.d;
    member.index = i;
    pop.members.push_back(std::move(member));
  }
  return pop;
}

}  // namespace mfcma
