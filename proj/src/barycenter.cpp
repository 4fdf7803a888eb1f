#include "nilbary/barycenter.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "nilbary/families.hpp"

namespace nilbary {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void add_tensor(Tensor& a, const Tensor& b) { a += b; }

/// dst += left (x) right for level blocks.
void add_outer(std::span<double> dst, std::span<const double> left, std::span<const double> right) {
  const std::size_t rs = right.size();
  for (std::size_t i = 0; i < left.size(); ++i) {
    const double x = left[i];
    if (x == 0.0) continue;
    double* row = dst.data() + i * rs;
    for (std::size_t j = 0; j < rs; ++j) row[j] += x * right[j];
  }
}

Tensor weighted_sum(const DiscreteMeasure& nu, const std::vector<Tensor>& values, Execution exec) {
  return reduce_samples<Tensor>(
      nu.size(), [&](std::size_t i) { return scale(values[i], nu.weights[i]); }, add_tensor, exec);
}

std::vector<Tensor> sample_logs(const DiscreteMeasure& nu) {
  std::vector<Tensor> out;
  out.reserve(nu.size());
  for (const auto& x : nu.samples) out.push_back(log(x));
  return out;
}

BarycenterResult finish(const DiscreteMeasure& nu, Tensor mean, std::string algorithm, Clock::time_point start,
                        Execution exec) {
  BarycenterResult result;
  result.seconds = seconds_since(start);
  result.algorithm = std::move(algorithm);
  result.residual_norm = max_abs(residual(mean, nu, exec));
  LyndonBasis basis(mean.shape());
  result.lyndon_coords = basis.from_tensor(log(mean));
  result.mean = std::move(mean);
  return result;
}

}  // namespace

DiscreteMeasure DiscreteMeasure::uniform(std::vector<Tensor> samples) {
  DiscreteMeasure nu;
  const double w = samples.empty() ? 0.0 : 1.0 / static_cast<double>(samples.size());
  nu.weights.assign(samples.size(), w);
  nu.samples = std::move(samples);
  return nu;
}

bool DiscreteMeasure::has_negative_weights() const {
  for (double w : weights) {
    if (w < 0.0) return true;
  }
  return false;
}

void DiscreteMeasure::validate(double weight_tol) const {
  if (samples.empty()) throw std::invalid_argument("measure has no samples");
  if (weights.size() != samples.size()) {
    throw std::invalid_argument("measure has " + std::to_string(samples.size()) + " samples but " +
                                std::to_string(weights.size()) + " weights");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w)) throw std::invalid_argument("weight is not finite");
    total += w;
  }
  if (std::abs(total - 1.0) > weight_tol) {
    throw std::invalid_argument("weights sum to " + std::to_string(total) + ", expected 1");
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].shape() == samples[0].shape())) {
      throw std::invalid_argument("sample " + std::to_string(i) + " has shape " + to_string(samples[i].shape()) +
                                  ", expected " + to_string(samples[0].shape()));
    }
    if (std::abs(samples[i][0] - 1.0) > 1e-12) {
      throw std::invalid_argument("sample " + std::to_string(i) + " is not grouplike (constant term != 1)");
    }
  }
}

UpdateFamily::UpdateFamily(const Shape& shape, std::vector<Poly> u, std::string tag)
    : shape_(shape), u_(std::move(u)), tag_(std::move(tag)) {
  const std::size_t B = lie_dim(shape);
  if (u_.size() != B) {
    throw std::invalid_argument("polynomial family has " + std::to_string(u_.size()) + " entries, shape " +
                                to_string(shape) + " needs " + std::to_string(B));
  }
  for (std::size_t j = 0; j < u_.size(); ++j) {
    if (u_[j].max_index() >= static_cast<long>(B)) {
      throw std::invalid_argument("polynomial " + std::to_string(j + 1) + " uses a symbol outside the basis");
    }
    compiled_.emplace_back(u_[j]);
  }
}

UpdateFamily UpdateFamily::from_r(const Shape& shape, const std::vector<Poly>& r) {
  return UpdateFamily(shape, update_polys_from_r(r), "r");
}

UpdateFamily UpdateFamily::from_p(const Shape& shape, const std::vector<Poly>& p) {
  return UpdateFamily(shape, update_polys_from_p(p), "p");
}

Tensor residual(const Tensor& m, const DiscreteMeasure& nu, Execution exec) {
  const Tensor a = inv(m);
  return reduce_samples<Tensor>(
      nu.size(), [&](std::size_t i) { return scale(log(mul(a, nu.samples[i])), nu.weights[i]); }, add_tensor, exec);
}

Tensor naive_mean(const DiscreteMeasure& nu, Execution exec) {
  nu.validate();
  return exp(weighted_sum(nu, sample_logs(nu), exec));
}

BarycenterResult barycenter_lyndon(const DiscreteMeasure& nu, const UpdateFamily& family,
                                   const BarycenterOptions& options) {
  nu.validate();
  if (!(family.shape() == nu.shape())) {
    throw std::invalid_argument("polynomial family is for " + to_string(family.shape()) + ", measure has " +
                                to_string(nu.shape()));
  }
  auto start = Clock::now();
  LyndonBasis basis(nu.shape());
  std::vector<LieCoeffVec> c;
  c.reserve(nu.size());
  for (const auto& x : nu.samples) c.push_back(basis.from_tensor(log(x)));
  LieCoeffVec m(basis.size(), 0.0);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    const CompiledPoly& u = family.compiled()[j];
    m[j] = reduce_samples<double>(
        nu.size(), [&](std::size_t i) { return nu.weights[i] * u(m, c[i]); },
        [](double& a, double b) { a += b; }, options.execution);
  }
  return finish(nu, exp(basis.to_tensor(m)), "lyndon", start, options.execution);
}

BarycenterResult barycenter_ambient(const DiscreteMeasure& nu, const BarycenterOptions& options) {
  nu.validate();
  auto start = Clock::now();
  const Shape shape = nu.shape();
  const int L = shape.L;
  const std::size_t N = nu.size();
  Tensor a = Tensor::identity(shape);

  // Per sample: v = a x - e and its powers v^j, filled level by level.
  std::vector<std::vector<Tensor>> powers(N, std::vector<Tensor>(static_cast<std::size_t>(L) + 1));
  std::vector<std::vector<double>> qk(N);
  auto combine = [](std::vector<double>& acc, const std::vector<double>& b) { add_into(acc, b); };

  for (int K = 1; K <= L; ++K) {
    std::vector<double> sum = reduce_samples<std::vector<double>>(
        N,
        [&](std::size_t i) {
          const Tensor& x = nu.samples[i];
          std::vector<Tensor>& pw = powers[i];
          if (K == 1) {
            for (auto& t : pw) t = Tensor(shape);
          }
          std::vector<double> q(x.level_size(K), 0.0);
          for (int k = 0; k < K; ++k) add_outer(q, a.level(k), x.level(K - k));
          std::vector<double> p(q.size(), 0.0);
          for (int j = 2; j <= K; ++j) {
            std::span<double> dst = pw[static_cast<std::size_t>(j)].level(K);
            for (int l = 1; l <= K - j + 1; ++l) {
              add_outer(dst, pw[1].level(l), pw[static_cast<std::size_t>(j - 1)].level(K - l));
            }
            const double c = (j % 2 == 0 ? -1.0 : 1.0) / j;
            for (std::size_t t = 0; t < p.size(); ++t) p[t] += c * dst[t];
          }
          std::vector<double> term(q.size());
          for (std::size_t t = 0; t < q.size(); ++t) term[t] = nu.weights[i] * (q[t] + p[t]);
          qk[i] = std::move(q);
          return term;
        },
        combine, options.execution);
    std::span<double> aK = a.level(K);
    for (std::size_t t = 0; t < aK.size(); ++t) aK[t] = -sum[t];
    for (std::size_t i = 0; i < N; ++i) {
      std::span<double> v = powers[i][1].level(K);
      for (std::size_t t = 0; t < v.size(); ++t) v[t] = aK[t] + qk[i][t];
    }
  }
  return finish(nu, inv(a), "ambient", start, options.execution);
}

BarycenterResult barycenter_abch(const DiscreteMeasure& nu, const BarycenterOptions& options) {
  nu.validate();
  auto start = Clock::now();
  const Shape shape = nu.shape();
  const std::vector<Tensor> logs = sample_logs(nu);
  Tensor b(shape);
  auto combine = [](std::vector<double>& acc, const std::vector<double>& v) { add_into(acc, v); };
  for (int K = 1; K <= shape.L; ++K) {
    // Only levels < K of b are known, and level K of aBCH(b, c) depends on
    // nothing else, so the work is done in T_{<=K}.
    const Tensor bk = truncate(b, K);
    const AdPowerSeries f = AdPowerSeries::f_series(K);
    const Tensor exp_b = exp(bk);
    std::vector<double> sum = reduce_samples<std::vector<double>>(
        nu.size(),
        [&](std::size_t i) {
          Tensor ck = truncate(logs[i], K);
          Tensor bch = log(mul(exp_b, exp(ck)));
          Tensor abch = apply_ad_series(f, bk, bch - bk);
          std::vector<double> term(abch.level(K).begin(), abch.level(K).end());
          for (double& t : term) t *= nu.weights[i];
          return term;
        },
        combine, options.execution);
    std::span<double> bK = b.level(K);
    for (std::size_t t = 0; t < bK.size(); ++t) bK[t] = -sum[t];
  }
  return finish(nu, exp(-b), "abch", start, options.execution);
}

BarycenterResult barycenter_pi1(const DiscreteMeasure& nu, const BarycenterOptions& options) {
  nu.validate();
  if (nu.shape().L > options.pi1.max_level) {
    throw std::invalid_argument("pi1 barycenter needs L <= " + std::to_string(options.pi1.max_level));
  }
  auto start = Clock::now();
  const Shape shape = nu.shape();
  const Tensor xbar = weighted_sum(nu, nu.samples, options.execution);
  const Tensor lbar = weighted_sum(nu, sample_logs(nu), options.execution);
  Tensor logm(shape);
  for (int s = 1; s <= shape.L; ++s) {
    const Tensor a = exp(-logm);
    std::vector<double> block(logm.level_size(s), 0.0);
    for (int k = 1; k < s; ++k) add_outer(block, a.level(s - k), xbar.level(k));
    std::vector<double> proj = options.execution == Execution::Parallel
                                   ? pi1_level<double>(block, shape.d, s, options.pi1)
                                   : pi1_level_serial<double>(block, shape.d, s, options.pi1);
    std::span<double> dst = logm.level(s);
    for (std::size_t t = 0; t < dst.size(); ++t) dst[t] = lbar.level(s)[t] + proj[t];
  }
  return finish(nu, exp(logm), "pi1", start, options.execution);
}

DiscreteMeasure translate_measure(const DiscreteMeasure& nu, const Tensor& g, Side side) {
  DiscreteMeasure out;
  out.weights = nu.weights;
  for (const auto& x : nu.samples) out.samples.push_back(side == Side::Left ? mul(g, x) : mul(x, g));
  return out;
}

OnlineUpdater::OnlineUpdater(const UpdateFamily& family) : basis_(family.shape()) {
  for (std::size_t j = 0; j < family.polys().size(); ++j) {
    u_.emplace_back(family.polys()[j]);
    std::vector<CompiledTaylor> terms;
    for (const TaylorTerm& t : taylor_update_terms(family.polys()[j], j)) {
      terms.push_back({t.alpha, t.inv_alpha_factorial.get_d(), CompiledPoly(t.derivative)});
    }
    taylor_.push_back(std::move(terms));
  }
}

Tensor OnlineUpdater::update(const Tensor& prev_mean, const std::vector<Tensor>& old_samples,
                             const Tensor& new_sample) const {
  const double N = static_cast<double>(old_samples.size() + 1);
  const LieCoeffVec mprev = basis_.from_tensor(log(prev_mean));
  const LieCoeffVec cnew = basis_.from_tensor(log(new_sample));
  std::vector<LieCoeffVec> cold;
  for (const auto& x : old_samples) cold.push_back(basis_.from_tensor(log(x)));
  LieCoeffVec m(basis_.size(), 0.0);
  LieCoeffVec delta(basis_.size(), 0.0);
  for (std::size_t j = 0; j < basis_.size(); ++j) {
    double value = u_[j](m, cnew) / N + (N - 1.0) / N * mprev[j];
    double correction = 0.0;
    for (const CompiledTaylor& t : taylor_[j]) {
      double monomial = t.inv_alpha_factorial;
      for (const auto& [b, e] : t.alpha) monomial *= std::pow(delta[b], e);
      if (monomial == 0.0) continue;
      for (const auto& c : cold) correction += monomial * t.derivative(mprev, c);
    }
    m[j] = value + correction / N;
    delta[j] = m[j] - mprev[j];
  }
  return exp(basis_.to_tensor(m));
}

Tensor online_update(const Tensor& prev_mean, const std::vector<Tensor>& old_samples, const Tensor& new_sample,
                     const UpdateFamily& family) {
  return OnlineUpdater(family).update(prev_mean, old_samples, new_sample);
}

double coefficient_scale(const DiscreteMeasure& nu) {
  double s = 1.0;
  for (const auto& x : nu.samples) s = std::max(s, max_abs(x));
  return s;
}

double normalized_distance(const Tensor& a, const Tensor& b, const DiscreteMeasure& nu) {
  return max_abs(a - b) / coefficient_scale(nu);
}

}  // namespace nilbary
