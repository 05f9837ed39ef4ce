#include "glhs/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <exception>
#include <mutex>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <thread>

#include <Eigen/Dense>
#include <boost/random/normal_distribution.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "glhs/density.hpp"
#include "glhs/errors.hpp"
#include "glhs/moments.hpp"

namespace glhs {

namespace {

constexpr double kBlowup = 1e150;

struct Replica {
  std::vector<double> power_traces;  // (1/d) tr (Z*Z)^n, n = 1..n_max
  std::vector<double> eigenvalues;
  std::uint64_t clamped = 0;
};

// Fixed-order pairwise sum; independent of how replicas were scheduled.
double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

// Independent stream per (seed, replica).
std::mt19937_64 replica_engine(std::uint64_t seed, int replica) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(replica), 0x676c6873u};
  return std::mt19937_64(seq);
}

Replica run_replica(const SimConfig& cfg, int replica) {
  const int d = cfg.dim;
  const double s = -cfg.t / d;
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Identity(d, d);

  if (s > 0) {
    const double ds = s / cfg.steps;
    const double scale = std::sqrt(ds / 2);
    auto engine = replica_engine(cfg.seed, replica);
    boost::random::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    Eigen::MatrixXcd m(d, d);
    Eigen::MatrixXcd work(d, d);
    for (int step = 0; step < cfg.steps; ++step) {
      for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) {
          const double re = normal(engine);
          const double im = normal(engine);
          m(i, j) = scale * std::complex<double>(re, im);
        }
      }
      if (cfg.integrator == Integrator::ito_euler) {
        work.noalias() = m * z;
        z += work;
      } else {
        work.noalias() = m.exp() * z;
        z.swap(work);
      }
      const double peak = std::sqrt(z.cwiseAbs2().maxCoeff());
      if (!(peak <= kBlowup)) {
        std::ostringstream os;
        os << "simulate: |Z| entry " << peak << " exceeds " << kBlowup << " at step " << step
           << " of replica " << replica << "; reduce the step size";
        throw NumericalBlowup(os.str());
      }
    }
  }

  Replica out;
  // Eigenvalues of Z*Z as squared singular values of Z.
  const Eigen::VectorXd sigma = Eigen::BDCSVD<Eigen::MatrixXcd>(z).singularValues();
  out.eigenvalues.resize(d);
  for (int i = 0; i < d; ++i) out.eigenvalues[i] = sigma(i) * sigma(i);
  for (double& e : out.eigenvalues) {
    if (e < 0) {
      ++out.clamped;
      e = 0;
    }
  }
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
  out.power_traces.assign(cfg.n_max, 0.0);
  std::vector<double> powers(out.eigenvalues);
  for (int n = 1; n <= cfg.n_max; ++n) {
    out.power_traces[n - 1] = pairwise_sum(powers) / d;
    for (std::size_t i = 0; i < powers.size(); ++i) powers[i] *= out.eigenvalues[i];
  }
  return out;
}

void validate(const SimConfig& cfg) {
  if (!(cfg.t <= 0)) throw DomainError("t must be negative (t = 0 gives the identity)");
  if (cfg.dim < 2) throw DomainError("simulate: dim must be at least 2");
  if (cfg.steps < 1) throw DomainError("simulate: steps must be at least 1");
  if (cfg.reps < 1) throw DomainError("simulate: reps must be at least 1");
  if (cfg.n_max < 1) throw DomainError("simulate: n_max must be at least 1");
  if (cfg.bins < 1) throw DomainError("simulate: bins must be at least 1");
  const double elements = static_cast<double>(cfg.dim) * cfg.dim * cfg.reps;
  if (elements > cfg.max_elements) {
    std::ostringstream os;
    os << "simulate: dim^2 * reps = " << elements << " exceeds the budget " << cfg.max_elements;
    throw ResourceExceeded(os.str());
  }
}

Histogram pooled_histogram(const std::vector<Replica>& replicas, int bins) {
  double top = 0;
  for (const auto& r : replicas) top = std::max(top, r.eigenvalues.back());
  top = top > 0 ? top * (1 + 1e-9) : 1.0;
  Histogram h;
  h.edges.resize(bins + 1);
  for (int b = 0; b <= bins; ++b) h.edges[b] = top * b / bins;
  h.counts.assign(bins, 0);
  for (const auto& r : replicas) {
    for (double e : r.eigenvalues) {
      const int b = std::min(bins - 1, static_cast<int>(e / top * bins));
      ++h.counts[b];
    }
  }
  return h;
}

}  // namespace

std::string_view to_string(Integrator integrator) {
  return integrator == Integrator::exponential ? "exponential" : "ito-euler";
}

Integrator parse_integrator(std::string_view name) {
  if (name == "exponential" || name == "exp") return Integrator::exponential;
  if (name == "ito-euler" || name == "ito_euler" || name == "euler") return Integrator::ito_euler;
  throw DomainError("unknown integrator '" + std::string(name) + "'");
}

int default_steps(double t, int dim) {
  const double s = -t / dim;
  return std::max(16, static_cast<int>(std::ceil(256 * dim * s)));
}

SimResult simulate(const SimConfig& config) {
  SimConfig cfg = config;
  if (cfg.steps == 0) cfg.steps = default_steps(cfg.t, cfg.dim);
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();

  std::vector<Replica> replicas(cfg.reps);
  unsigned workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, cfg.reps);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int r = next++; r < cfg.reps; r = next++) {
      try {
        replicas[r] = run_replica(cfg, r);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = cfg.reps;
      }
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  SimResult result;
  result.config = cfg;
  std::vector<double> column(cfg.reps);
  for (int n = 1; n <= cfg.n_max; ++n) {
    for (int r = 0; r < cfg.reps; ++r) column[r] = replicas[r].power_traces[n - 1];
    const double mean = pairwise_sum(column) / cfg.reps;
    double se = 0;
    if (cfg.reps > 1) {
      std::vector<double> dev(cfg.reps);
      for (int r = 0; r < cfg.reps; ++r) dev[r] = (column[r] - mean) * (column[r] - mean);
      se = std::sqrt(pairwise_sum(dev) / (cfg.reps - 1) / cfg.reps);
    }
    result.empirical.push_back({n, mean, se});
  }
  result.histogram = pooled_histogram(replicas, cfg.bins);
  for (const auto& r : replicas) result.clamped_negative += r.clamped;
  result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

LimitReport empirical_vs_limit(const SimResult& result) {
  const auto& cfg = result.config;
  LimitReport report;
  for (const auto& e : result.empirical) {
    LimitRow row{e.n, e.mean, e.std_error, moment_closed_form(e.n, cfg.t), 0, 0, false};
    const double diff = row.mean - row.limit;
    if (row.std_error > 0) {
      row.z_score = diff / row.std_error;
    } else if (diff != 0) {
      row.z_score = diff > 0 ? HUGE_VAL : -HUGE_VAL;
    }
    row.allowance = 3 * row.std_error + 2.0 / cfg.dim;
    row.within = std::abs(diff) <= row.allowance;
    report.rows.push_back(row);
  }

  // Limiting CDF: nu_t for t < 0, the point mass at 1 for t = 0.
  std::optional<SpectralMeasure> measure;
  if (cfg.t < 0) measure.emplace(cfg.t);
  const auto& h = result.histogram;
  std::uint64_t total = 0;
  for (auto c : h.counts) total += c;
  std::uint64_t below = 0;
  double sup = 0;
  for (std::size_t b = 0; b < h.edges.size(); ++b) {
    if (b > 0) below += h.counts[b - 1];
    const double x = h.edges[b];
    const double model = measure ? measure->cdf(x) : (x >= 1 ? 1.0 : 0.0);
    const double empirical = total ? static_cast<double>(below) / total : 0.0;
    sup = std::max(sup, std::abs(empirical - model));
  }
  report.cdf_sup_distance = sup;
  return report;
}

}  // namespace glhs
