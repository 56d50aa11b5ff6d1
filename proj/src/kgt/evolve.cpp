#include "kgt/evolve.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "kgt/errors.hpp"
#include "kgt/nonrel.hpp"
#include "kgt/shutter.hpp"
#include "kgt/source_solution.hpp"

namespace kgt {

void EvolveRequest::validate() const {
  policy.validate();
  if (!std::isfinite(E) || !std::isfinite(V) || !std::isfinite(x) || !std::isfinite(t_start) ||
      !std::isfinite(t_end)) {
    throw std::invalid_argument("EvolveRequest: non-finite field");
  }
  if (x < 0.0) throw std::invalid_argument("EvolveRequest: x must be >= 0");
  if (!(t_end > t_start) || t_start < 0.0) {
    throw std::invalid_argument("EvolveRequest: require t_end > t_start >= 0");
  }
  if (n_samples < 16) throw std::invalid_argument("EvolveRequest: n_samples must be >= 16");
  if ((solver == SolverKind::KgShutter || solver == SolverKind::DiracShutter) && V != 0.0) {
    throw std::invalid_argument("EvolveRequest: shutter solvers are free-particle only (V = 0)");
  }
  if (solver == SolverKind::Source || solver == SolverKind::Schrodinger) {
    PhysicalSetup s{hbar, mass, c, E, V};
    s.validate();
  } else {
    ShutterSetup s{hbar, mass, c, E};
    s.validate();
  }
}

namespace {

EvolvePoint eval_one(const EvolveRequest& req, double t) {
  EvolvePoint p;
  switch (req.solver) {
    case SolverKind::Source: {
      const PhysicalSetup setup{req.hbar, req.mass, req.c, req.E, req.V};
      const WaveSample s = psi_source(req.x, t, setup, req.policy);
      p.psi = s.psi;
      p.dpsi_dt = s.dpsi_dt;
      p.rho = s.rho;
      p.representation = s.representation;
      break;
    }
    case SolverKind::KgShutter: {
      const ShutterSetup setup{req.hbar, req.mass, req.c, req.E};
      const WaveSample s = psi_kg_shutter(req.x, t, setup, req.policy);
      p.psi = s.psi;
      p.dpsi_dt = s.dpsi_dt;
      p.rho = s.rho;
      p.representation = s.representation;
      break;
    }
    case SolverKind::DiracShutter: {
      const ShutterSetup setup{req.hbar, req.mass, req.c, req.E};
      const DiracSample s = dirac_shutter(req.x, t, setup, req.policy);
      p.psi = s.psi1;
      p.psi2 = s.psi2;
      p.rho = s.rho;
      p.representation = Representation::SeriesA;
      break;
    }
    case SolverKind::Schrodinger: {
      const PhysicalSetup setup{req.hbar, req.mass, req.c, req.E, req.V};
      const std::complex<double> psi = t > 0.0 ? psi_schrodinger_step(req.x, t, setup)
                                               : std::complex<double>{0.0, 0.0};
      p.psi = psi;
      p.rho = std::norm(psi);
      p.representation = Representation::SeriesA;
      break;
    }
  }
  return p;
}

}  // namespace

std::vector<EvolvePoint> evolve_grid(const EvolveRequest& request, int n_threads) {
  request.validate();
  const int n = request.n_samples;
  const double dt = (request.t_end - request.t_start) / (n - 1);
  std::vector<EvolvePoint> out(static_cast<std::size_t>(n));

  if (n_threads <= 0) {
    n_threads = static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads <= 0) n_threads = 1;
  }
  n_threads = std::min(n_threads, n);

  std::atomic<bool> failed{false};
  std::mutex fail_mutex;
  long fail_index = -1;
  std::string fail_message;
  double fail_residual = 0.0;
  int fail_terms = 0;

  auto worker = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      if (failed.load(std::memory_order_relaxed)) return;
      const double t = request.t_start + dt * i;
      try {
        out[static_cast<std::size_t>(i)] = eval_one(request, t);
      } catch (const TruncationFailure& e) {
        std::lock_guard<std::mutex> lock(fail_mutex);
        if (fail_index < 0 || i < fail_index) {
          fail_index = i;
          std::ostringstream msg;
          msg << e.what() << " (row " << i << ", t=" << t << ")";
          fail_message = msg.str();
          fail_residual = e.attained_residual();
          fail_terms = e.terms_used();
        }
        failed.store(true);
        return;
      }
    }
  };

  if (n_threads == 1) {
    worker(0, n);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (n + n_threads - 1) / n_threads;
    for (int w = 0; w < n_threads; ++w) {
      const int begin = w * chunk;
      const int end = std::min(n, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  if (failed.load()) {
    throw TruncationFailure(fail_message, fail_residual, fail_terms);
  }
  return out;
}

TimeSeries to_time_series(const EvolveRequest& request, const std::vector<EvolvePoint>& points) {
  TimeSeries s;
  s.x = request.x;
  s.t0 = request.t_start;
  s.dt = (request.t_end - request.t_start) / (request.n_samples - 1);
  s.rho.reserve(points.size());
  s.psi.reserve(points.size());
  for (const auto& p : points) {
    s.rho.push_back(p.rho);
    s.psi.push_back(p.psi);
  }
  s.tag = SetupTag{request.solver, request.E, request.V, request.hbar, request.mass, request.c,
                   request.policy};
  return s;
}

}  // namespace kgt
