#include <blochtomo/harness.hpp>

#include <blochtomo/core.hpp>

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <thread>

namespace blochtomo {

void MethodSpec::validate() const {
  const bool needs_prior = method == MethodKind::mle || method == MethodKind::bme;
  if (needs_prior && !prior)
    throw std::invalid_argument("MethodSpec: mle/bme require a prior");
  if (!needs_prior && prior)
    throw std::invalid_argument("MethodSpec: this method takes no prior");
  if (quad && method != MethodKind::bme)
    throw std::invalid_argument("MethodSpec: quadrature only applies to bme");
  if (quad) quad->validate();
}

std::string MethodSpec::name() const {
  switch (method) {
    case MethodKind::direct: return "direct";
    case MethodKind::scaled: return "scaled";
    case MethodKind::fisher: return "fisher";
    case MethodKind::mle: return "mle:" + prior->name();
    case MethodKind::bme: return "bme:" + prior->name();
  }
  return "?";
}

MethodSpec MethodSpec::parse(const std::string& method_name,
                             const std::string& prior_name) {
  MethodSpec s;
  if (method_name == "direct") s.method = MethodKind::direct;
  else if (method_name == "scaled") s.method = MethodKind::scaled;
  else if (method_name == "fisher") s.method = MethodKind::fisher;
  else if (method_name == "mle") s.method = MethodKind::mle;
  else if (method_name == "bme") s.method = MethodKind::bme;
  else throw std::invalid_argument("unknown method: " + method_name);

  if (s.method == MethodKind::mle)
    s.prior = Prior::parse(prior_name.empty() ? "hs" : prior_name);
  else if (s.method == MethodKind::bme)
    s.prior = Prior::parse(prior_name.empty() ? "bures" : prior_name);
  else if (!prior_name.empty())
    throw std::invalid_argument("method " + method_name + " takes no prior");
  s.validate();
  return s;
}

namespace {

Vec3 clip_to_ball(const Vec3& v) {
  const double n = v.norm();
  return n > 1.0 ? Vec3(v / n) : v;
}

Estimate run_one(const MethodSpec& spec, const CountRecord& c, double eta,
                 const PosteriorGrid* grid) {
  switch (spec.method) {
    case MethodKind::direct: {
      Estimate e = direct_inversion(c);
      e.vector /= eta;
      return e;
    }
    case MethodKind::scaled: {
      Estimate e = direct_inversion(c);
      e.method = "scaled";
      e.alpha.reset();
      e.vector = clip_to_ball(e.vector / eta);
      return e;
    }
    case MethodKind::fisher:
      return fisher_minimizer(c, eta);
    case MethodKind::mle:
      return mle(c, *spec.prior, eta);
    case MethodKind::bme: {
      Estimate e;
      e.method = "bme:" + spec.prior->name();
      const Posterior p = posterior(*grid, c);
      e.vector = p.mean;
      e.covariance = p.covariance;
      return e;
    }
  }
  throw std::logic_error("run_one: unreachable");
}

// per-axis binomial pmf over up-counts; valid for any |mean| <= 1
std::vector<double> axis_pmf(int n, double mean, double eta) {
  const double p = 0.5 * (1.0 + eta * mean);
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("axis_pmf: |component| must be <= 1");
  std::vector<double> pmf(n + 1, 0.0);
  if (p == 0.0) {
    pmf[0] = 1.0;
    return pmf;
  }
  if (p == 1.0) {
    pmf[n] = 1.0;
    return pmf;
  }
  const double lp = std::log(p), lq = std::log1p(-p);
  for (int k = 0; k <= n; ++k)
    pmf[k] = std::exp(log_binomial(n, k) + k * lp + (n - k) * lq);
  return pmf;
}

}  // namespace

Estimate run_method(const MethodSpec& spec, const CountRecord& counts, double eta) {
  spec.validate();
  if (spec.method == MethodKind::bme) {
    const PosteriorGrid grid(*spec.prior, eta, spec.quad.value_or(QuadratureSpec{}));
    return run_one(spec, counts, eta, &grid);
  }
  return run_one(spec, counts, eta, nullptr);
}

EstimatorTable EstimatorTable::build(const MethodSpec& spec, int n_per_axis,
                                     double eta, int threads) {
  return build_rect(spec, n_per_axis, n_per_axis, n_per_axis, eta, threads);
}

EstimatorTable EstimatorTable::build_rect(const MethodSpec& spec, int n_x, int n_y,
                                          int n_z, double eta, int threads) {
  spec.validate();
  if (n_x < 1 || n_y < 1 || n_z < 1)
    throw std::domain_error("EstimatorTable: per-axis totals must be >= 1");
  EstimatorTable t;
  t.spec = spec;
  t.n_x = n_x;
  t.n_y = n_y;
  t.n_z = n_z;
  t.eta = eta;
  const std::size_t total =
      std::size_t(n_x + 1) * std::size_t(n_y + 1) * std::size_t(n_z + 1);
  t.vectors.assign(total, Vec3::Zero());
  t.failed.assign(total, 0);

  std::unique_ptr<PosteriorGrid> grid;
  if (spec.method == MethodKind::bme)
    grid = std::make_unique<PosteriorGrid>(
        *spec.prior, eta, spec.quad.value_or(reduced_bme_quadrature()));

  // canonical outcomes have n_up >= n_down on every axis; all others follow
  // by sign-flip equivariance
  std::vector<std::array<int, 3>> canonical;
  for (int a = (n_x + 1) / 2; a <= n_x; ++a)
    for (int b = (n_y + 1) / 2; b <= n_y; ++b)
      for (int c = (n_z + 1) / 2; c <= n_z; ++c) canonical.push_back({a, b, c});

  auto index = [&](int a, int b, int c) {
    return (std::size_t(a) * (n_y + 1) + b) * (n_z + 1) + c;
  };

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t w = begin; w < end; ++w) {
      const auto [a, b, c] = canonical[w];
      const CountRecord rec{a, n_x - a, b, n_y - b, c, n_z - c};
      const Estimate e = run_one(spec, rec, eta, grid.get());
      Vec3 v = e.vector;
      // a balanced axis has an exactly-zero component by symmetry; enforce it
      // so that the distributed sign images agree bit-exactly
      if (2 * a == n_x) v.x() = 0.0;
      if (2 * b == n_y) v.y() = 0.0;
      if (2 * c == n_z) v.z() = 0.0;
      const char fail = e.ok() ? 0 : 1;
      for (int sx = 0; sx < (2 * a == n_x ? 1 : 2); ++sx)
        for (int sy = 0; sy < (2 * b == n_y ? 1 : 2); ++sy)
          for (int sz = 0; sz < (2 * c == n_z ? 1 : 2); ++sz) {
            const std::size_t i = index(sx ? n_x - a : a, sy ? n_y - b : b,
                                        sz ? n_z - c : c);
            t.vectors[i] =
                Vec3((sx ? -1 : 1) * v.x(), (sy ? -1 : 1) * v.y(),
                     (sz ? -1 : 1) * v.z());
            t.failed[i] = fail;
          }
    }
  };

  int nthreads = threads > 0 ? threads
                             : static_cast<int>(std::thread::hardware_concurrency());
  nthreads = std::clamp(nthreads, 1, static_cast<int>(canonical.size()));
  if (nthreads == 1) {
    work(0, canonical.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (canonical.size() + nthreads - 1) / nthreads;
    for (int k = 0; k < nthreads; ++k) {
      const std::size_t begin = k * chunk;
      const std::size_t end = std::min(canonical.size(), begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  return t;
}

std::vector<double> outcome_weights(const Vec3& seed, double eta, int n_x, int n_y,
                                    int n_z) {
  const auto px = axis_pmf(n_x, seed.x(), eta);
  const auto py = axis_pmf(n_y, seed.y(), eta);
  const auto pz = axis_pmf(n_z, seed.z(), eta);
  std::vector<double> w;
  w.reserve(px.size() * py.size() * pz.size());
  for (double wa : px)
    for (double wb : py) {
      const double wab = wa * wb;
      for (double wc : pz) w.push_back(wab * wc);
    }
  return w;
}

SweepResult sweep(const EstimatorTable& t, const Vec3& seed) {
  const auto w = outcome_weights(seed, t.eta, t.n_x, t.n_y, t.n_z);
  double z = 0.0, fail = 0.0, d2 = 0.0;
  Vec3 m1 = Vec3::Zero();
  Mat3 m2 = Mat3::Zero();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (t.failed[i]) {
      fail += w[i];
      continue;
    }
    z += w[i];
    m1 += w[i] * t.vectors[i];
    m2 += w[i] * t.vectors[i] * t.vectors[i].transpose();
    d2 += w[i] * (t.vectors[i] - seed).squaredNorm();
  }
  SweepResult r;
  r.failure_probability = fail;
  r.mean = m1 / z;
  r.covariance = m2 / z - r.mean * r.mean.transpose();
  r.accuracy = 0.5 * std::sqrt(d2 / z);
  return r;
}

SweepResult bootstrap(const Vec3& seed, const MethodSpec& spec, int n_per_axis,
                      double eta, bool parametric, int threads) {
  if (parametric && !is_physical(seed))
    throw std::domain_error("bootstrap: parametric mode requires a physical seed");
  if (seed.cwiseAbs().maxCoeff() > 1.0)
    throw std::domain_error("bootstrap: every seed component must be in [-1, 1]");
  const EstimatorTable t = EstimatorTable::build(spec, n_per_axis, eta, threads);
  return sweep(t, seed);
}

double accuracy(const EstimatorTable& t, const Vec3& true_state) {
  if (!is_physical(true_state))
    throw std::domain_error("accuracy: true state must be physical");
  const auto w = outcome_weights(true_state, t.eta, t.n_x, t.n_y, t.n_z);
  double z = 0.0, d2 = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (t.failed[i]) continue;
    z += w[i];
    d2 += w[i] * (t.vectors[i] - true_state).squaredNorm();
  }
  return 0.5 * std::sqrt(d2 / z);
}

double failure_probability(const EstimatorTable& t, const Vec3& true_state) {
  const auto w = outcome_weights(true_state, t.eta, t.n_x, t.n_y, t.n_z);
  double fail = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (t.failed[i]) fail += w[i];
  return fail;
}

double averaged_accuracy(const EstimatorTable& t, const Prior& averaging_prior,
                         const QuadratureSpec& state_grid) {
  state_grid.validate();
  std::vector<Vec3> states;
  std::vector<double> mass;  // quadrature weight x prior density
  if (averaging_prior.surface()) {
    SphereGrid g(state_grid.polar_nodes, state_grid.azimuthal_nodes);
    states = std::move(g.points);
    for (double w : g.weights) mass.push_back(w / (4.0 * M_PI));
  } else {
    BallGrid g(state_grid);
    states = std::move(g.points);
    mass.reserve(states.size());
    for (std::size_t i = 0; i < states.size(); ++i)
      mass.push_back(g.weights[i] * averaging_prior.radial_density(states[i].norm()));
  }

  // flatten the table for the hot loop
  const std::size_t n_out = t.vectors.size();
  std::vector<double> vx(n_out), vy(n_out), vz(n_out), vn2(n_out);
  for (std::size_t i = 0; i < n_out; ++i) {
    vx[i] = t.vectors[i].x();
    vy[i] = t.vectors[i].y();
    vz[i] = t.vectors[i].z();
    vn2[i] = t.vectors[i].squaredNorm();
  }

  double num = 0.0, den = 0.0;
  for (std::size_t s = 0; s < states.size(); ++s) {
    const Vec3& r = states[s];
    // accuracy is sign-flip invariant: fold each orbit onto its canonical
    // member in the closed positive octant (the grids are flip-symmetric)
    if (r.x() < 0.0 || r.y() < 0.0 || r.z() < 0.0) continue;
    double orbit = 1.0;
    for (int i = 0; i < 3; ++i)
      if (r[i] > 0.0) orbit *= 2.0;
    const double m = mass[s] * orbit;
    if (m == 0.0) continue;

    const auto px = axis_pmf(t.n_x, r.x(), t.eta);
    const auto py = axis_pmf(t.n_y, r.y(), t.eta);
    const auto pz = axis_pmf(t.n_z, r.z(), t.eta);
    double s0 = 0.0, sx = 0.0, sy = 0.0, sz = 0.0, s2 = 0.0;
    std::size_t i = 0;
    for (int a = 0; a <= t.n_x; ++a)
      for (int b = 0; b <= t.n_y; ++b) {
        const double wab = px[a] * py[b];
        for (int c = 0; c <= t.n_z; ++c, ++i) {
          if (t.failed[i]) continue;
          const double w = wab * pz[c];
          s0 += w;
          sx += w * vx[i];
          sy += w * vy[i];
          sz += w * vz[i];
          s2 += w * vn2[i];
        }
      }
    const double d2 =
        0.25 *
        (s2 - 2.0 * (r.x() * sx + r.y() * sy + r.z() * sz) + r.squaredNorm() * s0) /
        s0;
    num += m * d2;
    den += m;
  }
  return std::sqrt(num / den);
}

double unphysical_probability(const Vec3& r, int n_per_axis, double eta) {
  if (!is_physical(r))
    throw std::domain_error("unphysical_probability: state must be physical");
  const int n = n_per_axis;
  const auto px = axis_pmf(n, r.x(), eta);
  const auto py = axis_pmf(n, r.y(), eta);
  const auto pz = axis_pmf(n, r.z(), eta);
  double p = 0.0;
  for (int a = 0; a <= n; ++a) {
    const double x = sample_mean(a, n - a);
    for (int b = 0; b <= n; ++b) {
      const double y = sample_mean(b, n - b);
      const double wab = px[a] * py[b];
      for (int c = 0; c <= n; ++c) {
        const double z = sample_mean(c, n - c);
        if (x * x + y * y + z * z > 1.0) p += wab * pz[c];
      }
    }
  }
  return p;
}

Histogram2D xy_histogram(const EstimatorTable& t, const Vec3& seed, int bins) {
  if (bins < 1) throw std::domain_error("xy_histogram: bins must be >= 1");
  Histogram2D h;
  h.bins = bins;
  h.mass.assign(std::size_t(bins) * bins, 0.0);
  const auto w = outcome_weights(seed, t.eta, t.n_x, t.n_y, t.n_z);
  auto bin = [&](double v) {
    const int i = static_cast<int>(std::floor((v - h.lo) / (h.hi - h.lo) * bins));
    return std::clamp(i, 0, bins - 1);
  };
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (t.failed[i]) continue;
    h.mass[std::size_t(bin(t.vectors[i].x())) * bins + bin(t.vectors[i].y())] += w[i];
  }
  return h;
}

bool ReproduceReport::all_pass() const {
  for (const auto& c : cells)
    if (!c.pass) return false;
  return true;
}

std::vector<MethodSpec> table1_methods() {
  std::vector<MethodSpec> m;
  m.push_back(MethodSpec::parse("scaled"));
  m.push_back(MethodSpec::parse("fisher"));
  m.push_back(MethodSpec::parse("mle", "pure"));
  m.push_back(MethodSpec::parse("mle", "hs"));
  m.push_back(MethodSpec::parse("mle", "chernoff+entropy"));
  m.push_back(MethodSpec::parse("mle", "bures+entropy"));
  m.push_back(MethodSpec::parse("mle", "hs+entropy"));
  m.push_back(MethodSpec::parse("bme", "pure"));
  m.push_back(MethodSpec::parse("bme", "chernoff"));
  m.push_back(MethodSpec::parse("bme", "bures"));
  m.push_back(MethodSpec::parse("bme", "hs"));
  m.push_back(MethodSpec::parse("bme", "chernoff+entropy"));
  m.push_back(MethodSpec::parse("bme", "bures+entropy"));
  m.push_back(MethodSpec::parse("bme", "hs+entropy"));
  return m;
}

std::vector<MethodSpec> table2_methods() {
  std::vector<MethodSpec> m;
  m.push_back(MethodSpec::parse("scaled"));
  m.push_back(MethodSpec::parse("fisher"));
  m.push_back(MethodSpec::parse("mle", "pure"));
  m.push_back(MethodSpec::parse("mle", "chernoff"));
  m.push_back(MethodSpec::parse("mle", "bures"));
  m.push_back(MethodSpec::parse("mle", "hs"));
  m.push_back(MethodSpec::parse("mle", "chernoff+entropy"));
  m.push_back(MethodSpec::parse("mle", "bures+entropy"));
  m.push_back(MethodSpec::parse("mle", "hs+entropy"));
  m.push_back(MethodSpec::parse("bme", "pure"));
  m.push_back(MethodSpec::parse("bme", "chernoff"));
  m.push_back(MethodSpec::parse("bme", "bures"));
  m.push_back(MethodSpec::parse("bme", "hs"));
  m.push_back(MethodSpec::parse("bme", "chernoff+entropy"));
  m.push_back(MethodSpec::parse("bme", "bures+entropy"));
  m.push_back(MethodSpec::parse("bme", "hs+entropy"));
  return m;
}

std::vector<Vec3> table2_states() {
  const double s2 = 1.0 / std::sqrt(2.0), s3 = 1.0 / std::sqrt(3.0);
  return {Vec3(0, 0, 0),  Vec3(0, 0, 0.5),  Vec3(0, 0, 0.9),
          Vec3(0, 0, 1),  Vec3(s2, s2, 0),  Vec3(s3, s3, s3)};
}

namespace {

constexpr int kShots = 30;

void add_cell(ReproduceReport& rep, const std::string& row, const std::string& col,
              double reference, double computed, double tol) {
  CellCheck c;
  c.row = row;
  c.column = col;
  c.reference = reference;
  c.computed = computed;
  c.tolerance = tol;
  c.pass = std::abs(computed - reference) <= tol;
  rep.cells.push_back(c);
}

void add_ratio_cell(ReproduceReport& rep, const std::string& row,
                    const std::string& col, double reference, double computed,
                    double factor) {
  CellCheck c;
  c.row = row;
  c.column = col;
  c.reference = reference;
  c.computed = computed;
  c.tolerance = reference * (factor - 1.0);
  c.pass = computed <= reference * factor && computed >= reference / factor;
  rep.cells.push_back(c);
}

ReproduceReport reproduce_fig(const std::string& name, int threads) {
  ReproduceReport rep;
  rep.name = name;
  (void)threads;
  if (name == "fig1") {
    const CountRecord c{29, 1, 25, 5, 15, 15};
    add_cell(rep, "direct", "x", 14.0 / 15.0, direct_inversion(c).vector.x(), 1e-12);
    add_cell(rep, "direct", "y", 2.0 / 3.0, direct_inversion(c).vector.y(), 1e-12);
    add_cell(rep, "direct", "z", 0.0, direct_inversion(c).vector.z(), 1e-12);
    struct Row {
      const char* method;
      const char* prior;
      double x, y;
    };
    const Row rows[] = {
        {"scaled", "", 0.814, 0.581},
        {"mle", "hs", 0.848, 0.530},
        {"fisher", "", 0.866, 0.500},
        {"mle", "hs+entropy", 0.800, 0.494},
        {"mle", "bures+entropy", 0.827, 0.513},
        {"mle", "chernoff+entropy", 0.832, 0.517},
    };
    for (const Row& r : rows) {
      const MethodSpec spec = MethodSpec::parse(r.method, r.prior);
      const Estimate e = run_one(spec, c, 1.0, nullptr);
      add_cell(rep, spec.name(), "x", r.x, e.vector.x(), 5e-4);
      add_cell(rep, spec.name(), "y", r.y, e.vector.y(), 5e-4);
      add_cell(rep, spec.name(), "z", 0.0, e.vector.z(), 5e-4);
    }
    return rep;
  }
  // fig2: inside-ball data, all three estimators coincide with direct inversion
  const CountRecord c{26, 4, 23, 7, 15, 15};
  for (const char* method : {"scaled", "mle", "fisher"}) {
    const MethodSpec spec = MethodSpec::parse(method, method[0] == 'm' ? "hs" : "");
    const Estimate e = run_one(spec, c, 1.0, nullptr);
    add_cell(rep, spec.name(), "x", 0.733, e.vector.x(), 5e-4);
    add_cell(rep, spec.name(), "y", 0.533, e.vector.y(), 5e-4);
    add_cell(rep, spec.name(), "z", 0.0, e.vector.z(), 5e-4);
  }
  return rep;
}

ReproduceReport reproduce_table1(int threads) {
  ReproduceReport rep;
  rep.name = "table1";
  const Vec3 seed(13.0 / 15.0, 0.0, 0.0);
  struct Row {
    const char* method;
    const char* prior;
    double mean_x, dx, dyz, acc;
  };
  const Row rows[] = {
      {"scaled", "", 0.862, 0.086, 0.180, 0.135},
      {"fisher", "", 0.866, 0.091, 0.168, 0.127},
      {"mle", "pure", 0.924, 0.045, 0.269, 0.193},
      {"mle", "hs", 0.864, 0.088, 0.174, 0.131},
      {"mle", "chernoff+entropy", 0.853, 0.084, 0.165, 0.124},
      {"mle", "bures+entropy", 0.844, 0.085, 0.160, 0.122},
      {"mle", "hs+entropy", 0.816, 0.083, 0.149, 0.116},
      {"bme", "pure", 0.907, 0.044, 0.224, 0.161},
      {"bme", "chernoff", 0.842, 0.101, 0.167, 0.129},
      {"bme", "bures", 0.830, 0.077, 0.162, 0.122},
      {"bme", "hs", 0.797, 0.077, 0.148, 0.117},
      {"bme", "chernoff+entropy", 0.790, 0.084, 0.146, 0.118},
      {"bme", "bures+entropy", 0.781, 0.076, 0.142, 0.116},
      {"bme", "hs+entropy", 0.756, 0.075, 0.136, 0.117},
  };
  for (const Row& r : rows) {
    const MethodSpec spec = MethodSpec::parse(r.method, r.prior);
    const EstimatorTable t = EstimatorTable::build(spec, kShots, 1.0, threads);
    const SweepResult s = sweep(t, seed);
    const std::string row = spec.name();
    add_cell(rep, row, "mean_x", r.mean_x, s.mean.x(), 2e-3);
    add_cell(rep, row, "dx", r.dx, std::sqrt(s.covariance(0, 0)), 2e-3);
    add_cell(rep, row, "dyz", r.dyz, std::sqrt(s.covariance(1, 1)), 2e-3);
    add_cell(rep, row, "accuracy", r.acc, s.accuracy, 2e-3);
    if (spec.method == MethodKind::fisher)
      add_ratio_cell(rep, row, "p_fail", 5e-10, s.failure_probability, 2.0);
    if (spec.method == MethodKind::mle && r.prior == std::string("pure"))
      add_cell(rep, row, "p_fail", 0.03, s.failure_probability, 5e-3);
  }
  return rep;
}

ReproduceReport reproduce_table2(bool fast, int threads) {
  ReproduceReport rep;
  rep.name = "table2";
  const auto states = table2_states();
  struct Row {
    const char* method;
    const char* prior;
    bool fail_cells;      // the first four state cells list failure rates
    double cells[6];
    double avg, avg_tol;
  };
  const Row rows[] = {
      {"scaled", "", false, {0.158, 0.151, 0.132, 0.123, 0.116, 0.114}, 0.137, 5e-3},
      {"fisher", "", false, {0.158, 0.151, 0.119, 0.0, 0.126, 0.123}, 0.139, 5e-3},
      {"mle", "pure", true, {0.37, 0.19, 0.03, 0.02, 0.113, 0.107}, 0.111, 1e-2},
      {"mle", "chernoff", true, {0.37, 0.19, 0.03, 0.02, 0.113, 0.107}, 0.167, 1e-2},
      {"mle", "bures", true, {0.37, 0.19, 0.03, 0.02, 0.113, 0.107}, 0.179, 1e-2},
      {"mle", "hs", false, {0.158, 0.151, 0.125, 0.087, 0.117, 0.118}, 0.137, 5e-3},
      {"mle", "chernoff+entropy", false,
       {0.158, 0.150, 0.118, 0.087, 0.118, 0.121}, 0.135, 5e-3},
      {"mle", "bures+entropy", false,
       {0.156, 0.148, 0.116, 0.087, 0.120, 0.124}, 0.135, 5e-3},
      {"mle", "hs+entropy", false,
       {0.150, 0.142, 0.112, 0.090, 0.127, 0.133}, 0.135, 5e-3},
      {"bme", "pure", false, {0.443, 0.306, 0.145, 0.086, 0.111, 0.109}, 0.110, 5e-3},
      {"bme", "chernoff", false,
       {0.316, 0.634, 0.118, 0.089, 0.124, 0.133}, 0.274, 1e-2},
      {"bme", "bures", false, {0.154, 0.149, 0.116, 0.090, 0.121, 0.125}, 0.126, 5e-3},
      {"bme", "hs", false, {0.148, 0.141, 0.112, 0.095, 0.131, 0.136}, 0.131, 5e-3},
      {"bme", "chernoff+entropy", false,
       {1.65, 1.53, 0.112, 0.097, 0.139, 0.161}, 1.08, 1e-2},
      {"bme", "bures+entropy", false,
       {0.146, 0.139, 0.112, 0.099, 0.136, 0.142}, 0.132, 5e-3},
      {"bme", "hs+entropy", false,
       {0.141, 0.134, 0.115, 0.106, 0.144, 0.151}, 0.133, 5e-3},
  };
  const char* state_names[] = {"(0,0,0)",      "(0,0,1/2)",    "(0,0,0.9)",
                               "(0,0,1)",      "(1,1,0)/rt2",  "(1,1,1)/rt3"};
  for (const Row& r : rows) {
    const MethodSpec spec = MethodSpec::parse(r.method, r.prior);
    const std::string row = spec.name();
    if (fast && row != "scaled" && row != "fisher" && row != "mle:hs" &&
        row != "bme:bures")
      continue;
    const EstimatorTable t = EstimatorTable::build(spec, kShots, 1.0, threads);
    const double state_tol = spec.method == MethodKind::bme ? 5e-3 : 2e-3;
    for (int i = 0; i < 6; ++i) {
      if (r.fail_cells && i < 4) {
        add_cell(rep, row, std::string("p_fail ") + state_names[i], r.cells[i],
                 failure_probability(t, states[i]), 5e-3);
      } else {
        const double tol = r.cells[i] == 0.0 ? 1e-12 : state_tol;
        add_cell(rep, row, state_names[i], r.cells[i], accuracy(t, states[i]), tol);
      }
    }
    const Prior avg_prior =
        spec.prior ? *spec.prior : Prior::hilbert_schmidt();
    add_cell(rep, row, "avg", r.avg, averaged_accuracy(t, avg_prior), r.avg_tol);
  }
  return rep;
}

ReproduceReport reproduce_unphysical() {
  ReproduceReport rep;
  rep.name = "unphysical";
  add_ratio_cell(rep, "(0,0,0)", "p_unphysical", 3e-7,
                 unphysical_probability(Vec3::Zero(), kShots), 1.5);
  add_cell(rep, "(0,0,1)", "p_unphysical", 0.98,
           unphysical_probability(Vec3(0, 0, 1), kShots), 5e-3);
  return rep;
}

}  // namespace

ReproduceReport reproduce(const std::string& which, bool fast, int threads) {
  if (which == "fig1" || which == "fig2") return reproduce_fig(which, threads);
  if (which == "table1") return reproduce_table1(threads);
  if (which == "table2") return reproduce_table2(fast, threads);
  if (which == "unphysical") return reproduce_unphysical();
  throw std::invalid_argument("reproduce: unknown report " + which);
}

}  // namespace blochtomo
