#include <blochtomo/data.hpp>

#include <json.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace blochtomo {

int CountRecord::up(int axis) const {
  switch (axis) {
    case 0: return nx_up;
    case 1: return ny_up;
    case 2: return nz_up;
  }
  throw std::out_of_range("CountRecord::up: axis");
}

int CountRecord::down(int axis) const {
  switch (axis) {
    case 0: return nx_down;
    case 1: return ny_down;
    case 2: return nz_down;
  }
  throw std::out_of_range("CountRecord::down: axis");
}

double sample_mean(int n_up, int n_down) {
  const int n = n_up + n_down;
  if (n < 1) throw std::domain_error("sample_mean: empty axis");
  return static_cast<double>(n_up - n_down) / n;
}

double sample_error(int n_up, int n_down) {
  const int n = n_up + n_down;
  if (n < 1) throw std::domain_error("sample_error: empty axis");
  return 2.0 * std::sqrt(static_cast<double>(n_up) * n_down) / (n * std::sqrt(double(n)));
}

std::vector<CountRecord> enumerate_outcomes(int n_x, int n_y, int n_z) {
  if (n_x < 0 || n_y < 0 || n_z < 0)
    throw std::domain_error("enumerate_outcomes: negative shot count");
  std::vector<CountRecord> out;
  out.reserve(std::size_t(n_x + 1) * (n_y + 1) * (n_z + 1));
  for (int i = 0; i <= n_x; ++i)
    for (int j = 0; j <= n_y; ++j)
      for (int k = 0; k <= n_z; ++k)
        out.push_back({i, n_x - i, j, n_y - j, k, n_z - k});
  return out;
}

std::size_t outcome_index(const CountRecord& c) {
  return (std::size_t(c.nx_up) * (c.ny() + 1) + c.ny_up) * (c.nz() + 1) + c.nz_up;
}

NoiseModel::NoiseModel(double e) : eta(e) {
  if (!(e >= 0.0 && e <= 1.0)) throw std::domain_error("NoiseModel: eta must be in [0, 1]");
}

NoiseModel NoiseModel::compose(const NoiseModel& other) const {
  return NoiseModel(eta * other.eta);
}

StateReport to_positivist(const Vec3& platonic, const NoiseModel& noise) {
  if (platonic.squaredNorm() > 1.0 + 1e-12)
    throw std::domain_error("to_positivist: unphysical platonic state");
  return {ReportKind::positivist, noise.eta * platonic};
}

namespace {

// splitmix64; counter-based so (seed, axis, shot) fully determines the draw
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

int binomial_draw(int n, double p, std::uint64_t seed, std::uint64_t stream) {
  int k = 0;
  for (int i = 0; i < n; ++i) {
    const std::uint64_t u = mix64(mix64(seed ^ (stream << 20)) + std::uint64_t(i));
    if ((u >> 11) * 0x1.0p-53 < p) ++k;
  }
  return k;
}

}  // namespace

CountRecord sample_outcome(const Vec3& r, double eta, int n_x, int n_y, int n_z,
                           std::uint64_t seed) {
  if (!(r.squaredNorm() <= 1.0 + 1e-12))
    throw std::domain_error("sample_outcome: unphysical state");
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::domain_error("sample_outcome: bad eta");
  const int nu[3] = {binomial_draw(n_x, 0.5 * (1.0 + eta * r.x()), seed, 1),
                     binomial_draw(n_y, 0.5 * (1.0 + eta * r.y()), seed, 2),
                     binomial_draw(n_z, 0.5 * (1.0 + eta * r.z()), seed, 3)};
  return {nu[0], n_x - nu[0], nu[1], n_y - nu[1], nu[2], n_z - nu[2]};
}

std::string to_json(const CountRecord& c) {
  nlohmann::ordered_json j;
  j["nx"] = {c.nx_up, c.nx_down};
  j["ny"] = {c.ny_up, c.ny_down};
  j["nz"] = {c.nz_up, c.nz_down};
  return j.dump();
}

std::string to_csv(const CountRecord& c) {
  std::ostringstream os;
  os << c.nx_up << ',' << c.nx_down << ',' << c.ny_up << ',' << c.ny_down << ','
     << c.nz_up << ',' << c.nz_down;
  return os.str();
}

CountRecord count_record_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  auto pair = [&](const char* key, int& up, int& down) {
    const auto& a = j.at(key);
    if (!a.is_array() || a.size() != 2) throw std::invalid_argument("count record: bad axis");
    up = a[0].get<int>();
    down = a[1].get<int>();
    if (up < 0 || down < 0) throw std::invalid_argument("count record: negative count");
  };
  CountRecord c;
  pair("nx", c.nx_up, c.nx_down);
  pair("ny", c.ny_up, c.ny_down);
  pair("nz", c.nz_up, c.nz_down);
  return c;
}

CountRecord count_record_from_csv(const std::string& line) {
  std::istringstream is(line);
  int v[6];
  char sep;
  for (int i = 0; i < 6; ++i) {
    if (i > 0 && !(is >> sep && sep == ',')) throw std::invalid_argument("count record: bad csv");
    if (!(is >> v[i]) || v[i] < 0) throw std::invalid_argument("count record: bad csv");
  }
  return {v[0], v[1], v[2], v[3], v[4], v[5]};
}

}  // namespace blochtomo
