#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace blochtomo {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Up/down counts of Stern-Gerlach measurements along the three Cartesian axes.
struct CountRecord {
  int nx_up = 0, nx_down = 0;
  int ny_up = 0, ny_down = 0;
  int nz_up = 0, nz_down = 0;

  int nx() const { return nx_up + nx_down; }
  int ny() const { return ny_up + ny_down; }
  int nz() const { return nz_up + nz_down; }

  int up(int axis) const;
  int down(int axis) const;
  int total(int axis) const { return up(axis) + down(axis); }

  bool operator==(const CountRecord&) const = default;
};

/// Sample mean (n_up - n_down) / (n_up + n_down) of a two-outcome measurement.
double sample_mean(int n_up, int n_down);

/// Binomial width estimate 2*sqrt(n_up*n_down) / N^(3/2).
double sample_error(int n_up, int n_down);

/// All (Nx+1)(Ny+1)(Nz+1) outcomes, lexicographic in (nx_up, ny_up, nz_up).
std::vector<CountRecord> enumerate_outcomes(int n_x, int n_y, int n_z);

/// Index of a record in the enumerate_outcomes order.
std::size_t outcome_index(const CountRecord& c);

/// Depolarizing channel fidelity: each shot reflects the state with
/// probability eta, a coin flip otherwise.
struct NoiseModel {
  double eta = 1.0;
  NoiseModel() = default;
  explicit NoiseModel(double e);
  NoiseModel compose(const NoiseModel& other) const;
};

enum class ReportKind { platonic, positivist };

struct StateReport {
  ReportKind kind = ReportKind::platonic;
  Vec3 vector = Vec3::Zero();
};

/// Positivist state eta * r of a platonic state r.
StateReport to_positivist(const Vec3& platonic, const NoiseModel& noise);

/// Deterministic fake-data draw: up-counts are independent binomials with
/// success probabilities (1 + eta*r_i)/2. Identical output for identical
/// (r, eta, shots, seed); shots along different axes use decorrelated streams.
CountRecord sample_outcome(const Vec3& r, double eta, int n_x, int n_y, int n_z,
                           std::uint64_t seed);

// Serialization. JSON: {"nx":[up,down],"ny":[up,down],"nz":[up,down]}.
// CSV: nx_up,nx_down,ny_up,ny_down,nz_up,nz_down.
std::string to_json(const CountRecord& c);
std::string to_csv(const CountRecord& c);
CountRecord count_record_from_json(const std::string& text);
CountRecord count_record_from_csv(const std::string& line);

}  // namespace blochtomo
