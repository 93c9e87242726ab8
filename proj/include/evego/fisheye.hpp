#pragma once

#include <Eigen/Core>
#include <array>
#include <filesystem>
#include <vector>

namespace evego {

/// Scaramuzza omnidirectional model. The camera looks along +z; a scene point
/// at incidence angle theta from the axis lands at sensor radius rho with
/// theta = atan2(rho, poly(rho)), so poly gives the ray's z component at
/// radius rho and goes negative past 90 degrees. inv_poly maps theta back to
/// rho for projection. Pixels relate to the ideal sensor plane through the
/// stretch matrix [[c, d], [e, 1]] and the principal point.
struct FisheyeIntrinsics {
  int width = 0;
  int height = 0;
  std::array<double, 5> poly{};   // z(rho) = poly[0] + poly[1] rho + ... + poly[4] rho^4
  std::vector<double> inv_poly;   // rho(theta), ascending powers; fit at load when absent
  double cx = 0.0, cy = 0.0;      // principal point, pixels
  double c = 1.0, d = 0.0, e = 0.0;  // stretch matrix entries
  double fov_deg = 0.0;

  // Derived by validate_intrinsics: sensor radius where the incidence angle
  // reaches fov/2.
  double max_radius = 0.0;

  double theta_max() const;  // fov/2 in radians
};

/// z component of the ray through sensor radius rho (Horner on poly).
double forward_poly(const FisheyeIntrinsics& intr, double rho);

/// Incidence angle of the ray through sensor radius rho.
double incidence_angle(const FisheyeIntrinsics& intr, double rho);

/// Sensor radius for incidence angle theta (Horner on inv_poly).
double inverse_poly(const FisheyeIntrinsics& intr, double theta);

/// Least-squares polynomial fit of rho(theta) over [0, theta_max], sampled
/// from the forward relation. Returns coefficients in ascending powers of
/// theta. The fit runs in the normalized variable theta/theta_max for
/// conditioning and is expanded back afterwards.
std::vector<double> fit_inverse_polynomial(const FisheyeIntrinsics& intr, int degree = 8,
                                           int samples = 1024);

/// Checks invariants (principal point in bounds, invertible stretch, positive
/// on-axis z, incidence angle strictly increasing out to fov/2), computes
/// max_radius, and fits inv_poly if it is empty. Throws on violation; load
/// calls this, and hand-built intrinsics should pass through it too.
void validate_intrinsics(FisheyeIntrinsics& intr);

enum class ProjectStatus { Ok, OutsideFieldOfView, DegeneratePoint };

struct ProjectResult {
  ProjectStatus status = ProjectStatus::Ok;
  Eigen::Vector2d pixel{0.0, 0.0};
};

/// Projects a camera-frame point (millimeters) to a pixel. Non-throwing;
/// pixel is only meaningful when status == Ok.
ProjectResult try_project(const FisheyeIntrinsics& intr, const Eigen::Vector3d& point);

/// Same, but throws DegeneratePoint (|point| < 1e-6 mm) or OutsideFieldOfView.
Eigen::Vector2d project(const FisheyeIntrinsics& intr, const Eigen::Vector3d& point);

/// Unit ray direction through a pixel. Throws OutsideImage for pixels not in
/// [0,width) x [0,height).
Eigen::Vector3d unproject(const FisheyeIntrinsics& intr, const Eigen::Vector2d& pixel);

// Key-value text format, one entry per line, '#' comments:
//   size 640 480
//   poly a0 a1 a2 a3 a4
//   center cx cy
//   stretch c d e
//   fov_deg 190
//   inv_poly b0 b1 ...   (optional; fitted at load when missing)
FisheyeIntrinsics load_intrinsics(const std::filesystem::path& path);
void save_intrinsics(const std::filesystem::path& path, const FisheyeIntrinsics& intr);

}  // namespace evego
