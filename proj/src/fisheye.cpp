#include "evego/fisheye.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "evego/errors.hpp"

namespace evego {

namespace {

constexpr double kPi = 3.14159265358979323846;

double horner(const double* coeffs, std::size_t n, double x) {
  double acc = 0.0;
  for (std::size_t i = n; i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

}  // namespace

double FisheyeIntrinsics::theta_max() const { return fov_deg * kPi / 360.0; }

double forward_poly(const FisheyeIntrinsics& intr, double rho) {
  return horner(intr.poly.data(), intr.poly.size(), rho);
}

double incidence_angle(const FisheyeIntrinsics& intr, double rho) {
  return std::atan2(rho, forward_poly(intr, rho));
}

double inverse_poly(const FisheyeIntrinsics& intr, double theta) {
  return horner(intr.inv_poly.data(), intr.inv_poly.size(), theta);
}

std::vector<double> fit_inverse_polynomial(const FisheyeIntrinsics& intr, int degree,
                                           int samples) {
  if (degree < 1 || samples <= degree)
    throw usage_error("InvariantViolation: inverse fit needs degree >= 1 and samples > degree");
  const double theta_max = intr.theta_max();

  // Sample (theta, rho) pairs uniformly in rho so the difficult outer region
  // is represented, then solve the Vandermonde system in u = theta/theta_max.
  Eigen::MatrixXd A(samples, degree + 1);
  Eigen::VectorXd b(samples);
  for (int i = 0; i < samples; ++i) {
    const double rho = intr.max_radius * i / (samples - 1);
    const double u = incidence_angle(intr, rho) / theta_max;
    double pw = 1.0;
    for (int j = 0; j <= degree; ++j) {
      A(i, j) = pw;
      pw *= u;
    }
    b(i) = rho;
  }
  Eigen::VectorXd sol = A.colPivHouseholderQr().solve(b);

  // Expand from the normalized variable back to plain theta.
  std::vector<double> coeffs(degree + 1);
  double scale = 1.0;
  for (int j = 0; j <= degree; ++j) {
    coeffs[j] = sol(j) * scale;
    scale /= theta_max;
  }
  return coeffs;
}

void validate_intrinsics(FisheyeIntrinsics& intr) {
  if (intr.width <= 0 || intr.height <= 0)
    throw data_error("InvariantViolation: image size must be positive");
  if (!(intr.cx >= 0.0 && intr.cx < intr.width && intr.cy >= 0.0 && intr.cy < intr.height))
    throw data_error("InvariantViolation: principal point outside image bounds");
  if (std::abs(intr.c - intr.d * intr.e) < 1e-12)
    throw data_error("InvariantViolation: stretch matrix is singular (c - d*e = 0)");
  if (!(intr.fov_deg > 0.0 && intr.fov_deg < 360.0))
    throw data_error("InvariantViolation: field of view must lie in (0, 360) degrees");
  if (!(intr.poly[0] > 0.0))
    throw data_error("InvariantViolation: on-axis polynomial value must be positive");

  // Locate the sensor radius where the incidence angle reaches fov/2. If the
  // polynomial never bends that far the stated field of view is a lie.
  const double theta_max = intr.theta_max();
  double hi = std::hypot(double(intr.width), double(intr.height));
  int doublings = 0;
  while (incidence_angle(intr, hi) < theta_max) {
    hi *= 2.0;
    if (++doublings > 16)
      throw data_error("InvariantViolation: forward polynomial never reaches fov/2");
  }
  double lo = 0.0;
  for (int it = 0; it < 200 && hi - lo > 1e-10 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (incidence_angle(intr, mid) < theta_max ? lo : hi) = mid;
  }
  intr.max_radius = 0.5 * (lo + hi);

  // The angle must strictly increase with radius out to fov/2, or projection
  // would be ambiguous and any inverse fit meaningless.
  const int kProbes = 2048;
  double prev = incidence_angle(intr, 0.0);
  for (int i = 1; i <= kProbes; ++i) {
    const double theta = incidence_angle(intr, intr.max_radius * i / kProbes);
    if (!(theta > prev))
      throw data_error("InvariantViolation: incidence angle not monotone in radius");
    prev = theta;
  }

  if (intr.inv_poly.empty()) intr.inv_poly = fit_inverse_polynomial(intr);
}

ProjectResult try_project(const FisheyeIntrinsics& intr, const Eigen::Vector3d& point) {
  ProjectResult res;
  if (point.norm() < 1e-6) {
    res.status = ProjectStatus::DegeneratePoint;
    return res;
  }
  const double r = std::hypot(point.x(), point.y());
  const double theta = std::atan2(r, point.z());
  if (theta - intr.theta_max() > 1e-9) {
    res.status = ProjectStatus::OutsideFieldOfView;
    return res;
  }
  double mx = 0.0, my = 0.0;
  if (r > 0.0) {
    const double rho = inverse_poly(intr, theta);
    mx = rho * point.x() / r;
    my = rho * point.y() / r;
  }
  res.pixel.x() = intr.c * mx + intr.d * my + intr.cx;
  res.pixel.y() = intr.e * mx + my + intr.cy;
  return res;
}

Eigen::Vector2d project(const FisheyeIntrinsics& intr, const Eigen::Vector3d& point) {
  const ProjectResult res = try_project(intr, point);
  switch (res.status) {
    case ProjectStatus::DegeneratePoint:
      throw numeric_error("DegeneratePoint: point too close to the camera origin");
    case ProjectStatus::OutsideFieldOfView:
      throw numeric_error("OutsideFieldOfView: incidence angle exceeds fov/2");
    case ProjectStatus::Ok:
      break;
  }
  return res.pixel;
}

Eigen::Vector3d unproject(const FisheyeIntrinsics& intr, const Eigen::Vector2d& pixel) {
  if (!(pixel.x() >= 0.0 && pixel.x() < intr.width && pixel.y() >= 0.0 &&
        pixel.y() < intr.height))
    throw numeric_error("OutsideImage: pixel not inside the image");

  const double det = intr.c - intr.d * intr.e;
  const double du = pixel.x() - intr.cx;
  const double dv = pixel.y() - intr.cy;
  const double mx = (du - intr.d * dv) / det;
  const double my = (-intr.e * du + intr.c * dv) / det;
  const double rho = std::hypot(mx, my);
  Eigen::Vector3d dir(mx, my, forward_poly(intr, rho));
  return dir.normalized();
}

namespace {

std::vector<double> parse_numbers(const std::string& rest, const std::string& key) {
  std::istringstream ss(rest);
  std::vector<double> vals;
  double v;
  while (ss >> v) vals.push_back(v);
  std::string trailing;
  if (ss.clear(), ss >> trailing)
    throw data_error("ParseError: non-numeric value for key '" + key + "'");
  return vals;
}

void expect_count(const std::vector<double>& vals, std::size_t n, const std::string& key) {
  if (vals.size() != n)
    throw data_error("ParseError: key '" + key + "' expects " + std::to_string(n) + " values");
}

}  // namespace

FisheyeIntrinsics load_intrinsics(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw data_error("FileNotFound: " + path.string());

  FisheyeIntrinsics intr;
  std::map<std::string, bool> seen;
  std::string line;
  while (std::getline(is, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string key;
    if (!(ss >> key)) continue;
    std::string rest;
    std::getline(ss, rest);
    const std::vector<double> vals = parse_numbers(rest, key);

    if (key == "size") {
      expect_count(vals, 2, key);
      intr.width = static_cast<int>(vals[0]);
      intr.height = static_cast<int>(vals[1]);
    } else if (key == "poly") {
      expect_count(vals, 5, key);
      std::copy(vals.begin(), vals.end(), intr.poly.begin());
    } else if (key == "inv_poly") {
      if (vals.empty()) throw data_error("ParseError: key 'inv_poly' expects at least 1 value");
      intr.inv_poly = vals;
    } else if (key == "center") {
      expect_count(vals, 2, key);
      intr.cx = vals[0];
      intr.cy = vals[1];
    } else if (key == "stretch") {
      expect_count(vals, 3, key);
      intr.c = vals[0];
      intr.d = vals[1];
      intr.e = vals[2];
    } else if (key == "fov_deg") {
      expect_count(vals, 1, key);
      intr.fov_deg = vals[0];
    } else {
      throw data_error("ParseError: unknown intrinsics key '" + key + "'");
    }
    seen[key] = true;
  }

  for (const char* required : {"size", "poly", "center", "stretch", "fov_deg"})
    if (!seen.count(required))
      throw data_error("ParseError: missing required intrinsics key '" + std::string(required) +
                       "'");

  validate_intrinsics(intr);
  return intr;
}

void save_intrinsics(const std::filesystem::path& path, const FisheyeIntrinsics& intr) {
  std::ofstream os(path);
  if (!os) throw data_error("FileNotFound: cannot open " + path.string() + " for writing");
  os.precision(std::numeric_limits<double>::max_digits10);
  os << "size " << intr.width << " " << intr.height << "\n";
  os << "poly";
  for (double a : intr.poly) os << " " << a;
  os << "\n";
  if (!intr.inv_poly.empty()) {
    os << "inv_poly";
    for (double b : intr.inv_poly) os << " " << b;
    os << "\n";
  }
  os << "center " << intr.cx << " " << intr.cy << "\n";
  os << "stretch " << intr.c << " " << intr.d << " " << intr.e << "\n";
  os << "fov_deg " << intr.fov_deg << "\n";
  if (!os) throw data_error("FileNotFound: write failed for " + path.string());
}

}  // namespace evego
