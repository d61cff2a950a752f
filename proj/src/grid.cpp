#include "vortexlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "vortexlab/kernels.hpp"

namespace vortexlab {

GridDomain::GridDomain(double half_width, int n)
    : half_width_(half_width), n_(n), h_(0.0) {
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw PreconditionError("GridDomain: half width must be positive");
  if (n < 3) throw PreconditionError("GridDomain: need at least 3 nodes per side");
  h_ = 2.0 * half_width / (n - 1);
}

bool GridDomain::in_inner_square(int i, int j) const {
  if (is_boundary(i, j)) return false;
  const double lim = 0.5 * half_width_ * (1.0 + 1e-12);
  return std::abs(x(i)) <= lim && std::abs(y(j)) <= lim;
}

ScalarField::ScalarField(GridDomain domain, double fill)
    : domain_(domain), values_(domain.size(), fill) {}

ScalarField::ScalarField(GridDomain domain, std::vector<double> values)
    : domain_(domain), values_(std::move(values)) {
  if (values_.size() != domain_.size())
    throw PreconditionError("ScalarField: value count does not match the domain");
}

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

const char* to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::CompleteApprox: return "COMPLETE_APPROX";
    case BoundaryKind::SubsolutionProfile: return "SUBSOLUTION_PROFILE";
    case BoundaryKind::Explicit: return "EXPLICIT";
  }
  return "?";
}

VortexProblem::VortexProblem(EntireFunction phi, int k, GridDomain domain,
                             BoundaryData boundary)
    : phi_(std::move(phi)), k_(k), domain_(domain), boundary_(std::move(boundary)) {
  if (k < 2) throw PreconditionError("VortexProblem: k must be >= 2");
  if (boundary_.values.empty()) boundary_.values.assign(domain_.size(), 0.0);
  if (boundary_.values.size() != domain_.size())
    throw PreconditionError("VortexProblem: boundary data does not match the domain");
  if (boundary_.kind == BoundaryKind::CompleteApprox && !(boundary_.offset >= 0.0))
    throw PreconditionError("VortexProblem: continuation offset must be >= 0");
  const int n = domain_.n();
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      if (domain_.is_boundary(i, j) &&
          !std::isfinite(boundary_.values[domain_.index(i, j)]))
        throw PreconditionError("VortexProblem: boundary values must be finite");
  auto lm = std::make_shared<std::vector<double>>(domain_.size());
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) (*lm)[domain_.index(i, j)] = phi_.log_abs(domain_.node(i, j));
  log_modulus_ = std::move(lm);
}

VortexProblem VortexProblem::with_boundary(BoundaryData boundary) const {
  VortexProblem p = *this;
  if (boundary.values.size() != domain_.size())
    throw PreconditionError("VortexProblem: boundary data does not match the domain");
  p.boundary_ = std::move(boundary);
  return p;
}

ScalarField laplacian(const ScalarField& u) {
  ScalarField out(u.domain());
  kernels::laplacian(u.domain().n(), u.domain().spacing(), u.values(), out.values());
  return out;
}

ScalarField residual(const ScalarField& w, const VortexProblem& prob) {
  if (!(w.domain() == prob.domain()))
    throw PreconditionError("residual: field and problem domains differ");
  ScalarField out(w.domain());
  kernels::vortex_residual(w.domain().n(), w.domain().spacing(), prob.k(),
                           prob.log_modulus(), w.values(), out.values());
  return out;
}

double interior_max_norm(const ScalarField& u) {
  return kernels::max_abs(u.domain().n(), u.values());
}

double inner_max_norm(const ScalarField& u) {
  const GridDomain& d = u.domain();
  double m = 0.0;
  for (int j = 0; j < d.n(); ++j)
    for (int i = 0; i < d.n(); ++i)
      if (d.in_inner_square(i, j)) m = std::max(m, std::abs(u(i, j)));
  return m;
}

void apply_boundary(ScalarField& w, const BoundaryData& b) {
  const GridDomain& d = w.domain();
  if (b.values.size() != d.size())
    throw PreconditionError("apply_boundary: boundary data does not match the domain");
  const int n = d.n();
  for (int i = 0; i < n; ++i) {
    for (int id : {d.index(i, 0), d.index(i, n - 1), d.index(0, i), d.index(n - 1, i)})
      w.values()[id] = b.values[id];
  }
}

ScalarField clipped_profile(const VortexProblem& prob, double floor) {
  ScalarField w(prob.domain());
  const auto& lm = prob.log_modulus();
  for (std::size_t id = 0; id < lm.size(); ++id)
    w.values()[id] = std::max(floor, (2.0 / prob.k()) * lm[id]);
  return w;
}

void write_csv(const ScalarField& u, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("write_csv: cannot open " + path.string());
  out << "x,y,value\n";
  const GridDomain& d = u.domain();
  std::string buf;
  for (int j = 0; j < d.n(); ++j)
    for (int i = 0; i < d.n(); ++i)
      out << fmt::format("{:.17g},{:.17g},{:.17g}\n", d.x(i), d.y(j), u(i, j));
  if (!out) throw Error("write_csv: write failed for " + path.string());
}

ScalarField read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("read_csv: cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  if (line != "x,y,value") throw Error("read_csv: unexpected header in " + path.string());
  std::vector<double> xs, ys, vs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string a, b, c;
    std::getline(row, a, ',');
    std::getline(row, b, ',');
    std::getline(row, c, ',');
    xs.push_back(std::stod(a));
    ys.push_back(std::stod(b));
    vs.push_back(std::stod(c));
  }
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(vs.size()))));
  if (n < 3 || static_cast<std::size_t>(n) * n != vs.size())
    throw Error("read_csv: node count is not a square grid");
  const GridDomain d(-xs.front(), n);
  return ScalarField(d, std::move(vs));
}

}  // namespace vortexlab
