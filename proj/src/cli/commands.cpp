#include "klb/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "klb/basisfn.hpp"
#include "klb/csv.hpp"
#include "klb/error.hpp"
#include "klb/spectral.hpp"

namespace klb::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kWindowPoints = 451;

fs::path prepare_directory(const RunConfig& config) {
  const fs::path dir(config.output.directory);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InvalidArgument("cannot create output directory '" + dir.string() + "': " + ec.message());
  return dir;
}

// Writes through a string buffer so a failed run never leaves half a file.
void write_file(const fs::path& path, const std::string& content, std::ostream& log, const std::string& what) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw InvalidArgument("write failed for '" + path.string() + "'");
  log << "wrote " << path.string() << ": " << what << '\n';
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json nullable(std::optional<double> value) { return value ? json(*value) : json(nullptr); }

json vector_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> points(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) points[static_cast<std::size_t>(k)] = k == n - 1 ? hi : lo + k * (hi - lo) / (n - 1);
  return points;
}

struct WindowErrors {
  std::optional<double> rel_l2;
  std::optional<double> shape;
};

// Relative L2 error against the reference on the error window, and the same
// error after the best scalar rescaling of the numeric solution.
WindowErrors window_errors(const SpectralSolution& sol, const std::function<double(double)>& reference,
                           const ProblemConfig& p) {
  const double lo = std::max(p.error_lo, p.a);
  const double hi = std::min(p.error_hi, p.b);
  WindowErrors out;
  if (!(lo < hi)) return out;
  double diff2 = 0.0, ref2 = 0.0, yy = 0.0, yr = 0.0;
  std::vector<std::pair<double, double>> pairs;
  for (double x : linspace(lo, hi, kWindowPoints)) {
    const double y = sol.value(x);
    const double r = reference(x);
    diff2 += (y - r) * (y - r);
    ref2 += r * r;
    yy += y * y;
    yr += y * r;
    pairs.emplace_back(y, r);
  }
  if (ref2 == 0.0) return out;
  out.rel_l2 = std::sqrt(diff2 / ref2);
  if (yy > 0.0) {
    const double s = yr / yy;
    double shape2 = 0.0;
    for (const auto& [y, r] : pairs) shape2 += (s * y - r) * (s * y - r);
    out.shape = std::sqrt(shape2 / ref2);
  }
  return out;
}

struct ResidualShape {
  double outer_max = 0.0;
  double mid_median = 0.0;
};

// Largest |residual| over the outer 10% at each end against the median over
// the middle 50% of the domain.
ResidualShape residual_shape(std::span<const double> points, std::span<const double> values, double a, double b) {
  const double length = b - a;
  ResidualShape shape;
  std::vector<double> mid;
  for (std::size_t k = 0; k < points.size(); ++k) {
    const double x = points[k];
    const double r = std::abs(values[k]);
    if (x < a + 0.1 * length || x > b - 0.1 * length) shape.outer_max = std::max(shape.outer_max, r);
    if (x >= a + 0.25 * length && x <= a + 0.75 * length) mid.push_back(r);
  }
  if (!mid.empty()) {
    std::sort(mid.begin(), mid.end());
    const std::size_t h = mid.size() / 2;
    shape.mid_median = mid.size() % 2 ? mid[h] : 0.5 * (mid[h - 1] + mid[h]);
  }
  return shape;
}

KLBasis basis_for(const RunConfig& config, const std::optional<std::string>& basis_path) {
  if (basis_path) return read_basis_json(*basis_path);
  return build_pipeline(config).basis;
}

std::vector<BasisFunction> functions_from_columns(const Grid& grid, const Eigen::MatrixXd& columns, int M) {
  auto interp = std::make_shared<const BarycentricInterpolator>(grid);
  std::vector<BasisFunction> functions;
  for (int m = 0; m < M; ++m) functions.emplace_back(interp, columns.col(m), m);
  return functions;
}

void apply_overrides(RunConfig& config, const std::string& out_dir, const std::optional<std::uint64_t>& seed,
                     const std::optional<int>& modes) {
  if (!out_dir.empty()) config.output.directory = out_dir;
  if (seed) config.seed = *seed;
  if (modes) {
    config.truncation.criterion = "fixed";
    config.truncation.value = *modes;
  }
}

}  // namespace

Pipeline build_pipeline(const RunConfig& config) {
  config.validate();
  Pipeline p;
  const Grid grid = make_grid(config.sampling.kind, config.sampling.N_s, config.sampling.a, config.sampling.b);
  p.samples = build_sample_matrix(hydrogen_family(config.family.n_max, config.family.Z), grid,
                                  config.sampling.representation);
  p.centered = center_columns(p.samples);
  p.covariance = covariance(p.centered);
  p.basis = eig_sym(p.covariance);
  p.M = retained_modes(p.basis, config.criterion());
  return p;
}

void write_basis_json(std::ostream& out, const KLBasis& basis, int M, const RunConfig& config) {
  json vectors = json::array();
  for (Eigen::Index m = 0; m < basis.vectors.cols(); ++m) vectors.push_back(vector_json(basis.vectors.col(m)));
  const json j{
      {"grid",
       {{"kind", to_string(basis.grid.kind)}, {"a", basis.grid.a}, {"b", basis.grid.b}, {"points", basis.grid.points}}},
      {"eigenvalues", vector_json(basis.eigenvalues)},
      {"vectors", vectors},
      {"retained_modes", M},
      {"jacobi_sweeps", basis.sweeps},
      {"config", config},
  };
  out << dump(j);
}

KLBasis read_basis_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open basis file '" + path + "'");
  try {
    json j;
    in >> j;
    KLBasis basis;
    const auto& g = j.at("grid");
    basis.grid.kind = grid_kind_from_string(g.at("kind").get<std::string>());
    basis.grid.a = g.at("a").get<double>();
    basis.grid.b = g.at("b").get<double>();
    basis.grid.points = g.at("points").get<std::vector<double>>();
    basis.grid.validate();
    const auto values = j.at("eigenvalues").get<std::vector<double>>();
    const auto vectors = j.at("vectors").get<std::vector<std::vector<double>>>();
    const auto n = static_cast<Eigen::Index>(basis.grid.size());
    if (static_cast<Eigen::Index>(values.size()) != n || static_cast<Eigen::Index>(vectors.size()) != n)
      throw InvalidArgument("basis file '" + path + "': dimensions do not match the grid");
    basis.eigenvalues = Eigen::Map<const Eigen::VectorXd>(values.data(), n);
    basis.vectors.resize(n, n);
    for (Eigen::Index m = 0; m < n; ++m) {
      if (static_cast<Eigen::Index>(vectors[m].size()) != n)
        throw InvalidArgument("basis file '" + path + "': ragged vector " + std::to_string(m));
      basis.vectors.col(m) = Eigen::Map<const Eigen::VectorXd>(vectors[m].data(), n);
    }
    basis.sweeps = j.value("jacobi_sweeps", 0);
    return basis;
  } catch (const json::exception& e) {
    throw InvalidArgument("basis file '" + path + "': " + e.what());
  }
}

Reference make_reference(const RunConfig& config) {
  const auto& p = config.problem;
  if (p.Z == 1.0 && p.l == 0 && p.E == -0.5 && p.a == 0.0 && p.y_a == 0.0) {
    const double b = p.b;
    const double y_f = p.y_f;
    return {"closed-form", [b, y_f](double x) { return reduced_ground_state(b, y_f, x); }};
  }
  auto numerov = std::make_shared<NumerovSolution>(numerov_oracle(config.bvp(), config.output.numerov_points));
  return {"numerov", [numerov](double x) { return (*numerov)(x); }};
}

int cmd_gen_basis(const RunConfig& config, std::ostream& log) {
  config.validate();
  const Pipeline p = build_pipeline(config);
  const fs::path dir = prepare_directory(config);
  const auto n = static_cast<Eigen::Index>(p.samples.grid.size());

  if (config.output.wants("csv")) {
    std::ostringstream samples;
    write_csv(samples, p.samples);
    write_file(dir / "samples.csv", samples.str(), log,
               std::to_string(n) + " x " + std::to_string(p.samples.family.size()) + " samples");

    std::ostringstream cov;
    csv::Writer cov_writer(cov);
    std::vector<std::string> header{"i"};
    for (Eigen::Index j = 0; j < n; ++j) header.push_back("k_" + std::to_string(j));
    cov_writer.header(header);
    for (Eigen::Index i = 0; i < n; ++i) {
      std::vector<double> row(static_cast<std::size_t>(n));
      for (Eigen::Index j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = p.covariance.K(i, j);
      cov_writer.row(std::to_string(i), row);
    }
    write_file(dir / "covariance.csv", cov.str(), log, std::to_string(n) + " x " + std::to_string(n) + " covariance");

    std::ostringstream eig;
    csv::Writer eig_writer(eig);
    eig_writer.header({"index", "lambda"});
    for (Eigen::Index m = 0; m < n; ++m) eig_writer.row(std::to_string(m), std::vector<double>{p.basis.eigenvalues(m)});
    write_file(dir / "eigenvalues.csv", eig.str(), log,
               std::to_string(n) + " eigenvalues, " + std::to_string(p.M) + " retained");

    std::ostringstream vec;
    csv::Writer vec_writer(vec);
    header = {"x"};
    for (Eigen::Index m = 0; m < n; ++m) header.push_back("phi_" + std::to_string(m));
    vec_writer.header(header);
    for (Eigen::Index i = 0; i < n; ++i) {
      std::vector<double> row{p.samples.grid.points[static_cast<std::size_t>(i)]};
      for (Eigen::Index m = 0; m < n; ++m) row.push_back(p.basis.vectors(i, m));
      vec_writer.row(row);
    }
    write_file(dir / "basis.csv", vec.str(), log, std::to_string(n) + " eigenvectors on the sampling grid");

    const auto functions = interpolate(truncate_basis(p.basis, FixedM{p.M}));
    const auto points = linspace(config.sampling.a, config.sampling.b, config.output.tabulation_points);
    std::ostringstream tab;
    write_tabulation_csv(tab, functions, points);
    write_file(dir / "basis_functions.csv", tab.str(), log,
               std::to_string(p.M) + " interpolated basis functions on " + std::to_string(points.size()) + " points");
  }
  if (config.output.wants("json")) {
    std::ostringstream basis;
    write_basis_json(basis, p.basis, p.M, config);
    write_file(dir / "basis.json", basis.str(), log, "grid, eigenvalues and eigenvectors");
  }
  return kSuccess;
}

int cmd_solve(const RunConfig& config, const std::optional<std::string>& basis_path, std::ostream& log) {
  config.validate();
  const KLBasis basis = basis_for(config, basis_path);
  const int M = retained_modes(basis, config.criterion());
  const auto& p = config.problem;
  const CollocationProblem problem = make_problem(config.bvp(), interpolate(truncate_basis(basis, FixedM{M})));
  const SpectralSolution sol = solve(problem);
  const Reference reference = make_reference(config);

  const auto dense = linspace(p.a, p.b, config.output.dense_points);
  const auto dense_residual = residual(sol, std::span<const double>(dense));
  const auto interior = uniform_interior(p.a, p.b, config.output.residual_points);
  const auto interior_residual = residual(sol, std::span<const double>(interior));
  double sum2 = 0.0;
  for (double r : interior_residual) sum2 += r * r;
  const double residual_rms = std::sqrt(sum2 / static_cast<double>(interior.size()));
  const ResidualShape shape = residual_shape(interior, interior_residual, p.a, p.b);

  const WindowErrors primary = window_errors(sol, reference.value, p);
  WindowErrors numerov_errors = primary;
  if (reference.kind != "numerov") {
    const auto numerov = std::make_shared<NumerovSolution>(numerov_oracle(config.bvp(), config.output.numerov_points));
    numerov_errors = window_errors(sol, [&](double x) { return (*numerov)(x); }, p);
  }

  const fs::path dir = prepare_directory(config);
  if (config.output.wants("csv")) {
    std::ostringstream solution;
    csv::Writer writer(solution);
    writer.header({"x", "y_numeric", "y_reference", "residual"});
    for (std::size_t k = 0; k < dense.size(); ++k)
      writer.row(std::vector<double>{dense[k], sol.value(dense[k]), reference.value(dense[k]), dense_residual[k]});
    write_file(dir / "solution.csv", solution.str(), log, std::to_string(dense.size()) + " points vs " + reference.kind);

    std::ostringstream res;
    csv::Writer res_writer(res);
    res_writer.header({"x", "residual"});
    for (std::size_t k = 0; k < interior.size(); ++k)
      res_writer.row(std::vector<double>{interior[k], interior_residual[k]});
    write_file(dir / "residual.csv", res.str(), log, std::to_string(interior.size()) + " interior residuals");
  }
  if (config.output.wants("json")) {
    const json report{
        {"modes", M},
        {"method", to_string(sol.method)},
        {"condition_estimate", sol.condition_estimate},
        {"condition_estimate_kind", "sigma_max/sigma_min of the factorized collocation matrix"},
        {"coefficients", vector_json(sol.coefficients)},
        {"collocation_points", problem.interior},
        {"left_boundary_row", problem.left_row},
        {"right_boundary_row", problem.right_row},
        {"reference", reference.kind},
        {"rel_l2_error_mid", nullable(primary.rel_l2)},
        {"rel_l2_error_mid_numerov", nullable(numerov_errors.rel_l2)},
        {"shape_error_mid", nullable(primary.shape)},
        {"error_window", {std::max(p.error_lo, p.a), std::min(p.error_hi, p.b)}},
        {"residual_norm", residual_rms},
        {"residual_outer_max", shape.outer_max},
        {"residual_mid_median", shape.mid_median},
        {"boundary_error_a", std::abs(sol.value(p.a) - p.y_a)},
        {"boundary_error_b", std::abs(sol.value(p.b) - p.y_f)},
        {"config", config},
    };
    write_file(dir / "report.json", dump(report), log,
               "rel_l2_error_mid=" + (primary.rel_l2 ? csv::format_number(*primary.rel_l2) : std::string("null")));
  }
  return kSuccess;
}

int cmd_scan_energy(const RunConfig& config, const std::optional<std::string>& basis_path, std::ostream& log) {
  config.validate();
  const KLBasis basis = basis_for(config, basis_path);
  const int M = retained_modes(basis, config.criterion());
  const auto& p = config.problem;
  const CollocationProblem templ = make_problem(config.bvp(), interpolate(truncate_basis(basis, FixedM{M})));
  const auto dense = uniform_interior(p.a, p.b, config.output.residual_points);
  const EnergyScan scan = energy_scan(templ, p.E_lo, p.E_hi, p.n_steps, dense);

  const fs::path dir = prepare_directory(config);
  if (config.output.wants("csv")) {
    std::ostringstream out;
    csv::Writer writer(out);
    writer.header({"E", "residual_norm", "status"});
    for (const auto& point : scan.table)
      writer.row_cells({csv::format_number(point.E), csv::format_number(point.residual_norm),
                        point.status == ScanStatus::Ok ? "ok" : "failed"});
    write_file(dir / "scan.csv", out.str(), log, std::to_string(scan.table.size()) + " energies");
  }
  if (config.output.wants("json")) {
    std::size_t failed = 0;
    for (const auto& point : scan.table) failed += point.status == ScanStatus::Failed;
    const std::string status =
        !scan.found ? "no-successful-solve" : (scan.boundary_minimum ? "boundary-minimum" : "interior-minimum");
    const json report{
        {"modes", M},
        {"status", status},
        {"boundary_minimum", scan.boundary_minimum},
        {"argmin_E", scan.found ? json(scan.argmin_E) : json(nullptr)},
        {"refined_E", scan.found ? json(scan.refined_E) : json(nullptr)},
        {"min_residual_norm", scan.found ? json(scan.table[scan.argmin_index].residual_norm) : json(nullptr)},
        {"failed_points", failed},
        {"config", config},
    };
    write_file(dir / "report.json", dump(report), log,
               status + (scan.found ? ", refined_E=" + csv::format_number(scan.refined_E) : std::string()));
  }
  return scan.found ? kSuccess : kNumericalError;
}

int cmd_compare_bases(const RunConfig& config, std::ostream& log) {
  config.validate();
  const Pipeline p = build_pipeline(config);
  const Reference reference = make_reference(config);
  const Grid& grid = p.samples.grid;
  const int n = static_cast<int>(grid.size());

  const std::vector<std::pair<std::string, Eigen::MatrixXd>> bases{
      {"kl", p.basis.vectors},
      {"random-orthonormal", random_orthonormal(n, config.seed)},
      {"monomial", monomial_orthonormal(grid)},
  };

  std::ostringstream out;
  csv::Writer writer(out);
  writer.header({"basis_name", "M", "reconstruction_mse", "solve_rel_error"});
  for (const auto& [name, modes] : bases) {
    for (int M = 1; M <= n; ++M) {
      const double mse = reconstruction_mse(p.centered.values, modes, M);
      double error = std::numeric_limits<double>::quiet_NaN();
      try {
        const auto sol = solve(make_problem(config.bvp(), functions_from_columns(grid, modes, M)));
        if (const auto e = window_errors(sol, reference.value, config.problem).rel_l2) error = *e;
      } catch (const std::exception&) {
        // singular collocation for this basis size: reported as nan
      }
      writer.row_cells({name, std::to_string(M), csv::format_number(mse), csv::format_number(error)});
    }
  }
  const fs::path dir = prepare_directory(config);
  write_file(dir / "comparison.csv", out.str(), log, "3 bases x " + std::to_string(n) + " truncation sizes");
  return kSuccess;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Karhunen-Loeve basis construction and spectral radial solver"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> modes;
  std::optional<std::string> basis_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    sub->add_option("--out-dir", out_dir, "output directory (overrides output.directory)");
    sub->add_option("--seed", seed, "random seed (overrides seed)");
    sub->add_option("--modes", modes, "retain a fixed number of modes (overrides truncation)");
  };
  auto* gen = app.add_subcommand("gen-basis", "sample the family and write the KL basis artifacts");
  auto* solve_cmd = app.add_subcommand("solve", "solve the radial problem in the truncated KL basis");
  auto* scan = app.add_subcommand("scan-energy", "scan the residual norm over an energy window");
  auto* compare = app.add_subcommand("compare-bases", "compare KL, random and monomial bases");
  for (auto* sub : {gen, solve_cmd, scan, compare}) add_common(sub);
  for (auto* sub : {solve_cmd, scan}) sub->add_option("--basis", basis_path, "basis.json from gen-basis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    RunConfig config = config_path.empty() ? RunConfig{} : load_config(config_path);
    apply_overrides(config, out_dir, seed, modes);
    config.validate();
    if (gen->parsed()) return cmd_gen_basis(config, out);
    if (solve_cmd->parsed()) return cmd_solve(config, basis_path, out);
    if (scan->parsed()) return cmd_scan_energy(config, basis_path, out);
    return cmd_compare_bases(config, out);
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace klb::cli
