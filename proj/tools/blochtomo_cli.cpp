#include <blochtomo/axes.hpp>
#include <blochtomo/bme.hpp>
#include <blochtomo/core.hpp>
#include <blochtomo/harness.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace bt = blochtomo;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "blochtomo/1";

// 12 significant digits, re-parsed so the JSON value round-trips byte-identically
double sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

json vec_json(const bt::Vec3& v) {
  return json::array({sig12(v.x()), sig12(v.y()), sig12(v.z())});
}

json mat_json(const bt::Mat3& m) {
  json a = json::array();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a.push_back(sig12(m(i, j)));
  return a;
}

std::string csv_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

bt::Vec3 parse_vec(const std::string& s) {
  bt::Vec3 v;
  std::stringstream ss(s);
  char comma;
  if (!(ss >> v.x() >> comma >> v.y() >> comma >> v.z()))
    throw CLI::ValidationError("expected x,y,z");
  return v;
}

bt::CountRecord parse_counts(const std::string& s) {
  int c[6];
  std::stringstream ss(s);
  char comma;
  for (int i = 0; i < 6; ++i) {
    if (i && !(ss >> comma)) throw CLI::ValidationError("expected 6 counts");
    if (!(ss >> c[i]) || c[i] < 0) throw CLI::ValidationError("expected 6 counts >= 0");
  }
  return {c[0], c[1], c[2], c[3], c[4], c[5]};
}

bt::QuadratureSpec parse_quad(const std::string& s) {
  bt::QuadratureSpec q;
  std::stringstream ss(s);
  char comma;
  if (!(ss >> q.radial_nodes >> comma >> q.polar_nodes >> comma >> q.azimuthal_nodes))
    throw CLI::ValidationError("expected radial,polar,azimuthal");
  q.validate();
  return q;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot open " + path);
  out << text;
}

void emit(const json& doc) { std::cout << doc.dump(2) << "\n"; }

json estimate_json(const bt::Estimate& e, const std::string& report, double eta) {
  json j;
  j["schema"] = kSchema;
  j["method"] = e.method;
  j["status"] = bt::to_string(e.status);
  j["report"] = report;
  if (e.ok()) {
    const bt::Vec3 v = report == "positivist" ? bt::Vec3(eta * e.vector) : e.vector;
    j["vector"] = vec_json(v);
    if (e.alpha) j["alpha"] = sig12(*e.alpha);
    if (e.covariance) j["covariance"] = mat_json(*e.covariance);
    if (e.degenerate_tie) j["degenerate_tie"] = true;
  }
  return j;
}

json report_json(const bt::ReproduceReport& rep) {
  json j;
  j["schema"] = kSchema;
  j["report"] = rep.name;
  j["all_pass"] = rep.all_pass();
  json cells = json::array();
  for (const auto& c : rep.cells) {
    json cj;
    cj["row"] = c.row;
    cj["column"] = c.column;
    cj["reference"] = sig12(c.reference);
    cj["computed"] = sig12(c.computed);
    cj["tolerance"] = sig12(c.tolerance);
    cj["pass"] = c.pass;
    cells.push_back(cj);
  }
  j["cells"] = cells;
  return j;
}

std::string report_csv(const bt::ReproduceReport& rep) {
  std::string out = "row,column,reference,computed,tolerance,pass\n";
  for (const auto& c : rep.cells) {
    out += c.row + "," + c.column + "," + csv_num(c.reference) + "," +
           csv_num(c.computed) + "," + csv_num(c.tolerance) + "," +
           (c.pass ? "1" : "0") + "\n";
  }
  return out;
}

struct Options {
  std::string counts_str, counts_file;
  std::string method = "bme", prior, quad_str, state_str, seed_str;
  std::string mode = "parametric", report = "platonic", format = "json";
  std::string axes_file, states = "default", plot_data;
  std::vector<std::string> functionals;
  double eta = 1.0, spin = 0.5, tol = 1e-10;
  int shots = 30, threads = 0;
  bool fast = false;
};

bt::CountRecord load_counts(const Options& o) {
  if (!o.counts_str.empty()) return parse_counts(o.counts_str);
  if (o.counts_file.empty()) throw CLI::ValidationError("counts required");
  const std::string text = read_file(o.counts_file);
  if (text.find('{') != std::string::npos) return bt::count_record_from_json(text);
  return bt::count_record_from_csv(text);
}

bt::MethodSpec make_spec(const Options& o) {
  bt::MethodSpec spec = bt::MethodSpec::parse(o.method, o.prior);
  if (!o.quad_str.empty()) {
    if (spec.method != bt::MethodKind::bme)
      throw CLI::ValidationError("--quad only applies to bme");
    spec.quad = parse_quad(o.quad_str);
  }
  return spec;
}

int run_estimate(const Options& o) {
  const bt::CountRecord c = load_counts(o);
  const bt::MethodSpec spec = make_spec(o);
  const bt::Estimate e = bt::run_method(spec, c, o.eta);
  json j = estimate_json(e, o.report, o.eta);
  if (!o.functionals.empty()) {
    if (spec.method != bt::MethodKind::bme)
      throw CLI::ValidationError("--functional only applies to bme");
    json f;
    for (const auto& name : o.functionals) {
      const auto st = bt::functional_posterior(
          c, *spec.prior, spec.quad.value_or(bt::QuadratureSpec{}), name,
          bt::Vec3::UnitZ(), o.eta);
      f[name] = {{"mean", sig12(st.mean)}, {"variance", sig12(st.variance)}};
    }
    j["functionals"] = f;
  }
  if (o.format == "csv") {
    std::cout << "method,status,x,y,z\n"
              << e.method << "," << bt::to_string(e.status);
    const bt::Vec3 v = o.report == "positivist" ? bt::Vec3(o.eta * e.vector) : e.vector;
    if (e.ok())
      std::cout << "," << csv_num(v.x()) << "," << csv_num(v.y()) << ","
                << csv_num(v.z());
    std::cout << "\n";
  } else {
    emit(j);
  }
  return 0;
}

int run_compare(const Options& o) {
  const bt::CountRecord c = load_counts(o);
  json rows = json::array();
  std::string csv = "method,status,x,y,z\n";
  for (const auto& spec : bt::table1_methods()) {
    bt::MethodSpec s = spec;
    if (!o.quad_str.empty() && s.method == bt::MethodKind::bme)
      s.quad = parse_quad(o.quad_str);
    const bt::Estimate e = bt::run_method(s, c, o.eta);
    rows.push_back(estimate_json(e, o.report, o.eta));
    csv += e.method + "," + bt::to_string(e.status);
    if (e.ok()) {
      const bt::Vec3 v =
          o.report == "positivist" ? bt::Vec3(o.eta * e.vector) : e.vector;
      csv += "," + csv_num(v.x()) + "," + csv_num(v.y()) + "," + csv_num(v.z());
    }
    csv += "\n";
  }
  if (o.format == "csv") {
    std::cout << csv;
  } else {
    json j;
    j["schema"] = kSchema;
    j["results"] = rows;
    emit(j);
  }
  return 0;
}

int run_bootstrap(const Options& o) {
  const bt::Vec3 seed = parse_vec(o.seed_str);
  const bt::MethodSpec spec = make_spec(o);
  const bool parametric = o.mode == "parametric";
  if (!parametric && o.mode != "nonparametric")
    throw CLI::ValidationError("--mode must be parametric or nonparametric");
  const bt::SweepResult s =
      bt::bootstrap(seed, spec, o.shots, o.eta, parametric, o.threads);
  if (!o.plot_data.empty()) {
    const bt::EstimatorTable t =
        bt::EstimatorTable::build(spec, o.shots, o.eta, o.threads);
    const bt::Histogram2D h = bt::xy_histogram(t, seed);
    std::string csv = "x_bin,y_bin,mass\n";
    for (int i = 0; i < h.bins; ++i)
      for (int j = 0; j < h.bins; ++j)
        csv += std::to_string(i) + "," + std::to_string(j) + "," +
               csv_num(h.mass[std::size_t(i) * h.bins + j]) + "\n";
    write_file(o.plot_data, csv);
  }
  json j;
  j["schema"] = kSchema;
  j["method"] = spec.name();
  j["mode"] = o.mode;
  j["seed"] = vec_json(seed);
  j["mean"] = vec_json(s.mean);
  j["covariance"] = mat_json(s.covariance);
  j["failure_probability"] = sig12(s.failure_probability);
  j["accuracy"] = sig12(s.accuracy);
  if (o.format == "csv") {
    std::cout << "method,mean_x,mean_y,mean_z,dx,dy,dz,failure_probability,accuracy\n"
              << spec.name() << "," << csv_num(s.mean.x()) << ","
              << csv_num(s.mean.y()) << "," << csv_num(s.mean.z()) << ","
              << csv_num(std::sqrt(s.covariance(0, 0))) << ","
              << csv_num(std::sqrt(s.covariance(1, 1))) << ","
              << csv_num(std::sqrt(s.covariance(2, 2))) << ","
              << csv_num(s.failure_probability) << "," << csv_num(s.accuracy)
              << "\n";
  } else {
    emit(j);
  }
  return 0;
}

int run_accuracy(const Options& o) {
  const bt::Vec3 state = parse_vec(o.state_str);
  const bt::MethodSpec spec = make_spec(o);
  const bt::EstimatorTable t =
      bt::EstimatorTable::build(spec, o.shots, o.eta, o.threads);
  const double acc = bt::accuracy(t, state);
  const double pf = bt::failure_probability(t, state);
  if (o.format == "csv") {
    std::cout << "method,accuracy,failure_probability\n"
              << spec.name() << "," << csv_num(acc) << "," << csv_num(pf) << "\n";
  } else {
    json j;
    j["schema"] = kSchema;
    j["method"] = spec.name();
    j["state"] = vec_json(state);
    j["accuracy"] = sig12(acc);
    j["failure_probability"] = sig12(pf);
    emit(j);
  }
  return 0;
}

int run_table(const std::string& which, const Options& o) {
  if (which == "table2" && o.states != "default") {
    // custom state list: accuracies only, no reference comparison
    const auto doc = json::parse(read_file(o.states));
    std::vector<bt::Vec3> states;
    for (const auto& item : doc)
      states.emplace_back(item.at(0).get<double>(), item.at(1).get<double>(),
                          item.at(2).get<double>());
    json rows = json::array();
    std::string csv = "method";
    for (const auto& s : states)
      csv += ",(" + csv_num(s.x()) + ";" + csv_num(s.y()) + ";" + csv_num(s.z()) + ")";
    csv += "\n";
    for (const auto& spec : bt::table2_methods()) {
      const bt::EstimatorTable t =
          bt::EstimatorTable::build(spec, o.shots, 1.0, o.threads);
      json row;
      row["method"] = spec.name();
      json vals = json::array();
      csv += spec.name();
      for (const auto& s : states) {
        const double a = bt::accuracy(t, s);
        vals.push_back(sig12(a));
        csv += "," + csv_num(a);
      }
      csv += "\n";
      row["accuracy"] = vals;
      rows.push_back(row);
    }
    if (o.format == "csv") {
      std::cout << csv;
    } else {
      json j;
      j["schema"] = kSchema;
      j["rows"] = rows;
      emit(j);
    }
    return 0;
  }
  const bt::ReproduceReport rep = bt::reproduce(which, o.fast, o.threads);
  if (o.format == "csv") {
    std::cout << report_csv(rep);
  } else {
    emit(report_json(rep));
  }
  return 0;
}

int run_axes_check(const Options& o) {
  const bt::AxisSet axes = bt::axis_set_from_json(read_file(o.axes_file));
  const bt::UniformityReport rep = bt::uniformity_check(axes, o.spin, o.tol);
  json j;
  j["schema"] = kSchema;
  j["uniform"] = rep.uniform;
  j["max_even_k"] = rep.max_even_k;
  j["worst_abs_moment"] = sig12(rep.worst_abs_moment);
  j["worst_k"] = rep.worst_k;
  j["worst_q"] = rep.worst_q;
  json per_k = json::array();
  for (const auto& [k, m] : rep.per_k)
    per_k.push_back({{"k", k}, {"max_abs_moment", sig12(m)}});
  j["per_k"] = per_k;
  if (o.format == "csv") {
    std::cout << "uniform,worst_k,worst_q,worst_abs_moment\n"
              << (rep.uniform ? "1" : "0") << "," << rep.worst_k << ","
              << rep.worst_q << "," << csv_num(rep.worst_abs_moment) << "\n";
  } else {
    emit(j);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-qubit state tomography from Stern-Gerlach counts"};
  app.require_subcommand(1);
  Options o;
  if (const char* env = std::getenv("BLOCHTOMO_THREADS")) o.threads = std::atoi(env);

  app.add_option("--threads", o.threads, "worker threads (0 = auto)");
  app.add_option("--format", o.format, "output format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  auto add_counts = [&](CLI::App* cmd) {
    cmd->add_option("--counts", o.counts_str,
                    "counts nx_up,nx_down,ny_up,ny_down,nz_up,nz_down");
    cmd->add_option("--counts-file", o.counts_file, "counts file (JSON or CSV)");
  };
  auto add_method = [&](CLI::App* cmd) {
    cmd->add_option("--method", o.method,
                    "direct|scaled|mle|fisher|bme (default bme)");
    cmd->add_option("--prior", o.prior,
                    "hs|bures|pure|chernoff|ancilla:<k>|gaussian:<k>, optional "
                    "+entropy suffix (defaults: bme->bures, mle->hs)");
    cmd->add_option("--eta", o.eta, "depolarizing parameter in (0,1]");
    cmd->add_option("--quad", o.quad_str, "bme quadrature radial,polar,azimuthal");
  };

  CLI::App* est = app.add_subcommand("estimate", "reconstruct a state from counts");
  add_counts(est);
  add_method(est);
  est->add_option("--report", o.report, "platonic|positivist")
      ->check(CLI::IsMember({"platonic", "positivist"}));
  est->add_option("--functional", o.functionals,
                  "posterior functional (bme): entropy|purity|qfi");

  CLI::App* cmp = app.add_subcommand("compare", "run every method on the counts");
  add_counts(cmp);
  cmp->add_option("--eta", o.eta, "depolarizing parameter in (0,1]");
  cmp->add_option("--quad", o.quad_str, "bme quadrature radial,polar,azimuthal");
  cmp->add_option("--report", o.report, "platonic|positivist")
      ->check(CLI::IsMember({"platonic", "positivist"}));

  CLI::App* boot = app.add_subcommand("bootstrap", "exact bootstrap at a seed state");
  add_method(boot);
  boot->add_option("--seed-state", o.seed_str, "seed vector x,y,z")->required();
  boot->add_option("--mode", o.mode, "parametric|nonparametric");
  boot->add_option("--shots", o.shots, "measurements per axis");
  boot->add_option("--plot-data", o.plot_data, "write xy-histogram CSV to this path");

  CLI::App* acc = app.add_subcommand("accuracy", "rms trace-distance accuracy");
  add_method(acc);
  acc->add_option("--state", o.state_str, "true state x,y,z")->required();
  acc->add_option("--shots", o.shots, "measurements per axis");

  CLI::App* t1 = app.add_subcommand("table1", "bootstrap-ellipse reference table");
  CLI::App* t2 = app.add_subcommand("table2", "accuracy-comparison reference table");
  t2->add_option("--states", o.states, "default, or JSON file with [[x,y,z],...]");
  t2->add_option("--shots", o.shots, "measurements per axis (custom states only)");
  t2->add_flag("--fast", o.fast, "only scaled, fisher, mle:hs, bme:bures rows");

  CLI::App* ax = app.add_subcommand("axes-check", "axis-set uniformity check");
  ax->add_option("--file", o.axes_file, "axis-set JSON file")->required();
  ax->add_option("--spin", o.spin, "spin quantum number j");
  ax->add_option("--tol", o.tol, "moment tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (est->parsed()) return run_estimate(o);
    if (cmp->parsed()) return run_compare(o);
    if (boot->parsed()) return run_bootstrap(o);
    if (acc->parsed()) return run_accuracy(o);
    if (t1->parsed()) return run_table("table1", o);
    if (t2->parsed()) return run_table("table2", o);
    if (ax->parsed()) return run_axes_check(o);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 3;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
