#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "convspec/errors.hpp"
#include "convspec/evolution.hpp"
#include "convspec/families.hpp"
#include "convspec/hamiltonian.hpp"
#include "convspec/lifting.hpp"
#include "convspec/model_io.hpp"
#include "convspec/spectral.hpp"
#include "convspec/verify.hpp"

namespace {

using convspec::ModelSpec;
using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Writes either to a file or to stdout; binary mode keeps line endings LF.
struct Sink {
  std::ofstream file;
  std::ostream* os = &std::cout;
  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open output file '" + path + "'");
    os = &file;
  }
};

// Model selection shared by the subcommands: either --model FILE or
// --family plus its parameter flags. Multiplicities above one wrap the
// catalog model in the lifting construction automatically.
struct ModelFlags {
  std::string model_file;
  std::string family;
  double p = 0, gamma = 0, delta = 0, alpha = 0, beta = 0, q = 0, c = 0;
  long long k0 = 1, k1 = 1;
  double omega0 = 0, omega1 = 0;
  CLI::Option *o_model = nullptr, *o_family = nullptr;
  CLI::Option *o_p = nullptr, *o_gamma = nullptr, *o_delta = nullptr, *o_alpha = nullptr,
              *o_beta = nullptr, *o_q = nullptr, *o_c = nullptr;
  CLI::Option *o_k0 = nullptr, *o_k1 = nullptr;

  void attach(CLI::App* cmd) {
    o_model = cmd->add_option("--model", model_file, "model JSON file");
    o_family = cmd->add_option("--family", family, "catalog family name");
    o_p = cmd->add_option("--p", p, "family parameter p");
    o_gamma = cmd->add_option("--gamma", gamma, "family parameter gamma");
    o_delta = cmd->add_option("--delta", delta, "family parameter delta");
    o_alpha = cmd->add_option("--alpha", alpha, "family parameter alpha");
    o_beta = cmd->add_option("--beta", beta, "family parameter beta");
    o_q = cmd->add_option("--q", q, "family parameter q");
    o_c = cmd->add_option("--c", c, "family parameter c");
    o_k0 = cmd->add_option("--k0", k0, "conversion multiplicity of mode 0");
    o_k1 = cmd->add_option("--k1", k1, "conversion multiplicity of mode 1");
    cmd->add_option("--omega0", omega0, "free frequency of mode 0");
    cmd->add_option("--omega1", omega1, "free frequency of mode 1");
  }

  std::map<std::string, double> params() const {
    std::map<std::string, double> out;
    if (o_p->count()) out["p"] = p;
    if (o_gamma->count()) out["gamma"] = gamma;
    if (o_delta->count()) out["delta"] = delta;
    if (o_alpha->count()) out["alpha"] = alpha;
    if (o_beta->count()) out["beta"] = beta;
    if (o_q->count()) out["q"] = q;
    if (o_c->count()) out["c"] = c;
    return out;
  }

  ModelSpec resolve() const {
    if (o_model->count() && o_family->count())
      throw std::invalid_argument("give either --model or --family, not both");
    if (o_model->count()) {
      if (o_k0->count() || o_k1->count())
        throw std::invalid_argument("--k0/--k1 cannot override a model file; the file "
                                    "defines the multiplicities");
      return convspec::load_model(model_file);
    }
    if (!o_family->count())
      throw std::invalid_argument("no model given (use --family or --model)");
    ModelSpec inner;
    inner.k0 = 1;
    inner.k1 = 1;
    inner.omega0 = omega0;
    inner.omega1 = omega1;
    inner.coupling = convspec::CatalogCoupling{family, params()};
    return convspec::lift_model(inner, k0, k1);
  }
};

struct SectorFlags {
  long long r0 = 0, r1 = 0, N = 0;
  void attach(CLI::App* cmd) {
    cmd->add_option("--r0", r0, "sector remainder of mode 0");
    cmd->add_option("--r1", r1, "sector remainder of mode 1");
    cmd->add_option("--N", N, "sector level")->required();
  }
  convspec::SectorIndex index(const ModelSpec& m) const {
    return convspec::SectorIndex{r0, r1, N, m.k0, m.k1};
  }
};

// family descriptor for closed-form columns, if the model has one
const convspec::CatalogCoupling* catalog_of(const ModelSpec& m) {
  if (const auto* cat = std::get_if<convspec::CatalogCoupling>(&m.coupling)) return cat;
  if (const auto* lift = std::get_if<convspec::LiftedCoupling>(&m.coupling))
    return std::get_if<convspec::CatalogCoupling>(&lift->inner->coupling);
  return nullptr;
}

json sector_json(const convspec::SectorIndex& mu) {
  return json{{"r0", mu.r0}, {"r1", mu.r1}, {"N", mu.N}};
}

int run_spectrum(const ModelFlags& mf, const SectorFlags& sf, const std::string& format,
                 const std::string& out) {
  ModelSpec model = mf.resolve();
  convspec::SectorIndex mu = sf.index(model);
  convspec::SpectralData s = convspec::spectral_decomposition(model, mu);

  const auto* cat = catalog_of(model);
  convspec::FamilyDescriptor fam;
  if (cat) fam = convspec::make_family(cat->family, cat->params);

  Sink sink;
  sink.open(out);
  if (format == "csv") {
    *sink.os << "l,E_numeric,E_closed_form,abs_diff\n";
    for (long long l = 0; l <= mu.N; ++l) {
      *sink.os << l << "," << fmt(s.eigenvalues[l]);
      if (cat) {
        double closed = convspec::family_spectrum(fam, l, mu.N);
        *sink.os << "," << fmt(closed) << "," << fmt(std::abs(s.eigenvalues[l] - closed));
      } else {
        *sink.os << ",,";
      }
      *sink.os << "\n";
    }
  } else {
    json rows = json::array();
    for (long long l = 0; l <= mu.N; ++l) {
      json row{{"l", l}, {"E_numeric", s.eigenvalues[l]}};
      if (cat) {
        double closed = convspec::family_spectrum(fam, l, mu.N);
        row["E_closed_form"] = closed;
        row["abs_diff"] = std::abs(s.eigenvalues[l] - closed);
      } else {
        row["E_closed_form"] = nullptr;
        row["abs_diff"] = nullptr;
      }
      rows.push_back(std::move(row));
    }
    *sink.os << json{{"sector", sector_json(mu)}, {"rows", rows}}.dump(2) << "\n";
  }
  return 0;
}

int run_eigvec(const ModelFlags& mf, const SectorFlags& sf, const std::string& format,
               const std::string& out) {
  ModelSpec model = mf.resolve();
  convspec::SectorIndex mu = sf.index(model);
  convspec::SpectralData s = convspec::spectral_decomposition(model, mu);

  Sink sink;
  sink.open(out);
  if (format == "csv") {
    *sink.os << "n";
    for (long long l = 0; l <= mu.N; ++l) *sink.os << ",l" << l;
    *sink.os << "\n";
    for (long long n = 0; n <= mu.N; ++n) {
      *sink.os << n;
      for (long long l = 0; l <= mu.N; ++l) *sink.os << "," << fmt(s.coeffs(n, l));
      *sink.os << "\n";
    }
  } else {
    json coeffs = json::array();
    for (long long n = 0; n <= mu.N; ++n) {
      json row = json::array();
      for (long long l = 0; l <= mu.N; ++l) row.push_back(s.coeffs(n, l));
      coeffs.push_back(std::move(row));
    }
    json eig = json::array(), w = json::array(), gauge = json::array();
    for (long long l = 0; l <= mu.N; ++l) {
      eig.push_back(s.eigenvalues[l]);
      w.push_back(s.weights[l]);
      gauge.push_back(s.gauge[static_cast<std::size_t>(l)]);
    }
    *sink.os << json{{"sector", sector_json(mu)},
                     {"eigenvalues", eig},
                     {"coeffs", coeffs},
                     {"weights", w},
                     {"gauge", gauge}}
                    .dump(2)
             << "\n";
  }
  return 0;
}

int run_weights(const ModelFlags& mf, const SectorFlags& sf, bool normalized,
                const std::string& format, const std::string& out) {
  ModelSpec model = mf.resolve();
  convspec::SectorIndex mu = sf.index(model);

  std::vector<double> w(static_cast<std::size_t>(mu.N) + 1);
  const auto* cat = catalog_of(model);
  if (cat) {
    convspec::FamilyDescriptor fam = convspec::make_family(cat->family, cat->params);
    for (long long l = 0; l <= mu.N; ++l)
      w[static_cast<std::size_t>(l)] =
          normalized ? convspec::family_weight_normalized(fam, l, mu.N)
                     : convspec::family_weight(fam, l, mu.N);
  } else {
    // no closed form: report the spectral weights, which are normalized
    convspec::SpectralData s = convspec::spectral_decomposition(model, mu);
    for (long long l = 0; l <= mu.N; ++l) w[static_cast<std::size_t>(l)] = s.weights[l];
  }

  Sink sink;
  sink.open(out);
  if (format == "csv") {
    *sink.os << "l,w\n";
    for (long long l = 0; l <= mu.N; ++l)
      *sink.os << l << "," << fmt(w[static_cast<std::size_t>(l)]) << "\n";
  } else {
    json rows = json::array();
    for (long long l = 0; l <= mu.N; ++l)
      rows.push_back(json{{"l", l}, {"w", w[static_cast<std::size_t>(l)]}});
    *sink.os << json{{"sector", sector_json(mu)}, {"normalized", normalized}, {"rows", rows}}
                    .dump(2)
             << "\n";
  }
  return 0;
}

int run_evolve(const ModelFlags& mf, const std::string& state_file,
               const std::string& observable_file, double t_max, double dt,
               const std::string& format, const std::string& out) {
  if (state_file.empty()) throw std::invalid_argument("evolve needs --state FILE");
  if (observable_file.empty()) throw std::invalid_argument("evolve needs --observable FILE");
  if (!(t_max >= 0)) throw std::invalid_argument("evolve needs --t-max >= 0");
  if (!(dt > 0)) throw std::invalid_argument("evolve needs --dt > 0");

  ModelSpec model = mf.resolve();
  convspec::SectoredState psi =
      convspec::normalized(convspec::load_state(state_file, model));
  convspec::SectoredObservable x = convspec::load_observable(observable_file, model);

  long long steps = static_cast<long long>(std::floor(t_max / dt + 1e-9));

  Sink sink;
  sink.open(out);
  json rows = json::array();
  if (format == "csv") *sink.os << "t,re,im,norm\n";
  for (long long i = 0; i <= steps; ++i) {
    double t = static_cast<double>(i) * dt;
    convspec::SectoredState evolved = convspec::evolve_state(model, psi, t);
    std::complex<double> val = convspec::bracket(evolved, x);
    double norm = convspec::state_norm(evolved);
    if (format == "csv")
      *sink.os << fmt(t) << "," << fmt(val.real()) << "," << fmt(val.imag()) << ","
               << fmt(norm) << "\n";
    else
      rows.push_back(json{{"t", t}, {"re", val.real()}, {"im", val.imag()}, {"norm", norm}});
  }
  if (format != "csv") *sink.os << json{{"rows", rows}}.dump(2) << "\n";
  return 0;
}

int run_lift(const ModelFlags& mf, const SectorFlags& sf, const std::string& format,
             const std::string& out) {
  ModelSpec model = mf.resolve();  // catalog flags with --k0/--k1 lift automatically
  if (std::holds_alternative<convspec::TableCoupling>(model.coupling))
    throw std::invalid_argument("lift needs a catalog or lifted model, not coefficient "
                                "tables");
  convspec::SectorIndex mu = sf.index(model);
  convspec::JacobiOperator j = convspec::jacobi_operator(model, mu);

  Sink sink;
  sink.open(out);
  if (format == "csv") {
    *sink.os << "n,a,b_mag,b_phase\n";
    for (long long n = 0; n <= mu.N; ++n) {
      *sink.os << n << "," << fmt(j.diag[n]);
      if (n < mu.N)
        *sink.os << "," << fmt(j.offdiag_mag[n]) << "," << fmt(j.offdiag_phase[n]);
      else
        *sink.os << ",,";
      *sink.os << "\n";
    }
  } else {
    json rows = json::array();
    for (long long n = 0; n <= mu.N; ++n) {
      json row{{"n", n}, {"a", j.diag[n]}};
      if (n < mu.N) {
        row["b_mag"] = j.offdiag_mag[n];
        row["b_phase"] = j.offdiag_phase[n];
      } else {
        row["b_mag"] = nullptr;
        row["b_phase"] = nullptr;
      }
      rows.push_back(std::move(row));
    }
    *sink.os << json{{"sector", sector_json(mu)}, {"rows", rows}}.dump(2) << "\n";
  }
  return 0;
}

int run_verify(const std::string& family, long long n_max, double tol) {
  std::vector<std::string> families;
  if (family == "all")
    for (convspec::Family f : convspec::all_families())
      families.push_back(convspec::family_name(f));
  else
    families.push_back(family);

  convspec::VerifyReport report = convspec::run_verification(families, n_max, tol);
  for (const auto& c : report.checks)
    std::cout << (c.passed() ? "[PASS] " : "[FAIL] ") << c.name
              << " residual=" << fmt(c.residual) << " tol=" << fmt(c.tolerance)
              << " worst at: " << c.detail << "\n";

  if (report.all_passed()) {
    std::cout << "verification passed (" << report.checks.size() << " checks)\n";
    return 0;
  }
  const convspec::VerifyCheck* w = report.worst();
  std::cout << "verification FAILED; worst offender: " << w->name
            << " residual=" << fmt(w->residual) << " tol=" << fmt(w->tolerance) << " at "
            << w->detail << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-sector photon conversion models: spectra, polynomial data, dynamics"};
  app.require_subcommand(1);

  std::string format = "csv";
  std::string out;

  auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", out, "output file (default stdout)");
  };

  ModelFlags mf_spectrum, mf_eigvec, mf_weights, mf_evolve, mf_lift;
  SectorFlags sf_spectrum, sf_eigvec, sf_weights, sf_lift;

  CLI::App* c_spectrum = app.add_subcommand("spectrum", "eigenvalues of one sector");
  mf_spectrum.attach(c_spectrum);
  sf_spectrum.attach(c_spectrum);
  add_io(c_spectrum);

  CLI::App* c_eigvec = app.add_subcommand("eigvec", "polynomial coefficient matrix of one sector");
  mf_eigvec.attach(c_eigvec);
  sf_eigvec.attach(c_eigvec);
  add_io(c_eigvec);

  bool normalized = false;
  CLI::App* c_weights = app.add_subcommand("weights", "orthogonality weights of one sector");
  mf_weights.attach(c_weights);
  sf_weights.attach(c_weights);
  c_weights->add_flag("--normalized", normalized, "divide by the weight sum");
  add_io(c_weights);

  std::string state_file, observable_file;
  double t_max = 0, dt = 0;
  CLI::App* c_evolve = app.add_subcommand("evolve", "expectation value along time evolution");
  mf_evolve.attach(c_evolve);
  c_evolve->add_option("--state", state_file, "initial state JSON file");
  c_evolve->add_option("--observable", observable_file, "observable JSON file");
  c_evolve->add_option("--t-max", t_max, "final time");
  c_evolve->add_option("--dt", dt, "time step");
  add_io(c_evolve);

  CLI::App* c_lift = app.add_subcommand("lift", "sector coefficients of a lifted model");
  mf_lift.attach(c_lift);
  sf_lift.attach(c_lift);
  add_io(c_lift);

  std::string v_family = "all";
  long long v_nmax = 12;
  double v_tol = 0;
  CLI::App* c_verify = app.add_subcommand("verify", "run the invariant suite");
  c_verify->add_option("--family", v_family, "family name or 'all'");
  c_verify->add_option("--N-max", v_nmax, "largest sector level");
  c_verify->add_option("--tol", v_tol, "override every check tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(c_spectrum))
      return run_spectrum(mf_spectrum, sf_spectrum, format, out);
    if (app.got_subcommand(c_eigvec)) return run_eigvec(mf_eigvec, sf_eigvec, format, out);
    if (app.got_subcommand(c_weights))
      return run_weights(mf_weights, sf_weights, normalized, format, out);
    if (app.got_subcommand(c_evolve))
      return run_evolve(mf_evolve, state_file, observable_file, t_max, dt, format, out);
    if (app.got_subcommand(c_lift)) return run_lift(mf_lift, sf_lift, format, out);
    if (app.got_subcommand(c_verify)) return run_verify(v_family, v_nmax, v_tol);
  } catch (const convspec::numerical_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
