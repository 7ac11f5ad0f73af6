#include "convspec/model_io.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <utility>

namespace convspec {

namespace {

using nlohmann::json;

const json& field(const json& j, const char* name, const std::string& where) {
  auto it = j.find(name);
  if (it == j.end())
    throw std::invalid_argument(where + " is missing the field '" + name + "'");
  return *it;
}

long long int_field(const json& j, const char* name, const std::string& where) {
  const json& f = field(j, name, where);
  if (!f.is_number_integer())
    throw std::invalid_argument(where + " field '" + name + "' must be an integer");
  return f.get<long long>();
}

double num_field(const json& j, const char* name, const std::string& where) {
  const json& f = field(j, name, where);
  if (!f.is_number())
    throw std::invalid_argument(where + " field '" + name + "' must be a number");
  return f.get<double>();
}

std::vector<double> num_array(const json& f, const std::string& label) {
  if (!f.is_array()) throw std::invalid_argument(label + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(f.size());
  for (const auto& v : f) {
    if (!v.is_number())
      throw std::invalid_argument(label + " must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

SectorIndex sector_from_json(const json& j, const ModelSpec& model,
                             const std::string& where) {
  SectorIndex mu;
  mu.r0 = int_field(j, "r0", where);
  mu.r1 = int_field(j, "r1", where);
  mu.N = int_field(j, "N", where);
  mu.k0 = model.k0;
  mu.k1 = model.k1;
  if (mu.N < 0) throw std::invalid_argument(where + " field 'N' must be nonnegative");
  if (mu.r0 < 0 || mu.r0 >= mu.k0 || mu.r1 < 0 || mu.r1 >= mu.k1)
    throw std::invalid_argument(where + " remainders (r0=" + std::to_string(mu.r0) +
                                ", r1=" + std::to_string(mu.r1) +
                                ") must satisfy 0 <= r < k for the model's (k0=" +
                                std::to_string(mu.k0) + ", k1=" + std::to_string(mu.k1) +
                                ")");
  return mu;
}

json sector_to_json(const SectorIndex& mu) {
  return json{{"r0", mu.r0}, {"r1", mu.r1}, {"N", mu.N}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("file '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace

json model_to_json(const ModelSpec& model) {
  json j{{"k0", model.k0},
         {"k1", model.k1},
         {"omega0", model.omega0},
         {"omega1", model.omega1}};
  if (const auto* cat = std::get_if<CatalogCoupling>(&model.coupling)) {
    json params = json::object();
    for (const auto& [name, value] : cat->params) params[name] = value;
    j["coupling"] = json{{"type", "family"}, {"name", cat->family}, {"params", params}};
  } else if (const auto* tab = std::get_if<TableCoupling>(&model.coupling)) {
    json sectors = json::array();
    for (const auto& s : tab->sectors)
      sectors.push_back(json{{"N", s.N},
                             {"a", s.a},
                             {"b_mag", s.b_mag},
                             {"b_phase", s.b_phase}});
    j["coupling"] = json{{"type", "tables"}, {"sectors", sectors}};
  } else {
    const auto& lift = std::get<LiftedCoupling>(model.coupling);
    j["coupling"] = json{{"type", "lifted"},
                         {"k0", model.k0},
                         {"k1", model.k1},
                         {"inner", model_to_json(*lift.inner)}};
  }
  return j;
}

ModelSpec model_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("model must be a JSON object");
  ModelSpec model;
  model.k0 = int_field(j, "k0", "model");
  model.k1 = int_field(j, "k1", "model");
  model.omega0 = num_field(j, "omega0", "model");
  model.omega1 = num_field(j, "omega1", "model");

  const json& c = field(j, "coupling", "model");
  if (!c.is_object()) throw std::invalid_argument("model field 'coupling' must be an object");
  const json& type = field(c, "type", "coupling");
  if (!type.is_string()) throw std::invalid_argument("coupling field 'type' must be a string");
  std::string t = type.get<std::string>();

  if (t == "family") {
    CatalogCoupling cat;
    const json& name = field(c, "name", "family coupling");
    if (!name.is_string())
      throw std::invalid_argument("family coupling field 'name' must be a string");
    cat.family = name.get<std::string>();
    const json& params = field(c, "params", "family coupling");
    if (!params.is_object())
      throw std::invalid_argument("family coupling field 'params' must be an object");
    for (const auto& [key, value] : params.items()) {
      if (!value.is_number())
        throw std::invalid_argument("family parameter '" + key + "' must be a number");
      cat.params[key] = value.get<double>();
    }
    model.coupling = std::move(cat);
  } else if (t == "tables") {
    TableCoupling tab;
    const json& sectors = field(c, "sectors", "tables coupling");
    if (!sectors.is_array())
      throw std::invalid_argument("tables coupling field 'sectors' must be an array");
    for (const auto& s : sectors) {
      TableCoupling::Sector sec;
      sec.N = int_field(s, "N", "table sector");
      sec.a = num_array(field(s, "a", "table sector"), "table sector field 'a'");
      sec.b_mag =
          num_array(field(s, "b_mag", "table sector"), "table sector field 'b_mag'");
      sec.b_phase =
          num_array(field(s, "b_phase", "table sector"), "table sector field 'b_phase'");
      tab.sectors.push_back(std::move(sec));
    }
    model.coupling = std::move(tab);
  } else if (t == "lifted") {
    long long ck0 = int_field(c, "k0", "lifted coupling");
    long long ck1 = int_field(c, "k1", "lifted coupling");
    if (ck0 != model.k0 || ck1 != model.k1)
      throw std::invalid_argument("lifted coupling multiplicities (k0=" +
                                  std::to_string(ck0) + ", k1=" + std::to_string(ck1) +
                                  ") disagree with the model's (k0=" +
                                  std::to_string(model.k0) + ", k1=" +
                                  std::to_string(model.k1) + ")");
    ModelSpec inner = model_from_json(field(c, "inner", "lifted coupling"));
    model.coupling = LiftedCoupling{std::make_shared<const ModelSpec>(std::move(inner))};
  } else {
    throw std::invalid_argument("coupling field 'type' must be 'family', 'tables' or "
                                "'lifted', got '" + t + "'");
  }

  validate_model(model);
  return model;
}

ModelSpec load_model(const std::string& path) { return model_from_json(load_json_file(path)); }

void save_model(const ModelSpec& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open file '" + path + "' for writing");
  out << model_to_json(model).dump(2) << "\n";
}

json state_to_json(const SectoredState& psi) {
  json j = json::array();
  for (const auto& [mu, v] : psi.amplitudes) {
    json entry = sector_to_json(mu);
    json re = json::array();
    json im = json::array();
    for (long long n = 0; n < v.size(); ++n) {
      re.push_back(v[n].real());
      im.push_back(v[n].imag());
    }
    entry["re"] = std::move(re);
    entry["im"] = std::move(im);
    j.push_back(std::move(entry));
  }
  return j;
}

SectoredState state_from_json(const json& j, const ModelSpec& model) {
  if (!j.is_array()) throw std::invalid_argument("state must be a JSON array of sectors");
  SectoredState psi;
  for (const auto& entry : j) {
    SectorIndex mu = sector_from_json(entry, model, "state sector");
    if (psi.amplitudes.count(mu))
      throw std::invalid_argument("state lists sector (r0=" + std::to_string(mu.r0) +
                                  ", r1=" + std::to_string(mu.r1) +
                                  ", N=" + std::to_string(mu.N) + ") twice");
    std::vector<double> re =
        num_array(field(entry, "re", "state sector"), "state field 're'");
    std::vector<double> im(re.size(), 0.0);
    if (entry.contains("im")) im = num_array(entry["im"], "state field 'im'");
    if (re.size() != static_cast<std::size_t>(mu.N) + 1 || im.size() != re.size())
      throw std::invalid_argument("state sector N=" + std::to_string(mu.N) + " needs " +
                                  std::to_string(mu.N + 1) +
                                  " amplitudes in 're' and 'im', got " +
                                  std::to_string(re.size()) + " and " +
                                  std::to_string(im.size()));
    Eigen::VectorXcd v(mu.N + 1);
    for (long long n = 0; n <= mu.N; ++n) {
      double a = re[static_cast<std::size_t>(n)];
      double b = im[static_cast<std::size_t>(n)];
      if (!std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("state amplitudes must be finite");
      v[n] = {a, b};
    }
    psi.amplitudes[mu] = std::move(v);
  }
  if (psi.amplitudes.empty()) throw std::invalid_argument("state lists no sectors");
  return psi;
}

SectoredState load_state(const std::string& path, const ModelSpec& model) {
  return state_from_json(load_json_file(path), model);
}

json observable_to_json(const SectoredObservable& x) {
  json j = json::array();
  for (const auto& [key, block] : x.blocks) {
    json entry{{"bra", sector_to_json(key.first)}, {"ket", sector_to_json(key.second)}};
    json re = json::array();
    json im = json::array();
    for (long long r = 0; r < block.rows(); ++r) {
      json re_row = json::array();
      json im_row = json::array();
      for (long long c = 0; c < block.cols(); ++c) {
        re_row.push_back(block(r, c).real());
        im_row.push_back(block(r, c).imag());
      }
      re.push_back(std::move(re_row));
      im.push_back(std::move(im_row));
    }
    entry["re"] = std::move(re);
    entry["im"] = std::move(im);
    j.push_back(std::move(entry));
  }
  return j;
}

SectoredObservable observable_from_json(const json& j, const ModelSpec& model) {
  if (!j.is_array())
    throw std::invalid_argument("observable must be a JSON array of blocks");
  SectoredObservable x;
  for (const auto& entry : j) {
    SectorIndex bra = sector_from_json(field(entry, "bra", "observable block"), model,
                                       "observable 'bra'");
    SectorIndex ket = sector_from_json(field(entry, "ket", "observable block"), model,
                                       "observable 'ket'");
    if (x.blocks.count({bra, ket}))
      throw std::invalid_argument("observable lists the block bra=(r0=" +
                                  std::to_string(bra.r0) + ", r1=" +
                                  std::to_string(bra.r1) + ", N=" + std::to_string(bra.N) +
                                  ") ket=(r0=" + std::to_string(ket.r0) + ", r1=" +
                                  std::to_string(ket.r1) + ", N=" + std::to_string(ket.N) +
                                  ") twice");

    const json& re = field(entry, "re", "observable block");
    if (!re.is_array())
      throw std::invalid_argument("observable field 're' must be a nested array");
    long long rows = bra.N + 1;
    long long cols = ket.N + 1;
    if (static_cast<long long>(re.size()) != rows)
      throw std::invalid_argument("observable block 're' needs " + std::to_string(rows) +
                                  " rows, got " + std::to_string(re.size()));
    Eigen::MatrixXcd block(rows, cols);
    for (long long r = 0; r < rows; ++r) {
      std::vector<double> row = num_array(re[static_cast<std::size_t>(r)],
                                          "observable 're' row " + std::to_string(r));
      if (static_cast<long long>(row.size()) != cols)
        throw std::invalid_argument("observable 're' row " + std::to_string(r) + " needs " +
                                    std::to_string(cols) + " entries, got " +
                                    std::to_string(row.size()));
      for (long long c = 0; c < cols; ++c) block(r, c) = row[static_cast<std::size_t>(c)];
    }
    if (entry.contains("im")) {
      const json& im = entry["im"];
      if (!im.is_array() || static_cast<long long>(im.size()) != rows)
        throw std::invalid_argument("observable block 'im' needs " + std::to_string(rows) +
                                    " rows");
      for (long long r = 0; r < rows; ++r) {
        std::vector<double> row = num_array(im[static_cast<std::size_t>(r)],
                                            "observable 'im' row " + std::to_string(r));
        if (static_cast<long long>(row.size()) != cols)
          throw std::invalid_argument("observable 'im' row " + std::to_string(r) +
                                      " needs " + std::to_string(cols) + " entries, got " +
                                      std::to_string(row.size()));
        for (long long c = 0; c < cols; ++c)
          block(r, c).imag(row[static_cast<std::size_t>(c)]);
      }
    }
    if (!block.allFinite())
      throw std::invalid_argument("observable block entries must be finite");
    x.blocks[{bra, ket}] = std::move(block);
  }
  if (x.blocks.empty()) throw std::invalid_argument("observable lists no blocks");

  // fill in adjoint partners that were left implicit, then insist the result
  // is Hermitian as a whole
  std::vector<std::pair<SectorIndex, SectorIndex>> keys;
  for (const auto& [key, block] : x.blocks) {
    (void)block;
    keys.push_back(key);
  }
  for (const auto& key : keys) {
    std::pair<SectorIndex, SectorIndex> mirror{key.second, key.first};
    if (!x.blocks.count(mirror)) x.blocks[mirror] = x.blocks[key].adjoint();
  }
  validate_observable(x);
  return x;
}

SectoredObservable load_observable(const std::string& path, const ModelSpec& model) {
  return observable_from_json(load_json_file(path), model);
}

}  // namespace convspec
