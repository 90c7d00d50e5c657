#include "pfode/config.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "pfode/errors.hpp"

namespace pfode {

using nlohmann::json;

const char* cf_normalization_id(CfNormalization kind) noexcept {
  return kind == CfNormalization::LosadaNieto ? "losada-nieto" : "unit";
}

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& item : obj.items()) {
    if (!allowed.contains(item.key())) {
      const std::string field = where.empty() ? item.key() : where + "." + item.key();
      throw ValidationError(field, "unknown key");
    }
  }
}

double get_number(const json& obj, const std::string& key, const std::string& field) {
  const json& v = obj.at(key);
  if (!v.is_number()) {
    throw ValidationError(field, "must be a number");
  }
  const double d = v.get<double>();
  if (!std::isfinite(d)) {
    throw ValidationError(field, "must be finite");
  }
  return d;
}

std::vector<double> get_number_list(const json& obj, const std::string& key) {
  const json& v = obj.at(key);
  std::vector<double> out;
  if (v.is_number()) {
    out.push_back(get_number(obj, key, key));
    return out;
  }
  if (!v.is_array()) {
    throw ValidationError(key, "must be a number or an array of numbers");
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string field = key + "[" + std::to_string(i) + "]";
    if (!v[i].is_number()) throw ValidationError(field, "must be a number");
    out.push_back(v[i].get<double>());
    if (!std::isfinite(out.back())) throw ValidationError(field, "must be finite");
  }
  return out;
}

bool get_bool(const json& obj, const std::string& key, const std::string& field) {
  const json& v = obj.at(key);
  if (!v.is_boolean()) throw ValidationError(field, "must be true or false");
  return v.get<bool>();
}

std::string get_string(const json& obj, const std::string& key, const std::string& field) {
  const json& v = obj.at(key);
  if (!v.is_string()) throw ValidationError(field, "must be a string");
  return v.get<std::string>();
}

const std::vector<std::string> kLinearKeys = {"rho1",   "rho2",   "omega1", "omega2",
                                              "gamma1", "gamma2", "psi1",   "psi2"};
const std::vector<std::string> kNonlinearKeys = {"rho1", "rho2", "omega1", "omega2",
                                                 "psi1", "psi2", "epsilon"};

ModelSpec parse_inline_model(const json& obj, std::string& name) {
  if (!obj.contains("type")) throw ValidationError("model.type", "required");
  const std::string type = get_string(obj, "type", "model.type");
  const std::vector<std::string>* keys = nullptr;
  if (type == "linear") {
    keys = &kLinearKeys;
  } else if (type == "nonlinear") {
    keys = &kNonlinearKeys;
  } else {
    throw ValidationError("model.type", "expected 'linear' or 'nonlinear'");
  }
  std::set<std::string> allowed(keys->begin(), keys->end());
  allowed.insert("type");
  allowed.insert("name");
  reject_unknown(obj, allowed, "model");
  name = obj.contains("name") ? get_string(obj, "name", "model.name") : "custom";
  if (name.empty() || name.find_first_of("/\\ ") != std::string::npos) {
    throw ValidationError("model.name", "must be non-empty without spaces or path separators");
  }
  auto num = [&](const std::string& k) {
    if (!obj.contains(k)) throw ValidationError("model." + k, "required");
    return get_number(obj, k, "model." + k);
  };
  if (type == "linear") {
    LinearLoveParams p;
    p.rho1 = num("rho1");
    p.rho2 = num("rho2");
    p.omega1 = num("omega1");
    p.omega2 = num("omega2");
    p.gamma1 = num("gamma1");
    p.gamma2 = num("gamma2");
    p.psi1 = num("psi1");
    p.psi2 = num("psi2");
    return ModelSpec::make(p);
  }
  NonlinearLoveParams p;
  p.rho1 = num("rho1");
  p.rho2 = num("rho2");
  p.omega1 = num("omega1");
  p.omega2 = num("omega2");
  p.psi1 = num("psi1");
  p.psi2 = num("psi2");
  p.epsilon = num("epsilon");
  p.validate();
  return ModelSpec::make(p);
}

json model_params_json(const ModelSpec& model) {
  json m;
  m["type"] = model_type_id(model.type);
  if (model.type == ModelSpec::Type::Linear) {
    const auto& p = model.linear;
    m["rho1"] = p.rho1;
    m["rho2"] = p.rho2;
    m["omega1"] = p.omega1;
    m["omega2"] = p.omega2;
    m["gamma1"] = p.gamma1;
    m["gamma2"] = p.gamma2;
    m["psi1"] = p.psi1;
    m["psi2"] = p.psi2;
  } else {
    const auto& p = model.nonlinear;
    m["rho1"] = p.rho1;
    m["rho2"] = p.rho2;
    m["omega1"] = p.omega1;
    m["omega2"] = p.omega2;
    m["psi1"] = p.psi1;
    m["psi2"] = p.psi2;
    m["epsilon"] = p.epsilon;
  }
  return m;
}

json model_to_json(const RunConfig& c) {
  if (c.model_is_preset) return c.model_name;
  json m = model_params_json(c.inline_model);
  m["name"] = c.model_name;
  return m;
}

void locate(std::string_view text, std::size_t byte, std::size_t& line, std::size_t& column) {
  line = 1;
  column = 1;
  const std::size_t end = std::min(byte, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  // nlohmann reports the byte just past the offending token.
  if (column > 1) --column;
}

}  // namespace

void RunConfig::validate() const {
  if (model_name.empty()) throw ValidationError("model", "required");
  if (model_is_preset) {
    (void)find_preset(model_name);
  } else {
    inline_model.validate();
  }
  if (!model_is_preset && alphas.empty()) {
    throw ValidationError("alpha", "required for an inline model");
  }
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0 && alphas[i] <= 1.0)) {
      std::ostringstream os;
      os << "must lie in (0, 1], got " << alphas[i];
      throw ValidationError("alpha[" + std::to_string(i) + "]", os.str());
    }
  }
  RegimeSchedule s = schedule;
  s.alpha = 1.0;
  s.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("dt", "must be positive");
  try {
    (void)make_uniform_grid(s, dt);
  } catch (const GridError& e) {
    throw ValidationError("dt", e.what());
  }
  if (sigmas.size() != 2) throw ValidationError("sigmas", "expected two entries");
  NoiseSpec{sigmas, seed}.validate();
  if (initial_state.size() != 2) throw ValidationError("initial_state", "expected two entries");
  for (double v : initial_state) {
    if (!std::isfinite(v)) throw ValidationError("initial_state", "must be finite");
  }
  if (outputs.out_dir.empty()) throw ValidationError("outputs.out_dir", "must be non-empty");
}

RunConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 0, column = 0;
    locate(json_text, e.byte, line, column);
    throw ParseError(e.what(), line, column);
  }
  if (!doc.is_object()) throw ValidationError("", "top level must be a JSON object");
  reject_unknown(doc,
                 {"model", "kernel", "alpha", "schedule", "dt", "seed", "sigmas", "initial_state",
                  "cf_normalization", "outputs"},
                 "");

  RunConfig c;
  if (!doc.contains("model")) throw ValidationError("model", "required");
  const Preset* preset = nullptr;
  const json& model = doc.at("model");
  if (model.is_string()) {
    c.model_name = model.get<std::string>();
    c.model_is_preset = true;
    try {
      preset = &find_preset(c.model_name);
    } catch (const UnknownPresetError& e) {
      throw ValidationError("model", e.what());
    }
  } else if (model.is_object()) {
    c.model_is_preset = false;
    c.inline_model = parse_inline_model(model, c.model_name);
  } else {
    throw ValidationError("model", "must be a preset name or an object");
  }

  c.kernel = preset ? preset->kernel : FractionalKernel::Caputo;
  if (doc.contains("kernel")) c.kernel = parse_kernel(get_string(doc, "kernel", "kernel"));

  if (doc.contains("alpha")) {
    c.alphas = get_number_list(doc, "alpha");
    if (c.alphas.empty()) throw ValidationError("alpha", "must be non-empty");
  }

  c.schedule = preset ? preset->schedule : RegimeSchedule{};
  c.schedule.kernel = FractionalKernel::Caputo;
  c.schedule.alpha = 1.0;
  if (doc.contains("schedule")) {
    const json& s = doc.at("schedule");
    if (!s.is_object()) throw ValidationError("schedule", "must be an object");
    reject_unknown(s, {"a1", "a2", "a"}, "schedule");
    if (s.contains("a1")) c.schedule.a1 = get_number(s, "a1", "schedule.a1");
    if (s.contains("a2")) c.schedule.a2 = get_number(s, "a2", "schedule.a2");
    if (s.contains("a")) c.schedule.a = get_number(s, "a", "schedule.a");
  }

  c.dt = 0.01;
  if (doc.contains("dt")) c.dt = get_number(doc, "dt", "dt");

  if (doc.contains("seed")) {
    const json& s = doc.at("seed");
    if (!s.is_number_unsigned()) {
      throw ValidationError("seed", "must be a non-negative integer");
    }
    c.seed = s.get<std::uint64_t>();
  }

  c.sigmas = preset ? preset->sigmas : std::vector<double>{0.0, 0.0};
  if (doc.contains("sigmas")) c.sigmas = get_number_list(doc, "sigmas");

  c.initial_state = preset ? preset->initial_state : State{1.0, 1.0};
  if (doc.contains("initial_state")) c.initial_state = get_number_list(doc, "initial_state");

  if (doc.contains("cf_normalization")) {
    const std::string n = get_string(doc, "cf_normalization", "cf_normalization");
    if (n == "unit") {
      c.cf_normalization = CfNormalization::Unit;
    } else if (n == "losada-nieto") {
      c.cf_normalization = CfNormalization::LosadaNieto;
    } else {
      throw ValidationError("cf_normalization", "expected 'unit' or 'losada-nieto'");
    }
  }

  if (doc.contains("outputs")) {
    const json& o = doc.at("outputs");
    if (!o.is_object()) throw ValidationError("outputs", "must be an object");
    reject_unknown(o, {"csv", "svg", "out_dir"}, "outputs");
    if (o.contains("csv")) c.outputs.csv = get_bool(o, "csv", "outputs.csv");
    if (o.contains("svg")) c.outputs.svg = get_bool(o, "svg", "outputs.svg");
    if (o.contains("out_dir")) c.outputs.out_dir = get_string(o, "out_dir", "outputs.out_dir");
  }

  c.validate();
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const RunConfig& c) {
  json doc;
  doc["model"] = model_to_json(c);
  doc["kernel"] = kernel_id(c.kernel);
  if (!c.alphas.empty()) doc["alpha"] = c.alphas;
  doc["schedule"] = {{"a1", c.schedule.a1}, {"a2", c.schedule.a2}, {"a", c.schedule.a}};
  doc["dt"] = c.dt;
  doc["seed"] = c.seed;
  doc["sigmas"] = c.sigmas;
  doc["initial_state"] = c.initial_state;
  doc["cf_normalization"] = cf_normalization_id(c.cf_normalization);
  doc["outputs"] = {{"csv", c.outputs.csv}, {"svg", c.outputs.svg}, {"out_dir", c.outputs.out_dir}};
  return doc.dump(2) + "\n";
}

std::string preset_json(const Preset& preset) {
  json doc;
  doc["name"] = preset.name;
  doc["description"] = preset.description;
  doc["kernel"] = kernel_id(preset.kernel);
  doc["schedule"] = {
      {"a1", preset.schedule.a1}, {"a2", preset.schedule.a2}, {"a", preset.schedule.a}};
  doc["dt"] = preset.dt;
  doc["sigmas"] = preset.sigmas;
  doc["initial_state"] = preset.initial_state;
  json members = json::array();
  for (const auto& m : preset.members) {
    members.push_back({{"label", m.label}, {"model", model_params_json(m.model)},
                       {"alpha", m.alphas}});
  }
  doc["members"] = std::move(members);
  doc["runs"] = preset.run_count();
  return doc.dump(2) + "\n";
}

}  // namespace pfode
