#include "nps/config.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace nps {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string resolve(const std::string& origin_dir, const std::string& path) {
  if (path.empty() || origin_dir.empty()) return path;
  std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  return (std::filesystem::path(origin_dir) / p).string();
}

std::int64_t parse_int(const std::string& s, const std::string& where) {
  std::int64_t v = 0;
  const char* b = s.data();
  const char* e = b + s.size();
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e)
    throw ConfigError(where + ": expected an integer, got \"" + s + "\"");
  return v;
}

Value json_to_value(const json& j, const std::string& dsl, const std::string& where) {
  if (dsl == "toy") {
    if (j.is_number_integer()) return int_value(j.get<std::int64_t>());
    if (j.is_string()) return int_value(parse_int(j.get<std::string>(), where));
    throw ConfigError(where + ": expected an integer for the toy dsl");
  }
  if (j.is_string()) return str_value(j.get<std::string>());
  throw ConfigError(where + ": expected a string for the string dsl");
}

json value_to_json(const Value& v, const std::string& dsl, const std::string& where) {
  if (dsl == "toy") {
    const std::int64_t* i = as_int(v);
    if (!i) throw ConfigError(where + ": non-integer value under the toy dsl");
    return json(*i);
  }
  const std::string* s = as_str(v);
  if (!s) throw ConfigError(where + ": non-string value under the string dsl");
  return json(*s);
}

}  // namespace

ProblemConfig parse_config(const std::string& json_text, const std::string& origin_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ProblemConfig c;
  try {
    if (j.contains("dsl")) c.dsl = j["dsl"].get<std::string>();
    if (j.contains("constants")) c.constants = j["constants"].get<std::vector<std::string>>();
    if (j.contains("ks")) c.ks = j["ks"].get<std::vector<std::int64_t>>();
    if (j.contains("const_pos_ks"))
      c.const_pos_ks = j["const_pos_ks"].get<std::vector<std::int64_t>>();
    if (j.contains("tokens")) c.tokens = j["tokens"].get<std::vector<std::string>>();
    if (j.contains("height")) c.height = j["height"].get<int>();
    if (j.contains("len_slack")) c.len_slack = j["len_slack"].get<int>();
    if (j.contains("loss")) c.loss = j["loss"].get<std::string>();
    if (j.contains("complexity")) c.complexity = j["complexity"].get<std::string>();
    if (j.contains("objective")) c.objective = j["objective"].get<std::string>();
    if (j.contains("bound")) {
      const json& b = j["bound"];
      if (b.is_string() && b.get<std::string>() == "inf")
        c.bound = std::numeric_limits<double>::infinity();
      else if (b.is_number())
        c.bound = b.get<double>();
      else
        throw ConfigError("bound must be a number or \"inf\"");
    }
    if (j.contains("trusted_indices"))
      c.trusted_indices = j["trusted_indices"].get<std::vector<std::size_t>>();
    if (j.contains("dataset")) c.dataset = j["dataset"].get<std::string>();
    if (j.contains("timeout_sec")) c.timeout_sec = j["timeout_sec"].get<double>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config field: ") + e.what());
  }

  if (c.dsl != "toy" && c.dsl != "string")
    throw ConfigError("dsl must be \"toy\" or \"string\"");
  if (c.height < 1) throw ConfigError("height must be at least 1");
  if (c.len_slack != 0 && c.len_slack != 1) throw ConfigError("len_slack must be 0 or 1");
  if (c.bound && !(*c.bound >= 0)) throw ConfigError("bound must be nonnegative");
  if (!c.trusted_indices.empty() && !c.bound)
    throw ConfigError("trusted_indices requires a bound");
  if (c.loss == "dl" && c.dsl == "toy")
    throw ConfigError("the dl loss requires the string dsl");

  c.dataset = resolve(origin_dir, c.dataset);
  if (c.complexity != "size") c.complexity = resolve(origin_dir, c.complexity);
  return c;
}

ProblemConfig load_config(const std::string& path) {
  return parse_config(read_file(path), std::filesystem::path(path).parent_path().string());
}

DataSet load_dataset(const std::string& path, const std::string& dsl) {
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw ConfigError(path + " is not valid JSON: " + e.what());
  }
  if (!j.is_object() || !j.contains("examples") || !j["examples"].is_array())
    throw ConfigError(path + ": expected an object with an \"examples\" array");
  const json& rows = j["examples"];
  if (rows.empty()) throw ConfigError(path + ": empty dataset");
  DataSet data;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string where = path + " row " + std::to_string(i);
    const json& row = rows[i];
    if (!row.is_object() || !row.contains("input") || !row.contains("output"))
      throw ConfigError(where + ": each example needs \"input\" and \"output\"");
    if (!row["input"].is_object()) throw ConfigError(where + ": \"input\" must be an object");
    Env env;
    for (const auto& [name, val] : row["input"].items())
      env.set(name, json_to_value(val, dsl, where + " input " + name));
    data.examples.push_back({std::move(env), json_to_value(row["output"], dsl, where + " output")});
  }
  return data;
}

std::string dataset_to_json(const DataSet& data, const std::string& dsl) {
  json rows = json::array();
  for (std::size_t i = 0; i < data.size(); ++i) {
    const std::string where = "row " + std::to_string(i);
    json input = json::object();
    for (const auto& [name, val] : data.examples[i].input.bindings())
      input[name] = value_to_json(val, dsl, where + " input " + name);
    rows.push_back(
        {{"input", input}, {"output", value_to_json(data.examples[i].output, dsl, where)}});
  }
  return json{{"examples", rows}}.dump(2) + "\n";
}

void save_dataset(const DataSet& data, const std::string& path, const std::string& dsl) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << dataset_to_json(data, dsl);
  if (!out) throw ConfigError("failed writing " + path);
}

CostTable load_cost_table(const std::string& path, const Grammar& g) {
  std::istringstream in(read_file(path));
  CostTable t;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = path + ":" + std::to_string(lineno);
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    std::size_t e = line.find_last_not_of(" \t\r");
    std::string body = line.substr(b, e - b + 1);
    std::size_t sp = body.find_last_of(" \t");
    if (sp == std::string::npos) throw ConfigError(where + ": expected \"name cost\"");
    std::string name = body.substr(0, body.find_last_not_of(" \t", sp) + 1);
    std::string num = body.substr(sp + 1);
    char* endp = nullptr;
    double v = std::strtod(num.c_str(), &endp);
    if (num.empty() || endp != num.c_str() + num.size())
      throw ConfigError(where + ": bad cost \"" + num + "\"");
    if (v < 0) throw ConfigError(where + ": costs must be nonnegative");
    if (auto s = g.find_symbol(name); s && g.is_terminal(*s))
      t.terminal_cost[name] = v;
    else if (g.find_builtin(name))
      t.func_cost[name] = v;
    else
      throw ConfigError(where + ": \"" + name + "\" names no terminal or function");
  }
  return t;
}

Problem make_problem(const ProblemConfig& c) {
  Problem p;
  if (c.dsl == "toy") {
    p.grammar = std::make_unique<Grammar>(toy_grammar());
  } else {
    StringGrammarOptions opts;
    opts.constants = c.constants;
    if (!c.ks.empty()) opts.ks = c.ks;
    if (!c.const_pos_ks.empty()) opts.const_pos_ks = c.const_pos_ks;
    if (!c.tokens.empty()) opts.token_classes = c.tokens;
    p.grammar = std::make_unique<Grammar>(string_grammar(opts));
  }
  try {
    p.loss = loss_by_name(c.loss);
  } catch (const LossError& e) {
    throw ConfigError(e.what());
  }
  auto obj = objective_by_name(c.objective);
  if (!obj) throw ConfigError("unknown objective \"" + c.objective + "\"");
  p.objective = *obj;
  p.table = c.complexity == "size" ? CostTable::unit(*p.grammar)
                                   : load_cost_table(c.complexity, *p.grammar);
  p.build.len_slack = c.len_slack;
  return p;
}

}  // namespace nps
