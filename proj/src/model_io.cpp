#include "plauslab/model_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "plauslab/backends.hpp"
#include "plauslab/error.hpp"

namespace plauslab {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw ParseError("model file: " + what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string str(const json& j, const std::string& where) {
  if (!j.is_string()) bad(where + " must be a string");
  return j.get<std::string>();
}

std::vector<std::string> names(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) bad(where + " must be a nonempty array of names");
  std::vector<std::string> out;
  for (const json& e : j) out.push_back(str(e, where));
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t k = i + 1; k < out.size(); ++k)
      if (out[i] == out[k]) throw ValidationError(where + " repeats '" + out[i] + "'");
  return out;
}

int index_of(const std::map<std::string, int>& index, const std::string& name, const std::string& where) {
  auto it = index.find(name);
  if (it == index.end()) throw ValidationError(where + ": unknown name '" + name + "'");
  return it->second;
}

std::map<std::string, int> indexed(const std::vector<std::string>& v) {
  std::map<std::string, int> m;
  for (std::size_t i = 0; i < v.size(); ++i) m[v[i]] = static_cast<int>(i);
  return m;
}

Rational rational(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  bad(where + " must be an integer or a \"p/q\" string");
}

Rank rank(const json& j, const std::string& where) {
  if (j.is_string() && (j == "inf" || j == "∞")) return kInfiniteRank;
  if (!j.is_number_integer() || j.get<long long>() < 0 || j.get<long long>() >= kInfiniteRank)
    bad(where + " must be a nonnegative integer or \"inf\"");
  return static_cast<Rank>(j.get<long long>());
}

Vocabulary read_vocabulary(const json& j) {
  Vocabulary v;
  if (j.contains("predicates"))
    for (const auto& [n, a] : j.at("predicates").items()) {
      if (!a.is_number_integer() || a.get<int>() < 0) bad("arity of '" + n + "' must be a nonnegative integer");
      v.add_predicate(n, a.get<int>());
    }
  if (j.contains("functions"))
    for (const auto& [n, a] : j.at("functions").items()) {
      if (!a.is_number_integer() || a.get<int>() < 0) bad("arity of '" + n + "' must be a nonnegative integer");
      v.add_function(n, a.get<int>());
    }
  return v;
}

Interpretation read_interp(const json& j, const Vocabulary& vocab, const std::vector<std::string>& dom,
                           const std::string& where) {
  const int d = static_cast<int>(dom.size());
  const auto di = indexed(dom);
  Interpretation in;
  for (const auto& [n, a] : vocab.predicates()) in.preds[n].assign(table_size(a, d), 0);
  for (const auto& [n, a] : vocab.functions()) in.funcs[n].assign(table_size(a, d), -1);
  if (!j.is_object()) bad(where + " must be an object");
  if (j.contains("pred"))
    for (const auto& [n, rows] : j.at("pred").items()) {
      auto arity = vocab.predicate_arity(n);
      if (!arity) throw ValidationError(where + ": predicate '" + n + "' is not in the vocabulary");
      if (rows.is_boolean()) {
        if (*arity != 0) throw ValidationError(where + ": predicate '" + n + "' is not 0-ary");
        in.preds[n][0] = rows.get<bool>();
        continue;
      }
      if (!rows.is_array()) bad(where + ": predicate '" + n + "' needs a list of tuples");
      for (const json& row : rows) {
        if (!row.is_array() || static_cast<int>(row.size()) != *arity)
          throw ValidationError(where + ": tuple of '" + n + "' has the wrong arity");
        std::vector<Element> args;
        for (const json& e : row) args.push_back(index_of(di, str(e, where), where));
        in.preds[n][tuple_code(args, d)] = 1;
      }
    }
  if (j.contains("func"))
    for (const auto& [n, rows] : j.at("func").items()) {
      auto arity = vocab.function_arity(n);
      if (!arity) throw ValidationError(where + ": function '" + n + "' is not in the vocabulary");
      if (rows.is_string()) {
        if (*arity != 0) throw ValidationError(where + ": function '" + n + "' is not a constant");
        in.funcs[n][0] = index_of(di, rows.get<std::string>(), where);
        continue;
      }
      if (!rows.is_array()) bad(where + ": function '" + n + "' needs a list of rows");
      for (const json& row : rows) {
        if (!row.is_array() || static_cast<int>(row.size()) != *arity + 1)
          throw ValidationError(where + ": row of '" + n + "' has the wrong arity");
        std::vector<Element> args;
        for (int i = 0; i < *arity; ++i) args.push_back(index_of(di, str(row[i], where), where));
        Element& slot = in.funcs[n][tuple_code(args, d)];
        if (slot != -1) throw ValidationError(where + ": function '" + n + "' is defined twice on one argument");
        slot = index_of(di, str(row.back(), where), where);
      }
    }
  for (const auto& [n, table] : in.funcs)
    for (Element e : table)
      if (e == -1) throw ValidationError(where + ": function '" + n + "' is not total");
  in.validate(vocab, d, where);
  return in;
}

// Per-carrier data given as an array in carrier order or an object by name.
std::vector<json> per_point(const json& data, const std::vector<std::string>& carrier,
                            const std::map<std::string, int>& index) {
  std::vector<json> out(carrier.size());
  if (data.is_array()) {
    if (data.size() != carrier.size()) throw ValidationError("plausibility data has the wrong length");
    for (std::size_t i = 0; i < carrier.size(); ++i) out[i] = data[i];
    return out;
  }
  if (!data.is_object()) bad("plausibility data must be an array or an object");
  std::vector<bool> seen(carrier.size(), false);
  for (const auto& [n, v] : data.items()) {
    int i = index_of(index, n, "plausibility");
    out[i] = v;
    seen[i] = true;
  }
  for (std::size_t i = 0; i < carrier.size(); ++i)
    if (!seen[i]) throw ValidationError("plausibility: no value for '" + carrier[i] + "'");
  return out;
}

std::shared_ptr<const SetPlausibility> read_measure(const json& j, const std::vector<std::string>& carrier,
                                                    const std::map<std::string, int>& index) {
  const std::string style = str(field(j, "style"), "style");
  const json& data = field(j, "data");
  const int n = static_cast<int>(carrier.size());
  if (n > max_worlds())
    throw CapacityError("the measure has " + std::to_string(n) + " points; the cap is " + std::to_string(max_worlds()));
  if (style == "possibility") {
    std::vector<Rational> w;
    for (const json& v : per_point(data, carrier, index)) w.push_back(rational(v, "possibility weight"));
    return std::make_shared<PossibilityMeasure>(w);
  }
  if (style == "kappa") {
    std::vector<Rank> r;
    for (const json& v : per_point(data, carrier, index)) r.push_back(rank(v, "rank"));
    return std::make_shared<KappaRanking>(r);
  }
  if (style == "ppd") {
    std::vector<PpdTerm> terms;
    for (const json& v : per_point(data, carrier, index))
      terms.push_back({rational(field(v, "coeff"), "coeff"), rank(field(v, "exp"), "exp")});
    return std::make_shared<PpdPlausibility>(EpsPolyPpd(terms));
  }
  if (style == "preferential") {
    if (!data.is_array()) bad("preferential data must be a list of [preferred, other] pairs");
    std::vector<std::pair<int, int>> pairs;
    for (const json& p : data) {
      if (!p.is_array() || p.size() != 2) bad("preferential pairs have two names");
      pairs.emplace_back(index_of(index, str(p[0], "pair"), "preferential"),
                         index_of(index, str(p[1], "pair"), "preferential"));
    }
    return std::make_shared<PreferentialPlausibility>(PreferentialOrder(StrictOrder::from_pairs(n, pairs)));
  }
  if (style == "explicit") {
    std::vector<std::string> values = names(field(data, "values"), "values");
    const auto vi = indexed(values);
    std::vector<std::pair<ValueId, ValueId>> leq;
    if (data.contains("leq"))
      for (const json& p : data.at("leq")) {
        if (!p.is_array() || p.size() != 2) bad("leq pairs have two values");
        leq.emplace_back(index_of(vi, str(p[0], "leq"), "leq"), index_of(vi, str(p[1], "leq"), "leq"));
      }
    ValueId bot = data.contains("bottom") ? index_of(vi, str(data.at("bottom"), "bottom"), "bottom") : 0;
    ValueId top = data.contains("top") ? index_of(vi, str(data.at("top"), "top"), "top")
                                       : static_cast<ValueId>(values.size()) - 1;
    PlausibilityPoset poset = PlausibilityPoset::from_pairs(values, leq, bot, top);
    std::vector<ValueId> assign(std::size_t{1} << n, -1);
    const json& rows = field(data, "assign");
    if (!rows.is_array()) bad("assign must be a list of [[member, ...], value] rows");
    for (const json& row : rows) {
      if (!row.is_array() || row.size() != 2 || !row[0].is_array()) bad("assign rows are [[member, ...], value]");
      Mask m = 0;
      for (const json& e : row[0]) m |= Mask{1} << index_of(index, str(e, "assign"), "assign");
      if (assign[m] != -1) throw ValidationError("assign: " + format_set(m, carrier) + " is assigned twice");
      assign[m] = index_of(vi, str(row[1], "assign"), "assign");
    }
    for (Mask m = 0; m < assign.size(); ++m)
      if (assign[m] == -1) throw ValidationError("assign: no value for " + format_set(m, carrier));
    return std::make_shared<FiniteMeasure>(n, poset, assign);
  }
  bad("unknown plausibility style '" + style + "'");
}

}  // namespace

Model load_model(const std::string& json_text, bool require_qualitative) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad(e.what());
  }
  Model m;
  try {
    const std::string kind = str(field(j, "kind"), "kind");
    if (kind != "subjective" && kind != "statistical") bad("kind must be subjective or statistical");
    Vocabulary vocab = j.contains("vocabulary") ? read_vocabulary(j.at("vocabulary")) : Vocabulary();
    std::vector<std::string> dom = names(field(j, "dom"), "dom");
    const json& interp = field(j, "interp");
    const bool single = interp.is_object() && (interp.contains("pred") || interp.contains("func") || interp.empty());
    if (kind == "subjective") {
      m.lang = Lang::kSubj;
      std::vector<std::string> worlds = names(field(j, "worlds"), "worlds");
      std::vector<Interpretation> in;
      for (const std::string& w : worlds) {
        if (single) {
          in.push_back(read_interp(interp, vocab, dom, "interp"));
        } else {
          if (!interp.contains(w)) throw ValidationError("interp: world '" + w + "' is not interpreted");
          in.push_back(read_interp(interp.at(w), vocab, dom, "interp of " + w));
        }
      }
      if (!single)
        for (const auto& [w, _] : interp.items())
          if (!indexed(worlds).count(w)) throw ValidationError("interp: unknown world '" + w + "'");
      auto pl = read_measure(field(j, "plausibility"), worlds, indexed(worlds));
      m.subj = std::make_shared<SubjectiveStructure>(vocab, dom, worlds, in, pl);
    } else {
      m.lang = Lang::kStat;
      const json& k = field(j, "slots");
      if (!k.is_number_integer() || k.get<int>() < 1) bad("slots must be a positive integer");
      if (!single) bad("a statistical model has one interpretation {pred, func}");
      Interpretation in = read_interp(interp, vocab, dom, "interp");
      // Build once with a placeholder to learn the point names.
      const int slots = k.get<int>();
      std::size_t points = table_size(slots, static_cast<int>(dom.size()));
      if (points > static_cast<std::size_t>(max_worlds()))
        throw CapacityError("|Dom|^k = " + std::to_string(points) + " exceeds the cap of " + std::to_string(max_worlds()));
      StatisticalStructure shape(vocab, dom, slots, in,
                                 std::make_shared<KappaRanking>(std::vector<Rank>(points, 0)));
      std::vector<std::string> carrier;
      std::map<std::string, int> index;
      for (int p = 0; p < shape.points(); ++p) {
        carrier.push_back(shape.point_name(p));
        index[carrier.back()] = p;
        if (slots == 1) index[dom[p]] = p;
      }
      auto pl = read_measure(field(j, "plausibility"), carrier, index);
      m.stat = std::make_shared<StatisticalStructure>(vocab, dom, slots, in, pl);
    }
  } catch (const json::exception& e) {
    bad(e.what());
  }
  if (require_qualitative)
    if (auto v = check_qualitative(m.pl())) throw ValidationError("not qualitative: " + v->message);
  return m;
}

Model load_model_file(const std::string& path, bool require_qualitative) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read model file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return load_model(text.str(), require_qualitative);
}

std::string model_to_json(const SubjectiveStructure& s) {
  json j;
  j["kind"] = "subjective";
  json preds = json::object(), funcs = json::object();
  for (const auto& [n, a] : s.vocab().predicates()) preds[n] = a;
  for (const auto& [n, a] : s.vocab().functions()) funcs[n] = a;
  j["vocabulary"] = {{"predicates", preds}, {"functions", funcs}};
  j["dom"] = s.dom();
  j["worlds"] = s.worlds();
  const int d = s.dom_size();
  json interp = json::object();
  for (int w = 0; w < s.world_count(); ++w) {
    json pred = json::object(), func = json::object();
    for (const auto& [n, a] : s.vocab().predicates()) {
      json rows = json::array();
      for (std::size_t c = 0; c < table_size(a, d); ++c)
        if (s.interp(w).preds.at(n)[c]) {
          json row = json::array();
          for (Element e : tuple_decode(c, a, d)) row.push_back(s.dom()[e]);
          rows.push_back(row);
        }
      pred[n] = rows;
    }
    for (const auto& [n, a] : s.vocab().functions()) {
      if (a == 0) {
        func[n] = s.dom()[s.interp(w).funcs.at(n)[0]];
        continue;
      }
      json rows = json::array();
      for (std::size_t c = 0; c < table_size(a, d); ++c) {
        json row = json::array();
        for (Element e : tuple_decode(c, a, d)) row.push_back(s.dom()[e]);
        row.push_back(s.dom()[s.interp(w).funcs.at(n)[c]]);
        rows.push_back(row);
      }
      func[n] = rows;
    }
    interp[s.worlds()[w]] = {{"pred", pred}, {"func", func}};
  }
  j["interp"] = interp;
  FiniteMeasure fm = materialize(s.pl());
  const PlausibilityPoset& p = fm.values();
  std::vector<std::string> value_names;
  std::map<std::string, int> seen;
  for (const std::string& n : p.names()) {
    const int k = seen[n]++;
    value_names.push_back(k ? n + "#" + std::to_string(k) : n);
  }
  json leq = json::array();
  for (ValueId a = 0; a < p.size(); ++a)
    for (ValueId b = 0; b < p.size(); ++b)
      if (a != b && p.leq(a, b)) leq.push_back({value_names[a], value_names[b]});
  json assign = json::array();
  for (Mask m = 0; m < fm.assignment().size(); ++m) {
    json set = json::array();
    for (int w : members(m)) set.push_back(s.worlds()[w]);
    assign.push_back({set, value_names[fm.value(m)]});
  }
  j["plausibility"] = {{"style", "explicit"},
                       {"data",
                        {{"values", value_names},
                         {"leq", leq},
                         {"bottom", value_names[p.bottom()]},
                         {"top", value_names[p.top()]},
                         {"assign", assign}}}};
  return j.dump(2);
}

}  // namespace plauslab
