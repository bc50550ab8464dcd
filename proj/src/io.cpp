#include "trc/io.hpp"

#include <cctype>

namespace trc {

nlohmann::json tree_to_json(const ModalTree& t) {
  nlohmann::json j;
  j["atoms"] = t.atoms;
  nlohmann::json kids = nlohmann::json::array();
  for (const Edge& e : t.children) kids.push_back(nlohmann::json::array({e.label, tree_to_json(e.child)}));
  j["children"] = kids;
  return j;
}

ModalTree tree_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("atoms") || !j.contains("children"))
    throw ParseError("tree JSON needs \"atoms\" and \"children\"", 0);
  ModalTree t;
  for (const auto& a : j.at("atoms")) {
    if (!a.is_string()) throw ParseError("tree atoms must be strings", 0);
    t.atoms.push_back(a.get<std::string>());
  }
  for (const auto& c : j.at("children")) {
    if (!c.is_array() || c.size() != 2 || !c.at(0).is_number_unsigned())
      throw ParseError("tree child entries must be [label, tree] with a natural label", 0);
    t.children.push_back(Edge{c.at(0).get<Label>(), tree_from_json(c.at(1))});
  }
  return t;
}

std::string tree_to_string(const ModalTree& t) { return tree_to_json(t).dump(); }

ModalTree tree_from_string(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed tree JSON", 0);
  return tree_from_json(j);
}

nlohmann::json instance_to_json(const RuleInstance& r) {
  nlohmann::json j;
  j["rule"] = std::string(rule_name(r.kind));
  j["pos"] = r.pos;
  switch (r.kind) {
    case RuleKind::RhoPlus:
    case RuleKind::RhoMinus:
    case RuleKind::PiPlus:
    case RuleKind::PiMinus:
      j["i"] = r.i;
      break;
    case RuleKind::Sigma:
    case RuleKind::Four:
    case RuleKind::J:
      j["i"] = r.i;
      j["j"] = r.j;
      break;
    case RuleKind::Lambda:
      j["i"] = r.i;
      j["beta"] = r.beta;
      break;
  }
  return j;
}

RuleInstance instance_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rule") || !j.contains("pos"))
    throw ParseError("instance JSON needs \"rule\" and \"pos\"", 0);
  RuleInstance r;
  r.kind = rule_kind_from_name(j.at("rule").get<std::string>());
  for (const auto& c : j.at("pos")) {
    if (!c.is_number_unsigned()) throw ParseError("instance pos must hold naturals", 0);
    r.pos.push_back(c.get<std::uint32_t>());
  }
  auto need = [&](const char* key) -> std::uint64_t {
    if (!j.contains(key) || !j.at(key).is_number_unsigned())
      throw ParseError(std::string("instance JSON needs natural \"") + key + "\"", 0);
    return j.at(key).get<std::uint64_t>();
  };
  switch (r.kind) {
    case RuleKind::RhoPlus:
    case RuleKind::RhoMinus:
    case RuleKind::PiPlus:
    case RuleKind::PiMinus:
      r.i = static_cast<std::uint32_t>(need("i"));
      break;
    case RuleKind::Sigma:
    case RuleKind::Four:
    case RuleKind::J:
      r.i = static_cast<std::uint32_t>(need("i"));
      r.j = static_cast<std::uint32_t>(need("j"));
      break;
    case RuleKind::Lambda:
      r.i = static_cast<std::uint32_t>(need("i"));
      r.beta = need("beta");
      break;
  }
  return r;
}

std::string trace_to_jsonl(const Trace& tr) {
  std::string out = tree_to_string(tr.initial);
  out += '\n';
  for (const RuleInstance& r : tr.steps) {
    out += instance_to_json(r).dump();
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

bool is_blank(const std::string& s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Trace trace_from_jsonl(std::string_view text) {
  Trace tr;
  bool have_tree = false;
  for (const std::string& line : split_lines(text)) {
    if (is_blank(line)) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) throw ParseError("malformed JSONL line: " + line, 0);
    if (j.is_object() && j.contains("stage_bounds")) continue;  // metadata
    if (!have_tree) {
      tr.initial = tree_from_json(j);
      have_tree = true;
    } else {
      tr.steps.push_back(instance_from_json(j));
    }
  }
  if (!have_tree) throw ParseError("trace JSONL has no initial tree line", 0);
  return tr;
}

std::string normal_trace_to_jsonl(const NormalTrace& nt) {
  Trace flat = to_trace(nt);
  std::string out = trace_to_jsonl(flat);
  std::uint64_t r = nt.replicative.size();
  std::uint64_t m = r + nt.modal.size();
  std::uint64_t d = m + nt.decreasing.size();
  std::uint64_t a = d + nt.atomic.size();
  std::uint64_t s = a + nt.structural.size();
  nlohmann::json meta;
  meta["stage_bounds"] = {r, m, d, a, s};
  out += meta.dump();
  out += '\n';
  return out;
}

NormalTrace normal_trace_from_jsonl(std::string_view text) {
  Trace flat = trace_from_jsonl(text);
  return split_stages(flat);
}

}  // namespace trc
