#include "pprlab/json_io.hpp"

#include <cmath>
#include <cstdio>

namespace pprlab {

Json to_json(const QueryTotals& totals) {
  Json j;
  for (std::size_t k = 0; k < kQueryKinds; ++k)
    j[query_kind_name(static_cast<QueryKind>(k))] = totals.by_kind[k];
  j["total"] = totals.total;
  return j;
}

Json to_json(const EstimateReport& report) {
  Json j;
  j["mode"] = estimator_mode_name(report.mode);
  j["n"] = report.n;
  j["target"] = report.target;
  j["alpha"] = report.alpha;
  j["estimate"] = report.estimate;
  j["stop_round"] = report.stop_round;
  j["stop_reason"] = stop_reason_name(report.stop_reason);
  if (report.mode == EstimatorMode::InstanceSmart)
    j["degree_test_passed"] = report.degree_test_passed;
  Json rounds = Json::array();
  for (const auto& r : report.rounds) {
    Json jr;
    jr["round"] = r.round;
    jr["r_push"] = r.r_push;
    jr["tau"] = r.tau;
    jr["x1"] = r.x1;
    jr["x2"] = r.x2;
    jr["x3"] = r.x3;
    jr["cost_spent"] = r.cost_spent;
    jr["walks"] = r.walks;
    rounds.push_back(std::move(jr));
  }
  j["rounds"] = std::move(rounds);
  j["query_totals"] = to_json(report.queries);
  return j;
}

Json to_json(const ComplexityProfile& profile, bool include_breakpoints) {
  Json j;
  j["target"] = profile.target;
  j["alpha"] = profile.alpha;
  j["pagerank"] = profile.pagerank;
  j["r_star"] = profile.r_star;
  j["t_star"] = profile.t_star;
  j["breakpoint_count"] = profile.breakpoints.size();
  if (include_breakpoints) {
    Json bps = Json::array();
    for (std::size_t k = 0; k < profile.breakpoints.size(); ++k) {
      Json b;
      b["r"] = profile.breakpoints[k];
      b["t_at"] = profile.t_at[k];
      b["t_above"] = profile.t_above[k];
      bps.push_back(std::move(b));
    }
    j["breakpoints"] = std::move(bps);
  }
  return j;
}

namespace {

const char* surgery_kind_name(SurgeryKind k) {
  switch (k) {
    case SurgeryKind::Subdivide:
      return "subdivide";
    case SurgeryKind::RemoveInEdges:
      return "remove-in-edges";
    case SurgeryKind::RewireW:
      return "rewire-w";
    case SurgeryKind::AddFunnel:
      return "add-funnel";
  }
  return "?";
}

Json edge_json(const std::pair<Vertex, Vertex>& e) {
  return Json::array({e.first, e.second});
}

}  // namespace

Json to_json(const SurgeryRecord& rec) {
  Json j;
  j["kind"] = surgery_kind_name(rec.kind);
  if (rec.edge) j["edge"] = edge_json(*rec.edge);
  if (rec.new_vertex) j["new_vertex"] = *rec.new_vertex;
  if (!rec.removed_edges.empty()) {
    Json arr = Json::array();
    for (const auto& e : rec.removed_edges) arr.push_back(edge_json(e));
    j["removed_edges"] = std::move(arr);
  }
  if (!rec.w.empty()) {
    j["w"] = rec.w;
    j["w_iso"] = rec.w_iso;
    j["w_ext"] = rec.w_ext;
    j["eps"] = rec.eps;
  }
  if (rec.x_star) j["x_star"] = *rec.x_star;
  if (rec.edge_second) j["edge_second"] = edge_json(*rec.edge_second);
  if (!rec.outside_in_deg_before.empty()) {
    bool preserved = rec.outside_in_deg_before == rec.outside_in_deg_after &&
                     rec.outside_out_deg_before == rec.outside_out_deg_after;
    j["outside_degrees_preserved"] = preserved;
  }
  return j;
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\t':
        out += "\\t";
        break;
      case '\r':
        out += "\\r";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

void dump_value(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case nlohmann::detail::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        append_escaped(out, it.key());
        out += ": ";
        dump_value(it.value(), out, indent + 1);
      }
      out += '\n';
      out += pad;
      out += '}';
      return;
    }
    case nlohmann::detail::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in;
        dump_value(v, out, indent + 1);
      }
      out += '\n';
      out += pad;
      out += ']';
      return;
    }
    case nlohmann::detail::value_t::string:
      append_escaped(out, j.get<std::string>());
      return;
    case nlohmann::detail::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case nlohmann::detail::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      return;
    case nlohmann::detail::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      return;
    case nlohmann::detail::value_t::number_float: {
      const double d = j.get<double>();
      if (!std::isfinite(d)) {
        out += "null";
        return;
      }
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.17g", d);
      out += buf;
      // Keep floats distinguishable from integers through a reparse.
      if (std::string_view(buf).find_first_of(".eEnN") == std::string_view::npos)
        out += ".0";
      return;
    }
    default:
      out += "null";
      return;
  }
}

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  dump_value(j, out, 0);
  out += '\n';
  return out;
}

}  // namespace pprlab
