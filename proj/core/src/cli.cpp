#include "osarr/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "osarr/errors.hpp"
#include "osarr/graphs.hpp"
#include "osarr/homotopy.hpp"
#include "osarr/hypersolvable.hpp"
#include "osarr/os_algebra.hpp"
#include "osarr/parallel.hpp"

namespace osarr {

using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(std::move(t));
  return out;
}

struct Line {
  std::size_t number;
  std::string body;     // text before any '#'
  std::string comment;  // text after the first '#', trimmed
};

std::string where(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line) + ": ";
}

Integer parse_integer(const std::string& tok, const std::string& source, std::size_t line) {
  try {
    return Integer::parse(tok);
  } catch (const std::invalid_argument&) {
    throw InputError(where(source, line) + "expected an integer, got '" + tok + "'");
  }
}

std::size_t parse_count(const std::string& tok, const std::string& source, std::size_t line) {
  Integer v = parse_integer(tok, source, line);
  if (v.sign() < 0 || !v.is_small() || v.small_value() > (1 << 20))
    throw InputError(where(source, line) + "count out of range: " + tok);
  return static_cast<std::size_t>(v.small_value());
}

std::string format_name(InputFormat f) { return f == InputFormat::Graph ? "graph" : "arrangement"; }

std::int64_t elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - since)
      .count();
}

json mask_json(Mask m) {
  json out = json::array();
  for (auto i : mask_indices(m)) out.push_back(i);
  return out;
}

json counts_json(const std::vector<std::size_t>& v) {
  json out = json::array();
  for (auto x : v) out.push_back(x);
  return out;
}

}  // namespace

json to_json(const Integer& v) {
  if (v.fits_double_exactly()) return json(v.small_value());
  return json(v.to_string());
}

json to_json(const AbelianInvariants& inv) {
  json t = json::array();
  for (const auto& d : inv.torsion) t.push_back(to_json(d));
  return json{{"free_rank", inv.free_rank}, {"torsion", t}};
}

json to_json(const IntegerMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

InputFormat parse_format(const std::string& name) {
  if (name == "arr" || name == "arrangement") return InputFormat::Arrangement;
  if (name == "graph") return InputFormat::Graph;
  throw InputError("unknown input format '" + name + "' (expected arr or graph)");
}

std::vector<FieldSpec> parse_fields(const std::string& list) {
  std::vector<FieldSpec> out;
  std::string item;
  std::istringstream in(list);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty()) throw InputError("empty entry in field list '" + list + "'");
    if (item.find_first_not_of("0123456789") != std::string::npos || item.size() > 10)
      throw InputError("field characteristic must be a non-negative integer, got '" + item + "'");
    FieldSpec f = FieldSpec::from_characteristic(std::stoull(item));
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  }
  if (out.empty()) throw InputError("field list is empty");
  return out;
}

ParsedInput parse_input_text(const std::string& text, std::optional<InputFormat> format,
                             const std::string& source) {
  std::vector<Line> lines;
  {
    std::istringstream in(text);
    std::size_t number = 0;
    for (std::string raw; std::getline(in, raw);) {
      ++number;
      const auto hash = raw.find('#');
      Line l{number, trim(std::string_view(raw).substr(0, hash)), {}};
      if (hash != std::string::npos) l.comment = trim(std::string_view(raw).substr(hash + 1));
      if (!l.body.empty()) lines.push_back(std::move(l));
    }
  }
  if (lines.empty()) throw InputError(source + ": no header line");

  const auto header = split_ws(lines.front().body);
  const std::size_t hline = lines.front().number;
  InputFormat fmt;
  std::size_t count;
  if (header.size() == 2) {
    if (header[0] == "arrangement") {
      fmt = InputFormat::Arrangement;
    } else if (header[0] == "graph") {
      fmt = InputFormat::Graph;
    } else {
      throw InputError(where(source, hline) + "unknown header keyword '" + header[0] + "'");
    }
    if (format && *format != fmt)
      throw InputError(where(source, hline) + "header says " + format_name(fmt) + " but --format is " +
                       format_name(*format));
    count = parse_count(header[1], source, hline);
  } else if (header.size() == 1 && format) {
    fmt = *format;
    count = parse_count(header[0], source, hline);
  } else {
    throw InputError(where(source, hline) + "expected 'arrangement <dim>' or 'graph <n>'");
  }

  ParsedInput out;
  out.format = fmt;
  if (fmt == InputFormat::Arrangement) {
    if (count == 0) throw InputError(where(source, hline) + "dimension must be positive");
    std::vector<std::vector<Integer>> normals;
    std::vector<std::string> labels;
    bool any_label = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const auto& l = lines[i];
      const auto toks = split_ws(l.body);
      if (toks.size() != count)
        throw InputError(where(source, l.number) + "expected " + std::to_string(count) + " integers, got " +
                         std::to_string(toks.size()));
      std::vector<Integer> v;
      for (const auto& t : toks) v.push_back(parse_integer(t, source, l.number));
      normals.push_back(std::move(v));
      labels.push_back(l.comment);
      any_label = any_label || !l.comment.empty();
      out.item_lines.push_back(l.number);
    }
    if (normals.empty()) throw InputError(source + ": arrangement has no hyperplanes");
    if (any_label) {
      for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i].empty()) labels[i] = "h" + std::to_string(i + 1);
    } else {
      labels.clear();
    }
    try {
      out.arrangement = Arrangement::build(count, std::move(normals), std::move(labels));
    } catch (const InputError& e) {
      std::string msg = source + ": " + e.what();
      std::vector<int> lines_named;
      for (int item : e.items()) lines_named.push_back(static_cast<int>(out.item_lines.at(item)));
      if (!lines_named.empty()) {
        msg += " (line";
        msg += lines_named.size() > 1 ? "s" : "";
        for (std::size_t k = 0; k < lines_named.size(); ++k)
          msg += (k ? " and " : " ") + std::to_string(lines_named[k]);
        msg += ")";
      }
      throw InputError(msg, lines_named);
    }
    return out;
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& l = lines[i];
    const auto toks = split_ws(l.body);
    if (toks.size() != 2) throw InputError(where(source, l.number) + "expected an edge 'u v'");
    const auto u = parse_count(toks[0], source, l.number);
    const auto v = parse_count(toks[1], source, l.number);
    if (u == v) throw InputError(where(source, l.number) + "loop at vertex " + std::to_string(u));
    if (u < 1 || v < 1 || u > count || v > count)
      throw InputError(where(source, l.number) + "vertex out of range 1.." + std::to_string(count));
    if (u > v) throw InputError(where(source, l.number) + "edge must be written with u < v");
    auto [it, fresh] = seen.emplace(std::pair{u, v}, l.number);
    if (!fresh)
      throw InputError(where(source, l.number) + "edge " + toks[0] + " " + toks[1] + " repeats line " +
                           std::to_string(it->second),
                       {static_cast<int>(it->second), static_cast<int>(l.number)});
    edges.emplace_back(u - 1, v - 1);
    out.item_lines.push_back(l.number);
  }
  if (edges.empty()) throw InputError(source + ": graph has no edges");
  if (edges.size() > kMaxHyperplanes)
    throw InputError(source + ": at most " + std::to_string(kMaxHyperplanes) + " edges are supported");
  out.arrangement = Arrangement::from_graph(Graph(count, std::move(edges)));
  return out;
}

ParsedInput parse_input(const std::string& path, std::optional<InputFormat> format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_input_text(buf.str(), format, path);
}

namespace {

json input_echo(const ParsedInput& in) {
  const auto& a = in.arrangement;
  json normals = json::array();
  for (const auto& v : a.normals()) {
    json row = json::array();
    for (const auto& x : v) row.push_back(to_json(x));
    normals.push_back(std::move(row));
  }
  json echo{{"format", format_name(in.format)},
            {"ambient_dim", a.ambient_dim()},
            {"hyperplanes", a.size()},
            {"normals", std::move(normals)},
            {"labels", a.labels()}};
  if (a.source()) {
    json edges = json::array();
    for (auto [u, v] : a.source()->edges()) edges.push_back({u + 1, v + 1});
    echo["graph"] = {{"vertices", a.source()->vertex_count()}, {"edges", std::move(edges)}};
  }
  return echo;
}

json classification_json(const Classification& c) {
  json out{{"hypersolvable", c.hypersolvable},
           {"supersolvable", c.supersolvable},
           {"r", c.r},
           {"modular_chain", c.modular_chain},
           {"warnings", c.warnings}};
  out["p"] = c.p ? json(*c.p) : json("infinite");
  out["c"] = c.genericity.c ? json(*c.genericity.c) : json("independent");
  out["two_generic"] = c.genericity.two_generic ? json(*c.genericity.two_generic) : json("not applicable");
  if (c.series) {
    json chain = json::array();
    for (Mask m : c.series->chain) chain.push_back(mask_json(m));
    out["composition_series"] = {{"chain", std::move(chain)}, {"exponents", counts_json(c.series->exponents)}};
  } else {
    out["composition_series"] = nullptr;
  }
  return out;
}

json homotopy_json(const HomotopyReport& h) {
  const auto& mu = h.quotient.mu;
  json gens = json::array();
  for (const auto& g : mu.generators) gens.push_back(g.to_string());
  json cols = json::array();
  for (const auto& c : mu.columns) cols.push_back(c.to_string());
  json labels = json::array();
  for (auto [g, e] : mu.rows) labels.push_back({g, e});

  const auto& rk = h.ranks;
  json rank{{"hyperplanes", rk.hyperplanes},
            {"gr0_rank", rk.gr0_rank},
            {"mu_rank", rk.mu_rank},
            {"gr1_free_rank", rk.gr1_free_rank},
            {"abar_p1", rk.abar_p1},
            {"a_p1", rk.a_p1},
            {"abar_p2", rk.abar_p2},
            {"a_p2", rk.a_p2},
            {"r_p2", rk.r_p2},
            {"formula", rk.formula},
            {"holds", rk.formula == static_cast<long long>(rk.gr1_free_rank)}};
  rank["chordless_p3"] = rk.chordless_p3 ? json(*rk.chordless_p3) : json(nullptr);
  rank["graphic_formula"] = rk.graphic_formula ? json(*rk.graphic_formula) : json(nullptr);

  return json{{"p", h.p},
              {"r", h.r},
              {"gr0_rank", h.quotient.gr0_rank},
              {"gr1", to_json(h.quotient.gr1)},
              {"gr1_rank", h.quotient.gr1.free_rank},
              {"torsion_tests",
               {{"gr1_torsion_free", h.torsion.gr1_torsion_free},
                {"a_plus_torsion_free", h.torsion.a_plus_free_p2},
                {"ind_torsion_free", h.torsion.ind_free_p2},
                {"gr1", to_json(h.torsion.gr1)},
                {"a_plus", to_json(h.torsion.a_plus)},
                {"ind", to_json(h.torsion.ind)}}},
              {"rank_check", std::move(rank)},
              {"mu",
               {{"rows", mu.matrix.rows()},
                {"cols", mu.matrix.cols()},
                {"matrix", to_json(mu.matrix)},
                {"row_labels", std::move(labels)},
                {"generators", std::move(gens)},
                {"columns", std::move(cols)}}},
              {"ring", NilpotentQuotient2::ring_note}};
}

}  // namespace

AnalyzeResult analyze_arrangement(const ParsedInput& input, const InputSpec& options) {
  const auto start = std::chrono::steady_clock::now();
  const OsAlgebra os(input.arrangement);
  const auto& a = os.arrangement();
  const std::size_t n = a.size();
  const std::size_t top = std::min(n, options.max_degree.value_or(n));

  AnalyzeResult out;
  json& doc = out.report;
  doc["tool"] = {{"name", "osarr"}, {"version", kVersion}};
  doc["input"] = input_echo(input);
  if (options.max_degree) doc["max_degree"] = *options.max_degree;

  auto t0 = std::chrono::steady_clock::now();
  const Classification cls = classify(os);
  doc["classification"] = classification_json(cls);
  const auto classify_ms = elapsed_ms(t0);

  t0 = std::chrono::steady_clock::now();
  json betti = json::array();
  for (const auto& b : betti_mobius(a)) betti.push_back(to_json(b));
  doc["betti"] = std::move(betti);

  json hilbert;
  const FieldSpec q = FieldSpec::rationals();
  for (auto kind : {QuotientKind::A, QuotientKind::ABar, QuotientKind::APlus, QuotientKind::Ind}) {
    std::vector<std::size_t> coeffs;
    for (std::size_t d = 0; d <= top; ++d) coeffs.push_back(os.hilbert_coefficient(kind, d, q));
    hilbert[to_string(kind)] = counts_json(coeffs);
  }
  doc["hilbert"] = std::move(hilbert);

  json invariants = json::array();
  for (std::size_t d = 0; d <= top; ++d) {
    json row = {{"degree", d},
                {"A", to_json(os.invariants(QuotientKind::A, d))},
                {"Abar", to_json(os.invariants(QuotientKind::ABar, d))},
                {"Aplus", to_json(os.invariants(QuotientKind::APlus, d))},
                {"IND", to_json(os.invariants(QuotientKind::Ind, d))}};
    invariants.push_back(std::move(row));
  }
  doc["invariants"] = std::move(invariants);

  std::vector<FieldSpec> fields = options.fields;
  for (const auto& f : default_r_table_fields(os, options.max_degree))
    if (options.fields.empty() && std::find(fields.begin(), fields.end(), f) == fields.end()) fields.push_back(f);
  const RmTable table = r_table(os, fields, options.max_degree);
  json rows = json::array();
  for (std::size_t m = 0; m < table.values.size(); ++m)
    rows.push_back({{"m", m}, {"values", counts_json(table.values[m])}, {"field_independent", table.field_independent[m]}});
  json field_names = json::array();
  for (const auto& f : table.fields) field_names.push_back(f.name());
  doc["r_table"] = {{"fields", std::move(field_names)}, {"rows", std::move(rows)}};

  std::map<std::size_t, std::size_t> by_size;
  for (const auto& c : os.circuits()) ++by_size[c.size()];
  json circ = json::array();
  for (auto [size, count] : by_size)
    circ.push_back({{"size", size}, {"count", count}, {"chordless", os.chordless(size).size()}});
  doc["circuits"] = std::move(circ);
  const auto algebra_ms = elapsed_ms(t0);

  t0 = std::chrono::steady_clock::now();
  if (cls.hypersolvable && !cls.supersolvable) {
    doc["homotopy"] = homotopy_json(torsion_and_rank_report(os, cls));
    doc["homotopy_skipped"] = nullptr;
  } else {
    doc["homotopy"] = nullptr;
    doc["homotopy_skipped"] = cls.supersolvable ? "supersolvable: the complement is aspherical"
                                                : "not hypersolvable";
    out.exit_code = 2;
  }
  const auto homotopy_ms = elapsed_ms(t0);

  if (options.timing) {
    doc["timing"] = {{"classify_ms", classify_ms},
                     {"algebra_ms", algebra_ms},
                     {"homotopy_ms", homotopy_ms},
                     {"total_ms", elapsed_ms(start)}};
  }
  return out;
}

AnalyzeResult cmd_analyze(const InputSpec& input) {
  return analyze_arrangement(parse_input(input.path, input.format), input);
}

json cmd_circuits(const InputSpec& input, bool chordless, std::optional<std::size_t> size) {
  const ParsedInput parsed = parse_input(input.path, input.format);
  const auto& a = parsed.arrangement;
  if (size && (*size < 1 || *size > a.size()))
    throw InputError("circuit size must lie in 1.." + std::to_string(a.size()));
  if (chordless && size && *size < 3) throw InputError("chordless circuits have at least 3 elements");

  std::vector<Circuit> list;
  if (chordless) {
    for (std::size_t s = size.value_or(3); s <= size.value_or(a.size()); ++s)
      for (auto& c : chordless_circuits(a, s)) list.push_back(std::move(c));
    std::sort(list.begin(), list.end());
  } else {
    for (auto& c : circuits(a, size.value_or(a.size())))
      if (!size || c.size() == *size) list.push_back(std::move(c));
  }

  json items = json::array();
  for (const auto& c : list) {
    json labels = json::array();
    for (auto i : c.indices) labels.push_back(a.labels()[i]);
    items.push_back({{"hyperplanes", c.indices}, {"labels", std::move(labels)}, {"size", c.size()}});
  }
  json doc{{"tool", {{"name", "osarr"}, {"version", kVersion}}},
           {"input", input_echo(parsed)},
           {"chordless", chordless},
           {"count", list.size()},
           {"circuits", std::move(items)}};
  doc["size"] = size ? json(*size) : json(nullptr);
  return doc;
}

std::string canonical_json(const json& doc) { return doc.dump(2) + "\n"; }

namespace {

std::string inv_text(const json& inv) {
  std::string s = "Z^" + inv.at("free_rank").dump();
  for (const auto& d : inv.at("torsion")) s += " + Z/" + (d.is_string() ? d.get<std::string>() : d.dump());
  return s;
}

std::string list_text(const json& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + (x.is_string() ? x.get<std::string>() : x.dump());
  return s;
}

}  // namespace

std::string render_text(const json& r) {
  std::ostringstream os;
  const auto& in = r.at("input");
  os << "osarr " << r.at("tool").at("version").get<std::string>() << "\n";
  os << "input: " << in.at("format").get<std::string>() << ", " << in.at("hyperplanes").dump()
     << " hyperplanes in dimension " << in.at("ambient_dim").dump() << "\n";
  const auto& c = r.at("classification");
  auto show = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  os << "rank " << c.at("r").dump() << ", c = " << show(c.at("c")) << ", 2-generic: " << show(c.at("two_generic"))
     << "\n";
  os << "hypersolvable: " << c.at("hypersolvable").dump() << ", supersolvable: " << c.at("supersolvable").dump()
     << ", p = " << show(c.at("p")) << "\n";
  if (!c.at("composition_series").is_null())
    os << "exponents: " << list_text(c.at("composition_series").at("exponents")) << "\n";
  for (const auto& w : c.at("warnings")) os << "warning: " << w.get<std::string>() << "\n";
  os << "betti: " << list_text(r.at("betti")) << "\n";
  for (const auto& [k, v] : r.at("hilbert").items()) os << "hilbert " << k << ": " << list_text(v) << "\n";
  const auto& t = r.at("r_table");
  os << "r-table (" << list_text(t.at("fields")) << "):\n";
  for (const auto& row : t.at("rows"))
    os << "  r_" << row.at("m").dump() << " = " << list_text(row.at("values"))
       << (row.at("field_independent").get<bool>() ? "" : "  (field dependent)") << "\n";
  os << "circuits:";
  for (const auto& e : r.at("circuits"))
    os << " " << e.at("size").dump() << ":" << e.at("count").dump() << "(" << e.at("chordless").dump() << ")";
  os << "\n";
  const auto& h = r.at("homotopy");
  if (h.is_null()) {
    os << "homotopy: skipped (" << r.at("homotopy_skipped").get<std::string>() << ")\n";
  } else {
    os << "homotopy: gr0 rank " << h.at("gr0_rank").dump() << ", gr1 = " << inv_text(h.at("gr1")) << "\n";
    const auto& tt = h.at("torsion_tests");
    os << "  torsion-free: gr1 " << tt.at("gr1_torsion_free").dump() << ", A+ " << tt.at("a_plus_torsion_free").dump()
       << ", IND " << tt.at("ind_torsion_free").dump() << "\n";
    const auto& rc = h.at("rank_check");
    os << "  rank formula " << rc.at("formula").dump() << " vs " << rc.at("gr1_free_rank").dump()
       << (rc.at("holds").get<bool>() ? " (ok)" : " (MISMATCH)") << "\n";
    os << "  mu: " << h.at("mu").at("rows").dump() << " x " << h.at("mu").at("cols").dump() << "\n";
  }
  if (r.contains("timing")) os << "timing: " << r.at("timing").at("total_ms").dump() << " ms\n";
  return os.str();
}

std::string emit_report(const json& doc, const std::string& path) {
  std::string bytes = canonical_json(doc);
  if (path == "-") {
    std::cout << bytes << std::flush;
    return bytes;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << bytes;
  if (!out.flush()) throw std::runtime_error("write to '" + path + "' failed");
  return bytes;
}

SearchFamily parse_family(const std::string& name) {
  if (name == "graphic") return SearchFamily::Graphic;
  if (name == "random2g" || name == "random-2-generic") return SearchFamily::Random2Generic;
  throw InputError("unknown search family '" + name + "' (expected graphic or random2g)");
}

namespace {

constexpr std::size_t kMaxGraphicVertices = 8;
constexpr std::size_t kMaxRandomHyperplanes = 12;
constexpr std::size_t kMaxRandomDim = 6;
constexpr std::size_t kRandomAttempts = 10000;

struct InstanceResult {
  std::string line;
  bool emitted = false;
  bool torsion = false;
  bool violation = false;
};

InstanceResult examine(const std::string& key, const Arrangement& a, json source) {
  InstanceResult res;
  json doc{{"key", key}, {"hyperplanes", a.size()}, {"source", std::move(source)}};
  try {
    const OsAlgebra os(a);
    const Classification cls = classify(os);
    if (!cls.hypersolvable || cls.supersolvable) return res;
    res.emitted = true;
    json cj{{"hypersolvable", true}, {"supersolvable", false}, {"r", cls.r}};
    cj["p"] = cls.p ? json(*cls.p) : json("infinite");
    cj["c"] = cls.genericity.c ? json(*cls.genericity.c) : json("independent");
    cj["exponents"] = counts_json(cls.series->exponents);
    doc["classification"] = std::move(cj);

    const HomotopyReport h = torsion_and_rank_report(os, cls);
    doc["gr0_rank"] = h.quotient.gr0_rank;
    doc["gr1"] = to_json(h.quotient.gr1);
    doc["torsion_tests"] = {{"gr1_torsion_free", h.torsion.gr1_torsion_free},
                      {"a_plus_torsion_free", h.torsion.a_plus_free_p2},
                      {"ind_torsion_free", h.torsion.ind_free_p2}};
    res.torsion = !h.torsion.gr1_torsion_free || !h.torsion.a_plus_free_p2 || !h.torsion.ind_free_p2;
    doc["status"] = res.torsion ? "TORSION-FOUND" : "ok";
    if (res.torsion) {
      doc["mu"] = to_json(h.quotient.mu.matrix);
      doc["a_plus"] = to_json(h.torsion.a_plus);
      doc["ind"] = to_json(h.torsion.ind);
    }
  } catch (const InternalInvariantViolation& e) {
    res.emitted = true;
    res.violation = true;
    doc["status"] = "INVARIANT-VIOLATION";
    doc["message"] = e.what();
  }
  res.line = doc.dump() + "\n";
  return res;
}

json normals_json(const Arrangement& a) {
  json out = json::array();
  for (const auto& v : a.normals()) {
    json row = json::array();
    for (const auto& x : v) row.push_back(to_json(x));
    out.push_back(std::move(row));
  }
  return out;
}

std::optional<Arrangement> random_two_generic(std::uint64_t seed, std::size_t index, std::size_t max_dim,
                                              std::size_t max_size) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  auto pick = [&](std::size_t lo, std::size_t hi) { return lo + rng() % (hi - lo + 1); };
  const std::size_t dim_hi = std::min(max_dim, max_size - 1);
  for (std::size_t attempt = 0; attempt < kRandomAttempts; ++attempt) {
    const std::size_t dim = pick(3, dim_hi);
    const std::size_t n = pick(dim + 1, max_size);
    std::vector<std::vector<Integer>> normals(n, std::vector<Integer>(dim));
    for (auto& v : normals)
      for (auto& x : v) x = static_cast<long long>(pick(0, 6)) - 3;
    Arrangement a;
    try {
      a = Arrangement::build(dim, std::move(normals));
    } catch (const InputError&) {
      continue;
    }
    const auto g = c_and_genericity(a);
    if (g.two_generic.value_or(false)) return a;
  }
  return std::nullopt;
}

}  // namespace

std::string run_search(const SearchJob& job, SearchSummary* summary) {
  const std::size_t workers = job.workers ? job.workers : default_workers();
  std::vector<InstanceResult> results;
  SearchSummary s;

  if (job.family == SearchFamily::Graphic) {
    if (job.max_size < 2 || job.max_size > kMaxGraphicVertices)
      throw InputError("graphic search supports 2.." + std::to_string(kMaxGraphicVertices) + " vertices");
    const auto graphs = connected_graphs(2, job.max_size);
    s.candidates = graphs.size();
    results.resize(graphs.size());
    parallel_for(
        graphs.size(),
        [&](std::size_t i) {
          const Graph g = graphs[i].graph();
          // chordal graphs are exactly the supersolvable graphic arrangements
          if (is_chordal(g)) return;
          json src{{"vertices", g.vertex_count()}, {"edges", json::array()}};
          for (auto [u, v] : g.edges()) src["edges"].push_back({u + 1, v + 1});
          results[i] = examine(graphs[i].key(), Arrangement::from_graph(g), std::move(src));
        },
        workers);
  } else {
    if (job.max_size < 4 || job.max_size > kMaxRandomHyperplanes)
      throw InputError("random search supports 4.." + std::to_string(kMaxRandomHyperplanes) + " hyperplanes");
    if (job.max_dim < 3 || job.max_dim > kMaxRandomDim)
      throw InputError("random search supports dimensions 3.." + std::to_string(kMaxRandomDim));
    s.candidates = job.count;
    results.resize(job.count);
    parallel_for(
        job.count,
        [&](std::size_t i) {
          const std::string key = "random2g:" + std::to_string(job.seed) + ":" + std::to_string(i);
          auto a = random_two_generic(job.seed, i, job.max_dim, job.max_size);
          if (!a) {
            results[i].emitted = true;
            results[i].line = json{{"key", key}, {"status", "NO-INSTANCE"}}.dump() + "\n";
            return;
          }
          json src{{"ambient_dim", a->ambient_dim()}, {"normals", normals_json(*a)}};
          results[i] = examine(key, *a, std::move(src));
        },
        workers);
  }

  std::string text;
  for (const auto& r : results) {
    if (!r.emitted) continue;
    text += r.line;
    ++s.instances;
    s.torsion_found += r.torsion;
    s.violations += r.violation;
  }
  if (summary) *summary = s;
  return text;
}

SearchSummary cmd_search(const SearchJob& job) {
  if (job.output.empty()) throw InputError("search needs an output path");
  SearchSummary s;
  const std::string text = run_search(job, &s);
  if (job.output == "-") {
    std::cout << text << std::flush;
    return s;
  }
  std::ofstream out(job.output, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + job.output + "'");
  out << text;
  if (!out.flush()) throw std::runtime_error("write to '" + job.output + "' failed");
  return s;
}

}  // namespace osarr
