#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "psys/psys.hpp"

#ifndef PSYS_DATA_DIR
#define PSYS_DATA_DIR "data"
#endif

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_mismatch = 2;

const std::string data_dir = PSYS_DATA_DIR;

struct Inputs {
  std::string attrs = data_dir + "/bonds.csv";
  std::string classes = data_dir + "/classes.txt";
};

struct Loaded {
  psys::AttributeTable table;
  psys::PeriodicSystem system;
};

bool is_bond_table(const psys::AttributeTable& t) {
  const auto& a = t.attributes();
  return a.size() == 2 && a[0].name == psys::chem::electronegativity && a[1].name == psys::chem::radius;
}

// Bond tables get their fixed orientations; any other CSV uses header suffixes.
Loaded load(const std::string& attrs, const std::string& classes) {
  auto table = psys::io::load_attribute_csv(attrs);
  if (is_bond_table(table)) table = psys::chem::load_bond_dataset(attrs);
  auto h = psys::io::load_classes(classes, table.elements());
  auto system = psys::io::with_path(classes, [&] { return psys::build_periodic_system(table, h); });
  return {std::move(table), std::move(system)};
}

psys::Decimal parse_threshold(const std::string& text) {
  psys::Decimal t;
  try {
    t = psys::Decimal::parse(text);
  } catch (const psys::Error&) {
    throw psys::Error(psys::ErrorCode::bad_threshold, "'" + text + "' is not a decimal");
  }
  if (t <= psys::Decimal{0} || t > psys::Decimal{1}) {
    throw psys::Error(psys::ErrorCode::bad_threshold, "threshold " + text + " is outside (0, 1]");
  }
  return t;
}

// Writes to `path`, or standard output when empty.
template <typename F>
void emit(const std::string& path, F&& body) {
  if (path.empty()) {
    body(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw psys::Error(psys::ErrorCode::io_error, "cannot write '" + path + "'");
  body(out);
}

void add_inputs(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--attrs", in.attrs, "attribute CSV")->capture_default_str();
  cmd->add_option("--classes", in.classes, "similarity classes, one per line")->capture_default_str();
}

int run_build(const Inputs& in) {
  const auto [table, ps] = load(in.attrs, in.classes);
  const auto s = psys::comparability_stats(ps.order());
  std::cout << ps.size() << " representatives, " << ps.hypergraph().edge_count() << " hyperedges, " << s.comparable
            << "/" << s.incomparable << "\n";
  std::cout << "elements: " << table.size() << "\n";
  for (const auto& [from, to] : ps.aliases()) std::cout << "folded: " << from << " -> " << to << "\n";
  std::cout << "pairs: " << s.pairs << "\n";
  std::cout << "comparable: " << s.comparable << "\n";
  std::cout << "incomparable: " << s.incomparable << "\n";
  std::cout << "partition: " << (psys::is_partition(ps.hypergraph()) ? "yes" : "no") << "\n";
  std::cout << "total order: " << (psys::is_total_order(ps.order()) ? "yes" : "no") << "\n";
  return exit_ok;
}

struct DominanceArgs {
  std::vector<std::string> elements;
  bool within = false;
  bool inter = false;
  std::string threshold;
};

int run_dominance(const Inputs& in, const DominanceArgs& a) {
  const int modes = (a.elements.empty() ? 0 : 1) + (a.within ? 1 : 0) + (a.inter ? 1 : 0);
  if (modes != 1) {
    throw psys::Error(psys::ErrorCode::invalid_argument, "choose exactly one of --element, --within, --inter");
  }
  if (a.inter && a.threshold.empty()) throw psys::Error(psys::ErrorCode::invalid_argument, "--inter needs --threshold");
  const auto threshold = a.threshold.empty() ? psys::Decimal{1} : parse_threshold(a.threshold);
  const auto [table, ps] = load(in.attrs, in.classes);
  if (!a.elements.empty()) {
    for (const auto& label : a.elements) {
      if (!psys::ElementId::is_valid_label(label)) {
        throw psys::Error(psys::ErrorCode::invalid_element_id, "bad element label '" + label + "'");
      }
      const auto d = psys::dominance_degree(ps, psys::ElementId(label));
      if (a.elements.size() > 1) std::cout << label << " ";
      std::cout << d.to_display(4) << "\n";
    }
    return exit_ok;
  }
  const auto& h = ps.hypergraph();
  if (a.within) {
    for (const auto& e : h.edges()) {
      if (e.members.size() < 2) continue;
      const auto d = psys::within_hyperedge_dominance(ps, e.index);
      std::cout << psys::chem::join(h.member_labels(*h.position_of(e.index)), ", ") << " & " << d.to_display(4)
                << "\n";
    }
    return exit_ok;
  }
  std::cout << "edge_index,in_degree,out_degree\n";
  for (const auto& p : psys::dominance_profile(ps, threshold)) {
    std::cout << p.edge_index << "," << p.in_degree << "," << p.out_degree << "\n";
  }
  return exit_ok;
}

struct ExportArgs {
  std::string kind = "hasse";
  std::string format = "dot";
  std::string threshold;
  std::string out;
};

int run_export(const Inputs& in, const ExportArgs& a) {
  if (a.kind == "dominance" && a.threshold.empty()) {
    throw psys::Error(psys::ErrorCode::invalid_argument, "--kind dominance needs --threshold");
  }
  const auto threshold = a.threshold.empty() ? psys::Decimal{1} : parse_threshold(a.threshold);
  const auto [table, ps] = load(in.attrs, in.classes);
  emit(a.out, [&](std::ostream& os) {
    if (a.kind == "hasse") {
      if (a.format == "dot") {
        psys::dot::write_hasse(os, ps.order());
      } else {
        psys::dot::write_hasse_csv(os, ps.order());
      }
    } else {
      const auto diagram = psys::dominance_diagram(ps, threshold);
      if (a.format == "dot") {
        psys::dot::write_dominance(os, ps, diagram);
      } else {
        psys::dot::write_dominance_csv(os, diagram);
      }
    }
  });
  return exit_ok;
}

bool looks_like_order_lists(const std::string& path) {
  auto in = psys::io::open_input(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find("Dominated bonds") != std::string::npos) return true;
  }
  return false;
}

int run_report(const Inputs& in, std::vector<std::string> fixtures) {
  if (fixtures.empty()) fixtures = {data_dir + "/tableS1.txt", data_dir + "/table2.txt"};
  std::optional<std::string> lists;
  std::optional<std::string> degrees;
  for (const auto& f : fixtures) {
    auto& slot = psys::io::with_path(f, [&] { return looks_like_order_lists(f); }) ? lists : degrees;
    if (slot) throw psys::Error(psys::ErrorCode::invalid_argument, "two fixtures of the same kind: '" + f + "'");
    slot = f;
  }
  if (!lists) throw psys::Error(psys::ErrorCode::invalid_argument, "no order-list fixture given");
  const auto fixture = psys::chem::load_fixture(*lists, degrees);
  const auto [table, ps] = load(in.attrs, in.classes);
  const auto report = psys::chem::reproduce_report(table, ps, fixture);
  psys::chem::write_report(std::cout, report);
  return report.all_ok() ? exit_ok : exit_mismatch;
}

int run_relate(const std::vector<std::string>& attrs, const std::vector<std::string>& classes) {
  if (attrs.size() != 2 || classes.size() != 2) {
    throw psys::Error(psys::ErrorCode::invalid_argument, "relate needs two --attrs and two --classes");
  }
  const auto first = load(attrs[0], classes[0]);
  const auto second = load(attrs[1], classes[1]);
  const auto r = psys::relate_systems(first.system, second.system);
  std::cout << psys::to_string(r.kind);
  if (r.kind == psys::RelationKind::sub_system) std::cout << (r.second_in_first ? " (second in first)" : " (first in second)");
  std::cout << "\n";
  if (r.kind == psys::RelationKind::isomorphic) {
    for (const auto& [from, to] : r.witness) std::cout << from << " -> " << to << "\n";
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic systems as ordered hypergraphs"};
  app.require_subcommand(1);

  Inputs inputs;

  auto* build = app.add_subcommand("build", "summarize the periodic system built from the inputs");
  add_inputs(build, inputs);

  DominanceArgs dom;
  auto* dominance = app.add_subcommand("dominance", "dominance degrees");
  add_inputs(dominance, inputs);
  dominance->add_option("--element", dom.elements, "element label(s)");
  dominance->add_flag("--within", dom.within, "within-hyperedge degrees of every non-singleton class");
  dominance->add_flag("--inter", dom.inter, "dominance profile as CSV");
  dominance->add_option("--threshold", dom.threshold, "diagram threshold in (0, 1]");

  ExportArgs exp;
  auto* exporter = app.add_subcommand("export", "Hasse or dominance diagram");
  add_inputs(exporter, inputs);
  exporter->add_option("--kind", exp.kind)->check(CLI::IsMember({"hasse", "dominance"}))->capture_default_str();
  exporter->add_option("--format", exp.format)->check(CLI::IsMember({"dot", "csv"}))->capture_default_str();
  exporter->add_option("--threshold", exp.threshold, "diagram threshold in (0, 1]");
  exporter->add_option("--out", exp.out, "output file (default standard output)");

  std::vector<std::string> fixtures;
  auto* report = app.add_subcommand("report", "reconcile against published fixtures");
  add_inputs(report, inputs);
  report->add_option("--fixture", fixtures, "order-list and/or degree fixture (repeatable)");

  std::vector<std::string> relate_attrs;
  std::vector<std::string> relate_classes;
  auto* relate = app.add_subcommand("relate", "relation between two periodic systems");
  relate->add_option("--attrs", relate_attrs, "attribute CSV of each system")->expected(2)->required();
  relate->add_option("--classes", relate_classes, "classes of each system")->expected(2)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_input;
  }

  try {
    if (*build) return run_build(inputs);
    if (*dominance) return run_dominance(inputs, dom);
    if (*exporter) return run_export(inputs, exp);
    if (*report) return run_report(inputs, fixtures);
    if (*relate) return run_relate(relate_attrs, relate_classes);
  } catch (const std::exception& e) {
    std::cerr << "psys: " << e.what() << "\n";
    return exit_input;
  }
  return exit_input;
}
