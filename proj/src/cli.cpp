#include "absence/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "absence/bipartite.hpp"
#include "absence/bipartition.hpp"
#include "absence/bounds.hpp"
#include "absence/engine.hpp"
#include "absence/errors.hpp"
#include "absence/exact.hpp"
#include "absence/io.hpp"
#include "absence/kn.hpp"
#include "absence/online.hpp"
#include "absence/service.hpp"

namespace absence {

namespace {

using json = nlohmann::json;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kNegative = 2;
constexpr int kBudget = 3;

struct GraphSource {
  std::string path;
  int complete = 0;
};

struct Options {
  std::string format = "text";
  std::uint64_t budget = 200'000'000;
  std::uint64_t seed = 1;

  GraphSource graph;
  std::string absences;
  std::string schedule;
  std::optional<int> t;
  std::optional<int> limit;
  int n = 0;
  int max_n = 5;
  std::string labels;
  std::string label_list;
  std::string diag;
  bool partial = false;
  bool no_restriction = false;
  std::string emit_strategy;
  bool skip_chromatic_index = false;
  std::string engine = "auto";
  std::string adversary = "lower-bound";
  double density = 0.3;
  std::string transcript;
  std::string summary;
  std::optional<int> rounds;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string data_dir;
};

class Runner {
 public:
  Runner(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

  int chi_prime_cmd() {
    auto doc = graph();
    return emit_solve(chi_prime(doc.graph, limits()), doc.graph, nullptr);
  }

  int chi_c_cmd() {
    auto doc = graph();
    auto c = absences(doc.graph);
    return emit_solve(chi_prime_c(doc.graph, c, limits()), doc.graph, &c);
  }

  int chi_t_cmd() {
    auto doc = graph();
    auto t = budgets(doc);
    auto r = chi_t_exact(doc.graph, t, limits());
    if (o_.format == "json") {
      auto j = solve_json(r.result, doc.graph, &r.worst);
      j["worst_absences"] = io::absences_to_json(doc.graph, r.worst);
      j["labelings"] = r.labelings;
      out_ << j.dump(2) << "\n";
    } else if (o_.format == "csv") {
      out_ << timetable(doc.graph, r.result);
    } else {
      out_ << r.result.value << "\n";
    }
    return kOk;
  }

  int chi_total_cmd() {
    auto doc = graph();
    return emit_solve(chi_total(doc.graph, limits()), doc.graph, nullptr);
  }

  int chi_ol_cmd() {
    auto doc = graph();
    auto t = budgets(doc);
    OnlineOptions options{!o_.no_restriction, limits()};
    auto r = chi_ol_exact(doc.graph, t, options);
    if (!o_.emit_strategy.empty()) write_file(o_.emit_strategy, strategy_to_json(r.oracle).dump(2) + "\n");
    if (o_.format == "json") {
      out_ << json{{"value", r.value},
                   {"restricted_moves", options.restrict_moves},
                   {"nodes", r.stats.nodes},
                   {"states", r.states}}
                  .dump(2)
           << "\n";
    } else {
      out_ << r.value << "\n";
    }
    return kOk;
  }

  int bounds_cmd() {
    auto doc = graph();
    auto t = budgets(doc);
    std::optional<int> chi;
    if (!o_.skip_chromatic_index) chi = chi_prime(doc.graph, limits()).value;
    auto r = bound_report(doc.graph, t, chi);
    json j{{"vertices", r.vertices},
           {"edges", r.edges},
           {"max_degree", r.max_degree},
           {"bipartite", r.bipartite},
           {"constant_budget", r.constant_budget},
           {"lower", r.lower},
           {"upper", r.upper},
           {"conjectured", r.conjectured},
           {"total_coloring_relation", r.total_coloring_relation}};
    if (chi) j["chromatic_index"] = *chi;
    if (o_.format == "json") {
      out_ << j.dump(2) << "\n";
      return kOk;
    }
    auto row = [&](const std::string& key, const std::string& value) {
      out_ << std::left << std::setw(32) << key << value << "\n";
    };
    row("vertices", std::to_string(r.vertices));
    row("edges", std::to_string(r.edges));
    row("max_degree", std::to_string(r.max_degree));
    if (chi) row("chromatic_index", std::to_string(*chi));
    row("bipartite", r.bipartite ? "yes" : "no");
    for (const auto& [k, v] : r.lower) row("lower." + k, std::to_string(v));
    for (const auto& [k, v] : r.upper) row("upper." + k, std::to_string(v));
    for (const auto& [k, v] : r.conjectured) row("conjectured." + k, std::to_string(v));
    if (r.total_coloring_relation) row("lower.total_chromatic", "applies (every budget >= 1)");
    return kOk;
  }

  int construct_kn_cmd() {
    const int n = o_.n;
    if (n < 1) throw InputError("--n must be positive");
    auto g = complete_graph(n);
    AbsenceAssignment c(static_cast<std::size_t>(n));
    if (!o_.labels.empty()) {
      c = io::parse_absences(io::load_json_file(o_.labels), g);
    } else if (!o_.label_list.empty()) {
      auto values = parse_int_list(o_.label_list, "--label-list");
      if (values.size() != static_cast<std::size_t>(n))
        throw InputError("--label-list needs exactly " + std::to_string(n) + " entries");
      c = AbsenceAssignment::single(values);
    }
    auto k = construct_kn_t1(n, c);
    auto cls = classify_chi_c_kn(n, c);
    if (o_.format == "json") {
      out_ << json{{"n", n},
                   {"rounds_used", k.rounds_used},
                   {"bichromatic_classes", k.bichromatic_classes},
                   {"chi_c", cls.value},
                   {"literal_chi_c", cls.literal_value},
                   {"readings_differ", cls.readings_differ()},
                   {"schedule", io::schedule_to_json(g, k.schedule)}}
                  .dump(2)
           << "\n";
    } else if (o_.format == "csv") {
      out_ << io::timetable_csv(g, k.schedule);
      note_kn_readings(cls);
    } else {
      out_ << "rounds used: " << k.rounds_used << "\n";
      out_ << "fewest rounds for these absences: " << cls.value << "\n";
      note_kn_readings(cls);
      out_ << io::timetable_csv(g, k.schedule);
    }
    return kOk;
  }

  int latin_decide_cmd() {
    auto d = parse_int_list(o_.diag, "--diag");
    const bool exists = symmetric_latin_decision(d);
    const bool literal = symmetric_latin_decision_literal(d);
    if (o_.format == "json") {
      out_ << json{{"exists", exists}, {"literal_exists", literal}, {"readings_differ", exists != literal}}
                  .dump(2)
           << "\n";
    } else {
      out_ << (exists ? "yes" : "no") << "\n";
      if (exists != literal)
        err_ << "note: checking only the symbols that occur would answer " << (literal ? "yes" : "no")
             << "\n";
    }
    return exists ? kOk : kNegative;
  }

  int latin_build_cmd() {
    auto d = parse_int_list(o_.diag, "--diag");
    std::optional<SymmetricSquare> sq;
    if (o_.partial)
      sq = symmetric_partial_latin(d);
    else
      sq = symmetric_latin_construct(d, limits());
    if (!sq) {
      if (o_.format == "json")
        out_ << json{{"exists", false}}.dump(2) << "\n";
      else
        out_ << "no symmetric Latin square has this diagonal\n";
      return kNegative;
    }
    if (o_.format == "json") {
      out_ << json{{"exists", true}, {"n", sq->n}, {"partial", sq->partial}, {"cells", sq->cells}}.dump(2)
           << "\n";
    } else {
      const char* sep = o_.format == "csv" ? "," : " ";
      for (const auto& row : sq->cells) {
        for (std::size_t j = 0; j < row.size(); ++j) out_ << (j ? sep : "") << row[j];
        out_ << "\n";
      }
    }
    return kOk;
  }

  int round_robin_cmd() {
    if (o_.n < 1) throw InputError("--n must be positive");
    auto g = complete_graph(o_.n);
    auto s = round_robin(o_.n);
    if (o_.format == "json")
      out_ << io::schedule_to_json(g, s).dump(2) << "\n";
    else
      out_ << io::timetable_csv(g, s);
    return kOk;
  }

  int bipartite_color_cmd() {
    auto doc = graph();
    auto blocks = bipartition_of(doc.graph);
    auto colors = bipartite_edge_coloring(doc.graph, blocks);
    auto s = schedule_from_coloring(doc.graph, colors);
    if (o_.format == "json")
      out_ << json{{"rounds", s.round_count()}, {"coloring", colors},
                   {"schedule", io::schedule_to_json(doc.graph, s)}}
                  .dump(2)
           << "\n";
    else
      out_ << io::timetable_csv(doc.graph, s);
    return kOk;
  }

  int bipartite_schedule_cmd() {
    auto doc = graph();
    auto blocks = bipartition_of(doc.graph);
    auto c = absences(doc.graph);
    const int m = o_.rounds ? *o_.rounds : ub_bipartite(doc.graph, blocks, c.counts());
    auto lists = ListSystem::avoiding(doc.graph, c, m);
    auto r = galvin_list_color(doc.graph, blocks, lists);
    auto s = schedule_from_coloring(doc.graph, r.coloring, &c);
    if (!verify_schedule(doc.graph, c, s).empty()) throw InternalFault("list coloring failed verification");
    if (o_.format == "json")
      out_ << json{{"rounds", m},
                   {"rounds_used", s.round_count()},
                   {"via_kernels", r.via_kernels},
                   {"coloring", r.coloring},
                   {"schedule", io::schedule_to_json(doc.graph, s)}}
                  .dump(2)
           << "\n";
    else
      out_ << io::timetable_csv(doc.graph, s);
    return kOk;
  }

  int bipartite_simulate_cmd() {
    auto doc = graph();
    auto blocks = bipartition_of(doc.graph);
    auto t = budgets(doc);
    const int limit = o_.limit ? *o_.limit : ub_bipartite(doc.graph, blocks, t);
    auto engine = engine_painting(doc.graph, t, limit, blocks);
    return run_simulation(doc, t, *engine, limit);
  }

  int simulate_cmd() {
    auto doc = graph();
    auto t = budgets(doc);
    std::unique_ptr<OrganizerEngine> engine;
    int limit = 0;
    if (o_.engine == "prefixed") {
      auto c = absences(doc.graph);
      t = o_.t ? t : c.counts();
      limit = o_.limit ? *o_.limit : ub_shannon(doc.graph, t);
      engine = engine_prefixed(doc.graph, c, limits());
    } else if (o_.engine == "auto") {
      auto plan = plan_engine(doc.graph, t, limits());
      limit = o_.limit ? *o_.limit : plan.limit;
      engine = make_engine(plan.engine, doc.graph, t, limit, limits());
    } else {
      limit = o_.limit ? *o_.limit : ub_shannon(doc.graph, t);
      engine = make_engine(o_.engine, doc.graph, t, limit, limits());
    }
    return run_simulation(doc, t, *engine, limit);
  }

  int verify_cmd() {
    auto doc = graph();
    if (o_.schedule.empty()) throw InputError("--schedule is required");
    auto s = io::parse_schedule(io::load_json_file(o_.schedule), doc.graph);
    AbsenceAssignment c(doc.graph.vertex_count());
    if (!o_.absences.empty()) c = absences(doc.graph);
    auto violations = verify_schedule(doc.graph, c, s);
    if (o_.format == "json") {
      json list = json::array();
      for (const auto& v : violations)
        list.push_back({{"kind", std::string(to_string(v.kind))}, {"round", v.round}, {"message", v.message}});
      out_ << json{{"ok", violations.empty()}, {"violations", list}}.dump(2) << "\n";
    } else if (violations.empty()) {
      out_ << "ok\n";
    } else {
      for (const auto& v : violations) {
        if (v.round > 0) out_ << "round " << v.round << ": ";
        out_ << to_string(v.kind) << ": " << v.message << "\n";
      }
    }
    return violations.empty() ? kOk : kNegative;
  }

  int figure2_cmd() {
    if (o_.max_n < 2) throw InputError("--max-n must be at least 2");
    struct Row {
      int n, online, prefixed, total, index_plus_one;
    };
    std::vector<Row> rows;
    bool consistent = true;
    for (int n = 2; n <= o_.max_n; ++n) {
      auto g = complete_graph(n);
      auto t = BudgetMap::constant(g.vertex_count(), 1);
      Row r{n, chi_ol_exact(g, t, OnlineOptions{true, limits()}).value,
            chi_t_exact(g, t, limits()).result.value, chi_total(g, limits()).value,
            chi_prime(g, limits()).value + 1};
      if (!(r.online >= r.prefixed && r.prefixed >= r.total && r.prefixed == n + 1)) {
        consistent = false;
        err_ << "inconsistent values at n=" << n << "\n";
      }
      rows.push_back(r);
    }
    if (o_.format == "json") {
      json list = json::array();
      for (const auto& r : rows)
        list.push_back({{"n", r.n},
                        {"chi_ol_1", r.online},
                        {"chi_1", r.prefixed},
                        {"chi_total", r.total},
                        {"chi_prime_plus_1", r.index_plus_one}});
      out_ << list.dump(2) << "\n";
    } else if (o_.format == "csv") {
      out_ << "n,chi_ol_1,chi_1,chi_total,chi_prime_plus_1\n";
      for (const auto& r : rows)
        out_ << r.n << "," << r.online << "," << r.prefixed << "," << r.total << "," << r.index_plus_one
             << "\n";
    } else {
      out_ << " n  chi_ol^1  chi^1  chi_T  chi'+1\n";
      for (const auto& r : rows)
        out_ << std::setw(2) << r.n << std::setw(10) << r.online << std::setw(7) << r.prefixed
             << std::setw(7) << r.total << std::setw(8) << r.index_plus_one << "\n";
    }
    return consistent ? kOk : kNegative;
  }

  int serve_cmd() {
    ServiceOptions options;
    if (!o_.data_dir.empty()) options.data_dir = o_.data_dir;
    ServiceCore core(options);
    HttpService http(core);
    const int port = http.bind(o_.host, o_.port);
    out_ << "listening on http://" << o_.host << ":" << port << std::endl;
    return http.listen() ? kOk : kError;
  }

 private:
  SearchLimits limits() const { return SearchLimits{o_.budget}; }

  io::GraphDocument graph() const {
    if (o_.graph.complete > 0) {
      auto g = complete_graph(o_.graph.complete);
      return {g, BudgetMap::constant(g.vertex_count(), 0), false};
    }
    if (o_.graph.path.empty()) throw InputError("--graph or --complete is required");
    return io::parse_graph(io::load_json_file(o_.graph.path));
  }

  // --t wins, then the graph file's budgets, then one absence each.
  BudgetMap budgets(const io::GraphDocument& doc) const {
    if (o_.t) {
      if (*o_.t < 0) throw InputError("--t must be non-negative");
      return BudgetMap::constant(doc.graph.vertex_count(), *o_.t);
    }
    if (doc.has_budgets) return doc.budgets;
    return BudgetMap::constant(doc.graph.vertex_count(), 1);
  }

  AbsenceAssignment absences(const Multigraph& g) const {
    if (o_.absences.empty()) throw InputError("--absences is required");
    return io::parse_absences(io::load_json_file(o_.absences), g);
  }

  static Bipartition bipartition_of(const Multigraph& g) {
    auto blocks = detect_bipartition(g);
    if (!blocks) throw InputError("the graph is not bipartite");
    return *blocks;
  }

  static std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
    std::vector<int> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        values.push_back(std::stoi(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::logic_error&) {
        throw InputError(flag + ": not an integer: '" + item + "'");
      }
    }
    if (values.empty()) throw InputError(flag + " is empty");
    return values;
  }

  static void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write " + path);
    f << text;
  }

  json solve_json(const SolveResult& r, const Multigraph& g, const AbsenceAssignment* c) const {
    json j{{"value", r.value},
           {"coloring", r.coloring},
           {"certificate", r.certificate == Certificate::exhausted_search ? "exhausted_search" : "none"},
           {"nodes", r.stats.nodes}};
    if (r.witness) j["schedule"] = io::schedule_to_json(g, *r.witness);
    else if (!r.coloring.empty()) j["schedule"] = io::schedule_to_json(g, schedule_from_coloring(g, r.coloring, c));
    return j;
  }

  std::string timetable(const Multigraph& g, const SolveResult& r) const {
    if (r.witness) return io::timetable_csv(g, *r.witness);
    return io::timetable_csv(g, schedule_from_coloring(g, r.coloring));
  }

  int emit_solve(const SolveResult& r, const Multigraph& g, const AbsenceAssignment* c) {
    if (o_.format == "json")
      out_ << solve_json(r, g, c).dump(2) << "\n";
    else if (o_.format == "csv")
      out_ << (r.witness ? io::timetable_csv(g, *r.witness)
                         : io::timetable_csv(g, schedule_from_coloring(g, r.coloring, c)));
    else
      out_ << r.value << "\n";
    return kOk;
  }

  void note_kn_readings(const KnClassification& cls) {
    if (cls.readings_differ())
      err_ << "note: counting only the labels that occur would give " << cls.literal_value
           << " rounds instead of " << cls.value << "\n";
  }

  std::unique_ptr<IndisposerStrategy> adversary(const io::GraphDocument& doc, const BudgetMap& t) const {
    if (o_.adversary == "lower-bound") return adversary_lower_bound(doc.graph, limits());
    if (o_.adversary == "random") return adversary_random(o_.seed, o_.density);
    if (o_.adversary == "scripted") return adversary_scripted(absences(doc.graph), t);
    throw InputError("unknown adversary '" + o_.adversary + "'");
  }

  int run_simulation(const io::GraphDocument& doc, const BudgetMap& t, OrganizerEngine& engine, int limit) {
    if (o_.adversary == "exhaustive") {
      auto w = worst_case(doc.graph, t, engine, limit);
      json witness = json::array();
      for (const auto& u : w.witness) witness.push_back(io::vertex_list_to_json(doc.graph, u));
      if (o_.format == "json")
        out_ << json{{"engine", engine.name()},
                     {"limit", limit},
                     {"worst_rounds", w.rounds},
                     {"completed_all", w.completed_all},
                     {"witness", witness},
                     {"states", w.states}}
                    .dump(2)
             << "\n";
      else
        out_ << "engine,adversary,rounds,completed\n"
             << engine.name() << ",exhaustive," << w.rounds << "," << (w.completed_all ? "true" : "false")
             << "\n";
      return w.completed_all ? kOk : kNegative;
    }
    auto adv = adversary(doc, t);
    auto result = simulate(doc.graph, t, engine, *adv, limit);
    const auto transcript = transcript_to_json(result).dump(2) + "\n";
    const auto summary = summary_csv({result});
    if (!o_.transcript.empty()) write_file(o_.transcript, transcript);
    if (!o_.summary.empty()) write_file(o_.summary, summary);
    out_ << (o_.format == "json" ? transcript : summary);
    return result.completed ? kOk : kNegative;
  }

  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
};

void add_graph_options(CLI::App* cmd, Options& o) {
  auto* g = cmd->add_option("--graph", o.graph.path, "graph JSON file");
  auto* k = cmd->add_option("--complete", o.graph.complete, "use the complete graph K_n instead")
                ->check(CLI::PositiveNumber);
  g->excludes(k);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Tournament scheduling with allowed absences", "absence"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--budget", o.budget, "search node budget")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "random seed");

  std::function<int(Runner&)> action;
  auto on = [&](CLI::App* cmd, int (Runner::*fn)()) {
    cmd->callback([&action, fn] { action = [fn](Runner& r) { return (r.*fn)(); }; });
  };

  auto* chi_prime_app = app.add_subcommand("chi-prime", "chromatic index");
  add_graph_options(chi_prime_app, o);
  on(chi_prime_app, &Runner::chi_prime_cmd);

  auto* chi_c_app = app.add_subcommand("chi-c", "fewest rounds for absences known in advance");
  add_graph_options(chi_c_app, o);
  chi_c_app->add_option("--absences", o.absences, "absences JSON file")->required();
  on(chi_c_app, &Runner::chi_c_cmd);

  auto* chi_t_app = app.add_subcommand("chi-t", "worst case over all absence budgets t");
  add_graph_options(chi_t_app, o);
  chi_t_app->add_option("--t", o.t, "absences per player");
  on(chi_t_app, &Runner::chi_t_cmd);

  auto* chi_total_app = app.add_subcommand("chi-total", "total chromatic number");
  add_graph_options(chi_total_app, o);
  on(chi_total_app, &Runner::chi_total_cmd);

  auto* chi_ol_app = app.add_subcommand("chi-ol", "rounds needed when absences arrive round by round");
  add_graph_options(chi_ol_app, o);
  chi_ol_app->add_option("--t", o.t, "absences per player");
  chi_ol_app->add_flag("--no-maximal-restriction", o.no_restriction, "search every legal move");
  chi_ol_app->add_option("--emit-strategy", o.emit_strategy, "write the winning strategy as JSON");
  on(chi_ol_app, &Runner::chi_ol_cmd);

  auto* bounds_app = app.add_subcommand("bounds", "closed-form bounds");
  add_graph_options(bounds_app, o);
  bounds_app->add_option("--t", o.t, "absences per player");
  bounds_app->add_flag("--skip-chromatic-index", o.skip_chromatic_index,
                       "omit the bounds that need the chromatic index");
  on(bounds_app, &Runner::bounds_cmd);

  auto* construct_app = app.add_subcommand("construct", "explicit constructions");
  construct_app->require_subcommand(1);
  auto* kn_app = construct_app->add_subcommand("kn", "K_n in n+1 rounds with one absence per player");
  kn_app->add_option("--n", o.n, "number of players")->required();
  auto* labels_opt = kn_app->add_option("--labels", o.labels, "absences JSON file");
  kn_app->add_option("--label-list", o.label_list, "absent round per player, 0 for none")
      ->excludes(labels_opt);
  on(kn_app, &Runner::construct_kn_cmd);

  auto* latin_app = app.add_subcommand("latin", "symmetric Latin squares with a given diagonal");
  latin_app->require_subcommand(1);
  auto* decide_app = latin_app->add_subcommand("decide", "does such a square exist");
  decide_app->add_option("--diag", o.diag, "diagonal, comma separated")->required();
  on(decide_app, &Runner::latin_decide_cmd);
  auto* build_app = latin_app->add_subcommand("build", "construct such a square");
  build_app->add_option("--diag", o.diag, "diagonal, comma separated")->required();
  build_app->add_flag("--partial", o.partial, "allow the symbol n+1 off the diagonal");
  on(build_app, &Runner::latin_build_cmd);

  auto* rr_app = app.add_subcommand("round-robin", "circle-method round robin");
  rr_app->add_option("--n", o.n, "number of players")->required();
  on(rr_app, &Runner::round_robin_cmd);

  auto* bip_app = app.add_subcommand("bipartite", "bipartite tournaments");
  bip_app->require_subcommand(1);
  auto* bcolor = bip_app->add_subcommand("color", "Delta-round schedule without absences");
  add_graph_options(bcolor, o);
  on(bcolor, &Runner::bipartite_color_cmd);
  auto* bsched = bip_app->add_subcommand("schedule", "schedule around absences known in advance");
  add_graph_options(bsched, o);
  bsched->add_option("--absences", o.absences, "absences JSON file")->required();
  bsched->add_option("--rounds", o.rounds, "number of rounds (default: the bipartite bound)");
  on(bsched, &Runner::bipartite_schedule_cmd);
  auto* bsim = bip_app->add_subcommand("simulate", "play the painting engine against an adversary");
  add_graph_options(bsim, o);
  bsim->add_option("--t", o.t, "absences per player");
  bsim->add_option("--limit", o.limit, "round limit");
  bsim->add_option("--adversary", o.adversary, "lower-bound, random, scripted or exhaustive");
  bsim->add_option("--density", o.density, "absence probability for the random adversary");
  bsim->add_option("--absences", o.absences, "absences for the scripted adversary");
  bsim->add_option("--transcript", o.transcript, "write the transcript JSON here");
  bsim->add_option("--summary", o.summary, "write the summary CSV here");
  on(bsim, &Runner::bipartite_simulate_cmd);

  auto* sim_app = app.add_subcommand("simulate", "play an engine against an adversary");
  add_graph_options(sim_app, o);
  sim_app->add_option("--engine", o.engine, "auto, greedy, optimal-small, painting or prefixed");
  sim_app->add_option("--adversary", o.adversary, "lower-bound, random, scripted or exhaustive");
  sim_app->add_option("--t", o.t, "absences per player");
  sim_app->add_option("--limit", o.limit, "round limit");
  sim_app->add_option("--density", o.density, "absence probability for the random adversary")
      ->check(CLI::Range(0.0, 1.0));
  sim_app->add_option("--absences", o.absences, "absences for the scripted adversary or prefixed engine");
  sim_app->add_option("--transcript", o.transcript, "write the transcript JSON here");
  sim_app->add_option("--summary", o.summary, "write the summary CSV here");
  on(sim_app, &Runner::simulate_cmd);

  auto* verify_app = app.add_subcommand("verify", "check a schedule");
  add_graph_options(verify_app, o);
  verify_app->add_option("--schedule", o.schedule, "schedule JSON file")->required();
  verify_app->add_option("--absences", o.absences, "absences JSON file");
  on(verify_app, &Runner::verify_cmd);

  auto* report_app = app.add_subcommand("report", "reports");
  report_app->require_subcommand(1);
  auto* kn_table_app = report_app->add_subcommand("figure2", "single absences in K_n for small n");
  kn_table_app->add_option("--max-n", o.max_n, "largest n")->check(CLI::Range(2, 8));
  on(kn_table_app, &Runner::figure2_cmd);

  auto* serve_app = app.add_subcommand("serve", "run the HTTP service");
  serve_app->add_option("--host", o.host, "address to bind");
  serve_app->add_option("--port", o.port, "port, 0 for any free one")->check(CLI::Range(0, 65535));
  serve_app->add_option("--data-dir", o.data_dir, "directory for the event log");
  on(serve_app, &Runner::serve_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kError;
  }

  Runner runner(o, out, err);
  try {
    return action(runner);
  } catch (const SearchBudgetExceeded& e) {
    err << "search budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const LosingState& e) {
    err << "losing position: " << e.what() << "\n";
    return kNegative;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"absence"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace absence
