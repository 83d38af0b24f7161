// defmatch: generate, match and certify definable bipartite instances, and
// run the witness-algebra pipeline (embed / cancel / tarski) from files.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error,
// 3 resource cap.

#include "defmatch/json_io.hpp"
#include "defmatch/presets.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace dm = defmatch;
using dm::Json;

namespace {

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw dm::parse_error("cannot read " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw dm::parse_error(path + ": " + e.what());
  }
  return j;
}

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw dm::parse_error("cannot write " + out_path);
  out << j.dump(2) << "\n";
}

void emit_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw dm::parse_error("cannot write " + out_path);
  out << text;
}

dm::NiceGraph load_graph(const std::string& graph_path, const std::string& preset) {
  if (!preset.empty()) return dm::preset_graph(preset);
  if (graph_path.empty()) throw dm::parse_error("need --graph or --preset");
  return dm::graph_from_json(read_json(graph_path));
}

dm::NmReading reading_of(const std::string& s) {
  if (s == "M") return dm::NmReading::matched;
  if (s == "E") return dm::NmReading::all_edges;
  throw dm::parse_error("--nm-reading must be M or E");
}

Json report_json(const dm::ValidationReport& r) {
  return Json{{"ok", r.ok}, {"problems", r.problems}};
}

Json witness_report_json(const dm::WitnessReport& r) {
  return Json{{"valid", r.valid}, {"onto", r.onto}, {"problems", r.problems}};
}

Json leq0_entry_json(const dm::Leq0Entry& e) {
  Json x0 = Json::array();
  for (const dm::DefSet& s : e.x0) x0.push_back(dm::set_to_json(s));
  Json out{{"m", e.m}, {"x0", std::move(x0)}, {"x0_full", e.x0_full}};
  if (e.self) {
    out["self"] = dm::tagged_witness_to_json(e.self->w);
    out["p"] = e.self->p;
    out["q"] = e.self->q;
  }
  if (e.rest) out["rest"] = dm::tagged_witness_to_json(*e.rest);
  return out;
}

Json cancel_json(const dm::CancellationOutput& c) {
  Json entries = Json::array();
  for (const dm::CancelEntry& e : c.entries)
    entries.push_back(Json{{"i", e.i},
                           {"j", e.j},
                           {"C", dm::set_to_json(e.C)},
                           {"D", dm::set_to_json(e.D)},
                           {"word", dm::word_to_json(e.word)}});
  return Json{{"Y0", dm::set_to_json(c.Y0)},
              {"entries", std::move(entries)},
              {"witness", dm::witness_to_json(c.witness)},
              {"counting_ok", c.counting_ok},
              {"counting_exact", c.counting_exact},
              {"K", c.K}};
}

struct OracleInstance {
  dm::oracle::ExplicitGraph g;
  std::vector<std::pair<int, int>> matching;  // from --matching, if any
};

OracleInstance read_oracle(const std::string& graph_path, const std::string& matching_path) {
  OracleInstance inst;
  std::ifstream in(graph_path);
  if (!in) throw dm::parse_error("cannot read " + graph_path);
  if (!(in >> inst.g.na >> inst.g.nb) || inst.g.na < 0 || inst.g.nb < 0)
    throw dm::parse_error(graph_path + ": expected header \"na nb\"");
  inst.g.adj.resize(inst.g.na);
  int a, b;
  while (in >> a >> b) {
    if (a < 0 || a >= inst.g.na || b < 0 || b >= inst.g.nb)
      throw dm::parse_error(graph_path + ": edge out of range");
    inst.g.adj[a].push_back({b, 0});
  }
  if (!matching_path.empty()) {
    std::ifstream min(matching_path);
    if (!min) throw dm::parse_error("cannot read " + matching_path);
    while (min >> a >> b) inst.matching.emplace_back(a, b);
  }
  return inst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"definable bipartite matchings and the witness algebra"};
  app.require_subcommand(1);

  std::string graph_path, preset, matching_path, input_path, out_path;
  std::string m_str = "2", nm_reading = "M";
  dm::u64 seed = 1, size = 12, k = 2, m_max = 3, window = 1000;
  dm::u64 cap_period = 1000000, cap_sequences = 0, count = 10;
  dm::u32 K = 1, max_word_len = 3;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--out", out_path, "write the artifact here instead of stdout");
    c->add_option("--cap-period", cap_period, "period cap for symbolic set normalization");
  };

  CLI::App* gen = app.add_subcommand("gen", "emit a graph as JSON");
  gen->add_option("--preset", preset, "named instance instead of a random one");
  gen->add_option("--seed", seed, "random seed");
  gen->add_option("--size", size, "left side size of a random instance");
  gen->add_option("--k", k, "left degree of a random instance");
  add_common(gen);

  CLI::App* validate = app.add_subcommand("validate", "check a graph file");
  validate->add_option("--graph", graph_path, "graph JSON");
  validate->add_option("--preset", preset, "named instance");
  add_common(validate);

  CLI::App* match = app.add_subcommand("match", "remove short augmenting paths");
  match->add_option("--graph", graph_path, "graph JSON");
  match->add_option("--preset", preset, "named instance");
  match->add_option("--K", K, "remove augmenting paths of length <= 2K+1");
  match->add_option("--input-matching", matching_path, "starting matching JSON");
  match->add_option("--cap-sequences", cap_sequences, "search node cap (0 = none)");
  add_common(match);

  CLI::App* verify = app.add_subcommand("verify", "revalidate a matching against its graph");
  verify->add_option("--graph", graph_path, "graph JSON");
  verify->add_option("--preset", preset, "named instance");
  verify->add_option("--matching", matching_path, "matching JSON")->required();
  verify->add_option("--K", K, "also demand no augmenting path of length <= 2K+1");
  verify->add_option("--window", window, "explicit cross-check window");
  add_common(verify);

  CLI::App* bound = app.add_subcommand("bound", "coverage sweep as CSV");
  bound->add_option("--seed", seed, "random seed");
  bound->add_option("--count", count, "number of instances");
  bound->add_option("--size", size, "left side size");
  bound->add_option("--k", k, "left degree");
  bound->add_option("--nm-reading", nm_reading, "even chain step: M (matching) or E (edges)");
  bound->add_option("--window", window, "sample window on infinite universes");
  bound->add_option("--cap-sequences", cap_sequences, "search node cap (0 = none)");
  add_common(bound);

  CLI::App* embed = app.add_subcommand("embed", "search an embedding witness");
  embed->add_option("--input", input_path, "JSON with universe, X, Y")->required();
  embed->add_option("--max-word-len", max_word_len, "pseudogroup word length bound");
  embed->add_option("--m-max", m_max, "sweep the defect relation for m = 1..m-max instead");
  embed->add_option("--cap-sequences", cap_sequences, "search node cap (0 = default)");
  add_common(embed);

  CLI::App* cancel = app.add_subcommand("cancel", "cancellation engine on a witness file");
  cancel->add_option("--input", input_path, "JSON with universe, A, B, k, theta")->required();
  cancel->add_option("--m", m_str, "copy count the defect must satisfy");
  cancel->add_option("--window", window, "sample window on infinite universes");
  cancel->add_option("--cap-sequences", cap_sequences, "search node cap (0 = none)");
  add_common(cancel);

  CLI::App* tarski = app.add_subcommand("tarski", "paradox / measure verdict for a set");
  tarski->add_option("--preset", preset, "named universe (X = everything)");
  tarski->add_option("--input", input_path, "JSON with universe, X");
  tarski->add_option("--size", size, "size for finite preset universes");
  tarski->add_option("--seed", seed, "seed for the measure spot checks");
  tarski->add_option("--max-word-len", max_word_len, "pseudogroup word length bound");
  tarski->add_option("--cap-sequences", cap_sequences, "search node cap (0 = default)");
  add_common(tarski);

  CLI::App* oracle = app.add_subcommand("oracle", "explicit ground truth on an edge list");
  oracle->add_option("--input", input_path, "text file: header \"na nb\", then \"a b\" lines")
      ->required();
  oracle->add_option("--matching", matching_path, "matching file: \"a b\" lines");
  oracle->add_option("--max-len", K, "report the shortest augmenting path of at most this length");
  add_common(oracle);

  try {
    app.parse(argc, argv);
    dm::set_period_cap(cap_period);

    if (*gen) {
      dm::NiceGraph g = preset.empty()
                            ? [&] {
                                dm::Rng rng(seed);
                                return dm::gen_finite_regular(size, k, rng);
                              }()
                            : dm::preset_graph(preset);
      emit(dm::graph_to_json(g), out_path);
      return 0;
    }

    if (*validate) {
      dm::NiceGraph g = load_graph(graph_path, preset);
      dm::ValidationReport r = dm::validate_graph(g);
      emit(report_json(r), out_path);
      return r.ok ? 0 : 1;
    }

    if (*match) {
      dm::NiceGraph g = load_graph(graph_path, preset);
      dm::ValidationReport r = dm::validate_graph(g);
      if (!r.ok) {
        emit(report_json(r), out_path);
        return 1;
      }
      dm::SymbolicMatching m;
      if (!matching_path.empty()) m = dm::matching_from_json(g, read_json(matching_path));
      dm::eliminate(g, m, K, std::nullopt, cap_sequences);
      emit(dm::matching_to_json(g, m), out_path);
      return 0;
    }

    if (*verify) {
      dm::NiceGraph g = load_graph(graph_path, preset);
      Json mj = read_json(matching_path);
      Json out;
      out["graph"] = report_json(dm::validate_graph(g));
      bool ok = out["graph"]["ok"].get<bool>();
      if (ok) {
        dm::SymbolicMatching m = dm::matching_from_json(g, mj);
        dm::ValidationReport mr = dm::validate_matching(g, m);
        out["matching"] = report_json(mr);
        ok = mr.ok;
        if (ok && verify->count("--K")) {
          dm::WindowView v = dm::window_view(g, m, window);
          auto path = dm::oracle::augmenting_path(v.x.graph, v.m, 2 * K + 1, v.free_a, v.free_b);
          out["aug_path"] = path ? Json(*path) : Json(nullptr);
          if (path) {
            ok = false;
            out["problems"] = {"augmenting path of length <= " + std::to_string(2 * K + 1) +
                               " inside the window"};
          }
        }
      }
      if (!ok) out["offending"] = mj;
      out["ok"] = ok;
      emit(out, out_path);
      return ok ? 0 : 1;
    }

    if (*bound) {
      dm::Rng rng(seed);
      dm::NmReading reading = reading_of(nm_reading);
      std::ostringstream csv;
      csv << "instance,k,m,K,V,M,Y0,chain_bound,berge_bound,pass\n";
      bool all_ok = true;
      for (dm::u64 i = 0; i < count; ++i) {
        dm::NiceGraph g = dm::gen_finite_regular(size, k, rng);
        for (const dm::Rat& m : {dm::Rat(3, 2), dm::Rat(2), dm::Rat(3)}) {
          dm::CoverageReport rep = dm::match_with_defect(g, m, dm::Variant::both_sides, reading,
                                                         nullptr, window, cap_sequences);
          dm::BergeCheck berge = dm::berge_check(g, rep.matching, (rep.K - 1) / 2);
          dm::u64 msize = 0;
          for (const dm::MatchPart& p : rep.matching.parts()) msize += *p.domain.cardinality();
          bool ok = rep.counting_ok && rep.chain.ok && berge.holds;
          all_ok = all_ok && ok;
          csv << i << ',' << k << ',' << dm::to_string(m) << ',' << rep.K << ','
              << 2 * size << ',' << msize << ',' << *rep.Y0.cardinality() << ','
              << dm::to_string(rep.chain_bound) << ',' << dm::to_string(berge.bound) << ','
              << (ok ? "pass" : "fail") << '\n';
        }
      }
      emit_text(csv.str(), out_path);
      return all_ok ? 0 : 1;
    }

    if (*embed) {
      Json in = read_json(input_path);
      dm::UniversePtr u = dm::universe_from_json(in.at("universe"));
      dm::DefSet x = dm::set_from_json(u, in.at("X")), y = dm::set_from_json(u, in.at("Y"));
      dm::SearchBounds bounds;
      bounds.max_word_len = max_word_len;
      if (cap_sequences) bounds.max_nodes = cap_sequences;
      if (embed->count("--m-max")) {
        std::vector<dm::Leq0Entry> entries =
            dm::check_leq_0(dm::tagged(x), dm::tagged(y), m_max, bounds);
        Json ej = Json::array();
        for (const dm::Leq0Entry& e : entries) ej.push_back(leq0_entry_json(e));
        emit(Json{{"entries", std::move(ej)}}, out_path);
        return entries.empty() ? 1 : 0;
      }
      auto w = dm::find_embedding(x, y, bounds);
      if (!w) {
        emit(Json{{"found", false}}, out_path);
        return 1;
      }
      dm::WitnessReport r = dm::verify_witness(*w);
      emit(Json{{"found", true},
                {"witness", dm::witness_to_json(*w)},
                {"report", witness_report_json(r)}},
           out_path);
      return r.valid ? 0 : 1;
    }

    if (*cancel) {
      Json in = read_json(input_path);
      dm::UniversePtr u = dm::universe_from_json(in.at("universe"));
      dm::DefSet A = dm::set_from_json(u, in.at("A")), B = dm::set_from_json(u, in.at("B"));
      dm::u64 kk = in.at("k").get<dm::u64>();
      dm::TaggedWitness theta = dm::tagged_witness_from_json(u, in.at("theta"));
      dm::CancellationOutput c =
          dm::cancel(A, B, kk, theta, dm::parse_rational(m_str), window, cap_sequences);
      emit(cancel_json(c), out_path);
      return c.counting_ok ? 0 : 1;
    }

    if (*tarski) {
      dm::UniversePtr u;
      dm::DefSet x;
      if (!preset.empty()) {
        u = dm::preset_universe(preset, size);
        x = dm::DefSet::full(u);
      } else if (!input_path.empty()) {
        Json in = read_json(input_path);
        u = dm::universe_from_json(in.at("universe"));
        x = dm::set_from_json(u, in.at("X"));
      } else {
        throw dm::parse_error("need --preset or --input");
      }
      dm::SearchBounds bounds;
      bounds.max_word_len = max_word_len;
      if (cap_sequences) bounds.max_nodes = cap_sequences;
      dm::Rng rng(seed);
      dm::TarskiVerdict v = dm::tarski_verdict(x, bounds, rng);
      Json out;
      switch (v.kind) {
        case dm::VerdictKind::Paradoxical:
          out["verdict"] = "paradoxical";
          out["m"] = v.paradox->m;
          out["p"] = v.paradox->p;
          out["q"] = v.paradox->q;
          out["mu_x0_max"] = dm::to_string(v.paradox->mu_x0_max);
          out["mu_rest_min"] = dm::to_string(v.paradox->mu_rest_min);
          out["entry"] = leq0_entry_json(v.paradox->entry);
          break;
        case dm::VerdictKind::MeasureCandidate:
          out["verdict"] = "measure-candidate";
          out["measure"] = Json{{"kind", v.measure->kind}, {"checked_sets", v.measure->checked_sets}};
          break;
        case dm::VerdictKind::Inconclusive:
          out["verdict"] = "inconclusive";
          break;
      }
      emit(out, out_path);
      return 0;
    }

    if (*oracle) {
      OracleInstance inst = read_oracle(input_path, matching_path);
      dm::oracle::MatchingState best = dm::oracle::max_matching(inst.g);
      Json out{{"na", inst.g.na}, {"nb", inst.g.nb}, {"max_matching", best.size}};
      if (!matching_path.empty()) {
        dm::oracle::MatchingState m = dm::oracle::empty_matching(inst.g);
        for (auto [a, b] : inst.matching) {
          if (a < 0 || a >= inst.g.na || b < 0 || b >= inst.g.nb)
            throw dm::parse_error("matching entry out of range");
          m.match_a[a] = b;
          m.match_b[b] = a;
          ++m.size;
        }
        bool valid = dm::oracle::matching_valid(inst.g, m);
        out["matching_valid"] = valid;
        if (valid && oracle->count("--max-len")) {
          auto path = dm::oracle::augmenting_path(inst.g, m, int(K));
          out["aug_path"] = path ? Json(*path) : Json(nullptr);
        }
        if (!valid) {
          emit(out, out_path);
          return 1;
        }
      }
      emit(out, out_path);
      return 0;
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const dm::parse_error& e) {
    std::cerr << Json{{"error", e.what()}}.dump() << "\n";
    return 2;
  } catch (const dm::hypothesis_error& e) {
    std::cerr << Json{{"error", e.what()}}.dump() << "\n";
    return 2;
  } catch (const dm::universe_mismatch_error& e) {
    std::cerr << Json{{"error", e.what()}}.dump() << "\n";
    return 2;
  } catch (const dm::resource_limit_error& e) {
    std::cerr << Json{{"error", e.what()}}.dump() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}
