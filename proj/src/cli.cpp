#include "foxfree/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "foxfree/fox.hpp"
#include "foxfree/freiheit.hpp"
#include "foxfree/magnus.hpp"

namespace foxfree::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (true) {
    size_t end = s.find(sep, pos);
    out.push_back(s.substr(pos, end == std::string::npos ? std::string::npos : end - pos));
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return out;
}

// `--factors` spec: comma-separated `name[:kind]`, kind one of `free`,
// `inf`, `cyclicN`.
FactorTable table_from_spec(const std::string& spec) {
  std::vector<FactorSpec> factors;
  int id = 0;
  for (const std::string& item : split(spec, ',')) {
    if (item.empty()) throw DomainError("--factors: empty item");
    FactorSpec f;
    f.id = id++;
    size_t colon = item.find(':');
    f.name = item.substr(0, colon);
    std::string kind = colon == std::string::npos ? "free" : item.substr(colon + 1);
    if (kind == "free") {
      f.kind = FactorKind::FreeLetter;
    } else if (kind == "inf") {
      f.kind = FactorKind::InfiniteCyclic;
    } else if (kind.rfind("cyclic", 0) == 0) {
      f.kind = FactorKind::FiniteCyclic;
      f.order = std::stoll(kind.substr(6));
    } else {
      throw DomainError("--factors: unknown kind '" + kind + "'");
    }
    factors.push_back(std::move(f));
  }
  return FactorTable(std::move(factors));
}

// Free-letter table inferred from the words' tokens, names sorted.
FactorTable table_from_words(const std::vector<std::string>& texts) {
  std::set<std::string> names;
  for (const std::string& text : texts) {
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
      size_t caret = token.rfind('^');
      names.insert(caret == std::string::npos ? token : token.substr(0, caret));
    }
  }
  if (names.empty()) throw DomainError("cannot infer a factor table from empty input");
  return FactorTable::free_letters({names.begin(), names.end()});
}

struct TableArgs {
  std::string pres_path;
  std::string factors_spec;

  std::optional<Presentation> presentation;

  FactorTable resolve(const std::vector<std::string>& fallback_words) {
    if (!pres_path.empty()) {
      presentation = load_presentation(read_file(pres_path));
      return presentation->table;
    }
    if (!factors_spec.empty()) return table_from_spec(factors_spec);
    return table_from_words(fallback_words);
  }
};

std::vector<int> parse_id_list(const FactorTable& t, const std::string& text) {
  // Accepts factor names or 1-based indices.
  std::vector<int> out;
  if (text.empty()) return out;
  for (const std::string& item : split(text, ',')) {
    if (item.empty()) throw DomainError("empty entry in id list");
    if (t.has_name(item)) {
      out.push_back(t.id_of(item));
      continue;
    }
    try {
      size_t pos = 0;
      int v = std::stoi(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      if (v < 1 || v > t.size()) throw DomainError("factor index " + item + " out of range");
      out.push_back(v - 1);
    } catch (const std::invalid_argument&) {
      throw DomainError("unknown factor '" + item + "'");
    }
  }
  return out;
}

std::string weight_str(const WeightReport& w) {
  return w.bounded ? std::to_string(w.weight) : ">=" + std::to_string(w.cap + 1);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fox calculus and freiheitssatz toolkit"};
  app.require_subcommand(1);
  app.fallthrough(false);

  long long seed = 0;  // reserved for randomized tooling; reports ignore it
  app.add_option("--seed", seed, "fixed seed for randomized tooling");
  std::string format = "text";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));

  // derive
  auto* derive_cmd = app.add_subcommand("derive", "fox derivative of a word");
  TableArgs derive_table;
  std::string derive_gen, derive_word;
  derive_cmd->add_option("--gen", derive_gen, "generator name")->required();
  derive_cmd->add_option("--word", derive_word, "word")->required();
  derive_cmd->add_option("--pres", derive_table.pres_path, "presentation file");
  derive_cmd->add_option("--factors", derive_table.factors_spec, "factor spec");

  // fundamental-check
  auto* fund_cmd = app.add_subcommand("fundamental-check", "fundamental formula defect");
  TableArgs fund_table;
  std::string fund_word;
  fund_cmd->add_option("--word", fund_word, "word")->required();
  fund_cmd->add_option("--pres", fund_table.pres_path, "presentation file");
  fund_cmd->add_option("--factors", fund_table.factors_spec, "factor spec");

  // magnus expand | lcs
  auto* magnus_cmd = app.add_subcommand("magnus", "magnus expansion tools");
  magnus_cmd->require_subcommand(1);
  int magnus_cap = 4;
  TableArgs magnus_table;
  std::string magnus_word;
  auto* expand_cmd = magnus_cmd->add_subcommand("expand", "truncated expansion");
  auto* lcs_cmd = magnus_cmd->add_subcommand("lcs", "lower central series degree");
  for (auto* c : {expand_cmd, lcs_cmd}) {
    c->add_option("--cap", magnus_cap, "truncation degree");
    c->add_option("--word", magnus_word, "word")->required();
    c->add_option("--pres", magnus_table.pres_path, "presentation file");
    c->add_option("--factors", magnus_table.factors_spec, "factor spec");
  }

  // schreier build
  auto* schreier_cmd = app.add_subcommand("schreier", "coset transversal tools");
  schreier_cmd->require_subcommand(1);
  auto* build_cmd = schreier_cmd->add_subcommand("build", "build a transversal");
  TableArgs schreier_table;
  std::string schreier_p;
  int radius = 4;
  build_cmd->add_option("--pres", schreier_table.pres_path, "presentation file");
  build_cmd->add_option("--factors", schreier_table.factors_spec, "factor spec");
  build_cmd->add_option("--P", schreier_p, "distinguished factor subset");
  build_cmd->add_option("--radius", radius, "exploration radius");

  // jacobian / select
  auto* jac_cmd = app.add_subcommand("jacobian", "abelianized fox jacobian");
  std::string jac_pres;
  jac_cmd->add_option("pres", jac_pres, "presentation file")->required();
  auto* select_cmd = app.add_subcommand("select", "free generator subset selection");
  std::string select_pres;
  select_cmd->add_option("pres", select_pres, "presentation file")->required();

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "bounded freeness falsification");
  std::string verify_pres, verify_j, verify_bounds;
  verify_cmd->add_option("pres", verify_pres, "presentation file")->required();
  verify_cmd->add_option("--J", verify_j, "candidate subset")->required();
  verify_cmd->add_option("--bounds", verify_bounds, "max_conjugators,max_conj_len,max_word_len,lie_cap");

  // replay
  auto* replay_cmd = app.add_subcommand("replay", "replay a transform log");
  std::string replay_matrix, replay_log, replay_moduli;
  int replay_vars = 0;
  replay_cmd->add_option("--matrix", replay_matrix, "matrix text")->required();
  replay_cmd->add_option("--log", replay_log, "log file")->required();
  replay_cmd->add_option("--vars", replay_vars, "number of laurent variables")->required();
  replay_cmd->add_option("--moduli", replay_moduli, "per-variable moduli");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return 64;
  }

  try {
    if (*derive_cmd) {
      FactorTable t = derive_table.resolve({derive_word, derive_gen});
      out << format_ring(t, derivative(t, t.id_of(derive_gen), t.parse(derive_word))) << '\n';
    } else if (*fund_cmd) {
      FactorTable t = fund_table.resolve({fund_word});
      RingElement defect = fundamental_defect(t, RingElement(t.parse(fund_word)));
      out << "defect = " << format_ring(t, defect) << '\n';
    } else if (*expand_cmd) {
      FactorTable t = magnus_table.resolve({magnus_word});
      out << format_series(t, magnus_expand(t, t.parse(magnus_word), magnus_cap)) << '\n';
    } else if (*lcs_cmd) {
      FactorTable t = magnus_table.resolve({magnus_word});
      out << weight_str(lcs_degree(t, t.parse(magnus_word), magnus_cap)) << '\n';
    } else if (*build_cmd) {
      FactorTable t = schreier_table.resolve({});
      QuotientHom q = schreier_table.presentation ? schreier_table.presentation->quotient
                                                  : QuotientHom::abelianization(t);
      Transversal trans(t, q, parse_id_list(t, schreier_p), radius);
      out << trans.dump();
    } else if (*jac_cmd) {
      Presentation p = load_presentation(read_file(jac_pres));
      Jacobian j = jacobian_abelianized(p);
      out << format_matrix(j.ring, j.matrix) << '\n';
    } else if (*select_cmd) {
      Presentation p = load_presentation(read_file(select_pres));
      SelectionReport r = select_free_subset(p);
      if (format == "json") {
        nlohmann::ordered_json j;
        j["rank"] = r.rank;
        j["I"] = nlohmann::ordered_json::array();
        for (int id : r.pivots) j["I"].push_back(p.table.factor(id).name);
        j["J"] = nlohmann::ordered_json::array();
        for (int id : r.J) j["J"].push_back(p.table.factor(id).name);
        j["torsion"] = r.torsion;
        j["jacobian"] = format_matrix(r.jacobian.ring, r.jacobian.matrix);
        j["triangular"] = format_matrix(r.jacobian.ring, r.triangular);
        j["log"] = format_log(r.jacobian.ring, r.log);
        out << j.dump(2) << '\n';
      } else {
        out << format_selection(r, p);
      }
    } else if (*verify_cmd) {
      Presentation p = load_presentation(read_file(verify_pres));
      FalsifyBounds bounds;
      if (!verify_bounds.empty()) {
        std::vector<std::string> parts = split(verify_bounds, ',');
        if (parts.size() != 4) throw DomainError("--bounds needs four comma-separated values");
        bounds.max_conjugators = std::stoi(parts[0]);
        bounds.max_conj_len = std::stoi(parts[1]);
        bounds.max_word_len = std::stoll(parts[2]);
        bounds.lie_cap = std::stoi(parts[3]);
      }
      FalsifyResult r = falsify_freeness(p, parse_id_list(p.table, verify_j), bounds);
      if (r.status == FalsifyResult::Status::BudgetExceeded) {
        out << "budget exceeded after " << r.steps << " steps\n";
        return 3;
      }
      if (r.status == FalsifyResult::Status::None) {
        out << "none\n";
      } else if (r.counterexample->kind == Counterexample::Kind::Enumeration) {
        out << "counterexample: witness = " << p.table.format(r.counterexample->witness) << '\n';
        out << "certificate:\n";
        for (const auto& f : r.counterexample->certificate) {
          out << "  relator " << (f.relator + 1) << " sign " << (f.sign > 0 ? "+" : "-")
              << " conjugator \"" << p.table.format(f.conjugator) << "\"\n";
        }
      } else {
        out << "counterexample: lie ideal meets J-subalgebra at degree "
            << r.counterexample->lie_degree << " (dimension " << r.counterexample->lie_dimension
            << ")\n";
      }
    } else if (*replay_cmd) {
      std::vector<int64_t> moduli(static_cast<size_t>(replay_vars), 0);
      if (!replay_moduli.empty()) {
        std::vector<std::string> parts = split(replay_moduli, ',');
        if (parts.size() != static_cast<size_t>(replay_vars))
          throw DomainError("--moduli needs one value per variable");
        for (size_t i = 0; i < parts.size(); ++i) moduli[i] = std::stoll(parts[i]);
      }
      std::vector<int> killed(static_cast<size_t>(replay_vars));
      for (int i = 0; i < replay_vars; ++i) killed[static_cast<size_t>(i)] = i;
      LaurentRing ring(replay_vars, std::move(moduli), std::move(killed));
      RingMatrix<LaurentRing> m = parse_matrix(ring, replay_matrix);
      TransformLog<LaurentRing> log = parse_log(ring, read_file(replay_log));
      out << format_matrix(ring, replay(ring, std::move(m), log)) << '\n';
    }
  } catch (const BoundExhausted& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace foxfree::cli
