// Copyright 2026 The etf-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// etf-forge command line tool.
//
// Exit status: 0 success, 1 construction or verification failure, 2 usage,
// parse or I/O failure.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "etf_forge/catalog.hpp"
#include "etf_forge/etf_forge.hpp"

namespace {

using etf::io::json;
namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kDomainFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

json int_list_json(const std::string& s) {
  json out = json::array();
  for (const auto& part : split(s, ',')) {
    try {
      std::size_t used = 0;
      const long long x = std::stoll(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      out.push_back(x);
    } catch (const std::exception&) {
      throw UsageError("'" + part + "' is not an integer");
    }
  }
  return out;
}

std::int64_t int_arg(const std::string& s) {
  const auto j = int_list_json(s);
  if (j.size() != 1) throw UsageError("expected one integer, got '" + s + "'");
  return j[0].get<std::int64_t>();
}

// sylvester:E, paley:Q, dft:N, size:N, char_table:m1,m2 and A*B for Kronecker
// products.
json hadamard_spec(const std::string& s) {
  if (const auto star = s.find('*'); star != std::string::npos) {
    return {{"kron", json::array({hadamard_spec(s.substr(0, star)), hadamard_spec(s.substr(star + 1))})}};
  }
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError("Hadamard spec '" + s + "' needs the form name:value");
  const std::string name = s.substr(0, colon);
  const std::string arg = s.substr(colon + 1);
  if (name == "char_table") return {{name, int_list_json(arg)}};
  if (name == "sylvester" || name == "paley" || name == "dft" || name == "size") return {{name, int_arg(arg)}};
  throw UsageError("unknown Hadamard recipe '" + name + "'");
}

// all_pairs:V, round_robin:V, fano, complement:SPEC or a design JSON file.
json design_spec(const std::string& s) {
  if (s == "fano") return {{"fano", true}};
  const auto colon = s.find(':');
  if (colon != std::string::npos) {
    const std::string name = s.substr(0, colon);
    const std::string arg = s.substr(colon + 1);
    if (name == "all_pairs" || name == "round_robin") return {{name, int_arg(arg)}};
    if (name == "complement") return {{name, design_spec(arg)}};
  }
  if (fs::exists(s)) return etf::io::read_json(s);
  throw UsageError("design '" + s + "' is neither a known family nor a file");
}

json recipe_from_path(const std::string& p) {
  const fs::path path = fs::is_directory(p) ? fs::path(p) / "recipe.json" : fs::path(p);
  if (!fs::exists(path)) throw UsageError("no recipe at " + path.string());
  return etf::io::read_json(path);
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

// Loads a matrix JSON or an integer CSV file.
etf::io::AnyMatrix load_matrix(const std::string& p) {
  if (fs::path(p).extension() == ".csv") {
    etf::io::AnyMatrix m;
    m.cyclotomic = etf::io::matrix_from_csv(etf::io::read_file(p));
    m.domain = etf::domain_of(m.cyclotomic);
    return m;
  }
  return etf::io::matrix_from_json(etf::io::read_json(p));
}

etf::BinaryMatrix binary_matrix(const etf::Matrix<etf::CycloElem>& m) {
  const auto q = etf::rational_entries(m);
  if (!q) etf::fail(etf::ErrorKind::invalid_argument, "adjacency matrix must have 0/1 entries");
  std::vector<std::uint8_t> bits;
  for (const auto& x : *q) {
    if (x != 0 && x != 1) etf::fail(etf::ErrorKind::invalid_argument, "adjacency matrix must have 0/1 entries");
    bits.push_back(x == 1 ? 1 : 0);
  }
  return {m.rows(), m.cols(), std::move(bits)};
}

struct ConstructOptions {
  std::string out = ".";
  std::string format;
  bool swap = false;
};

int write_artifact(const json& recipe, const ConstructOptions& opt) {
  const auto artifact = etf::recipe::build(recipe);
  const json certificate = etf::recipe::certify_artifact(artifact);
  fs::create_directories(opt.out);
  etf::io::write_file(fs::path(opt.out) / "recipe.json", etf::io::canonical(recipe));
  etf::io::write_file(fs::path(opt.out) / "certificate.json", etf::io::canonical(certificate));
  bool wrote_csv = false;
  for (const auto& [name, text] : etf::recipe::artifact_files(artifact)) {
    const bool csv = fs::path(name).extension() == ".csv";
    if (csv && opt.format == "json") continue;
    wrote_csv = wrote_csv || csv;
    etf::io::write_file(fs::path(opt.out) / name, text);
  }
  if (opt.format == "csv" && !wrote_csv) {
    etf::fail(etf::ErrorKind::invalid_argument, "CSV output needs integral matrices");
  }
  print(certificate);
  return kOk;
}

template <class T>
json certify_any(const etf::Matrix<T>& m, std::optional<std::vector<etf::Rational>> w) {
  return etf::io::certificate_json(etf::certify_etf(etf::make_frame(m, std::move(w))));
}

json verify_etf(const etf::io::AnyMatrix& m) {
  if (m.domain.kind == etf::DomainKind::quadratic) return certify_any(m.quadratic, m.row_weights);
  return certify_any(m.cyclotomic, m.row_weights);
}

json verify_pair(etf::io::AnyMatrix p, etf::io::AnyMatrix c) {
  const auto cert = [](const auto& pc) {
    return json{{"schema", "etf-forge/pair-certificate/v1"},
                {"primary", etf::io::certificate_json(pc.primary)},
                {"complement", etf::io::certificate_json(pc.complement)},
                {"alpha", etf::io::rational_json(pc.alpha)},
                {"naimark", true}};
  };
  if (p.domain.kind == etf::DomainKind::quadratic && c.domain.kind == etf::DomainKind::quadratic) {
    auto pair = etf::verify_naimark_pair(etf::make_frame(p.quadratic, p.row_weights),
                                         etf::make_frame(c.quadratic, c.row_weights));
    return cert(etf::certify_pair(pair));
  }
  const auto cyclo = [](const etf::io::AnyMatrix& m) {
    return m.domain.kind == etf::DomainKind::cyclotomic ? m.cyclotomic : etf::to_cyclotomic(m.quadratic, 1);
  };
  auto pair = etf::verify_naimark_pair(etf::make_frame(cyclo(p), p.row_weights),
                                       etf::make_frame(cyclo(c), c.row_weights));
  return cert(etf::certify_pair(pair));
}

json gerzon_json(const etf::GerzonReport& g, const char* field, const char* kind) {
  return {{"field", field},
          {"kind", kind},
          {"pass", g.pass},
          {"upper_equality", g.upper_equality},
          {"violated", g.violated.empty() ? json(nullptr) : json(g.violated)}};
}

std::string summary_params(const json& params) {
  std::string s = "d=" + params.at("d").dump() + " n=" + params.at("n").dump();
  if (params.contains("qsd")) {
    const auto& q = params.at("qsd");
    s += " qsd=(";
    const char* keys[] = {"v", "k", "lambda", "r", "b", "x", "y"};
    for (int i = 0; i < 7; ++i) s += (i ? "," : "") + q.at(keys[i]).dump();
    s += ")";
  }
  return s;
}

int report_audit(const etf::catalog::Catalog& cat, const std::vector<etf::catalog::Record>& records) {
  int status = kOk;
  for (const auto& r : records) {
    if (auto msg = cat.audit_record(r)) {
      std::cerr << "audit failed for " << r.id() << ": " << *msg << "\n";
      status = kDomainFailure;
    }
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact construction and certification of equiangular tight frames"};
  app.require_subcommand(1);
  int status = kOk;

  // construct
  auto* construct = app.add_subcommand("construct", "Build a frame pair and write matrices with certificates");
  construct->require_subcommand(1);
  ConstructOptions copt;
  const auto common = [&](CLI::App* sub) {
    sub->add_option("--out", copt.out, "Output directory")->capture_default_str();
    sub->add_option("--format", copt.format, "Matrix output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--swap", copt.swap, "Exchange primary and complement");
  };
  json recipe;

  std::string simplex_h;
  std::int64_t drop_row = 0;
  auto* c_simplex = construct->add_subcommand("simplex", "Regular simplex from a Hadamard matrix");
  c_simplex->add_option("--hadamard", simplex_h, "Hadamard recipe, e.g. sylvester:2 or paley:11")->required();
  c_simplex->add_option("--drop-row", drop_row, "Row removed from the Hadamard matrix")->capture_default_str();
  common(c_simplex);

  std::string group, subset;
  auto* c_harmonic = construct->add_subcommand("harmonic", "Harmonic frame of a difference set");
  c_harmonic->add_option("--group", group, "Cyclic factor orders m1,m2,...")->required();
  c_harmonic->add_option("--subset", subset, "0-based mixed-radix element indices")->required();
  common(c_harmonic);

  std::string st_design, st_f, st_g;
  auto* c_steiner = construct->add_subcommand("steiner", "Steiner frame from a BIBD with lambda = 1");
  c_steiner->add_option("--design", st_design, "all_pairs:V, round_robin:V, fano or a design file")->required();
  c_steiner->add_option("--F", st_f, "Hadamard recipe of size k")->required();
  c_steiner->add_option("--G", st_g, "Hadamard recipe of size r + 1")->required();
  common(c_steiner);

  std::optional<std::int64_t> ku;
  std::string k_design, k_e, k_f, k_g;
  auto* c_kirkman = construct->add_subcommand("kirkman", "Kirkman frame from a resolvable BIBD");
  c_kirkman->add_option("--u", ku, "Family parameter: Hadamard of size u");
  c_kirkman->add_option("--design", k_design, "Resolvable design");
  c_kirkman->add_option("--E", k_e, "Hadamard recipe E");
  c_kirkman->add_option("--F", k_f, "Hadamard recipe F");
  c_kirkman->add_option("--G", k_g, "Hadamard recipe G");
  common(c_kirkman);

  std::string t_left, t_right;
  auto* c_tensor = construct->add_subcommand("tensor", "Tensor product of two Hadamard pairs");
  c_tensor->add_option("--left", t_left, "Directory or recipe file of the left pair")->required();
  c_tensor->add_option("--right", t_right, "Directory or recipe file of the right pair")->required();
  common(c_tensor);

  std::string q_design, q_branch = "plus";
  auto* c_qsd = construct->add_subcommand("qsd-to-etf", "Frame from a quasi-symmetric design");
  c_qsd->add_option("--design", q_design, "Quasi-symmetric design")->required();
  c_qsd->add_option("--branch", q_branch, "Sign branch")->check(CLI::IsMember({"plus", "minus"}))->capture_default_str();
  common(c_qsd);

  // verify
  auto* verify = app.add_subcommand("verify", "Certify an object read from files");
  verify->require_subcommand(1);
  std::vector<std::string> files;
  const auto vsub = [&](const char* name, const char* help, int count) {
    auto* s = verify->add_subcommand(name, help);
    s->add_option("files", files, "Input files")->required()->expected(count);
    return s;
  };
  auto* v_etf = vsub("etf", "Equiangular tight frame (matrix JSON or CSV)", 1);
  auto* v_hadamard = vsub("hadamard", "Hadamard matrix", 1);
  auto* v_bibd = vsub("bibd", "Balanced incomplete block design", 1);
  auto* v_qsd = vsub("qsd", "Quasi-symmetric design", 1);
  auto* v_srg = vsub("srg", "Strongly regular graph (adjacency matrix or design block graph)", 1);
  auto* v_pair = vsub("naimark-pair", "Naimark complementary pair", 2);

  // feasibility
  std::int64_t fd = 0, fn = 0;
  auto* feas = app.add_subcommand("feasibility", "Necessary conditions for real flat ETFs");
  feas->add_option("d", fd, "Dimension")->required();
  feas->add_option("n", fn, "Number of vectors")->required();

  // catalog
  auto* cat = app.add_subcommand("catalog", "Persistent catalog of certified artifacts");
  cat->require_subcommand(1);
  std::string cat_root;
  bool audit_flag = false;
  cat->add_option("--catalog", cat_root, "Catalog directory (default: $ETF_FORGE_CATALOG)");
  std::vector<std::string> add_paths;
  auto* cat_add = cat->add_subcommand("add", "Certify recipes and append them");
  cat_add->add_option("recipes", add_paths, "Recipe files or construct output directories")->required();
  auto* cat_list = cat->add_subcommand("list", "List records sorted by id");
  cat_list->add_flag("--audit", audit_flag, "Re-verify every payload");
  std::string show_id;
  auto* cat_show = cat->add_subcommand("show", "Print the recipe and certificate of a record");
  cat_show->add_option("id", show_id, "Record id or unique prefix")->required();
  cat_show->add_flag("--audit", audit_flag, "Re-verify the payload");
  cat->add_subcommand("audit", "Re-verify every payload");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (construct->parsed()) {
      const auto with_swap = [&](json inputs) {
        if (copt.swap) inputs["swap"] = true;
        return inputs;
      };
      if (c_simplex->parsed()) {
        recipe = etf::recipe::make("simplex", with_swap({{"hadamard", hadamard_spec(simplex_h)}, {"drop_row", drop_row}}));
      } else if (c_harmonic->parsed()) {
        recipe = etf::recipe::make("harmonic", with_swap({{"group", int_list_json(group)}, {"subset", int_list_json(subset)}}));
      } else if (c_steiner->parsed()) {
        recipe = etf::recipe::make("steiner", with_swap({{"design", design_spec(st_design)},
                                                         {"F", hadamard_spec(st_f)},
                                                         {"G", hadamard_spec(st_g)}}));
      } else if (c_kirkman->parsed()) {
        if (ku) {
          if (!k_design.empty() || !k_e.empty() || !k_f.empty() || !k_g.empty()) {
            throw UsageError("--u cannot be combined with --design/--E/--F/--G");
          }
          recipe = etf::recipe::make("kirkman", with_swap({{"u", *ku}}));
        } else {
          if (k_design.empty() || k_e.empty() || k_f.empty() || k_g.empty()) {
            throw UsageError("kirkman needs --u or all of --design, --E, --F, --G");
          }
          recipe = etf::recipe::make("kirkman", with_swap({{"design", design_spec(k_design)},
                                                           {"E", hadamard_spec(k_e)},
                                                           {"F", hadamard_spec(k_f)},
                                                           {"G", hadamard_spec(k_g)}}));
        }
      } else if (c_tensor->parsed()) {
        recipe = etf::recipe::make("tensor",
                                   with_swap({{"left", recipe_from_path(t_left)}, {"right", recipe_from_path(t_right)}}));
      } else if (c_qsd->parsed()) {
        if (copt.swap) throw UsageError("--swap does not apply to qsd-to-etf");
        recipe = etf::recipe::make("qsd", {{"design", design_spec(q_design)}, {"branch", q_branch}});
      }
      status = write_artifact(recipe, copt);
    } else if (verify->parsed()) {
      if (v_etf->parsed()) {
        print(verify_etf(load_matrix(files[0])));
      } else if (v_hadamard->parsed()) {
        const auto m = load_matrix(files[0]);
        const auto body = m.domain.kind == etf::DomainKind::cyclotomic ? m.cyclotomic
                                                                         : etf::to_cyclotomic(m.quadratic, 1);
        print(etf::io::hadamard_json(etf::verify_hadamard(body, files[0])));
      } else if (v_bibd->parsed()) {
        const auto d = etf::io::design_from_json(etf::io::read_json(files[0]));
        print(etf::io::design_json(d));
      } else if (v_qsd->parsed()) {
        const auto cert = etf::verify_qsd(etf::io::design_from_json(etf::io::read_json(files[0])));
        auto out = etf::io::qsd_json(cert);
        out["gives_etf"] = etf::qsd_gives_etf(cert);
        out["srg"] = etf::io::srg_json(etf::srg_params_from_qsd(cert));
        print(out);
      } else if (v_srg->parsed()) {
        const auto j = etf::io::read_json(files[0]);
        if (j.is_object() && j.value("schema", "") == etf::io::kDesignSchema) {
          const auto cert = etf::verify_qsd(etf::io::design_from_json(j));
          const auto predicted = etf::srg_params_from_qsd(cert);
          const auto found = etf::verify_srg(cert.block_graph);
          if (!(found == predicted)) {
            etf::fail(etf::ErrorKind::not_srg, "block graph is " + etf::to_string(found) + ", predicted " +
                                                   etf::to_string(predicted));
          }
          auto out = etf::io::srg_json(found);
          try {
            const auto [d, n] = etf::etf_params_from_srg(found);
            out["etf"] = {{"d", d}, {"n", n}};
          } catch (const etf::Error&) {
            out["etf"] = nullptr;
          }
          print(out);
        } else {
          print(etf::io::srg_json(etf::verify_srg(binary_matrix(etf::io::cyclotomic_matrix_from_json(j)))));
        }
      } else if (v_pair->parsed()) {
        print(verify_pair(load_matrix(files[0]), load_matrix(files[1])));
      }
    } else if (feas->parsed()) {
      if (!(fn - 1 > fd && fd > 1)) {
        std::cerr << "error: feasibility needs n - 1 > d > 1; d = n - 1 is the regular simplex, which "
                     "always exists and is outside this test\n";
        return kUsage;
      }
      const auto rep = etf::flat_feasibility(fd, fn);
      const auto g = etf::gerzon_bounds(fd, fn, etf::Field::real, etf::EtfKind::flat);
      auto out = etf::io::feasibility_json(rep);
      out["gerzon"] = gerzon_json(g, "real", "flat");
      print(out);
      status = rep.pass && g.pass ? kOk : kDomainFailure;
    } else if (cat->parsed()) {
      etf::catalog::Catalog catalog(cat_root.empty() ? etf::catalog::default_root() : fs::path(cat_root));
      if (cat_add->parsed()) {
        for (const auto& p : add_paths) {
          const auto rec = catalog.add(recipe_from_path(p));
          std::cout << rec.id() << "  " << rec.kind() << "  " << summary_params(rec.body.at("params")) << "\n";
        }
      } else if (cat_list->parsed()) {
        const auto records = catalog.list();
        for (const auto& r : records) {
          std::cout << r.id() << "  " << std::left << std::setw(9) << r.kind() << " "
                    << summary_params(r.body.at("params")) << "\n";
        }
        if (audit_flag) status = report_audit(catalog, records);
      } else if (cat_show->parsed()) {
        const auto r = catalog.find(show_id);
        const fs::path dir = catalog.root() / r.body.at("payload").get<std::string>();
        print({{"id", r.id()},
               {"kind", r.kind()},
               {"params", r.body.at("params")},
               {"created_at", r.body.at("created_at")},
               {"recipe", etf::io::read_json(dir / "recipe.json")},
               {"certificate", r.body.at("certificate")}});
        if (audit_flag) status = report_audit(catalog, {r});
      } else {
        const auto failures = catalog.audit();
        for (const auto& f : failures) std::cerr << "audit failed for " << f.id << ": " << f.message << "\n";
        if (failures.empty()) std::cout << "audited " << catalog.records().size() << " records: ok\n";
        status = failures.empty() ? kOk : kDomainFailure;
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const etf::Error& e) {
    std::cerr << "error: " << etf::to_string(e.kind()) << ": " << e.what() << "\n";
    const bool usage = e.kind() == etf::ErrorKind::parse || e.kind() == etf::ErrorKind::io;
    return usage ? kUsage : kDomainFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return status;
}
