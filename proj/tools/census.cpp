#include <unistd.h>

#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <string>
#include <utility>
#include <vector>

#include "surfcensus/c_api.h"

namespace fs = std::filesystem;

namespace {

struct CliError {
  int code;
  std::string message;
};

void check(int rc) {
  if (rc != SC_OK) throw CliError{rc, sc_last_error()};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  sc_string_free(s);
  return out;
}

std::pair<int, int> parse_range(const std::string& text) {
  static const std::regex re(R"(^(\d{1,3})(?:\.\.(\d{1,3}))?$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw CliError{SC_INVALID_INPUT, "--n expects an integer or a..b, got " + text};
  int lo = std::stoi(m[1]);
  int hi = m[2].matched ? std::stoi(m[2]) : lo;
  if (lo < 1 || hi < lo) throw CliError{SC_INVALID_INPUT, "--n range must satisfy 1 <= a <= b"};
  return {lo, hi};
}

struct Polyhedron {
  sc_polyhedron* p = nullptr;
  explicit Polyhedron(const std::string& src) { check(sc_polyhedron_load(src.c_str(), &p)); }
  ~Polyhedron() { sc_polyhedron_free(p); }
  Polyhedron(const Polyhedron&) = delete;
  Polyhedron& operator=(const Polyhedron&) = delete;
};

using Outputs = std::vector<std::pair<std::string, std::string>>;

// All files land or none do.
void emit(const Outputs& files, const std::string& out_dir) {
  if (out_dir.empty()) {
    for (auto& [name, body] : files) std::cout << body;
    std::cout.flush();
    return;
  }
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw CliError{SC_IO, "cannot create " + out_dir + ": " + ec.message()};
  std::vector<fs::path> temps;
  auto cleanup = [&] {
    for (auto& t : temps) fs::remove(t, ec);
  };
  for (auto& [name, body] : files) {
    fs::path tmp = fs::path(out_dir) / ("." + name + ".tmp." + std::to_string(::getpid()));
    temps.push_back(tmp);
    std::ofstream o(tmp, std::ios::binary);
    o << body;
    o.close();
    if (!o) {
      cleanup();
      throw CliError{SC_IO, "cannot write " + tmp.string()};
    }
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    fs::rename(temps[i], fs::path(out_dir) / files[i].first, ec);
    if (ec) {
      cleanup();
      throw CliError{SC_IO, "cannot rename into " + out_dir + ": " + ec.message()};
    }
  }
}

void error_line(int code, const std::string& message) {
  std::string m;
  for (char ch : message) {
    if (ch == '"' || ch == '\\') m += '\\';
    m += ch == '\n' ? ' ' : ch;
  }
  std::cerr << "error code=" << sc_status_name(code) << " exit=" << code << " message=\"" << m << "\"\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"census: surface and graph-cover census over right-angled polyhedra"};
  app.require_subcommand(0, 1);
  bool schema = false;
  app.add_flag("--schema-version", schema, "Print the CSV schema version");

  std::string poly = "dodecahedron", n_text = "1..4", sigma = "all", out_dir;
  int radius = 0, workers = 1, samples = 100, pairs = 20, f1 = -1, f2 = -1, max_vertices = 4, max_degree = 3;
  double k = 2, c = 1;
  std::uint64_t seed = 1;

  auto add_poly = [&](CLI::App* s) { s->add_option("--polyhedron", poly, "Builtin name or JSON path"); };
  auto add_out = [&](CLI::App* s) { s->add_option("--out", out_dir, "Output directory; stdout when absent"); };
  auto add_workers = [&](CLI::App* s) { s->add_option("--workers", workers, "Worker threads"); };
  auto add_seed = [&](CLI::App* s) { s->add_option("--seed", seed, "Random seed"); };

  auto* validate = app.add_subcommand("validate", "Polyhedron report");
  add_poly(validate);
  add_out(validate);

  auto* census = app.add_subcommand("census", "Surfaces census CSV and detail");
  add_poly(census);
  census->add_option("--n", n_text, "Copies of F1, integer or a..b");
  census->add_option("--sigma", sigma, "all | transpositions | cycles:(1 2);...");
  census->add_option("--f1", f1, "Pentagon F1");
  census->add_option("--f2", f2, "Face F2 adjacent to F1");
  add_out(census);
  add_workers(census);
  add_seed(census);

  auto* covers = app.add_subcommand("covers", "Graph-cover round-trip table");
  covers->add_option("--n", n_text, "Cut symbols, integer or a..b");
  covers->add_option("--sigma", sigma, "all | transpositions | cycles:(1 2);...");
  covers->add_option("--radius", radius, "Truncation radius; 0 selects 2n+1");
  add_out(covers);
  add_workers(covers);
  add_seed(covers);

  auto* bounds = app.add_subcommand("bounds", "c(P), 8c(P)+1, bounded-degree counts, u(k,c)");
  add_poly(bounds);
  bounds->add_option("--vertices", max_vertices, "Largest vertex count for graph counts (<= 5)");
  bounds->add_option("--degree", max_degree, "Largest degree for graph counts");
  add_out(bounds);
  add_workers(bounds);

  auto* ball = app.add_subcommand("coxeter-ball", "Ball sizes and d_P spot checks");
  add_poly(ball);
  ball->add_option("--radius", radius, "Ball radius");
  ball->add_option("--samples", samples, "Spot checks");
  add_out(ball);
  add_seed(ball);

  auto* qi = app.add_subcommand("qi-check", "Quasi-isometry rigidity suite");
  qi->add_option("--k", k, "Multiplicative constant");
  qi->add_option("--c", c, "Additive constant");
  qi->add_option("--pairs", pairs, "Pairs of each kind");
  add_out(qi);
  add_seed(qi);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    error_line(SC_USAGE, e.what());
    return SC_USAGE;
  }

  try {
    if (app.get_subcommands().empty()) {
      if (schema) {
        std::cout << "schema-version=" << sc_schema_version() << "\n";
        return 0;
      }
      throw CliError{SC_USAGE, "a subcommand is required"};
    }
    if (workers < 1) throw CliError{SC_INVALID_INPUT, "--workers must be positive"};
    Outputs files;
    char* a = nullptr;
    char* b = nullptr;

    if (validate->parsed()) {
      Polyhedron p(poly);
      int rc = sc_validate_report(p.p, &a);
      std::string report = take(a);
      if (rc != SC_OK) {
        std::string msg = sc_last_error();
        std::cout << report;
        throw CliError{rc, msg};
      }
      files.emplace_back("validate.txt", report);
    } else if (census->parsed()) {
      auto [lo, hi] = parse_range(n_text);
      Polyhedron p(poly);
      check(sc_census_report(p.p, f1, f2, lo, hi, sigma.c_str(), workers, &a, &b));
      files.emplace_back("census.csv", take(a));
      files.emplace_back("census_detail.txt", take(b));
      if (out_dir.empty()) files.pop_back();
    } else if (covers->parsed()) {
      auto [lo, hi] = parse_range(n_text);
      check(sc_covers_report(lo, hi, sigma.c_str(), radius, &a));
      files.emplace_back("covers.csv", take(a));
    } else if (bounds->parsed()) {
      if (max_vertices < 0 || max_vertices > 5) throw CliError{SC_RESOURCE, "--vertices guard is 0..5"};
      if (max_degree < 0 || max_degree > 3) throw CliError{SC_RESOURCE, "--degree guard is 0..3"};
      Polyhedron p(poly);
      check(sc_bounds_report(p.p, workers, &a));
      files.emplace_back("bounds.csv", take(a));
      check(sc_graph_count_report(max_vertices, max_degree, &a));
      files.emplace_back("graph_counts.csv", take(a));
      check(sc_thresholds_report(&a));
      files.emplace_back("thresholds.csv", take(a));
    } else if (ball->parsed()) {
      Polyhedron p(poly);
      check(sc_coxeter_ball_report(p.p, radius > 0 ? radius : 3, seed, samples, &a));
      files.emplace_back("coxeter_ball.csv", take(a));
    } else if (qi->parsed()) {
      check(sc_qi_report(k, c, pairs, seed, &a));
      files.emplace_back("qi.csv", take(a));
    }
    emit(files, out_dir);
    return 0;
  } catch (const CliError& e) {
    error_line(e.code, e.message);
    return e.code;
  } catch (const std::exception& e) {
    error_line(SC_INTERNAL, e.what());
    return SC_INTERNAL;
  }
}
