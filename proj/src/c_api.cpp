#include "surfcensus/c_api.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <random>
#include <set>
#include <sstream>

#include "surfcensus/coxeter.hpp"
#include "surfcensus/error.hpp"
#include "surfcensus/graphcovers.hpp"
#include "surfcensus/metricgraph.hpp"
#include "surfcensus/polyhedron.hpp"
#include "surfcensus/surfaces.hpp"

struct sc_polyhedron {
  sc::Polyhedron poly;
};

namespace {

thread_local std::string last_error;

int to_code(sc::Status s) {
  switch (s) {
    case sc::Status::ok: return SC_OK;
    case sc::Status::invalid_input: return SC_INVALID_INPUT;
    case sc::Status::structural: return SC_STRUCTURAL;
    case sc::Status::validation: return SC_VALIDATION;
    case sc::Status::resource: return SC_RESOURCE;
    case sc::Status::construction: return SC_CONSTRUCTION;
    case sc::Status::invariant_violation: return SC_INVARIANT_VIOLATION;
    case sc::Status::malformed: return SC_MALFORMED;
    case sc::Status::not_surface: return SC_NOT_SURFACE;
    case sc::Status::io: return SC_IO;
  }
  return SC_INTERNAL;
}

template <class F>
int guarded(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const sc::Error& e) {
    last_error = e.what();
    return to_code(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SC_RESOURCE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SC_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  if (!p) sc::fail(sc::Status::invalid_input, std::string(what) + " is null");
}

std::string header() { return "# schema-version=" + std::to_string(sc_schema_version()) + "\n"; }

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

struct SigmaChoice {
  enum { all, transpositions, explicit_list } kind = all;
  std::vector<std::string> cycles;
};

SigmaChoice parse_sigma(const char* text) {
  SigmaChoice c;
  std::string s = text ? text : "all";
  if (s == "all") return c;
  if (s == "transpositions") {
    c.kind = SigmaChoice::transpositions;
    return c;
  }
  if (s.rfind("cycles:", 0) != 0) sc::fail(sc::Status::invalid_input, "sigma must be all, transpositions or cycles:...");
  c.kind = SigmaChoice::explicit_list;
  std::stringstream in(s.substr(7));
  std::string item;
  while (std::getline(in, item, ';')) {
    sc::parse_cycles(item, 64);
    c.cycles.push_back(item);
  }
  if (c.cycles.empty()) sc::fail(sc::Status::invalid_input, "empty cycle list");
  return c;
}

// Entries naming symbols above m are skipped.
std::vector<sc::Involution> explicit_for(const SigmaChoice& c, int m) {
  std::vector<sc::Involution> out;
  for (auto& item : c.cycles) {
    try {
      out.push_back(sc::parse_cycles(item, m));
    } catch (const sc::Error&) {
    }
  }
  return out;
}

std::vector<sc::Involution> select(const SigmaChoice& c, int m) {
  if (c.kind == SigmaChoice::explicit_list) {
    auto list = explicit_for(c, m);
    std::set<sc::Involution> uniq(list.begin(), list.end());
    return {uniq.begin(), uniq.end()};
  }
  std::vector<sc::Involution> out;
  for (auto& s : sc::all_involutions(m))
    if (c.kind == SigmaChoice::all || 2 * sc::transposition_count(s) == m) out.push_back(s);
  return out;
}

std::string word_text(const sc::Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + std::to_string(w[i]);
  return s;
}

}  // namespace

extern "C" {

int sc_schema_version(void) { return 1; }

const char* sc_status_name(int status) {
  switch (status) {
    case SC_OK: return "ok";
    case SC_USAGE: return "usage";
    case SC_INVALID_INPUT: return "invalid_input";
    case SC_STRUCTURAL: return "structural";
    case SC_VALIDATION: return "validation";
    case SC_RESOURCE: return "resource";
    case SC_CONSTRUCTION: return "construction";
    case SC_INVARIANT_VIOLATION: return "invariant_violation";
    case SC_IO: return "io";
    case SC_MALFORMED: return "malformed";
    case SC_NOT_SURFACE: return "not_surface";
    default: return "internal";
  }
}

const char* sc_last_error(void) { return last_error.c_str(); }

void sc_string_free(char* s) { std::free(s); }

int sc_polyhedron_load(const char* name_or_path, sc_polyhedron** out) {
  return guarded([&] {
    need(name_or_path, "name");
    need(out, "out");
    *out = nullptr;
    auto* p = new sc_polyhedron{sc::load_polyhedron(name_or_path)};
    *out = p;
    return SC_OK;
  });
}

void sc_polyhedron_free(sc_polyhedron* p) { delete p; }

int sc_polyhedron_counts(const sc_polyhedron* p, int* faces, int* edges, int* vertices) {
  return guarded([&] {
    need(p, "polyhedron");
    if (faces) *faces = p->poly.num_faces();
    if (edges) *edges = p->poly.num_edges();
    if (vertices) *vertices = p->poly.num_vertices();
    return SC_OK;
  });
}

int sc_validate_report(const sc_polyhedron* p, char** out_text) {
  return guarded([&] {
    need(p, "polyhedron");
    need(out_text, "out");
    auto r = sc::validate_right_angled(p->poly);
    std::ostringstream o;
    o << header() << "faces " << p->poly.num_faces() << "\nedges " << p->poly.num_edges() << "\nvertices "
      << p->poly.num_vertices() << "\nvalid " << (r.ok() ? "yes" : "no") << '\n';
    for (auto& i : r.issues)
      o << "issue " << (i.kind == sc::Issue::structural ? "structural" : "validation") << ' ' << i.message << '\n';
    *out_text = dup(o.str());
    if (r.ok()) return SC_OK;
    last_error = r.issues[0].message;
    return r.structural_failure() ? SC_STRUCTURAL : SC_VALIDATION;
  });
}

int sc_bounds_report(const sc_polyhedron* p, int workers, char** out_csv) {
  return guarded([&] {
    need(p, "polyhedron");
    need(out_csv, "out");
    auto r = sc::validate_right_angled(p->poly);
    if (!r.ok())
      sc::fail(r.structural_failure() ? sc::Status::structural : sc::Status::validation, r.issues[0].message);
    int c = sc::c_of_P(p->poly, workers);
    std::ostringstream o;
    o << header() << "quantity,value\n";
    o << "faces," << p->poly.num_faces() << '\n';
    o << "c_P," << c << '\n';
    o << "c2," << 8 * c + 1 << '\n';
    *out_csv = dup(o.str());
    return SC_OK;
  });
}

int sc_graph_count_report(int max_vertices, int max_n, char** out_csv) {
  return guarded([&] {
    need(out_csv, "out");
    std::ostringstream o;
    o << header() << "vertices,n,count,bound,holds\n";
    for (int v = 0; v <= max_vertices; ++v)
      for (int n = 0; n <= max_n; ++n) {
        auto g = sc::count_bounded_degree_graphs(v, n);
        o << v << ',' << n << ',' << g.count << ',' << g.bound << ',' << (g.holds ? "yes" : "no") << '\n';
      }
    *out_csv = dup(o.str());
    return SC_OK;
  });
}

int sc_thresholds_report(char** out_csv) {
  return guarded([&] {
    need(out_csv, "out");
    const double grid[] = {1, 1.25, 1.5, 2, 3};
    std::ostringstream o;
    o << header() << "k,c,k_prime,c_prime,s,u,t,t_prime,boundary_regime\n";
    for (double k : grid)
      for (double c : grid) {
        auto q = sc::thresholds(k, c);
        o << num(k) << ',' << num(c) << ',' << num(q.k_prime) << ',' << num(q.c_prime) << ',' << num(q.s) << ','
          << num(q.u) << ',' << num(q.t) << ',' << num(q.t_prime) << ',' << (q.boundary_regime ? "yes" : "no")
          << '\n';
      }
    *out_csv = dup(o.str());
    return SC_OK;
  });
}

int sc_census_report(const sc_polyhedron* p, int f1, int f2, int n_lo, int n_hi, const char* sigma, int workers,
                     char** out_csv, char** out_detail) {
  return guarded([&] {
    need(p, "polyhedron");
    need(out_csv, "out");
    auto choice = parse_sigma(sigma);
    if (n_hi > sc::kMaxCensusN) sc::fail(sc::Status::resource, "census guard is n <= 6");
    auto r = sc::validate_right_angled(p->poly);
    if (!r.ok())
      sc::fail(r.structural_failure() ? sc::Status::structural : sc::Status::validation, r.issues[0].message);
    sc::DiskSpec spec = sc::default_disk_spec(p->poly, 1);
    if (f1 >= 0) spec.F1 = f1;
    if (f2 >= 0) spec.F2 = f2;
    else if (f1 >= 0) spec.F2 = p->poly.neighbor(f1, 0);
    auto filter = choice.kind == SigmaChoice::all             ? sc::SigmaFilter::all
                  : choice.kind == SigmaChoice::transpositions ? sc::SigmaFilter::transpositions
                                                                : sc::SigmaFilter::explicit_list;
    std::vector<sc::Involution> list;
    if (choice.kind == SigmaChoice::explicit_list)
      for (int n = n_lo; n <= n_hi; ++n)
        for (auto& s : explicit_for(choice, sc::cut_edge_count(n))) list.push_back(s);
    auto rep = sc::census(spec, n_lo, n_hi, filter, list, workers);
    *out_csv = dup(sc::census_csv(rep));
    if (out_detail) *out_detail = dup(sc::census_detail(rep));
    return SC_OK;
  });
}

int sc_covers_report(int n_lo, int n_hi, const char* sigma, int radius, char** out_csv) {
  return guarded([&] {
    need(out_csv, "out");
    auto choice = parse_sigma(sigma);
    if (n_lo < 1 || n_hi < n_lo) sc::fail(sc::Status::invalid_input, "bad n range");
    if (n_hi > 6) sc::fail(sc::Status::resource, "covers guard is n <= 6");
    std::ostringstream o;
    o << header()
      << "n,sigma,vertices,radius,tree_nodes,recovered,round_trip,distance_rule_mismatches,orbit_rule_mismatches\n";
    for (int n = n_lo; n <= n_hi; ++n) {
      int R = radius > 0 ? radius : sc::default_radius(n);
      for (auto& s : select(choice, n)) {
        auto cover = sc::build_cover(n, s);
        auto t = sc::truncated_universal_cover(sc::cut_basepoint(cover), R, n);
        auto orbit = sc::tree_invariants(t, sc::E1Rule::orbit);
        auto dist = sc::tree_invariants(t, sc::E1Rule::distance);
        auto rec = sc::recover_sigma(t, orbit, n);
        o << n << ',' << sc::to_cycles(s) << ',' << cover.num_vertices << ',' << R << ',' << t.size() << ','
          << sc::to_cycles(rec) << ',' << (rec == s ? "yes" : "no") << ',' << dist.e2_mismatches << ','
          << orbit.e2_mismatches << '\n';
      }
    }
    *out_csv = dup(o.str());
    return SC_OK;
  });
}

int sc_coxeter_ball_report(const sc_polyhedron* p, int radius, uint64_t seed, int samples, char** out_csv) {
  return guarded([&] {
    need(p, "polyhedron");
    need(out_csv, "out");
    if (radius < 0) sc::fail(sc::Status::invalid_input, "negative radius");
    if (samples < 0) sc::fail(sc::Status::invalid_input, "negative sample count");
    sc::CoxeterGroup G(p->poly);
    auto ball = sc::cayley_ball(G, radius);
    std::ostringstream o;
    o << header() << "check,radius,word,value,reference,agree\n";
    for (int r = 0; r <= radius; ++r) {
      std::size_t count = 0;
      for (auto& w : *ball) count += static_cast<int>(w.size()) <= r;
      o << "ball_size," << r << ",," << count << ",NA,NA\n";
    }
    std::mt19937_64 rng(seed);
    for (int i = 0; i < samples; ++i) {
      const auto& w = (*ball)[rng() % ball->size()];
      int d = sc::d_P(G, {sc::Word{}}, {w});
      int len = G.word_length(w);
      o << "d_P," << radius << ',' << word_text(w) << ',' << d << ',' << len << ',' << (d == len ? "yes" : "no")
        << '\n';
    }
    *out_csv = dup(o.str());
    return SC_OK;
  });
}

int sc_qi_report(double k, double c, int pairs, uint64_t seed, char** out_csv) {
  return guarded([&] {
    need(out_csv, "out");
    if (pairs < 1 || pairs > 100) sc::fail(sc::Status::resource, "qi pair count must be in 1..100");
    auto suite = sc::run_qi_suite(k, c, pairs, seed);
    std::ostringstream o;
    o << header() << "pair,g1,g2,isomorphic,witness,correct\n";
    for (std::size_t i = 0; i < suite.rows.size(); ++i) {
      auto& r = suite.rows[i];
      o << i << ',' << r.g1 << ',' << r.g2 << ',' << (r.isomorphic ? "yes" : "no") << ','
        << (r.witness ? "yes" : "no") << ',' << (r.isomorphic == r.witness ? "yes" : "no") << '\n';
    }
    *out_csv = dup(o.str());
    return SC_OK;
  });
}

}  // extern "C"
