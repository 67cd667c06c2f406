#include "dpz/dpz.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "dpz/enumerate.hpp"
#include "dpz/error.hpp"
#include "dpz/gf.hpp"
#include "dpz/run.hpp"
#include "dpz/sieve.hpp"

struct dpz_model {
  dpz::SurfaceModel model;
};

struct dpz_report {
  dpz::Table table;
};

namespace {

thread_local std::string last_error;

template <class Fn>
dpz_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return DPZ_OK;
  } catch (const dpz::Error& e) {
    last_error = e.what();
    return static_cast<dpz_status>(static_cast<int>(e.kind()));
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return DPZ_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return DPZ_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return DPZ_ERR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void need(const void* p, const char* what) {
  if (!p) dpz::fail_config(std::string(what) + " must not be null");
}

}  // namespace

extern "C" {

const char* dpz_last_error(void) { return last_error.c_str(); }

dpz_status dpz_model_canonical(uint64_t q, int r, dpz_model** out) {
  return guarded([&] {
    need(out, "out");
    *out = new dpz_model{dpz::SurfaceModel::canonical(q, r)};
  });
}

dpz_status dpz_model_parse(const char* text, dpz_model** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new dpz_model{dpz::SurfaceModel::parse(text)};
  });
}

dpz_status dpz_model_load(const char* path, dpz_model** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new dpz_model{dpz::SurfaceModel::load(path)};
  });
}

void dpz_model_free(dpz_model* model) { delete model; }

dpz_status dpz_count_sections(const dpz_model* model, uint64_t a, uint64_t a_prime, const uint64_t* k,
                              const char* mode, uint64_t budget, unsigned threads, char** sections,
                              char** morphisms) {
  return guarded([&] {
    need(model, "model");
    need(sections, "sections");
    int r = model->model.r();
    if (r > 0) need(k, "k");
    std::vector<std::size_t> kv(k, k + r);
    dpz::CountOptions opt;
    if (mode) opt.mode = dpz::parse_mode(mode);
    if (budget) opt.budget = budget;
    opt.threads = threads ? threads : 1;
    auto res = dpz::count_sections(model->model, a, a_prime, kv, opt);
    std::string s = res.raw.get_str(), m = res.morphisms.get_str();
    *sections = dup(s);
    if (morphisms) *morphisms = dup(m);
  });
}

dpz_status dpz_closed_points_count(uint64_t q, uint64_t m, char** out) {
  return guarded([&] {
    need(out, "out");
    *out = dup(dpz::closed_points_count(q, m).get_str());
  });
}

dpz_status dpz_tamagawa(int r, uint64_t q, uint64_t D, char** out) {
  return guarded([&] {
    need(out, "out");
    *out = dup(dpz::rational_string(dpz::tamagawa(r, q, D).value));
  });
}

dpz_status dpz_run(const char* config_text, dpz_report** out) {
  return guarded([&] {
    need(config_text, "config_text");
    need(out, "out");
    *out = new dpz_report{dpz::run(dpz::RunConfig::parse(config_text))};
  });
}

dpz_status dpz_report_text(const dpz_report* report, const char* format, char** out) {
  return guarded([&] {
    need(report, "report");
    need(out, "out");
    *out = dup(dpz::emit(report->table, format ? format : "csv"));
  });
}

void dpz_report_free(dpz_report* report) { delete report; }

void dpz_free_string(char* s) { std::free(s); }

}  // extern "C"
