#include "scembed/scembed.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "json.hpp"

#include "scembed/aperiodic.hpp"
#include "scembed/cstar.hpp"
#include "scembed/error.hpp"
#include "scembed/group_word.hpp"
#include "scembed/pipeline.hpp"

using nlohmann::json;

struct sce_session {
  json config;  // as given, merged with set() patches; parsed on demand
  json report = json::object();
};

namespace {

thread_local std::string last_error;

sce_status fail(sce_status s, const std::string& what) {
  last_error = what;
  return s;
}

template <typename F>
sce_status guarded(F&& f) {
  try {
    return f();
  } catch (const scembed::Error& e) {
    return fail(static_cast<sce_status>(static_cast<int>(e.category())), e.what());
  } catch (const json::exception& e) {
    return fail(SCE_INPUT_ERROR, std::string("JSON: ") + e.what());
  } catch (const std::bad_alloc&) {
    return fail(SCE_CAP_EXCEEDED, "out of memory");
  } catch (const std::exception& e) {
    return fail(SCE_INTERNAL, e.what());
  } catch (...) {
    return fail(SCE_INTERNAL, "unknown exception");
  }
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

sce_status need(const void* p, const char* what) {
  return p ? SCE_OK : fail(SCE_INPUT_ERROR, std::string(what) + " is null");
}

}  // namespace

extern "C" {

const char* sce_version(void) { return "0.1.0"; }

const char* sce_last_error(void) { return last_error.c_str(); }

void sce_free(char* s) { std::free(s); }

sce_status sce_session_create(const char* config_json, sce_session** out) {
  if (auto s = need(out, "out")) return s;
  *out = nullptr;
  return guarded([&] {
    json doc = config_json ? json::parse(config_json) : json::object();
    scembed::config_from_json(doc);
    *out = new sce_session{std::move(doc)};
    return SCE_OK;
  });
}

void sce_session_destroy(sce_session* session) { delete session; }

sce_status sce_session_set(sce_session* session, const char* key, const char* json_value) {
  if (auto s = need(session, "session")) return s;
  if (auto s = need(key, "key")) return s;
  if (auto s = need(json_value, "value")) return s;
  return guarded([&] {
    json next = session->config;
    next[key] = json::parse(json_value);
    scembed::config_from_json(next);
    session->config = std::move(next);
    return SCE_OK;
  });
}

sce_status sce_session_config_json(const sce_session* session, char** out) {
  if (auto s = need(session, "session")) return s;
  if (auto s = need(out, "out")) return s;
  return guarded([&] {
    *out = dup(scembed::config_to_json(scembed::config_from_json(session->config)).dump(2));
    return SCE_OK;
  });
}

sce_status sce_run(sce_session* session, const char* command) {
  if (auto s = need(session, "session")) return s;
  if (auto s = need(command, "command")) return s;
  return guarded([&] {
    session->report = json::object();
    json r = scembed::run_command(scembed::config_from_json(session->config), command);
    const int status = r.value("status", 0);
    session->report = std::move(r);
    if (status != 0) return fail(SCE_VERIFY_FAILED, "verification failed");
    return SCE_OK;
  });
}

sce_status sce_session_report_json(const sce_session* session, char** out) {
  if (auto s = need(session, "session")) return s;
  if (auto s = need(out, "out")) return s;
  return guarded([&] {
    *out = dup(session->report.dump(2));
    return SCE_OK;
  });
}

sce_status sce_is_aperiodic(const char* word, unsigned exponent, int* out) {
  if (auto s = need(word, "word")) return s;
  if (auto s = need(out, "out")) return s;
  return guarded([&] {
    *out = scembed::is_l_aperiodic(word, exponent) ? 1 : 0;
    return SCE_OK;
  });
}

sce_status sce_free_reduce(const char* word, char** out) {
  if (auto s = need(word, "word")) return s;
  if (auto s = need(out, "out")) return s;
  return guarded([&] {
    scembed::require_group_word(word);
    *out = dup(scembed::free_reduce(word));
    return SCE_OK;
  });
}

sce_status sce_lcf_cyclic(const char* u, const char* v, size_t* out) {
  if (auto s = need(u, "u")) return s;
  if (auto s = need(v, "v")) return s;
  if (auto s = need(out, "out")) return s;
  return guarded([&] {
    scembed::require_group_word(u);
    scembed::require_group_word(v);
    *out = scembed::lcf_cyclic(scembed::CyclicWord(u), scembed::CyclicWord(v));
    return SCE_OK;
  });
}

sce_status sce_check_cstar(const char* const* words, size_t count, const char* lambda, int* out) {
  if (auto s = need(lambda, "lambda")) return s;
  if (auto s = need(out, "out")) return s;
  if (count > 0) {
    if (auto s = need(words, "words")) return s;
  }
  return guarded([&] {
    std::vector<std::string> family;
    family.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      if (!words[i]) return fail(SCE_INPUT_ERROR, "words[" + std::to_string(i) + "] is null");
      scembed::require_group_word(words[i]);
      family.emplace_back(words[i]);
    }
    *out = scembed::check_cstar(family, scembed::parse_rational(lambda)).passed ? 1 : 0;
    return SCE_OK;
  });
}

}  // extern "C"
