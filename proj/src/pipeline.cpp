#include "scembed/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "scembed/error.hpp"
#include "scembed/metric.hpp"

namespace scembed {

using nlohmann::json;
namespace fs = std::filesystem;

PipelineConfig config_defaults(Mode mode) {
  PipelineConfig c;
  c.mode = mode;
  if (mode == Mode::strict) {
    c.family = FamilyKind::block;
    c.exponent = 6;
    c.prefix_run = 6;
    c.cutoff = true;
    c.oracle = false;
  }
  return c;
}

namespace {

const char* mode_name(Mode m) { return m == Mode::strict ? "strict" : "relaxed"; }
const char* family_name(FamilyKind k) { return k == FamilyKind::block ? "block" : "short"; }

template <typename T>
T get_as(const json& v, const std::string& key) {
  try {
    return v.get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::bad_config, "config key '" + key + "' has the wrong type: " + v.dump());
  }
}

}  // namespace

PipelineConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::bad_config, "config must be a JSON object");
  Mode mode = Mode::relaxed;
  if (auto m = doc.find("mode"); m != doc.end()) {
    const std::string s = get_as<std::string>(*m, "mode");
    if (s == "strict") {
      mode = Mode::strict;
    } else if (s != "relaxed") {
      throw Error(ErrorCode::bad_config, "mode must be 'strict' or 'relaxed', got '" + s + "'");
    }
  }
  PipelineConfig c = config_defaults(mode);
  for (const auto& [key, v] : doc.items()) {
    if (key == "mode") continue;
    if (key == "family") {
      const std::string s = get_as<std::string>(v, key);
      if (s == "block") {
        c.family = FamilyKind::block;
      } else if (s == "short") {
        c.family = FamilyKind::short_words;
      } else {
        throw Error(ErrorCode::bad_config, "family must be 'block' or 'short', got '" + s + "'");
      }
    } else if (key == "exponent") {
      c.exponent = get_as<unsigned>(v, key);
    } else if (key == "prefix_run") {
      c.prefix_run = get_as<unsigned>(v, key);
    } else if (key == "threshold") {
      try {
        c.threshold = rational_from_json(v);
      } catch (const Error&) {
        throw Error(ErrorCode::bad_config, "threshold must be a rational, got " + v.dump());
      }
    } else if (key == "cutoff") {
      c.cutoff = get_as<bool>(v, key);
    } else if (key == "max_stage") {
      c.max_stage = get_as<std::size_t>(v, key);
    } else if (key == "seed") {
      c.seed = get_as<std::uint64_t>(v, key);
    } else if (key == "workers") {
      c.workers = get_as<unsigned>(v, key);
    } else if (key == "presentation") {
      c.presentation = get_as<std::string>(v, key);
    } else if (key == "max_cycle_edges") {
      c.max_cycle_edges = get_as<std::size_t>(v, key);
    } else if (key == "gap") {
      c.gap = get_as<bool>(v, key);
    } else if (key == "max_relators") {
      c.max_relators = get_as<std::uint64_t>(v, key);
    } else if (key == "max_relator_letters") {
      c.max_relator_letters = get_as<std::uint64_t>(v, key);
    } else if (key == "retention_trials") {
      c.retention_trials = get_as<std::size_t>(v, key);
    } else if (key == "retention_max_edges") {
      c.retention_max_edges = get_as<std::size_t>(v, key);
    } else if (key == "oracle") {
      c.oracle = get_as<bool>(v, key);
    } else if (key == "oracle_radius") {
      c.oracle_radius = get_as<unsigned>(v, key);
    } else if (key == "oracle_ball_cap") {
      c.oracle_ball_cap = get_as<std::uint64_t>(v, key);
    } else if (key == "oracle_max_relator") {
      c.oracle_max_relator = get_as<std::size_t>(v, key);
    } else if (key == "oracle_quotient_degree") {
      c.oracle_quotient_degree = get_as<unsigned>(v, key);
    } else if (key == "family_lengths") {
      c.family_lengths = get_as<std::vector<std::uint64_t>>(v, key);
    } else if (key == "family_count") {
      c.family_count = get_as<std::uint64_t>(v, key);
    } else if (key == "space") {
      c.space = get_as<std::string>(v, key);
    } else if (key == "out") {
      c.out = get_as<std::string>(v, key);
    } else {
      throw Error(ErrorCode::bad_config, "unknown config key '" + key + "'");
    }
  }
  validate_config(c);
  return c;
}

void validate_config(const PipelineConfig& c) {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::bad_config, what); };
  if (c.mode == Mode::strict) {
    if (c.family != FamilyKind::block) fail("strict mode uses the block family");
    if (c.exponent != 6) fail("strict mode fixes exponent = 6");
    if (c.prefix_run != 6) fail("strict mode fixes prefix_run = 6");
    if (c.threshold != Rational(1, 50)) fail("strict mode fixes threshold = 1/50");
    if (!c.cutoff) fail("strict mode keeps the lambda cutoff");
  }
  if (c.exponent < 2) fail("exponent must be >= 2");
  if (c.threshold <= 0 || c.threshold >= Rational(1, 2)) fail("threshold must lie in (0, 1/2)");
  if (c.max_stage < 1) fail("max_stage must be >= 1");
  if (c.workers < 1) fail("workers must be >= 1");
  if (c.presentation != "triangles" && c.presentation != "cycles") fail("presentation must be 'triangles' or 'cycles'");
  if (c.max_cycle_edges < 3) fail("max_cycle_edges must be >= 3");
  if (c.retention_max_edges < 1) fail("retention_max_edges must be >= 1");
  if (c.oracle_radius > 14) fail("oracle_radius must be <= 14");
  if (c.oracle_quotient_degree > 8) fail("oracle_quotient_degree must be <= 8");
  if (c.out.empty()) fail("out must name a directory");
}

json config_to_json(const PipelineConfig& c) {
  return {{"mode", mode_name(c.mode)},
          {"family", family_name(c.family)},
          {"exponent", c.exponent},
          {"prefix_run", c.prefix_run},
          {"threshold", to_string(c.threshold)},
          {"cutoff", c.cutoff},
          {"max_stage", c.max_stage},
          {"seed", c.seed},
          {"workers", c.workers},
          {"presentation", c.presentation},
          {"max_cycle_edges", c.max_cycle_edges},
          {"gap", c.gap},
          {"max_relators", c.max_relators},
          {"max_relator_letters", c.max_relator_letters},
          {"retention_trials", c.retention_trials},
          {"retention_max_edges", c.retention_max_edges},
          {"oracle", c.oracle},
          {"oracle_radius", c.oracle_radius},
          {"oracle_ball_cap", c.oracle_ball_cap},
          {"oracle_max_relator", c.oracle_max_relator},
          {"oracle_quotient_degree", c.oracle_quotient_degree},
          {"family_lengths", c.family_lengths},
          {"family_count", c.family_count},
          {"space", c.space},
          {"out", c.out}};
}

WordFamily make_family(const PipelineConfig& c) {
  FamilyConfig fc;
  fc.kind = c.family;
  fc.block.exponent = c.exponent;
  fc.block.prefix_run = c.prefix_run;
  fc.cutoff = c.cutoff;
  fc.threshold = c.threshold;
  return WordFamily(fc);
}

VerifyOptions verify_options(const PipelineConfig& c) {
  VerifyOptions v;
  v.retention_trials = c.retention_trials;
  v.retention_max_edges = c.retention_max_edges;
  v.seed = c.seed;
  v.workers = c.workers;
  v.oracle = c.oracle;
  v.oracle_max_relator = c.oracle_max_relator;
  v.oracle_options.radius = c.oracle_radius;
  v.oracle_options.max_ball = c.oracle_ball_cap;
  v.oracle_options.max_quotient_degree = c.oracle_quotient_degree;
  return v;
}

PresentationOptions presentation_options(const PipelineConfig& c) {
  PresentationOptions p;
  p.mode = c.presentation == "cycles" ? PresentationMode::cycles : PresentationMode::triangles;
  p.max_cycle_edges = c.max_cycle_edges;
  p.max_relators = c.max_relators;
  p.max_letters = c.max_relator_letters;
  return p;
}

void write_family_text(std::ostream& out, const std::vector<FamilyRecord>& records) {
  out << "# n k i part pad word\n";
  for (const auto& r : records) {
    out << r.n << ' ' << r.k << ' ' << r.index << ' ' << r.part << ' ' << r.pad << ' ' << r.word << '\n';
  }
}

std::vector<FamilyRecord> read_family_text(std::istream& in) {
  std::vector<FamilyRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    FamilyRecord r;
    if (!(fields >> r.n >> r.k >> r.index >> r.part >> r.pad >> r.word) || r.word.size() != r.n) {
      throw Error(ErrorCode::parse, "bad family record on line " + std::to_string(lineno));
    }
    std::string extra;
    if (fields >> extra) throw Error(ErrorCode::parse, "trailing fields on family line " + std::to_string(lineno));
    out.push_back(std::move(r));
  }
  return out;
}

json family_manifest(const PipelineConfig& c, const std::vector<FamilyRecord>& records) {
  std::map<std::uint64_t, std::pair<std::size_t, const FamilyRecord*>> per_n;
  for (const auto& r : records) {
    auto& slot = per_n[r.n];
    if (slot.first++ == 0) slot.second = &r;
  }
  json lengths = json::array();
  for (const auto& [n, info] : per_n) {
    lengths.push_back({{"n", n}, {"count", info.first}, {"k", info.second->k}, {"part", info.second->part},
                       {"pad", info.second->pad}});
  }
  const WordFamily family = make_family(c);
  json out = {{"family", family_name(c.family)},
              {"exponent", c.exponent},
              {"prefix_run", c.prefix_run},
              {"cutoff", c.cutoff},
              {"threshold", to_string(c.threshold)},
              {"total_words", records.size()},
              {"lengths", std::move(lengths)}};
  if (c.cutoff) out["cutoff_n"] = family.lambda().cutoff_n();
  return out;
}

namespace {

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::io, "cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw Error(ErrorCode::io, "write to '" + path.string() + "' failed");
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot read '" + path.string() + "' (run the earlier command first)");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

json read_json(const fs::path& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse, "'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

class Workspace {
 public:
  explicit Workspace(const PipelineConfig& c) : config_(c), dir_(c.out) {}

  // Creates the directory on the first write only.
  void put(const std::string& name, const std::string& content) {
    if (!created_) {
      std::error_code ec;
      fs::create_directories(dir_, ec);
      if (ec) throw Error(ErrorCode::io, "cannot create '" + dir_.string() + "': " + ec.message());
      created_ = true;
      json recorded = config_to_json(config_);
      recorded.erase("out");
      write_file(dir_ / "config.json", dump(recorded));
    }
    write_file(dir_ / name, content);
  }
  fs::path path(const std::string& name) const { return dir_ / name; }

 private:
  const PipelineConfig& config_;
  fs::path dir_;
  bool created_ = false;
};

struct Loaded {
  SpaceFile file;
  Exhaustion exhaustion;
};

Loaded load_space(const PipelineConfig& c) {
  if (c.space.empty()) throw Error(ErrorCode::bad_config, "no space file configured");
  SpaceFile file = load_space_file(c.space);
  Exhaustion ex(file.space, file.exhaustion);
  return {std::move(file), std::move(ex)};
}

std::vector<FamilyRecord> label_records(const std::vector<StageLabels>& stages) {
  std::vector<FamilyRecord> out;
  for (const auto& st : stages) {
    for (const auto& e : st.edges) out.push_back(e.source);
  }
  return out;
}

json net_sizes(const std::vector<Net>& nets) {
  json s = json::array();
  for (const auto& n : nets) s.push_back(n.members.size());
  return s;
}

std::vector<std::string> presentation_words(const Workspace& ws) {
  std::ifstream in(ws.path("presentation.txt"));
  if (!in) throw Error(ErrorCode::io, "cannot read '" + ws.path("presentation.txt").string() + "'");
  return read_presentation_text(in);
}

void put_presentation(Workspace& ws, const PipelineConfig& c, const FiniteMetricSpace& space, const Presentation& p,
                      const std::vector<StageLabels>& stages) {
  std::ostringstream text;
  write_presentation_text(text, p);
  ws.put("presentation.txt", text.str());
  ws.put("presentation.json", dump(presentation_to_json(space, p, stages)));
  if (c.gap) ws.put("presentation.g", presentation_gap(p) + "\n");
}

json verify_summary(const VerifyReport& r) {
  json failures = json::array();
  for (const auto& s : r.stages) {
    for (const auto& f : s.failures) failures.push_back("stage " + std::to_string(s.stage) + ": " + f);
  }
  if (!r.global.ok()) failures.push_back("labels: " + r.global.witness);
  return {{"verified", r.passed}, {"failures", std::move(failures)}};
}

}  // namespace

json run_command(const PipelineConfig& c, const std::string& command) {
  validate_config(c);
  Workspace ws(c);
  json summary = {{"command", command}, {"status", 0}, {"out", c.out}};

  if (command == "family") {
    if (c.family_lengths.empty()) throw Error(ErrorCode::bad_config, "family needs family_lengths");
    const WordFamily family = make_family(c);
    std::map<std::uint64_t, std::uint64_t> demand;
    for (std::uint64_t n : c.family_lengths) demand[n] = c.family_count;
    auto built = family.materialize_many(demand);
    std::vector<FamilyRecord> records;
    for (auto& [n, rs] : built) {
      for (auto& r : rs) records.push_back(std::move(r));
    }
    std::ostringstream text;
    write_family_text(text, records);
    ws.put("family.txt", text.str());
    ws.put("family.json", dump(family_manifest(c, records)));
    summary["words"] = records.size();
    return summary;
  }

  if (command == "nets") {
    Loaded in = load_space(c);
    auto nets = build_nets(in.file.space, in.exhaustion, c.max_stage);
    ws.put("nets.json", dump(nets_to_json(in.file.space, nets)));
    summary["net_sizes"] = net_sizes(nets);
    return summary;
  }

  if (command == "label") {
    Loaded in = load_space(c);
    const auto& space = in.file.space;
    auto nets = nets_from_json(space, read_json(ws.path("nets.json")));
    for (std::size_t s = 0; s < nets.size(); ++s) {
      NetCheck chk = check_net(space, in.exhaustion, nets[s], s == 0 ? nullptr : &nets[s - 1]);
      if (!chk.ok()) throw Error(ErrorCode::parse, "nets.json stage " + std::to_string(s + 1) + ": " + chk.witness);
    }
    const WordFamily family = make_family(c);
    const ScalingSequence scaling = choose_scaling(space, in.exhaustion, nets, family);
    const ScalingCheck sc = check_scaling(space, in.exhaustion, nets, family, scaling);
    if (!sc.ok()) throw Error(ErrorCode::infeasible, "scaling check failed: " + sc.witness);
    auto labels = label_edges(space, nets, scaling, family);
    const LabelCheck lc = check_labels(space, labels);
    if (!lc.ok()) throw Error(ErrorCode::infeasible, "label check failed: " + lc.witness);
    const auto records = label_records(labels);
    std::ostringstream text;
    write_family_text(text, records);
    ws.put("scaling.json", dump(scaling_to_json(scaling)));
    ws.put("labels.json", dump(labels_to_json(space, labels)));
    ws.put("family.txt", text.str());
    ws.put("family.json", dump(family_manifest(c, records)));
    summary["labels"] = records.size();
    return summary;
  }

  if (command == "present") {
    Loaded in = load_space(c);
    auto labels = labels_from_json(in.file.space, read_json(ws.path("labels.json")));
    const Presentation p = emit_presentation(labels, presentation_options(c));
    put_presentation(ws, c, in.file.space, p, labels);
    summary["relators"] = p.relators.size();
    return summary;
  }

  if (command == "verify") {
    Loaded in = load_space(c);
    const auto& space = in.file.space;
    auto labels = labels_from_json(space, read_json(ws.path("labels.json")));
    const Presentation p = presentation_from_json(space, read_json(ws.path("presentation.json")), presentation_words(ws));
    const VerifyReport r = verify_all(space, labels, p, verify_options(c));
    ws.put("verify.json", dump(verify_to_json(space, r)));
    ws.put("verify.txt", verify_to_text(space, r));
    summary.update(verify_summary(r));
    summary["status"] = r.passed ? 0 : 1;
    return summary;
  }

  if (command == "pipeline") {
    Loaded in = load_space(c);
    const auto& space = in.file.space;
    const WordFamily family = make_family(c);
    auto nets = build_nets(space, in.exhaustion, c.max_stage);
    ws.put("nets.json", dump(nets_to_json(space, nets)));
    const ScalingSequence scaling = choose_scaling(space, in.exhaustion, nets, family);
    const ScalingCheck sc = check_scaling(space, in.exhaustion, nets, family, scaling);
    if (!sc.ok()) throw Error(ErrorCode::infeasible, "scaling check failed: " + sc.witness);
    ws.put("scaling.json", dump(scaling_to_json(scaling)));
    auto labels = label_edges(space, nets, scaling, family);
    const auto records = label_records(labels);
    std::ostringstream text;
    write_family_text(text, records);
    ws.put("labels.json", dump(labels_to_json(space, labels)));
    ws.put("family.txt", text.str());
    ws.put("family.json", dump(family_manifest(c, records)));
    const Presentation p = emit_presentation(labels, presentation_options(c));
    put_presentation(ws, c, space, p, labels);
    const VerifyReport r = verify_all(space, labels, p, verify_options(c));
    ws.put("verify.json", dump(verify_to_json(space, r)));
    ws.put("verify.txt", verify_to_text(space, r));
    summary["net_sizes"] = net_sizes(nets);
    json ns = json::array();
    for (const auto& st : scaling.stages) ns.push_back(st.n);
    summary["n"] = std::move(ns);
    summary["labels"] = records.size();
    summary["relators"] = p.relators.size();
    summary.update(verify_summary(r));
    summary["status"] = r.passed ? 0 : 1;
    return summary;
  }

  throw Error(ErrorCode::bad_config, "unknown command '" + command + "'");
}

}  // namespace scembed
