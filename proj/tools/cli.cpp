#include "cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "univrank/bounds.hpp"
#include "univrank/config.hpp"
#include "univrank/cubicfields.hpp"
#include "univrank/errors.hpp"
#include "univrank/galois.hpp"
#include "univrank/lattice.hpp"
#include "univrank/pipeline.hpp"
#include "univrank/quadfields.hpp"

namespace univrank::cli {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_json(const std::string& text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && (text[pos] == '{' || text[pos] == '[');
}

nlohmann::json parse_json_text(const std::string& text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception&) {
    throw UsageError("invalid JSON argument");
  }
}

void render_human(const nlohmann::json& j, std::ostream& out, const std::string& indent = "") {
  if (!j.is_object()) {
    out << indent << j.dump() << "\n";
    return;
  }
  std::size_t width = 0;
  for (auto it = j.begin(); it != j.end(); ++it) width = std::max(width, it.key().size());
  for (auto it = j.begin(); it != j.end(); ++it) {
    out << indent << it.key() << std::string(width - it.key().size() + 2, ' ');
    const auto& v = it.value();
    if (v.is_object()) {
      out << "\n";
      render_human(v, out, indent + "  ");
    } else if (v.is_array() && v.dump().size() > 60) {
      out << "[" << v.size() << " items]\n";
    } else if (v.is_string()) {
      out << v.get<std::string>() << "\n";
    } else {
      out << v.dump() << "\n";
    }
  }
}

nlohmann::json elements_json(const std::vector<AlgebraicInt>& els) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : els) out.push_back(coords_to_json(e.coords()));
  return out;
}

std::vector<AlgebraicInt> to_elements(const FieldPtr& f, const std::vector<Coords>& cs) {
  std::vector<AlgebraicInt> out;
  for (const auto& c : cs) {
    f->check_coords(c);
    out.emplace_back(f, c);
  }
  return out;
}

int error_code(ErrorKind k) { return static_cast<int>(k); }

std::string kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::usage:
      return "usage";
    case ErrorKind::hypothesis:
      return "hypothesis";
    case ErrorKind::budget:
      return "budget";
  }
  return "usage";
}

void emit_error(std::ostream& err, ErrorKind kind, const std::string& message) {
  err << nlohmann::json{{"error", kind_name(kind)}, {"message", message}, {"exit_code", error_code(kind)}}.dump()
      << "\n";
}

}  // namespace

nlohmann::json read_json_arg(const std::string& text) {
  if (looks_like_json(text)) return parse_json_text(text);
  return parse_json_text(slurp(text));
}

FieldPtr resolve_field(const std::string& spec) {
  if (spec == "rationals" || spec == "Q") return NumberField::rationals();
  const auto colon = spec.find(':');
  if (!looks_like_json(spec) && colon != std::string::npos) {
    const std::string kind = spec.substr(0, colon);
    const std::string arg = spec.substr(colon + 1);
    if (kind == "quadratic") return real_quadratic_field(parse_integer(arg));
    if (kind == "cubic") return simplest_cubic(parse_integer(arg)).field;
    if (kind == "poly") return NumberField::from_polynomial(parse_poly(arg));
    throw UsageError("unknown field kind '" + kind + "'");
  }
  auto j = read_json_arg(spec);
  if (j.is_object() && j.contains("field") && !j.contains("min_poly")) j = j.at("field");
  if (j.is_string()) return resolve_field(j.get<std::string>());
  try {
    return NumberField::from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad field descriptor: ") + e.what());
  }
}

ZPoly parse_poly(const std::string& text) {
  ZPoly p;
  if (looks_like_json(text)) {
    auto j = parse_json_text(text);
    if (!j.is_array()) throw UsageError("polynomial must be a list of coefficients");
    for (const auto& c : j) p.push_back(integer_from_json(c));
  } else {
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) p.push_back(parse_integer(tok));
  }
  if (p.empty()) throw UsageError("empty polynomial");
  return p;
}

std::vector<Coords> parse_coords_list(const std::string& text) {
  auto j = read_json_arg(text);
  if (j.is_object() && j.contains("elements")) j = j.at("elements");
  if (!j.is_array()) throw UsageError("elements must be a JSON list of coordinate vectors");
  std::vector<Coords> out;
  try {
    for (const auto& e : j) out.push_back(coords_from_json(e));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad coordinate list: ") + e.what());
  }
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact toolkit for rank lower bounds of universal quadratic lattices", "univrank"};
  app.require_subcommand(1);
  bool human = false;
  std::string config_path;
  unsigned threads = 0;
  app.add_flag("--human", human, "tabular summary instead of JSON");
  app.add_option("--config", config_path, "JSON config file (default from $UNIVRANK_CONFIG)");
  app.add_option("--threads", threads, "worker threads for enumeration kernels");

  std::function<nlohmann::json(const RunConfig&, int&)> handler;
  auto on = [&](CLI::App* sub, std::function<nlohmann::json(const RunConfig&, int&)> h) {
    sub->callback([&handler, h] { handler = h; });
  };

  // schur-constant
  unsigned long schur_n = 0;
  std::string precision_text;
  auto* schur = app.add_subcommand("schur-constant", "enclosure of Schur's constant c_N");
  schur->add_option("N", schur_n)->required();
  schur->add_option("--precision", precision_text);
  on(schur, [&](const RunConfig& cfg, int&) {
    Rational prec = precision_text.empty() ? cfg.precision : parse_rational(precision_text);
    return schur_constant(schur_n, prec).to_json();
  });

  // bound-B
  unsigned long bk = 0, bl = 0;
  std::string b_elements, b_field;
  auto* boundb = app.add_subcommand("bound-B", "threshold B of the general theorem");
  boundb->add_option("--k", bk)->required();
  boundb->add_option("--l", bl)->required();
  boundb->add_option("--elements", b_elements, "JSON list of coordinate vectors")->required();
  boundb->add_option("--L", b_field, "field of the elements");
  boundb->add_option("--precision", precision_text);
  on(boundb, [&](const RunConfig& cfg, int&) {
    std::string spec = b_field;
    if (spec.empty()) {
      auto j = read_json_arg(b_elements);
      if (!j.is_object() || !j.contains("field")) throw UsageError("give --L or an elements object with a field");
      spec = j.at("field").dump();
    }
    auto L = resolve_field(spec);
    auto els = to_elements(L, parse_coords_list(b_elements));
    Rational prec = precision_text.empty() ? cfg.precision : parse_rational(precision_text);
    return compute_B(bk, bl, els, L, prec).to_json();
  });

  // cf
  std::string cf_d;
  std::size_t cf_conv = 0;
  auto* cf = app.add_subcommand("cf", "continued fraction of sqrt(D)");
  cf->add_option("D", cf_d)->required();
  cf->add_option("--convergents", cf_conv, "also list this many convergents");
  on(cf, [&](const RunConfig&, int&) {
    auto e = cf_sqrt(parse_integer(cf_d));
    auto j = e.to_json();
    if (cf_conv > 0) {
      nlohmann::json cs = nlohmann::json::array();
      for (const auto& c : convergents(e, cf_conv)) {
        cs.push_back({{"p", c.p.get_str()}, {"q", c.q.get_str()}, {"norm", c.norm.get_str()}});
      }
      j["convergents"] = cs;
    }
    return j;
  });

  // indecomposables
  std::string ind_d, ind_t;
  auto* ind = app.add_subcommand("indecomposables", "indecomposable totally positive integers of Q(sqrt D)");
  ind->add_option("D", ind_d)->required();
  ind->add_option("--trace-bound", ind_t)->required();
  on(ind, [&](const RunConfig&, int&) {
    auto field = real_quadratic_field(parse_integer(ind_d));
    auto els = indecomposables(field, parse_integer(ind_t));
    return nlohmann::json{{"field", field->to_json()}, {"count", els.size()}, {"elements", elements_json(els)}};
  });

  // rank-elements
  std::string re_d, re_t = "200";
  std::size_t re_m = 0;
  auto* re = app.add_subcommand("rank-elements", "elements whose Gram matrix is forced to be diagonal");
  re->add_option("D", re_d)->required();
  re->add_option("--m", re_m)->required();
  re->add_option("--trace-bound", re_t, "search trace bound");
  on(re, [&](const RunConfig&, int& code) {
    const Integer D = parse_integer(re_d);
    auto els = rank_forcing_elements(D, re_m, parse_integer(re_t));
    nlohmann::json j{{"D", D.get_str()}, {"m", re_m}, {"found", els.has_value()}};
    j["elements"] = els ? elements_json(*els) : nlohmann::json::array();
    if (!els) code = error_code(ErrorKind::hypothesis);
    return j;
  });

  // simplest-cubic
  std::string sc_a;
  auto* sc = app.add_subcommand("simplest-cubic", "Shanks' simplest cubic field for parameter a");
  sc->add_option("A", sc_a)->required();
  on(sc, [&](const RunConfig&, int&) {
    auto L = simplest_cubic(parse_integer(sc_a));
    auto j = L.to_json();
    nlohmann::json dual = nlohmann::json::array();
    for (const auto& d : codifferent_basis(L)) dual.push_back(d.to_json());
    j["codifferent_basis"] = dual;
    return j;
  });

  // trace-one
  std::string to_a, to_bound = "10";
  auto* to = app.add_subcommand("trace-one", "totally positive a with Tr(delta a) = 1");
  to->add_option("A", to_a)->required();
  to->add_option("--delta-bound", to_bound, "coordinate bound for delta over the codifferent basis");
  on(to, [&](const RunConfig&, int&) {
    auto L = simplest_cubic(parse_integer(to_a));
    auto delta = positive_codifferent_element(L, parse_integer(to_bound));
    auto els = trace_one_elements(L.field, delta.delta);
    nlohmann::json dual = nlohmann::json::array();
    for (const auto& c : delta.dual_coords) dual.push_back(c.get_str());
    const Integer n(static_cast<unsigned long>(els.size()));
    return nlohmann::json{{"a", L.a.get_str()},
                          {"delta", delta.delta.to_json()},
                          {"delta_dual_coords", dual},
                          {"n", els.size()},
                          {"cubic_rank_bound", n > 0 ? cubic_rank_bound(n).get_str() : "0"},
                          {"elements", elements_json(els)}};
  });

  // certify-rank
  std::string cr_field, cr_elements;
  auto* cr = app.add_subcommand("certify-rank", "diagonal Gram certificate for a list of elements");
  cr->add_option("--L", cr_field, "field spec")->required();
  cr->add_option("--elements", cr_elements, "JSON list of coordinate vectors")->required();
  on(cr, [&](const RunConfig&, int& code) {
    auto L = resolve_field(cr_field);
    auto cert = diagonality_certificate(to_elements(L, parse_coords_list(cr_elements)));
    auto replay = replay_certificate(cert);
    auto j = cert.to_json();
    j["replay"] = {{"ok", replay.ok}, {"problems", replay.problems}};
    if (!cert.valid || !replay.ok) code = error_code(ErrorKind::hypothesis);
    return j;
  });

  // check-universal
  std::string cu_form, cu_t, cu_alpha;
  auto* cu = app.add_subcommand("check-universal", "missed totally positive elements up to a trace bound");
  cu->add_option("--form", cu_form, "{\"field\": spec or descriptor, \"gram\": [[coords]]}")->required();
  cu->add_option("--trace-bound", cu_t)->required();
  cu->add_option("--represent", cu_alpha, "also test one element (coordinates)");
  on(cu, [&](const RunConfig&, int&) {
    auto j = read_json_arg(cu_form);
    if (!j.is_object() || !j.contains("field")) throw UsageError("form needs a field");
    const auto& fj = j.at("field");
    auto field = fj.is_string() ? resolve_field(fj.get<std::string>()) : resolve_field(fj.dump());
    auto form = QuadLatticeForm::from_json(j, field);
    auto out_json = universality_check(form, parse_integer(cu_t)).to_json();
    if (!cu_alpha.empty()) {
      auto coords = coords_from_json(read_json_arg(cu_alpha));
      field->check_coords(coords);
      auto rep = represents(form, AlgebraicInt(field, coords));
      nlohmann::json w = nlohmann::json::array();
      for (const auto& x : rep.witness) w.push_back(x.get_str());
      out_json["representation"] = {{"represented", rep.represented}, {"witness", w}};
    }
    return out_json;
  });

  // verify-lemma
  int vl_k = 0, vl_l = 0;
  auto* vl = app.add_subcommand("verify-lemma", "subgroups between S_{k-1} x 1 and S_k x C_l");
  vl->add_option("--k", vl_k)->required();
  vl->add_option("--l", vl_l)->required();
  on(vl, [&](const RunConfig&, int& code) {
    auto r = verify_subgroup_lemma(vl_k, vl_l);
    if (!r.holds) code = error_code(ErrorKind::hypothesis);
    return r.to_json();
  });

  // certify-sk
  std::string sk_poly;
  std::int64_t sk_budget = 0;
  auto* sk = app.add_subcommand("certify-sk", "certify that a polynomial has Galois group S_k");
  sk->add_option("--poly", sk_poly, "coefficients, lowest degree first")->required();
  sk->add_option("--prime-budget", sk_budget);
  on(sk, [&](const RunConfig& cfg, int&) {
    return certify_Sk(parse_poly(sk_poly), sk_budget > 0 ? sk_budget : cfg.prime_budget).to_json();
  });

  // pipeline
  unsigned long pd = 0, pm = 0;
  std::string p_L, p_K, p_out, p_t;
  auto* pipe = app.add_subcommand("pipeline", "assemble a certificate that m(KL) >= m");
  pipe->add_option("--d", pd)->required();
  pipe->add_option("--m", pm)->required();
  pipe->add_option("--L", p_L, "quadratic:D or cubic:a (default: scan)");
  pipe->add_option("--K-poly", p_K, "coefficients of K (default: scan a family)");
  pipe->add_option("--out", p_out, "also write the certificate here");
  pipe->add_option("--trace-bound", p_t, "search trace bound for the quadratic branch");
  pipe->add_option("--precision", precision_text);
  on(pipe, [&](const RunConfig& cfg, int& code) {
    PipelineOptions o;
    o.d = pd;
    o.m = pm;
    o.L_choice = p_L;
    if (!p_K.empty()) o.K_poly = parse_poly(p_K);
    o.precision = precision_text.empty() ? cfg.precision : parse_rational(precision_text);
    o.prime_budget = cfg.prime_budget;
    if (!p_t.empty()) o.search_trace_bound = parse_integer(p_t);
    auto cert = run_pipeline(o);
    const std::string path = p_out.empty() ? cfg.output_path : p_out;
    if (!path.empty()) {
      std::ofstream f(path);
      if (!f) throw UsageError("cannot write " + path);
      f << cert.dump(2) << "\n";
    }
    if (!cert.at("valid").get<bool>()) code = error_code(ErrorKind::hypothesis);
    return cert;
  });

  // verify-certificate
  std::string vc_path;
  auto* vc = app.add_subcommand("verify-certificate", "replay every claim of a pipeline certificate");
  vc->add_option("CERT", vc_path, "certificate file or inline JSON")->required();
  on(vc, [&](const RunConfig&, int& code) {
    auto r = verify_certificate(read_json_arg(vc_path));
    if (!r.ok) code = error_code(ErrorKind::hypothesis);
    return r.to_json();
  });

  // field
  std::string f_spec;
  auto* fld = app.add_subcommand("field", "field descriptor for a spec");
  fld->add_option("SPEC", f_spec)->required();
  on(fld, [&](const RunConfig&, int&) {
    auto f = resolve_field(f_spec);
    auto j = f->to_json();
    nlohmann::json roots = nlohmann::json::array();
    for (const auto& r : f->root_intervals()) roots.push_back({to_string(r.lo()), to_string(r.hi())});
    j["root_intervals"] = roots;
    j["degree"] = f->degree();
    return j;
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    emit_error(err, ErrorKind::usage, e.what());
    return error_code(ErrorKind::usage);
  }
  try {
    RunConfig cfg = load_config(config_path);
    if (threads > 0) cfg.thread_count = threads;
    cfg.validate();
    cfg.apply();
    int code = 0;
    nlohmann::json result = handler(cfg, code);
    if (human) {
      render_human(result, out);
    } else {
      out << result.dump() << "\n";
    }
    return code;
  } catch (const Error& e) {
    emit_error(err, e.kind(), e.what());
    return error_code(e.kind());
  } catch (const std::exception& e) {
    emit_error(err, ErrorKind::usage, e.what());
    return error_code(ErrorKind::usage);
  }
}

}  // namespace univrank::cli
