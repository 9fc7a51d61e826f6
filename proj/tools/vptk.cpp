// Command-line front end.
//
// Exit codes: 0 success, 1 rejected input or failed check, 2 usage, parse
// or model errors, 3 counterexample found by `equiv`.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "vptk/error.hpp"
#include "vptk/oracle.hpp"
#include "vptk/text.hpp"
#include "vptk/translate.hpp"

using namespace vptk;

namespace {

constexpr int kOk = 0;
constexpr int kRejected = 1;
constexpr int kUsage = 2;
constexpr int kCounterexample = 3;

std::set<Symbol> split_list(const std::string& s) {
  std::set<Symbol> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    for (auto& word : parse_tokens(item)) out.insert(word);
  }
  return out;
}

// builtin:NAME:LABELS, e.g. builtin:mirror:a,b
Model load(const std::string& path) {
  const std::string prefix = "builtin:";
  if (path.rfind(prefix, 0) != 0) return load_model(path);
  const std::string rest = path.substr(prefix.size());
  const auto colon = rest.find(':');
  if (colon == std::string::npos)
    throw Error("expected builtin:NAME:LABELS, got '" + path + "'");
  return builtin(rest.substr(0, colon), split_list(rest.substr(colon + 1)));
}

void print_outputs(const OutputSet& outs) {
  for (const auto& o : outs) std::cout << format_word(o) << '\n';
}

struct RunArgs {
  std::string model;
  std::string input;
  bool as_word = false;
  bool as_hedge = false;
  std::size_t limit = kDefaultOutputLimit;
};

int cmd_run(const RunArgs& args) {
  const Model m = load(args.model);
  OutputSet outs;
  if (const auto* a = std::get_if<Vpt>(&m)) {
    const Word tokens =
        args.as_hedge ? names_of(lin(parse_hedge(args.input))) : parse_tokens(args.input);
    const NestedWord w = a->input_alphabet().resolve(tokens);
    outs = run_all(*a, w, args.limit);
  } else {
    const H2s& t = std::get<H2s>(m);
    if (args.as_word) {
      const H2s paired = over_pairs(t);
      const NestedWord w =
          product_components(paired.input_alphabet())->resolve(parse_tokens(args.input));
      if (!is_well_nested(w)) return kRejected;
      outs = eval(paired, hedge_of(w), args.limit);
    } else {
      outs = eval(t, parse_hedge(args.input), args.limit);
    }
  }
  print_outputs(outs);
  return outs.empty() ? kRejected : kOk;
}

const std::map<std::string, std::string> kDirections = {
    {"h2b->h2h", "h2b->h2h"},   {"h2b→h2h", "h2b->h2h"},   {"vpt->h2s", "vpt->h2s"},
    {"vpt→h2s", "vpt->h2s"},    {"h2s->vpt", "h2s->vpt"},  {"h2s→vpt", "h2s->vpt"},
    {"vpt-bot->h2s", "vpt-bot->h2s"}, {"vpt⊥→h2s", "vpt-bot->h2s"},
    {"h2s->vpt-bot", "h2s->vpt-bot"}, {"h2s→vpt⊥", "h2s->vpt-bot"},
};

template <typename T>
const T& expect_kind(const Model& m, const char* what) {
  if (const auto* x = std::get_if<T>(&m)) return *x;
  throw Error(std::string("expected a ") + what + " model");
}

int cmd_translate(const std::string& direction, const std::string& in, const std::string& out) {
  const auto it = kDirections.find(direction);
  if (it == kDirections.end()) throw Error("unknown direction '" + direction + "'");
  const std::string& d = it->second;
  const Model src = load(in);
  std::optional<Model> result;
  TranslationReport report;
  if (d == "h2b->h2h") {
    const H2s& t = expect_kind<H2s>(src, "h2s");
    const H2s r = h2b_to_h2h(t);
    report = make_report(d, t.state_count(), r);
    result = r;
  } else if (d == "vpt->h2s") {
    const Vpt& a = expect_kind<Vpt>(src, "vpt");
    const H2s r = vpt_to_h2s_tr(a);
    report = make_report(d, a.state_count(), r);
    result = r;
  } else if (d == "h2s->vpt") {
    const H2s& t = expect_kind<H2s>(src, "h2s");
    const Vpt r = h2s_tr_to_vpt(t);
    report = make_report(d, t.state_count(), r);
    result = r;
  } else if (d == "vpt-bot->h2s") {
    const Vpt& a = expect_kind<Vpt>(src, "vpt");
    const H2s r = vpt_fcns_to_h2s(a);
    report = make_report(d, a.state_count(), r);
    result = r;
  } else {
    const H2s& t = expect_kind<H2s>(src, "h2s");
    const Vpt r = h2s_to_vpt_fcns(t);
    report = make_report(d, t.state_count(), r);
    result = r;
  }
  if (out == "-") {
    std::cout << to_text(*result);
  } else {
    save_model(out, *result);
  }
  std::cerr << format_report(report);
  return kOk;
}

int cmd_check(const std::string& predicate, const std::string& path) {
  const Model m = load(path);
  std::optional<std::size_t> bad;
  if (predicate == "wn") {
    const Vpt& a = expect_kind<Vpt>(m, "vpt");
    if (auto pair = find_non_well_nested_pair(a)) {
      std::cerr << "call transition " << pair->first << " and return transition "
                << pair->second << " emit a non-well-nested pair\n";
      bad = pair->first;
    }
  } else if (predicate == "tr") {
    bad = find_non_tail_recursive_rule(expect_kind<H2s>(m, "h2s"));
    if (bad) std::cerr << "rule " << *bad << " has a non-empty w3\n";
  } else if (predicate == "h2h") {
    bad = find_non_h2h_rule(expect_kind<H2s>(m, "h2s"));
    if (bad) std::cerr << "rule " << *bad << " does not output a well-nested word\n";
  } else if (predicate == "h2b") {
    bad = find_non_h2b_rule(expect_kind<H2s>(m, "h2s"));
    if (bad) std::cerr << "rule " << *bad << " has no hedge-to-binary-tree split\n";
  } else {
    throw Error("unknown predicate '" + predicate + "' (expected wn, tr, h2h or h2b)");
  }
  std::cout << (bad ? "no" : "yes") << '\n';
  return bad ? kRejected : kOk;
}

struct EquivArgs {
  std::string a;
  std::string b;
  std::size_t bound = 8;
  bool fcns = false;
  std::string format = "text";
};

int cmd_equiv(const EquivArgs& args) {
  const Model ma = load(args.a);
  const Model mb = load(args.b);
  EquivOptions opts;
  if (args.format == "records") {
    opts.collect_records = true;
    opts.stop_at_first = false;
  }
  Verdict v;
  const auto* va = std::get_if<Vpt>(&ma);
  const auto* vb = std::get_if<Vpt>(&mb);
  const auto* ta = std::get_if<H2s>(&ma);
  const auto* tb = std::get_if<H2s>(&mb);
  if (va && vb) {
    v = equiv_vpt_on_bounded(*va, *vb, args.bound, opts);
  } else if (ta && tb) {
    v = equiv_h2s_on_bounded(*ta, *tb, args.bound, args.fcns, opts);
  } else {
    // Side A is always the VPT.
    const Vpt& a = va ? *va : *vb;
    const H2s& t = ta ? *ta : *tb;
    v = args.fcns ? equiv_fcns_on_bounded(a, t, args.bound, opts)
                  : equiv_on_bounded(a, t, args.bound, opts);
  }
  std::cout << (args.format == "records" ? format_records(v) : format_verdict(v));
  return v.equivalent() ? kOk : kCounterexample;
}

struct EncodeArgs {
  std::string codec;
  std::string input;
  std::string calls;
  std::string returns;
};

int cmd_encode(const EncodeArgs& args) {
  const auto word = [&] {
    return parse_nested(args.input, split_list(args.calls), split_list(args.returns));
  };
  if (args.codec == "lin") {
    std::cout << format_word(lin(parse_hedge(args.input))) << '\n';
  } else if (args.codec == "hedge") {
    std::cout << format_hedge(hedge_of(word())) << '\n';
  } else if (args.codec == "fcns") {
    std::cout << format_word(fcns_word(word())) << '\n';
  } else if (args.codec == "fcns-inv") {
    std::cout << format_word(fcns_inv_word(word())) << '\n';
  } else if (args.codec == "fcns-tree") {
    std::cout << format_binary_tree(fcns(parse_hedge(args.input))) << '\n';
  } else {
    throw Error("unknown codec '" + args.codec +
                "' (expected lin, hedge, fcns, fcns-inv or fcns-tree)");
  }
  return kOk;
}

struct EnumArgs {
  std::string kind;
  std::size_t bound = 3;
  std::string labels = "a";
  std::string calls = "c";
  std::string returns = "r";
  std::string out = "x,y";
  std::string flavor = "general";
  std::uint64_t seed = 42;
  std::size_t count = 1;
};

OutputAlphabet enum_output(const EnumArgs& args, bool structured, bool bottom) {
  const auto symbols = split_list(args.out);
  if (!structured) return OutputAlphabet::plain(symbols);
  StructuredAlphabet s = structured_version(symbols);
  return OutputAlphabet::structured(bottom ? s.with_bottom() : s);
}

int cmd_enum(const EnumArgs& args) {
  if (args.kind == "hedges") {
    for (const auto& h : enum_hedges(split_list(args.labels), args.bound))
      std::cout << format_hedge(h) << '\n';
  } else if (args.kind == "words") {
    const StructuredAlphabet s(split_list(args.calls), split_list(args.returns));
    for (const auto& w : enum_wn_words(s, args.bound)) std::cout << format_word(w) << '\n';
  } else if (args.kind == "random-vpt") {
    std::mt19937_64 rng(args.seed);
    VptFlavor flavor = VptFlavor::general;
    if (args.flavor == "well-nested") {
      flavor = VptFlavor::well_nested;
    } else if (args.flavor != "general") {
      throw Error("unknown VPT flavor '" + args.flavor + "'");
    }
    const StructuredAlphabet s(split_list(args.calls), split_list(args.returns));
    for (std::size_t i = 0; i < args.count; ++i) {
      if (i != 0) std::cout << '\n';
      std::cout << to_text(random_vpt(rng, s, enum_output(args, true, false), flavor));
    }
  } else if (args.kind == "random-h2s") {
    static const std::map<std::string, H2sFlavor> flavors = {
        {"general", H2sFlavor::general}, {"tr", H2sFlavor::tail_recursive},
        {"h2h", H2sFlavor::h2h},         {"h2h-tr", H2sFlavor::h2h_tr},
        {"h2b", H2sFlavor::h2b}};
    const auto it = flavors.find(args.flavor);
    if (it == flavors.end()) throw Error("unknown H2S flavor '" + args.flavor + "'");
    std::mt19937_64 rng(args.seed);
    const auto out = enum_output(args, true, it->second == H2sFlavor::h2b);
    for (std::size_t i = 0; i < args.count; ++i) {
      if (i != 0) std::cout << '\n';
      std::cout << to_text(random_h2s(rng, split_list(args.labels), out, it->second));
    }
  } else {
    throw Error("unknown kind '" + args.kind +
                "' (expected hedges, words, random-vpt or random-h2s)");
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Visibly pushdown and hedge-to-string transducers"};
  app.require_subcommand(1);
  int status = kOk;

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Print the output set of a model on one input");
  run_cmd->add_option("model", run.model, "Model file or builtin:NAME:LABELS")->required();
  run_cmd->add_option("input", run.input, "Nested word (tokens) or hedge (terms)")->required();
  auto* as_word = run_cmd->add_flag("--as-word", run.as_word, "Read the input as a nested word");
  run_cmd->add_flag("--as-hedge", run.as_hedge, "Read the input as a hedge")->excludes(as_word);
  run_cmd->add_option("--limit", run.limit, "Maximum number of outputs");
  run_cmd->callback([&] { status = cmd_run(run); });

  std::string direction, in, out;
  auto* tr_cmd = app.add_subcommand("translate", "Translate a model; report on stderr");
  tr_cmd->add_option("direction", direction,
                     "h2b->h2h, vpt->h2s, h2s->vpt, vpt-bot->h2s or h2s->vpt-bot")
      ->required();
  tr_cmd->add_option("input", in, "Source model")->required();
  tr_cmd->add_option("output", out, "Target file, or - for stdout")->required();
  tr_cmd->callback([&] { status = cmd_translate(direction, in, out); });

  std::string predicate, path;
  auto* check_cmd = app.add_subcommand("check", "Test class membership");
  check_cmd->add_option("predicate", predicate, "wn, tr, h2h or h2b")->required();
  check_cmd->add_option("model", path, "Model file")->required();
  check_cmd->callback([&] { status = cmd_check(predicate, path); });

  EquivArgs equiv;
  auto* eq_cmd = app.add_subcommand("equiv", "Compare two models on all inputs up to a bound");
  eq_cmd->add_option("a", equiv.a, "First model")->required();
  eq_cmd->add_option("b", equiv.b, "Second model")->required();
  eq_cmd->add_option("--bound", equiv.bound, "Word length or node count bound");
  eq_cmd->add_flag("--fcns", equiv.fcns, "Read the VPT on fcns encodings; skip the empty input");
  eq_cmd->add_option("--format", equiv.format)->check(CLI::IsMember({"text", "records"}));
  eq_cmd->callback([&] { status = cmd_equiv(equiv); });

  EncodeArgs encode;
  auto* enc_cmd = app.add_subcommand("encode", "Apply an encoding");
  enc_cmd->add_option("codec", encode.codec, "lin, hedge, fcns, fcns-inv or fcns-tree")->required();
  enc_cmd->add_option("input", encode.input)->required();
  enc_cmd->add_option("--calls", encode.calls, "Call symbols (comma-separated)");
  enc_cmd->add_option("--returns", encode.returns, "Return symbols (comma-separated)");
  enc_cmd->callback([&] { status = cmd_encode(encode); });

  std::size_t max_n = 10;
  std::string witness_format = "text";
  auto* wit_cmd = app.add_subcommand("witness", "Height table for the flattening family");
  wit_cmd->add_option("--max-n", max_n)->check(CLI::PositiveNumber);
  wit_cmd->add_option("--format", witness_format)->check(CLI::IsMember({"text", "records"}));
  wit_cmd->callback([&] {
    const auto rows = separation_witness(max_n);
    std::cout << (witness_format == "records" ? format_witness_records(rows)
                                              : format_witness(rows));
  });

  EnumArgs en;
  auto* enum_cmd = app.add_subcommand("enum", "List inputs or generate random models");
  enum_cmd->add_option("kind", en.kind, "hedges, words, random-vpt or random-h2s")->required();
  enum_cmd->add_option("--bound", en.bound, "Node count or word length");
  enum_cmd->add_option("--labels", en.labels, "Hedge labels (comma-separated)");
  enum_cmd->add_option("--calls", en.calls);
  enum_cmd->add_option("--returns", en.returns);
  enum_cmd->add_option("--out", en.out, "Output labels; the alphabet is their c_/r_ version");
  enum_cmd->add_option("--flavor", en.flavor);
  enum_cmd->add_option("--seed", en.seed);
  enum_cmd->add_option("--count", en.count);
  enum_cmd->callback([&] { status = cmd_enum(en); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return status;
}
