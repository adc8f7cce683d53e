// SPDX-License-Identifier: Apache-2.0
//
// fsm-rv — build finite state models from traces, check temporal properties
// on them, monitor live event streams, export models, and generate the
// bundled example scenarios.
//
// Exit codes: 0 all properties True (or still pending online), 1 any False,
// 2 any Incompatible (and no False), 3 usage/parse error, 4 runtime error.
// Verdict records are JSONL on stdout; diagnostics go to stderr (FSMRV_LOG).

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fsmrv/checker.hpp"
#include "fsmrv/common.hpp"
#include "fsmrv/export.hpp"
#include "fsmrv/generators.hpp"
#include "fsmrv/model.hpp"
#include "fsmrv/online.hpp"
#include "fsmrv/pipeline.hpp"
#include "fsmrv/specfile.hpp"
#include "fsmrv/trace_reader.hpp"

using namespace fsmrv;

namespace {

std::vector<event> read_trace(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot open trace file '" + path + "'");
    trace_reader r(f);
    std::vector<event> evs;
    while (auto e = r.next()) evs.push_back(std::move(*e));
    return evs;
}

std::vector<attr_write> to_writes(const spec_config& cfg, const std::vector<event>& evs) {
    pipeline p(cfg.schema);
    std::vector<attr_write> ws;
    for (const auto& e : evs) p.feed(e, ws);
    return ws;
}

size_t path_index_for(const spec_config& cfg, const std::string& name) {
    if (cfg.paths.empty())
        throw config_error("--model path requires a path declaration in the spec file");
    if (name.empty()) return 0;
    for (size_t i = 0; i < cfg.paths.size(); ++i)
        if (cfg.paths[i].name == name) return i;
    throw config_error("no path declaration named '" + name + "'");
}

model build_kind(const spec_config& cfg, const std::vector<attr_write>& ws,
                 const std::string& kind, const std::string& path_name) {
    const auto& attrs = cfg.schema.attrs;
    const auto& tags = cfg.schema.tags;
    if (kind == "lsm") return build_lsm(attrs, tags, ws);
    if (kind == "dsm") return build_dsm(attrs, tags, ws);
    if (kind == "asm") {
        if (!cfg.has_abs)
            throw config_error(
                "--model asm requires at least one non-identity abs declaration");
        return build_asm(attrs, tags, cfg.fns, ws);
    }
    if (kind == "path") {
        size_t i = path_index_for(cfg, path_name);
        return build_path_model(cfg.paths[i], ws, *cfg.schema.attr_index(cfg.paths[i].attr));
    }
    throw config_error("unknown model kind '" + kind + "'");
}

void write_output(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw config_error("cannot open output file '" + out + "'");
    f << text;
    if (!text.empty() && text.back() != '\n') f << "\n";
}

// One verdict per declaration. Each normalized conjunct runs on the
// requested model when its shape allows it (P declarations under --model
// path route to their covering path declaration's model); conjuncts the
// requested model cannot express — primed variables or nested temporals on
// asm, non-P forms on path, and so on — fall back to the linear model, so a
// declaration always resolves to a True/False/Incompatible verdict.
struct check_result {
    std::vector<verdict> verdicts;
    check_stats stats;
};

check_result check_all(const spec_config& cfg, const std::vector<attr_write>& ws,
                       const std::string& kind, const check_options& opt) {
    check_result res;
    std::optional<model> m;
    std::vector<model> path_models;
    if (kind == "path") {
        if (cfg.paths.empty())
            throw config_error("--model path requires a path declaration in the spec file");
        for (const auto& ps : cfg.paths)
            path_models.push_back(build_path_model(ps, ws, *cfg.schema.attr_index(ps.attr)));
    } else {
        m = build_kind(cfg, ws, kind, "");
        log_info("model " + kind + ": " + std::to_string(m->state_count()) + " states");
    }

    std::optional<model> linear;  // lazy fallback
    auto fallback = [&](const expr_ptr& form, const std::string& decl_name) {
        if (!linear) linear = build_lsm(cfg.schema.attrs, cfg.schema.tags, ws);
        log_info("property '" + decl_name + "': conjunct checked on the linear model");
        return check_model(*linear, form, opt, &res.stats);
    };

    for (const auto& decl : cfg.props) {
        std::vector<verdict> parts;
        for (const auto& form : decl.normalized) {
            if (kind == "path") {
                const path_spec* ps =
                    form->kind == expr::kind_t::temp_p ? cfg.path_for(form) : nullptr;
                if (ps) {
                    size_t pi = static_cast<size_t>(ps - cfg.paths.data());
                    parts.push_back(check_model(path_models[pi], form, opt, &res.stats));
                } else {
                    parts.push_back(fallback(form, decl.name));
                }
                continue;
            }
            try {
                parts.push_back(check_model(*m, form, opt, &res.stats));
            } catch (const config_error&) {
                parts.push_back(fallback(form, decl.name));
            }
        }
        res.verdicts.push_back(combine_conjunct_verdicts(decl.name, parts));
    }
    return res;
}

int cmd_check(const std::string& spec_path, const std::string& trace_path,
              const std::string& kind, bool strict) {
    spec_config cfg = load_spec_file(spec_path);
    auto evs = read_trace(trace_path);
    auto ws = to_writes(cfg, evs);
    log_info("trace: " + std::to_string(evs.size()) + " events, " + std::to_string(ws.size()) +
             " writes");
    check_options opt;
    opt.strict_undefined = strict;
    auto t0 = std::chrono::steady_clock::now();
    check_result res = check_all(cfg, ws, kind, opt);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    log_info("checked " + std::to_string(res.verdicts.size()) + " properties in " +
             std::to_string(ms) + " ms (" + std::to_string(res.stats.validity_checks) +
             " validity checks)");
    bool any_false = false, any_incompat = false;
    for (const auto& v : res.verdicts) {
        std::cout << verdict_to_json(v).dump() << "\n";
        any_false |= v.kind == verdict_kind::false_;
        any_incompat |= v.kind == verdict_kind::incompatible;
    }
    if (any_false) return 1;
    if (any_incompat) return 2;
    return 0;
}

int cmd_build(const std::string& spec_path, const std::string& trace_path,
              const std::string& kind, const std::string& path_name, const std::string& out) {
    spec_config cfg = load_spec_file(spec_path);
    auto ws = to_writes(cfg, read_trace(trace_path));
    model m = build_kind(cfg, ws, kind, path_name);
    log_info("model " + kind + ": " + std::to_string(m.state_count()) + " states");
    write_output(out, model_to_json_text(m));
    return 0;
}

int cmd_export(const std::string& in, const std::string& format, const std::string& out,
               bool compact, bool no_counts, const std::vector<std::string>& highlights) {
    std::ifstream f(in, std::ios::binary);
    if (!f) throw config_error("cannot open model file '" + in + "'");
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    model m = model_from_json_text(text);
    if (format == "json") {
        write_output(out, model_to_json_text(m));
        return 0;
    }
    if (format != "dot") throw config_error("unknown export format '" + format + "'");
    render_options ro;
    ro.compact = compact;
    ro.show_counts = !no_counts;
    for (const auto& h : highlights) {
        size_t eq = h.rfind('=');
        if (eq == std::string::npos)
            throw config_error("--highlight expects <state-key>=<green|red|gray>");
        ro.highlight[h.substr(0, eq)] = h.substr(eq + 1);
    }
    write_output(out, to_dot(m, ro));
    return 0;
}

int cmd_gen(const std::string& scenario, uint64_t seed, uint64_t events, const std::string& bug,
            const std::string& out_dir, bool list) {
    if (list) {
        for (const auto& s : known_scenarios()) {
            std::cout << s;
            auto bugs = known_bugs(s);
            if (!bugs.empty()) {
                std::cout << "  (bugs:";
                for (const auto& b : bugs) std::cout << " " << b;
                std::cout << ")";
            }
            std::cout << "\n";
        }
        return 0;
    }
    scenario_config sc;
    sc.scenario = scenario;
    sc.seed = seed;
    sc.events = events;
    sc.bug = bug;
    write_scenario_files(sc, out_dir);
    std::cout << out_dir << "/trace.jsonl\n" << out_dir << "/scenario.spec\n";
    for (const auto& [name, _] : generate_scenario(sc).extra_specs)
        std::cout << out_dir << "/" << name << "\n";
    return 0;
}

int cmd_serve(const std::string& spec_path, const std::string& listen, bool terminate,
              bool strict, const std::string& dump_model) {
    spec_config cfg = load_spec_file(spec_path);
    serve_options so;
    size_t colon = listen.rfind(':');
    if (colon == std::string::npos)
        throw config_error("--listen expects <host>:<port>, got '" + listen + "'");
    so.host = listen.substr(0, colon);
    int port = 0;
    try {
        port = std::stoi(listen.substr(colon + 1));
    } catch (const std::exception&) {
        port = -1;
    }
    if (port < 0 || port > 65535)
        throw config_error("not a valid port: '" + listen.substr(colon + 1) + "'");
    so.port = static_cast<uint16_t>(port);
    so.session.terminate_on_violation = terminate;
    so.session.strict_undefined = strict;
    so.dump_model_path = dump_model;
    so.on_ready = [](uint16_t p) { std::cerr << "listening on port " << p << "\n"; };
    return serve(cfg, so);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fsm-rv: finite-state models from traces, with property checking"};
    app.require_subcommand(1);

    std::string spec_path, trace_path, kind = "lsm", path_name, out, listen = "127.0.0.1:7007";
    std::string in, format = "dot", scenario, bug, out_dir = ".";
    uint64_t seed = 1, events = 1000;
    bool strict = false, terminate = false, compact = false, no_counts = false, list = false;
    std::string dump_model;
    std::vector<std::string> highlights;

    auto* c = app.add_subcommand("check", "build a model from a trace and check every property");
    c->add_option("--spec", spec_path, "spec file")->required();
    c->add_option("--trace", trace_path, "trace file (JSONL)")->required();
    c->add_option("--model", kind, "model kind: lsm|dsm|asm|path (default lsm)");
    c->add_flag("--strict-undefined", strict, "treat unknown components as violations");

    auto* b = app.add_subcommand("build", "build a model from a trace and dump it as JSON");
    b->add_option("--spec", spec_path, "spec file")->required();
    b->add_option("--trace", trace_path, "trace file (JSONL)")->required();
    b->add_option("--model", kind, "model kind: lsm|dsm|asm|path (default lsm)");
    b->add_option("--path", path_name, "path declaration to build (default: first)");
    b->add_option("--out", out, "output file (default: stdout)");

    auto* x = app.add_subcommand("export", "render a dumped model as DOT or JSON");
    x->add_option("--in", in, "model JSON file (from `build`)")->required();
    x->add_option("--format", format, "dot|json (default dot)");
    x->add_option("--out", out, "output file (default: stdout)");
    x->add_flag("--compact", compact, "component values only, no attribute names");
    x->add_flag("--no-counts", no_counts, "hide transition counts on edges");
    x->add_option("--highlight", highlights, "<state-key>=<green|red|gray> (repeatable)");

    auto* g = app.add_subcommand("gen", "generate a bundled example scenario");
    g->add_option("--scenario", scenario, "scenario id (see --list)");
    g->add_option("--seed", seed, "RNG seed (default 1)");
    g->add_option("--events", events, "target key-write count (default 1000)");
    g->add_option("--bug", bug, "fault id to inject (see --list)");
    g->add_option("--out", out_dir, "output directory (default .)");
    g->add_flag("--list", list, "list scenarios and their fault ids");

    auto* s = app.add_subcommand("serve", "monitor a live event stream over TCP");
    s->add_option("--spec", spec_path, "spec file")->required();
    s->add_option("--listen", listen, "host:port (default 127.0.0.1:7007; port 0 = ephemeral)");
    s->add_flag("--terminate-on-violation", terminate, "send a terminate advisory and stop");
    s->add_flag("--strict-undefined", strict, "treat unknown components as violations");
    s->add_option("--dump-model", dump_model, "write the final model JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? 0 : 3;
    }

    try {
        if (c->parsed()) return cmd_check(spec_path, trace_path, kind, strict);
        if (b->parsed()) return cmd_build(spec_path, trace_path, kind, path_name, out);
        if (x->parsed()) return cmd_export(in, format, out, compact, no_counts, highlights);
        if (g->parsed()) {
            if (!list && scenario.empty())
                throw config_error("gen requires --scenario (or --list)");
            return cmd_gen(scenario, seed, events, bug, out_dir, list);
        }
        if (s->parsed()) return cmd_serve(spec_path, listen, terminate, strict, dump_model);
    } catch (const parse_error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 3;
    } catch (const config_error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 3;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 4;
    }
    return 3;
}
