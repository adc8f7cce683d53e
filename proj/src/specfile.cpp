// SPDX-License-Identifier: Apache-2.0

#include "fsmrv/specfile.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "fsmrv/common.hpp"
#include "fsmrv/prop/normalize.hpp"

namespace fsmrv {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Strips a comment: '#' at line start, or preceded by whitespace outside a
// string literal ('#' glued to a token, as in up#max, is kept).
std::string strip_comment(const std::string& line) {
    bool in_str = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (in_str) {
            if (c == '\\' && i + 1 < line.size()) ++i;
            else if (c == '"') in_str = false;
            continue;
        }
        if (c == '"') {
            in_str = true;
        } else if (c == '#' && (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t')) {
            return line.substr(0, i);
        }
    }
    return line;
}

bool valid_name(const std::string& s) {
    if (s.empty() || (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_'))
        return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

// Splits "name = rhs"; throws on a missing '='.
std::pair<std::string, std::string> split_eq(const std::string& s, const std::string& what) {
    size_t eq = s.find('=');
    if (eq == std::string::npos) throw parse_error(what + " declaration needs '='");
    return {trim(s.substr(0, eq)), trim(s.substr(eq + 1))};
}

double parse_number(const std::string& s, const std::string& what) {
    try {
        size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw parse_error("bad number '" + s + "' in " + what);
    }
}

std::vector<std::string> split_args(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
    return out;
}

struct raw_abs {
    std::string attr;
    bool is_range = false;
    std::string pred_text;          // bool(...) payload
    std::vector<double> cutpoints;  // range[...] payload
    int line = 0;
};

struct raw_path {
    std::string name, attr, rhs;
    int line = 0;
};

bool slots_covered(const path_spec& model_ps, const path_spec& prop_ps) {
    for (int s = 0; s < 3; ++s)
        for (const auto& c : prop_ps.slot_consts[s]) {
            bool found = false;
            for (const auto& mc : model_ps.slot_consts[s])
                if (mc == c) found = true;
            if (!found) return false;
        }
    return true;
}

// Rejects anything that is not a boolean combination of temporal leaves.
void validate_prop_shape(const expr_ptr& p) {
    switch (p->kind) {
        case expr::kind_t::temp_g:
        case expr::kind_t::temp_f:
        case expr::kind_t::temp_p:
            return;
        case expr::kind_t::not_:
            validate_prop_shape(p->a);
            return;
        case expr::kind_t::bin:
            if (p->op == bin_op::and_ || p->op == bin_op::or_ || p->op == bin_op::implies) {
                validate_prop_shape(p->a);
                validate_prop_shape(p->b);
                return;
            }
            [[fallthrough]];
        default:
            throw config_error(
                "a property must be a boolean combination of G[...], F[...], P[...]");
    }
}

bool contains_p(const expr_ptr& e) {
    if (!e) return false;
    if (e->kind == expr::kind_t::temp_p) return true;
    for (const auto& el : e->elems)
        if (contains_p(el)) return true;
    return contains_p(e->a) || contains_p(e->b);
}

void validate_temporal_bodies(const expr_ptr& p) {
    switch (p->kind) {
        case expr::kind_t::temp_g:
        case expr::kind_t::temp_f:
            if (contains_p(p->a))
                throw config_error("P[...] cannot be nested inside G/F bodies");
            return;
        case expr::kind_t::temp_p:
            return;
        case expr::kind_t::not_:
            validate_temporal_bodies(p->a);
            return;
        default:
            validate_temporal_bodies(p->a);
            validate_temporal_bodies(p->b);
            return;
    }
}

}  // namespace

const path_spec* spec_config::path_for(const expr_ptr& p) const {
    if (p->kind != expr::kind_t::temp_p) return nullptr;
    auto vars = free_vars(p);
    if (vars.size() != 1) return nullptr;
    auto ai = schema.attr_index(*vars.begin());
    if (!ai) return nullptr;
    path_spec prop_ps = path_spec::from_exprs("", *vars.begin(), schema.tags[*ai],
                                              {p->slots[0], p->slots[1], p->slots[2]});
    for (const auto& ps : paths)
        if (ps.attr == prop_ps.attr && slots_covered(ps, prop_ps)) return &ps;
    return nullptr;
}

spec_config parse_spec_text(const std::string& text, const std::string& where) {
    spec_config cfg;
    std::vector<raw_abs> raw_abses;
    std::vector<raw_path> raw_paths;
    std::set<std::string> taken_names;  // keys, control, derive outputs
    std::set<std::string> prop_names, path_names;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string body = trim(strip_comment(line));
        if (body.empty()) continue;
        try {
            size_t sp = body.find_first_of(" \t");
            std::string head = body.substr(0, sp);
            std::string rest = sp == std::string::npos ? "" : trim(body.substr(sp));

            if (head == "key") {
                auto [name, rhs] = split_eq(rest, "key");
                if (!valid_name(name)) throw parse_error("bad key name '" + name + "'");
                size_t colon = rhs.rfind(':');
                if (colon == std::string::npos)
                    throw parse_error("key declaration needs ': <type>'");
                key_attribute k;
                k.name = name;
                k.sel = key_selector::parse(trim(rhs.substr(0, colon)));
                k.tag = tag_from_name(trim(rhs.substr(colon + 1)));
                if (!taken_names.insert(name).second)
                    throw parse_error("duplicate attribute name '" + name + "'");
                cfg.schema.keys.add(std::move(k));
            } else if (head == "control") {
                auto [name, rhs] = split_eq(rest, "control");
                if (!valid_name(name)) throw parse_error("bad control name '" + name + "'");
                if (!cfg.schema.control_name.empty())
                    throw parse_error("only one control declaration is allowed");
                if (!taken_names.insert(name).second)
                    throw parse_error("duplicate attribute name '" + name + "'");
                cfg.schema.control_name = name;
                cfg.schema.control = control_level_from_name(rhs);
            } else if (head == "derive") {
                auto [name, rhs] = split_eq(rest, "derive");
                if (!valid_name(name)) throw parse_error("bad derive name '" + name + "'");
                size_t open = rhs.find('(');
                if (open == std::string::npos || rhs.back() != ')')
                    throw parse_error("derive needs haversine(...) or compass(...)");
                std::string fn = trim(rhs.substr(0, open));
                auto args = split_args(rhs.substr(open + 1, rhs.size() - open - 2));
                derivation_rule r;
                r.out = name;
                if (fn == "haversine") {
                    r.kind = derivation_kind::haversine;
                    if (args.size() != 4)
                        throw parse_error("haversine takes (lat, lon, refLat, refLon)");
                } else if (fn == "compass") {
                    r.kind = derivation_kind::compass;
                    if (args.size() != 4 && args.size() != 5)
                        throw parse_error(
                            "compass takes (lat, lon, refLat, refLon[, epsilonMeters])");
                    if (args.size() == 5) {
                        r.epsilon_meters = parse_number(args[4], "compass epsilon");
                        if (!(r.epsilon_meters > 0))
                            throw parse_error("epsilonMeters must be > 0");
                    }
                } else {
                    throw parse_error("unknown derivation '" + fn + "'");
                }
                if (!valid_name(args[0]) || !valid_name(args[1]))
                    throw parse_error("derivation inputs must be attribute names");
                r.lat_attr = args[0];
                r.lon_attr = args[1];
                r.ref_lat = parse_number(args[2], "reference latitude");
                r.ref_lon = parse_number(args[3], "reference longitude");
                if (!taken_names.insert(name).second)
                    throw parse_error("duplicate attribute name '" + name + "'");
                cfg.schema.derives.push_back(std::move(r));
            } else if (head == "filter") {
                if (rest.empty()) throw parse_error("filter needs a pattern");
                cfg.schema.filter.add_pattern(rest);
            } else if (head == "abs") {
                auto [attr, rhs] = split_eq(rest, "abs");
                if (!valid_name(attr)) throw parse_error("bad attribute name '" + attr + "'");
                for (const auto& ra : raw_abses)
                    if (ra.attr == attr)
                        throw parse_error("duplicate abs declaration for '" + attr + "'");
                raw_abs ra;
                ra.attr = attr;
                ra.line = line_no;
                if (rhs.rfind("bool(", 0) == 0 && rhs.back() == ')') {
                    ra.pred_text = rhs.substr(5, rhs.size() - 6);
                } else if (rhs.rfind("range[", 0) == 0 && rhs.back() == ']') {
                    ra.is_range = true;
                    std::string inner = rhs.substr(6, rhs.size() - 7);
                    std::string cur;
                    for (char c : inner + ":") {
                        if (c == ':') {
                            ra.cutpoints.push_back(parse_number(trim(cur), "range cutpoint"));
                            cur.clear();
                        } else {
                            cur += c;
                        }
                    }
                } else {
                    throw parse_error("abs needs bool(...) or range[...]");
                }
                raw_abses.push_back(std::move(ra));
            } else if (head == "path") {
                size_t on = rest.find(" on ");
                size_t eq = rest.find('=');
                if (on == std::string::npos || eq == std::string::npos || on > eq)
                    throw parse_error("path declaration: path <name> on <attr> = ... ");
                raw_path rp;
                rp.name = trim(rest.substr(0, on));
                rp.attr = trim(rest.substr(on + 4, eq - on - 4));
                rp.rhs = trim(rest.substr(eq + 1));
                rp.line = line_no;
                if (!valid_name(rp.name)) throw parse_error("bad path name '" + rp.name + "'");
                if (!valid_name(rp.attr))
                    throw parse_error("bad attribute name '" + rp.attr + "'");
                if (!path_names.insert(rp.name).second)
                    throw parse_error("duplicate path name '" + rp.name + "'");
                raw_paths.push_back(std::move(rp));
            } else if (head == "prop") {
                auto [name, rhs] = split_eq(rest, "prop");
                if (!valid_name(name)) throw parse_error("bad property name '" + name + "'");
                if (!prop_names.insert(name).second)
                    throw parse_error("duplicate property name '" + name + "'");
                prop_decl pd;
                pd.name = name;
                pd.text = rhs;
                pd.parsed = parse_property(rhs, where);
                pd.normalized = normalize(pd.parsed);
                pd.line = line_no;
                validate_prop_shape(pd.parsed);
                validate_temporal_bodies(pd.parsed);
                cfg.props.push_back(std::move(pd));
            } else if (head == "buffer") {
                double n = parse_number(rest, "buffer size");
                if (n < 1 || n != static_cast<uint64_t>(n))
                    throw parse_error("buffer size must be a positive integer");
                cfg.buffer_size = static_cast<size_t>(n);
            } else {
                throw parse_error("unknown declaration '" + head + "'");
            }
        } catch (const parse_error& ex) {
            if (ex.line > 0) throw;
            throw parse_error(where + ": " + ex.what(), line_no);
        } catch (const config_error& ex) {
            throw config_error(where + ": line " + std::to_string(line_no) + ": " + ex.what());
        }
    }

    // --- Attribute-vector inference ---------------------------------------
    std::set<std::string> referenced;
    for (const auto& ra : raw_abses) referenced.insert(ra.attr);
    for (const auto& rp : raw_paths) referenced.insert(rp.attr);
    for (const auto& pd : cfg.props)
        for (const auto& v : free_vars(pd.parsed)) referenced.insert(v);

    std::set<std::string> derive_inputs;
    for (const auto& r : cfg.schema.derives) {
        derive_inputs.insert(r.lat_attr);
        derive_inputs.insert(r.lon_attr);
    }

    for (const auto& k : cfg.schema.keys.attrs()) {
        if (derive_inputs.count(k.name) && !referenced.count(k.name)) continue;
        cfg.schema.attrs.push_back(k.name);
        cfg.schema.tags.push_back(k.tag);
    }
    if (!cfg.schema.control_name.empty()) {
        cfg.schema.attrs.push_back(cfg.schema.control_name);
        cfg.schema.tags.push_back(value_tag::vt_str);
    }
    for (const auto& r : cfg.schema.derives) {
        cfg.schema.attrs.push_back(r.out);
        cfg.schema.tags.push_back(r.out_tag());
    }

    // --- Materialize abstraction functions --------------------------------
    cfg.fns.reserve(cfg.schema.attrs.size());
    for (size_t i = 0; i < cfg.schema.attrs.size(); ++i)
        cfg.fns.push_back(abstraction_fn::identity(cfg.schema.attrs[i], cfg.schema.tags[i]));
    for (const auto& ra : raw_abses) {
        auto ai = cfg.schema.attr_index(ra.attr);
        if (!ai)
            throw config_error(where + ": line " + std::to_string(ra.line) +
                               ": abs declaration for unknown attribute '" + ra.attr + "'");
        try {
            abstraction_fn fn =
                ra.is_range
                    ? abstraction_fn::range(ra.attr, cfg.schema.tags[*ai], ra.cutpoints)
                    : abstraction_fn::bool_pred(ra.attr, cfg.schema.tags[*ai],
                                                parse_property(ra.pred_text, where));
            validate_abstraction(fn);
            cfg.fns[*ai] = std::move(fn);
            cfg.has_abs = true;
        } catch (const std::exception& ex) {
            throw config_error(where + ": line " + std::to_string(ra.line) + ": " + ex.what());
        }
    }

    // --- Materialize path specs --------------------------------------------
    for (const auto& rp : raw_paths) {
        auto ai = cfg.schema.attr_index(rp.attr);
        if (!ai)
            throw config_error(where + ": line " + std::to_string(rp.line) +
                               ": path declaration on unknown attribute '" + rp.attr + "'");
        try {
            expr_ptr p = parse_property("P[" + rp.rhs + "]", where);
            if (p->kind != expr::kind_t::temp_p)
                throw config_error("path declaration needs three ~~> separated slots");
            path_spec ps = path_spec::from_exprs(rp.name, rp.attr, cfg.schema.tags[*ai],
                                                 {p->slots[0], p->slots[1], p->slots[2]});
            auto vars = free_vars(p);
            if (vars.size() != 1 || *vars.begin() != rp.attr)
                throw config_error("path slots must constrain exactly the attribute '" +
                                   rp.attr + "'");
            cfg.paths.push_back(std::move(ps));
        } catch (const parse_error& ex) {
            throw config_error(where + ": line " + std::to_string(rp.line) + ": " + ex.what());
        } catch (const config_error& ex) {
            throw config_error(where + ": line " + std::to_string(rp.line) + ": " + ex.what());
        }
    }

    // --- Validate property references --------------------------------------
    for (const auto& pd : cfg.props) {
        for (const auto& v : free_vars(pd.parsed))
            if (!cfg.schema.attr_index(v))
                throw config_error(where + ": line " + std::to_string(pd.line) + ": prop '" +
                                   pd.name + "' references unknown attribute '" + v + "'");
        for (const auto& np : pd.normalized)
            if (np->kind == expr::kind_t::temp_p) {
                auto vars = free_vars(np);
                if (vars.size() != 1)
                    throw config_error(where + ": line " + std::to_string(pd.line) +
                                       ": prop '" + pd.name +
                                       "': P must constrain exactly one attribute");
                auto ai = cfg.schema.attr_index(*vars.begin());
                // Validates slot shape and disjointness.
                path_spec::from_exprs("", *vars.begin(), cfg.schema.tags[*ai],
                                      {np->slots[0], np->slots[1], np->slots[2]});
            }
    }

    // Surfaces schema-level inconsistencies (derive inputs, control slot).
    pipeline validation_probe(cfg.schema);

    return cfg;
}

spec_config load_spec_file(const std::string& filename) {
    std::ifstream in(filename);
    if (!in) throw config_error("cannot open spec file '" + filename + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spec_text(ss.str(), filename);
}

}  // namespace fsmrv
