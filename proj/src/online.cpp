// SPDX-License-Identifier: Apache-2.0

#include "fsmrv/online.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <set>

#include "fsmrv/abstraction.hpp"
#include "fsmrv/common.hpp"
#include "fsmrv/constraint.hpp"
#include "fsmrv/export.hpp"

namespace fsmrv {

// --- records ----------------------------------------------------------------

static const char* notification_type_name(notification_kind k) {
    switch (k) {
        case notification_kind::violation: return "violation";
        case notification_kind::incompatible: return "incompatible";
        case notification_kind::error: return "error";
        case notification_kind::terminate: return "terminate";
    }
    return "error";
}

nlohmann::json notification::to_json() const {
    nlohmann::json j;
    j["type"] = notification_type_name(kind);
    if (kind == notification_kind::terminate) return j;
    if (!property.empty()) j["property"] = property;
    if (seq) j["seq"] = seq;
    if (!state.empty()) j["state"] = state;
    if (!detail.empty()) j["detail"] = detail;
    return j;
}

std::string notification::to_json_line() const { return to_json().dump(); }

nlohmann::json verdict_to_json(const verdict& v) {
    nlohmann::json j;
    j["property"] = v.property;
    j["verdict"] = verdict_kind_name(v.kind);
    if (v.wit) {
        j["seq"] = v.wit->seq;
        j["state"] = v.wit->state;
        if (!v.wit->detail.empty()) j["witness"] = v.wit->detail;
    }
    if (v.vacuous) j["vacuous"] = true;
    if (!v.detail.empty()) j["detail"] = v.detail;
    return j;
}

bool online_report::any(verdict_kind k) const {
    for (const auto& v : verdicts)
        if (v.kind == k) return true;
    return false;
}

int online_report::exit_code() const {
    if (any(verdict_kind::false_)) return 1;
    if (any(verdict_kind::incompatible)) return 2;
    return 0;
}

nlohmann::json online_report::to_json() const {
    nlohmann::json j;
    j["type"] = "report";
    j["verdicts"] = nlohmann::json::array();
    for (const auto& v : verdicts) j["verdicts"].push_back(verdict_to_json(v));
    return j;
}

std::string online_report::to_json_line() const { return to_json().dump(); }

// --- session ----------------------------------------------------------------

session::session(spec_config cfg, online_options opt)
    : cfg_(std::move(cfg)),
      opt_(opt),
      pipe_(cfg_.schema),
      builder_(cfg_.has_abs ? model_kind::asm_ : model_kind::dsm, cfg_.schema.attrs,
               cfg_.schema.tags, cfg_.fns) {
    for (const auto& ps : cfg_.paths) {
        path_builders_.emplace_back(ps);
        auto ai = cfg_.schema.attr_index(ps.attr);
        if (!ai) throw config_error("path attribute '" + ps.attr + "' is not in the model");
        path_attr_.push_back(*ai);
    }
    for (size_t d = 0; d < cfg_.props.size(); ++d)
        for (const auto& form : cfg_.props[d].normalized) classify(d, form);
}

void session::classify(size_t decl_idx, const expr_ptr& form) {
    unit u;
    u.decl = decl_idx;
    u.form = form;

    const auto& attrs = cfg_.schema.attrs;
    const auto& tags = cfg_.schema.tags;
    auto fill_referenced = [&](const expr_ptr& body) {
        for (const auto& name : free_vars(body))
            for (size_t i = 0; i < attrs.size(); ++i)
                if (attrs[i] == name) u.referenced.push_back(i);
    };
    auto identity_only = [&]() {
        for (size_t i : u.referenced)
            if (!cfg_.fns[i].is_identity()) return false;
        return true;
    };

    if (form->kind == expr::kind_t::temp_p) {
        const path_spec* ps = nullptr;
        try {
            ps = cfg_.path_for(form);
        } catch (const config_error&) {
            ps = nullptr;
        }
        if (ps) {
            u.route = route_t::path_edge;
            u.path_idx = static_cast<int>(ps - cfg_.paths.data());
        } else {
            u.route = route_t::unsupported;
            u.pending_why = "P property has no covering path declaration; use offline checking";
        }
        units_.push_back(std::move(u));
        return;
    }

    bool is_g = form->kind == expr::kind_t::temp_g;
    bool is_f = form->kind == expr::kind_t::temp_f;
    if ((is_g || is_f) && !contains_temporal(form->a) && !contains_primed(form->a)) {
        u.body = form->a;
        fill_referenced(u.body);
        bool decidable = true;
        try {
            require_abstractly_checkable(u.body, attrs, tags);
        } catch (const config_error&) {
            decidable = false;
        }
        if (decidable) {
            u.route = is_g ? route_t::g_decide : route_t::f_decide;
        } else if (identity_only()) {
            u.route = is_g ? route_t::g_direct : route_t::f_direct;
        } else {
            u.route = route_t::unsupported;
            u.pending_why =
                "body is neither abstractly checkable nor fully concrete; use offline checking";
        }
        units_.push_back(std::move(u));
        return;
    }

    u.route = route_t::unsupported;
    if (contains_primed(form))
        u.pending_why = "primed variables need the completed transition relation; "
                        "use offline checking";
    else if ((is_g || is_f) && contains_temporal(form->a))
        u.pending_why = "nested temporal operators need the completed trace; use offline checking";
    else
        u.pending_why = "unsupported online form; use offline checking";
    units_.push_back(std::move(u));
}

std::vector<notification> session::ingest_line(const std::string& line) {
    std::vector<notification> out;
    event e;
    try {
        e = parse_event(line);
    } catch (const std::exception& ex) {
        stats_.events++;
        notification n;
        n.kind = notification_kind::error;
        n.detail = std::string("malformed record: ") + ex.what();
        out.push_back(std::move(n));
        return out;
    }
    return ingest(e);
}

std::vector<notification> session::ingest(const event& e) {
    std::vector<notification> out;
    stats_.events++;
    if (e.seq <= last_seq_) {
        notification n;
        n.kind = notification_kind::error;
        n.seq = e.seq;
        n.detail = "out-of-order sequence number " + std::to_string(e.seq) + " (last was " +
                   std::to_string(last_seq_) + ")";
        out.push_back(std::move(n));
        return out;
    }
    last_seq_ = e.seq;

    std::vector<attr_write> writes;
    try {
        pipe_.feed(e, writes);
    } catch (const std::exception& ex) {
        notification n;
        n.kind = notification_kind::error;
        n.seq = e.seq;
        n.detail = ex.what();
        out.push_back(std::move(n));
        return out;
    }
    for (const auto& w : writes) apply_write(w, out);

    if (opt_.terminate_on_violation && !terminate_sent_) {
        for (const auto& n : out)
            if (n.kind == notification_kind::violation) {
                notification t;
                t.kind = notification_kind::terminate;
                out.push_back(std::move(t));
                terminate_sent_ = true;
                break;
            }
    }
    return out;
}

void session::mark_violated(unit& u, const witness& w, std::vector<notification>& out) {
    if (u.violated) return;
    u.violated = true;
    u.incompat = false;
    u.wit = w;
    violated_ = true;
    notification n;
    n.kind = notification_kind::violation;
    n.property = cfg_.props[u.decl].name;
    n.seq = w.seq;
    n.state = w.state;
    n.detail = w.detail;
    out.push_back(std::move(n));
}

void session::mark_incompat(unit& u, const witness& w, std::vector<notification>& out) {
    if (u.violated || u.incompat) return;
    u.incompat = true;
    u.wit = w;
    notification n;
    n.kind = notification_kind::incompatible;
    n.property = cfg_.props[u.decl].name;
    n.seq = w.seq;
    n.state = w.state;
    n.detail = w.detail;
    out.push_back(std::move(n));
}

void session::apply_write(const attr_write& w, std::vector<notification>& out) {
    stats_.writes++;
    auto oc = builder_.add(w);
    if (oc.new_state) {
        stats_.states_created++;
        check_new_state(builder_.peek().states[oc.state], w.seq, out);
    }
    for (size_t i = 0; i < path_builders_.size(); ++i) {
        if (path_attr_[i] != w.attr) continue;
        auto po = path_builders_[i].add(w.val, w.seq);
        if (po.retained && po.from_slot == 0 && po.to_slot == 2) {
            const auto& ps = cfg_.paths[i];
            witness wit{w.seq, "(" + ps.slot_text[0] + ") -> (" + ps.slot_text[2] + ")",
                        "path model contains an f1 -> f3 edge"};
            for (auto& u : units_)
                if (u.route == route_t::path_edge && u.path_idx == static_cast<int>(i))
                    mark_violated(u, wit, out);
        }
    }
}

void session::check_new_state(const state_vector& sv, uint64_t seq, std::vector<notification>& out) {
    const auto& attrs = cfg_.schema.attrs;
    const auto& tags = cfg_.schema.tags;
    const model& m = builder_.peek();

    auto defined = [&](const unit& u) {
        for (size_t i : u.referenced)
            if (sv[i].is_undefined()) return false;
        return true;
    };

    // Abstract route: one conjoined decide_validity call per new state (the
    // conjunction is valid iff every conjunct is), re-run per form only on a
    // non-True result to attribute it.
    std::vector<unit*> batch;
    for (auto& u : units_) {
        if (u.route != route_t::g_decide || u.violated) continue;
        if (!defined(u)) {
            if (opt_.strict_undefined)
                mark_violated(u, witness{seq, m.labeled_key(sv), "unknown component (strict mode)"},
                              out);
            continue;
        }
        batch.push_back(&u);
    }
    if (!batch.empty()) {
        std::vector<constraint> cs;
        cs.reserve(attrs.size());
        for (size_t i = 0; i < attrs.size(); ++i) cs.push_back(constraint::full(tags[i]));
        expr_ptr q = batch[0]->body;
        for (auto* u : batch) {
            if (u != batch[0]) q = expr::make_bin(bin_op::and_, q, u->body);
            for (size_t i : u->referenced) cs[i] = characteristic(cfg_.fns[i], sv[i]);
        }
        tv r = decide_validity(q, attrs, tags, cs);
        stats_.validity_checks++;
        for (auto* u : batch) u->checked++;
        if (r != tv::t) {
            for (auto* u : batch) {
                tv ru = batch.size() == 1 ? r : decide_validity(u->body, attrs, tags, cs);
                if (batch.size() > 1) stats_.validity_checks++;
                if (ru == tv::f)
                    mark_violated(*u, witness{seq, m.labeled_key(sv), print_expr(u->body)}, out);
                else if (ru == tv::u)
                    mark_incompat(*u,
                                  witness{seq, m.labeled_key(sv),
                                          "abstraction too coarse for: " + print_expr(u->body)},
                                  out);
            }
        }
    }

    // F abstract route: resolve to True when the body is valid on this state.
    for (auto& u : units_) {
        if (u.route != route_t::f_decide || u.resolved_true) continue;
        if (!defined(u)) continue;
        std::vector<constraint> cs;
        cs.reserve(attrs.size());
        for (size_t i = 0; i < attrs.size(); ++i) cs.push_back(constraint::full(tags[i]));
        for (size_t i : u.referenced) cs[i] = characteristic(cfg_.fns[i], sv[i]);
        tv r = decide_validity(u.body, attrs, tags, cs);
        stats_.validity_checks++;
        u.checked++;
        if (r == tv::t) u.resolved_true = true;
    }

    // Direct concrete route (identity-mapped attributes only).
    for (auto& u : units_) {
        bool g = u.route == route_t::g_direct;
        bool f = u.route == route_t::f_direct;
        if (!g && !f) continue;
        if (g && u.violated) continue;
        if (f && u.resolved_true) continue;
        if (!defined(u)) {
            if (g && opt_.strict_undefined)
                mark_violated(u, witness{seq, m.labeled_key(sv), "unknown component (strict mode)"},
                              out);
            continue;
        }
        tv r;
        try {
            r = eval_state_pred(u.body, attrs, sv, seq);
        } catch (const std::exception& ex) {
            if (!u.eval_error_notified) {
                u.eval_error_notified = true;
                notification n;
                n.kind = notification_kind::error;
                n.property = cfg_.props[u.decl].name;
                n.seq = seq;
                n.detail = ex.what();
                out.push_back(std::move(n));
            }
            continue;
        }
        u.checked++;
        if (g && r == tv::f)
            mark_violated(u, witness{seq, m.labeled_key(sv), print_expr(u.body)}, out);
        if (f && r == tv::t) u.resolved_true = true;
    }
}

const online_report& session::finalize() {
    if (finalized_) return report_;
    finalized_ = true;
    for (size_t d = 0; d < cfg_.props.size(); ++d) {
        verdict v;
        v.property = cfg_.props[d].name;
        v.kind = verdict_kind::true_;

        const unit* worst_false = nullptr;
        const unit* first_incompat = nullptr;
        const unit* first_pending = nullptr;
        std::string pending_detail;
        bool all_vacuous = true;
        size_t n_units = 0;
        for (const auto& u : units_) {
            if (u.decl != d) continue;
            n_units++;
            if (u.violated) {
                if (!worst_false || (u.wit && worst_false->wit && u.wit->seq < worst_false->wit->seq))
                    worst_false = &u;
                all_vacuous = false;
            } else if (u.route == route_t::unsupported) {
                if (!first_pending) {
                    first_pending = &u;
                    pending_detail = u.pending_why;
                }
            } else if ((u.route == route_t::f_decide || u.route == route_t::f_direct) &&
                       !u.resolved_true) {
                if (!first_pending) {
                    first_pending = &u;
                    pending_detail = "not yet satisfied: " + print_expr(u.form);
                }
            } else if (u.incompat) {
                if (!first_incompat) first_incompat = &u;
                all_vacuous = false;
            } else {
                bool vac = false;
                if (u.route == route_t::path_edge)
                    vac = path_builders_[u.path_idx].peek().slot_state[0] < 0;
                else
                    vac = u.checked == 0;
                if (!vac) all_vacuous = false;
            }
        }
        if (worst_false) {
            v.kind = verdict_kind::false_;
            v.wit = worst_false->wit;
            if (n_units > 1) v.detail = "failed conjunct: " + print_expr(worst_false->form);
        } else if (first_pending) {
            v.kind = verdict_kind::pending;
            v.detail = pending_detail;
        } else if (first_incompat) {
            v.kind = verdict_kind::incompatible;
            v.wit = first_incompat->wit;
            v.detail = first_incompat->wit ? first_incompat->wit->detail : "";
        } else if (n_units > 0 && all_vacuous) {
            v.vacuous = true;
            v.detail = "vacuous";
        }
        report_.verdicts.push_back(std::move(v));
    }
    return report_;
}

// --- TCP server ---------------------------------------------------------------

namespace {

bool send_all(int fd, const std::string& line) {
    std::string buf = line + "\n";
    size_t off = 0;
    while (off < buf.size()) {
        ssize_t n = ::send(fd, buf.data() + off, buf.size() - off, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) continue;
            return false;
        }
        off += static_cast<size_t>(n);
    }
    return true;
}

}  // namespace

int serve(const spec_config& cfg, const serve_options& opt) {
    std::string host = opt.host == "localhost" ? "127.0.0.1" : opt.host;
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(opt.port);
    if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1)
        throw config_error("not an IPv4 listen address: '" + opt.host + "'");

    int lfd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (lfd < 0) {
        log_info(std::string("socket: ") + std::strerror(errno));
        return 4;
    }
    int one = 1;
    ::setsockopt(lfd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    if (::bind(lfd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 || ::listen(lfd, 4) < 0) {
        log_info(std::string("bind/listen: ") + std::strerror(errno));
        ::close(lfd);
        return 4;
    }
    socklen_t alen = sizeof addr;
    ::getsockname(lfd, reinterpret_cast<sockaddr*>(&addr), &alen);
    uint16_t port = ntohs(addr.sin_port);
    log_info("listening on " + host + ":" + std::to_string(port));
    if (opt.on_ready) opt.on_ready(port);

    session sess(cfg, opt.session);
    const size_t batch = cfg.buffer_size ? cfg.buffer_size : 1;
    int cfd = -1;
    std::string inbuf;
    bool done = false;
    bool terminated = false;

    while (!done) {
        pollfd fds[2];
        fds[0] = {lfd, POLLIN, 0};
        nfds_t nfds = 1;
        if (cfd >= 0) {
            fds[1] = {cfd, POLLIN, 0};
            nfds = 2;
        }
        if (::poll(fds, nfds, -1) < 0) {
            if (errno == EINTR) continue;
            log_info(std::string("poll: ") + std::strerror(errno));
            break;
        }
        if (fds[0].revents & POLLIN) {
            int nfd = ::accept(lfd, nullptr, nullptr);
            if (nfd >= 0) {
                if (cfd < 0) {
                    cfd = nfd;
                    log_debug("client connected");
                } else {
                    notification n;
                    n.kind = notification_kind::error;
                    n.detail = "session already has a connected producer; refusing";
                    send_all(nfd, n.to_json_line());
                    ::close(nfd);
                    log_info("refused second connection");
                }
            }
        }
        if (cfd >= 0 && nfds == 2 && (fds[1].revents & (POLLIN | POLLHUP | POLLERR))) {
            char chunk[65536];
            ssize_t n = ::recv(cfd, chunk, sizeof chunk, 0);
            if (n > 0) {
                inbuf.append(chunk, static_cast<size_t>(n));
                size_t processed = 0, start = 0;
                while (processed < batch) {
                    size_t nl = inbuf.find('\n', start);
                    if (nl == std::string::npos) break;
                    std::string line = inbuf.substr(start, nl - start);
                    start = nl + 1;
                    if (!line.empty() && line.back() == '\r') line.pop_back();
                    if (line.empty()) continue;
                    processed++;
                    for (const auto& note : sess.ingest_line(line)) {
                        send_all(cfd, note.to_json_line());
                        if (note.kind == notification_kind::terminate) {
                            done = terminated = true;
                            break;
                        }
                    }
                    if (done) break;
                }
                inbuf.erase(0, start);
            } else if (n == 0 || (n < 0 && errno != EINTR && errno != EAGAIN)) {
                done = true;  // end of stream
            }
        }
    }

    if (!inbuf.empty() && cfd >= 0 && !terminated) {  // final unterminated line
        for (const auto& note : sess.ingest_line(inbuf))
            if (note.kind != notification_kind::terminate) send_all(cfd, note.to_json_line());
        inbuf.clear();
    }
    const online_report& rep = sess.finalize();
    if (cfd >= 0) {
        send_all(cfd, rep.to_json_line());
        ::close(cfd);
    }
    ::close(lfd);
    if (!opt.dump_model_path.empty()) {
        std::ofstream f(opt.dump_model_path, std::ios::binary);
        f << model_to_json_text(sess.graph()) << "\n";
    }
    return rep.exit_code();
}

}  // namespace fsmrv
