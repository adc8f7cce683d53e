// SPDX-License-Identifier: Apache-2.0
//
// Synthetic scenario simulators. Each scenario is a small deterministic
// simulation driven by a seeded PRNG; it emits a JSONL event trace plus a
// companion spec file with the scenario's property pack, standing in for an
// instrumented program. Identical configurations produce identical bytes:
// the engine is std::mt19937_64 (bit-exact by definition) and all mappings
// from raw engine output to choices are spelled out here rather than taken
// from distribution classes, whose results vary between standard libraries.

#include "fsmrv/generators.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fsmrv/common.hpp"
#include "fsmrv/event.hpp"
#include "fsmrv/geo.hpp"
#include "fsmrv/value.hpp"

namespace fsmrv {
namespace {

// ---------------------------------------------------------------- rng ----

class det_rng {
  public:
    explicit det_rng(uint64_t seed) : eng_(seed) {}

    uint64_t raw() { return eng_(); }

    // Uniform integer in [0, n). Modulo keeps the mapping trivially
    // reproducible; the bias is irrelevant for simulation purposes.
    uint64_t pick(uint64_t n) { return n == 0 ? 0 : raw() % n; }

    // Uniform double in [0, 1) with 53 significant bits.
    double real01() { return double(raw() >> 11) * (1.0 / 9007199254740992.0); }

    double real(double lo, double hi) { return lo + (hi - lo) * real01(); }

    bool chance(double p) { return real01() < p; }

  private:
    std::mt19937_64 eng_;
};

// ------------------------------------------------------------ emitter ----

class emitter {
  public:
    void field_write(const std::string& thread, const std::string& klass, int64_t instance,
                     const std::string& field, value v) {
        event e;
        e.seq = next_seq_++;
        e.kind = event_kind::field_write;
        e.thread = thread;
        e.klass = klass;
        e.instance = instance;
        e.field = field;
        e.val = std::move(v);
        out_ += event_to_json_line(e);
        out_ += '\n';
        ++key_writes_;
    }

    void method_entry(const std::string& thread, const std::string& qualified_method) {
        event e;
        e.seq = next_seq_++;
        e.kind = event_kind::method_entry;
        e.thread = thread;
        e.method = qualified_method;
        out_ += event_to_json_line(e);
        out_ += '\n';
    }

    uint64_t key_writes() const { return key_writes_; }
    std::string take() && { return std::move(out_); }

  private:
    std::string out_;
    uint64_t next_seq_ = 1;
    uint64_t key_writes_ = 0;
};

// ---------------------------------------------------- dining (5 philos) ----
//
// States carry their resource meaning: T = no forks in hand, H = one fork,
// E = both forks. Fork j is the left fork of philosopher j and the right
// fork of philosopher j-1 (mod 5). Everyone picks the left fork first
// except philosopher 4, who picks the right fork first; the asymmetry
// breaks the hold-and-wait cycle so the simulation cannot stall.

struct dining_sim {
    emitter& em;
    det_rng& rng;
    bool bug_adjacent;

    static constexpr int N = 5;
    int st[N] = {0, 0, 0, 0, 0};     // 0=T 1=H 2=E
    int holder[N] = {-1, -1, -1, -1, -1};  // fork -> philosopher holding it
    bool stole[N] = {false, false, false, false, false};

    static int left_fork(int i) { return i; }
    static int right_fork(int i) { return (i + 1) % N; }
    static int first_fork(int i) { return i == N - 1 ? right_fork(i) : left_fork(i); }
    static int second_fork(int i) { return i == N - 1 ? left_fork(i) : right_fork(i); }

    void write_state(int i, const char* s) {
        em.field_write("philo-" + std::to_string(i + 1), "dp.Philo", i + 1, "state",
                       value(std::string(s)));
    }

    void run(uint64_t target) {
        for (int i = 0; i < N && em.key_writes() < target; ++i) write_state(i, "T");
        while (em.key_writes() < target) step();
    }

    void step() {
        int i = int(rng.pick(N));
        switch (st[i]) {
            case 0:  // thinking: maybe get hungry by grabbing the first fork
                if (rng.chance(0.55)) {
                    int fk = first_fork(i);
                    if (holder[fk] == -1) {
                        holder[fk] = i;
                        st[i] = 1;
                        write_state(i, "H");
                    }
                }
                break;
            case 1: {  // hungry: try for the second fork
                int fk = second_fork(i);
                if (holder[fk] == -1) {
                    holder[fk] = i;
                    st[i] = 2;
                    write_state(i, "E");
                } else if (bug_adjacent && st[holder[fk]] == 2 && rng.chance(0.6)) {
                    // Fault: start eating while the shared fork is still in a
                    // neighbour's hands, so two adjacent philosophers eat.
                    st[i] = 2;
                    stole[i] = true;
                    write_state(i, "E");
                }
                break;
            }
            case 2:  // eating: maybe put the forks down
                if (rng.chance(0.6)) {
                    for (int fk = 0; fk < N; ++fk)
                        if (holder[fk] == i) holder[fk] = -1;
                    stole[i] = false;
                    st[i] = 0;
                    write_state(i, "T");
                }
                break;
        }
    }
};

// ------------------------------------------------------ readers-writers ----
//
// Counters r (active readers), w (active writer flag) and ww (waiting
// writers) on one shared Database object. The correct mode implements
// writer priority: no reader may start while a writer waits, which is
// exactly the monotonicity the priority property demands.

struct rw_sim {
    emitter& em;
    det_rng& rng;
    bool bug_overlap;    // readers may slip in while a writer is active
    bool bug_no_priority;  // readers may slip in while writers wait

    static constexpr int R_MAX = 4;
    static constexpr int WW_MAX = 2;

    int r = 0, w = 0, ww = 0;
    int next_reader = 1, next_writer = 1;

    void write(const char* field, int v, const std::string& thread) {
        em.field_write(thread, "rw.Database", 1, field, value(int64_t(v)));
    }

    void run(uint64_t target) {
        write("r", 0, "main");
        write("w", 0, "main");
        write("ww", 0, "main");
        while (em.key_writes() < target) step(target);
    }

    enum class act { reader_arrive, reader_leave, writer_arrive, writer_start, writer_finish };

    void step(uint64_t target) {
        std::vector<act> pool;
        auto add = [&](act a, int weight) { pool.insert(pool.end(), size_t(weight), a); };

        bool arrive_ok = r < R_MAX && w == 0 && ww == 0;
        if (bug_no_priority && r < R_MAX && w == 0 && ww > 0) {
            add(act::reader_arrive, 4);  // fault: ignore the waiting writer
        } else if (bug_overlap && r < R_MAX && w == 1 && ww == 0) {
            add(act::reader_arrive, 4);  // fault: ignore the active writer
        } else if (arrive_ok) {
            add(act::reader_arrive, 3);
        }
        if (r > 0) add(act::reader_leave, 2);
        if (ww < WW_MAX) add(act::writer_arrive, 2);
        if (ww > 0 && w == 0 && r == 0) add(act::writer_start, 3);
        if (w == 1) add(act::writer_finish, 2);
        if (pool.empty()) return;

        switch (pool[rng.pick(pool.size())]) {
            case act::reader_arrive: {
                std::string t = "reader-" + std::to_string(1 + int(rng.pick(R_MAX)));
                write("r", ++r, t);
                break;
            }
            case act::reader_leave: {
                std::string t = "reader-" + std::to_string(1 + int(rng.pick(R_MAX)));
                write("r", --r, t);
                break;
            }
            case act::writer_arrive: {
                std::string t = "writer-" + std::to_string(1 + int(rng.pick(2)));
                write("ww", ++ww, t);
                break;
            }
            case act::writer_start: {
                std::string t = "writer-" + std::to_string(1 + int(rng.pick(2)));
                write("ww", --ww, t);
                if (em.key_writes() < target) write("w", w = 1, t);
                break;
            }
            case act::writer_finish: {
                std::string t = "writer-" + std::to_string(1 + int(rng.pick(2)));
                write("w", w = 0, t);
                break;
            }
        }
    }
};

// -------------------------------------------------------------- elevator ----
//
// One cabin over floors 1..10 with outstanding-request lists `up` and
// `down`. The policy follows the classic sweep: serve everything at the
// current floor, keep moving while any request lies ahead in the current
// direction, and flip direction (writing d first, before any further floor
// write) only when requests remain solely behind. Every write changes the
// written component, so same-value self-loops never occur.

struct elevator_sim {
    emitter& em;
    det_rng& rng;
    bool bug_skip;

    static constexpr int TOP = 10;

    int64_t f = 1;
    std::string d = "up";
    int_list up, down;

    bool injected = false;   // fault bookkeeping: the doomed floor-9 request
    int drop_countdown = -1;
    int64_t cap = TOP;  // after the drop, all later requests stay below 9

    const std::string cab = "elevator-1";

    void write_f() { em.field_write(cab, "elev.Elevator", 1, "f", value(f)); }
    void write_d() { em.field_write(cab, "elev.Elevator", 1, "d", value(d)); }
    void write_list(const char* name, const int_list& l, const std::string& thread) {
        em.field_write(thread, "elev.Elevator", 1, name, value(l));
    }

    static void insert_sorted(int_list& l, int64_t g) {
        l.insert(std::upper_bound(l.begin(), l.end(), g), g);
    }
    static bool contains(const int_list& l, int64_t g) {
        return std::binary_search(l.begin(), l.end(), g);
    }
    static void remove_one(int_list& l, int64_t g) {
        auto it = std::lower_bound(l.begin(), l.end(), g);
        if (it != l.end() && *it == g) l.erase(it);
    }

    bool any_above() const {
        return (!up.empty() && up.back() > f) || (!down.empty() && down.back() > f);
    }
    bool any_below() const {
        return (!up.empty() && up.front() < f) || (!down.empty() && down.front() < f);
    }

    void rider_request(int64_t g, bool going_up) {
        std::string t = "rider-" + std::to_string(1 + int(rng.pick(3)));
        if (going_up) {
            insert_sorted(up, g);
            write_list("up", up, t);
        } else {
            insert_sorted(down, g);
            write_list("down", down, t);
        }
    }

    // One simulation step; emits at most two writes (both-list service).
    void step(bool allow_arrivals) {
        if (drop_countdown > 0 && --drop_countdown == 0) {
            // Fault: the controller silently forgets the floor-9 up request.
            remove_one(up, TOP - 1);
            write_list("up", up, cab);
            cap = TOP - 2;  // later requests stay below the dropped floor
            return;
        }
        if (allow_arrivals && bug_skip && !injected && em.key_writes() >= 40 && f <= 5) {
            injected = true;
            drop_countdown = 2;
            rider_request(TOP - 1, true);
            return;
        }
        if (allow_arrivals && up.size() + down.size() < 4 && rng.chance(0.35)) {
            bool going_up = rng.chance(0.5);
            int64_t lo = going_up ? 1 : 2;
            int64_t hi = std::min<int64_t>(going_up ? TOP - 1 : TOP, cap);
            int64_t g = lo + int64_t(rng.pick(uint64_t(hi - lo + 1)));
            if (g != f && !(going_up ? contains(up, g) : contains(down, g))) {
                rider_request(g, going_up);
                return;
            }
            return;  // duplicate or same-floor press: nothing observable
        }
        if (contains(up, f)) {
            remove_one(up, f);
            write_list("up", up, cab);
            if (contains(down, f)) {
                remove_one(down, f);
                write_list("down", down, cab);
            }
            return;
        }
        if (contains(down, f)) {
            remove_one(down, f);
            write_list("down", down, cab);
            return;
        }
        if (up.empty() && down.empty()) return;  // idle: wait for a request
        if (d == "up" && !any_above() && any_below()) {
            d = "down";
            write_d();
            return;
        }
        if (d == "down" && !any_below() && any_above()) {
            d = "up";
            write_d();
            return;
        }
        f += (d == "up") ? 1 : -1;
        write_f();
    }

    void drain() {
        while (!up.empty() || !down.empty()) step(false);
    }

    void run(uint64_t target) {
        write_f();
        d = "up";
        write_d();
        write_list("up", up, cab);
        write_list("down", down, cab);

        uint64_t arrivals_until = target > 50 ? target - 50 : 0;
        while (em.key_writes() < arrivals_until) step(true);

        if (bug_skip && !injected) {
            // Degenerate seeds may finish the arrival phase away from the
            // ground floors; steer the cabin down, then plant the request.
            if (f > 5 && !contains(down, 2)) {
                insert_sorted(down, 2);
                write_list("down", down, cab);
            }
            while (f > 5) step(false);
            injected = true;
            drop_countdown = 2;
            rider_request(TOP - 1, true);
            step(false);
            step(false);
        }
        drain();

        // Top up to the target with short press-and-serve cycles so the
        // trace ends with both request lists drained.
        while (em.key_writes() + 2 < target) {
            int64_t g = f >= 2 ? f - 1 : f + 1;
            rider_request(g, true);
            drain();
        }
    }
};

// ----------------------------------------------------------------- oauth ----
//
// Authorization rounds over one Scheduler object whose `scheduled` field
// walks the protocol states. Success rounds pass through authorization;
// failure rounds abandon the run either before authorization is granted or
// after the token is rejected, so the resource is not sent in some rounds.
// The skip_auth fault serves the resource without authorization.

struct oauth_sim {
    emitter& em;
    det_rng& rng;
    bool bug_skip_auth;

    struct hop {
        const char* state;
        const char* thread;
        const char* method;
    };

    static const hop& table(const std::string& state) {
        static const std::vector<hop> hops = {
            {"Service_Requested", "client-1", "oauth.Client.requestService"},
            {"Redirect_To_AuthServer", "client-1", "oauth.Client.redirectToAuthServer"},
            {"User_Authenticated", "owner-1", "oauth.ResourceOwner.authenticate"},
            {"Authorization_Granted", "auth-server-1", "oauth.AuthServer.grantAuthorization"},
            {"Authorization_Denied", "auth-server-1", "oauth.AuthServer.denyAuthorization"},
            {"Access_Token_Requested", "client-1", "oauth.Client.requestAccessToken"},
            {"Access_Token_Issued", "auth-server-1", "oauth.AuthServer.issueAccessToken"},
            {"Token_Rejected", "resource-server-1", "oauth.ResourceServer.rejectToken"},
            {"Protected_Resource_Requested", "client-1", "oauth.Client.requestResource"},
            {"Protected_Resource_Sent", "resource-server-1", "oauth.ResourceServer.sendResource"},
            {"Session_Closed", "client-1", "oauth.Client.closeSession"},
        };
        for (const auto& h : hops)
            if (state == h.state) return h;
        throw model_error("unknown oauth state " + state);
    }

    void hop_to(const char* state) {
        const hop& h = table(state);
        em.method_entry(h.thread, h.method);
        em.field_write(h.thread, "oauth.Scheduler", 1, "scheduled", value(std::string(h.state)));
    }

    void round(const std::vector<const char*>& states) {
        for (const char* s : states) hop_to(s);
    }

    void run(uint64_t target) {
        const std::vector<const char*> success = {
            "Service_Requested", "Redirect_To_AuthServer", "User_Authenticated",
            "Authorization_Granted", "Access_Token_Requested", "Access_Token_Issued",
            "Protected_Resource_Requested", "Protected_Resource_Sent", "Session_Closed"};
        const std::vector<const char*> deny = {"Service_Requested", "Redirect_To_AuthServer",
                                               "Authorization_Denied", "Session_Closed"};
        const std::vector<const char*> token_reject = {
            "Service_Requested", "Redirect_To_AuthServer", "User_Authenticated",
            "Authorization_Granted", "Access_Token_Requested", "Token_Rejected",
            "Session_Closed"};
        const std::vector<const char*> skip_auth = {
            "Service_Requested", "Redirect_To_AuthServer", "Access_Token_Requested",
            "Access_Token_Issued", "Protected_Resource_Requested", "Protected_Resource_Sent",
            "Session_Closed"};

        int n = 0;
        while (em.key_writes() + 4 < target) {
            ++n;
            if (n == 1) {
                round(success);  // every trace demonstrates the full flow once
            } else if (bug_skip_auth && n == 2) {
                round(skip_auth);  // the fault shows up early and surely
            } else {
                uint64_t u = rng.pick(100);
                if (bug_skip_auth) {
                    if (u < 50) round(success);
                    else if (u < 65) round(deny);
                    else if (u < 80) round(token_reject);
                    else round(skip_auth);
                } else {
                    if (u < 60) round(success);
                    else if (u < 80) round(deny);
                    else round(token_reject);
                }
            }
        }
    }
};

// ----------------------------------------------------------------- drone ----
//
// Circular survey mission around a home point: hover at ~323 m, climb
// vertically, fly out to a 250 m circle, lap it at the 385-386 m band and
// again at the 410-411 m band, then descend, fly back in and land. Every
// tick emits lat, lon and alt writes. The geofence_breach fault balloons
// the flight path beyond 300 m from home midway through the second lap.

struct drone_sim {
    emitter& em;
    det_rng& rng;
    bool bug_breach;

    static constexpr double REF_LAT = 40.0;
    static constexpr double REF_LON = -75.2;

    void emit_tick(double east_m, double north_m, double alt) {
        constexpr double m_per_deg = earth_radius_m * std::numbers::pi / 180.0;
        double lat = REF_LAT + north_m / m_per_deg;
        double lon = REF_LON + east_m / (m_per_deg * std::cos(REF_LAT * std::numbers::pi / 180.0));
        em.field_write("flight-1", "uav.LatLonAlt", 1, "lat", value(lat));
        em.field_write("flight-1", "uav.LatLonAlt", 1, "lon", value(lon));
        em.field_write("flight-1", "uav.LatLonAlt", 1, "alt", value(alt));
    }

    static double lerp(double a, double b, double t) { return a + (b - a) * t; }

    void run(uint64_t target) {
        const uint64_t ticks = target / 3;
        // Phase mix in percent; boundaries are cumulative tick indices.
        const int pct[10] = {12, 8, 8, 5, 20, 5, 20, 7, 8, 7};
        uint64_t bound[10];
        int cum = 0;
        for (int i = 0; i < 10; ++i) {
            cum += pct[i];
            bound[i] = ticks * uint64_t(cum) / 100;
        }
        bound[9] = ticks;

        double theta = 0.0;
        for (uint64_t t = 0; t < ticks; ++t) {
            int ph = 0;
            while (bound[ph] <= t) ++ph;
            uint64_t lo = ph == 0 ? 0 : bound[ph - 1];
            uint64_t n = bound[ph] - lo;
            double prog = n == 0 ? 0.0 : double(t - lo) / double(n);

            double r = 0.0, alt = 323.0;
            switch (ph) {
                case 0:  // hover at home
                    r = rng.real(0.0, 0.4);
                    theta = rng.real(0.0, 2 * std::numbers::pi);
                    alt = rng.real(322.4, 323.7);
                    break;
                case 1:  // vertical climb over the pad
                    r = rng.real(0.0, 0.4);
                    theta = rng.real(0.0, 2 * std::numbers::pi);
                    alt = lerp(323.5, 361.2, prog) + rng.real(0.0, 0.5);
                    break;
                case 2:  // fly out to the circle at waypoint altitude
                    r = lerp(2.0, 250.0, prog);
                    theta = 0.35 * prog;
                    alt = lerp(362.2, 364.0, prog) + rng.real(0.0, 0.4);
                    break;
                case 3:  // climbing spiral onto the first lap band
                    r = 250.0 + rng.real(0.0, 1.0);
                    theta += 0.5 * std::numbers::pi / double(n);
                    alt = lerp(365.2, 384.8, prog) + rng.real(0.0, 0.2);
                    break;
                case 4:  // lap one
                    r = 250.0 + rng.real(0.0, 1.5);
                    theta += 2 * std::numbers::pi / double(n);
                    alt = rng.real(385.15, 385.9);
                    break;
                case 5:  // climbing spiral onto the second lap band
                    r = 250.0 + rng.real(0.0, 1.0);
                    theta += 0.5 * std::numbers::pi / double(n);
                    alt = lerp(386.2, 409.8, prog) + rng.real(0.0, 0.15);
                    break;
                case 6: {  // lap two (where the geofence fault strikes)
                    double bump = 0.0;
                    if (bug_breach && prog >= 0.3 && prog < 0.7) {
                        double s = (prog - 0.3) / 0.4;
                        bump = 62.0 * std::sin(std::numbers::pi * s);
                    }
                    r = 250.0 + bump + rng.real(0.0, 1.5);
                    theta += 2 * std::numbers::pi / double(n);
                    alt = rng.real(410.15, 410.85);
                    break;
                }
                case 7:  // descend while circling
                    r = 250.0 + rng.real(0.0, 1.0);
                    theta += std::numbers::pi / double(n);
                    alt = lerp(410.4, 363.5, prog);
                    break;
                case 8:  // fly back in
                    r = lerp(250.0, 1.2, prog);
                    theta += 0.1 / double(n);
                    alt = 362.6 + rng.real(0.0, 0.9);
                    break;
                default:  // vertical descent and final hover
                    r = rng.real(0.0, 0.4);
                    if (prog < 0.7)
                        alt = lerp(363.0, 323.2, prog / 0.7);
                    else
                        alt = rng.real(322.5, 323.6);
                    break;
            }
            emit_tick(r * std::sin(theta), r * std::cos(theta), alt);
        }
    }
};

// ---------------------------------------------------------- spec packs ----

const char* dining_spec =
    "# Dining philosophers: five cyclic eaters sharing five forks.\n"
    "key p1 = dp.Philo:1.state : str\n"
    "key p2 = dp.Philo:2.state : str\n"
    "key p3 = dp.Philo:3.state : str\n"
    "key p4 = dp.Philo:4.state : str\n"
    "key p5 = dp.Philo:5.state : str\n"
    "abs p1 = bool(p1 == \"E\")\n"
    "abs p2 = bool(p2 == \"E\")\n"
    "abs p3 = bool(p3 == \"E\")\n"
    "abs p4 = bool(p4 == \"E\")\n"
    "abs p5 = bool(p5 == \"E\")\n"
    "prop safety = G[(p1 == \"E\" -> p2 != \"E\") && (p2 == \"E\" -> p3 != \"E\") && "
    "(p3 == \"E\" -> p4 != \"E\") && (p4 == \"E\" -> p5 != \"E\") && "
    "(p5 == \"E\" -> p1 != \"E\")]\n";

const char* rw_spec =
    "# Readers-writers with writer priority on one shared database.\n"
    "key r = rw.Database:1.r : int\n"
    "key w = rw.Database:1.w : int\n"
    "key ww = rw.Database:1.ww : int\n"
    "abs r = range[0:1]\n"
    "abs w = range[0:1:2]\n"
    "prop safety = G[(r > 0 -> w == 0) && (r >= 0) && (w == 0 || w == 1)]\n"
    "prop priority = G[ww > 0 -> r' <= r]\n";

const char* rw_excl_spec =
    "# Mutual-exclusion conjunct alone, under boolean abstractions.\n"
    "key r = rw.Database:1.r : int\n"
    "key w = rw.Database:1.w : int\n"
    "abs r = bool(r > 0)\n"
    "abs w = bool(w == 0)\n"
    "prop excl = G[r > 0 -> w == 0]\n";

const char* rw_nonneg_spec =
    "# Reader-count sanity conjunct alone, under a boolean abstraction.\n"
    "key r = rw.Database:1.r : int\n"
    "abs r = bool(r >= 0)\n"
    "prop nonneg = G[r >= 0]\n";

const char* rw_wbound_spec =
    "# Writer-flag sanity conjunct alone, under a boolean abstraction.\n"
    "key w = rw.Database:1.w : int\n"
    "abs w = bool(w == 0 || w == 1)\n"
    "prop wbound = G[w == 0 || w == 1]\n";

const char* elevator_spec =
    "# Single-cabin elevator over floors 1..10 with request lists.\n"
    "key f = elev.Elevator:1.f : int\n"
    "key d = elev.Elevator:1.d : str\n"
    "key up = elev.Elevator:1.up : intList\n"
    "key down = elev.Elevator:1.down : intList\n"
    "prop served = G[all(i, up, F[f == i])] && G[all(i, down, F[f == i])]\n"
    "prop motion = G[up == up' && down == down' -> "
    "(d == \"down\" && d' == \"down\" -> f > f') && "
    "(d == \"up\" && d' == \"up\" -> f < f') && "
    "(d != d' -> f == f')]\n"
    "prop turn_up = G[up == up' && down == down' -> "
    "(d == \"down\" && f <= up#min && f <= down#min -> d' == \"up\")]\n"
    "prop turn_down = G[up == up' && down == down' -> "
    "(d == \"up\" && f >= up#max && f >= down#max -> d' == \"down\")]\n";

const char* oauth_spec =
    "# OAuth authorization rounds over the scheduler's protocol state.\n"
    "key s = oauth.Scheduler:1.scheduled : str\n"
    "path auth on s = (s == \"Service_Requested\") ~~> (s == \"Authorization_Granted\") ~~> "
    "(s == \"Protected_Resource_Sent\")\n"
    "prop resource_auth = P[s == \"Service_Requested\" ~~> s == \"Authorization_Granted\" ~~> "
    "s == \"Protected_Resource_Sent\"]\n";

const char* drone_spec =
    "# UAV circular mission: telemetry with derived distance and compass.\n"
    "key lat = uav.LatLonAlt:1.lat : real\n"
    "key lon = uav.LatLonAlt:1.lon : real\n"
    "key a = uav.LatLonAlt:1.alt : real\n"
    "derive d = haversine(lat, lon, 40.0, -75.2)\n"
    "derive dir = compass(lat, lon, 40.0, -75.2)\n"
    "abs a = range[324:362:365:385:386:410:411]\n"
    "prop low_home = G[a <= 325 -> dir == \"C\"]\n"
    "prop return_home = G[(a > 325 && dir != \"C\") -> F[a <= 325 && dir == \"C\"]]\n"
    "prop geofence = G[d >= 0 && d <= 300]\n";

const char* drone_alt_spec =
    "# Altitude-band view of the mission alone.\n"
    "key a = uav.LatLonAlt:1.alt : real\n"
    "abs a = range[324:362:365:385:386:410:411]\n"
    "prop ceiling = G[a < 411]\n";

struct scenario_info {
    const char* name;
    std::vector<const char*> bugs;
    uint64_t min_events;
};

const std::vector<scenario_info>& scenario_table() {
    static const std::vector<scenario_info> table = {
        {"dining", {"adjacent_eating"}, 10},
        {"readers_writers", {"rw_overlap", "no_priority"}, 10},
        {"elevator", {"skip_request"}, 120},
        {"oauth", {"skip_auth"}, 40},
        {"drone", {"geofence_breach"}, 300},
    };
    return table;
}

const scenario_info& lookup_scenario(const std::string& name) {
    for (const auto& s : scenario_table())
        if (name == s.name) return s;
    throw config_error("unknown scenario: " + name);
}

}  // namespace

std::vector<std::string> known_scenarios() {
    std::vector<std::string> out;
    for (const auto& s : scenario_table()) out.emplace_back(s.name);
    return out;
}

std::vector<std::string> known_bugs(const std::string& scenario) {
    const auto& info = lookup_scenario(scenario);
    return {info.bugs.begin(), info.bugs.end()};
}

scenario_output generate_scenario(const scenario_config& cfg) {
    const auto& info = lookup_scenario(cfg.scenario);
    if (!cfg.bug.empty() &&
        std::find(info.bugs.begin(), info.bugs.end(), cfg.bug) == info.bugs.end())
        throw config_error("unknown bug id for scenario " + cfg.scenario + ": " + cfg.bug);
    if (cfg.events < info.min_events)
        throw config_error("scenario " + cfg.scenario + " needs an event target of at least " +
                           std::to_string(info.min_events));
    if (cfg.events > 100000000ULL)
        throw config_error("event target too large (limit 100000000)");

    emitter em;
    det_rng rng(cfg.seed);
    scenario_output out;

    if (cfg.scenario == "dining") {
        dining_sim{em, rng, cfg.bug == "adjacent_eating"}.run(cfg.events);
        out.spec_text = dining_spec;
    } else if (cfg.scenario == "readers_writers") {
        rw_sim{em, rng, cfg.bug == "rw_overlap", cfg.bug == "no_priority"}.run(cfg.events);
        out.spec_text = rw_spec;
        out.extra_specs = {{"rw_excl.spec", rw_excl_spec},
                           {"rw_nonneg.spec", rw_nonneg_spec},
                           {"rw_wbound.spec", rw_wbound_spec}};
    } else if (cfg.scenario == "elevator") {
        elevator_sim{em, rng, cfg.bug == "skip_request"}.run(cfg.events);
        out.spec_text = elevator_spec;
    } else if (cfg.scenario == "oauth") {
        oauth_sim{em, rng, cfg.bug == "skip_auth"}.run(cfg.events);
        out.spec_text = oauth_spec;
    } else {  // drone
        drone_sim{em, rng, cfg.bug == "geofence_breach"}.run(cfg.events);
        out.spec_text = drone_spec;
        out.extra_specs = {{"drone_alt.spec", drone_alt_spec}};
    }

    out.trace_jsonl = std::move(em).take();
    return out;
}

void write_scenario_files(const scenario_config& cfg, const std::string& out_dir) {
    scenario_output out = generate_scenario(cfg);
    std::filesystem::create_directories(out_dir);
    auto dump = [&](const std::string& name, const std::string& text) {
        std::ofstream os(std::filesystem::path(out_dir) / name, std::ios::binary);
        if (!os) throw config_error("cannot write " + name + " under " + out_dir);
        os << text;
    };
    dump("trace.jsonl", out.trace_jsonl);
    dump("scenario.spec", out.spec_text);
    for (const auto& [name, text] : out.extra_specs) dump(name, text);
}

}  // namespace fsmrv
