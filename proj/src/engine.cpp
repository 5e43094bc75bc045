#include "coex/engine.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "coex/csat.hpp"
#include "coex/rng.hpp"

namespace coex {

LteOccupancy lte_occupancy(const DutyCycle& dc, SimTime t, SimTime lte_start) {
    LteOccupancy r;
    const std::uint64_t cycle = dc.cycle_us();
    const std::uint64_t pos = (t - lte_start) % cycle;
    r.on = pos < dc.t_on_us;
    r.next_edge_in_us = r.on ? dc.t_on_us - pos : cycle - pos;
    return r;
}

std::uint64_t frame_occupancy_us(const PhyParams& p, PacketKind kind, std::uint32_t bytes) {
    if (requires_ack(kind)) return unicast_airtime_us(p, bytes);
    if (kind == PacketKind::Beacon && bytes == p.beacon_bytes) return beacon_airtime_us(p);
    // broadcast frame: preamble + payload only
    PhyParams q = p;
    q.beacon_bytes = bytes;
    return beacon_airtime_us(q);
}

namespace {

// Event kinds in deterministic tiebreak order: simultaneous events process in
// this order, then by node id, then by insertion sequence.
enum class EventKind : std::uint8_t {
    LteOnStart,
    LteOnEnd,
    BeaconDue,
    PacketArrival,
    DifsComplete,
    BackoffSlotTick,
    TxComplete,
    AckDue,
    SenseWindowClose,
    CsatDecision,
};

struct Event {
    SimTime at = 0;
    EventKind kind = EventKind::LteOnStart;
    std::uint32_t node = 0;
    std::uint64_t seq = 0;
    std::uint32_t gen = 0;
    std::uint64_t aux = 0;
};

struct EventAfter {
    bool operator()(const Event& a, const Event& b) const {
        if (a.at != b.at) return a.at > b.at;
        if (a.kind != b.kind) return a.kind > b.kind;
        if (a.node != b.node) return a.node > b.node;
        return a.seq > b.seq;
    }
};

constexpr std::uint64_t kAuxPoissonArrival = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint64_t kAuxInitialArrival = kAuxPoissonArrival - 1;

struct Packet {
    PacketKind kind = PacketKind::Beacon;
    std::uint32_t bytes = 0;
    std::uint32_t src = 0;
    std::uint32_t dst = 0;
    unsigned attempts = 0;
    std::uint64_t beacon_due = 0;
    std::int32_t client = -1;  // owning client index for exchange packets
};

struct Occupant {
    std::uint32_t tx = 0;
    std::int32_t packet = -1;  // -1: LTE ON period
    SimTime start = 0;
    SimTime end = 0;
};

struct Mac {
    enum class Phase : std::uint8_t { Idle, Difs, Backoff, Transmitting, AwaitAck, Deferred };
    Phase phase = Phase::Idle;
    std::deque<std::int32_t> queue;  // packet pool indices; front stays until resolved
    std::uint32_t gen = 0;           // invalidates pending DifsComplete/BackoffSlotTick
    bool head_deferred = false;
    bool backoff_drawn = false;
    std::uint32_t backoff_remaining = 0;
    SimTime sense_end = 0;  // end of the pending DIFS window or backoff slot
    std::size_t cur_occupant = 0;
    RngStream rng{0};
};

struct ClientCtx {
    enum class Phase : std::uint8_t {
        ScanningPassive,
        ScanningActive,
        Authenticating,
        Associating,
        Associated,
        Gone,
    };
    Phase phase = Phase::ScanningActive;
    std::uint32_t node = 0;
    bool will_associate = false;
    unsigned probe_attempts = 0;
    unsigned stage_attempts = 0;
    unsigned restarts = 0;
    std::uint32_t timeout_gen = 0;
};

class Engine {
  public:
    explicit Engine(const Scenario& s)
        : s_(s),
          arrival_rng_(derive_stream_seed(s.seed, 1)),
          client_rng_(derive_stream_seed(s.seed, 2)) {}

    TraceLog run();

  private:
    // --- setup -----------------------------------------------------------
    void init_nodes();
    Mac& mac(std::uint32_t node);
    void ensure_mac(std::uint32_t node);

    // --- event plumbing ---------------------------------------------------
    void schedule(SimTime at, EventKind kind, std::uint32_t node, std::uint32_t gen = 0,
                  std::uint64_t aux = 0);
    void process(const Event& ev);

    // --- channel ----------------------------------------------------------
    bool audible(std::uint32_t listener, const Occupant& o) const;
    bool busy_present(std::uint32_t listener, SimTime t) const;
    std::size_t add_occupant(std::uint32_t tx, std::int32_t packet, SimTime start, SimTime end);
    void remove_occupant(std::size_t id);
    void notify_busy_start(const Occupant& o, SimTime t);
    void notify_busy_end(SimTime t);
    void prune_history(SimTime t);

    // --- MAC --------------------------------------------------------------
    void dispatch(std::uint32_t node, SimTime t);
    void begin_difs(std::uint32_t node, SimTime t);
    void start_tx(std::uint32_t node, SimTime t);
    void finish_tx(std::uint32_t node, SimTime t);
    void enqueue_packet(std::uint32_t node, const Packet& p, SimTime t);
    void drop_unsent(std::uint32_t node, PacketKind kind, std::int32_t client);

    // --- traffic ----------------------------------------------------------
    void on_beacon_due(SimTime t);
    void spawn_client(SimTime t, bool force_associate);
    void client_timeout(std::size_t idx, SimTime t);
    void client_send_probe(std::size_t idx, SimTime t);
    void client_send_request(std::size_t idx, PacketKind kind, SimTime t);
    void client_restart_or_despawn(std::size_t idx, SimTime t);
    void client_on_response(std::size_t idx, PacketKind kind, SimTime t);
    void deliver_effects(const Packet& p, SimTime t);
    void exhaustion_effects(const Packet& p, SimTime t);
    void maybe_despawn(std::size_t idx);

    // --- LTE / CSAT -------------------------------------------------------
    void on_lte_on_start(SimTime t);
    void on_lte_on_end(SimTime t);
    void on_sense_window_close(SimTime t);
    void on_csat_decision(SimTime t);
    void process_beacon_detection(const Packet& p, std::uint32_t node, SimTime t);

    // --- trace ------------------------------------------------------------
    void trace(SimTime t, TraceEvent ev, std::uint32_t node, const Packet* p,
               std::string outcome);
    DutyCycle current_duty_or_zero() const;

    const Scenario& s_;
    std::priority_queue<Event, std::vector<Event>, EventAfter> queue_;
    std::uint64_t next_seq_ = 0;

    std::vector<Packet> pool_;
    std::vector<Occupant> occupants_;     // indexed by occupant id, end==0 when inactive
    std::vector<std::size_t> active_;     // live occupant ids
    std::deque<std::size_t> recent_;      // occupant ids kept for collision adjudication
    std::deque<std::pair<SimTime, SimTime>> on_history_;

    std::vector<Mac> macs_;               // indexed by node id
    std::vector<std::uint32_t> contenders_;
    std::vector<ClientCtx> clients_;
    std::uint32_t next_client_node_ = kFirstClientNode;

    // LTE runtime
    bool lte_running_ = false;
    DutyCycle duty_{};
    bool csat_pending_ = false;
    DutyCycle csat_pending_duty_{};
    SimTime csat_pending_from_ = 0;
    CsatState csat_state_{};
    bool window_has_beacon_ = false;
    double window_max_dbm_ = 0.0;

    RngStream arrival_rng_;
    RngStream client_rng_;

    TraceLog out_;
};

TraceLog Engine::run() {
    s_.validate();
    init_nodes();
    while (!queue_.empty() && queue_.top().at <= s_.duration_us) {
        Event ev = queue_.top();
        queue_.pop();
        process(ev);
    }
    return std::move(out_);
}

void Engine::init_nodes() {
    ensure_mac(kNodeApB);
    ensure_mac(kNodeApA);

    if (s_.wifi_ap_enabled) {
        contenders_.push_back(kNodeApB);
        schedule(s_.wifi_start_us, EventKind::BeaconDue, kNodeApB);
    }
    if (s_.second_ap_enabled) {
        contenders_.push_back(kNodeApA);
        Packet data;
        data.kind = PacketKind::Data;
        data.bytes = s_.second_ap_frame_bytes;
        data.src = kNodeApA;
        data.dst = kNodePeerA;
        // The saturated source starts when the incumbent cell starts.
        pool_.push_back(data);
        mac(kNodeApA).queue.push_back(static_cast<std::int32_t>(pool_.size() - 1));
        schedule(s_.lte_start_us, EventKind::PacketArrival, kNodeApA, 0, pool_.size() - 1);
    }
    if (s_.lte_mode != LteMode::Off) {
        lte_running_ = true;
        duty_ = s_.lte_mode == LteMode::Fixed
                    ? s_.fixed_duty
                    : (s_.csat.start_high ? s_.csat.high_duty : s_.csat.low_duty);
        csat_state_ = csat_initial_state(s_.csat);
        schedule(s_.lte_start_us, EventKind::LteOnStart, kNodeLteBs);
    }
    if (s_.wifi_ap_enabled && s_.probe_rate_per_s > 0.0) {
        const double mean_gap_us = 1e6 / s_.probe_rate_per_s;
        SimTime first = s_.wifi_start_us +
                        static_cast<SimTime>(arrival_rng_.exponential(mean_gap_us));
        schedule(first, EventKind::PacketArrival, kNodeApB, 0, kAuxPoissonArrival);
    }
    if (s_.wifi_ap_enabled && s_.client.initial_scan_clients > 0) {
        for (unsigned i = 0; i < s_.client.initial_scan_clients; ++i) {
            SimTime at = s_.wifi_start_us +
                         client_rng_.uniform_below(s_.client.initial_scan_window_us + 1);
            schedule(at, EventKind::PacketArrival, kNodeApB, 0, kAuxInitialArrival);
        }
    }
}

Mac& Engine::mac(std::uint32_t node) {
    ensure_mac(node);
    return macs_[node];
}

void Engine::ensure_mac(std::uint32_t node) {
    while (macs_.size() <= node) {
        Mac m;
        m.rng = RngStream(derive_stream_seed(s_.seed, 16 + macs_.size()));
        macs_.push_back(std::move(m));
    }
}

void Engine::schedule(SimTime at, EventKind kind, std::uint32_t node, std::uint32_t gen,
                      std::uint64_t aux) {
    queue_.push(Event{at, kind, node, next_seq_++, gen, aux});
}

void Engine::process(const Event& ev) {
    switch (ev.kind) {
        case EventKind::LteOnStart:
            on_lte_on_start(ev.at);
            break;
        case EventKind::LteOnEnd:
            on_lte_on_end(ev.at);
            break;
        case EventKind::BeaconDue:
            on_beacon_due(ev.at);
            break;
        case EventKind::PacketArrival:
            if (ev.aux == kAuxPoissonArrival) {
                spawn_client(ev.at, false);
                const double mean_gap_us = 1e6 / s_.probe_rate_per_s;
                SimTime next = ev.at + static_cast<SimTime>(arrival_rng_.exponential(mean_gap_us));
                schedule(next, EventKind::PacketArrival, kNodeApB, 0, kAuxPoissonArrival);
            } else if (ev.aux == kAuxInitialArrival) {
                spawn_client(ev.at, s_.client.initial_clients_associate);
            } else if (ev.node == kNodeApA) {
                // saturated source bootstrap
                if (mac(kNodeApA).phase == Mac::Phase::Idle) dispatch(kNodeApA, ev.at);
            } else {
                const std::size_t idx = static_cast<std::size_t>(ev.aux);
                if (idx < clients_.size() && ev.gen == clients_[idx].timeout_gen) {
                    client_timeout(idx, ev.at);
                }
            }
            break;
        case EventKind::DifsComplete: {
            Mac& m = mac(ev.node);
            if (ev.gen != m.gen || m.phase != Mac::Phase::Difs) break;
            if (s_.access == AccessPolicy::CsmaNoBackoff || !m.head_deferred) {
                start_tx(ev.node, ev.at);
                break;
            }
            if (!m.backoff_drawn) {
                m.backoff_remaining = static_cast<std::uint32_t>(m.rng.uniform_below(s_.phy.cw_min));
                m.backoff_drawn = true;
            }
            if (m.backoff_remaining == 0) {
                start_tx(ev.node, ev.at);
            } else {
                m.phase = Mac::Phase::Backoff;
                m.sense_end = ev.at + s_.phy.slot_us;
                schedule(m.sense_end, EventKind::BackoffSlotTick, ev.node, m.gen);
            }
            break;
        }
        case EventKind::BackoffSlotTick: {
            Mac& m = mac(ev.node);
            if (ev.gen != m.gen || m.phase != Mac::Phase::Backoff) break;
            --m.backoff_remaining;
            if (m.backoff_remaining == 0) {
                start_tx(ev.node, ev.at);
            } else {
                m.sense_end = ev.at + s_.phy.slot_us;
                schedule(m.sense_end, EventKind::BackoffSlotTick, ev.node, m.gen);
            }
            break;
        }
        case EventKind::TxComplete: {
            Mac& m = mac(ev.node);
            if (m.phase != Mac::Phase::Transmitting) break;
            if (m.queue.empty()) break;
            const Packet& p = pool_[static_cast<std::size_t>(m.queue.front())];
            if (requires_ack(p.kind)) {
                m.phase = Mac::Phase::AwaitAck;  // SIFS + ACK tail still occupies the channel
            } else {
                finish_tx(ev.node, ev.at);
            }
            break;
        }
        case EventKind::AckDue:
            finish_tx(ev.node, ev.at);
            break;
        case EventKind::SenseWindowClose:
            on_sense_window_close(ev.at);
            break;
        case EventKind::CsatDecision:
            on_csat_decision(ev.at);
            break;
    }
}

// --- channel ---------------------------------------------------------------

bool Engine::audible(std::uint32_t listener, const Occupant& o) const {
    if (o.tx == listener) return false;
    return s_.rx_power(o.tx, listener) >= s_.wifi_cs_threshold_dbm;
}

bool Engine::busy_present(std::uint32_t listener, SimTime t) const {
    for (std::size_t id : active_) {
        const Occupant& o = occupants_[id];
        if (o.start <= t && t < o.end && audible(listener, o)) return true;
    }
    return false;
}

std::size_t Engine::add_occupant(std::uint32_t tx, std::int32_t packet, SimTime start,
                                 SimTime end) {
    occupants_.push_back(Occupant{tx, packet, start, end});
    std::size_t id = occupants_.size() - 1;
    active_.push_back(id);
    recent_.push_back(id);
    return id;
}

void Engine::remove_occupant(std::size_t id) {
    active_.erase(std::find(active_.begin(), active_.end(), id));
}

void Engine::prune_history(SimTime t) {
    constexpr SimTime kKeep = 60000;
    while (!recent_.empty()) {
        const Occupant& o = occupants_[recent_.front()];
        if (o.end + kKeep >= t) break;
        recent_.pop_front();
    }
    while (!on_history_.empty() && on_history_.front().second + kKeep < t) {
        on_history_.pop_front();
    }
}

void Engine::notify_busy_start(const Occupant& o, SimTime t) {
    for (std::uint32_t node : contenders_) {
        Mac& m = macs_[node];
        if (!audible(node, o)) continue;
        if (m.phase == Mac::Phase::Difs || m.phase == Mac::Phase::Backoff) {
            // A sensing window (DIFS or one backoff slot) is dirtied only by
            // an occupant that starts strictly before it ends.
            if (o.start < m.sense_end) {
                ++m.gen;
                m.phase = Mac::Phase::Deferred;
                m.head_deferred = true;
            }
        }
    }
    (void)t;
}

void Engine::notify_busy_end(SimTime t) {
    for (std::uint32_t node : contenders_) {
        Mac& m = macs_[node];
        if (m.phase != Mac::Phase::Deferred) continue;
        if (busy_present(node, t)) continue;
        if (s_.access == AccessPolicy::Immediate) {
            start_tx(node, t);
        } else {
            begin_difs(node, t);
        }
    }
}

// --- MAC ---------------------------------------------------------------------

void Engine::dispatch(std::uint32_t node, SimTime t) {
    Mac& m = mac(node);
    if (m.phase != Mac::Phase::Idle || m.queue.empty()) return;
    if (busy_present(node, t)) {
        m.phase = Mac::Phase::Deferred;
        m.head_deferred = true;
        return;
    }
    if (s_.access == AccessPolicy::Immediate) {
        start_tx(node, t);
    } else {
        begin_difs(node, t);
    }
}

void Engine::begin_difs(std::uint32_t node, SimTime t) {
    Mac& m = mac(node);
    m.phase = Mac::Phase::Difs;
    ++m.gen;
    m.sense_end = t + s_.phy.difs_us;
    schedule(m.sense_end, EventKind::DifsComplete, node, m.gen);
}

void Engine::start_tx(std::uint32_t node, SimTime t) {
    Mac& m = mac(node);
    Packet& p = pool_[static_cast<std::size_t>(m.queue.front())];
    p.attempts++;
    const std::uint64_t occupancy = frame_occupancy_us(s_.phy, p.kind, p.bytes);
    m.phase = Mac::Phase::Transmitting;
    ++m.gen;
    m.cur_occupant = add_occupant(node, m.queue.front(), t, t + occupancy);
    trace(t, TraceEvent::TxStart, node, &p, "");
    notify_busy_start(occupants_[m.cur_occupant], t);
    if (requires_ack(p.kind)) {
        const std::uint64_t tail = s_.phy.sifs_us + s_.phy.ack_us;
        schedule(t + occupancy - tail, EventKind::TxComplete, node);
        schedule(t + occupancy, EventKind::AckDue, node);
    } else {
        schedule(t + occupancy, EventKind::TxComplete, node);
    }
}

void Engine::finish_tx(std::uint32_t node, SimTime t) {
    Mac& m = mac(node);
    if ((m.phase != Mac::Phase::Transmitting && m.phase != Mac::Phase::AwaitAck) ||
        m.queue.empty()) {
        return;
    }
    const std::size_t occ_id = m.cur_occupant;
    const Occupant occ = occupants_[occ_id];
    remove_occupant(occ_id);
    prune_history(t);

    Packet p = pool_[static_cast<std::size_t>(occ.packet)];

    TxOutcome outcome = TxOutcome::Delivered;
    for (const auto& [on_s, on_e] : on_history_) {
        if (on_s < occ.end && on_e > occ.start) {
            outcome = TxOutcome::DroppedOverlapOn;
            break;
        }
    }
    if (outcome == TxOutcome::Delivered) {
        for (std::size_t id : recent_) {
            if (id == occ_id) continue;
            const Occupant& o = occupants_[id];
            if (o.start < occ.end && o.end > occ.start) {
                outcome = TxOutcome::DroppedCollision;
                break;
            }
        }
    }

    trace(t, TraceEvent::TxOutcome, node, &p, to_string(outcome));

    m.phase = Mac::Phase::Idle;
    m.head_deferred = false;
    m.backoff_drawn = false;
    m.backoff_remaining = 0;

    if (outcome == TxOutcome::Delivered) {
        m.queue.pop_front();
        if (p.kind == PacketKind::Beacon) process_beacon_detection(p, node, t);
        deliver_effects(p, t);
    } else if (!requires_ack(p.kind)) {
        // Broadcast frames are not retransmitted; beacons wait for the next
        // period, probe requests for the client's response timeout.
        m.queue.pop_front();
    } else if (p.attempts >= s_.retry_limit) {
        m.queue.pop_front();
        exhaustion_effects(p, t);
    } else {
        pool_[static_cast<std::size_t>(occ.packet)] = p;  // keep attempt count
        m.head_deferred = true;                           // retransmit after DIFS + backoff
    }

    notify_busy_end(t);
    if (!m.queue.empty() && m.phase == Mac::Phase::Idle) {
        // Post-transmission access always contends with DIFS + backoff.
        m.head_deferred = true;
        dispatch(node, t);
    }
}

void Engine::enqueue_packet(std::uint32_t node, const Packet& p, SimTime t) {
    pool_.push_back(p);
    Mac& m = mac(node);
    m.queue.push_back(static_cast<std::int32_t>(pool_.size() - 1));
    if (m.phase == Mac::Phase::Idle) dispatch(node, t);
}

void Engine::drop_unsent(std::uint32_t node, PacketKind kind, std::int32_t client) {
    Mac& m = mac(node);
    const std::size_t first =
        (m.phase == Mac::Phase::Transmitting || m.phase == Mac::Phase::AwaitAck) ? 1 : 0;
    for (std::size_t i = m.queue.size(); i > first; --i) {
        const Packet& p = pool_[static_cast<std::size_t>(m.queue[i - 1])];
        if (p.kind == kind && p.client == client) {
            m.queue.erase(m.queue.begin() + static_cast<std::ptrdiff_t>(i - 1));
        }
    }
}

// --- traffic -----------------------------------------------------------------

void Engine::on_beacon_due(SimTime t) {
    Packet fresh;
    fresh.kind = PacketKind::Beacon;
    fresh.bytes = s_.phy.beacon_bytes;
    fresh.src = kNodeApB;
    fresh.dst = kNodeApB;  // broadcast; field unused
    fresh.beacon_due = t;

    trace(t, TraceEvent::Due, kNodeApB, &fresh, "");
    schedule(t + s_.phy.beacon_interval_us, EventKind::BeaconDue, kNodeApB);

    Mac& m = mac(kNodeApB);
    const std::size_t first =
        (m.phase == Mac::Phase::Transmitting || m.phase == Mac::Phase::AwaitAck) ? 1 : 0;
    for (std::size_t i = first; i < m.queue.size(); ++i) {
        Packet& q = pool_[static_cast<std::size_t>(m.queue[i])];
        if (q.kind == PacketKind::Beacon) {
            // The AP transmits the freshest beacon; the stale one is replaced
            // in place so the access attempt in progress carries on.
            trace(t, TraceEvent::Suppressed, kNodeApB, &q, "");
            q = fresh;
            return;
        }
    }
    enqueue_packet(kNodeApB, fresh, t);
}

void Engine::spawn_client(SimTime t, bool force_associate) {
    ClientCtx c;
    c.node = next_client_node_++;
    c.phase = ClientCtx::Phase::ScanningActive;
    c.will_associate = force_associate || client_rng_.uniform01() < s_.client.assoc_fraction;
    ensure_mac(c.node);
    contenders_.push_back(c.node);
    clients_.push_back(c);
    const std::size_t idx = clients_.size() - 1;

    Packet probe;
    probe.kind = PacketKind::ProbeRequest;
    probe.bytes = default_size_bytes(PacketKind::ProbeRequest);
    probe.src = c.node;
    probe.dst = kNodeApB;
    probe.client = static_cast<std::int32_t>(idx);
    trace(t, TraceEvent::Arrival, c.node, &probe, "");

    clients_[idx].probe_attempts = 1;
    enqueue_packet(c.node, probe, t);
    ++clients_[idx].timeout_gen;
    schedule(t + s_.client.response_timeout_us, EventKind::PacketArrival, c.node,
             clients_[idx].timeout_gen, idx);
}

void Engine::client_send_probe(std::size_t idx, SimTime t) {
    ClientCtx& c = clients_[idx];
    drop_unsent(c.node, PacketKind::ProbeRequest, static_cast<std::int32_t>(idx));
    Packet probe;
    probe.kind = PacketKind::ProbeRequest;
    probe.bytes = default_size_bytes(PacketKind::ProbeRequest);
    probe.src = c.node;
    probe.dst = kNodeApB;
    probe.client = static_cast<std::int32_t>(idx);
    enqueue_packet(c.node, probe, t);
    ++c.timeout_gen;
    schedule(t + s_.client.response_timeout_us, EventKind::PacketArrival, c.node, c.timeout_gen,
             idx);
}

void Engine::client_send_request(std::size_t idx, PacketKind kind, SimTime t) {
    ClientCtx& c = clients_[idx];
    drop_unsent(c.node, kind, static_cast<std::int32_t>(idx));
    Packet req;
    req.kind = kind;
    req.bytes = default_size_bytes(kind);
    req.src = c.node;
    req.dst = kNodeApB;
    req.client = static_cast<std::int32_t>(idx);
    enqueue_packet(c.node, req, t);
    ++c.timeout_gen;
    schedule(t + s_.client.response_timeout_us, EventKind::PacketArrival, c.node, c.timeout_gen,
             idx);
}

void Engine::client_restart_or_despawn(std::size_t idx, SimTime t) {
    ClientCtx& c = clients_[idx];
    ++c.timeout_gen;
    if (c.restarts >= s_.client.max_restarts) {
        c.phase = ClientCtx::Phase::Gone;
        maybe_despawn(idx);
        return;
    }
    ++c.restarts;
    drop_unsent(c.node, PacketKind::AuthRequest, static_cast<std::int32_t>(idx));
    drop_unsent(c.node, PacketKind::AssocRequest, static_cast<std::int32_t>(idx));
    c.phase = ClientCtx::Phase::ScanningActive;
    c.probe_attempts = 1;
    c.stage_attempts = 0;
    client_send_probe(idx, t);
}

void Engine::client_timeout(std::size_t idx, SimTime t) {
    ClientCtx& c = clients_[idx];
    switch (c.phase) {
        case ClientCtx::Phase::ScanningActive:
            if (c.probe_attempts < s_.client.max_probe_attempts) {
                ++c.probe_attempts;
                client_send_probe(idx, t);
            } else {
                client_restart_or_despawn(idx, t);
            }
            break;
        case ClientCtx::Phase::Authenticating:
            if (c.stage_attempts < s_.client.max_request_attempts) {
                ++c.stage_attempts;
                client_send_request(idx, PacketKind::AuthRequest, t);
            } else {
                client_restart_or_despawn(idx, t);
            }
            break;
        case ClientCtx::Phase::Associating:
            if (c.stage_attempts < s_.client.max_request_attempts) {
                ++c.stage_attempts;
                client_send_request(idx, PacketKind::AssocRequest, t);
            } else {
                client_restart_or_despawn(idx, t);
            }
            break;
        default:
            break;
    }
}

void Engine::client_on_response(std::size_t idx, PacketKind kind, SimTime t) {
    ClientCtx& c = clients_[idx];
    switch (kind) {
        case PacketKind::ProbeResponse:
            if (c.phase != ClientCtx::Phase::ScanningActive) return;
            ++c.timeout_gen;
            if (!c.will_associate) {
                c.phase = ClientCtx::Phase::Gone;
                maybe_despawn(idx);
                return;
            }
            c.phase = ClientCtx::Phase::Authenticating;
            c.stage_attempts = 1;
            client_send_request(idx, PacketKind::AuthRequest, t);
            break;
        case PacketKind::AuthResponse:
            if (c.phase != ClientCtx::Phase::Authenticating) return;
            ++c.timeout_gen;
            c.phase = ClientCtx::Phase::Associating;
            c.stage_attempts = 1;
            client_send_request(idx, PacketKind::AssocRequest, t);
            break;
        case PacketKind::AssocResponse:
            if (c.phase != ClientCtx::Phase::Associating) return;
            ++c.timeout_gen;
            c.phase = ClientCtx::Phase::Associated;
            maybe_despawn(idx);
            break;
        default:
            break;
    }
}

void Engine::deliver_effects(const Packet& p, SimTime t) {
    switch (p.kind) {
        case PacketKind::ProbeRequest:
        case PacketKind::AuthRequest:
        case PacketKind::AssocRequest: {
            PacketKind resp = p.kind == PacketKind::ProbeRequest ? PacketKind::ProbeResponse
                              : p.kind == PacketKind::AuthRequest ? PacketKind::AuthResponse
                                                                  : PacketKind::AssocResponse;
            Packet r;
            r.kind = resp;
            r.bytes = default_size_bytes(resp);
            r.src = kNodeApB;
            r.dst = p.src;
            r.client = p.client;
            enqueue_packet(kNodeApB, r, t);
            break;
        }
        case PacketKind::ProbeResponse:
        case PacketKind::AuthResponse:
        case PacketKind::AssocResponse: {
            const std::size_t idx = static_cast<std::size_t>(p.client);
            if (idx < clients_.size()) client_on_response(idx, p.kind, t);
            break;
        }
        case PacketKind::Data: {
            // Full buffer: the next frame is ready the moment this one is done.
            Packet next = p;
            next.attempts = 0;
            enqueue_packet(p.src, next, t);
            break;
        }
        default:
            break;
    }
}

void Engine::exhaustion_effects(const Packet& p, SimTime t) {
    if (p.kind == PacketKind::Data) {
        // Saturated source moves on to the next frame.
        Packet next = p;
        next.attempts = 0;
        enqueue_packet(p.src, next, t);
        return;
    }
    if (p.client < 0) return;
    const std::size_t idx = static_cast<std::size_t>(p.client);
    if (idx >= clients_.size()) return;
    if (p.src == kNodeApB) {
        // AP gave up on a response; the client's timeout drives recovery.
        return;
    }
    client_restart_or_despawn(idx, t);
}

void Engine::maybe_despawn(std::size_t idx) {
    ClientCtx& c = clients_[idx];
    if (c.phase != ClientCtx::Phase::Gone && c.phase != ClientCtx::Phase::Associated) return;
    Mac& m = mac(c.node);
    if (m.phase != Mac::Phase::Idle || !m.queue.empty()) return;
    auto it = std::find(contenders_.begin(), contenders_.end(), c.node);
    if (it != contenders_.end()) contenders_.erase(it);
}

// --- LTE / CSAT ----------------------------------------------------------------

void Engine::on_lte_on_start(SimTime t) {
    if (csat_pending_ && t >= csat_pending_from_) {
        const DutyCycle old = duty_;
        const bool to_low = csat_pending_duty_ == s_.csat.low_duty;
        duty_ = csat_pending_duty_;
        csat_pending_ = false;
        trace(t, TraceEvent::CsatSwitch, kNodeLteBs, nullptr, switch_annotation(old, to_low));
    }
    std::size_t id = add_occupant(kNodeLteBs, -1, t, t + duty_.t_on_us);
    on_history_.emplace_back(t, t + duty_.t_on_us);
    notify_busy_start(occupants_[id], t);
    schedule(t + duty_.t_on_us, EventKind::LteOnEnd, kNodeLteBs, 0, id);
    schedule(t + duty_.cycle_us(), EventKind::LteOnStart, kNodeLteBs);
}

void Engine::on_lte_on_end(SimTime t) {
    for (std::size_t i = 0; i < active_.size(); ++i) {
        const Occupant& o = occupants_[active_[i]];
        if (o.tx == kNodeLteBs && o.packet == -1 && o.end == t) {
            remove_occupant(active_[i]);
            break;
        }
    }
    window_has_beacon_ = false;
    window_max_dbm_ = s_.noise_floor_dbm;
    if (s_.lte_mode == LteMode::Csat) {
        schedule(t + duty_.t_off_us, EventKind::SenseWindowClose, kNodeLteBs);
    }
    notify_busy_end(t);
}

void Engine::on_sense_window_close(SimTime t) {
    const double dbm = window_has_beacon_ ? window_max_dbm_ : s_.noise_floor_dbm;
    csat_observe(csat_state_, s_.csat, dbm);
    trace(t, TraceEvent::SenseWindow, kNodeLteBs, nullptr,
          window_has_beacon_ ? kOutcomeWindowDetected : kOutcomeWindowIdle);
    if (csat_state_.windows_observed == s_.csat.n_windows) {
        schedule(t, EventKind::CsatDecision, kNodeLteBs);
    }
}

void Engine::on_csat_decision(SimTime t) {
    const CsatVerdict v = csat_decide(csat_state_, s_.csat);
    if (v.next_duty == duty_) {
        csat_pending_ = false;  // latest decision reaffirms the operating point
        return;
    }
    csat_pending_ = true;
    csat_pending_duty_ = v.next_duty;
    csat_pending_from_ = t + s_.csat.hw_delay_us;
}

void Engine::process_beacon_detection(const Packet& p, std::uint32_t node, SimTime t) {
    const double pw = s_.rx_power(node, kNodeLteBs);
    if (pw < s_.csat.ed_threshold_dbm) return;
    // A delivered beacon never overlaps an ON period, so under a duty-cycled
    // LTE it lies wholly inside the current OFF sensing window.
    trace(t, TraceEvent::Detected, node, &p, "");
    if (lte_running_) {
        window_has_beacon_ = true;
        window_max_dbm_ = std::max(window_max_dbm_, pw);
    }
}

// --- trace ---------------------------------------------------------------------

DutyCycle Engine::current_duty_or_zero() const {
    if (!lte_running_) return DutyCycle{0, 0};
    return duty_;
}

void Engine::trace(SimTime t, TraceEvent ev, std::uint32_t node, const Packet* p,
                   std::string outcome) {
    TraceRow r;
    r.t_us = t;
    r.event = ev;
    r.node = node;
    if (p != nullptr) {
        r.has_packet = true;
        r.packet_kind = p->kind;
    }
    r.outcome = std::move(outcome);
    const DutyCycle d = current_duty_or_zero();
    r.duty_on_us = d.t_on_us;
    r.duty_off_us = d.t_off_us;
    out_.rows.push_back(std::move(r));
}

}  // namespace

TraceLog run(const Scenario& s) {
    Engine e(s);
    return e.run();
}

}  // namespace coex
