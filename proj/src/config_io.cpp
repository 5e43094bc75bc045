#include "coex/config_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace coex {

namespace {

using nlohmann::json;

json duty_to_json(const DutyCycle& d) {
    return json{{"t_on_us", d.t_on_us}, {"t_off_us", d.t_off_us}};
}

DutyCycle duty_from_json(const json& j) {
    return DutyCycle{j.at("t_on_us").get<std::uint64_t>(), j.at("t_off_us").get<std::uint64_t>()};
}

LteMode lte_mode_from_string(const std::string& s) {
    if (s == "off") return LteMode::Off;
    if (s == "fixed") return LteMode::Fixed;
    if (s == "csat") return LteMode::Csat;
    throw std::runtime_error("scenario: unknown lte_mode '" + s + "'");
}

AccessPolicy access_from_string(const std::string& s) {
    if (s == "csma") return AccessPolicy::Csma;
    if (s == "csma_no_backoff") return AccessPolicy::CsmaNoBackoff;
    if (s == "immediate") return AccessPolicy::Immediate;
    throw std::runtime_error("scenario: unknown access policy '" + s + "'");
}

}  // namespace

std::string scenario_to_json(const Scenario& s) {
    json j;
    j["name"] = s.name;
    j["phy"] = {
        {"difs_us", s.phy.difs_us},
        {"sifs_us", s.phy.sifs_us},
        {"cw_min", s.phy.cw_min},
        {"slot_us", s.phy.slot_us},
        {"preamble_us", s.phy.preamble_us},
        {"data_rate_mbps", s.phy.data_rate_mbps},
        {"beacon_bytes", s.phy.beacon_bytes},
        {"ack_us", s.phy.ack_us},
        {"beacon_interval_us", s.phy.beacon_interval_us},
    };
    j["lte_mode"] = to_string(s.lte_mode);
    j["fixed_duty"] = duty_to_json(s.fixed_duty);
    j["csat"] = {
        {"n_windows", s.csat.n_windows},
        {"k_required", s.csat.k_required},
        {"ed_threshold_dbm", s.csat.ed_threshold_dbm},
        {"high_duty", duty_to_json(s.csat.high_duty)},
        {"low_duty", duty_to_json(s.csat.low_duty)},
        {"start_high", s.csat.start_high},
        {"hw_delay_us", s.csat.hw_delay_us},
    };
    j["lte_start_us"] = s.lte_start_us;
    j["wifi_ap_enabled"] = s.wifi_ap_enabled;
    j["wifi_start_us"] = s.wifi_start_us;
    j["second_ap_enabled"] = s.second_ap_enabled;
    j["second_ap_frame_bytes"] = s.second_ap_frame_bytes;
    j["probe_rate_per_s"] = s.probe_rate_per_s;
    j["client"] = {
        {"assoc_fraction", s.client.assoc_fraction},
        {"response_timeout_us", s.client.response_timeout_us},
        {"max_probe_attempts", s.client.max_probe_attempts},
        {"max_request_attempts", s.client.max_request_attempts},
        {"max_restarts", s.client.max_restarts},
        {"initial_scan_clients", s.client.initial_scan_clients},
        {"initial_scan_window_us", s.client.initial_scan_window_us},
        {"initial_clients_associate", s.client.initial_clients_associate},
    };
    j["access"] = to_string(s.access);
    j["retry_limit"] = s.retry_limit;
    j["default_link_dbm"] = s.default_link_dbm;
    json links = json::array();
    for (const auto& l : s.link_overrides) {
        links.push_back({{"tx", l.tx}, {"rx", l.rx}, {"dbm", l.dbm}});
    }
    j["link_overrides"] = links;
    j["noise_floor_dbm"] = s.noise_floor_dbm;
    j["wifi_cs_threshold_dbm"] = s.wifi_cs_threshold_dbm;
    j["seed"] = s.seed;
    j["duration_us"] = s.duration_us;
    return j.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(std::string("scenario: unparseable config: ") + e.what());
    }
    Scenario s;
    try {
        s.name = j.value("name", std::string("custom"));
        if (j.contains("phy")) {
            const json& p = j["phy"];
            s.phy.difs_us = p.value("difs_us", s.phy.difs_us);
            s.phy.sifs_us = p.value("sifs_us", s.phy.sifs_us);
            s.phy.cw_min = p.value("cw_min", s.phy.cw_min);
            s.phy.slot_us = p.value("slot_us", s.phy.slot_us);
            s.phy.preamble_us = p.value("preamble_us", s.phy.preamble_us);
            s.phy.data_rate_mbps = p.value("data_rate_mbps", s.phy.data_rate_mbps);
            s.phy.beacon_bytes = p.value("beacon_bytes", s.phy.beacon_bytes);
            s.phy.ack_us = p.value("ack_us", s.phy.ack_us);
            s.phy.beacon_interval_us = p.value("beacon_interval_us", s.phy.beacon_interval_us);
        }
        if (j.contains("lte_mode")) s.lte_mode = lte_mode_from_string(j["lte_mode"]);
        if (j.contains("fixed_duty")) s.fixed_duty = duty_from_json(j["fixed_duty"]);
        if (j.contains("csat")) {
            const json& c = j["csat"];
            s.csat.n_windows = c.value("n_windows", s.csat.n_windows);
            s.csat.k_required = c.value("k_required", s.csat.k_required);
            s.csat.ed_threshold_dbm = c.value("ed_threshold_dbm", s.csat.ed_threshold_dbm);
            if (c.contains("high_duty")) s.csat.high_duty = duty_from_json(c["high_duty"]);
            if (c.contains("low_duty")) s.csat.low_duty = duty_from_json(c["low_duty"]);
            s.csat.start_high = c.value("start_high", s.csat.start_high);
            s.csat.hw_delay_us = c.value("hw_delay_us", s.csat.hw_delay_us);
        }
        s.lte_start_us = j.value("lte_start_us", s.lte_start_us);
        s.wifi_ap_enabled = j.value("wifi_ap_enabled", s.wifi_ap_enabled);
        s.wifi_start_us = j.value("wifi_start_us", s.wifi_start_us);
        s.second_ap_enabled = j.value("second_ap_enabled", s.second_ap_enabled);
        s.second_ap_frame_bytes = j.value("second_ap_frame_bytes", s.second_ap_frame_bytes);
        s.probe_rate_per_s = j.value("probe_rate_per_s", s.probe_rate_per_s);
        if (j.contains("client")) {
            const json& c = j["client"];
            s.client.assoc_fraction = c.value("assoc_fraction", s.client.assoc_fraction);
            s.client.response_timeout_us =
                c.value("response_timeout_us", s.client.response_timeout_us);
            s.client.max_probe_attempts = c.value("max_probe_attempts", s.client.max_probe_attempts);
            s.client.max_request_attempts =
                c.value("max_request_attempts", s.client.max_request_attempts);
            s.client.max_restarts = c.value("max_restarts", s.client.max_restarts);
            s.client.initial_scan_clients =
                c.value("initial_scan_clients", s.client.initial_scan_clients);
            s.client.initial_scan_window_us =
                c.value("initial_scan_window_us", s.client.initial_scan_window_us);
            s.client.initial_clients_associate =
                c.value("initial_clients_associate", s.client.initial_clients_associate);
        }
        if (j.contains("access")) s.access = access_from_string(j["access"]);
        s.retry_limit = j.value("retry_limit", s.retry_limit);
        s.default_link_dbm = j.value("default_link_dbm", s.default_link_dbm);
        if (j.contains("link_overrides")) {
            for (const json& l : j["link_overrides"]) {
                s.link_overrides.push_back(LinkPower{l.at("tx").get<std::uint32_t>(),
                                                     l.at("rx").get<std::uint32_t>(),
                                                     l.at("dbm").get<double>()});
            }
        }
        s.noise_floor_dbm = j.value("noise_floor_dbm", s.noise_floor_dbm);
        s.wifi_cs_threshold_dbm = j.value("wifi_cs_threshold_dbm", s.wifi_cs_threshold_dbm);
        s.seed = j.value("seed", s.seed);
        s.duration_us = j.value("duration_us", s.duration_us);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("scenario: bad config value: ") + e.what());
    }
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("scenario: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json(buf.str());
}

void write_scenario_file(const Scenario& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("scenario: cannot write '" + path + "'");
    out << scenario_to_json(s);
}

}  // namespace coex
