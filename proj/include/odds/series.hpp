#pragma once

#include <cstdint>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace odds {

/// Seconds since the Unix epoch, UTC.
using TimeUtc = std::int64_t;

inline double hour_of_day(TimeUtc t) {
    const std::int64_t sec = ((t % 86400) + 86400) % 86400;
    return static_cast<double>(sec) / 3600.0;
}

inline TimeUtc parse_iso8601(const std::string& s) {
    std::tm tm{};
    std::istringstream in(s);
    in >> std::get_time(&tm, "%Y-%m-%dT%H:%M:%S");
    if (in.fail())
        throw std::invalid_argument("parse_iso8601: bad timestamp '" + s + "'");
    return static_cast<TimeUtc>(timegm(&tm));
}

inline std::string format_iso8601(TimeUtc t) {
    std::time_t tt = static_cast<std::time_t>(t);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Observed station temperatures, strictly increasing timestamps.
struct StationSeries {
    std::vector<TimeUtc> times;
    std::vector<double> temps;

    void push(TimeUtc t, double temp) {
        if (!times.empty() && t <= times.back())
            throw std::invalid_argument("StationSeries: timestamps must be strictly increasing");
        times.push_back(t);
        temps.push_back(temp);
    }
    std::size_t size() const { return times.size(); }
};

/// One launch of an ensemble: member temperature series on a shared
/// lead-time grid (hours after launch). Member 0 is the control.
struct EnsembleForecast {
    TimeUtc launch_time = 0;
    std::vector<double> lead_hours;
    std::vector<std::vector<double>> members; // members[m][k] at lead_hours[k]

    const std::vector<double>& control() const {
        if (members.empty()) throw std::logic_error("EnsembleForecast: no members");
        return members.front();
    }
    void validate() const {
        if (members.size() < 2)
            throw std::invalid_argument("EnsembleForecast: need at least 2 members");
        for (const auto& m : members)
            if (m.size() != lead_hours.size())
                throw std::invalid_argument("EnsembleForecast: members must share the lead grid");
    }
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}

} // namespace detail

/// CSV with header `timestamp,temperature`, ISO-8601 UTC timestamps.
inline StationSeries read_station_csv(std::istream& in) {
    StationSeries out;
    std::string line;
    if (!std::getline(in, line) || line.rfind("timestamp,temperature", 0) != 0)
        throw std::invalid_argument("station csv: expected header 'timestamp,temperature'");
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = detail::split_csv_line(line);
        if (f.size() != 2)
            throw std::invalid_argument("station csv: bad row at line " + std::to_string(lineno));
        out.push(parse_iso8601(f[0]), std::stod(f[1]));
    }
    return out;
}

inline void write_station_csv(std::ostream& out, const StationSeries& s) {
    out << "timestamp,temperature\n";
    for (std::size_t i = 0; i < s.size(); ++i)
        out << format_iso8601(s.times[i]) << ',' << std::setprecision(10) << s.temps[i]
            << '\n';
}

/// CSV with header `launch,lead_hours,member_id,temperature`; member 0
/// is the control. Rows may cover several launches.
inline std::vector<EnsembleForecast> read_ensemble_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) ||
        line.rfind("launch,lead_hours,member_id,temperature", 0) != 0)
        throw std::invalid_argument(
            "ensemble csv: expected header 'launch,lead_hours,member_id,temperature'");
    std::map<TimeUtc, std::map<long, std::map<double, double>>> grouped;
    long lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = detail::split_csv_line(line);
        if (f.size() != 4)
            throw std::invalid_argument("ensemble csv: bad row at line " + std::to_string(lineno));
        grouped[parse_iso8601(f[0])][std::stol(f[2])][std::stod(f[1])] = std::stod(f[3]);
    }
    std::vector<EnsembleForecast> out;
    for (const auto& [launch, by_member] : grouped) {
        EnsembleForecast ens;
        ens.launch_time = launch;
        for (const auto& [lead, _] : by_member.begin()->second)
            ens.lead_hours.push_back(lead);
        for (const auto& [id, series] : by_member) {
            if (series.size() != ens.lead_hours.size())
                throw std::invalid_argument("ensemble csv: member " + std::to_string(id) +
                                            " does not share the lead grid");
            std::vector<double> vals;
            for (const auto& [lead, v] : series) vals.push_back(v);
            ens.members.push_back(std::move(vals));
        }
        ens.validate();
        out.push_back(std::move(ens));
    }
    return out;
}

inline void write_ensemble_csv(std::ostream& out, const std::vector<EnsembleForecast>& all) {
    out << "launch,lead_hours,member_id,temperature\n";
    for (const auto& ens : all)
        for (std::size_t m = 0; m < ens.members.size(); ++m)
            for (std::size_t k = 0; k < ens.lead_hours.size(); ++k)
                out << format_iso8601(ens.launch_time) << ',' << ens.lead_hours[k] << ','
                    << m << ',' << std::setprecision(10) << ens.members[m][k] << '\n';
}

} // namespace odds
