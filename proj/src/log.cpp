#include "phaselift/log.hpp"

#include <iostream>
#include <mutex>

namespace phaselift {

namespace {
std::mutex sink_mutex;
WarningSink &sink() {
    static WarningSink s = [](std::string_view msg) {
        std::clog << "phaselift: warning: " << msg << '\n';
    };
    return s;
}
} // namespace

void set_warning_sink(WarningSink s) {
    std::lock_guard lock(sink_mutex);
    sink() = std::move(s);
}

void warn(std::string_view message) {
    std::lock_guard lock(sink_mutex);
    if (sink())
        sink()(message);
}

} // namespace phaselift
