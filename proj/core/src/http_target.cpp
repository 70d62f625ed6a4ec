#include <httplib.h>

#include <regex>

#include "semdirb/engine.hpp"

namespace semdirb {

struct HttpTarget::Impl {
    explicit Impl(const std::string& origin) : client(origin) {}
    httplib::Client client;
};

HttpTarget::HttpTarget(std::string base_url, HttpOptions options)
    : base_url_(std::move(base_url)), options_(std::move(options)) {
    static const std::regex url_re(R"(^(https?)://([A-Za-z0-9.\-]+|\[[0-9A-Fa-f:.]+\])(:[0-9]{1,5})?(/[^\s?#]*)?$)");
    std::smatch m;
    if (!std::regex_match(base_url_, m, url_re))
        throw DataError("invalid target URL '" + base_url_ + "' (expected http:// or https:// with a host)");
    origin_ = m[1].str() + "://" + m[2].str() + m[3].str();
    base_path_ = m[4].str();
    while (!base_path_.empty() && base_path_.back() == '/') base_path_.pop_back();
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (m[1].str() == "https") throw DataError("https targets need a build with OpenSSL: " + base_url_);
#endif

    impl_ = std::make_unique<Impl>(origin_);
    auto& cli = impl_->client;
    cli.set_follow_location(false);
    cli.set_keep_alive(true);
    const auto secs = static_cast<time_t>(options_.timeout.count() / 1000);
    const auto usecs = static_cast<time_t>((options_.timeout.count() % 1000) * 1000);
    cli.set_connection_timeout(secs, usecs);
    cli.set_read_timeout(secs, usecs);
    cli.set_write_timeout(secs, usecs);
#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
    cli.enable_server_certificate_verification(options_.verify_tls);
#endif
}

HttpTarget::~HttpTarget() = default;

std::string HttpTarget::name() const {
    std::string out;
    for (char c : origin_.substr(origin_.find("://") + 3)) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '.' || c == '-';
        out += ok ? c : '_';
    }
    return out;
}

std::string HttpTarget::locate(const PathEntry& entry) const { return origin_ + base_path_ + entry.raw; }

int HttpTarget::status_for(const PathEntry& entry) {
    const std::string path = base_path_ + entry.raw;
    const httplib::Headers headers{{"User-Agent", options_.user_agent}};
    httplib::Error last = httplib::Error::Success;
    for (std::size_t attempt = 0; attempt <= options_.retries; ++attempt) {
        if (auto res = impl_->client.Get(path, headers)) return res->status;
        else last = res.error();
    }
    throw TransportError("GET " + locate(entry) + " failed after " + std::to_string(options_.retries + 1) +
                         " attempts: " + httplib::to_string(last));
}

}  // namespace semdirb
