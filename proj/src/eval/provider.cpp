#include "scenelayout/eval/provider.hpp"

#include <cstdlib>
#include <mutex>

#include <httplib.h>
#include <json.hpp>

#include "scenelayout/eval/render.hpp"

namespace scenelayout::eval {

std::unique_ptr<MockProvider> MockProvider::constant(std::string text) {
    return std::make_unique<MockProvider>([text = std::move(text)](const ProviderRequest&) { return text; });
}

std::unique_ptr<MockProvider> MockProvider::scripted(std::vector<std::string> responses) {
    if (responses.empty()) throw std::invalid_argument("scripted mock needs at least one response");
    auto counter = std::make_shared<std::atomic<std::size_t>>(0);
    return std::make_unique<MockProvider>([responses = std::move(responses), counter](const ProviderRequest&) {
        return responses[counter->fetch_add(1) % responses.size()];
    });
}

int count_marked_violations(const std::string& svg) {
    static const std::string marker = "class=\"object violation\"";
    int n = 0;
    for (auto pos = svg.find(marker); pos != std::string::npos; pos = svg.find(marker, pos + marker.size())) ++n;
    return n;
}

std::unique_ptr<MockProvider> MockProvider::fewest_violations() {
    return std::make_unique<MockProvider>([](const ProviderRequest& req) -> std::string {
        if (req.images.size() != 2) throw ProviderError("mock expects exactly two images");
        const int a = count_marked_violations(req.images[0].data);
        const int b = count_marked_violations(req.images[1].data);
        bool pick_a = a < b;
        if (a == b) pick_a = fnv1a(req.images[0].data) <= fnv1a(req.images[1].data);
        std::string reply;
        if (req.text.find("pros and cons") != std::string::npos) {
            reply += "Layout A: " + std::to_string(a) + " objects with placement errors.\n";
            reply += "Layout B: " + std::to_string(b) + " objects with placement errors.\n";
        }
        return reply + (pick_a ? "ANSWER: A" : "ANSWER: B");
    });
}

// The vendored HTTP client ships an encoder; reuse it.
std::string base64_encode(std::string_view bytes) { return httplib::detail::base64_encode(std::string(bytes)); }

RemoteProvider::RemoteProvider(RemoteConfig config) : config_(std::move(config)) {
    const std::string& url = config_.url;
    const std::string scheme = "http://";
    if (url.rfind(scheme, 0) != 0) throw ProviderError("only http:// endpoints are supported: " + url);
    const std::string rest = url.substr(scheme.size());
    const auto slash = rest.find('/');
    const std::string authority = rest.substr(0, slash);
    path_ = slash == std::string::npos ? "/" : rest.substr(slash);
    const auto colon = authority.rfind(':');
    host_ = authority.substr(0, colon);
    if (colon != std::string::npos) {
        try {
            port_ = std::stoi(authority.substr(colon + 1));
        } catch (const std::exception&) {
            throw ProviderError("bad port in endpoint URL: " + url);
        }
    }
    if (host_.empty()) throw ProviderError("missing host in endpoint URL: " + url);
}

std::string RemoteProvider::send(const ProviderRequest& request) {
    const char* key = config_.api_key_env.empty() ? nullptr : std::getenv(config_.api_key_env.c_str());
    if (!config_.api_key_env.empty() && key == nullptr) {
        throw ProviderError("environment variable " + config_.api_key_env + " is not set");
    }
    nlohmann::json body{{"model", config_.model}, {"prompt", request.text}, {"images", nlohmann::json::array()}};
    for (const auto& img : request.images) {
        body["images"].push_back({{"media_type", img.media_type}, {"data", base64_encode(img.data)}});
    }

    httplib::Client client(host_, port_);
    client.set_connection_timeout(config_.timeout_seconds, 0);
    client.set_read_timeout(config_.timeout_seconds, 0);
    httplib::Headers headers;
    if (key != nullptr) headers.emplace("Authorization", std::string("Bearer ") + key);

    auto res = client.Post(path_, headers, body.dump(), "application/json");
    if (!res) throw ProviderError("request to " + config_.url + " failed: " + httplib::to_string(res.error()));
    if (res->status != 200) {
        throw ProviderError("endpoint returned HTTP " + std::to_string(res->status) + ": " + res->body.substr(0, 200));
    }
    try {
        const auto reply = nlohmann::json::parse(res->body);
        return reply.at("text").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ProviderError(std::string("malformed response body: ") + e.what());
    }
}

}  // namespace scenelayout::eval
